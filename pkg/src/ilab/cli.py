"""Command-line front end: one binary, one subcommand per operation.

Exit codes: 0 = verified/found, 1 = negative result (not colourable, bound
violated, partition survived, ...), 2 = usage or input error, 3 = search
budget exhausted. Every subcommand accepts ``--seed`` (default 0) and
``--manifest FILE`` to record a run manifest (inputs/outputs with SHA-256
digests, config echo, timing). Output files are deterministic byte-for-byte
for fixed inputs; colour files are normalised so the smallest colour is 0.
``ILAB_THREADS`` caps internal parallelism (the current implementations are
sequential; the value is validated and echoed in manifests).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from .colouring import (
    EdgeColouring,
    count_colours,
    parse_colouring_json,
    parse_colouring_text,
    serialize_colouring_json,
    serialize_colouring_text,
    verify,
)
from .decompose import FactorPart, PipelineConfig, decompose_theta, objective_check
from .exact import (
    SearchBudget,
    SearchBudgetExceeded,
    exact_thickness,
    find_interval_colouring,
    max_colours,
)
from .graphs import (
    Edge,
    FormatError,
    Graph,
    canonical_edge,
    parse_graph_json,
    parse_graph_text,
    serialize_graph_json,
    serialize_graph_text,
)
from .planar import (
    FamilySpec,
    extremal_family,
    hereditary_sparsity,
    unique_colour_split,
    verify_colour_bound,
)
from .randlab import (
    LowerBoundParams,
    adversarial_probe,
    generate,
    parse_layered_json,
    serialize_layered_json,
    validate_spread_witness,
)


def _threads() -> int:
    raw = os.environ.get("ILAB_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
        if value >= 1:
            return value
    except ValueError:
        pass
    print(f"warning: ignoring invalid ILAB_THREADS={raw!r}", file=sys.stderr)
    return 1


class _Files:
    """File IO with digest tracking for the run manifest."""

    def __init__(self):
        self.inputs: dict[str, str] = {}
        self.outputs: dict[str, str] = {}
        self.config: dict = {}

    def read(self, path: str) -> str:
        with open(path, "rb") as fh:
            data = fh.read()
        self.inputs[path] = hashlib.sha256(data).hexdigest()
        return data.decode("utf-8")

    def write(self, path: str, text: str) -> None:
        data = text.encode("utf-8")
        with open(path, "wb") as fh:
            fh.write(data)
        self.outputs[path] = hashlib.sha256(data).hexdigest()


def _load_graph(files: _Files, path: str) -> Graph:
    text = files.read(path)
    return parse_graph_json(text) if path.endswith(".json") else parse_graph_text(text)


def _load_colouring(files: _Files, path: str) -> EdgeColouring:
    text = files.read(path)
    if path.endswith(".json"):
        return parse_colouring_json(text)
    return parse_colouring_text(text)


def _write_colouring(files: _Files, path: str, c: EdgeColouring) -> None:
    c = c.normalised()
    if path.endswith(".json"):
        files.write(path, serialize_colouring_json(c))
    else:
        files.write(path, serialize_colouring_text(c))


def _write_graph(files: _Files, path: str, g: Graph) -> None:
    if path.endswith(".json"):
        files.write(path, serialize_graph_json(g))
    else:
        files.write(path, serialize_graph_text(g))


def _require_match(g: Graph, c: EdgeColouring) -> None:
    if c.graph.vertex_count != g.vertex_count or c.graph.edges != g.edges:
        raise FormatError("colouring file does not describe the given graph")


def _parse_partition_json(text: str) -> dict[Edge, int]:
    doc = json.loads(text)
    edges = doc.get("edges")
    parts = doc.get("parts", doc.get("colours"))
    if not isinstance(edges, list) or not isinstance(parts, list):
        raise FormatError("partition JSON needs 'edges' and 'parts' arrays")
    if len(edges) != len(parts):
        raise FormatError(
            f"{len(edges)} edges but {len(parts)} part labels"
        )
    out: dict[Edge, int] = {}
    for (u, v), p in zip(edges, parts):
        out[canonical_edge(int(u), int(v))] = int(p)
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_check(args, files: _Files) -> int:
    g = _load_graph(files, args.graph)
    c = _load_colouring(files, args.colouring)
    _require_match(g, c)
    report = verify(c)
    if report.interval:
        print(f"interval, {report.distinct_colours} colours")
        return 0
    vertex, reason = report.first_violation
    kind = "proper, not interval" if report.proper else "not proper"
    print(f"{kind}: vertex {vertex} ({reason})")
    return 1


def _cmd_solve(args, files: _Files) -> int:
    g = _load_graph(files, args.graph)
    budget = SearchBudget(
        max_colours=args.max_colours,
        node_limit=args.node_limit,
        time_limit=args.time_limit,
    )
    files.config.update(mode=args.mode, kmax=args.kmax, max_colours=args.max_colours)
    try:
        if args.mode == "colourable":
            try:
                c = find_interval_colouring(g, budget)
            except ValueError as exc:
                print(f"not interval colourable within the palette: {exc}")
                return 1
            if c is None:
                print("not interval colourable")
                return 1
            print(f"interval colouring with {count_colours(c)} colours")
            if args.out:
                _write_colouring(files, args.out, c)
            return 0
        if args.mode == "tmax":
            result = max_colours(g, budget)
            if result is None:
                print("not interval colourable")
                return 1
            t, c = result
            print(f"maximum interval colours: {t}")
            if args.out:
                _write_colouring(files, args.out, c)
            return 0
        # theta
        result = exact_thickness(g, k_max=args.kmax, budget=budget)
        if result is None:
            print(f"interval thickness exceeds {args.kmax}")
            return 1
        print(f"interval thickness: {result.theta}")
        if args.out:
            parts = EdgeColouring(g, dict(result.partition.part_of))
            _write_colouring(files, args.out, parts)
        return 0
    except SearchBudgetExceeded as exc:
        print(f"budget exhausted: {exc}")
        return 3


def _cmd_decompose(args, files: _Files) -> int:
    g = _load_graph(files, args.graph)
    cfg = PipelineConfig(delta=args.delta)
    files.config.update(delta=cfg.delta, gamma=cfg.gamma)
    report = decompose_theta(g, cfg)
    all_ok = all(verify(c).interval for c in report.part_colourings())
    print(
        f"{g.edge_count} edges -> {report.part_count} parts "
        f"({len(report.factors)} regular, {len(report.forest_parts)} forest) "
        f"across {len(report.layers)} layers"
    )
    if report.stuck_layers:
        bits = ", ".join(str(b) for b in sorted(set(report.stuck_layers)))
        print(f"increment stalled on layer bits {bits}; remainder went to forests")
    print("all parts verified interval" if all_ok else "PART VERIFICATION FAILED")
    if args.report:
        parts_doc = []
        for part in sorted(report.factors + report.forest_parts, key=lambda p: p.index):
            edges = [list(e) for e in sorted(part.colouring.colours)]
            doc_entry = {
                "index": part.index,
                "layer_bit": part.layer_bit,
                "edges": edges,
                "colours": [part.colouring.colours[tuple(e)] for e in edges],
            }
            if isinstance(part, FactorPart):
                doc_entry["kind"] = "factor"
                doc_entry["k"] = part.k
                doc_entry["trace"] = [
                    {
                        "part_size": t.part_size,
                        "density": t.density,
                        "escape": t.escape,
                    }
                    for t in part.trace
                ]
            else:
                doc_entry["kind"] = "forest"
            parts_doc.append(doc_entry)
        doc = {
            "n": g.vertex_count,
            "m": g.edge_count,
            "delta": cfg.delta,
            "gamma": cfg.gamma,
            "gamma_as_printed": cfg.gamma_as_printed,
            "part_count": report.part_count,
            "stuck_layers": sorted(set(report.stuck_layers)),
            "layers": [
                {
                    "bit": layer.bit,
                    "part_size": len(layer.graph.left),
                    "edges": len(layer.graph.edges),
                }
                for layer in report.layers
            ],
            "parts": parts_doc,
        }
        files.write(args.report, json.dumps(doc, sort_keys=True, indent=1) + "\n")
    return 0 if all_ok else 1


def _cmd_gen_lower(args, files: _Files) -> int:
    delta = args.delta if args.delta is not None else 1.0 / (1000.0 * args.r)
    epsilon = args.epsilon if args.epsilon is not None else delta ** (args.r + 2)
    params = LowerBoundParams(
        r=args.r, n=args.n, delta=delta, epsilon=epsilon, seed=args.seed
    )
    files.config.update(r=params.r, n=params.n, delta=delta, epsilon=epsilon)
    lb = generate(params)
    files.write(args.out, serialize_layered_json(lb))
    for i, lg in enumerate(lb.layer_graphs, start=1):
        mean, _sd = params.layer_stats(i)
        print(
            f"layer {i}: |A_{i}| = {len(lb.a_layers[i - 1])}, "
            f"p = {params.p(i):.3g}, edges = {len(lg.edges)} (expected {mean:.3g})"
        )
    return 0


def _cmd_probe(args, files: _Files) -> int:
    lb = parse_layered_json(files.read(args.graph))
    part_of = _parse_partition_json(files.read(args.partition))
    missing = [e for e in lb.all_edges() if e not in part_of]
    if missing:
        raise FormatError(f"partition does not cover edge {missing[0]}")
    files.config.update(budget_scale=args.budget_scale)
    trace = adversarial_probe(lb, part_of, budget_scale=args.budget_scale)
    for st in trace.stages:
        line = (
            f"stage {st.k}: part {st.part}, ground {st.ground_before} -> "
            f"{st.ground_after}, worst deletion {st.deletion_proportion:.3f}"
        )
        if st.forced_repeat:
            line += " [forced repeat]"
        if st.hypotheses is not None:
            line += (
                f" (biregular={st.hypotheses.biregular},"
                f" pseudorandom={st.hypotheses.pseudorandom})"
            )
        print(line)
    for w in trace.witnesses:
        ok, msg = validate_spread_witness(lb, part_of, w)
        print(
            f"spread witness: part {w.part}, pivot {w.pivot}, {w.edge_count} edges, "
            f"forced spread {w.forced_spread} > cap {w.cap}; revalidation: {msg}"
        )
        if not ok:
            print("WITNESS FAILED REVALIDATION")
            return 2
    if trace.overruns:
        print(f"{len(trace.overruns)} uncertified budget overruns recorded")
    if args.report:
        doc = {
            "budget_scale": trace.budget_scale,
            "contradiction": trace.contradiction,
            "refuted": trace.refuted,
            "used_parts": trace.used_parts,
            "stages": [
                {
                    "k": st.k,
                    "part": st.part,
                    "ground_before": st.ground_before,
                    "ground_after": st.ground_after,
                    "deletion_proportion": st.deletion_proportion,
                    "forced_repeat": st.forced_repeat,
                }
                for st in trace.stages
            ],
            "witnesses": [
                {
                    "part": w.part,
                    "pivot": w.pivot,
                    "edge_count": w.edge_count,
                    "diameter": w.diameter,
                    "delta_cap": w.delta_cap,
                    "h_vertices": list(w.h_vertices),
                }
                for w in trace.witnesses
            ],
            "overruns": [
                {
                    "stage": o.stage,
                    "prior_stage": o.prior_stage,
                    "pivot": o.pivot,
                    "edge_count": o.edge_count,
                    "budget": o.budget,
                }
                for o in trace.overruns
            ],
        }
        files.write(args.report, json.dumps(doc, sort_keys=True, indent=1) + "\n")
    if trace.witnesses:
        print("refuted: a spread witness certifies an uncolourable part")
        return 0
    if trace.contradiction:
        print(f"refuted: forced part repeat at stage {trace.stages[-1].k}")
        return 0
    if trace.stages and trace.stages[-1].part is None:
        print(f"exhausted at stage {trace.stages[-1].k}: no surviving edges")
        return 1
    print(f"partition survived all {lb.params.r} stages (parts: {trace.used_parts})")
    return 1


def _cmd_gen_planar(args, files: _Files) -> int:
    removed = frozenset(int(x) for x in args.remove.split(",") if x) if args.remove else frozenset()
    spec = FamilySpec(s=args.s, removed_curved=removed, odd=args.odd)
    g, c = extremal_family(spec)
    report = verify(c)
    files.config.update(s=args.s, removed=sorted(removed), odd=args.odd)
    print(
        f"family s={args.s}{' odd' if args.odd else ''}: {g.vertex_count} vertices, "
        f"{g.edge_count} edges, {report.distinct_colours} colours"
    )
    if args.out:
        _write_graph(files, args.out, g)
    if args.colouring_out:
        _write_colouring(files, args.colouring_out, c)
    return 0 if report.interval else 1


def _cmd_split(args, files: _Files) -> int:
    g = _load_graph(files, args.graph)
    c = _load_colouring(files, args.colouring)
    _require_match(g, c)
    result = unique_colour_split(c)
    if result is None:
        print("no unique interior colour to split at")
        return 1
    t = count_colours(c)
    n1, n2 = count_colours(result.c1), count_colours(result.c2)
    s1, s2 = set(result.v1), set(result.v2)
    cross = sum(1 for u, v in g.edges if (u in s1 and v in s2) or (u in s2 and v in s1))
    print(
        f"split at colour {result.colour} on edge {result.edge}: "
        f"sides {len(result.v1)}|{len(result.v2)}, cross edges {cross}"
    )
    print(f"halves use {n1} and {n2} colours ({n1} + {n2} = {t} + 1)")
    if args.out:
        _write_colouring(files, args.out + "1.txt", result.c1)
        _write_colouring(files, args.out + "2.txt", result.c2)
    return 0


def _cmd_bound(args, files: _Files) -> int:
    g = _load_graph(files, args.graph)
    files.config.update(k=args.k, colours=args.colours)
    ok, witness = hereditary_sparsity(g, args.k)
    if not ok:
        print(f"sparsity violated: subset {witness} is too dense for k={args.k}")
        return 1
    report = verify_colour_bound(g, args.k, args.colours if args.colours else 0)
    print(
        f"hereditary sparsity holds for k={args.k}; "
        f"colour bound (k/2)n+1-k = {report.bound:g}"
    )
    if args.colours is not None:
        verdict = "within" if report.holds else "EXCEEDS"
        print(f"{args.colours} colours {verdict} the bound")
        return 0 if report.holds else 1
    return 0


def _cmd_objective(args, files: _Files) -> int:
    report = objective_check(args.delta, args.step)
    files.config.update(delta=args.delta, step=args.step)
    x, y = report.argmax
    print(f"max {report.max_value:.4f} at ({x:.2f},{y:.2f}), boundary x=0 excluded")
    return 0 if report.max_value < 1.0 else 1


# ---------------------------------------------------------------------------
# parser and dispatch
# ---------------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ilab", description="interval edge-colouring laboratory"
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="rng seed (default 0)")
        p.add_argument("--manifest", help="write a run manifest JSON here")

    p = sub.add_parser("check", help="verify a colouring file against a graph")
    p.add_argument("graph")
    p.add_argument("colouring")
    common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("solve", help="exact search: colourability, max colours, thickness")
    p.add_argument("graph")
    p.add_argument(
        "--mode", choices=["colourable", "tmax", "theta"], default="colourable"
    )
    p.add_argument("--max-colours", type=int, default=None)
    p.add_argument("--kmax", type=int, default=4, help="thickness search cap")
    p.add_argument("--node-limit", type=int, default=5_000_000)
    p.add_argument("--time-limit", type=float, default=None, help="seconds")
    p.add_argument("-o", "--out", help="write the witness colouring/partition here")
    common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("decompose", help="partition into interval-colourable parts")
    p.add_argument("graph")
    p.add_argument("--delta", type=float, default=0.25)
    p.add_argument("--report", help="write the full JSON report here")
    common(p)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("gen-lower", help="generate the layered random bipartite graph")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=float, default=None, help="default 1/(1000 r)")
    p.add_argument("--epsilon", type=float, default=None, help="default delta^(r+2)")
    p.add_argument("-o", "--out", required=True, help="output JSON path")
    common(p)
    p.set_defaults(func=_cmd_gen_lower)

    p = sub.add_parser("probe", help="probe an edge partition of a layered graph")
    p.add_argument("graph", help="layered-bipartite JSON from gen-lower")
    p.add_argument("partition", help='JSON {"edges": [[u,v],...], "parts": [...]}')
    p.add_argument("--budget-scale", type=float, default=1.0)
    p.add_argument("--report", help="write the probe trace JSON here")
    common(p)
    p.set_defaults(func=_cmd_probe)

    p = sub.add_parser("gen-planar", help="generate the extremal planar family")
    p.add_argument("--s", type=int, required=True, help="number of ladder columns")
    p.add_argument("--remove", default="", help="comma-separated curved edge indices")
    p.add_argument("--odd", action="store_true", help="append the pendant vertex")
    p.add_argument("-o", "--out", help="graph output path")
    p.add_argument("-c", "--colouring-out", help="colouring output path")
    common(p)
    p.set_defaults(func=_cmd_gen_planar)

    p = sub.add_parser("split", help="split a colouring at a unique interior colour")
    p.add_argument("graph")
    p.add_argument("colouring")
    p.add_argument("-o", "--out", help="prefix for the two half colouring files")
    common(p)
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("bound", help="hereditary sparsity and the colour-count bound")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--colours", type=int, default=None, help="colour count to test")
    common(p)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("objective", help="grid-check the escape dichotomy objective")
    p.add_argument("--delta", type=float, default=0.25)
    p.add_argument("--step", type=float, default=0.01)
    common(p)
    p.set_defaults(func=_cmd_objective)

    return top


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    args = _parser().parse_args(argv)
    threads = _threads()
    files = _Files()
    started = time.perf_counter()
    try:
        code = args.func(args, files)
    except (FormatError, FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.manifest:
        manifest = {
            "subcommand": args.command,
            "argv": argv,
            "seed": args.seed,
            "threads": threads,
            "inputs": files.inputs,
            "outputs": files.outputs,
            "config": files.config,
            "exit_code": code,
            "timing_seconds": round(time.perf_counter() - started, 6),
        }
        with open(args.manifest, "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, sort_keys=True, indent=1)
            fh.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
