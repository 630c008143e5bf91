"""Command-line interface: ``ivd design | tables | verify | simulate | export-model``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import tables as tbl
from .causal import MAX_EXHAUSTIVE, infer, to_dot, uniquely_identifies
from .combinatorics import CandidatePool, ProblemSpec
from .errors import DesignError
from .formats import (
    FORMATS,
    RunConfig,
    format_selection,
    parse_config,
    parse_dag,
    parse_selection_sets,
)
from .model import ConditionKind, Selection, build, export_text, is_feasible
from .solver import (
    IncumbentRecord,
    SecondaryObjective,
    SolveParams,
    Status,
    enumerate_optima,
    solve,
    solve_lexicographic,
)

EXIT_OK = 0
EXIT_FAIL = 1  # verify only
EXIT_INFEASIBLE = 2
EXIT_LIMIT = 3
EXIT_USAGE = 4

_STATUS_EXIT = {
    Status.OPTIMAL: EXIT_OK,
    Status.FEASIBLE: EXIT_LIMIT,
    Status.UNKNOWN: EXIT_LIMIT,
    Status.INFEASIBLE: EXIT_INFEASIBLE,
    Status.NO_CANDIDATES: EXIT_INFEASIBLE,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    """``"2,3,8"`` or ``"2-5"`` or a mix."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot read {text!r} as integers") from None
    return out


def _add_problem_args(p: argparse.ArgumentParser, with_format: bool = True) -> None:
    p.add_argument("--config", type=Path, help="TOML run configuration")
    p.add_argument("--n", type=int, help="number of variables")
    p.add_argument("--k", dest="k_max", type=int, help="max variables per experiment")
    p.add_argument("--kind", help="cc, upc, opc or id (default id)")
    p.add_argument("--costs", choices=("uniform", "null-free"), help="cost preset")
    p.add_argument("--no-cap", dest="cap_to_half", action="store_const", const=False,
                   help="allow experiments larger than n/2")
    p.add_argument("--no-null", dest="include_null", action="store_const", const=False,
                   help="drop the null experiment from the pool")
    if with_format:
        p.add_argument("--format", choices=FORMATS)


def _load_config(args: argparse.Namespace) -> RunConfig:
    text = ""
    if args.config is not None:
        try:
            text = args.config.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
    keys = ("n", "k_max", "kind", "costs", "cap_to_half", "include_null", "secondary",
            "enumerate_all", "time_limit", "node_limit", "bounding", "workers", "format")
    overrides = {k: getattr(args, k, None) for k in keys}
    return parse_config(text, overrides)


def _sets_text(sets) -> str:
    return " ".join(str(s) for s in sets) if sets else "(none)"


def _sizes_text(sizes) -> str:
    return "(" + ",".join(map(str, sizes)) + ")"


def cmd_design(args: argparse.Namespace, out) -> int:
    cfg = _load_config(args)
    if cfg.format == "dot":
        raise UsageError("the dot format applies to simulate only")
    model = cfg.model()
    pool = model.pool

    def stream(rec: IncumbentRecord) -> None:
        if cfg.format == "records":
            row = rec.as_dict()
            row["event"] = "incumbent"
            row["sets"] = [list(pool[k]) for k in rec.selection.indices]
            out.write(json.dumps(row, sort_keys=True) + "\n")

    params = SolveParams(cfg.time_limit, cfg.node_limit, cfg.bounding, stream, workers=cfg.workers)
    if cfg.secondary is SecondaryObjective.NONE:
        res = solve(model, params)
    else:
        res = solve_lexicographic(model, cfg.secondary, params)

    optima: list[Selection] = []
    if res.selection is not None:
        optima = [res.selection]
        if cfg.enumerate_all and res.status is Status.OPTIMAL:
            optima = enumerate_optima(model, res.objective)

    gap = res.gap
    if cfg.format == "human":
        out.write(f"kind: {model.kind.value}  N={cfg.n}  k_max={cfg.k_max}  candidates={len(pool)}\n")
        out.write(f"status: {res.status.value}\n")
        out.write(f"objective: {'-' if res.objective is None else res.objective}\n")
        out.write(f"bound: {res.bound}\n")
        out.write(f"gap: {'-' if gap is None else f'{100 * gap:.1f}%'}\n")
        out.write(f"nodes: {res.nodes}\ntime: {res.wall_time:.3f} s\n")
        if res.secondary_value is not None and cfg.secondary is not SecondaryObjective.NONE:
            out.write(f"secondary ({cfg.secondary.value}): {res.secondary_value}\n")
        if cfg.enumerate_all and res.status is Status.OPTIMAL:
            out.write(f"optimal selections: {len(optima)}\n")
        for sel in optima:
            out.write(f"selection: {_sets_text(sel.sets(pool))}  sizes {_sizes_text(sel.sizes(pool))}\n")
    elif cfg.format in ("csv", "markdown"):
        rows = [(i + 1, _sets_text(s.sets(pool)), _sizes_text(s.sizes(pool)), res.objective)
                for i, s in enumerate(optima)]
        head = ("#", "selection", "sizes", "objective")
        if cfg.format == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(head)
            w.writerows(rows)
            out.write(buf.getvalue())
        else:
            out.write("| " + " | ".join(head) + " |\n" + "|---" * len(head) + "|\n")
            for r in rows:
                out.write("| " + " | ".join(str(x) for x in r) + " |\n")
    else:
        final = {
            "event": "result",
            "status": res.status.value,
            "objective": res.objective,
            "bound": res.bound if res.bound != float("inf") else None,
            "gap": gap,
            "nodes": res.nodes,
            "selections": [[list(s) for s in sel.sets(pool)] for sel in optima],
        }
        out.write(json.dumps(final, sort_keys=True) + "\n")

    if args.output is not None and res.selection is not None:
        args.output.write_text(format_selection(cfg.n, res.selection.sets(pool)))
    return _STATUS_EXIT[res.status]


def cmd_tables(args: argparse.Namespace, out) -> int:
    cells = tbl.compute_table(args.which, args.n, args.k, args.time_limit)
    times = not args.no_times
    text = tbl.render_csv(cells, times) if args.format == "csv" else tbl.render_markdown(cells, times)
    if args.output is not None:
        args.output.write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def cmd_verify(args: argparse.Namespace, out) -> int:
    n, sets = parse_selection_sets(_read(args.selection))
    kind = ConditionKind.parse(args.kind or "id")
    limit = args.k_max if args.k_max is not None else n
    spec = ProblemSpec(n, max(limit, max((len(s) for s in sets), default=0)), cap_to_half=False)
    pool = CandidatePool.from_sets(spec, sets)
    model = build(pool, kind)
    sel = Selection(range(len(pool)))
    report = is_feasible(model, sel)
    ok = report.feasible
    for ps in report.pairs:
        have = ",".join(sorted(ps.covered)) or "none"
        out.write(f"pair {ps.pair[0]}-{ps.pair[1]}: {have} -> {'ok' if ps.satisfied else 'FAIL'}\n")
    oversized = [s for s in sets if len(s) > limit]
    if oversized:
        ok = False
        out.write(f"size limit {limit} exceeded by {_sets_text(oversized)}\n")
    out.write(f"conditions ({kind.value}): {'PASS' if report.feasible and not oversized else 'FAIL'}\n")
    if report.violated:
        out.write("violated pairs: " + " ".join(f"{{{a},{b}}}" for a, b in report.violated) + "\n")
    if kind is ConditionKind.IDENTIFIABILITY and n <= MAX_EXHAUSTIVE and not args.no_semantic:
        verdict = uniquely_identifies(pool.sets, n)
        if verdict:
            out.write("semantic: PASS (every DAG yields distinct independence patterns)\n")
        else:
            ok = False
            a, b = verdict.witness
            out.write(f"semantic: FAIL, indistinguishable {a!r} and {b!r}\n")
    else:
        out.write("semantic: skipped\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_simulate(args: argparse.Namespace, out) -> int:
    dag = parse_dag(_read(args.dag))
    n, sets = parse_selection_sets(_read(args.selection))
    if n != dag.n:
        raise UsageError(f"selection has {n} nodes but the DAG has {dag.n}")
    states = infer(dag, sets, orient_v_structures=args.v_structures)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    labels = ["observational"] + [f"after {s}" for s in sets]
    for t, (state, label) in enumerate(zip(states, labels)):
        path = args.out_dir / f"{args.prefix}_{t}.dot"
        path.write_text(to_dot(state, name=f"state_{t}"))
        out.write(f"{path}: {label}, {len(state.directed)} directed, {len(state.undirected)} undirected\n")
    final = states[-1]
    matches = final.fully_directed and final.directed == dag.edges and final.undirected == frozenset()
    out.write(f"final state {'equals' if matches else 'does not equal'} the true DAG\n")
    return EXIT_OK


def cmd_export_model(args: argparse.Namespace, out) -> int:
    cfg = _load_config(args)
    text = export_text(cfg.model())
    if args.output is not None:
        args.output.write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ivd", description="Design minimal intervention sets for causal identifiability.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("design", help="solve one design problem")
    _add_problem_args(p)
    p.add_argument("--secondary", help="none, total-size (average) or max-size")
    p.add_argument("--enumerate-all", dest="enumerate_all", action="store_const", const=True,
                   help="list every optimal selection")
    p.add_argument("--time-limit", dest="time_limit", type=float)
    p.add_argument("--node-limit", dest="node_limit", type=int)
    p.add_argument("--bounding", choices=("combinatorial", "lp"))
    p.add_argument("--workers", type=int)
    p.add_argument("--output", type=Path, help="write the selection file here")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("tables", help="regenerate a table of optima or configurations")
    p.add_argument("which", choices=tbl.WHICH)
    p.add_argument("--n", type=_int_list, help='N values, e.g. "2-5,8,9"')
    p.add_argument("--k", type=_int_list, help='k_max values, e.g. "1-4"')
    p.add_argument("--format", choices=("markdown", "csv"), default="markdown")
    p.add_argument("--no-times", action="store_true", help="omit timing columns")
    p.add_argument("--time-limit", type=float, help="per-cell limit in seconds")
    p.add_argument("--output", type=Path)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", help="check a selection file against the conditions")
    p.add_argument("selection", type=Path)
    p.add_argument("--kind", help="condition family (default id)")
    p.add_argument("--k", dest="k_max", type=int, help="size limit to enforce")
    p.add_argument("--no-semantic", action="store_true", help="skip the exhaustive DAG check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="replay experiments on a true DAG and write DOT states")
    p.add_argument("dag", type=Path)
    p.add_argument("selection", type=Path)
    p.add_argument("--out-dir", type=Path, default=Path("."))
    p.add_argument("--prefix", default="state")
    p.add_argument("--v-structures", action="store_true", help="orient observational colliders")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("export-model", help="write the covering model in plain text")
    _add_problem_args(p, with_format=False)
    p.add_argument("--output", type=Path)
    p.set_defaults(func=cmd_export_model)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, DesignError, ValueError) as exc:
        print(f"ivd: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
