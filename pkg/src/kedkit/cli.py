"""Command-line front end.

Exit codes: 0 yes / valid, 1 no / absent / invalid, 2 usage or parse error,
3 exhaustive oracle guard exceeded.  Results go to stdout, diagnostics to
stderr.  Every input path may be ``-`` for standard input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from kedkit.errors import OracleGuardError
from kedkit.generators import gen_cnf, gen_graph
from kedkit.graph import Edge, Graph, GraphError, GraphFile, GraphParseError, read_graph_file, write_graph
from kedkit.koenig import (
    KoenigWitness,
    NotMaximumMatchingError,
    brute_force_min_ked,
    brute_force_min_ked_dfm,
    check_witness,
    is_koenig,
    koenig_witness,
    witness_lines,
)
from kedkit.lp import HalfIntegralVC, format_lp, nt_decomposition, verify_nt
from kedkit.matching import is_matching, matching_lines, maximum_matching
from kedkit.reductions import (
    KedDfmInstance,
    ReductionError,
    lift_a2sat_to_keddfm,
    lift_ked_to_is,
    lift_keddfm_to_a2sat,
    reduce_a2sat_to_keddfm,
    reduce_is_to_ked,
    reduce_keddfm_to_a2sat,
    solve_keddfm,
)
from kedkit.twosat import (
    CnfParseError,
    TwoCnf,
    almost_2sat,
    brute_force_almost_2sat,
    format_deletion,
    parse_cnf,
    parse_deletion,
    solve_2sat,
    write_cnf,
)

YES, NO, USAGE, GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cnf_param(text: str) -> int | None:
    """Parameter stored by ``reduce keddfm2a2sat`` as a ``c k <int>`` comment."""
    for line in text.splitlines():
        tokens = line.split()
        if tokens[:2] == ["c", "k"] and len(tokens) == 3:
            return int(tokens[2])
    return None


def _param(args: argparse.Namespace, gf: GraphFile | None = None, default: int | None = None) -> int:
    k = args.k if args.k is not None else (gf.k if gf is not None else default)
    if k is None:
        raise UsageError("parameter missing: pass --k or add a 'k' line")
    if k < 0:
        raise UsageError("parameter must be non-negative")
    return k


def _edge_solution(f: Iterable[Edge] | None) -> str:
    if f is None:
        return "s NO\n"
    f = sorted(f)
    return "".join([f"s {len(f)}\n"] + [f"d {u} {v}\n" for u, v in f])


def _parse_edge_solution(text: str) -> frozenset[Edge] | None:
    rows = [l.split() for l in text.splitlines() if l.strip() and not l.startswith("c")]
    if not rows or rows[0][0] != "s" or len(rows[0]) != 2:
        raise UsageError("solution must start with an 's' line")
    if rows[0][1] == "NO":
        return None
    edges = []
    for row in rows[1:]:
        if row[0] != "d" or len(row) != 3:
            raise UsageError(f"bad solution line: {' '.join(row)}")
        u, v = int(row[1]), int(row[2])
        edges.append((min(u, v), max(u, v)))
    if len(set(edges)) != int(rows[0][1]):
        raise UsageError("size line disagrees with edge lines")
    return frozenset(edges)


def _dfm_instance(gf: GraphFile, k: int) -> KedDfmInstance:
    m = gf.matching if gf.matching is not None else maximum_matching(gf.graph)
    return KedDfmInstance(gf.graph, m, k)


# --- solver commands ------------------------------------------------------


def cmd_recognize(args: argparse.Namespace) -> int:
    g = read_graph_file(_read(args.file)).graph
    w = koenig_witness(g)
    if w is None:
        print("NOT-KONIG")
        return NO
    sys.stdout.write("KONIG\n" + witness_lines(w))
    return YES


def cmd_matching(args: argparse.Namespace) -> int:
    g = read_graph_file(_read(args.file)).graph
    sys.stdout.write(matching_lines(maximum_matching(g)))
    return YES


def cmd_lp(args: argparse.Namespace) -> int:
    g = read_graph_file(_read(args.file)).graph
    sys.stdout.write(format_lp(nt_decomposition(g)))
    return YES


def cmd_ked(args: argparse.Namespace) -> int:
    gf = read_graph_file(_read(args.file))
    f = brute_force_min_ked(gf.graph, _param(args, gf))
    sys.stdout.write(_edge_solution(f))
    return NO if f is None else YES


def cmd_keddfm(args: argparse.Namespace) -> int:
    gf = read_graph_file(_read(args.file))
    inst = _dfm_instance(gf, _param(args, gf))
    if args.oracle:
        f = brute_force_min_ked_dfm(inst.graph, inst.matching, inst.k)
    else:
        f = solve_keddfm(inst)
    sys.stdout.write(_edge_solution(f))
    return NO if f is None else YES


def cmd_a2sat(args: argparse.Namespace) -> int:
    text = _read(args.file)
    phi = parse_cnf(text)
    k = _param(args, default=_cnf_param(text))
    d = brute_force_almost_2sat(phi, k) if args.oracle else almost_2sat(phi, k)
    sys.stdout.write(format_deletion(d))
    return NO if d is None else YES


# --- reductions -----------------------------------------------------------


def cmd_reduce(args: argparse.Namespace) -> int:
    text = _read(args.input)
    if args.direction == "is2ked":
        gf = read_graph_file(text)
        inst = reduce_is_to_ked(gf.graph, _param(args, gf))
        out = write_graph(inst.graph, k=inst.k)
    elif args.direction == "a2sat2keddfm":
        inst = reduce_a2sat_to_keddfm(parse_cnf(text), _param(args))
        out = write_graph(inst.graph, inst.matching, inst.k)
    else:
        gf = read_graph_file(text)
        out = _write_cnf_with_k(reduce_keddfm_to_a2sat(_dfm_instance(gf, _param(args, gf))), args, gf)
    _write(args.output, out)
    return YES


def _write_cnf_with_k(phi: TwoCnf, args: argparse.Namespace, gf: GraphFile) -> str:
    return f"c k {_param(args, gf)}\n" + write_cnf(phi)


def cmd_lift(args: argparse.Namespace) -> int:
    """Map a solution of the reduced instance back to the source instance.

    The reduction is re-run on the source, so only the source file and the
    solution of the reduced instance are needed.
    """
    source = _read(args.source)
    solution = _read(args.solution)
    if args.direction == "is2ked":
        gf = read_graph_file(source)
        f = _parse_edge_solution(solution)
        if f is None:
            _write(args.output, "s NO\n")
            return NO
        i = lift_ked_to_is(reduce_is_to_ked(gf.graph, _param(args, gf)), f)
        _write(args.output, "".join([f"s {len(i)}\n"] + [f"v {v}\n" for v in sorted(i)]))
    elif args.direction == "a2sat2keddfm":
        f = _parse_edge_solution(solution)
        if f is None:
            _write(args.output, "s NO\n")
            return NO
        inst = reduce_a2sat_to_keddfm(parse_cnf(source), _param(args))
        _write(args.output, format_deletion(lift_keddfm_to_a2sat(inst, f)))
    else:
        gf = read_graph_file(source)
        d = parse_deletion(solution)
        if d is None:
            _write(args.output, "s NO\n")
            return NO
        inst = _dfm_instance(gf, _param(args, gf))
        _write(args.output, _edge_solution(lift_a2sat_to_keddfm(inst, d)))
    return YES


# --- verification ----------------------------------------------------------


def _rows(text: str) -> list[list[str]]:
    return [l.split() for l in text.splitlines() if l.strip() and not l.startswith("c")]


def _verify_matching(gf: GraphFile, text: str, args) -> bool:
    rows = _rows(text)
    m = [(int(r[1]), int(r[2])) for r in rows[1:] if r[0] == "m"]
    return (
        rows[0][0] == "s"
        and int(rows[0][1]) == len(m)
        and is_matching(gf.graph, m)
        and len(m) == len(maximum_matching(gf.graph))
    )


def _verify_lp(gf: GraphFile, text: str, args) -> bool:
    rows = _rows(text)
    if rows[0][0] != "vcf":
        return False
    levels = {r[0].rstrip(":"): [int(x) for x in r[1:]] for r in rows[1:]}
    sol = HalfIntegralVC.from_sets(gf.graph.n, levels.get("S1", []), levels.get("Shalf", []))
    listed = sorted(sum(levels.values(), []))
    return (
        listed == list(gf.graph.vertices)
        and Fraction(rows[0][1]) == sol.value
        and verify_nt(gf.graph, sol)
        and len(sol.s_half) == len(nt_decomposition(gf.graph).s_half)
    )


def _verify_recognize(gf: GraphFile, text: str, args) -> bool:
    rows = _rows(text)
    if rows[0] == ["NOT-KONIG"]:
        return not is_koenig(gf.graph)
    if rows[0] != ["KONIG"]:
        return False
    cover = [int(x) for r in rows[1:] if r[0] == "s" for x in r[1:]]
    m = [(int(r[1]), int(r[2])) for r in rows[1:] if r[0] == "m"]
    return check_witness(gf.graph, KoenigWitness(frozenset(cover), frozenset(m)))


def _verify_edges(gf: GraphFile, text: str, args, dfm: bool) -> bool:
    k = _param(args, gf)
    f = _parse_edge_solution(text)
    if dfm:
        inst = _dfm_instance(gf, k)
        if f is None:
            return solve_keddfm(inst) is None
        if f & inst.matching:
            return False
    elif f is None:
        return brute_force_min_ked(gf.graph, k) is None
    if len(f) > k or not f <= gf.graph.edges:
        return False
    g = Graph(gf.graph.n, gf.graph.edges - f)
    return is_koenig(g)


def _verify_a2sat(phi: TwoCnf, text: str, args) -> bool:
    k = _param(args)
    d = parse_deletion(text)
    if d is None:
        return almost_2sat(phi, k) is None
    if sum(d.values()) > k:
        return False
    try:
        residual = phi.delete(d)
    except ValueError:
        return False
    return solve_2sat(residual) is not None


_GRAPH_VERIFIERS: dict[str, Callable] = {
    "matching": _verify_matching,
    "lp": _verify_lp,
    "recognize": _verify_recognize,
    "ked": lambda gf, t, a: _verify_edges(gf, t, a, dfm=False),
    "keddfm": lambda gf, t, a: _verify_edges(gf, t, a, dfm=True),
}


def cmd_verify(args: argparse.Namespace) -> int:
    instance, solution = _read(args.instance), _read(args.solution)
    if not _rows(solution):
        raise UsageError("empty solution")
    if args.kind == "a2sat":
        ok = _verify_a2sat(parse_cnf(instance), solution, args)
    else:
        ok = _GRAPH_VERIFIERS[args.kind](read_graph_file(instance), solution, args)
    print("VALID" if ok else "INVALID")
    return YES if ok else NO


# --- generators -------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    if args.what == "graph":
        out = write_graph(gen_graph(args.size, Fraction(args.p), args.seed))
    else:
        phi = gen_cnf(
            args.size,
            args.clauses,
            args.seed,
            exhaustive=args.exhaustive,
            units=args.units,
            max_multiplicity=args.max_mult,
        )
        out = write_cnf(phi)
    _write(args.output, out)
    return YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kedkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        return p

    add("recognize", cmd_recognize, "decide whether a graph is Koenig").add_argument("file")
    add("matching", cmd_matching, "maximum matching").add_argument("file")
    add("lp", cmd_lp, "Nemhauser-Trotter LP solution").add_argument("file")
    for name, func, help in (
        ("ked", cmd_ked, "minimum Koenig edge deletion set (exhaustive)"),
        ("keddfm", cmd_keddfm, "Koenig edge deletion disjoint from the matching"),
        ("a2sat", cmd_a2sat, "Almost-2-SAT"),
    ):
        p = add(name, func, help)
        p.add_argument("--k", type=int)
        p.add_argument("file")
        if name != "ked":
            p.add_argument("--oracle", action="store_true", help="use the exhaustive oracle")

    directions = ["is2ked", "a2sat2keddfm", "keddfm2a2sat"]
    p = add("reduce", cmd_reduce, "apply a reduction")
    p.add_argument("direction", choices=directions)
    p.add_argument("--k", type=int)
    p.add_argument("input")
    p.add_argument("output", nargs="?")

    p = add("lift", cmd_lift, "map a reduced-instance solution back to the source")
    p.add_argument("direction", choices=directions)
    p.add_argument("--k", type=int)
    p.add_argument("source")
    p.add_argument("solution")
    p.add_argument("output", nargs="?")

    p = add("verify", cmd_verify, "check a solver output")
    p.add_argument("kind", choices=["matching", "lp", "recognize", "ked", "keddfm", "a2sat"])
    p.add_argument("--k", type=int)
    p.add_argument("instance")
    p.add_argument("solution")

    p = add("gen", cmd_gen, "seeded random instance")
    p.add_argument("what", choices=["graph", "cnf"])
    p.add_argument("size", type=int, help="vertices or variables")
    p.add_argument("--p", default="1/2", help="edge probability, e.g. 1/2")
    p.add_argument("--clauses", type=int, default=0)
    p.add_argument("--units", type=int, default=0)
    p.add_argument("--max-mult", type=int, default=1)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OracleGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return GUARD
    except (
        UsageError,
        GraphParseError,
        CnfParseError,
        GraphError,
        ReductionError,
        NotMaximumMatchingError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
