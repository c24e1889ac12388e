"""Koenig graph recognition, certificates, and exhaustive oracles."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable

from kedkit.errors import MAX_SUBSETS, OracleGuardError
from kedkit.graph import EdgeSet, Graph, VertexSet, delete_edges, edge_set, is_vertex_cover
from kedkit.lp import nt_decomposition
from kedkit.matching import Matching, is_matching, maximum_matching, saturated_vertices, saturating_cut_matching

MAX_VC_ORACLE_VERTICES = 26


class NotMaximumMatchingError(ValueError):
    pass


@dataclass(frozen=True)
class KoenigWitness:
    cover: VertexSet
    matching: Matching


def koenig_witness(g: Graph) -> KoenigWitness | None:
    """Certificate ``(S, M)`` if ``g`` is Koenig, else ``None``.

    ``g`` is Koenig iff its LP has an integral optimum, i.e. the
    Nemhauser-Trotter solution has no half-valued vertex.  ``S1`` is then a
    minimum vertex cover and it can be matched into ``S0``.
    """
    nt = nt_decomposition(g)
    if nt.s_half:
        return None
    m = saturating_cut_matching(g, nt.s1)
    if m is None:  # pragma: no cover - excluded by the LP optimality argument
        raise AssertionError("optimal LP solution without S1 -> S0 matching")
    return KoenigWitness(nt.s1, m)


def is_koenig(g: Graph) -> bool:
    return koenig_witness(g) is not None


def check_witness(g: Graph, w: KoenigWitness) -> bool:
    cover, m = frozenset(w.cover), edge_set(w.matching)
    if not cover <= frozenset(g.vertices) or not is_vertex_cover(g, cover):
        return False
    if not is_matching(g, m) or len(m) != len(cover):
        return False
    if any(len(cover.intersection(e)) != 1 for e in m):
        return False
    # no cover vertex left unsaturated
    return cover <= saturated_vertices(m)


def brute_force_min_vc(g: Graph) -> VertexSet:
    """Lexicographically least minimum vertex cover by exhaustive search.

    Sizes below ``mu(G)`` are skipped (every cover is at least as large as
    every matching).
    """
    if g.n > MAX_VC_ORACLE_VERTICES:
        raise OracleGuardError(f"{g.n} vertices exceeds the vertex cover oracle limit")
    masks = [(1 << u) | (1 << v) for u, v in g.edges]
    for size in range(len(maximum_matching(g)), g.n + 1):
        for combo in combinations(g.vertices, size):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if all(em & mask for em in masks):
                return frozenset(combo)
    raise AssertionError("unreachable: V(G) is a vertex cover")


def _guard_subsets(m: int, k: int) -> None:
    total = sum(comb(m, i) for i in range(min(k, m) + 1))
    if total > MAX_SUBSETS:
        raise OracleGuardError(f"{total} candidate subsets exceeds the oracle limit")


def _min_deletion(g: Graph, candidates: list, k: int) -> EdgeSet | None:
    for size in range(min(k, len(candidates)) + 1):
        for f in combinations(candidates, size):
            if is_koenig(delete_edges(g, f)):
                return frozenset(f)
    return None


def brute_force_min_ked(g: Graph, k: int) -> EdgeSet | None:
    """Minimum Koenig edge deletion set of size at most ``k`` (lex-least), or ``None``."""
    _guard_subsets(g.m, k)
    return _min_deletion(g, g.canonical_edges(), k)


def brute_force_min_ked_dfm(g: Graph, m: Iterable[tuple[int, int]], k: int) -> EdgeSet | None:
    """As :func:`brute_force_min_ked` but only edges outside the maximum matching ``m`` may go."""
    m = edge_set(m)
    if not is_matching(g, m) or len(m) != len(maximum_matching(g)):
        raise NotMaximumMatchingError("given matching is not a maximum matching")
    candidates = sorted(g.edges - m)
    _guard_subsets(len(candidates), k)
    return _min_deletion(g, candidates, k)


def witness_lines(w: KoenigWitness) -> str:
    lines = [" ".join(["s"] + [str(v) for v in sorted(w.cover)])]
    lines += [f"m {u} {v}" for u, v in sorted(w.matching)]
    return "\n".join(lines) + "\n"

