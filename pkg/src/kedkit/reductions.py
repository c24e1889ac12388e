"""Reductions between Independent Set, Koenig Edge Deletion (KED), KED disjoint
from a maximum matching (KED-dfM) and Almost-2-SAT, with solution lifting.

Every lifting function checks its own output before returning it.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from kedkit.graph import Edge, EdgeSet, Graph, VertexSet, delete_edges, edge, edge_set, is_independent
from kedkit.koenig import KoenigWitness, NotMaximumMatchingError, check_witness, is_koenig
from kedkit.matching import Matching, is_matching, maximum_matching, unsaturated_vertices
from kedkit.twosat import (
    Clause,
    TwoCnf,
    almost_2sat,
    deletion_size,
    eliminate_unit_clauses,
    is_tautology,
    make_clause,
    solve_2sat,
)

log = logging.getLogger(__name__)


class ReductionError(ValueError):
    """Input outside the domain of a reduction, or an invalid solution to lift."""


# --- Independent Set -> KED ---------------------------------------------------


@dataclass(frozen=True)
class KedInstance:
    """Reduced instance.  Originals keep ``1..n``, pendant of ``i`` is ``n + i``,
    the hub is ``2n+1 .. 2n+2k``."""

    graph: Graph
    k: int
    n_source: int

    @property
    def originals(self) -> VertexSet:
        return frozenset(range(1, self.n_source + 1))

    @property
    def hub(self) -> VertexSet:
        return frozenset(range(2 * self.n_source + 1, self.graph.n + 1))

    @property
    def pendant_of(self) -> dict[int, int]:
        return {v: self.n_source + v for v in self.originals}

    @property
    def source(self) -> Graph:
        return Graph(self.n_source, self.graph.induced(self.originals).edges)


def reduce_is_to_ked(g: Graph, k: int) -> KedInstance:
    """Add a pendant to every vertex and an independent hub of ``2k`` vertices
    joined to all originals and pendants.  Requires ``k < n/2``."""
    n = g.n
    if k < 0 or 2 * k >= n:
        raise ReductionError(f"need 0 <= k < n/2, got k={k}, n={n}")
    edges = set(g.edges)
    edges.update((v, n + v) for v in range(1, n + 1))
    edges.update((v, c) for c in range(2 * n + 1, 2 * n + 2 * k + 1) for v in range(1, 2 * n + 1))
    return KedInstance(Graph(2 * n + 2 * k, frozenset(edges)), k, n)


def ked_witness_from_is(inst: KedInstance, i: Iterable[int]) -> KoenigWitness:
    """Cover ``(V \\ I) | C`` with the pairing used to prove it tight: each
    ``v`` outside ``I`` to its pendant, the first ``k`` hub vertices to ``I``
    and the last ``k`` to the pendants of ``I``."""
    i = sorted(i)
    n, k = inst.n_source, inst.k
    hub = sorted(inst.hub)
    rest = sorted(inst.originals - set(i))
    m = [(v, n + v) for v in rest]
    m += [(c, v) for c, v in zip(hub[:k], i)]
    m += [(c, n + v) for c, v in zip(hub[k:], i)]
    return KoenigWitness(frozenset(rest) | inst.hub, edge_set(m))


def build_ked_from_is(inst: KedInstance, i: Iterable[int]) -> EdgeSet:
    """Deletion set ``{v, p_v}`` for ``v`` in an independent set of size ``k``."""
    i = frozenset(i)
    if len(i) != inst.k or not i <= inst.originals or not is_independent(inst.graph, i):
        raise ReductionError("need an independent set of exactly k original vertices")
    f = frozenset((v, inst.n_source + v) for v in i)
    result = delete_edges(inst.graph, f)
    if not check_witness(result, ked_witness_from_is(inst, i)) or not is_koenig(result):
        raise AssertionError("constructed deletion set does not yield a Koenig graph")
    return f


def lift_ked_to_is(inst: KedInstance, f: Iterable[tuple[int, int]]) -> VertexSet:
    """Independent set ``{v : {v, p_v} in F}`` from a size-``k`` deletion set."""
    f = edge_set(f)
    if len(f) != inst.k or not f <= inst.graph.edges:
        raise ReductionError("need k edges of the reduced graph")
    if not is_koenig(delete_edges(inst.graph, f)):
        raise ReductionError("edge set is not a Koenig edge deletion set")
    i = frozenset(v for v in inst.originals if (v, inst.n_source + v) in f)
    if len(i) != inst.k or not is_independent(inst.graph, i):
        raise AssertionError("lifted vertex set is not a k-independent set")
    return i


# --- Almost-2-SAT -> KED-dfM --------------------------------------------------


@dataclass(frozen=True)
class KedDfmInstance:
    graph: Graph
    matching: Matching
    k: int
    # only set on instances built from a formula
    source: TwoCnf | None = None
    literal_vertex: Mapping[int, int] = field(default_factory=dict)
    edge_clause: Mapping[Edge, Clause] = field(default_factory=dict)


def literal_vertex(lit: int) -> int:
    """``v_a`` is ``2a - 1`` and ``v_-a`` is ``2a``."""
    return 2 * lit - 1 if lit > 0 else -2 * lit


def reduce_a2sat_to_keddfm(phi: TwoCnf, k: int) -> KedDfmInstance:
    """Literal graph: an edge ``v_a v_-a`` per variable (these form the matching)
    and an edge ``v_a v_b`` per clause ``(a or b)``.

    Tautologies are dropped.  Singleton clauses are first rewritten by
    :func:`eliminate_unit_clauses` with one guard variable per copy, so no two
    clauses share an edge.  Clauses with multiplicity above one cannot be
    represented in a simple graph and are rejected.
    """
    if k < 0:
        raise ReductionError("negative parameter")
    kept = []
    for c, m in phi.clauses:
        if is_tautology(c):
            log.warning("dropping tautological clause %s", c)
            continue
        if m > 1:
            raise ReductionError(f"clause {c} has multiplicity {m}; a simple graph cannot hold it")
        kept.append((c, m))
    work = TwoCnf(phi.nvars, tuple(kept))
    f_var = phi.nvars + 1
    edge_clause: dict[Edge, Clause] = {}
    for c in work.identities:
        lits = c if len(c) == 2 else (c[0], f_var)
        edge_clause[edge(*map(literal_vertex, lits))] = c
    if any(len(c) == 1 for c in work.identities):
        work = eliminate_unit_clauses(work, k, spread_guards=True)
    edges = {(2 * v - 1, 2 * v) for v in range(1, work.nvars + 1)}
    edges.update(edge(literal_vertex(a), literal_vertex(b)) for a, b in work.identities)
    g = Graph(2 * work.nvars, frozenset(edges))
    matching = frozenset((2 * v - 1, 2 * v) for v in range(1, work.nvars + 1))
    lv = {lit: literal_vertex(lit) for v in range(1, work.nvars + 1) for lit in (v, -v)}
    return KedDfmInstance(g, matching, k, phi, lv, edge_clause)


def edges_for_deletion(inst: KedDfmInstance, d: Mapping[Clause, int]) -> EdgeSet:
    """Edges of the clauses in an Almost-2-SAT solution of ``inst.source``."""
    by_clause = {c: e for e, c in inst.edge_clause.items()}
    out = set()
    for c, cnt in d.items():
        c = make_clause(*c)
        if is_tautology(c):
            continue
        if c not in by_clause or cnt != 1:
            raise ReductionError(f"clause {c} has no edge in the instance")
        out.add(by_clause[c])
    return frozenset(out)


def lift_keddfm_to_a2sat(inst: KedDfmInstance, f: Iterable[tuple[int, int]]) -> Counter:
    """Clause deletion set for ``inst.source`` from a KED-dfM solution."""
    if inst.source is None:
        raise ReductionError("instance was not built from a formula")
    f = edge_set(f)
    if f & inst.matching or not f <= inst.graph.edges:
        raise ReductionError("deletion set must avoid the matching and use graph edges")
    if not is_koenig(delete_edges(inst.graph, f)):
        raise ReductionError("edge set is not a Koenig edge deletion set")
    missing = [e for e in f if e not in inst.edge_clause]
    if missing:
        raise ReductionError(f"edge {min(missing)} belongs to a guard clause")
    d = Counter(inst.edge_clause[e] for e in f)
    if solve_2sat(inst.source.delete(d)) is None:
        raise AssertionError("lifted clause deletion leaves the formula unsatisfiable")
    return d


# --- KED-dfM -> Almost-2-SAT --------------------------------------------------


def _check_maximum(inst: KedDfmInstance) -> None:
    if not is_matching(inst.graph, inst.matching) or len(inst.matching) != len(
        maximum_matching(inst.graph)
    ):
        raise NotMaximumMatchingError("instance matching is not a maximum matching")


def reduce_keddfm_to_a2sat(inst: KedDfmInstance) -> TwoCnf:
    """One variable per vertex (true = in the cover).

    ``(u or v)`` for every edge, ``(-u or -v)`` for every matching edge and
    ``(-v)`` for every unsaturated vertex; everything except the
    ``(u or v)`` clauses of non-matching edges gets multiplicity ``k + 1``.
    """
    _check_maximum(inst)
    g, m, guard = inst.graph, inst.matching, inst.k + 1
    clauses: list[tuple[Clause, int]] = []
    for u, v in g.canonical_edges():
        if (u, v) in m:
            clauses += [((u, v), guard), ((-u, -v), guard)]
        else:
            clauses.append(((u, v), 1))
    clauses += [((-v,), guard) for v in sorted(unsaturated_vertices(g, m))]
    return TwoCnf(g.n, tuple(clauses))


def lift_a2sat_to_keddfm(inst: KedDfmInstance, d: Mapping[Clause, int]) -> EdgeSet:
    """Edges ``{u, v}`` of the deleted ``(u or v)`` clauses."""
    f = set()
    for c, cnt in d.items():
        c = make_clause(*c)
        if cnt == 0:
            continue
        if len(c) != 2 or c[0] < 0 or c[1] < 0 or cnt != 1:
            raise ReductionError(f"deletion of {cnt} x {c} touches a guard clause")
        e = edge(*c)
        if e not in inst.graph.edges or e in inst.matching:
            raise ReductionError(f"clause {c} is not a non-matching edge")
        f.add(e)
    f = frozenset(f)
    if not is_koenig(delete_edges(inst.graph, f)):
        raise AssertionError("lifted edge set does not yield a Koenig graph")
    return f


def solve_keddfm(inst: KedDfmInstance) -> EdgeSet | None:
    """Minimum Koenig edge deletion set disjoint from the matching, of size at
    most ``k``, via Almost-2-SAT; ``None`` if there is none."""
    phi = reduce_keddfm_to_a2sat(inst)
    d = almost_2sat(phi, inst.k)
    if d is None:
        return None
    f = lift_a2sat_to_keddfm(inst, d)
    assert len(f) == deletion_size(d)
    return f
