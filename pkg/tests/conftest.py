"""Shared fixtures and independent brute-force oracles.

Nothing here calls the algorithm under test; the oracles enumerate.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from kedkit.graph import Graph, read_graph_file

DATA = Path(__file__).parent / "data"

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


def load(name: str):
    return read_graph_file((DATA / name).read_text())


@pytest.fixture
def counterexample():
    return load("matching_counterexample.gr")


# --- graph strategies ---------------------------------------------------------


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, frozenset(p for p, keep in zip(pairs, mask) if keep))


def random_graph(rng, n: int, p: float) -> Graph:
    return Graph(n, frozenset(e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < p))


# --- oracles --------------------------------------------------------------------


def brute_mu(g: Graph) -> int:
    """Largest matching by include/exclude recursion over edges."""
    edges = g.canonical_edges()
    best = 0

    def rec(i: int, used: frozenset, size: int) -> None:
        nonlocal best
        best = max(best, size)
        if i == len(edges) or size + (len(edges) - i) <= best:
            return
        u, v = edges[i]
        if u not in used and v not in used:
            rec(i + 1, used | {u, v}, size + 1)
        rec(i + 1, used, size)

    rec(0, frozenset(), 0)
    return best


def all_matchings(g: Graph, size: int) -> list[frozenset]:
    out = []
    for combo in itertools.combinations(g.canonical_edges(), size):
        ends = [v for e in combo for v in e]
        if len(set(ends)) == len(ends):
            out.append(frozenset(combo))
    return out


def has_augmenting_path(g: Graph, m: frozenset) -> bool:
    """Depth-first search over all simple alternating paths from exposed vertices."""
    mate = {}
    for u, v in m:
        mate[u], mate[v] = v, u
    adj = g.adjacency

    def extend(v: int, seen: set) -> bool:
        # v is reached by a matching edge (or is the exposed start); leave by a non-matching edge
        for w in adj[v]:
            if w in seen or mate.get(v) == w:
                continue
            if w not in mate:
                return True
            x = mate[w]
            if x in seen:
                continue
            seen |= {w, x}
            if extend(x, seen):
                return True
            seen -= {w, x}
        return False

    return any(extend(s, {s}) for s in g.vertices if s not in mate)


def brute_vc_size(g: Graph, start: int = 0) -> int:
    """Smallest vertex cover size, trying sizes from ``start`` upward."""
    masks = [(1 << u) | (1 << v) for u, v in g.edges]
    bits = [1 << v for v in g.vertices]
    for size in range(start, g.n + 1):
        for combo in itertools.combinations(bits, size):
            s = sum(combo)
            if all(m & s for m in masks):
                return size
    raise AssertionError


def is_koenig_by_definition(g: Graph) -> bool:
    mu = brute_mu(g)
    return brute_vc_size(g, start=mu) == mu


@lru_cache(maxsize=None)
def _ternary_table(n: int) -> np.ndarray:
    """All 3**n vectors over {0, 1, 2} (half units)."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    return np.array(list(itertools.product((0, 1, 2), repeat=n)), dtype=np.int8)


def brute_lp(g: Graph) -> tuple[int, int]:
    """(optimum in half units, fewest half-valued vertices among optima) over {0, 1/2, 1}^n."""
    table = _ternary_table(g.n)
    feasible = np.ones(len(table), dtype=bool)
    for u, v in g.edges:
        feasible &= table[:, u - 1] + table[:, v - 1] >= 2
    rows = table[feasible]
    values = rows.sum(axis=1, dtype=np.int32)
    best = int(values.min())
    halves = (rows[values == best] == 1).sum(axis=1)
    return best, int(halves.min())


def truth_table_sat(nvars: int, clauses) -> bool:
    for bits in itertools.product((False, True), repeat=nvars):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return True
    return False


def brute_independent_set(g: Graph, k: int) -> bool:
    return any(
        all(not g.has_edge(u, v) for u, v in itertools.combinations(combo, 2))
        for combo in itertools.combinations(g.vertices, k)
    )


def hall_condition(g: Graph, s: frozenset) -> bool:
    """Hall's condition for ``s`` in the bipartite graph of cut edges."""
    outside = frozenset(g.vertices) - s
    for r in range(1, len(s) + 1):
        for sub in itertools.combinations(sorted(s), r):
            nbrs = {w for v in sub for w in g.adjacency[v] if w in outside}
            if len(nbrs) < r:
                return False
    return True
