"""Fractional vertex cover and the Nemhauser-Trotter decomposition.

The vertex-cover LP always has a half-integral optimum, and one is read off
a minimum vertex cover of the bipartite double cover (vertex ``u`` becomes
``u_L`` and ``u_R``, edge ``{u, v}`` becomes ``u_L v_R`` and ``v_L u_R``):
``y_u = ([u_L in cover] + [u_R in cover]) / 2``.  All values are exact
``Fraction`` objects.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from kedkit.graph import Graph, VertexSet
from kedkit.matching import hopcroft_karp, saturating_cut_matching

HALF = Fraction(1, 2)
_ALLOWED = (Fraction(0), HALF, Fraction(1))


@dataclass(frozen=True)
class HalfIntegralVC:
    values: Mapping[int, Fraction]

    @property
    def value(self) -> Fraction:
        return sum(self.values.values(), Fraction(0))

    def _level(self, x: Fraction) -> VertexSet:
        return frozenset(v for v, y in self.values.items() if y == x)

    @property
    def s0(self) -> VertexSet:
        return self._level(Fraction(0))

    @property
    def s_half(self) -> VertexSet:
        return self._level(HALF)

    @property
    def s1(self) -> VertexSet:
        return self._level(Fraction(1))

    @classmethod
    def from_sets(cls, n: int, s1: Iterable[int], s_half: Iterable[int]) -> HalfIntegralVC:
        values = {v: Fraction(0) for v in range(1, n + 1)}
        for v in s_half:
            values[v] = HALF
        for v in s1:
            values[v] = Fraction(1)
        return cls(values)


class _DoubleCover:
    """Double cover of ``g`` induced on ``active`` with a maximum matching."""

    def __init__(self, g: Graph, active: Iterable[int], initial: dict | None = None) -> None:
        self.active = sorted(active)
        inside = set(self.active)
        self.adj = {u: [v for v in g.adjacency[u] if v in inside] for u in self.active}
        self.match = hopcroft_karp(self.active, self.adj, initial)

    def without(self, g: Graph, v: int) -> _DoubleCover:
        """Same construction with ``v`` removed, warm-started from this matching."""
        initial = {l: r for l, r in self.match.items() if l != v and r != v}
        return _DoubleCover(g, (u for u in self.active if u != v), initial)

    def halves(self) -> dict[int, int]:
        """Optimal LP solution in half units (0, 1 or 2) from the Koenig cover.

        Z = vertices reachable from free left copies by alternating paths;
        the cover is (L \\ Z) | (R & Z).
        """
        match_r = {r: l for l, r in self.match.items()}
        reached_l = {u for u in self.active if u not in self.match}
        reached_r: set[int] = set()
        queue = deque(reached_l)
        while queue:
            u = queue.popleft()
            for r in self.adj[u]:
                if r not in reached_r:
                    reached_r.add(r)
                    w = match_r.get(r)
                    if w is not None and w not in reached_l:
                        reached_l.add(w)
                        queue.append(w)
        return {u: (u not in reached_l) + (u in reached_r) for u in self.active}


def fractional_vc_value(g: Graph) -> Fraction:
    """Optimum of the vertex-cover LP: half the double cover's maximum matching."""
    return Fraction(len(_DoubleCover(g, g.vertices).match), 2)


def nt_decomposition(g: Graph) -> HalfIntegralVC:
    """Optimal half-integral LP solution with the fewest half-valued vertices.

    Start from any optimal half-integral solution and freeze its integral
    part; the half-valued residual ``R`` is then solved on ``G[R]`` alone.
    Repeatedly probe ``v`` in ``R`` (ascending): if ``vc_f(G[R] - v) + 1 ==
    vc_f(G[R])`` then some optimum sets ``v`` to 1, so take an optimal
    solution of ``G[R] - v``, put ``v`` at 1, freeze the new integral part
    and shrink ``R``.  Stop when no vertex of ``R`` can be fixed, i.e. the
    all-half vector is the unique optimum of ``G[R]``.
    """
    cover = _DoubleCover(g, g.vertices)
    halves = cover.halves()
    residual = [v for v in cover.active if halves[v] == 1]
    while residual:
        cover = _DoubleCover(g, residual)
        # matching sizes count half units of LP value
        for v in residual:
            probe = cover.without(g, v)
            if len(probe.match) + 2 == len(cover.match):
                sub = probe.halves()
                halves.update(sub)
                halves[v] = 2
                residual = [u for u in probe.active if sub[u] == 1]
                break
        else:
            break
    return HalfIntegralVC({v: Fraction(h, 2) for v, h in halves.items()})


def is_feasible(g: Graph, sol: HalfIntegralVC) -> bool:
    if set(sol.values) != set(g.vertices):
        return False
    if any(y not in _ALLOWED for y in sol.values.values()):
        return False
    return all(sol.values[u] + sol.values[v] >= 1 for u, v in g.edges)


def verify_nt(g: Graph, sol: HalfIntegralVC) -> bool:
    """Feasible, optimal, and ``S1`` can be matched into ``S0``.

    Minimality of ``|S_half|`` is not checked here.
    """
    if not is_feasible(g, sol) or sol.value != fractional_vc_value(g):
        return False
    s1 = sol.s1
    return saturating_cut_matching(g.induced(s1 | sol.s0), s1) is not None


def format_lp(sol: HalfIntegralVC) -> str:
    val = sol.value
    lines = [f"vcf {val.numerator}/{val.denominator}"]
    for name, s in (("S0", sol.s0), ("Shalf", sol.s_half), ("S1", sol.s1)):
        lines.append(" ".join([name + ":"] + [str(v) for v in sorted(s)]))
    return "\n".join(lines) + "\n"
