"""Seeded random instances for sweeps and fixtures.

All randomness comes from SplitMix64, so instances are reproducible from the
seed alone:

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output z ^ (z >> 31)

``below(m)`` draws uniformly from ``0..m-1`` by rejection: outputs
``r >= 2**64 - (2**64 mod m)`` are discarded, otherwise ``r mod m``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from kedkit.graph import Graph
from kedkit.twosat import Clause, TwoCnf, make_clause

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int = 0) -> None:
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, m: int) -> int:
        if m <= 0:
            raise ValueError("empty range")
        limit = (1 << 64) - (1 << 64) % m
        while True:
            r = self.next()
            if r < limit:
                return r % m

    def chance(self, p: Fraction) -> bool:
        """True with probability exactly ``p``: ``r * den < num * 2**64``."""
        return self.next() * p.denominator < p.numerator << 64


def gen_graph(n: int, p: Fraction | str | float, seed: int = 0) -> Graph:
    """G(n, p): pairs ``u < v`` in lexicographic order, one draw each."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("edge probability outside [0, 1]")
    rng = SplitMix64(seed)
    return Graph(n, frozenset(e for e in combinations(range(1, n + 1), 2) if rng.chance(p)))


def all_two_clauses(nvars: int) -> list[Clause]:
    """Every clause over two distinct variables, in canonical order."""
    return [
        make_clause(sa * a, sb * b)
        for a, b in combinations(range(1, nvars + 1), 2)
        for sa in (1, -1)
        for sb in (1, -1)
    ]


def gen_cnf(
    nvars: int,
    nclauses: int,
    seed: int = 0,
    *,
    exhaustive: bool = False,
    units: int = 0,
    max_multiplicity: int = 1,
) -> TwoCnf:
    """Random 2-CNF with ``nclauses`` distinct two-variable clauses.

    Each clause draws ``a = 1 + below(nvars)``, ``b`` uniformly among the
    other variables, then one draw whose two low bits give the signs of
    ``a`` and ``b``; repeats are redrawn.  ``units`` distinct singleton
    clauses follow (``below(nvars)`` then one sign bit).  With
    ``max_multiplicity > 1`` every clause, in canonical order, gets
    ``1 + below(max_multiplicity)`` copies.  ``exhaustive`` takes the first
    ``nclauses`` of :func:`all_two_clauses` instead of drawing.
    """
    if nvars < 1:
        raise ValueError("need at least one variable")
    rng = SplitMix64(seed)
    pool = all_two_clauses(nvars)
    if nclauses > len(pool):
        raise ValueError(f"only {len(pool)} distinct two-variable clauses over {nvars} variables")
    if units > 2 * nvars:
        raise ValueError(f"only {2 * nvars} distinct unit clauses")
    if exhaustive:
        chosen = pool[:nclauses]
    else:
        chosen, seen = [], set()
        while len(chosen) < nclauses:
            a = 1 + rng.below(nvars)
            b = 1 + rng.below(nvars - 1)
            b += b >= a
            bits = rng.next()
            c = make_clause(a if bits & 1 else -a, b if bits & 2 else -b)
            if c not in seen:
                seen.add(c)
                chosen.append(c)
    seen_units: set[Clause] = set()
    while len(seen_units) < units:
        v = 1 + rng.below(nvars)
        c = make_clause(v if rng.next() & 1 else -v)
        if c not in seen_units:
            seen_units.add(c)
            chosen.append(c)
    phi = TwoCnf.from_clauses(nvars, chosen)
    if max_multiplicity > 1:
        phi = TwoCnf(nvars, tuple((c, 1 + rng.below(max_multiplicity)) for c in phi.identities))
    return phi
