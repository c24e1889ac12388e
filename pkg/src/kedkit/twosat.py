"""2-CNF formulas with clause multiplicities, 2-SAT, and exact Almost-2-SAT.

Literals are DIMACS integers (``v`` or ``-v``).  A clause is a tuple of one
or two distinct literals in canonical order (by variable, positive first);
``(a or a)`` collapses to ``(a,)``.  Formulas keep one entry per clause
identity together with its multiplicity, sorted canonically.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

from kedkit.errors import MAX_SUBSETS, OracleGuardError

Clause = tuple[int, ...]
Assignment = dict[int, bool]


def lit_key(lit: int) -> tuple[int, bool]:
    return abs(lit), lit < 0


def make_clause(*lits: int) -> Clause:
    if not lits or 0 in lits:
        raise ValueError(f"bad clause literals {lits}")
    distinct = sorted(set(lits), key=lit_key)
    if len(distinct) > 2:
        raise ValueError(f"more than two literals in {lits}")
    return tuple(distinct)


def clause_key(c: Clause) -> tuple:
    return tuple(lit_key(l) for l in c)


def is_tautology(c: Clause) -> bool:
    return len(c) == 2 and c[0] == -c[1]


@dataclass(frozen=True)
class TwoCnf:
    nvars: int
    clauses: tuple[tuple[Clause, int], ...] = ()

    def __post_init__(self) -> None:
        merged: Counter = Counter()
        for c, mult in self.clauses:
            c = make_clause(*c)
            if mult < 1:
                raise ValueError(f"multiplicity {mult} of {c} is not positive")
            for lit in c:
                if not 1 <= abs(lit) <= self.nvars:
                    raise ValueError(f"variable {abs(lit)} outside 1..{self.nvars}")
            merged[c] += mult
        canon = tuple(sorted(merged.items(), key=lambda item: clause_key(item[0])))
        object.__setattr__(self, "clauses", canon)

    @classmethod
    def from_clauses(cls, nvars: int, clauses: Iterable[Iterable[int]]) -> TwoCnf:
        """Build from a clause list; repeated clauses add multiplicity."""
        return cls(nvars, tuple((tuple(c), 1) for c in clauses))

    @property
    def identities(self) -> list[Clause]:
        return [c for c, _ in self.clauses]

    @property
    def total(self) -> int:
        return sum(m for _, m in self.clauses)

    def multiplicity(self, c: Clause) -> int:
        return dict(self.clauses).get(make_clause(*c), 0)

    def delete(self, d: Mapping[Clause, int]) -> TwoCnf:
        """Residual formula after removing ``d[c]`` copies of each clause ``c``."""
        mult = dict(self.clauses)
        for c, cnt in d.items():
            c = make_clause(*c)
            if cnt > mult.get(c, 0):
                raise ValueError(f"cannot delete {cnt} copies of {c}")
            mult[c] -= cnt
        return TwoCnf(self.nvars, tuple((c, m) for c, m in mult.items() if m > 0))


def satisfies(phi: TwoCnf, assignment: Mapping[int, bool]) -> bool:
    return all(any(assignment[abs(l)] == (l > 0) for l in c) for c, _ in phi.clauses)


# --- implication graph ------------------------------------------------------


def _node(lit: int) -> int:
    return 2 * (abs(lit) - 1) + (lit < 0)


def _implications(nvars: int, clauses: list[Clause]) -> list[list[tuple[int, int]]]:
    """Adjacency ``node -> [(node, clause index)]``; ``(a or b)`` gives ``-a -> b``, ``-b -> a``."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(2 * nvars)]
    for idx, c in enumerate(clauses):
        a, b = c if len(c) == 2 else (c[0], c[0])
        adj[_node(-a)].append((_node(b), idx))
        if b != a:
            adj[_node(-b)].append((_node(a), idx))
    return adj


def _scc(adj: list[list[tuple[int, int]]]) -> list[int]:
    """Tarjan's algorithm, iterative.  Components are numbered in completion
    order, which is a reverse topological order of the condensation."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = ncomp = 0
    for start in range(n):
        if index[start] != -1:
            continue
        work = [(start, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            while i < len(adj[v]):
                w = adj[v][i][0]
                i += 1
                if index[w] == -1:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comp


def _solve(nvars: int, clauses: list[Clause]) -> tuple[Assignment | None, int | None]:
    comp = _scc(_implications(nvars, clauses))
    for v in range(1, nvars + 1):
        if comp[2 * v - 2] == comp[2 * v - 1]:
            return None, v
    # x is true when its component comes earlier in completion order (closer to a sink)
    return {v: comp[2 * v - 2] < comp[2 * v - 1] for v in range(1, nvars + 1)}, None


def solve_2sat(phi: TwoCnf) -> Assignment | None:
    """A satisfying assignment, or ``None`` when unsatisfiable."""
    return _solve(phi.nvars, phi.identities)[0]


def unsat_witness(phi: TwoCnf) -> int | None:
    """Least variable ``x`` with ``x`` and ``-x`` in one strongly connected component."""
    return _solve(phi.nvars, phi.identities)[1]


# --- Almost-2-SAT -------------------------------------------------------------


def _path_clauses(adj, src: int, dst: int, dead: frozenset[int]) -> list[int]:
    """Clause indices along a shortest implication path ``src -> dst``."""
    via: dict[int, tuple[int, int]] = {src: (-1, -1)}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            break
        for w, idx in adj[u]:
            if idx not in dead and w not in via:
                via[w] = (u, idx)
                queue.append(w)
    out = []
    u = dst
    while u != src:
        u, idx = via[u]
        out.append(idx)
    return out


def _expanded(sol: frozenset[int], mult: list[int]) -> tuple[int, ...]:
    return tuple(i for i in sorted(sol) for _ in range(mult[i]))


def _to_counter(sol: frozenset[int], ids: list[Clause], mult: list[int]) -> Counter:
    return Counter({ids[i]: mult[i] for i in sol})


def almost_2sat(phi: TwoCnf, k: int) -> Counter | None:
    """Minimum clause deletion set of total size at most ``k``, else ``None``.

    Deleting some but not all copies of a clause never helps, so a clause is
    either kept or deleted with all of its copies, at a cost equal to its
    multiplicity; clauses with multiplicity above the budget stay.

    Iterative deepening on the budget.  While the residual formula is
    unsatisfiable, take its witness variable ``x``, build shortest
    implication paths ``x -> -x`` and ``-x -> x``, and branch on deleting
    each clause on them: every solution must break that cycle.  At the first
    budget with any solution the whole tree is explored, which finds every
    minimum solution; the one whose sorted copy sequence is lexicographically
    least (in canonical clause order) is returned.
    """
    if k < 0:
        raise ValueError("negative budget")
    ids = phi.identities
    mult = [m for _, m in phi.clauses]
    adj = _implications(phi.nvars, ids)
    for budget in range(k + 1):
        found: set[frozenset[int]] = set()
        seen: set[frozenset[int]] = set()
        _branch(phi.nvars, ids, mult, adj, frozenset(), budget, found, seen)
        if found:
            best = min(found, key=lambda s: _expanded(s, mult))
            return _to_counter(best, ids, mult)
    return None


def _branch(nvars, ids, mult, adj, dead, budget, found, seen) -> None:
    if dead in seen:
        return
    seen.add(dead)
    _, x = _solve(nvars, [c for i, c in enumerate(ids) if i not in dead])
    if x is None:
        found.add(dead)
        return
    pos, neg = 2 * x - 2, 2 * x - 1
    cycle = set(_path_clauses(adj, pos, neg, dead)) | set(_path_clauses(adj, neg, pos, dead))
    for idx in sorted(cycle):
        if mult[idx] <= budget:
            _branch(nvars, ids, mult, adj, dead | {idx}, budget - mult[idx], found, seen)


def brute_force_almost_2sat(phi: TwoCnf, k: int) -> Counter | None:
    """Same contract as :func:`almost_2sat`, by enumerating sets of clause copies.

    Copies are listed clause by clause in canonical order and subsets are
    tried by size, then lexicographically, so partial deletions are part of
    the search space too.
    """
    copies = [i for i, (_, m) in enumerate(phi.clauses) for _ in range(m)]
    total = sum(comb(len(copies), s) for s in range(min(k, len(copies)) + 1))
    if total > MAX_SUBSETS:
        raise OracleGuardError(f"{total} candidate deletion sets exceeds the oracle limit")
    ids = phi.identities
    mult = [m for _, m in phi.clauses]
    for size in range(min(k, len(copies)) + 1):
        for pick in combinations(range(len(copies)), size):
            removed = Counter(copies[p] for p in pick)
            kept = [c for i, c in enumerate(ids) if removed[i] < mult[i]]
            if _solve(phi.nvars, kept)[0] is not None:
                return Counter({ids[i]: cnt for i, cnt in removed.items()})
    return None


def deletion_size(d: Mapping[Clause, int]) -> int:
    return sum(d.values())


def eliminate_unit_clauses(phi: TwoCnf, k: int, spread_guards: bool = False) -> TwoCnf:
    """Rewrite singleton clauses ``(l)`` as ``(l or f)`` with ``f`` forced false.

    Adds fresh variables ``f = nvars + 1`` and ``x = nvars + 2`` with
    ``(-f or x)`` and ``(-f or -x)`` each of multiplicity ``k + 1``.  With
    ``spread_guards`` the ``k + 1`` copies instead use ``k + 1`` distinct
    variables ``x_1 .. x_{k+1}`` (``nvars + 2 ..``), each guarded by the
    clause pair once; this keeps every clause distinct, which a simple
    graph needs.
    """
    f = phi.nvars + 1
    out: list[tuple[Clause, int]] = []
    for c, m in phi.clauses:
        out.append(((c[0], f) if len(c) == 1 else c, m))
    if spread_guards:
        nvars = f + k + 1
        for x in range(f + 1, nvars + 1):
            out += [((-f, x), 1), ((-f, -x), 1)]
    else:
        nvars = f + 1
        out += [((-f, f + 1), k + 1), ((-f, -(f + 1)), k + 1)]
    return TwoCnf(nvars, tuple(out))


# --- DIMACS CNF -----------------------------------------------------------------


class CnfParseError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_cnf(text: str | bytes) -> TwoCnf:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    nvars = declared = None
    clauses: list[Clause] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if nvars is not None or len(tokens) != 4 or tokens[1] != "cnf":
                raise CnfParseError(lineno, "expected a single 'p cnf <nvars> <nclauses>' header")
            try:
                nvars, declared = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise CnfParseError(lineno, "non-integer header field") from None
            continue
        if nvars is None:
            raise CnfParseError(lineno, "clause before header")
        try:
            lits = [int(t) for t in tokens]
        except ValueError:
            raise CnfParseError(lineno, "non-integer literal") from None
        if lits[-1] != 0 or not 2 <= len(lits) <= 3 or 0 in lits[:-1]:
            raise CnfParseError(lineno, "clause must hold 1 or 2 nonzero literals and end with 0")
        if any(abs(l) > nvars for l in lits[:-1]):
            raise CnfParseError(lineno, "variable out of range")
        clauses.append(make_clause(*lits[:-1]))
    if nvars is None:
        raise CnfParseError(0, "missing header")
    if len(clauses) != declared:
        raise CnfParseError(0, f"header declares {declared} clauses, found {len(clauses)}")
    return TwoCnf.from_clauses(nvars, clauses)


def _clause_text(c: Clause) -> str:
    return " ".join(str(l) for l in c) + " 0"


def write_cnf(phi: TwoCnf) -> str:
    lines = [f"p cnf {phi.nvars} {phi.total}"]
    for c, m in phi.clauses:
        lines += [_clause_text(c)] * m
    return "\n".join(lines) + "\n"


def format_deletion(d: Mapping[Clause, int] | None) -> str:
    if d is None:
        return "s NO\n"
    lines = [f"s {deletion_size(d)}"]
    for c in sorted(d, key=clause_key):
        lines += ["d " + _clause_text(c)] * d[c]
    return "\n".join(lines) + "\n"


def parse_deletion(text: str) -> Counter | None:
    """Inverse of :func:`format_deletion`."""
    lines = [l.split() for l in text.splitlines() if l.strip() and not l.startswith("c")]
    if not lines or lines[0][0] != "s":
        raise ValueError("solution must start with an 's' line")
    if lines[0][1] == "NO":
        return None
    d: Counter = Counter()
    for tokens in lines[1:]:
        if tokens[0] != "d" or tokens[-1] != "0":
            raise ValueError(f"bad deletion line {' '.join(tokens)}")
        d[make_clause(*(int(t) for t in tokens[1:-1]))] += 1
    if deletion_size(d) != int(lines[0][1]):
        raise ValueError("size line disagrees with deletion lines")
    return d
