"""Undirected simple graphs, edge-set algebra and the extended DIMACS format.

Vertices are the integers ``1..n``.  An edge is stored as a pair ``(u, v)``
with ``u < v``; edge sets are ``frozenset`` objects of such pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

Edge = tuple[int, int]
EdgeSet = frozenset[Edge]
VertexSet = frozenset[int]


class GraphError(ValueError):
    """An edge or vertex argument does not belong to the graph."""


class GraphParseError(ValueError):
    """Malformed graph file.  ``kind`` names the failure, ``line`` is 1-based."""

    def __init__(self, kind: str, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.kind = kind
        self.line = line


def edge(u: int, v: int) -> Edge:
    """Canonical (min-first) form of the unordered pair ``{u, v}``."""
    return (u, v) if u < v else (v, u)


def edge_set(pairs: Iterable[tuple[int, int]]) -> EdgeSet:
    return frozenset(edge(u, v) for u, v in pairs)


def sorted_edges(edges: Iterable[Edge]) -> list[Edge]:
    return sorted(edge(u, v) for u, v in edges)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: EdgeSet = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            for w in (u, v):
                if not 1 <= w <= self.n:
                    raise GraphError(f"endpoint {w} outside 1..{self.n}")
            normalized.add(edge(u, v))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
        pairs = list(pairs)
        canon = [edge(u, v) for u, v in pairs]
        if len(set(canon)) != len(canon):
            raise GraphError("duplicate edge")
        return cls(n, frozenset(canon))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbour tuples indexed by vertex (index 0 unused)."""
        adj: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def canonical_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edges

    def induced(self, keep: Iterable[int]) -> Graph:
        """Subgraph on the same vertex ids keeping only edges inside ``keep``."""
        keep = set(keep)
        return Graph(self.n, frozenset(e for e in self.edges if e[0] in keep and e[1] in keep))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def star_graph(leaves: int) -> Graph:
    """Star with centre 1 and leaves ``2..leaves+1``."""
    return Graph.from_edges(leaves + 1, [(1, i) for i in range(2, leaves + 2)])


def _check_vertex(g: Graph, v: int) -> None:
    if not 1 <= v <= g.n:
        raise GraphError(f"vertex {v} outside 1..{g.n}")


def neighbors(g: Graph, v: int) -> VertexSet:
    _check_vertex(g, v)
    return frozenset(g.adjacency[v])


def delete_edges(g: Graph, f: Iterable[tuple[int, int]]) -> Graph:
    """``G[E \\ F]``: same vertices, edges of ``f`` removed."""
    f = edge_set(f)
    missing = f - g.edges
    if missing:
        raise GraphError(f"not an edge of the graph: {min(missing)}")
    return Graph(g.n, g.edges - f)


def cut_edges(g: Graph, a: Iterable[int], b: Iterable[int]) -> EdgeSet:
    """Edges with one endpoint in ``a`` and the other in ``b`` (sets may overlap)."""
    a, b = frozenset(a), frozenset(b)
    for v in a | b:
        _check_vertex(g, v)
    return frozenset(
        (u, v) for u, v in g.edges if (u in a and v in b) or (u in b and v in a)
    )


def is_vertex_cover(g: Graph, s: Iterable[int]) -> bool:
    s = frozenset(s)
    return all(u in s or v in s for u, v in g.edges)


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    s = frozenset(s)
    return not any(u in s and v in s for u, v in g.edges)


# --- extended DIMACS ------------------------------------------------------


@dataclass(frozen=True)
class GraphFile:
    """Contents of a graph file: the graph plus optional matching and parameter."""

    graph: Graph
    matching: EdgeSet | None = None
    k: int | None = None


def _ints(tokens: list[str], count: int, lineno: int, what: str) -> list[int]:
    if len(tokens) != count:
        raise GraphParseError("syntax", lineno, f"'{what}' line needs {count} fields")
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphParseError("syntax", lineno, f"non-integer field in '{what}' line") from None


def read_graph_file(text: str | bytes) -> GraphFile:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = None
    edges: set[Edge] = set()
    matching: list[tuple[Edge, int]] = []
    k = None
    declared_m = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        if not line:
            continue
        tokens = line.split()
        tag = tokens[0]
        if tag == "c":
            continue
        if n is None:
            if tag != "p" or len(tokens) != 4 or tokens[1] != "edge":
                raise GraphParseError("header", lineno, "expected 'p edge <n> <m>' header")
            n, declared_m = _ints(tokens[2:], 2, lineno, "p")
            if n < 0 or declared_m < 0:
                raise GraphParseError("header", lineno, "negative count in header")
            continue
        if tag == "p":
            raise GraphParseError("header", lineno, "second 'p' line")
        if tag in ("e", "m"):
            u, v = _ints(tokens[1:], 2, lineno, tag)
            for w in (u, v):
                if not 1 <= w <= n:
                    raise GraphParseError("range", lineno, f"vertex {w} outside 1..{n}")
            if u == v:
                raise GraphParseError("self-loop", lineno, f"self-loop at {u}")
            e = edge(u, v)
            if tag == "e":
                if e in edges:
                    raise GraphParseError("duplicate", lineno, f"duplicate edge {e[0]} {e[1]}")
                edges.add(e)
            else:
                if any(e == prev for prev, _ in matching):
                    raise GraphParseError("duplicate", lineno, f"duplicate matching edge {e[0]} {e[1]}")
                matching.append((e, lineno))
        elif tag == "k":
            if k is not None:
                raise GraphParseError("syntax", lineno, "second 'k' line")
            (k,) = _ints(tokens[1:], 1, lineno, "k")
            if k < 0:
                raise GraphParseError("syntax", lineno, "negative parameter")
        else:
            raise GraphParseError("syntax", lineno, f"unknown line type '{tag}'")
    if n is None:
        raise GraphParseError("header", 0, "missing 'p edge' header")
    if len(edges) != declared_m:
        raise GraphParseError("header", 0, f"header declares {declared_m} edges, found {len(edges)}")
    for e, lineno in matching:
        if e not in edges:
            raise GraphParseError("range", lineno, f"matching edge {e[0]} {e[1]} is not an edge")
    m_set = frozenset(e for e, _ in matching) if matching else None
    return GraphFile(Graph(n, frozenset(edges)), m_set, k)


def parse_graph(text: str | bytes) -> Graph:
    return read_graph_file(text).graph


def write_graph(g: Graph, matching: Iterable[Edge] | None = None, k: int | None = None) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u} {v}" for u, v in g.canonical_edges()]
    if matching is not None:
        lines += [f"m {u} {v}" for u, v in sorted_edges(matching)]
    if k is not None:
        lines.append(f"k {k}")
    return "\n".join(lines) + "\n"


def write_graph_file(gf: GraphFile) -> str:
    return write_graph(gf.graph, gf.matching, gf.k)
