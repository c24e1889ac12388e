"""Maximum matchings: Edmonds' blossom algorithm and Hopcroft-Karp."""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Mapping, Sequence

from kedkit.graph import Edge, EdgeSet, Graph, GraphError, VertexSet, edge, edge_set

Matching = EdgeSet


def maximum_matching(g: Graph) -> Matching:
    """Maximum cardinality matching of ``g``.

    Edmonds' algorithm with blossom shrinking done through a ``base`` array.
    Exposed vertices are tried as BFS roots in ascending order and
    neighbours are scanned in ascending order, so the result only depends
    on ``g``.  One pass over the roots suffices: a vertex that has no
    augmenting path keeps having none after later augmentations.
    """
    n = g.n
    adj = g.adjacency
    mate = [0] * (n + 1)  # 0 = unmatched
    for root in g.vertices:
        if mate[root] == 0 and adj[root]:
            end, parent = _find_augmenting_path(adj, mate, root, n)
            while end:
                p = parent[end]
                nxt = mate[p]
                mate[end], mate[p] = p, end
                end = nxt
    return frozenset((v, mate[v]) for v in g.vertices if mate[v] > v)


def _find_augmenting_path(adj, mate, root: int, n: int) -> tuple[int, list[int]]:
    parent = [0] * (n + 1)
    base = list(range(n + 1))
    used = [False] * (n + 1)
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * (n + 1)
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == 0:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] and parent[mate[to]]):
                cur = lca(v, to)
                in_blossom = [False] * (n + 1)
                mark_path(v, cur, to, in_blossom)
                mark_path(to, cur, v, in_blossom)
                for i in range(1, n + 1):
                    if in_blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif not parent[to]:
                parent[to] = v
                if mate[to] == 0:
                    return to, parent
                used[mate[to]] = True
                queue.append(mate[to])
    return 0, parent


def is_matching(g: Graph, m: Iterable[tuple[int, int]]) -> bool:
    seen: set[int] = set()
    for u, v in m:
        if not g.has_edge(u, v) or u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


def saturated_vertices(m: Iterable[Edge]) -> VertexSet:
    return frozenset(v for e in m for v in e)


def unsaturated_vertices(g: Graph, m: Iterable[tuple[int, int]]) -> VertexSet:
    m = list(m)
    if not is_matching(g, m):
        raise GraphError("not a matching of the graph")
    return frozenset(g.vertices) - saturated_vertices(m)


def hopcroft_karp(
    left: Sequence[Hashable],
    adj: Mapping[Hashable, Sequence[Hashable]],
    initial: Mapping[Hashable, Hashable] | None = None,
) -> dict[Hashable, Hashable]:
    """Maximum bipartite matching as a ``left -> right`` dict.

    ``adj`` maps each left vertex to its right neighbours; left and right
    labels may collide, the two sides are kept apart.  Iteration follows
    the order of ``left`` and of each neighbour list.  ``initial`` is an
    optional valid matching to augment from.
    """
    match_l: dict = dict(initial) if initial else {}
    match_r: dict = {r: l for l, r in match_l.items()}
    inf = float("inf")
    while True:
        # BFS layering from free left vertices
        dist: dict = {}
        queue = deque()
        for u in left:
            if u not in match_l:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for w in adj.get(u, ()):
                nxt = match_r.get(w)
                if nxt is None:
                    found = True
                elif nxt not in dist:
                    dist[nxt] = dist[u] + 1
                    queue.append(nxt)
        if not found:
            return match_l
        # iterative DFS along the layers
        pos = {u: 0 for u in left}
        for root in left:
            if root in match_l:
                continue
            stack = [root]
            while stack:
                u = stack[-1]
                nbrs = adj.get(u, ())
                advanced = False
                while pos[u] < len(nbrs):
                    w = nbrs[pos[u]]
                    pos[u] += 1
                    nxt = match_r.get(w)
                    if nxt is None:
                        # augment along the stack
                        for x in reversed(stack):
                            prev = match_l.get(x)
                            match_l[x] = w
                            match_r[w] = x
                            w = prev
                        stack = []
                        advanced = True
                        break
                    if dist.get(nxt, inf) == dist[u] + 1:
                        stack.append(nxt)
                        advanced = True
                        break
                if not advanced:
                    dist[u] = inf
                    stack.pop()


def bipartite_matching(
    g: Graph, left: Iterable[int], right: Iterable[int]
) -> Matching:
    """Maximum matching using only edges of ``g`` between disjoint ``left`` and ``right``."""
    left = sorted(set(left))
    right_set = frozenset(right)
    adj = {u: [w for w in g.adjacency[u] if w in right_set] for u in left}
    return frozenset(edge(u, w) for u, w in hopcroft_karp(left, adj).items())


def saturating_cut_matching(g: Graph, s: Iterable[int]) -> Matching | None:
    """Matching inside the cut ``(s, V \\ s)`` saturating every vertex of ``s``, else ``None``."""
    s = frozenset(s)
    m = bipartite_matching(g, s, frozenset(g.vertices) - s)
    return m if len(m) == len(s) else None


def matching_lines(m: Iterable[Edge]) -> str:
    """``s <size>`` followed by ``m <u> <v>`` lines in canonical order."""
    m = sorted(edge_set(m))
    return "".join([f"s {len(m)}\n"] + [f"m {u} {v}\n" for u, v in m])
