"""Labeled simple undirected graphs and their structural statistics.

Graphs are immutable values: every operation returns a new ``Graph``.
Nodes are integers ``0..n-1`` with no gaps; adjacency is kept as a tuple
of frozensets so products of a few thousand nodes stay cheap.  Composite
constructors carry a human-readable label (e.g. ``"(P12+v)*K3"``) so that
downstream certificates can name the graph they talk about.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb


class GraphFormatError(ValueError):
    """Malformed edge-list or JSON graph input."""


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("n", "adj", "label")

    def __init__(self, n: int, edges=(), label: str = "G"):
        if n < 0:
            raise ValueError("graph order must be nonnegative")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge endpoint out of range: ({u}, {v})")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if v in adj[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in adj))
        object.__setattr__(self, "label", label)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def m(self) -> int:
        """Number of edges."""
        return sum(len(s) for s in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> frozenset:
        return self.adj[v]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted (u, v) pairs with u < v."""
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def relabel(self, label: str) -> "Graph":
        return Graph(self.n, self.edges(), label)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph({self.label!r}, n={self.n}, m={self.m})"


@dataclass(frozen=True)
class GraphStats:
    """Order, size, triangle count, cut node count and degree sequence."""

    n: int
    m: int
    triangles: int
    cut_nodes: int
    degrees: tuple[int, ...]  # sorted non-increasing


# ---------------------------------------------------------------------------
# named families

def make_path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least one node")
    return Graph(n, [(i, i + 1) for i in range(n - 1)], f"P{n}")


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least three nodes")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def make_complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs at least one node")
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)], f"K{n}")


def make_complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("complete bipartite graph needs nonempty cells")
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)], f"K{a},{b}")


def make_empty(n: int) -> Graph:
    """n isolated nodes (the edgeless graph)."""
    return Graph(n, [], f"{n}K1" if n != 1 else "K1")


def make_star(leaves: int) -> Graph:
    """K_{1,leaves}: one hub adjacent to every leaf."""
    if leaves < 0:
        raise ValueError("leaf count must be nonnegative")
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)], f"K1,{leaves}")


def make_petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph(10, outer + inner + spokes, "Petersen")


# ---------------------------------------------------------------------------
# operations

def _atom(label: str) -> str:
    """Parenthesize a label if it already contains an operator."""
    return f"({label})" if any(c in label for c in "+* ") else label


def apex_join(g: Graph) -> Graph:
    """G + v: add one node adjacent to every node of G."""
    v = g.n
    edges = g.edges() + [(u, v) for u in range(g.n)]
    return Graph(g.n + 1, edges, f"{_atom(g.label)}+v")


def lex_product(g: Graph, h: Graph) -> Graph:
    """Lexicographic product: replace every node of g by a copy of h.

    (u,x) ~ (v,y) iff u~v in g, or u=v and x~y in h.
    """
    if g.n == 0 or h.n == 0:
        raise ValueError("lexicographic product needs nonempty factors")
    nh = h.n
    edges = []
    for u, v in g.edges():
        for x in range(nh):
            for y in range(nh):
                edges.append((u * nh + x, v * nh + y))
    for u in range(g.n):
        for x, y in h.edges():
            edges.append((u * nh + x, u * nh + y))
    return Graph(g.n * nh, edges, f"{_atom(g.label)}*{_atom(h.label)}")


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """Disjoint union; h's node indices are shifted by g.n."""
    edges = g.edges() + [(u + g.n, v + g.n) for u, v in h.edges()]
    return Graph(g.n + h.n, edges, f"{g.label} U {h.label}")


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def _articulation_count(g: Graph) -> int:
    """Count cut nodes by one iterative depth-first lowlink pass."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    is_art = [False] * n
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, iter(g.adj[root]))]
        while stack:
            v, it = stack[-1]
            descended = False
            for w in it:
                if disc[w] == -1:
                    parent[w] = v
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, iter(g.adj[w])))
                    descended = True
                    break
                elif w != parent[v]:
                    low[v] = min(low[v], disc[w])
            if not descended:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if u != root and low[v] >= disc[u]:
                        is_art[u] = True
        if root_children >= 2:
            is_art[root] = True
    return sum(is_art)


def triangle_count(g: Graph) -> int:
    """Exact 3-clique count by neighbor-set intersection over edges."""
    total = 0
    for u, v in g.edges():
        total += len(g.adj[u] & g.adj[v])
    return total // 3


def stats(g: Graph) -> GraphStats:
    degrees = tuple(sorted((len(s) for s in g.adj), reverse=True))
    return GraphStats(
        n=g.n,
        m=g.m,
        triangles=triangle_count(g),
        cut_nodes=_articulation_count(g),
        degrees=degrees,
    )


# ---------------------------------------------------------------------------
# parsing and serialization
#
# Edge-list format: first line "n m", then m lines "u v" (0 <= u < v < n),
# whitespace separated; '#' starts a comment.

def parse_graph(text: str, label: str = "G") -> Graph:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GraphFormatError("malformed header: empty input")
    header = lines[0].split()
    if len(header) != 2:
        raise GraphFormatError(f"malformed header: expected 'n m', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphFormatError(f"malformed header: expected 'n m', got {lines[0]!r}")
    if n < 0 or m < 0:
        raise GraphFormatError("malformed header: negative counts")
    if len(lines) - 1 != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(lines) - 1}")
    seen = set()
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"malformed edge line: {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"malformed edge line: {line!r}")
        if u == v:
            raise GraphFormatError(f"self-loop at node {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge endpoint out of range: ({u}, {v})")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge ({key[0]}, {key[1]})")
        seen.add(key)
        edges.append(key)
    return Graph(n, edges, label)


def serialize_graph(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges()], "label": g.label})


def graph_from_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
        return Graph(obj["n"], [tuple(e) for e in obj["edges"]], obj.get("label", "G"))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"bad graph JSON: {exc}") from exc


def max_connected_sets_bound(n: int, k: int) -> int:
    """binomial(n, k); handy upper bound for counts in tests."""
    return comb(n, k)
