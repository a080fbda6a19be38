"""Simple graphs on the vertex set [n] = {1, ..., n}.

A vertex subset I is a *tube* when the induced subgraph is connected.  The
minor operations here act on vertex sets, not edges: deletion restricts to
the complement, and contraction (the "reconnected complement") additionally
joins two surviving vertices whenever both have a neighbor inside a common
tube of the removed set.

Two kinds of graph values exist:

- ``Graph``: vertex set exactly [n].  This is the canonical type everything
  downstream (tubings, posets, Hopf structures) consumes.
- ``LabeledGraph``: arbitrary distinct positive integer labels, produced by
  restriction/deletion/contraction.  ``standardize`` is the only bridge back
  to ``Graph``; keeping the two apart avoids off-by-one relabeling bugs in
  chained minor operations.

Graph families (one graph per degree) live here too: path, complete,
edge-free, cycle, odd-bipartite, the distance bands H_{k,n}, and the general
distance-set families where {i, j} is an edge iff |j - i| lies in a fixed set.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from .errors import InvalidVertex, TubelatError

Edge = tuple[int, int]


def _normalize_edges(edges: Iterable[Iterable[int]]) -> tuple[Edge, ...]:
    out = set()
    for e in edges:
        a, b = e
        if a == b:
            raise TubelatError(f"loop edge {a!r}")
        out.add((min(a, b), max(a, b)))
    return tuple(sorted(out))


@dataclass(frozen=True, order=True)
class Graph:
    """Simple graph with vertex set {1, ..., n} and a sorted edge tuple."""

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise TubelatError("vertex count must be nonnegative")
        edges = _normalize_edges(self.edges)
        object.__setattr__(self, "edges", edges)
        for a, b in edges:
            if not (1 <= a < b <= self.n):
                raise InvalidVertex(f"edge ({a},{b}) out of range for n={self.n}")

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    def has_edge(self, i: int, j: int) -> bool:
        a, b = min(i, j), max(i, j)
        return (a, b) in set(self.edges)

    def neighbors(self, v: int) -> frozenset:
        return adjacency(self)[v]

    def to_text(self) -> str:
        lines = [str(self.n)]
        lines.extend(f"{a} {b}" for a, b in self.edges)
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "Graph":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise TubelatError("empty graph text")
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            a, b = ln.split()
            edges.append((int(a), int(b)))
        return Graph(n, tuple(edges))

    def to_json_obj(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @staticmethod
    def from_json_obj(obj: dict) -> "Graph":
        return Graph(int(obj["n"]), tuple((int(a), int(b)) for a, b in obj["edges"]))

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={{{', '.join(f'{a}{b}' if self.n < 10 else f'{a}-{b}' for a, b in self.edges)}}})"


@dataclass(frozen=True, order=True)
class LabeledGraph:
    """Graph on an arbitrary set of distinct positive integer labels."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        if len(verts) != len(self.vertices):
            raise TubelatError("duplicate vertex labels")
        if any(v < 1 for v in verts):
            raise InvalidVertex("labels must be positive")
        object.__setattr__(self, "vertices", verts)
        edges = _normalize_edges(self.edges)
        object.__setattr__(self, "edges", edges)
        vset = set(verts)
        for a, b in edges:
            if a not in vset or b not in vset:
                raise InvalidVertex(f"edge ({a},{b}) not within labels")


@lru_cache(maxsize=None)
def adjacency(g: Graph) -> tuple[frozenset, ...]:
    """Neighbor sets indexed by vertex; index 0 is unused."""
    adj = [set() for _ in range(g.n + 1)]
    for a, b in g.edges:
        adj[a].add(b)
        adj[b].add(a)
    return tuple(frozenset(s) for s in adj)


def _labeled_adjacency(vertices: Iterable[int], edges: Iterable[Edge]) -> dict:
    adj = {v: set() for v in vertices}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _components(vertices: Iterable[int], adj: dict) -> list[frozenset]:
    """Connected components, each a frozenset, ordered by smallest member."""
    seen: set = set()
    comps = []
    for v in sorted(vertices):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def components(g: Graph) -> list[frozenset]:
    adj = {v: set(adjacency(g)[v]) for v in g.vertices}
    return _components(g.vertices, adj)


def _check_vertex_subset(g: Graph, I: Iterable[int]) -> frozenset:
    I = frozenset(I)
    for v in I:
        if not (1 <= v <= g.n):
            raise InvalidVertex(f"vertex {v} not in [1..{g.n}]")
    return I


def induced_subgraph(g: Graph, I: Iterable[int]) -> LabeledGraph:
    """The induced subgraph on I, keeping the original labels."""
    I = _check_vertex_subset(g, I)
    edges = tuple(e for e in g.edges if e[0] in I and e[1] in I)
    return LabeledGraph(tuple(sorted(I)), edges)


def standardize(h: LabeledGraph) -> tuple[Graph, dict]:
    """Relabel onto [n] preserving the relative order of labels.

    Returns the standardized graph and the label map old -> new.
    """
    mapping = {v: i + 1 for i, v in enumerate(h.vertices)}
    edges = tuple((mapping[a], mapping[b]) for a, b in h.edges)
    return Graph(len(h.vertices), edges), mapping


def delete(g: Graph, I: Iterable[int]) -> LabeledGraph:
    """Vertex deletion: the induced subgraph on the complement of I."""
    I = _check_vertex_subset(g, I)
    return induced_subgraph(g, set(g.vertices) - I)


def contract(g: Graph, I: Iterable[int]) -> LabeledGraph:
    """The reconnected complement G/I.

    Surviving vertices i, j are adjacent when {i,j} was an edge of G or when
    both have a neighbor inside one tube of G|_I.  It suffices to test the
    maximal tubes, i.e. the connected components of G|_I.
    """
    I = _check_vertex_subset(g, I)
    rest = tuple(sorted(set(g.vertices) - I))
    sub = induced_subgraph(g, I)
    comps = _components(sub.vertices, _labeled_adjacency(sub.vertices, sub.edges))
    adj = adjacency(g)
    edges = set(e for e in g.edges if e[0] in set(rest) and e[1] in set(rest))
    for i, j in itertools.combinations(rest, 2):
        if (i, j) in edges:
            continue
        ni, nj = adj[i] & I, adj[j] & I
        if any(ni & c and nj & c for c in comps):
            edges.add((i, j))
    return LabeledGraph(rest, tuple(sorted(edges)))


def is_tube(g: Graph, I: Iterable[int]) -> bool:
    """True iff I is nonempty and G induces a connected subgraph on it."""
    I = _check_vertex_subset(g, I)
    if not I:
        return False
    adj = adjacency(g)
    start = next(iter(I))
    comp = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in I and y not in comp:
                comp.add(y)
                stack.append(y)
    return len(comp) == len(I)


@lru_cache(maxsize=None)
def tubes(g: Graph) -> tuple[frozenset, ...]:
    """All tubes, each exactly once, sorted by (size, vertex list).

    Enumerates by growing connected sets from their minimum vertex, so the
    cost is proportional to the number of tubes rather than 2^n.
    """
    adj = adjacency(g)
    out: list[frozenset] = []

    def grow(current: frozenset, banned: frozenset, vmin: int):
        out.append(current)
        cand = sorted(
            {u for w in current for u in adj[w] if u > vmin and u not in current and u not in banned}
        )
        for idx, u in enumerate(cand):
            grow(current | {u}, banned | set(cand[:idx]), vmin)

    for v in range(1, g.n + 1):
        grow(frozenset([v]), frozenset(), v)
    return tuple(sorted(out, key=lambda t: (len(t), sorted(t))))


def tubes_by_subset_filter(g: Graph) -> tuple[frozenset, ...]:
    """Oracle: filter all 2^n subsets by connectivity (test use only)."""
    out = []
    for r in range(1, g.n + 1):
        for sub in itertools.combinations(g.vertices, r):
            if is_tube(g, sub):
                out.append(frozenset(sub))
    return tuple(sorted(out, key=lambda t: (len(t), sorted(t))))


@dataclass(frozen=True)
class FilledStatus:
    filled: bool
    right_filled: bool
    left_filled: bool


def filled_status(g: Graph) -> FilledStatus:
    """Whether each edge {i,k} forces the chords {j,k} (RF) / {i,j} (LF)."""
    eset = set(g.edges)
    right = all(
        (j, k) in eset for (i, k) in g.edges for j in range(i + 1, k)
    )
    left = all(
        (i, j) in eset for (i, k) in g.edges for j in range(i + 1, k)
    )
    return FilledStatus(filled=right and left, right_filled=right, left_filled=left)


def minimal_non_edges(g: Graph) -> list[Edge]:
    """Pairs x < y off the edge set whose every intermediate z sees both ends."""
    eset = set(g.edges)
    out = []
    for x, y in itertools.combinations(g.vertices, 2):
        if (x, y) in eset:
            continue
        if all((x, z) in eset and (z, y) in eset for z in range(x + 1, y)):
            out.append((x, y))
    return out


def dual_graph(g: Graph) -> Graph:
    """Swap vertex i with n+1-i; an involution."""
    n = g.n
    return Graph(n, tuple((n + 1 - b, n + 1 - a) for a, b in g.edges))


def minors(g: Graph) -> list[Graph]:
    """All standardized graphs reachable by single-vertex deletions and
    contractions, deduplicated, in BFS order (the graph itself first)."""
    seen = {g}
    order = [g]
    queue = [g]
    while queue:
        h = queue.pop(0)
        for v in h.vertices:
            for child_lab in (delete(h, {v}), contract(h, {v})):
                child, _ = standardize(child_lab)
                if child not in seen:
                    seen.add(child)
                    order.append(child)
                    queue.append(child)
    return order


# ---------------------------------------------------------------------------
# Graph families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GraphFamily:
    """One graph per degree; ``rule(n)`` must return a Graph on [n]."""

    name: str
    rule: Callable[[int], Graph] = field(compare=False, repr=False)

    def __call__(self, n: int) -> Graph:
        g = self.rule(n)
        if g.n != n:
            raise TubelatError(f"family {self.name!r} returned wrong degree at n={n}")
        return g


def _distance_graph(n: int, allowed: Callable[[int], bool]) -> Graph:
    edges = tuple(
        (i, j) for i, j in itertools.combinations(range(1, n + 1), 2) if allowed(j - i)
    )
    return Graph(n, edges)


def family_from_A(A) -> GraphFamily:
    """Distance-set family: {i,j} is an edge iff |j-i| is in A.

    ``A`` may be a finite set of positive integers or the string "all".
    """
    if A == "all":
        return GraphFamily("A:all", lambda n: _distance_graph(n, lambda d: True))
    A = frozenset(int(a) for a in A)
    if any(a < 1 for a in A):
        raise TubelatError("distance set must contain positive integers")
    name = "A:{" + ",".join(str(a) for a in sorted(A)) + "}"
    return GraphFamily(name, lambda n: _distance_graph(n, lambda d: d in A))


def family_path() -> GraphFamily:
    return GraphFamily("path", lambda n: _distance_graph(n, lambda d: d == 1))


def family_complete() -> GraphFamily:
    return GraphFamily("complete", lambda n: _distance_graph(n, lambda d: True))


def family_empty() -> GraphFamily:
    return GraphFamily("empty", lambda n: Graph(n))


def family_cycle() -> GraphFamily:
    """Cycle graphs with vertices labeled in cyclic order (C_2 = K_2)."""

    def rule(n: int) -> Graph:
        if n <= 1:
            return Graph(n)
        if n == 2:
            return Graph(2, ((1, 2),))
        edges = tuple((i, i + 1) for i in range(1, n)) + ((1, n),)
        return Graph(n, edges)

    return GraphFamily("cycle", rule)


def family_odd_bipartite() -> GraphFamily:
    """Complete bipartite family: i ~ j iff |i-j| is odd."""
    return GraphFamily("oddbip", lambda n: _distance_graph(n, lambda d: d % 2 == 1))


def family_h(k: int) -> GraphFamily:
    """Distance band H_{k,n}: edges at distance at most k."""
    if k < 0:
        raise TubelatError("k must be nonnegative")
    return GraphFamily(f"h:{k}", lambda n: _distance_graph(n, lambda d: d <= k))


def parse_family(descriptor: str) -> GraphFamily:
    """Parse a CLI family descriptor.

    Accepted: ``path``, ``complete``, ``empty``, ``cycle``, ``oddbip``,
    ``h:<k>``, ``A:{a1,a2,...}``, ``A:all``.
    """
    d = descriptor.strip()
    simple = {
        "path": family_path,
        "complete": family_complete,
        "empty": family_empty,
        "cycle": family_cycle,
        "oddbip": family_odd_bipartite,
    }
    if d in simple:
        return simple[d]()
    if d.startswith("h:"):
        return family_h(int(d[2:]))
    if d.startswith("A:"):
        body = d[2:]
        if body == "all":
            return family_from_A("all")
        body = body.strip("{}")
        items = [s for s in body.split(",") if s.strip()]
        return family_from_A(frozenset(int(s) for s in items))
    raise TubelatError(f"unknown family descriptor {descriptor!r}")


def parse_graph(descriptor: str) -> Graph:
    """Parse ``<family>:<n>`` descriptors, e.g. ``path:4`` or ``A:{1,3}:5``.

    >>> parse_graph("cycle:4").edges
    ((1, 2), (1, 4), (2, 3), (3, 4))
    """
    d = descriptor.strip()
    head, _, tail = d.rpartition(":")
    if not head:
        raise TubelatError(f"graph descriptor {descriptor!r} needs a ':<n>' suffix")
    try:
        n = int(tail)
    except ValueError:
        raise TubelatError(f"bad vertex count in {descriptor!r}")
    return parse_family(head)(n)


def load_graph_file(path: str) -> Graph:
    """Load a graph from the text format or the JSON alternative."""
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return Graph.from_json_obj(json.loads(text))
    return Graph.from_text(text)


def all_graphs(n: int) -> Iterator[Graph]:
    """All 2^C(n,2) graphs on [n], in a fixed deterministic order."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for bits in range(1 << len(pairs)):
        yield Graph(n, tuple(p for i, p in enumerate(pairs) if bits >> i & 1))


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1
