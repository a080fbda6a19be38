"""Tubings of a graph and their forest encodings.

Two tubes are *compatible* when they are nested or their union is not a tube
(compatible tubes that are not nested are automatically disjoint).  A tubing
is a pairwise-compatible set of tubes; the maximal ones all have exactly n
tubes and are the vertices of the graph associahedron.

Maximal tubings are encoded interchangeably as forests: ``chi`` sends a
forest to the tubing of its principal ideals, and ``tau`` inverts it.  The
``top`` of a tube in a maximal tubing is its unique vertex outside every
smaller tube, and tops are a bijection onto [n].

Flips exchange one non-maximal tube for the unique alternative; oriented by
comparing tops they generate the partial order on maximal tubings used by the
poset module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import (
    InvalidForest,
    InvalidTubing,
    InvalidVertex,
    MaximalTubeNotFlippable,
    NotAnIdeal,
    NotATube,
    TubeNotInTubing,
)
from .graphs import (
    Graph,
    LabeledGraph,
    _components,
    _labeled_adjacency,
    adjacency,
    components,
    contract,
    induced_subgraph,
    is_tube,
    standardize,
    tubes,
)


def tube_key(t: frozenset) -> tuple:
    return (len(t), tuple(sorted(t)))


def canonical_tubes(ts: Iterable[frozenset]) -> tuple[frozenset, ...]:
    return tuple(sorted(set(ts), key=tube_key))


@dataclass(frozen=True)
class Tubing:
    """A set of pairwise compatible tubes, canonically ordered."""

    graph: Graph
    tubes: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "tubes", canonical_tubes(self.tubes))

    def __len__(self) -> int:
        return len(self.tubes)

    def __contains__(self, t) -> bool:
        return frozenset(t) in set(self.tubes)

    def key(self) -> tuple:
        return tuple(tube_key(t) for t in self.tubes)

    def __lt__(self, other: "Tubing") -> bool:
        return self.key() < other.key()

    def is_maximal(self) -> bool:
        if len(self.tubes) != self.graph.n:
            return False
        return all(c in set(self.tubes) for c in components(self.graph))

    def label(self) -> str:
        return "".join("{" + ",".join(map(str, sorted(t))) + "}" for t in self.tubes)

    def to_json_obj(self) -> dict:
        return {
            "graph": self.graph.to_json_obj(),
            "tubes": [sorted(t) for t in self.tubes],
        }

    @staticmethod
    def from_json_obj(obj: dict) -> "Tubing":
        g = Graph.from_json_obj(obj["graph"])
        return make_tubing(g, [frozenset(t) for t in obj["tubes"]])


@dataclass(frozen=True)
class LabeledTubing:
    """Tubing of a LabeledGraph, as produced by restriction and quotient."""

    graph: LabeledGraph
    tubes: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "tubes", canonical_tubes(self.tubes))


def standardize_tubing(lt: LabeledTubing) -> Tubing:
    g, phi = standardize(lt.graph)
    return Tubing(g, tuple(frozenset(phi[v] for v in t) for t in lt.tubes))


def compatible(g: Graph, I: Iterable[int], J: Iterable[int]) -> bool:
    """Nested, or the union fails to be a tube."""
    I, J = frozenset(I), frozenset(J)
    if not is_tube(g, I):
        raise NotATube(f"{sorted(I)} is not a tube")
    if not is_tube(g, J):
        raise NotATube(f"{sorted(J)} is not a tube")
    if I <= J or J <= I:
        return True
    return not is_tube(g, I | J)


def make_tubing(g: Graph, ts: Iterable[frozenset], check: bool = True) -> Tubing:
    ts = [frozenset(t) for t in ts]
    if check:
        for t in ts:
            if not is_tube(g, t):
                raise NotATube(f"{sorted(t)} is not a tube of the graph")
        for a, b in itertools.combinations(set(ts), 2):
            if not compatible(g, a, b):
                raise InvalidTubing(f"incompatible tubes {sorted(a)}, {sorted(b)}")
    return Tubing(g, tuple(ts))


@dataclass(frozen=True)
class GForest:
    """Forest poset on [n] as a parent array; parent 0 marks a root.

    i <_T k means k lies on the path from i to its root.  Validity (principal
    ideals are tubes, incomparable ideals have non-tube unions) is checked by
    ``validate_gforest``; ``chi``/``tau`` always hand back valid values.
    """

    graph: Graph
    parent: tuple[int, ...]

    def __post_init__(self):
        if len(self.parent) != self.graph.n:
            raise InvalidForest("parent array length must equal n")

    def parent_of(self, v: int) -> int:
        return self.parent[v - 1]

    def children(self, v: int) -> list[int]:
        return [u for u in self.graph.vertices if self.parent[u - 1] == v]

    def roots(self) -> list[int]:
        return [u for u in self.graph.vertices if self.parent[u - 1] == 0]

    def less(self, i: int, k: int) -> bool:
        """i <_T k (strictly)."""
        v = self.parent_of(i)
        while v != 0:
            if v == k:
                return True
            v = self.parent_of(v)
        return False

    def ideal(self, v: int) -> frozenset:
        """The principal order ideal v_down."""
        out = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for c in self.children(x):
                if c not in out:
                    out.add(c)
                    stack.append(c)
        return frozenset(out)

    def to_json_obj(self) -> dict:
        return {"graph": self.graph.to_json_obj(), "parent": list(self.parent)}

    @staticmethod
    def from_json_obj(obj: dict) -> "GForest":
        g = Graph.from_json_obj(obj["graph"])
        t = GForest(g, tuple(int(p) for p in obj["parent"]))
        validate_gforest(t)
        return t


def validate_gforest(t: GForest) -> None:
    g = t.graph
    n = g.n
    for v in g.vertices:
        p = t.parent_of(v)
        if p != 0 and not (1 <= p <= n):
            raise InvalidForest(f"parent of {v} out of range")
        seen = {v}
        while p != 0:
            if p in seen:
                raise InvalidForest("parent relation has a cycle")
            seen.add(p)
            p = t.parent_of(p)
    ideals = {v: t.ideal(v) for v in g.vertices}
    for v in g.vertices:
        if not is_tube(g, ideals[v]):
            raise InvalidForest(f"principal ideal of {v} is not a tube")
    for i, k in itertools.combinations(g.vertices, 2):
        if not t.less(i, k) and not t.less(k, i):
            if is_tube(g, ideals[i] | ideals[k]):
                raise InvalidForest(
                    f"incomparable {i},{k} have a tube union {sorted(ideals[i] | ideals[k])}"
                )


def chi(t: GForest) -> Tubing:
    """Forest -> maximal tubing of principal ideals."""
    validate_gforest(t)
    return Tubing(t.graph, tuple(t.ideal(v) for v in t.graph.vertices))


def smallest_containing_tube(x: Tubing, v: int) -> frozenset:
    """The smallest tube of x containing v (v_down when x is maximal)."""
    best = None
    for t in x.tubes:
        if v in t and (best is None or len(t) < len(best)):
            best = t
    if best is None:
        raise InvalidTubing(f"no tube of the tubing contains {v}")
    return best


def top(x: Tubing, I: Iterable[int]) -> int:
    """The unique vertex of I avoiding every tube of x properly inside I."""
    I = frozenset(I)
    if I not in x:
        raise TubeNotInTubing(f"{sorted(I)} not in tubing")
    covered = set()
    for t in x.tubes:
        if t < I:
            covered |= t
    rest = I - covered
    if len(rest) != 1:
        raise InvalidTubing(f"tube {sorted(I)} has no unique top; tubing not maximal?")
    return next(iter(rest))


def tau(x: Tubing, check: bool = True) -> GForest:
    """Maximal tubing -> forest: top(I) is covered by top of the next tube up."""
    if check and not x.is_maximal():
        raise InvalidTubing("tau requires a maximal tubing")
    parent = [0] * x.graph.n
    tops = {t: top(x, t) for t in x.tubes}
    by_size = sorted(x.tubes, key=tube_key)
    for t in x.tubes:
        smallest_strict = None
        for s in by_size:
            if t < s:
                smallest_strict = s
                break
        if smallest_strict is not None:
            parent[tops[t] - 1] = tops[smallest_strict]
    return GForest(x.graph, tuple(parent))


def psi_tubing(g: Graph, word: Sequence[int]) -> Tubing:
    """The canonical surjection from words to maximal tubings.

    The j-th tube is the connected component of w_j in the subgraph induced
    by the prefix {w_1, ..., w_j}.
    """
    adj = adjacency(g)
    placed: set = set()
    ts = []
    for v in word:
        placed.add(v)
        comp = {v}
        stack = [v]
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if b in placed and b not in comp:
                    comp.add(b)
                    stack.append(b)
        ts.append(frozenset(comp))
    return Tubing(g, tuple(ts))


@lru_cache(maxsize=None)
def enumerate_maximal_tubings(g: Graph) -> tuple[Tubing, ...]:
    """All maximal tubings, canonically ordered.

    Sweeps the n! words through the canonical surjection (which is onto) for
    n <= 8; larger graphs fall back to completion search over rooted
    component decompositions.
    """
    if g.n <= 8:
        seen = {psi_tubing(g, w) for w in itertools.permutations(g.vertices)}
        return tuple(sorted(seen))
    return tuple(sorted(_enumerate_by_decomposition(g)))


def _enumerate_by_decomposition(g: Graph) -> list[Tubing]:
    adj = {v: set(adjacency(g)[v]) for v in g.vertices}

    memo: dict = {}

    def rec(S: frozenset) -> list[frozenset]:
        """Maximal tubings of the induced subgraph on S, as frozen tube-sets."""
        if S in memo:
            return memo[S]
        comps = _components(S, {v: adj[v] & S for v in S})
        per_comp = []
        for C in comps:
            # each maximal tubing of a component picks a root (the top of the
            # component tube) and recurses on what is left
            opts = []
            for r in sorted(C):
                for rest in rec(C - {r}):
                    opts.append(rest | {C})
            per_comp.append(opts)
        if not comps:
            memo[S] = [frozenset()]
            return memo[S]
        combos = [frozenset()]
        for opts in per_comp:
            combos = [acc | o for acc in combos for o in opts]
        memo[S] = combos
        return combos

    return [Tubing(g, tuple(ts)) for ts in rec(frozenset(g.vertices))]


def maximal_tubings_oracle(g: Graph) -> tuple[Tubing, ...]:
    """Test oracle: maximal compatible subsets of the tube list.

    Uses the literal 2^(#tubes) filter when that is feasible and pivoted
    Bron-Kerbosch over the compatibility graph otherwise; both are
    independent of the sweep used in production.
    """
    ts = tubes(g)
    m = len(ts)
    if m == 0:
        return (Tubing(g, ()),)
    comp_mask = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            a, b = ts[i], ts[j]
            ok = a <= b or b <= a or not is_tube(g, a | b)
            if ok:
                comp_mask[i] |= 1 << j
                comp_mask[j] |= 1 << i
    results = []
    if m <= 16:
        for bits in range(1 << m):
            members = [i for i in range(m) if bits >> i & 1]
            if any(bits & ~(comp_mask[i] | 1 << i) for i in members):
                continue
            extendable = any(
                not bits >> i & 1 and bits & comp_mask[i] == bits for i in range(m)
            )
            if extendable:
                continue
            results.append(bits)
    else:
        full = (1 << m) - 1

        def bron_kerbosch(R: int, P: int, X: int):
            if P == 0 and X == 0:
                results.append(R)
                return
            pivot_pool = P | X
            pivot = (pivot_pool & -pivot_pool).bit_length() - 1
            best = -1
            pool = pivot_pool
            while pool:
                b = pool & -pool
                v = b.bit_length() - 1
                deg = bin(P & comp_mask[v]).count("1")
                if deg > best:
                    best, pivot = deg, v
                pool ^= b
            cand = P & ~comp_mask[pivot]
            while cand:
                b = cand & -cand
                v = b.bit_length() - 1
                bron_kerbosch(R | b, P & comp_mask[v], X & comp_mask[v])
                P &= ~b
                X |= b
                cand ^= b

        bron_kerbosch(0, full, 0)
    out = [
        Tubing(g, tuple(ts[i] for i in range(m) if bits >> i & 1)) for bits in results
    ]
    return tuple(sorted(out))


def restrict_tubing(x: Tubing, I: Iterable[int]) -> LabeledTubing:
    """X|_I: components of every I-intersected tube, a tubing of G|_I."""
    g = x.graph
    I = frozenset(I)
    for v in I:
        if not (1 <= v <= g.n):
            raise InvalidVertex(f"vertex {v} out of range")
    sub = induced_subgraph(g, I)
    adj = _labeled_adjacency(sub.vertices, sub.edges)
    out: set = set()
    for t in x.tubes:
        s = t & I
        if s:
            out |= set(_components(s, {v: adj[v] & s for v in s}))
    return LabeledTubing(sub, tuple(out))


def restrict_std(x: Tubing, I: Iterable[int]) -> Tubing:
    return standardize_tubing(restrict_tubing(x, I))


def _ideal_components(x: Tubing, I: frozenset) -> list[frozenset]:
    sub = induced_subgraph(x.graph, I)
    adj = _labeled_adjacency(sub.vertices, sub.edges)
    return _components(sub.vertices, adj)


def is_ideal(x: Tubing, I: Iterable[int]) -> bool:
    """An ideal is a union of pairwise disjoint tubes of x, equivalently a
    set whose G|_I components all belong to x."""
    I = frozenset(I)
    if not I:
        return True
    if not I <= set(x.graph.vertices):
        return False
    tset = set(x.tubes)
    return all(c in tset for c in _ideal_components(x, I))


def quotient_tubing(x: Tubing, I: Iterable[int]) -> LabeledTubing:
    """X/I = {J - I : J in X, J not inside I}, a tubing of G/I."""
    I = frozenset(I)
    if not is_ideal(x, I):
        raise NotAnIdeal(f"{sorted(I)} is not an ideal of the tubing")
    q = contract(x.graph, I)
    ts = {t - I for t in x.tubes if not t <= I}
    return LabeledTubing(q, tuple(ts))


def quotient_std(x: Tubing, I: Iterable[int]) -> Tubing:
    return standardize_tubing(quotient_tubing(x, I))


def ideals(x: Tubing) -> list[frozenset]:
    """All ideals (including the empty set and [n]), canonically ordered.

    For a maximal tubing these coincide with the order ideals of tau(x).
    """
    tset = set(x.tubes)
    out = []
    for r in range(x.graph.n + 1):
        for sub in itertools.combinations(x.graph.vertices, r):
            I = frozenset(sub)
            if not I or all(c in tset for c in _ideal_components(x, I)):
                out.append(I)
    return sorted(out, key=tube_key)


def linear_extensions(t: GForest) -> list[tuple[int, ...]]:
    """All words listing every element after everything below it in t."""
    n = t.graph.n
    children = {v: set(t.children(v)) for v in t.graph.vertices}
    out: list[tuple[int, ...]] = []

    def rec(remaining: set, pending: dict, acc: list):
        if not remaining:
            out.append(tuple(acc))
            return
        for v in sorted(remaining):
            if not pending[v]:
                acc.append(v)
                rest = remaining - {v}
                newpend = {u: pending[u] - {v} for u in rest}
                rec(rest, newpend, acc)
                acc.pop()

    rec(set(t.graph.vertices), {v: set(children[v]) for v in t.graph.vertices}, [])
    return out


def _greedy_extension(t: GForest, pick_max: bool) -> tuple[int, ...]:
    remaining = set(t.graph.vertices)
    children = {v: set(t.children(v)) for v in t.graph.vertices}
    word = []
    while remaining:
        avail = [v for v in remaining if not (children[v] & remaining)]
        v = max(avail) if pick_max else min(avail)
        word.append(v)
        remaining.discard(v)
    return tuple(word)


def sigma_min(t: GForest) -> tuple[int, ...]:
    """Lexicographically minimal linear extension (take the least available
    minimal element at each step)."""
    return _greedy_extension(t, pick_max=False)


def sigma_max(t: GForest) -> tuple[int, ...]:
    """Lexicographically maximal linear extension; for left- or right-filled
    graphs this is the unique largest element of the fiber."""
    return _greedy_extension(t, pick_max=True)


def forest_inversions(t: GForest) -> frozenset:
    """Pairs (i, j) with i < j and j strictly below i in the forest."""
    return frozenset(
        (i, j)
        for i, j in itertools.combinations(t.graph.vertices, 2)
        if t.less(j, i)
    )


def forest_noninversions(t: GForest) -> frozenset:
    return frozenset(
        (i, j)
        for i, j in itertools.combinations(t.graph.vertices, 2)
        if t.less(i, j)
    )


def descents(t: GForest) -> frozenset:
    """Pairs (i, k), i < k, where i covers k in the forest."""
    return frozenset(
        (i, k) for k in t.graph.vertices for i in [t.parent_of(k)] if i != 0 and i < k
    )


def ascents(t: GForest) -> frozenset:
    """Pairs (i, k), i > k, where i covers k in the forest."""
    return frozenset(
        (p, k) for k in t.graph.vertices for p in [t.parent_of(k)] if p != 0 and p > k
    )


def flip(x: Tubing, I: Iterable[int]) -> tuple[Tubing, frozenset]:
    """Exchange tube I of the maximal tubing x for the unique alternative J.

    Let K be the smallest tube of x strictly containing I, a = top(I) and
    b = top(K); then J is the component of b in G restricted to K - {a}.
    Component tubes have no such K and cannot be flipped.
    """
    I = frozenset(I)
    if I not in x:
        raise TubeNotInTubing(f"{sorted(I)} not in tubing")
    K = None
    for t in sorted(x.tubes, key=tube_key):
        if I < t:
            K = t
            break
    if K is None:
        raise MaximalTubeNotFlippable(
            f"{sorted(I)} is the tube of a whole component; it cannot be flipped"
        )
    a = top(x, I)
    b = top(x, K)
    g = x.graph
    adj = adjacency(g)
    allowed = K - {a}
    comp = {b}
    stack = [b]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v in allowed and v not in comp:
                comp.add(v)
                stack.append(v)
    J = frozenset(comp)
    new_tubes = tuple(t for t in x.tubes if t != I) + (J,)
    return Tubing(g, new_tubes), J


def flip_by_search(x: Tubing, I: Iterable[int]) -> tuple[Tubing, frozenset]:
    """Oracle flip: scan all tubes for the unique completion (test use)."""
    I = frozenset(I)
    if I not in x:
        raise TubeNotInTubing(f"{sorted(I)} not in tubing")
    rest = [t for t in x.tubes if t != I]
    found = []
    for J in tubes(x.graph):
        if J == I or J in set(rest):
            continue
        if all(compatible(x.graph, J, t) for t in rest):
            found.append(J)
    if len(found) != 1:
        raise MaximalTubeNotFlippable(
            f"{sorted(I)} has {len(found)} exchange candidates"
        )
    J = found[0]
    return Tubing(x.graph, tuple(rest) + (J,)), J


def oriented_flips(x: Tubing) -> Iterator[tuple[Tubing, frozenset, bool]]:
    """Yield (neighbor, new tube, goes_up) for every flippable tube of x."""
    comps = set(components(x.graph))
    for I in x.tubes:
        if I in comps:
            continue
        y, J = flip(x, I)
        yield y, J, top(x, I) < top(y, J)


def vertex_coordinates(x: Tubing) -> tuple[int, ...]:
    """Vertex of the graph associahedron: coordinate i counts the tubes of G
    inside the smallest x-tube containing i that themselves contain i."""
    g = x.graph
    all_tubes = tubes(g)
    coords = []
    for i in g.vertices:
        idown = smallest_containing_tube(x, i)
        coords.append(sum(1 for t in all_tubes if i in t and t <= idown))
    return tuple(coords)
