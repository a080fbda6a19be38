"""Finite poset engine and the flip order on maximal tubings.

Elements are arbitrary hashable keys stored in a deterministic topological
order; the reachability relation is kept as one up-set and one down-set
bitmask per element.  Because the storage order extends the partial order,
meets and joins are O(1) bitmask probes: the meet of x and y exists iff the
highest-indexed common lower bound dominates all the others.

``build_lg`` assembles the poset L_G of maximal tubings: covers are the
flips oriented by comparing tops, the transitive closure is computed rather
than assumed, and acyclicity plus irredundancy of covers are verified on
construction (the orientation is induced by a linear functional, so a cycle
or a redundant edge would indicate a flip bug).
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Optional, Sequence

import numpy as np

from .errors import ElementNotFound, NotALattice, NotComparable, TubelatError
from .graphs import Graph, tubes
from .tubings import Tubing, enumerate_maximal_tubings, is_tube, oriented_flips


class Poset:
    """Immutable finite poset over hashable element keys."""

    __slots__ = ("elements", "_index", "covers", "_up", "_down", "_meets", "_joins")

    def __init__(self, elements: Sequence[Hashable], covers: Iterable[tuple]):
        """Build from elements and cover pairs (lower, upper), given by key.

        Raises if the covers contain a cycle or a transitively redundant
        pair.  Elements are reordered into a deterministic linear extension:
        ties broken by original position.
        """
        idx = {e: i for i, e in enumerate(elements)}
        if len(idx) != len(elements):
            raise TubelatError("duplicate poset elements")
        cov = sorted({(idx[a], idx[b]) for a, b in covers})
        n = len(elements)
        succs = [[] for _ in range(n)]
        indeg = [0] * n
        for a, b in cov:
            if a == b:
                raise TubelatError("cover relation is a self-loop")
            succs[a].append(b)
            indeg[b] += 1
        order = []
        heap = [i for i in range(n) if indeg[i] == 0]
        heapq.heapify(heap)
        while heap:
            v = heapq.heappop(heap)
            order.append(v)
            for w in succs[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, w)
        if len(order) != n:
            raise TubelatError("cover relation has a cycle")
        pos = {old: new for new, old in enumerate(order)}
        self.elements = tuple(elements[old] for old in order)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.covers = tuple(sorted((pos[a], pos[b]) for a, b in cov))
        up = [1 << i for i in range(n)]
        cov_by_lower = [[] for _ in range(n)]
        for a, b in self.covers:
            cov_by_lower[a].append(b)
        for i in range(n - 1, -1, -1):
            for b in cov_by_lower[i]:
                up[i] |= up[b]
        down = [1 << i for i in range(n)]
        cov_by_upper = [[] for _ in range(n)]
        for a, b in self.covers:
            cov_by_upper[b].append(a)
        for i in range(n):
            for a in cov_by_upper[i]:
                down[i] |= down[a]
        self._up = tuple(up)
        self._down = tuple(down)
        self._meets = None
        self._joins = None
        for a, b in self.covers:
            between = self._up[a] & self._down[b] & ~(1 << a) & ~(1 << b)
            if between:
                raise TubelatError(
                    f"cover {self.elements[a]!r} < {self.elements[b]!r} is transitively redundant"
                )

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def from_relation(elements: Sequence[Hashable], pairs: Iterable[tuple]) -> "Poset":
        """Build from an arbitrary set of (lower, upper) relation pairs; the
        transitive reduction is computed here."""
        idx = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        succ = [set() for _ in range(n)]
        for a, b in pairs:
            ia, ib = idx[a], idx[b]
            if ia != ib:
                succ[ia].add(ib)
        # transitive closure by DFS from each node
        reach = [0] * n
        def dfs(v: int) -> int:
            if reach[v]:
                return reach[v]
            acc = 1 << v
            reach[v] = acc  # cycle guard; overwritten below
            for w in succ[v]:
                acc |= dfs(w)
            reach[v] = acc
            return acc
        for v in range(n):
            dfs(v)
        for v in range(n):
            for w in succ[v]:
                if reach[w] >> v & 1:
                    raise TubelatError("relation has a cycle")
        covers = []
        for v in range(n):
            strict = reach[v] & ~(1 << v)
            for w in _bits(strict):
                between = 0
                for u in _bits(strict & ~(1 << w)):
                    if reach[u] >> w & 1:
                        between = 1
                        break
                if not between:
                    covers.append((elements[v], elements[w]))
        return Poset(elements, covers)

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, x: Hashable) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise ElementNotFound(f"{x!r} not in poset")

    # -- order queries -------------------------------------------------------

    def le(self, x: Hashable, y: Hashable) -> bool:
        i, j = self.index(x), self.index(y)
        return bool(self._up[i] >> j & 1)

    def lt(self, x: Hashable, y: Hashable) -> bool:
        return x != y and self.le(x, y)

    def comparable(self, x: Hashable, y: Hashable) -> bool:
        return self.le(x, y) or self.le(y, x)

    def upper_covers(self, x: Hashable) -> list:
        i = self.index(x)
        return [self.elements[b] for a, b in self.covers if a == i]

    def lower_covers(self, x: Hashable) -> list:
        i = self.index(x)
        return [self.elements[a] for a, b in self.covers if b == i]

    def minimum(self) -> Optional[Hashable]:
        mins = [i for i in range(len(self)) if self._down[i] == 1 << i]
        return self.elements[mins[0]] if len(mins) == 1 else None

    def maximum(self) -> Optional[Hashable]:
        maxs = [i for i in range(len(self)) if self._up[i] == 1 << i]
        return self.elements[maxs[0]] if len(maxs) == 1 else None

    def _meet_idx(self, i: int, j: int) -> int:
        common = self._down[i] & self._down[j]
        if common == 0:
            return -1
        z = common.bit_length() - 1
        return z if self._down[z] == common else -1

    def _join_idx(self, i: int, j: int) -> int:
        common = self._up[i] & self._up[j]
        if common == 0:
            return -1
        z = (common & -common).bit_length() - 1
        return z if self._up[z] == common else -1

    def meet(self, x: Hashable, y: Hashable) -> Optional[Hashable]:
        z = self._meet_idx(self.index(x), self.index(y))
        return None if z < 0 else self.elements[z]

    def join(self, x: Hashable, y: Hashable) -> Optional[Hashable]:
        z = self._join_idx(self.index(x), self.index(y))
        return None if z < 0 else self.elements[z]

    def meet_table(self) -> np.ndarray:
        """n x n int32 table of meet indices, -1 where no meet exists."""
        if self._meets is None:
            n = len(self)
            t = np.empty((n, n), dtype=np.int32)
            for i in range(n):
                t[i, i] = i
                for j in range(i + 1, n):
                    m = self._meet_idx(i, j)
                    t[i, j] = m
                    t[j, i] = m
            self._meets = t
        return self._meets

    def join_table(self) -> np.ndarray:
        if self._joins is None:
            n = len(self)
            t = np.empty((n, n), dtype=np.int32)
            for i in range(n):
                t[i, i] = i
                for j in range(i + 1, n):
                    m = self._join_idx(i, j)
                    t[i, j] = m
                    t[j, i] = m
            self._joins = t
        return self._joins

    def is_meet_semilattice(self) -> bool:
        return bool((self.meet_table() >= 0).all())

    def is_join_semilattice(self) -> bool:
        return bool((self.join_table() >= 0).all())

    def is_lattice(self) -> bool:
        return self.is_meet_semilattice() and self.is_join_semilattice()

    def lattice_failure_witness(self):
        """A pair with no join (reported with its minimal upper bounds) or no
        meet (with maximal lower bounds), or None when a lattice."""
        n = len(self)
        for i in range(n):
            for j in range(i + 1, n):
                if self._join_idx(i, j) < 0:
                    common = self._up[i] & self._up[j]
                    mubs = [
                        self.elements[z]
                        for z in _bits(common)
                        if self._down[z] & common == 1 << z
                    ]
                    return (self.elements[i], self.elements[j], "join", mubs)
                if self._meet_idx(i, j) < 0:
                    common = self._down[i] & self._down[j]
                    mlbs = [
                        self.elements[z]
                        for z in _bits(common)
                        if self._up[z] & common == 1 << z
                    ]
                    return (self.elements[i], self.elements[j], "meet", mlbs)
        return None

    def is_semidistributive(self) -> bool:
        return self.semidistributivity_witness() is None

    def semidistributivity_witness(self):
        """None if both SD-meet and SD-join hold; else ((x, y, z), kind)."""
        if not self.is_lattice():
            raise NotALattice("semidistributivity is defined for lattices")
        m, j = self.meet_table(), self.join_table()
        n = len(self)
        for z in range(n):
            mz = m[:, z]
            gathered = mz[j]          # (x, y) -> meet(join(x, y), z)
            eq = mz[:, None] == mz[None, :]
            bad = eq & (gathered != mz[:, None])
            if bad.any():
                x, y = map(int, np.argwhere(bad)[0])
                return (self.elements[x], self.elements[y], self.elements[z]), "SD-meet"
            jz = j[:, z]
            gathered = jz[m]
            eq = jz[:, None] == jz[None, :]
            bad = eq & (gathered != jz[:, None])
            if bad.any():
                x, y = map(int, np.argwhere(bad)[0])
                return (self.elements[x], self.elements[y], self.elements[z]), "SD-join"
        return None

    def mobius(self, x: Hashable, y: Hashable) -> int:
        """Mobius function on the interval [x, y]."""
        i, j = self.index(x), self.index(y)
        if not self._up[i] >> j & 1:
            raise NotComparable(f"{x!r} and {y!r} are not comparable in order")
        interval = self._up[i] & self._down[j]
        mu = {i: 1}
        for z in _bits(interval):
            if z == i:
                continue
            below = interval & self._down[z] & ~(1 << z)
            mu[z] = -sum(mu[w] for w in _bits(below))
        return mu[j]

    def interval(self, x: Hashable, y: Hashable) -> list:
        i, j = self.index(x), self.index(y)
        return [self.elements[z] for z in _bits(self._up[i] & self._down[j])]

    # -- constructions ---------------------------------------------------------

    def dual(self) -> "Poset":
        return Poset(self.elements, [(self.elements[b], self.elements[a]) for a, b in self.covers])

    def product(self, other: "Poset") -> "Poset":
        elements = [(x, y) for x in self.elements for y in other.elements]
        covers = []
        for a, b in self.covers:
            for y in other.elements:
                covers.append(((self.elements[a], y), (self.elements[b], y)))
        for x in self.elements:
            for a, b in other.covers:
                covers.append(((x, other.elements[a]), (x, other.elements[b])))
        return Poset(elements, covers)

    def relabel(self, f: Callable[[Hashable], Hashable]) -> "Poset":
        return Poset(
            [f(e) for e in self.elements],
            [(f(self.elements[a]), f(self.elements[b])) for a, b in self.covers],
        )

    def is_isomorphic_to(self, other: "Poset") -> bool:
        return _isomorphic(self, other)

    # -- export ---------------------------------------------------------------

    def to_json_obj(self, label: Callable[[Hashable], str] = str) -> dict:
        return {
            "elements": [label(e) for e in self.elements],
            "covers": [[a, b] for a, b in self.covers],
        }

    def to_dot(
        self,
        label: Callable[[Hashable], str] = str,
        annotate: Iterable[Hashable] = (),
        name: str = "poset",
    ) -> str:
        """DOT digraph; edges point from lower to upper cover."""
        marked = {self.index(e) for e in annotate}
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i, e in enumerate(self.elements):
            attrs = f'label="{label(e)}"'
            if i in marked:
                attrs += ", style=filled, fillcolor=lightblue"
            lines.append(f"  n{i} [{attrs}];")
        for a, b in self.covers:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def poset_from_le(elements: Sequence[Hashable], le: Callable[[Hashable, Hashable], bool]) -> Poset:
    pairs = [
        (x, y)
        for x, y in itertools.permutations(elements, 2)
        if le(x, y)
    ]
    return Poset.from_relation(elements, pairs)


def _refine_labels(p: Poset) -> list:
    n = len(p)
    labels = [0] * n
    up_covers = [[] for _ in range(n)]
    down_covers = [[] for _ in range(n)]
    for a, b in p.covers:
        up_covers[a].append(b)
        down_covers[b].append(a)
    labels = [
        (len(up_covers[i]), len(down_covers[i]), bin(p._up[i]).count("1"), bin(p._down[i]).count("1"))
        for i in range(n)
    ]
    for _ in range(n):
        new = []
        for i in range(n):
            new.append(
                (
                    labels[i],
                    tuple(sorted(labels[j] for j in up_covers[i])),
                    tuple(sorted(labels[j] for j in down_covers[i])),
                )
            )
        canon = {v: k for k, v in enumerate(sorted(set(new)))}
        new_ids = [canon[v] for v in new]
        if new_ids == labels:
            break
        labels = new_ids
    return labels


def _isomorphic(p: Poset, q: Poset) -> bool:
    if len(p) != len(q) or len(p.covers) != len(q.covers):
        return False
    lp, lq = _refine_labels(p), _refine_labels(q)
    if sorted(lp) != sorted(lq):
        return False
    n = len(p)
    candidates = [[j for j in range(n) if lq[j] == lp[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    qcov = set(q.covers)
    up_adj = [set() for _ in range(n)]
    down_adj = [set() for _ in range(n)]
    for a, b in p.covers:
        up_adj[a].add(b)
        down_adj[b].add(a)
    assignment: dict = {}
    used = set()

    def bk(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for j in candidates[i]:
            if j in used:
                continue
            ok = True
            for b in up_adj[i]:
                if b in assignment and (j, assignment[b]) not in qcov:
                    ok = False
                    break
            if ok:
                for a in down_adj[i]:
                    if a in assignment and (assignment[a], j) not in qcov:
                        ok = False
                        break
            if ok:
                assignment[i] = j
                used.add(j)
                if bk(k + 1):
                    return True
                del assignment[i]
                used.discard(j)
        return False

    return bk(0)


# ---------------------------------------------------------------------------
# The flip order L_G
# ---------------------------------------------------------------------------


def build_lg(g: Graph) -> Poset:
    """The poset of maximal tubings, ordered by oriented flips."""
    elements = enumerate_maximal_tubings(g)
    covers = set()
    for x in elements:
        for y, J, goes_up in oriented_flips(x):
            if goes_up:
                covers.add((x, y))
            else:
                covers.add((y, x))
    return Poset(elements, sorted(covers, key=lambda c: (c[0].key(), c[1].key())))


@dataclass(frozen=True)
class FaceIntervalResult:
    ok: bool
    lower: Optional[Tubing]
    upper: Optional[Tubing]
    witness: Optional[tuple]


def tubing_face_interval(g: Graph, y: Tubing, lg: Optional[Poset] = None) -> FaceIntervalResult:
    """Check that the maximal tubings containing ``y`` form an order-convex
    interval of L_G, returning its endpoints or a violating chain."""
    from .tubings import make_tubing

    make_tubing(g, y.tubes)  # validates tubes and pairwise compatibility
    lg = lg if lg is not None else build_lg(g)
    members = [x for x in lg.elements if set(y.tubes) <= set(x.tubes)]
    if not members:
        return FaceIntervalResult(False, None, None, None)
    member_idx = [lg.index(x) for x in members]
    member_mask = 0
    for i in member_idx:
        member_mask |= 1 << i
    minimal = [i for i in member_idx if lg._down[i] & member_mask == 1 << i]
    maximal = [i for i in member_idx if lg._up[i] & member_mask == 1 << i]
    if len(minimal) != 1 or len(maximal) != 1:
        lo, hi = minimal[0], maximal[-1]
        return FaceIntervalResult(
            False, lg.elements[lo], lg.elements[hi], ("multiple extrema", len(minimal), len(maximal))
        )
    lo, hi = minimal[0], maximal[0]
    interval_mask = lg._up[lo] & lg._down[hi]
    if interval_mask != member_mask:
        stray = interval_mask & ~member_mask
        z = next(_bits(stray))
        return FaceIntervalResult(
            False,
            lg.elements[lo],
            lg.elements[hi],
            (lg.elements[lo], lg.elements[z], lg.elements[hi]),
        )
    return FaceIntervalResult(True, lg.elements[lo], lg.elements[hi], None)


def all_tubings(g: Graph) -> list[Tubing]:
    """Every tubing of g (all faces of the nested set complex, incl. empty)."""
    ts = list(tubes(g))
    m = len(ts)
    compat = [[False] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            a, b = ts[i], ts[j]
            ok = a <= b or b <= a or not is_tube(g, a | b)
            compat[i][j] = compat[j][i] = ok
    out: list[Tubing] = []

    def rec(chosen: list, start: int):
        out.append(Tubing(g, tuple(ts[i] for i in chosen)))
        for k in range(start, m):
            if all(compat[i][k] for i in chosen):
                chosen.append(k)
                rec(chosen, k + 1)
                chosen.pop()

    rec([], 0)
    return out
