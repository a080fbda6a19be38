"""The weak order on permutations, arcs, and congruences.

Permutations are tuples w = (w_1, ..., w_n) over [n], ordered by inclusion of
inversion sets; covers swap an adjacent ascent/descent pair.  Meets and joins
are read off the materialized weak-order poset, built once per n.

A cover that swaps the values i < k determines an *arc* (i, k, eps): the sign
of an intermediate value j records whether j sits before (-) or after (+) the
swapped pair.  Arcs index the join-irreducible lattice congruences, and one
arc forces another exactly when it is a subarc, so a congruence is described
by the upward closure of its generating arcs.  Congruence classes are then
connected components of the Hasse diagram along contracted covers.

The canonical surjection ``psi`` onto maximal tubings lives here as well,
together with the derived notions: G-permutations, the projection pi_down for
right-filled graphs, the congruence of a filled graph generated by positive
arcs over minimal non-edges, and the translational/insertional family checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import (
    InvalidVertex,
    NotACover,
    NotFilled,
    NotRightFilled,
    SizeMismatch,
    TubelatError,
)
from .graphs import Graph, GraphFamily, adjacency, filled_status, minimal_non_edges
from .posets import Poset
from .tubings import Tubing, psi_tubing, sigma_min, tau

Perm = tuple[int, ...]


@lru_cache(maxsize=None)
def permutations(n: int) -> tuple[Perm, ...]:
    return tuple(itertools.permutations(range(1, n + 1)))


def check_perm(w: Sequence[int]) -> Perm:
    w = tuple(w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise TubelatError(f"{w!r} is not a permutation of [n]")
    return w


def parse_perm(s: str) -> Perm:
    s = s.strip()
    if "," in s:
        word = tuple(int(x) for x in s.split(","))
    else:
        word = tuple(int(ch) for ch in s)
    return check_perm(word)


def format_perm(w: Perm) -> str:
    if len(w) == 0:
        return "()"
    if max(w) <= 9:
        return "".join(map(str, w))
    return ",".join(map(str, w))


def inversions(w: Sequence[int]) -> frozenset:
    """Pairs (i, k), i < k, with k appearing before i in the word.

    >>> sorted(inversions((3, 1, 2)))
    [(1, 3), (2, 3)]
    """
    out = set()
    for s, k in enumerate(w):
        for i in w[s + 1 :]:
            if i < k:
                out.add((i, k))
    return frozenset(out)


def weak_le(u: Perm, w: Perm) -> bool:
    if len(u) != len(w):
        raise SizeMismatch("permutations of different sizes")
    return inversions(u) <= inversions(w)


def perm_descents(w: Perm) -> frozenset:
    """Descents as value pairs (i, k), i < k, k immediately before i."""
    return frozenset(
        (w[s], w[s - 1]) for s in range(1, len(w)) if w[s - 1] > w[s]
    )


def weak_covers(w: Perm) -> list[Perm]:
    """Lower covers: swap each adjacent descent pair."""
    out = []
    for s in range(1, len(w)):
        if w[s - 1] > w[s]:
            u = list(w)
            u[s - 1], u[s] = u[s], u[s - 1]
            out.append(tuple(u))
    return out


def weak_upper_covers(w: Perm) -> list[Perm]:
    out = []
    for s in range(1, len(w)):
        if w[s - 1] < w[s]:
            u = list(w)
            u[s - 1], u[s] = u[s], u[s - 1]
            out.append(tuple(u))
    return out


@lru_cache(maxsize=None)
def weak_order_poset(n: int) -> Poset:
    """The weak order on S_n as a Poset (intended for n <= 8)."""
    elements = permutations(n)
    covers = []
    for u in elements:
        for w in weak_upper_covers(u):
            covers.append((u, w))
    return Poset(elements, covers)


def weak_meet(u: Perm, w: Perm) -> Perm:
    if len(u) != len(w):
        raise SizeMismatch("permutations of different sizes")
    return weak_order_poset(len(u)).meet(check_perm(u), check_perm(w))


def weak_join(u: Perm, w: Perm) -> Perm:
    if len(u) != len(w):
        raise SizeMismatch("permutations of different sizes")
    return weak_order_poset(len(u)).join(check_perm(u), check_perm(w))


@lru_cache(maxsize=None)
def weak_cover_pairs(n: int) -> tuple[tuple[Perm, Perm], ...]:
    return tuple(
        (u, w) for u in permutations(n) for w in weak_upper_covers(u)
    )


# ---------------------------------------------------------------------------
# Arcs
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Arc:
    """Triple (i, k, signs) on ambient [n]; signs has one entry per value
    strictly between i and k, +1 or -1."""

    i: int
    k: int
    signs: tuple[int, ...]
    n: int

    def __post_init__(self):
        if not (1 <= self.i < self.k <= self.n):
            raise TubelatError(f"bad arc endpoints ({self.i},{self.k}) for n={self.n}")
        if len(self.signs) != self.k - self.i - 1:
            raise TubelatError("sign vector length must be k-i-1")
        if any(s not in (1, -1) for s in self.signs):
            raise TubelatError("signs must be +1/-1")

    def format(self) -> str:
        body = "".join("+" if s > 0 else "-" for s in self.signs)
        return f"{self.i}-{self.k}:{body}"

    def gap(self) -> int:
        return self.k - self.i

    def is_positive(self) -> bool:
        return all(s > 0 for s in self.signs)


def parse_arc(s: str, n: int) -> Arc:
    head, _, body = s.strip().partition(":")
    i, _, k = head.partition("-")
    signs = tuple(1 if ch == "+" else -1 for ch in body.strip())
    if any(ch not in "+-" for ch in body.strip()):
        raise TubelatError(f"bad sign characters in {s!r}")
    return Arc(int(i), int(k), signs, n)


def positive_arc(i: int, k: int, n: int) -> Arc:
    return Arc(i, k, tuple([1] * (k - i - 1)), n)


@lru_cache(maxsize=None)
def all_arcs(n: int) -> tuple[Arc, ...]:
    out = []
    for i in range(1, n + 1):
        for k in range(i + 1, n + 1):
            for signs in itertools.product((1, -1), repeat=k - i - 1):
                out.append(Arc(i, k, signs, n))
    return tuple(sorted(out))


def arc_of_cover(u: Perm, w: Perm) -> Arc:
    """The arc of a weak-order cover u <. w.

    The sign of a value j between the swapped values records whether u
    places j after (+) or before (-) the swapped adjacent pair.
    """
    n = len(u)
    if len(w) != n:
        raise NotACover("words of different sizes")
    diff = [s for s in range(n) if u[s] != w[s]]
    if len(diff) != 2 or diff[1] != diff[0] + 1:
        raise NotACover(f"{u!r} -> {w!r} does not swap an adjacent pair")
    p = diff[0]
    i, k = u[p], u[p + 1]
    if not (i < k and w[p] == k and w[p + 1] == i):
        raise NotACover(f"{u!r} -> {w!r} is not an ascent swap")
    pos = {v: s for s, v in enumerate(u)}
    signs = tuple(1 if pos[j] > p + 1 else -1 for j in range(i + 1, k))
    return Arc(i, k, signs, n)


def perm_of_arc(a: Arc) -> Perm:
    """The minimal (join-irreducible) permutation among upper ends of covers
    with this arc: prefix, left nodes, k, i, right nodes, suffix.

    >>> perm_of_arc(Arc(2, 5, (-1, 1), 5))
    (1, 3, 5, 2, 4)
    """
    left = [j for j in range(a.i + 1, a.k) if a.signs[j - a.i - 1] < 0]
    right = [j for j in range(a.i + 1, a.k) if a.signs[j - a.i - 1] > 0]
    word = (
        list(range(1, a.i)) + left + [a.k, a.i] + right + list(range(a.k + 1, a.n + 1))
    )
    return tuple(word)


def perm_of_arc_lower(a: Arc) -> Perm:
    """The unique lower cover of ``perm_of_arc(a)`` (swap the descent)."""
    w = list(perm_of_arc(a))
    p = w.index(a.k)
    w[p], w[p + 1] = w[p + 1], w[p]
    return tuple(w)


def is_subarc(a: Arc, b: Arc) -> bool:
    """a is a subarc of b: endpoints inside and signs agree on the overlap.
    Subarcs force their superarcs as congruences."""
    if a.n != b.n:
        raise SizeMismatch("arcs on different ambient sizes")
    if not (b.i <= a.i and a.k <= b.k):
        return False
    off = a.i - b.i
    return all(a.signs[j] == b.signs[j + off] for j in range(len(a.signs)))


def arc_delete(a: Arc, v: int) -> Arc:
    """Delete node v from the arc diagram.

    Endpoints shift for v outside [i, k]; an interior v drops its own sign;
    deleting an endpoint drops the adjacent sign.  Deleting an endpoint of a
    unit arc leaves nothing and is an error.
    """
    if not (1 <= v <= a.n):
        raise InvalidVertex(f"node {v} not in [1..{a.n}]")
    if v < a.i:
        return Arc(a.i - 1, a.k - 1, a.signs, a.n - 1)
    if v > a.k:
        return Arc(a.i, a.k, a.signs, a.n - 1)
    if a.k - a.i == 1:
        raise InvalidVertex("cannot delete an endpoint of a unit arc")
    if v == a.i:
        return Arc(a.i, a.k - 1, a.signs[1:], a.n - 1)
    if v == a.k:
        return Arc(a.i, a.k - 1, a.signs[:-1], a.n - 1)
    idx = v - a.i - 1
    return Arc(a.i, a.k - 1, a.signs[:idx] + a.signs[idx + 1 :], a.n - 1)


def arc_insertions(a: Arc, v: int) -> list[Arc]:
    """All arcs on [n+1] collapsing back to ``a`` when node v is deleted:
    one shifted copy for v outside the open interval, two sign choices for v
    strictly inside it."""
    m = a.n + 1
    if not (1 <= v <= m):
        raise InvalidVertex(f"insertion point {v} not in [1..{m}]")
    if v <= a.i:
        return [Arc(a.i + 1, a.k + 1, a.signs, m)]
    if v > a.k:
        return [Arc(a.i, a.k, a.signs, m)]
    idx = v - a.i - 1
    return [
        Arc(a.i, a.k + 1, a.signs[:idx] + (s,) + a.signs[idx:], m) for s in (1, -1)
    ]


def translates(a: Arc, m: int) -> list[Arc]:
    """All arcs on [m] with the same gap and sign vector."""
    return [
        Arc(i, i + a.gap(), a.signs, m) for i in range(1, m - a.gap() + 1)
    ]


# ---------------------------------------------------------------------------
# Congruences generated by arcs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Congruence:
    """A lattice congruence of the weak order, stored as its generating
    antichain and the upward (subarc-forcing) closure."""

    n: int
    generators: frozenset
    contracted: frozenset

    def contracts(self, a: Arc) -> bool:
        return a in self.contracted

    def uncontracted(self) -> frozenset:
        return frozenset(a for a in all_arcs(self.n) if a not in self.contracted)


def congruence_from_generators(n: int, arcs: Iterable[Arc]) -> Congruence:
    arcs = list(arcs)
    for a in arcs:
        if a.n != n:
            raise SizeMismatch(f"arc {a.format()} not on [{n}]")
    contracted = frozenset(
        b for b in all_arcs(n) if any(is_subarc(a, b) for a in arcs)
    )
    gens = frozenset(
        a for a in arcs if not any(o != a and is_subarc(o, a) for o in arcs)
    )
    return Congruence(n, gens, contracted)


def congruence_classes(theta: Congruence) -> tuple[tuple[Perm, ...], ...]:
    """Partition of S_n into classes: connected components of the Hasse
    diagram restricted to covers whose arc is contracted."""
    perms = permutations(theta.n)
    parent = {w: w for w in perms}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, w in weak_cover_pairs(theta.n):
        if arc_of_cover(u, w) in theta.contracted:
            ru, rw = find(u), find(w)
            if ru != rw:
                parent[ru] = rw
    groups: dict = {}
    for w in perms:
        groups.setdefault(find(w), []).append(w)
    return tuple(
        tuple(sorted(g)) for g in sorted(groups.values(), key=lambda g: sorted(g)[0])
    )


def class_minimum(cls: Sequence[Perm]) -> Perm:
    """The unique weak-order minimum of a congruence class."""
    members = set(cls)
    mins = [w for w in cls if not any(u in members for u in weak_covers(w))]
    if len(mins) != 1:
        raise TubelatError("congruence class has no unique minimum")
    return mins[0]


def class_maximum(cls: Sequence[Perm]) -> Perm:
    members = set(cls)
    maxs = [w for w in cls if not any(u in members for u in weak_upper_covers(w))]
    if len(maxs) != 1:
        raise TubelatError("congruence class has no unique maximum")
    return maxs[0]


def quotient_poset(theta: Congruence) -> Poset:
    """Quotient of the weak order: classes keyed by their minimum."""
    classes = congruence_classes(theta)
    rep = {}
    for cls in classes:
        m = class_minimum(cls)
        for w in cls:
            rep[w] = m
    pairs = set()
    for u, w in weak_cover_pairs(theta.n):
        if rep[u] != rep[w]:
            pairs.add((rep[u], rep[w]))
    return Poset.from_relation(sorted(set(rep.values())), sorted(pairs))


def is_lattice_congruence(partition: Iterable[Sequence[Perm]], n: int) -> bool:
    """Directly verify the meet and join stability of an equivalence
    relation on S_n: within a class, meeting or joining with any fixed z
    must land in a single class."""
    import numpy as np

    poset = weak_order_poset(n)
    cls_arr = np.empty(len(poset.elements), dtype=np.int32)
    nclasses = 0
    for idx, cls in enumerate(partition):
        nclasses = idx + 1
        for w in cls:
            cls_arr[poset.index(w)] = idx
    mt, jt = poset.meet_table(), poset.join_table()
    for idx in range(nclasses):
        members = np.flatnonzero(cls_arr == idx)
        if len(members) < 2:
            continue
        rows = cls_arr[mt[members, :]]
        if (rows != rows[0]).any():
            return False
        rows = cls_arr[jt[members, :]]
        if (rows != rows[0]).any():
            return False
    return True


def finest_lattice_congruence(n: int, pairs: Iterable[tuple[Perm, Perm]]):
    """The most refined equivalence on S_n identifying the given pairs that
    is stable under meet and join with arbitrary elements (congruence
    closure by a merge worklist)."""
    from collections import deque

    poset = weak_order_poset(n)
    mt, jt = poset.meet_table(), poset.join_table()
    m = len(poset.elements)
    parent = list(range(m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    work: deque = deque()

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            work.append((ra, rb))

    for u, w in pairs:
        union(poset.index(u), poset.index(w))
    while work:
        a, b = work.popleft()
        for z in range(m):
            union(int(mt[a, z]), int(mt[b, z]))
            union(int(jt[a, z]), int(jt[b, z]))
    groups: dict = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(poset.elements[i])
    return tuple(
        tuple(sorted(g)) for g in sorted(groups.values(), key=lambda g: sorted(g)[0])
    )


# ---------------------------------------------------------------------------
# The surjection onto maximal tubings
# ---------------------------------------------------------------------------


def psi(g: Graph, w: Sequence[int]) -> Tubing:
    """Map a permutation to the maximal tubing of prefix components."""
    w = check_perm(w)
    if len(w) != g.n:
        raise SizeMismatch(f"permutation size {len(w)} != graph size {g.n}")
    return psi_tubing(g, w)


@lru_cache(maxsize=None)
def psi_map(g: Graph) -> dict:
    """w -> psi(w) for every w in S_n (cached per graph)."""
    return {w: psi_tubing(g, w) for w in permutations(g.n)}


@lru_cache(maxsize=None)
def psi_fibers(g: Graph) -> dict:
    fibers: dict = {}
    for w, x in psi_map(g).items():
        fibers.setdefault(x, []).append(w)
    return {x: tuple(sorted(ws)) for x, ws in fibers.items()}


def is_g_permutation(g: Graph, w: Sequence[int]) -> bool:
    """Each prefix keeps w_i connected to the running maximum."""
    w = check_perm(w)
    if len(w) != g.n:
        raise SizeMismatch("permutation size mismatch")
    adj = adjacency(g)
    placed: set = set()
    running_max = 0
    for v in w:
        placed.add(v)
        running_max = max(running_max, v)
        comp = {v}
        stack = [v]
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if b in placed and b not in comp:
                    comp.add(b)
                    stack.append(b)
        if running_max not in comp:
            return False
    return True


def pi_down(g: Graph, w: Sequence[int]) -> Perm:
    """Project onto the unique G-permutation in the fiber of w (right-filled
    graphs only)."""
    if not filled_status(g).right_filled:
        raise NotRightFilled("pi_down requires a right-filled graph")
    return sigma_min(tau(psi(g, w)))


@lru_cache(maxsize=None)
def contracted_arcs_of_graph(g: Graph) -> frozenset:
    """Arcs whose covers the fiber partition of psi collapses.

    For filled graphs this is the contracted-arc set of the lattice
    congruence; it is well-defined from the raw fibers for every graph.
    """
    pm = psi_map(g)
    out = set()
    for u, w in weak_cover_pairs(g.n):
        if pm[u] == pm[w]:
            out.add(arc_of_cover(u, w))
    return frozenset(out)


def theta_g(g: Graph) -> Congruence:
    """The congruence of a filled graph: positive arcs over minimal
    non-edges generate it."""
    if not filled_status(g).filled:
        raise NotFilled("theta_g requires a filled graph")
    return congruence_from_generators(g.n, generators_of_theta_g(g))


def generators_of_theta_g(g: Graph) -> list[Arc]:
    if not filled_status(g).filled:
        raise NotFilled("generators are defined for filled graphs")
    return [positive_arc(x, y, g.n) for x, y in minimal_non_edges(g)]


# ---------------------------------------------------------------------------
# Lattice-map checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeMapReport:
    meet_ok: bool
    join_ok: bool
    witness: Optional[tuple]

    @property
    def ok(self) -> bool:
        return self.meet_ok and self.join_ok


def lattice_map_report(g: Graph, lg: Optional[Poset] = None) -> LatticeMapReport:
    """Exhaustively test whether psi preserves meets and joins.

    A pair whose images lack a meet/join in L_G counts as a failure and is
    reported as the witness.
    """
    from .posets import build_lg

    lg = lg if lg is not None else build_lg(g)
    n = g.n
    sn = weak_order_poset(n)
    pm = psi_map(g)
    img = [lg.index(pm[w]) for w in sn.elements]
    mt, jt = sn.meet_table(), sn.join_table()
    meet_ok, join_ok = True, True
    witness = None
    m = len(sn.elements)
    for a in range(m):
        for b in range(a + 1, m):
            if meet_ok:
                lm = lg._meet_idx(img[a], img[b])
                if lm < 0 or lm != img[mt[a, b]]:
                    meet_ok = False
                    if witness is None:
                        witness = ("meet", sn.elements[a], sn.elements[b])
            if join_ok:
                lj = lg._join_idx(img[a], img[b])
                if lj < 0 or lj != img[jt[a, b]]:
                    join_ok = False
                    if witness is None:
                        witness = ("join", sn.elements[a], sn.elements[b])
            if not meet_ok and not join_ok:
                return LatticeMapReport(meet_ok, join_ok, witness)
    return LatticeMapReport(meet_ok, join_ok, witness)


def is_lattice_quotient_map(g: Graph) -> bool:
    return lattice_map_report(g).ok


def is_meet_quotient_map(g: Graph) -> bool:
    return lattice_map_report(g).meet_ok


def is_join_quotient_map(g: Graph) -> bool:
    return lattice_map_report(g).join_ok


# ---------------------------------------------------------------------------
# Translational / insertional families
# ---------------------------------------------------------------------------


def _contracted_by_degree(source, max_degree: int) -> dict:
    """n -> contracted arc set, for a GraphFamily or a callable n -> arcs."""
    out = {}
    for n in range(max_degree + 1):
        if isinstance(source, GraphFamily):
            out[n] = contracted_arcs_of_graph(source(n))
        else:
            out[n] = frozenset(source(n))
    return out


def translational_witness(source, max_degree: int):
    """None when translational through max_degree; else (arc, translate)."""
    sets = _contracted_by_degree(source, max_degree)
    for n in range(max_degree + 1):
        for a in sorted(sets[n]):
            for m in range(a.gap() + 1, max_degree + 1):
                for b in translates(a, m):
                    if b not in sets[m]:
                        return (a, b)
    return None


def is_translational(source, max_degree: int) -> bool:
    return translational_witness(source, max_degree) is None


def insertional_witness(source, max_degree: int):
    """None when insertional through max_degree; else (arc, node, insertion)."""
    sets = _contracted_by_degree(source, max_degree)
    for n in range(1, max_degree):
        for a in sorted(sets[n]):
            for v in range(1, n + 2):
                for b in arc_insertions(a, v):
                    if b not in sets[n + 1]:
                        return (a, v, b)
    return None


def is_insertional(source, max_degree: int) -> bool:
    return insertional_witness(source, max_degree) is None


def metasylvester_congruence(n: int, k: int) -> Congruence:
    """The congruence contracting every arc with at least k plus signs;
    generated by the subarc-minimal such arcs."""
    if k < 0:
        raise TubelatError("k must be nonnegative")
    contracted = [
        a for a in all_arcs(n) if sum(1 for s in a.signs if s > 0) >= k
    ]
    cset = set(contracted)
    gens = [
        a
        for a in contracted
        if not any(b != a and is_subarc(b, a) for b in cset)
    ]
    return congruence_from_generators(n, gens)


def rho_subword(w: Perm, V: Iterable[int]) -> tuple[int, ...]:
    """Delete the letters outside V, keeping the order of the rest."""
    V = set(V)
    return tuple(v for v in w if v in V)
