import pytest

from tubelat.errors import ElementNotFound, NotALattice, NotComparable, TubelatError
from tubelat.graphs import Graph, all_graphs, parse_graph
from tubelat.posets import Poset, all_tubings, build_lg, poset_from_le, tubing_face_interval
from tubelat.tubings import Tubing
from tubelat.weakorder import weak_order_poset


def chain(n):
    return Poset(list(range(n)), [(i, i + 1) for i in range(n - 1)])


def antichain(n):
    return Poset(list(range(n)), [])


PENTAGON = Poset(
    ["0", "b", "c", "d", "1"],
    [("0", "b"), ("b", "d"), ("d", "1"), ("0", "c"), ("c", "1")],
)


def test_covers_must_be_acyclic_and_irredundant():
    with pytest.raises(TubelatError):
        Poset([1, 2], [(1, 2), (2, 1)])
    with pytest.raises(TubelatError):
        Poset([1, 2, 3], [(1, 2), (2, 3), (1, 3)])


def test_from_relation_reduces():
    p = Poset.from_relation([1, 2, 3], [(1, 2), (2, 3), (1, 3)])
    assert sorted(p.covers) == [(0, 1), (1, 2)]
    assert p.le(1, 3)


def test_le_and_covers():
    p = chain(4)
    assert p.le(0, 3) and not p.le(3, 0)
    assert p.upper_covers(1) == [2]
    assert p.lower_covers(1) == [0]
    with pytest.raises(ElementNotFound):
        p.le(0, 99)


def test_meet_join_chain_and_antichain():
    p = chain(3)
    assert p.meet(0, 2) == 0 and p.join(0, 2) == 2
    q = antichain(2)
    assert q.meet(0, 1) is None and q.join(0, 1) is None
    assert not q.is_lattice()
    x, y, kind, bounds = q.lattice_failure_witness()
    assert kind in {"meet", "join"} and bounds == []


def test_pentagon_is_lattice_and_semidistributive():
    assert PENTAGON.is_lattice()
    assert PENTAGON.meet("b", "c") == "0"
    assert PENTAGON.join("b", "c") == "1"
    assert PENTAGON.is_semidistributive()


def test_diamond_m3_fails_semidistributivity():
    m3 = Poset(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
    assert m3.is_lattice()
    wit = m3.semidistributivity_witness()
    assert wit is not None
    with pytest.raises(NotALattice):
        antichain(2).is_semidistributive()


def test_mobius_basics():
    p = chain(2)
    assert p.mobius(0, 0) == 1
    assert p.mobius(0, 1) == -1
    with pytest.raises(NotComparable):
        antichain(2).mobius(0, 1)
    # weak order on S_3 is a hexagon: mu over the full interval is 1
    s3 = weak_order_poset(3)
    assert s3.mobius((1, 2, 3), (3, 2, 1)) == 1


def test_dual_and_product():
    p = chain(3)
    assert p.dual().dual().is_isomorphic_to(p)
    pr = chain(2).product(chain(2))
    assert len(pr) == 4 and pr.is_lattice()
    assert not pr.is_isomorphic_to(chain(4))
    assert PENTAGON.dual().is_isomorphic_to(PENTAGON)


def test_poset_from_le():
    p = poset_from_le([1, 2, 3, 6], lambda a, b: b % a == 0 and a != b)
    assert p.le(1, 6) and p.le(2, 6) and not p.comparable(2, 3)
    assert p.join(2, 3) == 6


def _brute_meet(p, x, y):
    lower = [z for z in p.elements if p.le(z, x) and p.le(z, y)]
    maxima = [z for z in lower if not any(p.lt(z, w) for w in lower)]
    return maxima[0] if len(maxima) == 1 else None


def test_meet_join_against_brute_force():
    divisors = [d for d in range(1, 61) if 60 % d == 0]
    divisor_lattice = poset_from_le(divisors, lambda a, b: a != b and b % a == 0)
    boolean = poset_from_le(
        list(range(8)), lambda a, b: a != b and a & b == a
    )
    posets = [divisor_lattice, boolean, PENTAGON, weak_order_poset(3)]
    for g in all_graphs(3):
        posets.append(build_lg(g))
    for p in posets:
        for x in p.elements:
            for y in p.elements:
                assert p.meet(x, y) == _brute_meet(p, x, y)
                assert p.join(x, y) == _brute_meet(p.dual(), x, y)


def test_mobius_boolean_lattice():
    boolean = poset_from_le(list(range(8)), lambda a, b: a != b and a & b == a)
    assert boolean.mobius(0, 7) == -1
    assert boolean.mobius(0, 3) == 1
    assert boolean.mobius(0, 1) == -1


def test_mobius_against_zeta_inversion():
    import numpy as np

    posets = [weak_order_poset(4), PENTAGON, build_lg(parse_graph("cycle:4"))]
    for p in posets:
        n = len(p)
        zeta = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                if p.le(p.elements[i], p.elements[j]):
                    zeta[i, j] = 1
        mu = np.linalg.inv(zeta).round().astype(np.int64)
        for i in range(n):
            for j in range(n):
                if zeta[i, j]:
                    assert p.mobius(p.elements[i], p.elements[j]) == mu[i, j]


def _naive_semidistributive(p):
    for x in p.elements:
        for y in p.elements:
            for z in p.elements:
                if p.meet(x, z) == p.meet(y, z):
                    if p.meet(p.join(x, y), z) != p.meet(x, z):
                        return False
                if p.join(x, z) == p.join(y, z):
                    if p.join(p.meet(x, y), z) != p.join(x, z):
                        return False
    return True


def test_semidistributivity_against_naive_scan():
    star = build_lg(Graph(4, ((1, 2), (1, 3), (1, 4))))
    m3 = Poset(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
    for p in [PENTAGON, weak_order_poset(3), weak_order_poset(4), star, m3,
              build_lg(parse_graph("cycle:4"))]:
        assert p.is_semidistributive() == _naive_semidistributive(p)


def test_weak_order_meets_against_brute_force_s4():
    s4 = weak_order_poset(4)
    for x in s4.elements:
        for y in s4.elements:
            assert s4.meet(x, y) == _brute_meet(s4, x, y)


def test_build_lg_small_examples():
    g = Graph(3, ((1, 3), (2, 3)))
    lg = build_lg(g)
    assert len(lg) == 5
    assert lg.is_isomorphic_to(PENTAGON)
    k2 = build_lg(Graph(2, ((1, 2),)))
    assert len(k2) == 2 and len(k2.covers) == 1
    assert len(build_lg(Graph(4))) == 1


def test_lg_min_is_identity_image():
    from tubelat.weakorder import psi

    for g in all_graphs(4):
        lg = build_lg(g)
        assert lg.minimum() == psi(g, tuple(range(1, g.n + 1)))
        assert lg.maximum() == psi(g, tuple(range(g.n, 0, -1)))


def test_face_interval_trivial_cases():
    g = parse_graph("path:3")
    lg = build_lg(g)
    whole = tubing_face_interval(g, Tubing(g, (frozenset({1, 2, 3}),)), lg)
    assert whole.ok
    assert whole.lower == lg.minimum() and whole.upper == lg.maximum()
    for x in lg.elements:
        res = tubing_face_interval(g, x, lg)
        assert res.ok and res.lower == res.upper == x


def test_all_tubings_counts():
    g = parse_graph("path:2")
    labels = {t.label() for t in all_tubings(g)}
    assert labels == {"", "{1}", "{1}{1,2}", "{1,2}", "{2}", "{2}{1,2}"}
    k3 = parse_graph("complete:3")
    # tubes of K_3 are all 7 nonempty subsets and compatibility is nestedness,
    # so tubings are chains: 1 empty + 7 + 12 two-chains + 6 three-chains
    assert len(all_tubings(k3)) == 26


def test_to_dot_and_json():
    p = chain(2)
    dot = p.to_dot()
    assert dot.startswith("digraph") and "n0 -> n1" in dot
    obj = p.to_json_obj()
    assert obj == {"elements": ["0", "1"], "covers": [[0, 1]]}
