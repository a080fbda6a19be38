import itertools

import pytest

from tubelat.errors import (
    InvalidTubing,
    MaximalTubeNotFlippable,
    NotAnIdeal,
    NotATube,
    TubeNotInTubing,
)
from tubelat.graphs import Graph, all_graphs, parse_graph
from tubelat.tubings import (
    GForest,
    Tubing,
    chi,
    compatible,
    descents,
    ascents,
    enumerate_maximal_tubings,
    flip,
    flip_by_search,
    forest_inversions,
    ideals,
    is_ideal,
    linear_extensions,
    make_tubing,
    maximal_tubings_oracle,
    psi_tubing,
    quotient_std,
    quotient_tubing,
    restrict_std,
    restrict_tubing,
    sigma_max,
    sigma_min,
    tau,
    top,
    validate_gforest,
    vertex_coordinates,
)

P3 = parse_graph("path:3")
K2 = Graph(2, ((1, 2),))
K3 = parse_graph("complete:3")


def fs(*vs):
    return frozenset(vs)


def test_compatible_examples():
    assert compatible(P3, {1}, {3})
    assert not compatible(P3, {1}, {2})
    assert compatible(P3, {1}, {1, 2})
    with pytest.raises(NotATube):
        compatible(P3, {1, 3}, {2})


def test_make_tubing_validates():
    make_tubing(P3, [fs(1), fs(1, 2)])
    with pytest.raises(InvalidTubing):
        make_tubing(P3, [fs(1), fs(2)])
    with pytest.raises(NotATube):
        make_tubing(P3, [fs(1, 3)])


def test_enumeration_counts():
    assert len(enumerate_maximal_tubings(K3)) == 6
    assert len(enumerate_maximal_tubings(P3)) == 5
    for n in range(5):
        unique = enumerate_maximal_tubings(Graph(n))
        assert len(unique) == 1
        assert unique[0].tubes == tuple(fs(i) for i in range(1, n + 1))


def test_every_enumerated_pair_compatible():
    for g in all_graphs(4):
        for x in enumerate_maximal_tubings(g):
            assert x.is_maximal()
            for a, b in itertools.combinations(x.tubes, 2):
                assert compatible(g, a, b)


def test_oracle_matches_on_structured_graphs():
    # acceptance covers all graphs n<=4; spot-check the larger families here
    for desc in ("path:6", "cycle:6", "complete:6"):
        g = parse_graph(desc)
        assert enumerate_maximal_tubings(g) == maximal_tubings_oracle(g)


def test_decomposition_enumerator_matches_sweep():
    from tubelat.tubings import _enumerate_by_decomposition

    for g in list(all_graphs(4)) + [parse_graph("cycle:5")]:
        assert tuple(sorted(_enumerate_by_decomposition(g))) == enumerate_maximal_tubings(g)


def test_enumeration_beyond_sweep_threshold():
    # n = 9 takes the completion-search branch instead of the 9! sweep
    x = enumerate_maximal_tubings(parse_graph("path:9"))
    assert len(x) == 4862  # Catalan(9)


def test_chi_tau_examples():
    free2 = Graph(2)
    both_roots = GForest(free2, (0, 0))
    assert chi(both_roots).tubes == (fs(1), fs(2))
    chain = GForest(K2, (2, 0))
    assert chi(chain).tubes == (fs(1), fs(1, 2))
    x = Tubing(K2, (fs(1), fs(1, 2)))
    assert tau(x) == chain


def test_validate_gforest_rejects_bad_forests():
    with pytest.raises(Exception):
        validate_gforest(GForest(P3, (2, 1, 0)))  # cycle between 1 and 2
    # ideals must be tubes: parent 3 covers 1 directly in the path graph
    with pytest.raises(Exception):
        validate_gforest(GForest(P3, (3, 0, 0)))
    # incomparable ideals whose union is a tube
    with pytest.raises(Exception):
        validate_gforest(GForest(K2, (0, 0)))


def test_top_examples():
    x = Tubing(K2, (fs(1), fs(1, 2)))
    assert top(x, fs(1, 2)) == 2
    assert top(x, fs(1)) == 1
    with pytest.raises(TubeNotInTubing):
        top(x, fs(2))
    for g in all_graphs(4):
        for x in enumerate_maximal_tubings(g):
            tops = [top(x, t) for t in x.tubes]
            assert sorted(tops) == list(g.vertices)


def test_restrict_examples():
    for x in enumerate_maximal_tubings(K3):
        assert restrict_std(x, {1, 2, 3}) == x
    x = Tubing(P3, (fs(1), fs(1, 2), fs(1, 2, 3)))
    r = restrict_tubing(x, {1, 3})
    assert set(r.tubes) == {fs(1), fs(3)}
    assert restrict_tubing(x, set()).tubes == ()


def test_quotient_examples():
    x = Tubing(K2, (fs(1), fs(1, 2)))
    assert quotient_tubing(x, set()).tubes == x.tubes
    q = quotient_std(x, {1})
    assert q.graph == Graph(1)
    assert q.tubes == (fs(1),)
    with pytest.raises(NotAnIdeal):
        quotient_tubing(x, {2})


def test_ideals_examples():
    free2 = enumerate_maximal_tubings(Graph(2))[0]
    assert ideals(free2) == [fs(), fs(1), fs(2), fs(1, 2)]
    chain = Tubing(K2, (fs(1), fs(1, 2)))
    assert ideals(chain) == [fs(), fs(1), fs(1, 2)]


def test_ideals_are_forest_downsets():
    for g in all_graphs(4):
        for x in enumerate_maximal_tubings(g):
            t = tau(x)
            downsets = []
            for r in range(g.n + 1):
                for sub in itertools.combinations(g.vertices, r):
                    s = set(sub)
                    if all(set(t.children(v)) <= s for v in s):
                        downsets.append(frozenset(s))
            assert set(ideals(x)) == set(downsets)
            assert all(is_ideal(x, I) for I in ideals(x))


def test_linear_extensions_examples():
    chain = GForest(parse_graph("complete:3"), (2, 3, 0))
    assert linear_extensions(chain) == [(1, 2, 3)]
    free2 = GForest(Graph(2), (0, 0))
    assert sorted(linear_extensions(free2)) == [(1, 2), (2, 1)]
    fibers = [linear_extensions(tau(x)) for x in enumerate_maximal_tubings(K3)]
    assert sorted(len(f) for f in fibers) == [1] * 6


def test_sigma_examples():
    # the chain 2 < 1 < 3 in the forest order
    g = parse_graph("complete:3")
    chain = GForest(g, (3, 1, 0))
    assert sigma_min(chain) == (2, 1, 3)
    free3 = GForest(Graph(3), (0, 0, 0))
    assert sigma_min(free3) == (1, 2, 3)
    assert sigma_max(free3) == (3, 2, 1)


def test_sigma_minmax_are_lex_extremes():
    for g in all_graphs(4):
        for x in enumerate_maximal_tubings(g):
            t = tau(x)
            exts = linear_extensions(t)
            assert sigma_min(t) == min(exts)
            assert sigma_max(t) == max(exts)


def test_forest_inversions_examples():
    g = parse_graph("complete:3")
    up_chain = GForest(g, (2, 3, 0))
    assert forest_inversions(up_chain) == frozenset()
    down_chain = GForest(g, (0, 1, 2))  # 3 < 2 < 1
    assert forest_inversions(down_chain) == {(1, 2), (1, 3), (2, 3)}
    assert descents(down_chain) == {(1, 2), (2, 3)}
    assert ascents(up_chain) == {(2, 1), (3, 2)}


def test_flip_examples():
    x = Tubing(K2, (fs(1), fs(1, 2)))
    y, j = flip(x, fs(1))
    assert j == fs(2) and y.tubes == (fs(2), fs(1, 2))
    back, j2 = flip(y, j)
    assert back == x and j2 == fs(1)
    with pytest.raises(MaximalTubeNotFlippable):
        flip(x, fs(1, 2))
    with pytest.raises(TubeNotInTubing):
        flip(x, fs(2))


def test_flip_matches_search_everywhere_small():
    from tubelat.graphs import components

    for g in all_graphs(4):
        comps = set(components(g))
        for x in enumerate_maximal_tubings(g):
            for t in x.tubes:
                if t in comps:
                    continue
                assert flip(x, t) == flip_by_search(x, t)


def test_vertex_coordinates_examples():
    for n in range(1, 5):
        x = enumerate_maximal_tubings(Graph(n))[0]
        assert vertex_coordinates(x) == tuple([1] * n)
    x = Tubing(K2, (fs(1), fs(1, 2)))
    assert vertex_coordinates(x) == (1, 2)
    for g in all_graphs(4):
        coords = [vertex_coordinates(x) for x in enumerate_maximal_tubings(g)]
        assert len(set(coords)) == len(coords)


def test_tubing_json_round_trip():
    for x in enumerate_maximal_tubings(P3):
        assert Tubing.from_json_obj(x.to_json_obj()) == x
    t = tau(enumerate_maximal_tubings(P3)[0])
    assert GForest.from_json_obj(t.to_json_obj()) == t


def test_psi_tubing_produces_n_distinct_tubes():
    for g in all_graphs(4):
        for w in itertools.permutations(g.vertices):
            x = psi_tubing(g, w)
            assert len(x.tubes) == g.n
            assert x.is_maximal()


def test_degree_zero_tubing():
    g0 = Graph(0)
    (x,) = enumerate_maximal_tubings(g0)
    assert x.tubes == ()
    assert x.is_maximal()
    assert tau(x).parent == ()
    assert linear_extensions(tau(x)) == [()]
