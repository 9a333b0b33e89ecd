import json
from math import factorial

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

import oracles
from relcomp import constructions as C
from relcomp.errors import DegreeError
from relcomp.perm import (
    Permutation,
    PermGroup,
    are_conjugate_tuples,
    compose,
    elements,
    group_order,
    is_primitive,
    is_transitive,
    minimal_block_system,
    orbit,
    point_stabilizer,
)


def cyc(n, *cycles):
    return Permutation.from_cycles(n, *cycles)


@st.composite
def groups(draw, min_degree=2, max_degree=8, max_gens=3):
    d = draw(st.integers(min_degree, max_degree))
    gens = draw(st.lists(st.permutations(range(d)), min_size=1, max_size=max_gens))
    return PermGroup([Permutation(g) for g in gens], d)


@st.composite
def group_and_tuple(draw, max_degree=12, max_len=4):
    G = draw(groups(max_degree=max_degree))
    n = draw(st.integers(0, min(max_len, G.degree)))
    xs = draw(st.lists(st.integers(0, G.degree - 1), min_size=n, max_size=n))
    return G, xs


# -- compose ------------------------------------------------------------------


def test_compose_identity():
    e = Permutation.identity(4)
    assert compose(e, e) == e


def test_compose_involution_squared():
    t = cyc(3, (0, 1))
    assert compose(t, t).is_identity()


def test_compose_three_cycle():
    c = cyc(3, (0, 1, 2))
    assert compose(c, c) == cyc(3, (0, 2, 1))


def test_compose_is_right_action():
    p, q = cyc(3, (0, 1)), cyc(3, (1, 2))
    # 0 -p-> 1 -q-> 2
    assert (p * q)(0) == 2


def test_compose_degree_mismatch():
    with pytest.raises(DegreeError):
        compose(Permutation.identity(3), Permutation.identity(4))


def test_not_a_permutation():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


@given(st.integers(1, 9).flatmap(lambda d: st.permutations(range(d))))
def test_inverse(images):
    p = Permutation(images)
    assert (p * ~p).is_identity() and (~p * p).is_identity()


def test_json_roundtrip():
    G = C.natural_symmetric(5)
    H = PermGroup.from_json(json.loads(json.dumps(G.to_json())))
    assert H.generators == G.generators


# -- construction errors --------------------------------------------------------


@pytest.mark.parametrize("degree", [0, 1])
def test_tiny_degree_rejected(degree):
    with pytest.raises(DegreeError):
        PermGroup([Permutation.identity(degree)])


def test_mixed_degree_rejected():
    with pytest.raises(DegreeError):
        PermGroup([Permutation.identity(3), Permutation.identity(4)])


def test_trivial_group_accepted():
    G = PermGroup([], 5)
    assert G.is_trivial() and group_order(G) == 1 and orbit(G, 0) == {0}


# -- order ----------------------------------------------------------------------


def test_order_s4():
    assert group_order(C.natural_symmetric(4)) == 24


def test_order_a5():
    assert group_order(C.natural_alternating(5)) == 60


def test_order_diagonal_full_matches_closure():
    from relcomp.zoo import diagonal_a5

    G = diagonal_a5()
    assert len(oracles.closure(G.generators, G.degree)) == 14400
    assert group_order(G) == 14400


@settings(max_examples=40, deadline=None)
@given(groups())
def test_order_matches_closure_and_divides_factorial(G):
    n = group_order(G)
    assert n == len(oracles.closure(G.generators, G.degree))
    assert factorial(G.degree) % n == 0


@settings(max_examples=25, deadline=None)
@given(groups(), st.randoms(use_true_random=False))
def test_order_stable_under_generator_shuffle(G, rnd):
    gens = list(G.generators)
    rnd.shuffle(gens)
    assert group_order(PermGroup(gens, G.degree)) == group_order(G)


@settings(max_examples=25, deadline=None)
@given(groups())
def test_chain_invariants(G):
    ch = G.chain()
    assert ch.order() == group_order(G)
    for i, gens in enumerate(ch.strong_generators):
        for g in gens:
            assert all(g(b) == b for b in ch.base[:i])
    for i, trans in enumerate(ch.transversals):
        for y, u in trans.items():
            assert u(ch.base[i]) == y


# -- orbits / transitivity / primitivity ------------------------------------------


def test_orbit_trivial():
    assert orbit(PermGroup([], 4), 0) == {0}


def test_orbit_regular_cyclic():
    assert orbit(C.cyclic_regular(5), 2) == set(range(5))


def test_orbit_petersen_matches_bfs():
    G = C.petersen_group()
    elts = oracles.closure(G.generators, 10)
    for v in range(10):
        assert orbit(G, v) == {g[v] for g in elts} == set(range(10))


def test_orbit_out_of_range():
    with pytest.raises(ValueError):
        orbit(C.cyclic_regular(5), 5)


def test_c4_regular_is_imprimitive():
    G = C.cyclic_regular(4, allow_composite=True)
    assert is_transitive(G) and not is_primitive(G)
    assert sorted(map(sorted, minimal_block_system(G, 0, 2).blocks())) == [[0, 2], [1, 3]]


def test_c5_regular_is_primitive():
    assert is_primitive(C.cyclic_regular(5))


def test_diagonal_socle_swap_is_primitive():
    from relcomp.zoo import diagonal_a5

    G = diagonal_a5(outer=False)
    assert G.order() == 7200
    assert is_primitive(G)


def test_primitivity_matches_partition_oracle(zoo_groups):
    for name, G in zoo_groups.items():
        expected = oracles.primitive(G.generators, G.degree)
        assert is_primitive(G) == expected, name
        if is_primitive(G):
            assert is_transitive(G)


@settings(max_examples=30, deadline=None)
@given(groups(max_degree=7))
def test_primitivity_random_groups(G):
    assert is_primitive(G) == oracles.primitive(G.generators, G.degree)


# -- stabilizers ---------------------------------------------------------------------


def test_stabilizer_s4_point():
    assert point_stabilizer(C.natural_symmetric(4), (0,)).order() == 6


def test_stabilizer_s4_pair():
    assert point_stabilizer(C.natural_symmetric(4), (0, 1)).order() == 2


def test_stabilizer_diagonal_socle_base_point():
    from relcomp.zoo import diagonal_a5

    G = diagonal_a5(top="none", outer=False)
    H = point_stabilizer(G, (0,))
    assert H.order() == 60 == G.order() // G.degree


@settings(max_examples=40, deadline=None)
@given(groups(max_degree=10), st.data())
def test_orbit_stabilizer(G, data):
    x = data.draw(st.integers(0, G.degree - 1))
    S = point_stabilizer(G, (x,))
    assert S.order() * len(orbit(G, x)) == G.order()
    assert all(g(x) == x for g in S.generators)


@settings(max_examples=25, deadline=None)
@given(groups(max_degree=7), st.data())
def test_pointwise_stabilizer_matches_closure(G, data):
    pts = data.draw(st.lists(st.integers(0, G.degree - 1), max_size=3, unique=True))
    elts = oracles.closure(G.generators, G.degree)
    expected = sum(1 for g in elts if all(g[p] == p for p in pts))
    assert point_stabilizer(G, pts).order() == expected


# -- tuple conjugacy -------------------------------------------------------------------


def test_conjugate_self_is_identity():
    G = C.natural_symmetric(4)
    assert are_conjugate_tuples(G, (0, 2), (0, 2)).is_identity()


def test_conjugate_s4_pairs():
    g = are_conjugate_tuples(C.natural_symmetric(4), (0, 1), (2, 3))
    assert g is not None and g.apply((0, 1)) == (2, 3)


def test_a4_not_conjugate_exhaustive():
    G = C.natural_alternating(4)
    elts = oracles.closure(G.generators, 4)
    assert len(elts) == 12
    assert not oracles.conjugate(elts, (0, 1, 2), (0, 2, 1))
    assert are_conjugate_tuples(G, (0, 1, 2), (0, 2, 1)) is None


def test_conjugate_length_mismatch():
    with pytest.raises(ValueError):
        are_conjugate_tuples(C.natural_symmetric(3), (0,), (0, 1))


@settings(max_examples=60, deadline=None)
@given(group_and_tuple(max_degree=9), st.data())
def test_conjugacy_agrees_with_closure(Gx, data):
    G, xs = Gx
    ys = data.draw(st.lists(st.integers(0, G.degree - 1), min_size=len(xs), max_size=len(xs)))
    elts = oracles.closure(G.generators, G.degree)
    g = are_conjugate_tuples(G, xs, ys)
    assert (g is not None) == oracles.conjugate(elts, xs, ys)
    if g is not None:
        assert g.apply(xs) == tuple(ys) and G.contains(g)


@settings(max_examples=40, deadline=None)
@given(group_and_tuple(max_degree=12), st.data())
def test_conjugacy_is_an_equivalence(Gx, data):
    G, xs = Gx
    # random group elements as short words in the generators
    w1 = data.draw(st.lists(st.sampled_from(G.generators), max_size=6))
    w2 = data.draw(st.lists(st.sampled_from(G.generators), max_size=6))
    a, b = G.identity, G.identity
    for s in w1:
        a = a * s
    for s in w2:
        b = b * s
    ys, zs = a.apply(xs), b.apply(a.apply(xs))
    assert are_conjugate_tuples(G, xs, xs).is_identity()
    gxy = are_conjugate_tuples(G, xs, ys)
    gyz = are_conjugate_tuples(G, ys, zs)
    assert gxy is not None and gyz is not None
    assert (~gxy).apply(ys) == tuple(xs)
    assert (gxy * gyz).apply(xs) == tuple(zs)


def test_elements_bfs_order_starts_at_identity():
    els = elements(C.natural_symmetric(4))
    assert els[0].is_identity() and len(set(els)) == 24
