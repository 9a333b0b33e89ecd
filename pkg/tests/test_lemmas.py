import json

import pytest

import oracles
from relcomp import constructions as C
from relcomp import lemmas as L
from relcomp import zoo
from relcomp.errors import PreconditionError
from relcomp.perm import Permutation, are_conjugate_tuples, point_stabilizer


# -- pair criterion --------------------------------------------------------------------


def brute_pair_criterion(M, autos):
    """Both sides of the criterion by plain element enumeration."""
    G = C.semidirect_regular(M, autos)
    FM = C.FiniteGroup(M)
    n = len(FM)
    elts = oracles.closure(G.generators, n)
    H = [g for g in elts if g[0] == 0]
    pair_canon = {(a, b): oracles.canon(elts, (a, b)) for a in range(n) for b in range(n)}
    h_canon = [min(h[x] for h in H) for x in range(n)]
    for a1 in range(n):
        for a2 in range(n):
            for b1 in range(n):
                for b2 in range(n):
                    lhs = pair_canon[a1, a2] == pair_canon[b1, b2]
                    rhs = (h_canon[FM.mul(a1, FM.inv(a2))] == h_canon[FM.mul(b1, FM.inv(b2))])
                    if lhs != rhs:
                        return False
    return True


@pytest.mark.parametrize("name", ["C5:C4", "A4:C2", "C5:C2", "S3:Inn", "C2^2:C3"])
def test_pair_criterion_against_brute_force(name):
    _, M, autos = next(i for i in zoo.semidirect_instances() if i[0] == name)
    rep = L.check_pair_criterion(M, autos)
    assert rep.verdict and rep.exhaustiveness == "full"
    assert rep.checks == len(C.FiniteGroup(M)) ** 4
    assert brute_pair_criterion(M, autos)


def test_pair_criterion_c5_c4_counts():
    C5 = C.cyclic_regular(5)
    rep = L.check_pair_criterion(C5, [C.power_automorphism(C5, 2)])
    assert rep.checks == 5**4
    assert rep.data["group_order"] == 20 and rep.data["H_order"] == 4


def test_pair_criterion_equal_tuples_trivially_agree():
    A4 = C.natural_alternating(4)
    autos = [C.conjugation_images(A4, Permutation.from_cycles(4, (0, 1)))]
    G = C.semidirect_regular(A4, autos)
    H = point_stabilizer(G, (0,))
    FM = C.FiniteGroup(A4)
    for a1 in range(12):
        for a2 in range(12):
            assert are_conjugate_tuples(G, (a1, a2), (a1, a2)).is_identity()
            q = FM.mul(a1, FM.inv(a2))
            # the H-side fixes 0 = identity of M, so prepend it
            assert are_conjugate_tuples(H, (0, q), (0, q)).is_identity()


def test_pair_criterion_every_zoo_instance():
    for name, M, autos in zoo.semidirect_instances():
        G = C.semidirect_regular(M, autos)
        assert G.order() <= 2000
        rep = L.check_pair_criterion(M, autos)
        assert rep.verdict, name
        assert rep.data["spot_checks_agree"], name


def test_pair_criterion_sampling_policy_recorded():
    C7 = C.cyclic_regular(7)
    rep = L.check_pair_criterion(C7, [C.power_automorphism(C7, 3)], limit=100)
    assert rep.exhaustiveness.startswith("sampled") and "20140101" in rep.exhaustiveness
    assert rep.verdict


# -- inverts but does not centralize ---------------------------------------------------------


@pytest.mark.parametrize("name,alpha", zoo.a5_involutions())
def test_a5_involutions_invert_something(name, alpha):
    A5 = C.natural_alternating(5)
    rep = L.check_inverts_not_centralizes(A5, alpha)
    assert rep.verdict and rep.checks == 60
    t = Permutation(rep.data["t"])
    FT = C.FiniteGroup(A5)
    phi = C.automorphism_map(FT, alpha)
    ti = FT.index[t]
    assert phi[ti] == FT.inv(ti) != ti


@pytest.mark.parametrize("name,alpha", zoo.a6_involutions())
def test_a6_involutions_invert_something(name, alpha):
    rep = L.check_inverts_not_centralizes(zoo.psl29(), alpha)
    assert rep.verdict and rep.checks == 360


def test_psl29_is_a6_sized_and_simple():
    T = zoo.psl29()
    assert T.order() == 360 and C.is_nonabelian_simple(T)


def test_a6_involutions_lie_in_distinct_cosets():
    T = zoo.psl29()
    inner = zoo.mobius(0, zoo.MINUS_ONE, zoo.ONE, 0)
    field = zoo.frobenius()
    diag = zoo.mobius(0, zoo.OMEGA, zoo.ONE, 0)
    for g in (inner, field, diag):
        assert (g * g).is_identity()
    assert T.contains(inner)
    assert not T.contains(field) and not T.contains(diag)
    assert not T.contains(field * ~diag)


def test_identity_automorphism_rejected():
    A5 = C.natural_alternating(5)
    with pytest.raises(PreconditionError, match="identity"):
        L.check_inverts_not_centralizes(A5, list(A5.generators))


def test_non_involution_rejected():
    A5 = C.natural_alternating(5)
    alpha = C.conjugation_images(A5, Permutation.from_cycles(5, (0, 1, 2)))
    with pytest.raises(PreconditionError, match="involution"):
        L.check_inverts_not_centralizes(A5, alpha)


# -- class inverting automorphisms ------------------------------------------------------------


def test_no_inner_automorphism_inverts_class_a5():
    A5 = C.natural_alternating(5)
    r = L.product_of_noncommuting_involutions(A5)
    assert r.order() in (3, 5)
    rep = L.search_class_inverting_automorphism(A5, r)
    assert rep.verdict and rep.data["inverting"] == []
    assert rep.data["automorphisms_scanned"] == 60


def test_involution_r_rejected():
    A5 = C.natural_alternating(5)
    with pytest.raises(PreconditionError, match="involution"):
        L.search_class_inverting_automorphism(A5, Permutation.from_cycles(5, (0, 1), (2, 3)))


def test_identity_automorphism_does_not_invert_class():
    A5 = C.natural_alternating(5)
    r = L.product_of_noncommuting_involutions(A5)
    rep = L.search_class_inverting_automorphism(A5, r, [list(A5.generators)])
    assert rep.verdict and rep.data["source"] == "supplied"


# -- product witness matrices --------------------------------------------------------------------


def test_product_matrices_exact_rows():
    A, B = L.product_witness_matrices(5, 2)
    assert A == ((1, 1), (1, 2), (3, 3), (3, 4))
    assert B == ((1, 1), (1, 2), (3, 3), (4, 3))


def test_product_witness_verifies():
    rep = L.check_product_witness(5, 2)
    assert rep.verdict
    assert rep.data["two_equivalent"] and not rep.data["conjugate"]
    assert rep.data["A_has_two_valued_column"] and not rep.data["B_has_two_valued_column"]
    assert rep.data["patterns_differ"]


def test_product_matrices_need_five_points():
    with pytest.raises(PreconditionError):
        L.product_witness_matrices(4, 2)


def test_column_patterns_invariant_under_group():
    A, _ = L.product_witness_matrices(5, 3)
    G = C.product_action(C.natural_symmetric(5), 3)
    xa = L.rows_to_points(A, 5)
    base = L.column_patterns(A)
    for g in G.generators:
        rows = [tuple(y + 1 for y in C.index_row(p, 5, 3)) for p in g.apply(xa)]
        assert L.column_patterns(rows) == base


@pytest.mark.parametrize("ell,k", [(5, 3), (6, 2)])
def test_product_witness_other_sizes(ell, k):
    assert L.check_product_witness(ell, k).verdict


# -- realizes P on pairs -------------------------------------------------------------------------


def test_realizes_p_identity_sigma():
    G = C.product_action(C.natural_symmetric(5), 2)
    src = (C.row_index((0, 1), 5), C.row_index((2, 3), 5))
    assert are_conjugate_tuples(G, src, src).is_identity()


def test_realizes_p_s5_wreath():
    rep = L.check_realizes_p_on_pairs(C.product_action(C.natural_symmetric(5), 2))
    assert rep.verdict and rep.data["P_order"] == 2
    assert rep.data["pairs"] >= 5**2 * (5**2 - 1)


def test_realizes_p_refuses_petersen():
    with pytest.raises(PreconditionError):
        L.check_realizes_p_on_pairs(C.product_action(C.petersen_group(), 2))


def test_realizes_p_refuses_non_product():
    with pytest.raises(PreconditionError):
        L.check_realizes_p_on_pairs(C.natural_symmetric(5))


# -- replay ------------------------------------------------------------------------------------


def reports():
    C5 = C.cyclic_regular(5)
    A5 = C.natural_alternating(5)
    return [
        L.check_pair_criterion(C5, [C.power_automorphism(C5, 2)]),
        L.check_inverts_not_centralizes(A5, zoo.a5_involutions()[1][1]),
        L.search_class_inverting_automorphism(A5, L.product_of_noncommuting_involutions(A5)),
        L.check_product_witness(5, 2),
        L.check_realizes_p_on_pairs(C.product_action(C.natural_symmetric(5), 2), sample=50),
    ]


@pytest.mark.parametrize("rep", reports(), ids=lambda r: r.lemma)
def test_replay_reproduces_report(rep):
    blob = json.loads(json.dumps(rep.to_json()))
    assert L.replay(blob).to_json() == rep.to_json()


def test_replay_unknown_lemma():
    with pytest.raises(ValueError):
        L.replay({"lemma": "nope", "instance": {}})


def test_report_is_plain_json():
    rep = L.check_product_witness()
    assert json.loads(json.dumps(rep.to_json()))["lemma"] == "product-witness"

