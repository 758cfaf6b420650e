import itertools
import random

import pytest

from mdscensus.errors import DegreeMismatch, ShapeMismatch, ZeroInput
from mdscensus.fields import field_of_order, make_field
from mdscensus.linalg import MatrixGF, enumerate_grassmannian, point_from_rows, rank
from mdscensus.exterior import (
    DualForm,
    MultiVector,
    form_profile,
    form_weight,
    interior_mult,
    merge_sign,
    multi_indices,
    pairing,
    pi_alpha,
    pi_gamma,
    plucker_embed,
    satisfies_plucker,
    wedge,
)


def random_form(gf, k, n, rng):
    while True:
        coeffs = tuple(rng.randrange(gf.q) for _ in multi_indices(k, n))
        if any(coeffs):
            return DualForm(gf, k, n, coeffs)


# ---------------------------------------------------------------------------
# Plucker embedding and pairing
# ---------------------------------------------------------------------------

def test_embed_identity_block():
    gf = make_field(2, 1)
    m = MatrixGF.from_rows(gf, [[1, 0, 0, 0], [0, 1, 0, 0]])
    lam = plucker_embed(m)
    assert lam.coefficient((1, 2)) == 1
    assert sum(1 for c in lam.coeffs if c) == 1


def test_embed_hand_minors():
    gf = make_field(2, 1)
    m = MatrixGF.from_rows(gf, [[1, 0, 1, 0], [0, 1, 0, 1]])
    assert plucker_embed(m).coeffs == (1, 0, 1, 1, 0, 1)


def test_embed_row_scaling_scales_coords():
    gf = make_field(5, 1)
    m = MatrixGF.from_rows(gf, [[1, 2, 3, 0], [0, 1, 4, 2]])
    lam = plucker_embed(m)
    scaled = MatrixGF.from_rows(gf, [[gf.mul(3, v) for v in m.row(0)], list(m.row(1))])
    assert plucker_embed(scaled).coeffs == tuple(gf.mul(3, c) for c in lam.coeffs)


def test_embed_rank_deficient():
    from mdscensus.errors import RankDeficient

    gf = make_field(2, 1)
    with pytest.raises(RankDeficient):
        plucker_embed(MatrixGF.from_rows(gf, [[1, 0, 1], [1, 0, 1]]))


def test_pairing_basis_duality():
    gf = make_field(3, 1)
    lam = MultiVector.basis(gf, 2, 4, (1, 2))
    assert pairing(DualForm.basis(gf, 2, 4, (1, 2)), lam) == 1
    assert pairing(DualForm.basis(gf, 2, 4, (3, 4)), lam) == 0


def test_pairing_example_over_gf2():
    gf = make_field(2, 1)
    lam = plucker_embed(MatrixGF.from_rows(gf, [[1, 0, 1, 0], [0, 1, 0, 1]]))
    omega = DualForm.from_terms(gf, 2, 4, [((1, 2), 1), ((3, 4), 1)])
    assert pairing(omega, lam) == 0  # 1 + 1 over GF(2)


def test_pairing_shape_mismatch():
    gf = make_field(2, 1)
    with pytest.raises(ShapeMismatch):
        pairing(DualForm.basis(gf, 2, 4, (1, 2)), MultiVector.basis(gf, 2, 5, (1, 2)))


# ---------------------------------------------------------------------------
# Interior multiplication
# ---------------------------------------------------------------------------

def test_interior_basis_examples():
    gf = make_field(3, 1)
    e12 = DualForm.basis(gf, 2, 4, (1, 2))
    down = interior_mult(MultiVector.basis(gf, 1, 4, (1,)), e12)
    assert down.coeffs == DualForm.basis(gf, 1, 4, (2,)).coeffs
    down2 = interior_mult(MultiVector.basis(gf, 1, 4, (2,)), e12)
    # second slot picks up the sign (-1)
    assert down2.coeffs == DualForm.basis(gf, 1, 4, (1,)).scale(gf.neg(1)).coeffs
    down3 = interior_mult(MultiVector.basis(gf, 1, 4, (3,)), e12)
    assert down3.is_zero()


def test_interior_degree_mismatch():
    gf = make_field(2, 1)
    with pytest.raises(DegreeMismatch):
        interior_mult(
            MultiVector.basis(gf, 3, 4, (1, 2, 3)), DualForm.basis(gf, 2, 4, (1, 2))
        )


@pytest.mark.parametrize("k,n", [(2, 4), (2, 5), (3, 5), (3, 6)])
def test_adjunction_on_basis(k, n):
    # <iota_xi omega, zeta> = <omega, xi wedge zeta> for all basis triples
    gf = make_field(2, 1)
    for ell in (1, k - 1):
        m = k - ell
        for xi_idx in multi_indices(ell, n):
            xi = MultiVector.basis(gf, ell, n, xi_idx)
            for om_idx in multi_indices(k, n):
                omega = DualForm.basis(gf, k, n, om_idx)
                contracted = interior_mult(xi, omega)
                for z_idx in multi_indices(m, n):
                    zeta = MultiVector.basis(gf, m, n, z_idx)
                    lhs = pairing(contracted, zeta)
                    rhs = pairing(omega, wedge(xi, zeta))
                    assert lhs == rhs


def test_adjunction_random_full_vectors():
    rng = random.Random(31)
    for q in (2, 3):
        gf = field_of_order(q)
        for _ in range(20):
            xi = MultiVector(
                gf, 1, 5, tuple(rng.randrange(q) for _ in range(5))
            )
            omega = random_form(gf, 2, 5, rng)
            zeta = MultiVector(
                gf, 1, 5, tuple(rng.randrange(q) for _ in range(5))
            )
            assert pairing(interior_mult(xi, omega), zeta) == pairing(
                omega, wedge(xi, zeta)
            )


def test_wedge_anticommutes_on_vectors():
    gf = make_field(3, 1)
    u = MultiVector.from_terms(gf, 1, 4, [((1,), 1), ((3,), 2)])
    v = MultiVector.from_terms(gf, 1, 4, [((2,), 2), ((4,), 1)])
    uv = wedge(u, v)
    vu = wedge(v, u)
    assert vu.coeffs == tuple(gf.neg(c) for c in uv.coeffs)
    assert wedge(u, u).is_zero()


def test_merge_sign_basics():
    assert merge_sign((1,), (2, 3)) == (1, (1, 2, 3))
    assert merge_sign((2,), (1, 3)) == (-1, (1, 2, 3))
    assert merge_sign((3,), (1, 2)) == (1, (1, 2, 3))
    assert merge_sign((1, 3), (1,))[0] == 0


# ---------------------------------------------------------------------------
# Plucker relations and decomposability
# ---------------------------------------------------------------------------

def test_plucker_simple_examples():
    gf = make_field(2, 1)
    dec = MultiVector.from_terms(gf, 2, 4, [((1, 2), 1), ((1, 3), 1)])
    assert satisfies_plucker(dec)  # equals e1 ^ (e2 + e3)
    indec = MultiVector.from_terms(gf, 2, 4, [((1, 2), 1), ((3, 4), 1)])
    assert not satisfies_plucker(indec)
    with pytest.raises(ZeroInput):
        satisfies_plucker(MultiVector.zero(gf, 2, 4))


def test_plucker_exhaustive_matches_embedding_image():
    # all 63 projective points of P(Lambda^2 F_2^4): exactly the 35 embedded
    # subspaces pass the relations
    gf = make_field(2, 1)
    image = {
        plucker_embed(pt.matrix).coeffs for pt in enumerate_grassmannian(gf, 2, 4)
    }
    assert len(image) == 35
    passing = set()
    count_nonzero = 0
    for coeffs in itertools.product(range(2), repeat=6):
        if not any(coeffs):
            continue
        count_nonzero += 1
        lam = MultiVector(gf, 2, 4, coeffs)
        if satisfies_plucker(lam):
            passing.add(coeffs)
    assert count_nonzero == 63
    assert passing == image


def test_relations_match_direct_contraction_wedge():
    # the precomputed quadratic relations agree with evaluating
    # (iota_{e^K} lambda) ^ lambda for every dual basis contraction
    rng = random.Random(3)
    for q, k, n in ((2, 2, 4), (3, 2, 4), (2, 3, 5)):
        gf = field_of_order(q)
        width = len(multi_indices(k, n))
        for _ in range(30):
            coeffs = tuple(rng.randrange(q) for _ in range(width))
            if not any(coeffs):
                continue
            lam = MultiVector(gf, k, n, coeffs)
            direct = all(
                wedge(
                    interior_mult(DualForm.basis(gf, k - 1, n, kk), lam), lam
                ).is_zero()
                for kk in multi_indices(k - 1, n)
            )
            assert satisfies_plucker(lam) == direct


def test_embedded_points_always_pass():
    for q in (2, 3):
        gf = field_of_order(q)
        for pt in enumerate_grassmannian(gf, 2, 4):
            assert satisfies_plucker(plucker_embed(pt.matrix))


# ---------------------------------------------------------------------------
# Form profiles (kernel and annihilator subspaces)
# ---------------------------------------------------------------------------

def test_profile_decomposable_form():
    gf = make_field(2, 1)
    prof = form_profile(DualForm.basis(gf, 2, 4, (1, 2)))
    assert prof.decomposable
    assert prof.v_omega.rows == 2  # span(e3, e4)
    spanned = {prof.v_omega.row(i) for i in range(2)}
    assert spanned == {(0, 0, 1, 0), (0, 0, 0, 1)}
    assert prof.u_omega.rows == 2


def test_profile_indecomposable_form():
    gf = make_field(2, 1)
    omega = DualForm.from_terms(gf, 2, 4, [((1, 2), 1), ((3, 4), 1)])
    prof = form_profile(omega)
    assert not prof.decomposable
    assert prof.v_omega.rows == 0
    assert prof.u_omega.rows == 4  # >= k + 2


def test_profile_higher_degree():
    gf = make_field(2, 1)
    prof = form_profile(DualForm.basis(gf, 3, 6, (1, 2, 3)))
    assert prof.decomposable
    assert prof.v_omega.rows == 3


def test_profile_dimension_sum_and_fact1():
    # dim V + dim U = n; decomposable iff dim V = n - k; otherwise
    # dim U >= k + 2
    rng = random.Random(77)
    for q, k, n in ((2, 2, 4), (2, 2, 5), (3, 2, 4), (2, 3, 6)):
        gf = field_of_order(q)
        for _ in range(40):
            omega = random_form(gf, k, n, rng)
            prof = form_profile(omega)
            assert prof.v_omega.rows + prof.u_omega.rows == n
            assert prof.decomposable == (prof.v_omega.rows == n - k)
            if not prof.decomposable:
                assert prof.u_omega.rows >= k + 2


# ---------------------------------------------------------------------------
# Weights
# ---------------------------------------------------------------------------

def test_weight_examples():
    gf = make_field(2, 1)
    assert form_weight(DualForm.basis(gf, 2, 4, (1, 2))) == 16
    omega = DualForm.from_terms(gf, 2, 4, [((1, 2), 1), ((3, 4), 1)])
    assert form_weight(omega) == 20
    assert form_weight(DualForm.basis(gf, 2, 5, (1, 2))) == 64


def test_weight_methods_agree_random():
    rng = random.Random(123)
    for q, k, n, trials in ((3, 2, 4, 25), (2, 2, 5, 25), (2, 3, 6, 10)):
        gf = field_of_order(q)
        for _ in range(trials):
            omega = random_form(gf, k, n, rng)
            direct = form_weight(omega, "direct")
            recursive = form_weight(omega, "recursive")
            assert direct == recursive
            assert direct >= q ** (k * (n - k))


def test_weight_zero_form_rejected():
    gf = make_field(2, 1)
    with pytest.raises(ZeroInput):
        form_weight(DualForm.zero(gf, 2, 4))


def test_weight_streaming_fallback_matches_vectorized():
    gf = make_field(3, 1)
    omega = DualForm.from_terms(gf, 2, 4, [((1, 2), 1), ((2, 3), 2), ((1, 4), 1)])
    fast = form_weight(omega, "direct")
    # force the streaming path by asking for a matrix beyond the cache cap
    count = 0
    for pt in enumerate_grassmannian(gf, 2, 4):
        if pairing(omega, plucker_embed(pt.matrix)) != 0:
            count += 1
    assert fast == count


def test_indecomposable_weight_second_term():
    # indecomposable 2-forms on F_q^4 have weight q^4 + q^2
    for q in (2, 3, 4):
        gf = field_of_order(q)
        omega = DualForm.from_terms(gf, 2, 4, [((1, 2), 1), ((3, 4), 1)])
        assert form_weight(omega) == q**4 + q**2


# ---------------------------------------------------------------------------
# Maximal linear subspaces pi_alpha / pi_gamma
# ---------------------------------------------------------------------------

def test_pi_alpha_pi_gamma_sizes():
    gf = make_field(2, 1)
    alpha = point_from_rows(gf, [[1, 0, 0, 0]])
    up = pi_alpha(alpha)
    assert len(up) == 7  # (q^(n-k+1) - 1)/(q - 1) at (2,4,2)
    gamma = point_from_rows(gf, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    down = pi_gamma(gamma)
    assert len(down) == 7


def test_pi_alpha_members_contain_alpha():
    gf = make_field(3, 1)
    alpha = point_from_rows(gf, [[1, 2, 0, 1]])
    for beta in pi_alpha(alpha):
        assert beta.k == 2
        stacked = beta.matrix.stack(alpha.matrix)
        assert rank(stacked) == 2  # alpha inside beta


def test_pi_alpha_intersect_pi_gamma_line():
    gf = make_field(2, 1)
    alpha = point_from_rows(gf, [[1, 0, 0, 0]])
    gamma = point_from_rows(gf, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    both = pi_alpha(alpha) & pi_gamma(gamma)
    assert len(both) == 3  # q + 1: the pencil between alpha and gamma
    outside = point_from_rows(gf, [[0, 0, 0, 1]])
    assert not (pi_alpha(outside) & pi_gamma(gamma))


def _dim_sum(a, b):
    return rank(a.matrix.stack(b.matrix))


def test_fact0_pairwise_intersections():
    gf = make_field(2, 1)
    lines = list(enumerate_grassmannian(gf, 1, 4))
    planes3 = list(enumerate_grassmannian(gf, 3, 4))
    pi_a = {a: pi_alpha(a) for a in lines}
    pi_g = {g: pi_gamma(g) for g in planes3}
    # part 1: pi_alpha's meet in one point when dim(alpha + alpha') = k, else not
    for a1, a2 in itertools.combinations(lines, 2):
        meet = pi_a[a1] & pi_a[a2]
        if _dim_sum(a1, a2) == 2:
            assert len(meet) == 1
            (only,) = meet
            assert only == point_from_rows(
                gf, a1.matrix.row_list() + a2.matrix.row_list()
            )
        else:
            assert not meet
    # part 2: dually for pi_gamma's via intersection dimension
    for g1, g2 in itertools.combinations(planes3, 2):
        meet = pi_g[g1] & pi_g[g2]
        inter_dim = 3 + 3 - _dim_sum(g1, g2)
        if inter_dim == 2:
            assert len(meet) == 1
        else:
            assert not meet
    # part 3: pi_alpha meets pi_gamma in a line exactly when alpha < gamma
    for a in lines:
        for g in planes3:
            meet = pi_a[a] & pi_g[g]
            if rank(a.matrix.stack(g.matrix)) == 3:  # alpha inside gamma
                assert len(meet) == 3
            else:
                assert not meet
    # part 4: within one pi_alpha, pairwise intersection is alpha; within one
    # pi_gamma, pairwise span is gamma
    for a in lines[:4]:
        members = list(pi_a[a])
        for b1, b2 in itertools.combinations(members, 2):
            assert _dim_sum(b1, b2) == 3
    for g in planes3[:4]:
        members = list(pi_g[g])
        for b1, b2 in itertools.combinations(members, 2):
            assert _dim_sum(b1, b2) == 3


# ---------------------------------------------------------------------------
# Decomposability recursion on contractions
# ---------------------------------------------------------------------------

def _contract_by_vector(omega, vec):
    gf = omega.gf
    xi = MultiVector.from_terms(
        gf, 1, omega.n, [((i + 1,), c) for i, c in enumerate(vec) if c]
    )
    return interior_mult(xi, omega)


def test_contraction_decomposability_criterion_sample():
    # a (k+1)-form is decomposable iff all its vector contractions are
    gf = make_field(2, 1)
    rng = random.Random(5)
    for _ in range(60):
        omega = random_form(gf, 3, 5, rng)
        contr_ok = True
        for vec in itertools.product(range(2), repeat=5):
            if not any(vec):
                continue
            c = _contract_by_vector(omega, vec)
            if not c.is_zero() and not satisfies_plucker(c):
                contr_ok = False
                break
        assert satisfies_plucker(omega) == contr_ok
