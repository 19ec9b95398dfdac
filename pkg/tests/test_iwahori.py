import random

import pytest

from heckepoly.errors import ResourceLimitError, ValidationError
from heckepoly.laurent import LaurentHalf, ONE, Q
from heckepoly.characters import SymmetricFunction, orbit_character
from heckepoly.root_data import build_standard
from heckepoly.iwahori import AffineHeckeAlgebra, SphericalCosetVector

GL2 = build_standard("GL", 2)
GL3 = build_standard("GL", 3)
SP4 = build_standard("Sp", 4)

H2 = AffineHeckeAlgebra(GL2)
H3 = AffineHeckeAlgebra(GL3)
HSP = AffineHeckeAlgebra(SP4)

V = LaurentHalf.v_power


def _braid_order(algebra, i, j):
    """Order of s_i s_j from the affine Cartan pairing (None = infinite)."""
    datum = algebra.datum
    def root_of(idx):
        if idx == 0:
            theta = datum.highest_root
            return tuple(-x for x in theta), tuple(-x for x in
                                                   datum.coroot_of(theta))
        return (datum.simple_roots[idx - 1], datum.simple_coroots[idx - 1])
    a_i, av_i = root_of(i)
    a_j, av_j = root_of(j)
    prod = datum.pairing(a_i, av_j) * datum.pairing(a_j, av_i)
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(prod)


# -- multiplication ------------------------------------------------------------

def test_quadratic_relation():
    for algebra in (H2, H3, HSP):
        for idx in algebra.generator_indices:
            ts = algebra.gen_t(idx)
            lhs = algebra.multiply(ts, ts)
            rhs = ts.scale(Q - ONE) + algebra.unit().scale(Q)
            assert lhs == rhs


def test_unit_is_neutral():
    x = H2.theta((2, -1))
    assert H2.multiply(H2.unit(), x) == x
    assert H2.multiply(x, H2.unit()) == x


def test_gl2_idempotent_numerator():
    s = H2.finite_sum()
    assert H2.multiply(s, s) == s.scale(ONE + Q)


def test_braid_relations_all_generator_pairs():
    for algebra in (H2, H3, HSP):
        idxs = algebra.generator_indices
        for i in idxs:
            for j in idxs:
                if i >= j:
                    continue
                m = _braid_order(algebra, i, j)
                if m is None:
                    continue  # infinite order (affine A1)
                left, right = algebra.unit(), algebra.unit()
                gi, gj = algebra.gen_t(i), algebra.gen_t(j)
                for k in range(m):
                    left = algebra.multiply(left, gi if k % 2 == 0 else gj)
                    right = algebra.multiply(right, gj if k % 2 == 0 else gi)
                assert left == right, (algebra.datum.family, i, j)


def test_multiplication_is_associative_on_random_elements():
    rng = random.Random(61)
    def random_element(algebra):
        out = algebra.unit().scale(LaurentHalf({rng.randint(-1, 1): 1}))
        for _ in range(2):
            lam = tuple(rng.randint(-1, 1) for _ in range(algebra.datum.rank))
            out = out + algebra.theta(lam).scale(
                LaurentHalf({rng.randint(-1, 1): rng.choice([-1, 1, 2])}))
        return out
    for algebra in (H2, H3):
        for _ in range(4):
            a, b, c = (random_element(algebra) for _ in range(3))
            assert algebra.multiply(algebra.multiply(a, b), c) == \
                algebra.multiply(a, algebra.multiply(b, c))


# -- theta elements --------------------------------------------------------------

def test_theta_dominant_is_normalized_translation():
    lam = (2, 0)
    key = H2.translation_key(lam)
    expected = H2.t_basis(key).scale(V(-H2.length(key)))
    assert H2.theta(lam) == expected


def test_theta_decomposition_independence():
    # three decompositions lam = lam1 - lam2 into dominants agree
    rng = random.Random(67)
    for algebra in (H2, H3):
        datum = algebra.datum
        for _ in range(4):
            lam = tuple(rng.randint(-2, 2) for _ in range(datum.rank))
            base = algebra.theta(lam)
            for shift in ([1] * datum.rank, [2] * datum.rank,
                          list(range(datum.rank, 0, -1))):
                lam2 = datum.dominant_representative(tuple(shift))
                lam1 = tuple(a + b for a, b in zip(lam, lam2))
                if not datum.is_dominant(lam1):
                    lam1 = tuple(a + 2 * b for a, b in zip(lam, lam2))
                    lam2 = tuple(2 * b for b in lam2)
                    if not datum.is_dominant(lam1):
                        continue
                t1 = algebra.t_basis(algebra.translation_key(lam1))
                inv2 = algebra.translation_inverse(lam2)
                e1 = algebra.length(algebra.translation_key(lam1))
                e2 = algebra.length(algebra.translation_key(lam2))
                other = algebra.multiply(t1, inv2).scale(V(e2 - e1))
                assert other == base, (datum.family, lam, lam2)


def test_theta_additivity():
    rng = random.Random(71)
    for algebra in (H2, H3):
        datum = algebra.datum
        for _ in range(6):
            lam = tuple(rng.randint(-2, 2) for _ in range(datum.rank))
            nu = tuple(rng.randint(-2, 2) for _ in range(datum.rank))
            total = tuple(a + b for a, b in zip(lam, nu))
            assert algebra.multiply(algebra.theta(lam), algebra.theta(nu)) \
                == algebra.theta(total)


def test_theta_inverse():
    lam = (1, 0)
    assert H2.multiply(H2.theta(lam), H2.theta((-1, 0))) == H2.unit()


def test_translation_inverse_is_inverse():
    for algebra, lam in [(H2, (2, 0)), (H3, (1, 1, 0)), (HSP, (1, 0))]:
        t = algebra.t_basis(algebra.translation_key(lam))
        inv = algebra.translation_inverse(lam)
        assert algebra.multiply(t, inv) == algebra.unit()
        assert algebra.multiply(inv, t) == algebra.unit()


def test_bernstein_lusztig_example():
    # theta_(1,0) T_s - T_s theta_(0,1) = (q-1) theta_(1,0)
    ts = H2.gen_t(1)
    lhs = H2.multiply(H2.theta((1, 0)), ts) - H2.multiply(ts, H2.theta((0, 1)))
    assert lhs == H2.theta((1, 0)).scale(Q - ONE)


def test_bernstein_lusztig_telescoping():
    # T_s theta_lam - theta_{s lam} T_s = (q-1) (theta_lam - theta_{s lam})
    # / (1 - theta_{-alpha}) with the division done as a geometric sum
    rng = random.Random(73)
    for algebra in (H2, H3):
        datum = algebra.datum
        for i in range(datum.num_simple):
            alpha = datum.simple_roots[i]
            av = datum.simple_coroots[i]
            ts = algebra.gen_t(i + 1)
            for _ in range(4):
                lam = tuple(rng.randint(-2, 2) for _ in range(datum.rank))
                k = datum.pairing(alpha, lam)
                slam = datum.reflect(i, lam)
                lhs = algebra.multiply(ts, algebra.theta(lam)) - \
                    algebra.multiply(algebra.theta(slam), ts)
                terms = []
                if k >= 0:
                    for j in range(k):
                        terms.append((tuple(x - j * y
                                            for x, y in zip(lam, av)), 1))
                else:
                    for j in range(1, -k + 1):
                        terms.append((tuple(x + j * y
                                            for x, y in zip(lam, av)), -1))
                rhs_sum = None
                for w, sign in terms:
                    t = algebra.theta(w).scale(
                        LaurentHalf.from_int(sign) * (Q - ONE))
                    rhs_sum = t if rhs_sum is None else rhs_sum + t
                if rhs_sum is None:
                    assert lhs.is_zero()
                else:
                    assert lhs == rhs_sum, (datum.family, i, lam)


# -- center and idempotent ---------------------------------------------------------

def test_central_element_examples():
    assert H2.central_element(SymmetricFunction.constant(GL2, 1)) == H2.unit()
    z = H2.central_element(orbit_character(GL2, (1, 0)))
    assert z == H2.theta((1, 0)) + H2.theta((0, 1))
    z11 = H2.central_element(orbit_character(GL2, (1, 1)))
    assert z11 == H2.theta((1, 1))
    with pytest.raises(ValidationError):
        H2.central_element("not a function")


def test_centrality_against_generators():
    for algebra, lams in [(H2, [(1, 0), (1, 1), (2, 0)]),
                          (H3, [(1, 0, 0), (1, 1, 0), (2, 1, 0)])]:
        datum = algebra.datum
        for lam in lams:
            z = algebra.central_element(orbit_character(datum, lam))
            for idx in algebra.generator_indices:
                t = algebra.gen_t(idx)
                assert algebra.multiply(z, t) == algebra.multiply(t, z)
            for j in range(datum.rank):
                nu = tuple(1 if k == j else 0 for k in range(datum.rank))
                th = algebra.theta(nu)
                assert algebra.multiply(z, th) == algebra.multiply(th, z)


def test_spherical_idempotent():
    for algebra, pw in [(H2, LaurentHalf({0: 1, 2: 1})),
                        (H3, LaurentHalf({0: 1, 2: 2, 4: 2, 6: 1}))]:
        ek = algebra.spherical_idempotent()
        assert ek.denom == pw == algebra.poincare()
        assert algebra.multiply(ek, ek) == ek
        ident = algebra.identity_key()
        assert ek.terms[ident] == ONE  # T_e coefficient is 1/P_W


# -- Satake transform ---------------------------------------------------------------

def test_satake_inverse_unit():
    vec = H2.satake_inverse(SymmetricFunction.constant(GL2, 1))
    assert vec == SphericalCosetVector({(0, 0): ONE})


def test_satake_inverse_minuscule_gl2():
    vec = H2.satake_inverse(orbit_character(GL2, (1, 0)))
    assert vec == SphericalCosetVector({(1, 0): V(-1)})
    vec = H2.satake_inverse(orbit_character(GL2, (1, 1)))
    assert vec == SphericalCosetVector({(1, 1): ONE})


def test_satake_inverse_minuscule_gl3():
    for mu in [(1, 0, 0), (1, 1, 0), (1, 1, 1)]:
        vec = H3.satake_inverse(orbit_character(GL3, mu))
        expected = SphericalCosetVector(
            {mu: V(-GL3.rho_pairing_exponent(mu))})
        assert vec == expected


def test_satake_inverse_is_linear():
    f = orbit_character(GL2, (1, 0)).scale(LaurentHalf({3: 2}))
    vec = H2.satake_inverse(f)
    assert vec == SphericalCosetVector({(1, 0): LaurentHalf({2: 2})})


def test_satake_matrix_gl2_block():
    labels, a = H2.satake_matrix([(2, 0), (1, 1)])
    assert labels == [(1, 1), (2, 0)]
    assert a[0][0] == ONE          # m_(1,1) -> coset (1,1)
    assert a[1][1] == V(-2)        # leading coefficient at (2,0)
    assert a[1][0].is_zero()       # triangular
    labels, b = H2.satake_transform_matrix([(2, 0), (1, 1)])
    assert b[0][0] == ONE and b[1][1] == V(2)
    assert b[1][0].is_zero()


def test_satake_matrix_identity_block():
    labels, a = H2.satake_matrix([(0, 0)])
    assert labels == [(0, 0)] and a == [[ONE]]


def test_satake_matrix_rejects_open_list():
    with pytest.raises(ValidationError):
        H2.satake_matrix([(2, 0)])  # missing (1,1)


def test_satake_of_indicator_classical_gl2():
    # S(1_{K(2,0)K}) = q m_(2,0) + (q-1) m_(1,1)
    image = H2.satake_of_indicator((2, 0))
    expected = orbit_character(GL2, (2, 0)).scale(Q) + \
        orbit_character(GL2, (1, 1)).scale(Q - ONE)
    assert image == expected


def test_minuscule_calibration():
    for algebra in (H2, H3):
        datum = algebra.datum
        for mu in datum.small_minuscule_dominants():
            image = algebra.satake_of_indicator(mu)
            expected = orbit_character(datum, mu).scale(
                V(datum.rho_pairing_exponent(mu)))
            assert image == expected, (datum.family, mu)


def test_satake_round_trip():
    rng = random.Random(79)
    for algebra in (H2, H3):
        datum = algebra.datum
        for _ in range(4):
            f = SymmetricFunction.constant(datum, rng.randint(-2, 2))
            for _ in range(2):
                lam = datum.dominant_representative(
                    tuple(rng.randint(0, 2) for _ in range(datum.rank)))
                f = f + orbit_character(datum, lam).scale(
                    LaurentHalf({rng.randint(-1, 1): rng.choice([-1, 1, 2])}))
            assert algebra.satake_transform(algebra.satake_inverse(f)) == f


def test_sp4_satake_has_classical_shape():
    # non-minuscule orbit: transform picks up a constant correction,
    # S(1_{K(1,0)K}) = q^2 m_(1,0) + (q^2 - 1), like GL2's
    # S(1_{K(2,0)K}) = q m_(2,0) + (q-1) m_(1,1)
    image = HSP.satake_of_indicator((1, 0))
    q2 = V(4)
    expected = orbit_character(SP4, (1, 0)).scale(q2) + \
        orbit_character(SP4, (0, 0)).scale(q2 - ONE)
    assert SP4.rho_pairing_exponent((1, 0)) == 4
    assert image == expected


def test_round_trip_other_families():
    rng = random.Random(83)
    for family, rank in [("Sp", 4), ("SL", 3), ("PGL", 3)]:
        datum = build_standard(family, rank)
        algebra = AffineHeckeAlgebra(datum)
        for _ in range(3):
            f = SymmetricFunction.constant(datum, rng.randint(-2, 2))
            lam = datum.dominant_representative(
                tuple(rng.randint(0, 1) for _ in range(datum.rank)))
            f = f + orbit_character(datum, lam).scale(
                LaurentHalf({rng.randint(-1, 1): rng.choice([-1, 1, 2])}))
            assert algebra.satake_transform(algebra.satake_inverse(f)) == f


def test_resource_guard():
    tiny = AffineHeckeAlgebra(GL3, max_support=5)
    with pytest.raises(ResourceLimitError):
        tiny.satake_inverse(orbit_character(GL3, (2, 1, 0)))


def test_element_json():
    ek = H2.spherical_idempotent()
    obj = ek.to_json(GL2)
    assert obj["denominator"] == "1*v^0+1*v^2"
    assert {tuple(t["translation"]) for t in obj["terms"]} == {(0, 0)}
    th = H2.theta((1, 0))
    plain = th.to_json(GL2)
    assert isinstance(plain, list) and plain[0]["coeff"] == "1*v^-1"
