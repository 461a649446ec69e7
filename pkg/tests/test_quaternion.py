"""Quaternion order, involution matrices, elliptic points, embeddings, and
the dimension formula."""

from fractions import Fraction

from x6star.arith import Discriminant
from x6star.numkernel import Precision, residual_exponent
from x6star.quaternion import (GAMMA_2, GAMMA_3, GAMMA_6, M_2, M_4, M_6,
                               EmbeddingSpec, QuatQ, dim_Sk, elliptic_points,
                               find_embedding, find_embeddings, fixed_point,
                               in_maximal_order, iota, is_optimal_embedding,
                               boundary_classify)
from x6star.tables import load_hecke_t5, load_identities

P = Precision(256)


def test_quaternion_norm_is_multiplicative():
    a = QuatQ.of(Fraction(1, 2), Fraction(3), Fraction(-1), Fraction(2))
    b = QuatQ.of(Fraction(2), Fraction(-1, 3), Fraction(5), Fraction(0))
    assert (a * b).norm() == a.norm() * b.norm()


def test_quaternion_conjugate_gives_norm():
    a = QuatQ.of(Fraction(1), Fraction(2), Fraction(3), Fraction(4))
    prod = a * a.conj()
    assert prod.x1 == 0 and prod.x2 == 0 and prod.x3 == 0
    assert prod.x0 == a.norm()


def test_generators_in_order():
    assert in_maximal_order(QuatQ.of(0, 1, 0, 0))
    assert in_maximal_order(QuatQ.of(Fraction(1, 2), Fraction(1, 2),
                                     Fraction(1, 2), Fraction(1, 2)))
    assert not in_maximal_order(QuatQ.of(Fraction(1, 2), 0, 0, 0))


def test_iota_is_algebra_map():
    a = QuatQ.of(1, 2, -1, 3)
    b = QuatQ.of(0, 1, 1, -2)
    lhs = iota(a * b)
    rhs = iota(a) * iota(b)
    for which in ("a", "b", "c", "d"):
        assert (getattr(lhs, which) - getattr(rhs, which)).is_zero()


def test_involution_determinants():
    for g in (GAMMA_2, GAMMA_3, GAMMA_6):
        d = g.det()
        assert d.b == 0 and d.a == 1, d


def test_involutions_fix_their_elliptic_points():
    pts = elliptic_points(P)
    for m, pt in ((M_4, pts[4]), (M_2, pts[2]), (M_6, pts[6])):
        img = m.mobius(pt)
        assert residual_exponent(img.re, pt.re) <= -200 or \
            (img.re.sign() == 0 and pt.re.sign() == 0)
        assert residual_exponent(img.im, pt.im) <= -200


def test_dim_formula_matches_hecke_block_sizes():
    table = load_hecke_t5()
    assert set(table) == {8, 16, 24, 32, 40, 48}
    for k, m in table.items():
        assert dim_Sk(k) == len(m), k


def test_dim_formula_small_values():
    assert [dim_Sk(k) for k in (8, 16, 24, 32, 40, 48)] == [1, 1, 2, 2, 2, 3]


def test_embedding_spec_validation():
    import pytest
    with pytest.raises(ValueError):
        # norm of the element must equal |D|
        EmbeddingSpec(Discriminant(-19), QuatQ.of(0, 1, 1, 1))


def test_minimal_embeddings_for_pinned_rows():
    e120 = find_embeddings(-120, "negative_arc")[0]
    assert e120.a == (12, -2, 2)
    e19 = find_embeddings(-19, "negative_arc")[0]
    assert e19.a == (5, -1, 1)


def test_every_row_has_embedding_of_expected_class():
    for row in load_identities():
        if row.family == "A":
            klass = "segment01" if row.M > 0 else "negative_arc"
        else:
            klass = "ray_1_inf" if row.M > 0 else "negative_arc"
        e = find_embedding(row.D, klass)
        assert e is not None, (row.row_id, klass)
        assert boundary_classify(e) == klass
        assert is_optimal_embedding(e.alpha, Discriminant(row.D))


def test_fixed_point_is_fixed():
    """iota(alpha) acts on the upper half-plane as an elliptic element fixing
    the CM point."""
    e = find_embedding(-19, "negative_arc")
    tau, _ = fixed_point(e, P)
    # the fixing element is 1 + alpha (non-zero trace avoids det 0)
    mat = iota(QuatQ.of(1) + e.alpha)
    img = mat.mobius(tau)
    assert residual_exponent(img.im, tau.im) <= -200
    assert residual_exponent(img.re, tau.re) <= -200
