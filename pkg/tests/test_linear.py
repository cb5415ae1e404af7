from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cptgroups import linear as la
from cptgroups.linear import (
    I_UNIT,
    GaussInt,
    KindMismatch,
    Matrix,
    NotExact,
    NotUnitary,
    SemidirectElem,
    block_embed,
    diag,
    identity,
    pauli,
    phi,
    phi_double,
    phi_tilde,
    rat4,
    semidirect_product,
    zero_translation,
)

from oracles import naive_closure, quaternion_coords, rotation_from_quaternion

i = I_UNIT
gauss = st.builds(GaussInt, st.integers(-50, 50), st.integers(-50, 50))
PAULI_GROUP_SU2 = sorted(
    naive_closure([pauli(1).scale(-i), pauli(2).scale(-i)], Matrix.__matmul__), key=str
)


@given(gauss, gauss, gauss)
def test_gauss_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a - a == 0


def test_gauss_int_equality_and_hash():
    assert GaussInt(3, 0) == 3
    assert hash(GaussInt(3, 0)) == hash(3)
    assert i * i == -1
    assert str(GaussInt(2, -1)) == "2-i"


def test_pauli_involutions():
    for k in (1, 2, 3):
        assert pauli(k) @ pauli(k) == identity(2)


def test_pauli_lambda_image_of_j_is_real():
    assert pauli(2).scale(-i) == Matrix(((0, -1), (1, 0)))


def test_pauli_product():
    # s1 s2 = i s3, multiplied out by hand: [[0,1],[1,0]][[0,-i],[i,0]] = [[i,0],[0,-i]]
    assert pauli(1) @ pauli(2) == Matrix(((i, 0), (0, -i)))
    assert pauli(1) @ pauli(2) == pauli(3).scale(i)


def test_pauli_bad_index():
    with pytest.raises(ValueError):
        pauli(0)


def test_su2_closure_oracle():
    # brute-force closure gives {+-I, +-i s1, +-i s2, +-i s3}
    expected = {identity(2), -identity(2)} | {pauli(k).scale(c) for k in (1, 2, 3) for c in (i, -i)}
    assert set(PAULI_GROUP_SU2) == expected


def test_quaternion_oracle_roundtrip():
    assert quaternion_coords(pauli(1).scale(-i)) == (0, 1, 0, 0)
    assert quaternion_coords(-identity(2)) == (-1, 0, 0, 0)


@pytest.mark.parametrize("a", PAULI_GROUP_SU2, ids=str)
def test_phi_matches_quaternion_rotation_formula(a):
    assert phi(a) == rotation_from_quaternion(*quaternion_coords(a))


def test_phi_values():
    assert phi(identity(2)) == identity(3)
    assert phi(pauli(3).scale(-i)) == diag(-1, -1, 1)
    a = pauli(1).scale(-i)
    assert phi(-a) == phi(a) == diag(1, -1, -1)


def test_phi_is_homomorphism_on_pauli_group():
    for a in PAULI_GROUP_SU2:
        for b in PAULI_GROUP_SU2:
            assert phi(a @ b) == phi(a) @ phi(b)


def test_phi_fibers_have_size_two():
    images = [phi(a) for a in PAULI_GROUP_SU2]
    assert all(images.count(r) == 2 for r in images)


def test_phi_rejects_non_su2():
    with pytest.raises(NotUnitary):
        phi(pauli(1))  # det -1
    with pytest.raises(NotUnitary):
        phi(Matrix(((1, 1), (0, 1))))
    with pytest.raises(NotUnitary):
        phi_tilde(Matrix(((1, 1), (0, 1))))


def test_adjoint_formula_reports_inexact_entries():
    # a null rotation lies in SL2 but gives half-integer Lorentz entries
    shear = Matrix(((1, 1), (0, 1)))
    basis = [identity(2), pauli(1), pauli(2), pauli(3)]
    with pytest.raises(NotExact):
        la._adjoint_entries(shear, basis)


def test_phi_tilde_values():
    assert phi_tilde(identity(2)) == identity(4)
    assert phi_tilde(pauli(3).scale(-i)) == diag(1, -1, -1, 1)


@pytest.mark.parametrize("a", PAULI_GROUP_SU2, ids=str)
def test_phi_tilde_is_block_of_phi_and_sign_blind(a):
    assert phi_tilde(a) == block_embed(phi(a))
    assert phi_tilde(-a) == phi_tilde(a)
    assert la.is_lorentz(phi_tilde(a))
    assert la.is_rotation(phi(a))


def test_block_embed():
    assert block_embed(identity(3)) == identity(4)
    assert block_embed(diag(-1, -1, 1)) == diag(1, -1, -1, 1)
    r, s = diag(1, -1, -1), diag(-1, 1, -1)
    assert block_embed(r @ s) == block_embed(r) @ block_embed(s)


def test_parity_and_time_reversal_are_lorentz():
    for m in (la.PARITY, la.TIME_REVERSAL, la.PARITY @ la.TIME_REVERSAL):
        assert la.is_lorentz(m)
    assert la.PARITY @ la.TIME_REVERSAL == -identity(4)


def test_zero_translation():
    e = zero_translation(identity(4))
    x = SemidirectElem(rat4(1, 2, 3, 4), la.PARITY)
    assert e * x == x and x * e == x
    lam, m = la.PARITY, la.TIME_REVERSAL
    assert zero_translation(lam) * zero_translation(m) == zero_translation(lam @ m)
    moved = zero_translation(la.PARITY) * SemidirectElem(rat4(1, 2, 3, 4), identity(4))
    assert moved == SemidirectElem(rat4(1, -2, -3, -4), la.PARITY)


def test_semidirect_translations_add():
    a = SemidirectElem(rat4(1, 0, 0, 0), identity(4))
    b = SemidirectElem(rat4(0, 1, 0, 0), identity(4))
    assert a * b == SemidirectElem(rat4(1, 1, 0, 0), identity(4))


def test_semidirect_square_of_minus_i_s3():
    x = zero_translation(pauli(3).scale(-i))
    assert x * x == zero_translation(-identity(2))


def test_semidirect_kind_mismatch():
    with pytest.raises(KindMismatch):
        semidirect_product(zero_translation(identity(2)), zero_translation(identity(4)))
    with pytest.raises(KindMismatch):
        phi_double(zero_translation(identity(4)))


def test_phi_double():
    assert phi_double(zero_translation(identity(2))) == zero_translation(identity(4))
    a, b = pauli(1).scale(-i), pauli(2).scale(-i)
    assert phi_double(zero_translation(a)) == zero_translation(diag(1, 1, -1, -1))
    lhs = phi_double(zero_translation(a) * zero_translation(b))
    rhs = phi_double(zero_translation(a)) * phi_double(zero_translation(b))
    assert lhs == rhs


fractions = st.fractions(min_value=-10, max_value=10, max_denominator=12)
vectors = st.tuples(fractions, fractions, fractions, fractions)
covering_parts = st.sampled_from(PAULI_GROUP_SU2)
lorentz_parts = st.sampled_from(
    [identity(4), la.PARITY, la.TIME_REVERSAL, -identity(4), diag(1, 1, -1, -1), diag(1, -1, 1, -1)]
)


@given(vectors, covering_parts, vectors, covering_parts, vectors, covering_parts)
def test_covering_semidirect_associative(a, A, b, B, c, C):
    x, y, z = SemidirectElem(a, A), SemidirectElem(b, B), SemidirectElem(c, C)
    assert (x * y) * z == x * (y * z)
    assert phi_double(x * y) == phi_double(x) * phi_double(y)


@given(vectors, lorentz_parts, vectors, lorentz_parts, vectors, lorentz_parts)
def test_poincare_semidirect_associative(a, A, b, B, c, C):
    x, y, z = SemidirectElem(a, A), SemidirectElem(b, B), SemidirectElem(c, C)
    assert (x * y) * z == x * (y * z)


@given(vectors, st.one_of(covering_parts, lorentz_parts))
def test_semidirect_inverse(a, A):
    x = SemidirectElem(a, A)
    e = zero_translation(identity(A.n))
    assert x * x.inverse() == e == x.inverse() * x


def test_translation_components_are_exact_rationals():
    x = SemidirectElem((Fraction(1, 3), 0, 0, 0), identity(4))
    assert (x * x).translation[0] == Fraction(2, 3)


@given(st.lists(st.integers(-5, 5), min_size=9, max_size=9), st.lists(st.integers(-5, 5), min_size=9, max_size=9))
def test_det_multiplicative(xs, ys):
    a = Matrix((tuple(xs[0:3]), tuple(xs[3:6]), tuple(xs[6:9])))
    b = Matrix((tuple(ys[0:3]), tuple(ys[3:6]), tuple(ys[6:9])))
    assert (a @ b).det() == a.det() * b.det()
