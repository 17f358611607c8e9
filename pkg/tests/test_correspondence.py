from fractions import Fraction

import numpy as np
import pytest

from nonassoc.algebra import (
    Algebra,
    direct_product,
    field_algebra,
    is_in_variety_V,
    multiply,
    norm_trace_involution,
    quadratic_structure,
)
from nonassoc.correspondence import (
    InvolutiveAlgebra,
    bfkts_to_quadratic,
    homotope,
    homotope_roundtrip,
    involutive_from_quadratic,
    jordan_triple,
    norm_of_base,
    quadratic_roundtrip,
    quadratic_to_bfkts,
    tilde_system,
    triple_from_involutive,
)
from nonassoc.families import build_orthogonal
from nonassoc.kernel import PreconditionError, StructureError, basis_vector, identity, matrix, vector, zeros
from nonassoc.triple import TripleSystem, check_balanced, check_gjts, direct_sum, l_op, triple_product


def orth_product_oracle(n):
    """(a e + u)(b e + v) = (ab - <u|v>) e + (a v + b u) for an orthonormal basis, e = e_0."""
    sc = zeros(n, n, n)
    for i in range(n):
        sc[0, i, i] = sc[i, 0, i] = Fraction(1)
    for i in range(1, n):
        sc[i, i, 0] = Fraction(-1)
    return sc


def test_homotope_condition_i(instances):
    T = instances["orthogonal4"]
    with pytest.raises(PreconditionError, match=r"\(i\)"):
        homotope(T, 2 * basis_vector(4, 0))


def test_homotope_condition_ii_on_balanced(instances):
    # a balanced system has exe = -x on e-perp but eex = x, so (ii) fails
    with pytest.raises(PreconditionError, match=r"\(ii\)"):
        homotope(instances["orthogonal2"], basis_vector(2, 0))


def test_homotope_condition_iii():
    F = field_algebra()
    T = direct_sum(jordan_triple(F), TripleSystem(zeros(1, 1, 1, 1)))
    with pytest.raises(PreconditionError, match=r"\(iii\)"):
        homotope(T, basis_vector(2, 0))


def test_homotope_of_jordan_triple_is_jordan(fxf):
    T = jordan_triple(fxf)
    H = homotope(T, fxf.unit)
    assert H.algebra == fxf
    assert np.array_equal(H.bar, identity(2))


def test_swap_involution_gives_gjts(fxf):
    swap = matrix([[0, 1], [1, 0]])
    T = triple_from_involutive(InvolutiveAlgebra(fxf, swap))
    assert T.dim == 2 and check_gjts(T)
    H = homotope(T, fxf.unit)
    assert np.array_equal(H.bar, swap)


def test_involutive_algebra_validates(fxf):
    with pytest.raises(StructureError):
        InvolutiveAlgebra(fxf, matrix([[1, 1], [0, 1]]))
    with pytest.raises(StructureError):
        InvolutiveAlgebra(Algebra(zeros(2, 2, 2)), identity(2))


def test_triple_from_involutive_refuses_non_V(cayley):
    A = involutive_from_quadratic(quadratic_structure(cayley.algebra))
    with pytest.raises(PreconditionError, match="not in V") as err:
        triple_from_involutive(A)
    assert err.value.witness is not None


@pytest.mark.parametrize("n", [2, 4])
def test_orthogonal_quadratic_product(n):
    T = build_orthogonal(identity(n), 0)
    Q = bfkts_to_quadratic(T, basis_vector(n, 0))
    assert np.array_equal(Q.algebra.sc, orth_product_oracle(n))


def test_orthogonal2_split_form_gives_fxf():
    # <u|u> = -1 makes u.u = e, so the quadratic algebra is F x F
    T = build_orthogonal([[1, 0], [0, -1]], 0)
    Q = bfkts_to_quadratic(T, basis_vector(2, 0))
    u = basis_vector(2, 1)
    assert list(multiply(Q.algebra, u, u)) == [1, 0]


def test_isotropic_base_point():
    T = build_orthogonal([[1, 0], [0, -1]], 0)
    with pytest.raises(PreconditionError, match="isotropic base point"):
        bfkts_to_quadratic(T, vector([1, 1]))
    with pytest.raises(PreconditionError, match="isotropic base point"):
        tilde_system(T, vector([1, 1]))


def test_scaled_base_point(instances):
    T = instances["orthogonal4"]
    for lam in (1, 2, Fraction(-1, 3)):
        Q = bfkts_to_quadratic(T, lam * basis_vector(4, 0))
        assert is_in_variety_V(Q.algebra)


def test_unbalanced_refused():
    F = field_algebra()
    J = jordan_triple(direct_product(direct_product(F, F), F))
    with pytest.raises(PreconditionError, match="balanced"):
        bfkts_to_quadratic(J, vector([1, 1, 1]))


def test_norm_from_base(instances):
    T = instances["d_mu2"]
    Q = bfkts_to_quadratic(T, T.base)
    ee = norm_of_base(T, T.base)
    ok, form = check_balanced(T)
    # N(x) = <x|x> / <e|e>, read through x.x = T(x)x - N(x)1
    for x in T.basis():
        xx = multiply(Q.algebra, x, x)
        n = form(x, x) / ee
        t = 2 * form(x, T.base) / ee
        assert np.all(xx == t * x - n * T.base)


def test_quadratic_to_bfkts_dim_one():
    F = field_algebra()
    T = quadratic_to_bfkts(F)
    assert T.tc[0, 0, 0, 0] == 1
    assert T.form.gram[0, 0] == 1


def test_quadratic_to_bfkts_xxy(instances, fxf, quaternions):
    for A in (fxf, quaternions.algebra):
        T = quadratic_to_bfkts(A)
        N = norm_trace_involution(quadratic_structure(A)).N
        for x in T.basis():
            assert np.all(l_op(T, x, x) == N(x) * identity(T.dim))
        for x in T.basis():
            for y in T.basis():
                assert np.all(triple_product(T, x, y, x) == N(x) * y)


def test_quadratic_to_bfkts_refuses_non_quadratic():
    sc = zeros(3, 3, 3)
    for i in range(3):
        sc[i, i, i] = Fraction(1)
    with pytest.raises(PreconditionError):
        quadratic_to_bfkts(Algebra(sc, unit=vector([1, 1, 1])))


def test_quadratic_roundtrip(instances, fxf, quaternions):
    assert quadratic_roundtrip(quadratic_structure(fxf))
    assert quadratic_roundtrip(quadratic_structure(quaternions.algebra))
    for T in instances.values():
        assert quadratic_roundtrip(bfkts_to_quadratic(T, T.base))


def test_tilde_homotope_roundtrip(instances):
    for T in instances.values():
        S = tilde_system(T, T.base)
        assert homotope_roundtrip(S, T.base)


def test_homotope_g5_consequences(instances):
    T = instances["unitarian6"]
    e = T.base
    S = tilde_system(T, e)
    H = homotope(S, e)
    A, bar = H.algebra, H.bar
    for x in S.basis():
        for y in S.basis():
            assert np.all(triple_product(S, e, x, y) == multiply(A, bar.dot(x), y))
            assert np.all(triple_product(S, x, y, e) == multiply(A, x, bar.dot(y)))


def test_tilde_homotope_matches_quadratic(instances):
    # homotope of the tilde system is the quadratic algebra exy / <e|e>
    for T in instances.values():
        H = homotope(tilde_system(T, T.base), T.base)
        assert H.algebra == bfkts_to_quadratic(T, T.base).algebra
