from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nonassoc.algebra import (
    is_associative,
    multiply,
    norm_trace_involution,
    quadratic_algebra,
    quadratic_structure,
    scalar_mutation,
    scale_form,
)
from nonassoc.analysis import verify_isomorphism
from nonassoc.correspondence import bfkts_to_quadratic
from nonassoc.families import (
    build_color,
    build_d_mu,
    build_f_type,
    build_g_type,
    build_orthogonal,
    build_symplectic,
    build_unitarian,
    cayley_dickson,
    check_colo,
    check_composition,
    check_hermitian_law,
    check_quaca,
    color_checks,
    cross3,
    d_mu_checks,
    f_type_iso,
    f_type_quadratic,
    free_hermitian_module,
    g_iso_map,
    g_type_checks,
    mutation_isomorphism,
    split_symplectic_module,
    split_unitarian_module,
    verify_g_iso,
)
from nonassoc.families import _diagonal_gram
from nonassoc.kernel import BilinearForm, PreconditionError, StructureError, basis_vector, det, identity, vector, zeros
from nonassoc.triple import triple_product

small = st.integers(-3, 3)
vec8 = st.lists(small, min_size=8, max_size=8)


# -- composition algebras ----------------------------------------------------------

def test_split_binarion():
    K = cayley_dickson((1,))
    u = basis_vector(2, 1)
    assert list(K.mul(u, u)) == [1, 0]
    # N(a + b u) = a^2 - b^2
    assert K.N(vector([3, 2])) == 5


def test_octonions_nonassociative(octonions):
    c = is_associative(octonions.algebra)
    assert not c and c.witness is not None


def test_zero_parameter_rejected():
    with pytest.raises(StructureError):
        cayley_dickson((-1, 0))
    with pytest.raises(StructureError):
        cayley_dickson((1, 1, 1, 1))


@settings(max_examples=40, deadline=None)
@given(vec8, vec8)
def test_norm_multiplicative_unlinearized(x, y):
    for C in (cayley_dickson((-1, -1, -1)), cayley_dickson((-1, 2, 3))):
        x_, y_ = vector(x), vector(y)
        assert C.N(C.mul(x_, y_)) == C.N(x_) * C.N(y_)


def test_conjugation(octonions):
    for x in octonions.algebra.basis():
        assert np.all(octonions.mul(x, octonions.conj(x)) == octonions.N(x) * octonions.unit)


def test_composition_check_catches_bad_norm(quaternions):
    c = check_composition(quaternions.algebra, BilinearForm(2 * quaternions.norm.gram))
    assert not c


# -- orthogonal ----------------------------------------------------------------------

def test_orthogonal_base_point_must_be_unit():
    with pytest.raises(PreconditionError, match="<e|e> = 1"):
        build_orthogonal([[2, 0], [0, 1]], 0)
    with pytest.raises(PreconditionError):
        build_orthogonal([[1, 1], [0, 1]], 0)


def test_orthogonal_dim_one():
    T = build_orthogonal([[1]], 0)
    # xyz = <z|x>y - <z|y>x + <x|y>z = xyz
    assert T.tc[0, 0, 0, 0] == 1


# -- hermitian families ----------------------------------------------------------------

def test_hermitian_modules_are_valid():
    for M in (split_unitarian_module(3), split_symplectic_module(2)):
        assert all(M.check())


def test_non_hermitian_gram_rejected():
    K = cayley_dickson((1,))
    G = _diagonal_gram(K, [1, 1])
    G[0, 1] = basis_vector(2, 1)  # G_01 = u, G_10 = 0 != bar(u)
    with pytest.raises(PreconditionError, match="hermitian"):
        free_hermitian_module(K, G)


def test_unitarian_rank_one_is_k():
    K = cayley_dickson((1,))
    T = build_unitarian(free_hermitian_module(K, _diagonal_gram(K, [1])), 0)
    assert bfkts_to_quadratic(T, T.base).algebra == K.algebra


def test_symplectic_rank_one():
    # with W = 0 the product is a.b = abar b + b(a - abar), i.e. -ab + 2ba
    H = cayley_dickson((1, 1))
    T = build_symplectic(free_hermitian_module(H, _diagonal_gram(H, [1])), 0)
    S = bfkts_to_quadratic(T, T.base).algebra
    for a in H.algebra.basis():
        for b in H.algebra.basis():
            abar = H.conj(a)
            assert np.all(multiply(S, a, b) == H.mul(abar, b) + H.mul(b, a - abar))
    assert S == scalar_mutation(H.algebra, -1)
    # the intrinsic norm is no longer multiplicative, so S is not a quaternion algebra
    assert not check_composition(S, norm_trace_involution(quadratic_structure(S)).norm)


def test_hermitian_law_on_instances(instances):
    assert check_hermitian_law(instances["unitarian6"], split_unitarian_module(3))
    assert check_hermitian_law(instances["symplectic8"], split_symplectic_module(2))


def test_hermitian_base_point_checked():
    M = free_hermitian_module(cayley_dickson((1,)), _diagonal_gram(cayley_dickson((1,)), [2, 1]))
    with pytest.raises(PreconditionError, match="h\\(e, e\\) = 1"):
        build_unitarian(M, 0)
    T = build_unitarian(M, 2)
    assert T.dim == 4


def test_family_coefficient_dimensions():
    with pytest.raises(PreconditionError):
        build_unitarian(split_symplectic_module(1))
    with pytest.raises(PreconditionError):
        build_symplectic(split_unitarian_module(2))


# -- D_mu --------------------------------------------------------------------------------

def test_d_mu_epsilon_sign():
    T, mu = build_d_mu()
    e = [basis_vector(4, i) for i in range(4)]
    out = triple_product(T, e[1], e[2], e[3])
    assert out[0] == sympy.LeviCivita(1, 2, 3, 0) == -1
    assert list(out[1:]) == [0, 0, 0]


def test_d_mu_values(instances):
    assert instances["d_mu1"].meta["mu"] == 1
    assert instances["d_mu2"].meta["mu"] == 4
    for key in ("d_mu1", "d_mu2"):
        assert all(d_mu_checks(instances[key]))


@settings(max_examples=15, deadline=None)
@given(st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(lambda x: x != 0))
def test_mu_scales_quadratically(lam):
    _, mu1 = build_d_mu(phi_scale=1, verify=False)
    _, mul = build_d_mu(phi_scale=lam, verify=False)
    assert mul == lam * lam * mu1


def test_d_mu_nonorthonormal_gram():
    T, mu = build_d_mu([[1, 0, 0, 0], [0, 2, 1, 0], [0, 1, 3, 0], [0, 0, 0, -1]])
    assert all(d_mu_checks(T))
    # det of the gram is -5; mu = phi_scale^2 / det
    assert mu == Fraction(-1, 5)


def test_d_mu_unit_mu_gives_quaternions(instances):
    T = instances["d_mu1"]
    Q = bfkts_to_quadratic(T, T.base)
    assert check_composition(Q.algebra, norm_trace_involution(Q).norm)


def test_d_mu_preconditions():
    with pytest.raises(PreconditionError):
        build_d_mu(identity(3))
    with pytest.raises(PreconditionError):
        build_d_mu(phi_scale=0)
    with pytest.raises(PreconditionError):
        build_d_mu([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]])


# -- G-type and color algebra ------------------------------------------------------------

def _isotropic_trace_zero(C):
    pos = [i for i in range(1, 8) if C.N(basis_vector(8, i)) == 1]
    neg = [i for i in range(1, 8) if C.N(basis_vector(8, i)) == -1]
    return basis_vector(8, pos[0]) + basis_vector(8, neg[0])


def test_g_type_normalization(instances):
    T = instances["g_type7"]
    assert T.form(T.base, T.base) == 1
    assert all(g_type_checks(T))


def test_g_type_preconditions(cayley):
    with pytest.raises(PreconditionError, match="t\\(e\\)"):
        build_g_type(cayley, cayley.unit)
    with pytest.raises(PreconditionError, match="n\\(e\\)"):
        build_g_type(cayley, _isotropic_trace_zero(cayley))
    with pytest.raises(PreconditionError):
        build_g_type(cayley_dickson((-1, -1)), basis_vector(4, 1))


def test_g_type_other_point(cayley):
    e = 2 * basis_vector(8, 1)  # n(e) = 4
    T = build_g_type(cayley, e)
    assert T.form(T.base, T.base) == 1


@pytest.fixture(scope="module")
def color(cayley):
    return build_color(cayley, basis_vector(8, 1))


def test_color_laws(color):
    assert all(color_checks(color))
    assert color.dim == 7


def test_color_anticommutative(color):
    for u in color.v_ambient:
        for v in color.v_ambient:
            assert np.all(color.star(u, v) == -color.star(v, u))


def test_g_iso(instances, cayley, color):
    T = instances["g_type7"]
    assert verify_g_iso(color, T)
    assert not verify_g_iso(color, T, u_scale=-1)


def test_g_iso_maps_unit_to_e(instances, color):
    T = instances["g_type7"]
    phi = g_iso_map(color, T)
    assert np.all(phi.dot(color.algebra.unit) == T.base)


def test_g_iso_mismatched_data(instances, cayley):
    B = build_color(cayley, 2 * basis_vector(8, 1))
    with pytest.raises(PreconditionError):
        verify_g_iso(B, instances["g_type7"])


def test_quaca_and_colo(quaternions, octonions, cayley, color):
    for C in (quaternions, octonions, cayley):
        assert check_quaca(quadratic_structure(C.algebra))
    c = check_quaca(color)
    assert not c and c.witness is not None
    assert check_colo(color)


def test_quaca_zero_cross_fails():
    Q = quadratic_structure(quadratic_algebra(identity(3), zeros(3, 3, 3)))
    assert not check_quaca(Q)


# -- F-type -----------------------------------------------------------------------------

def test_cross3_checks(cayley):
    assert all(cross3(cayley).check())


def test_f_type_product_law(instances, cayley):
    """u.v = -<u|v> 1 - [u, v] / 6 on trace-zero basis pairs, from the Cayley product."""
    S = f_type_quadratic(instances["f_type8"])
    for i in range(1, 8):
        for j in range(1, 8):
            u, v = basis_vector(8, i), basis_vector(8, j)
            comm = cayley.mul(u, v) - cayley.mul(v, u)
            expected = -cayley.norm(u, v) / 2 * cayley.unit - comm / 6
            assert np.all(multiply(S, u, v) == expected)


def test_f_type_is_third_mutation(instances, cayley):
    S = f_type_quadratic(instances["f_type8"])
    assert S == scalar_mutation(cayley.algebra, Fraction(1, 3))
    assert S != scalar_mutation(cayley.algebra, Fraction(-1, 3))


def test_f_type_iso(instances, cayley):
    nu, c = f_type_iso(cayley, instances["f_type8"])
    assert c and nu == -3
    nu, c = f_type_iso(cayley, instances["f_type8"], nus=(3,))
    assert not c and nu is None


def test_f_type_needs_cayley(quaternions):
    with pytest.raises(PreconditionError):
        build_f_type(quaternions)


@settings(max_examples=15, deadline=None)
@given(st.fractions(min_value=-4, max_value=4, max_denominator=6).filter(lambda a: 2 * a != 1))
def test_mutation_isomorphism_property(alpha):
    Q = quadratic_structure(cayley_dickson((-1, -1)).algebra)
    src, tgt, phi, c = mutation_isomorphism(Q, alpha)
    assert c
    assert verify_isomorphism(src, tgt, phi)


def test_mutation_isomorphism_half_rejected(quaternions):
    with pytest.raises(StructureError):
        mutation_isomorphism(quadratic_structure(quaternions.algebra), Fraction(1, 2))


def test_scale_form_changes_gram_det(quaternions):
    Q = quadratic_structure(quaternions.algebra)
    for mu in (2, Fraction(-1, 3)):
        R = quadratic_structure(scale_form(Q, mu))
        assert det(R.form.gram) == mu ** 3 * det(Q.form.gram)
