from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonassoc.algebra import direct_product, field_algebra
from nonassoc.correspondence import jordan_triple
from nonassoc.families import build_orthogonal
from nonassoc.kernel import StructureError, as_array, basis_vector, identity, vector, zeros
from nonassoc.triple import (
    TripleSystem,
    check_balanced,
    check_bfkts,
    check_fkts,
    check_gjts,
    check_jts,
    direct_sum,
    k_op,
    l_op,
    recover_form,
    triple_product,
    zero_system,
)


def orthogonal_oracle(gram):
    """xyz = <z|x>y - <z|y>x + <x|y>z evaluated entry by entry."""
    g = as_array(gram)
    n = len(g)
    tc = zeros(n, n, n, n)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                tc[x, y, z, y] += g[z, x]
                tc[x, y, z, x] -= g[z, y]
                tc[x, y, z, z] += g[x, y]
    return tc


def test_orthogonal_product_example():
    T = build_orthogonal(identity(2), 0)
    e1, e2 = basis_vector(2, 0), basis_vector(2, 1)
    assert list(triple_product(T, e1, e1, e2)) == [0, 1]


@pytest.mark.parametrize("gram", [[[1]], [[1, 0], [0, 1]], [[1, 0, 0], [0, 2, 1], [0, 1, -1]]])
def test_orthogonal_matches_oracle(gram):
    T = build_orthogonal(gram, 0)
    assert np.array_equal(T.tc, orthogonal_oracle(gram))


def test_zero_tensor():
    T = zero_system(3)
    assert not np.any(triple_product(T, vector([1, 2, 3]), vector([0, 1, 0]), vector([5, 5, 5])) != 0)
    assert check_gjts(T) and check_fkts(T)
    assert check_gjts(zero_system(1))


def test_shape_errors():
    with pytest.raises(StructureError):
        TripleSystem(zeros(2, 2, 2, 3))
    T = zero_system(2)
    with pytest.raises(StructureError):
        triple_product(T, vector([1]), vector([1, 0]), vector([1, 0]))
    with pytest.raises(StructureError):
        TripleSystem(zeros(2, 2, 2, 2), form=[[1, 1], [0, 1]])


def test_operators(instances):
    T = instances["orthogonal4"]
    x, y, c = vector([1, 2, 0, -1]), vector([0, 1, "1/2", 3]), vector([2, 0, 1, 1])
    assert np.all(l_op(T, x, y).dot(c) == triple_product(T, x, y, c))
    assert np.all(k_op(T, x, y).dot(c) == triple_product(T, x, c, y) + triple_product(T, y, c, x))
    assert np.all(k_op(T, x, x).dot(c) == 2 * triple_product(T, x, c, x))
    assert np.all(k_op(T, x, y) == k_op(T, y, x))
    assert np.all(l_op(T, x + c, y) == l_op(T, x, y) + l_op(T, c, y))


def test_balanced_l_op_is_scalar(instances):
    for T in instances.values():
        g = T.form.gram
        for i, x in enumerate(T.basis()):
            for j, y in enumerate(T.basis()):
                assert np.all(l_op(T, x, y) + l_op(T, y, x) == 2 * g[i, j] * identity(T.dim))


def test_random_tensor_fails_gjts():
    rng = np.random.default_rng(3)
    T = TripleSystem(as_array(rng.integers(-2, 3, size=(3, 3, 3, 3)).tolist()))
    c = check_gjts(T)
    assert not c and c.witness is not None
    assert not check_gjts(T, mode="tuple")


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-1, 1), min_size=16, max_size=16))
def test_gjts_modes_agree_on_random_tensors(entries):
    T = TripleSystem(as_array(np.array(entries).reshape(2, 2, 2, 2).tolist()))
    assert check_gjts(T).ok == check_gjts(T, mode="tuple").ok


def test_gjts_modes_agree_on_instances(instances):
    for key in ("orthogonal2", "orthogonal4", "d_mu1", "unitarian6"):
        T = instances[key]
        assert check_gjts(T) and check_gjts(T, mode="tuple")


def test_jts(instances, fxf):
    # e0 e0 e1 = e1 while e1 e0 e0 = -e1
    c = check_jts(instances["orthogonal4"])
    assert not c and c.witness == (0, 0, 1, 1)
    assert check_jts(jordan_triple(fxf))
    c = check_jts(instances["symplectic8"])
    assert not c and c.witness is not None


def test_fkts_on_balanced(instances):
    for T in instances.values():
        assert check_fkts(T)


def test_corrupted_tensor_fails_fkts(instances):
    tc = instances["orthogonal4"].tc.copy()
    tc[0, 1, 2, 3] += 1
    c = check_fkts(TripleSystem(tc))
    assert not c and c.witness is not None


def test_recovered_form(instances):
    ok, form = check_balanced(instances["orthogonal4"])
    assert ok and np.array_equal(form.gram, identity(4))
    T = instances["d_mu1"]
    ok, form = check_balanced(T)
    assert ok and form == T.form


def test_jordan_triple_of_cubic_algebra_not_balanced():
    F = field_algebra()
    J = jordan_triple(direct_product(direct_product(F, F), F))
    assert check_gjts(J)
    ok, form = check_balanced(J)
    assert not ok and form is None


def test_declared_form_must_match(instances):
    T = instances["orthogonal2"]
    wrong = TripleSystem(T.tc, form=2 * identity(2))
    ok, _ = check_balanced(wrong)
    assert not ok and "declared form" in ok.detail


def test_check_bfkts_bundle(instances):
    assert all(check_bfkts(instances["g_type7"]))


def test_direct_sum():
    a = build_orthogonal(identity(2), 0)
    b = build_orthogonal(identity(3), 0)
    s = direct_sum(a, b)
    assert s.dim == 5 and check_gjts(s)
    # balanced fails: <x|x> y must hold across summands
    assert not check_balanced(s)[0]
    assert not np.any(triple_product(s, basis_vector(5, 0), basis_vector(5, 0), basis_vector(5, 3)) != 0)


def test_recover_form_normalization(instances):
    T = instances["orthogonal4"]
    assert recover_form(T).gram[0, 0] == Fraction(1)
