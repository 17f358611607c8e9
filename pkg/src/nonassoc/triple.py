"""Triple systems given by rank-4 structure constants.

``tc[i, j, k, l]`` is the coefficient of ``e_l`` in the triple product
``e_i e_j e_k``.  Operators are stored with rows indexing the output
coordinate, so ``l_op(x, y) @ z`` is the triple product ``x y z``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property

import numpy as np

from .kernel import (
    BilinearForm,
    Check,
    StructureError,
    as_array,
    basis_vector,
    integerize,
    is_zero,
    residual_check,
)


class TripleSystem:
    def __init__(self, tc, form: BilinearForm | None = None, name: str = "", base=None, meta=None):
        tc = as_array(tc, ndim=4)
        n = tc.shape[0]
        if tc.shape != (n, n, n, n) or n == 0:
            raise StructureError(f"triple constants must have shape (n, n, n, n), got {tc.shape}")
        if form is not None:
            if not isinstance(form, BilinearForm):
                form = BilinearForm(form)
            if form.dim != n:
                raise StructureError("declared form has the wrong dimension")
            if not form.is_symmetric() or form.is_zero():
                raise StructureError("declared form must be symmetric and nonzero")
        self.tc = tc
        self.dim = n
        self.form = form
        self.name = name
        # optional distinguished point (e.g. <e|e> = 1) and free-form metadata
        self.base = None if base is None else as_array(base, ndim=1)
        self.meta = dict(meta or {})

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<TripleSystem{label} dim={self.dim}{' with form' if self.form else ''}>"

    def __eq__(self, other):
        return isinstance(other, TripleSystem) and np.array_equal(self.tc, other.tc)

    __hash__ = None

    @cached_property
    def _int(self):
        return integerize(self.tc)[0]

    def basis(self):
        return [basis_vector(self.dim, i) for i in range(self.dim)]

    def __call__(self, x, y, z):
        return triple_product(self, x, y, z)


def triple_product(T: TripleSystem, x, y, z) -> np.ndarray:
    x, y, z = (as_array(v, ndim=1) for v in (x, y, z))
    for v in (x, y, z):
        if len(v) != T.dim:
            raise StructureError(f"vector of length {len(v)} in a triple system of dimension {T.dim}")
    return np.einsum("i,j,k,ijkl->l", x, y, z, T.tc)


def l_op(T: TripleSystem, x, y) -> np.ndarray:
    """Matrix of ``z -> x y z``."""
    return np.einsum("i,j,ijkl->lk", as_array(x), as_array(y), T.tc)


def k_op(T: TripleSystem, x, y) -> np.ndarray:
    """Matrix of ``z -> x z y + y z x``."""
    x, y = as_array(x), as_array(y)
    return np.einsum("i,k,ijkl->lj", x, y, T.tc) + np.einsum("i,k,ijkl->lj", y, x, T.tc)


def _l_ops(tc):
    # l[a,b] = matrix of z -> e_a e_b z
    return np.transpose(tc, (0, 1, 3, 2))


def _k_ops(tc):
    # k[a,b][l,c] = tc[a,c,b,l] + tc[b,c,a,l]
    return np.transpose(tc, (0, 2, 3, 1)) + np.transpose(tc, (2, 0, 3, 1))


def _gjts_operator_residual(tc):
    l = _l_ops(tc)
    prod = np.einsum("uvij,xyjk->uvxyik", l, l)
    lhs = prod - np.transpose(prod, (2, 3, 0, 1, 4, 5))
    t1 = np.einsum("uvxm,myij->uvxyij", tc, l)  # l_{l_{u,v} x, y}
    t2 = np.einsum("vuym,xmij->uvxyij", tc, l)  # l_{x, l_{v,u} y}
    return lhs - t1 + t2


def _gjts_tuple_residual(tc):
    # uv(xyz) - (uvx)yz + x(vuy)z - xy(uvz), indexed [u,v,x,y,z,l]
    a = np.einsum("xyzm,uvml->uvxyzl", tc, tc)
    b = np.einsum("uvxm,myzl->uvxyzl", tc, tc)
    c = np.einsum("vuym,xmzl->uvxyzl", tc, tc)
    d = np.einsum("uvzm,xyml->uvxyzl", tc, tc)
    return a - b + c - d


def check_gjts(T: TripleSystem, mode: str = "operator") -> Check:
    """Generalized Jordan triple system identity.

    ``mode="operator"`` checks ``[l_{u,v}, l_{x,y}] = l_{l_{u,v}x,y} - l_{x,l_{v,u}y}``
    on basis 4-tuples (witness ``(u, v, x, y, row, col)``); ``mode="tuple"``
    checks the 5-variable identity directly (witness ``(u, v, x, y, z, l)``).
    """
    if mode == "operator":
        return residual_check("GJTS", _gjts_operator_residual(T._int))
    if mode == "tuple":
        return residual_check("GJTS", _gjts_tuple_residual(T._int))
    raise ValueError(f"unknown mode {mode!r}")


def check_jts(T: TripleSystem) -> Check:
    g = check_gjts(T)
    if not g:
        return Check("JTS", False, g.witness, "GJTS identity fails")
    return residual_check("JTS", T.tc - np.transpose(T.tc, (2, 1, 0, 3)), "xyz != zyx")


def check_fkts(T: TripleSystem) -> Check:
    """``l_{d,c} k_{a,b} + k_{a,b} l_{c,d} = k_{k_{a,b}c, d}`` on basis 4-tuples."""
    tc = T._int
    l = _l_ops(tc)
    k = _k_ops(tc)
    lhs = np.einsum("dcij,abjk->abcdik", l, k) + np.einsum("abij,cdjk->abcdik", k, l)
    rhs = np.einsum("abmc,mdij->abcdij", k, k)
    return residual_check("(-1,-1)-FKTS", lhs - rhs)


def recover_form(T: TripleSystem) -> BilinearForm:
    """``<e_i|e_j> = trace(y -> e_i y e_j + e_j y e_i) / (2n)``."""
    k = _k_ops(T.tc)
    tr = np.trace(k, axis1=2, axis2=3)
    return BilinearForm(tr / (2 * T.dim))


def check_balanced(T: TripleSystem, require_gjts: bool = True) -> tuple[Check, BilinearForm | None]:
    """Verify ``xxy = xyx = <x|x> y`` (linearized) with the form read off the tensor.

    Returns the check and, on success, the recovered form.  A declared form
    on ``T`` must agree with the recovered one.
    """
    name = "balanced"
    if require_gjts:
        g = check_gjts(T)
        if not g:
            return Check(name, False, g.witness, "GJTS identity fails"), None
    tc, d = integerize(T.tc)
    n = T.dim
    k = _k_ops(tc)
    tr = np.trace(k, axis1=2, axis2=3)  # 2n <x|z> scaled by d
    # 2n (xzy + zxy) = 2 tr[x,z] y ;  2n (xyz + zyx) = 2 tr[x,z] y
    eye = np.eye(n, dtype=object)
    target = 2 * np.einsum("xz,yl->xzyl", tr, eye)
    r1 = 2 * n * (tc + np.transpose(tc, (1, 0, 2, 3))) - target  # [x,z,y,l]
    c1 = residual_check(name, r1, "xzy + zxy != 2<x|z>y")
    if not c1:
        return c1, None
    r2 = 2 * n * (tc + np.transpose(tc, (2, 1, 0, 3))) - np.transpose(target, (0, 2, 1, 3))  # [x,y,z,l]
    c2 = residual_check(name, r2, "xyz + zyx != 2<x|z>y")
    if not c2:
        return c2, None
    form = recover_form(T)
    if form.is_zero():
        return Check(name, False, None, "recovered form is zero"), None
    if not form.is_symmetric():
        return Check(name, False, None, "recovered form is not symmetric"), None
    if T.form is not None and T.form != form:
        bad = np.argwhere(T.form.gram != form.gram)[0]
        return Check(name, False, tuple(int(i) for i in bad), "declared form disagrees with the tensor"), None
    return Check(name, True), form


def check_bfkts(T: TripleSystem) -> list[Check]:
    """GJTS, FKTS and balanced checks together."""
    g = check_gjts(T)
    out = [g, check_fkts(T)]
    out.append(check_balanced(T, require_gjts=False)[0])
    return out


def zero_system(n: int) -> TripleSystem:
    return TripleSystem(np.full((n, n, n, n), Fraction(0), dtype=object))


def direct_sum(S: TripleSystem, T: TripleSystem, name: str = "") -> TripleSystem:
    n, m = S.dim, T.dim
    tc = np.full((n + m,) * 4, Fraction(0), dtype=object)
    tc[:n, :n, :n, :n] = S.tc
    tc[n:, n:, n:, n:] = T.tc
    form = None
    if S.form is not None and T.form is not None:
        g = np.full((n + m, n + m), Fraction(0), dtype=object)
        g[:n, :n] = S.form.gram
        g[n:, n:] = T.form.gram
        form = BilinearForm(g)
    return TripleSystem(tc, form=form, name=name)


def is_nonzero(T: TripleSystem) -> bool:
    return not is_zero(T.tc)
