"""Finite-dimensional binary algebras given by structure constants.

``sc[i, j, k]`` is the coefficient of ``e_k`` in ``e_i e_j``.  Identity checks
are run on full multilinearizations over basis tuples, which is equivalent
to the polynomial identity in characteristic zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .kernel import (
    BilinearForm,
    Check,
    Echelon,
    StructureError,
    as_array,
    basis_matrix,
    basis_vector,
    fractionize,
    identity,
    integerize,
    inverse,
    is_zero,
    primitive,
    residual_check,
    solve,
    zeros,
)


class Algebra:
    """An ``n``-dimensional algebra over the rationals.

    If ``unit`` is given it is checked against every basis element.
    """

    def __init__(self, sc, unit=None, name: str = "", meta=None):
        sc = as_array(sc, ndim=3)
        n = sc.shape[0]
        if sc.shape != (n, n, n) or n == 0:
            raise StructureError(f"structure constants must have shape (n, n, n), got {sc.shape}")
        self.sc = sc
        self.dim = n
        self.name = name
        self.meta = dict(meta or {})
        self.unit = None
        if unit is not None:
            unit = as_array(unit, ndim=1)
            if len(unit) != n:
                raise StructureError("unit has the wrong length")
            left = np.einsum("i,ijk->jk", unit, sc)
            right = np.einsum("j,ijk->ik", unit, sc)
            if np.any(left != identity(n)) or np.any(right != identity(n)):
                raise StructureError("declared unit does not act as the identity")
            self.unit = unit

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Algebra{label} dim={self.dim}{' unital' if self.unit is not None else ''}>"

    def __eq__(self, other):
        return isinstance(other, Algebra) and np.array_equal(self.sc, other.sc)

    __hash__ = None

    @cached_property
    def _int(self):
        return integerize(self.sc)[0]

    def basis(self):
        return [basis_vector(self.dim, i) for i in range(self.dim)]

    def mul(self, x, y):
        return multiply(self, x, y)


def find_unit(sc) -> np.ndarray | None:
    """Solve for a two-sided unit of the structure constants, if there is one."""
    sc = as_array(sc, ndim=3)
    n = sc.shape[0]
    # u e_j = e_j and e_j u = e_j, linear in u
    rows, rhs = [], []
    for j in range(n):
        for k in range(n):
            rows.append(sc[:, j, k])
            rhs.append(Fraction(int(j == k)))
            rows.append(sc[j, :, k])
            rhs.append(Fraction(int(j == k)))
    return solve(as_array(rows), as_array(rhs))


def _check_dims(A: Algebra, *vs):
    for v in vs:
        if len(v) != A.dim:
            raise StructureError(f"vector of length {len(v)} in an algebra of dimension {A.dim}")


def multiply(A: Algebra, x, y) -> np.ndarray:
    x, y = as_array(x, ndim=1), as_array(y, ndim=1)
    _check_dims(A, x, y)
    return np.einsum("i,j,ijk->k", x, y, A.sc)


def left_mult(A: Algebra, x) -> np.ndarray:
    """Matrix of ``y -> x y``."""
    x = as_array(x, ndim=1)
    _check_dims(A, x)
    return np.einsum("i,ijk->kj", x, A.sc)


def right_mult(A: Algebra, x) -> np.ndarray:
    """Matrix of ``y -> y x``."""
    x = as_array(x, ndim=1)
    _check_dims(A, x)
    return np.einsum("j,ijk->ki", x, A.sc)


def associator(A: Algebra, x, y, z) -> np.ndarray:
    return multiply(A, multiply(A, x, y), z) - multiply(A, x, multiply(A, y, z))


def commutator(A: Algebra, x, y) -> np.ndarray:
    return multiply(A, x, y) - multiply(A, y, x)


def d_operator(A: Algebra, x, y) -> np.ndarray:
    """``D_{x,y} = L_{[x,y]} - [L_x, L_y]``."""
    lx, ly = left_mult(A, x), left_mult(A, y)
    return left_mult(A, commutator(A, x, y)) - (lx.dot(ly) - ly.dot(lx))


# -- integer tensors used by the exhaustive checks ---------------------------------
# L[i] is the matrix of left multiplication by e_i (rows = output coordinate).

def _left_ops(sc):
    return np.transpose(sc, (0, 2, 1))


def _right_ops(sc):
    return np.transpose(sc, (1, 2, 0))


def _assoc_tensor(sc):
    """``As[i,j,k,l]``: coefficient of e_l in (e_i, e_j, e_k)."""
    return np.einsum("ijm,mkl->ijkl", sc, sc) - np.einsum("jkm,iml->ijkl", sc, sc)


def _commutators(ops):
    """``C[a,b] = ops[a] ops[b] - ops[b] ops[a]``."""
    prod = np.einsum("aij,bjk->abik", ops, ops)
    return prod - np.transpose(prod, (1, 0, 2, 3))


def _d_tensor(sc):
    """``D[a,b]`` is the matrix of ``D_{e_a,e_b}`` (scaled with sc squared)."""
    L = _left_ops(sc)
    skew = sc - np.transpose(sc, (1, 0, 2))
    return np.einsum("abm,mij->abij", skew, L) - _commutators(L)


def is_commutative(A: Algebra) -> Check:
    return residual_check("commutative", A.sc - np.transpose(A.sc, (1, 0, 2)))


def is_associative(A: Algebra) -> Check:
    return residual_check("associative", _assoc_tensor(A._int))


def is_flexible(A: Algebra) -> Check:
    """Linearized flexible law ``(x,y,z) + (z,y,x) = 0`` on basis triples."""
    As = _assoc_tensor(A._int)
    return residual_check("flexible", As + np.transpose(As, (2, 1, 0, 3)))


def _ncj_residual(sc):
    L = _left_ops(sc)
    C = _commutators(L)
    sym = sc + np.transpose(sc, (1, 0, 2))
    X = np.einsum("bcm,amij->abcij", sym, C)  # [L_a, L_{b o c}]
    return X + np.transpose(X, (2, 0, 1, 3, 4)) + np.transpose(X, (1, 2, 0, 3, 4))


def is_noncommutative_jordan(A: Algebra) -> Check:
    """Flexible, and the full linearization of ``[L_x, L_{x x}] = 0`` holds."""
    flex = is_flexible(A)
    if not flex:
        return Check("noncommutative Jordan", False, flex.witness, "not flexible")
    r = residual_check("noncommutative Jordan", _ncj_residual(A._int), "[L_x, L_{x^2}] != 0")
    return r


def _derivation_residual(sc):
    D = _d_tensor(sc)
    lhs = np.einsum("uvm,abkm->abuvk", sc, D)
    rhs = np.einsum("abmu,mvk->abuvk", D, sc) + np.einsum("abmv,umk->abuvk", D, sc)
    return lhs - rhs


def is_in_variety_V(A: Algebra) -> Check:
    """Noncommutative Jordan and every ``D_{x,y}`` a derivation.

    The witness ``(a, b, u, v, k)`` says ``D_{e_a,e_b}`` violates the Leibniz
    rule on ``e_u e_v`` in coordinate ``k``.
    """
    ncj = is_noncommutative_jordan(A)
    if not ncj:
        return Check("variety V", False, ncj.witness, ncj.detail or "not noncommutative Jordan")
    return residual_check("variety V", _derivation_residual(A._int), "D_{x,y} is not a derivation")


def check_cyclic_identity(A: Algebra) -> Check:
    """``D_{xy,z} + D_{yz,x} + D_{zx,y} = 0`` on basis triples."""
    sc = A._int
    D = _d_tensor(sc)
    E = np.einsum("xym,mzij->xyzij", sc, D)
    res = E + np.transpose(E, (2, 0, 1, 3, 4)) + np.transpose(E, (1, 2, 0, 3, 4))
    return residual_check("cyclic identity", res)


def check_d_operator_forms(A: Algebra) -> Check:
    """The left and right expressions of ``D_{x,y}`` agree (holds in flexible algebras)."""
    sc = A._int
    R = _right_ops(sc)
    skew = sc - np.transpose(sc, (1, 0, 2))
    right_form = -np.einsum("abm,mij->abij", skew, R) - _commutators(R)
    return residual_check("D operator forms agree", _d_tensor(sc) - right_form)


def check_involution(A: Algebra, bar) -> Check:
    """``bar`` is an involution: order two, reverses products, fixes the unit."""
    bar = as_array(bar, ndim=2)
    n = A.dim
    if bar.shape != (n, n):
        raise StructureError("involution has the wrong shape")
    if np.any(bar.dot(bar) != identity(n)):
        return Check("involution", False, None, "bar is not of order two")
    if A.unit is not None and np.any(bar.dot(A.unit) != A.unit):
        return Check("involution", False, None, "bar does not fix the unit")
    # bar(e_i e_j) = bar(e_j) bar(e_i)
    lhs = np.einsum("ijm,km->ijk", A.sc, bar)
    rhs = np.einsum("bj,ai,bak->ijk", bar, bar, A.sc)
    return residual_check("involution", lhs - rhs, "bar(xy) != bar(y) bar(x)")


def change_basis(sc, P) -> np.ndarray:
    """Structure constants relative to the basis given by the columns of ``P``."""
    P = as_array(P, ndim=2)
    Pinv = inverse(P)
    return np.einsum("ai,bj,abc,kc->ijk", P, P, as_array(sc, ndim=3), Pinv)


# -- quadratic algebras -------------------------------------------------------------

@dataclass(eq=False)
class QuadraticStructure:
    """``Q = F1 + V`` with ``uv = -(u|v)1 + u x v`` for ``u, v`` in ``V``.

    ``vbasis`` lists ambient vectors spanning ``V``; ``form`` and ``cross``
    are written in that basis.  ``change`` has columns ``[1, v_1, ...]``.
    """

    algebra: Algebra
    vbasis: list
    form: BilinearForm
    cross: np.ndarray
    change: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @cached_property
    def change_inv(self):
        return inverse(self.change)

    def coords(self, x) -> np.ndarray:
        """Coordinates of an ambient vector in the basis ``1, v_1, ...``."""
        return self.change_inv.dot(as_array(x, ndim=1))

    def from_coords(self, c) -> np.ndarray:
        return self.change.dot(as_array(c, ndim=1))

    def vector(self, c) -> np.ndarray:
        """Ambient vector of the ``V`` element with coordinates ``c``."""
        return self.from_coords(np.concatenate([as_array([0]), as_array(c, ndim=1)]))

    def cross_product(self, u, v) -> np.ndarray:
        """``u x v`` for ``u, v`` given in ``V`` coordinates."""
        return np.einsum("i,j,ijk->k", as_array(u), as_array(v), self.cross)

    def rebuild(self, form=None, cross=None, name: str = "") -> Algebra:
        """The algebra ``Q(V, form, cross)`` written in the ambient basis."""
        form = self.form.gram if form is None else as_array(form, ndim=2)
        cross = self.cross if cross is None else as_array(cross, ndim=3)
        adapted = quadratic_algebra(form, cross).sc
        sc = change_basis(adapted, self.change_inv)
        return Algebra(sc, unit=self.algebra.unit, name=name)


def quadratic_algebra(form, cross, name: str = "") -> Algebra:
    """``Q(V, (.|.), x)`` in the basis ``1, v_1, ..., v_m``."""
    form = as_array(form, ndim=2)
    cross = as_array(cross, ndim=3)
    m = form.shape[0]
    if cross.shape != (m, m, m):
        raise StructureError("cross product tensor does not match the form")
    n = m + 1
    sc = zeros(n, n, n)
    for i in range(n):
        sc[0, i, i] = Fraction(1)
        sc[i, 0, i] = Fraction(1)
    sc[1:, 1:, 0] = -form
    sc[1:, 1:, 1:] = cross
    return Algebra(sc, unit=basis_vector(n, 0), name=name)


def quadratic_structure(A: Algebra) -> QuadraticStructure | None:
    """Split a unital algebra as ``F1 + V`` if it is quadratic, else ``None``.

    Each complement basis vector ``f`` must satisfy ``f^2 = t f - n 1``;
    ``V`` is then spanned by the primitive rescalings of ``2f - t 1``.
    """
    if A.unit is None:
        raise StructureError("quadratic structure needs a unital algebra")
    n = A.dim
    one = A.unit
    ech = Echelon(n)
    ech.add(one)
    comps = [e for e in A.basis() if ech.add(e)]
    vbasis = []
    for f in comps:
        c = solve(basis_matrix([one, f], n), multiply(A, f, f))
        if c is None:
            return None
        vbasis.append(primitive(2 * f - c[1] * one))
    P = basis_matrix([one] + vbasis, n)
    Pinv = inverse(P)
    m = n - 1
    form = zeros(m, m)
    cross = zeros(m, m, m)
    for i, u in enumerate(vbasis):
        for j, v in enumerate(vbasis):
            c = Pinv.dot(multiply(A, u, v))
            form[i, j] = -c[0]
            cross[i, j] = c[1:]
    if not is_zero(cross + np.transpose(cross, (1, 0, 2))):
        return None
    return QuadraticStructure(A, vbasis, BilinearForm(form), cross, P)


@dataclass(frozen=True, eq=False)
class NormTrace:
    norm: BilinearForm  # polar form N(x, y) = N(x + y) - N(x) - N(y)
    trace: np.ndarray  # row vector of T
    bar: np.ndarray  # standard involution x -> T(x)1 - x

    def N(self, x) -> Fraction:
        return self.norm(x, x) / 2

    def T(self, x) -> Fraction:
        return Fraction(self.trace.dot(as_array(x)))


def norm_trace_involution(Q: QuadraticStructure) -> NormTrace:
    if not Q.form.is_symmetric():
        raise StructureError("no standard involution: the vector form is not symmetric")
    n = Q.dim
    Pinv = Q.change_inv
    t_ad = zeros(n)
    t_ad[0] = Fraction(2)
    g_ad = zeros(n, n)
    g_ad[0, 0] = Fraction(2)
    g_ad[1:, 1:] = 2 * Q.form.gram
    flip = -identity(n)
    flip[0, 0] = Fraction(1)
    trace = t_ad.dot(Pinv)
    gram = Pinv.T.dot(g_ad).dot(Pinv)
    bar = Q.change.dot(flip).dot(Pinv)
    inv = check_involution(Q.algebra, bar)
    if not inv:
        raise StructureError(f"standard involution check failed: {inv}")
    return NormTrace(BilinearForm(gram), trace, bar)


def scale_form(Q: QuadraticStructure, mu) -> Algebra:
    """``Q^[mu] = Q(V, mu (.|.), x)``."""
    mu = Fraction(mu)
    if mu == 0:
        raise StructureError("scaling factor must be nonzero")
    name = f"{Q.algebra.name}^[{mu}]" if Q.algebra.name else ""
    return Q.rebuild(form=mu * Q.form.gram, name=name)


def scalar_mutation(A: Algebra, alpha) -> Algebra:
    """``A^(alpha)`` with product ``alpha x y + (1 - alpha) y x``."""
    alpha = Fraction(alpha)
    sc = alpha * A.sc + (1 - alpha) * np.transpose(A.sc, (1, 0, 2))
    name = f"{A.name}^({alpha})" if A.name else ""
    return Algebra(fractionize(sc), unit=A.unit, name=name)


def direct_product(A: Algebra, B: Algebra, name: str = "") -> Algebra:
    n, m = A.dim, B.dim
    sc = zeros(n + m, n + m, n + m)
    sc[:n, :n, :n] = A.sc
    sc[n:, n:, n:] = B.sc
    unit = None
    if A.unit is not None and B.unit is not None:
        unit = np.concatenate([A.unit, B.unit])
    return Algebra(sc, unit=unit, name=name)


def field_algebra() -> Algebra:
    """The ground field as a one-dimensional algebra."""
    return Algebra([[[1]]], unit=[1], name="F")


def check_homomorphism(A: Algebra, B: Algebra, phi) -> Check:
    """``phi(x y) = phi(x) phi(y)`` on basis pairs; ``phi`` has the images of A's basis as columns.

    The witness ``(i, j, k)`` names the basis pair and the coordinate of B
    where the two sides differ.
    """
    phi = as_array(phi, ndim=2)
    if phi.shape != (B.dim, A.dim):
        raise StructureError(f"map has shape {phi.shape}, expected {(B.dim, A.dim)}")
    lhs = np.einsum("ka,ija->ijk", phi, A.sc)
    rhs = np.einsum("ai,bj,abk->ijk", phi, phi, B.sc)
    return residual_check("homomorphism", lhs - rhs, "phi(xy) != phi(x)phi(y)")
