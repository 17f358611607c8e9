"""Passing between triple systems and binary algebras.

Two pairs of constructions:

* a GJTS with a base point ``e`` (``eee = e``, ``eex = xee``, ``x -> exe``
  onto) gives the homotope ``x.y = xey`` with involution ``x -> exe``, and a
  unital algebra in the variety V with an involution gives back a GJTS;
* a balanced (-1,-1) Freudenthal-Kantor system with ``<e|e> != 0`` gives a
  quadratic algebra ``x.y = exy / <e|e>``, and a quadratic algebra in V gives
  back a balanced system.

Every construction checks its hypotheses before building and its advertised
conclusions afterwards, raising :class:`PreconditionError` on failure.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import (
    Algebra,
    QuadraticStructure,
    check_involution,
    is_in_variety_V,
    norm_trace_involution,
    quadratic_structure,
)
from .kernel import (
    BilinearForm,
    PreconditionError,
    StructureError,
    as_array,
    fractionize,
    identity,
    integerize,
    first_nonzero,
    rank,
)
from .triple import TripleSystem, check_balanced, check_gjts


@dataclass(eq=False)
class InvolutiveAlgebra:
    algebra: Algebra
    bar: np.ndarray

    def __post_init__(self):
        self.bar = as_array(self.bar, ndim=2)
        if self.algebra.unit is None:
            raise StructureError("involutive algebra must be unital")
        inv = check_involution(self.algebra, self.bar)
        if not inv:
            raise StructureError(f"not an involution: {inv}")


def _tripotent_conditions(T: TripleSystem, e) -> None:
    n = T.dim
    eee = np.einsum("i,j,k,ijkl->l", e, e, e, T.tc)
    if np.any(eee != e):
        raise PreconditionError("condition (i) fails: eee != e", witness=first_nonzero(eee - e))
    eex = np.einsum("i,j,ijkl->lk", e, e, T.tc)
    xee = np.einsum("j,k,ijkl->li", e, e, T.tc)
    w = first_nonzero(eex - xee)
    if w is not None:
        raise PreconditionError(f"condition (ii) fails: eex != xee for x = e_{w[1]}", witness=(w[1],))
    U = np.einsum("i,k,ijkl->lj", e, e, T.tc)
    if rank(U) < n:
        raise PreconditionError(f"condition (iii) fails: U_e has rank {rank(U)} < {n}")


def homotope(T: TripleSystem, e) -> InvolutiveAlgebra:
    """The homotope ``x.y = xey`` of a GJTS at ``e`` with involution ``U_e``."""
    e = as_array(e, ndim=1)
    if len(e) != T.dim:
        raise StructureError("base point has the wrong length")
    _tripotent_conditions(T, e)
    sc = np.einsum("j,ijkl->ikl", e, T.tc)
    try:
        A = Algebra(sc, unit=e, name=f"{T.name}^(e)" if T.name else "")
    except StructureError as exc:
        raise PreconditionError(f"e is not the unit of the homotope: {exc}") from None
    bar = np.einsum("i,k,ijkl->lj", e, e, T.tc)
    inv = check_involution(A, bar)
    if not inv:
        raise PreconditionError(f"U_e is not an involution of the homotope: {inv}", witness=inv.witness)
    v = is_in_variety_V(A)
    if not v:
        raise PreconditionError(f"homotope is not in V: {v}", witness=v.witness)
    return InvolutiveAlgebra(A, bar)


def _bintriple(sc, bar):
    """``xyz = x.(ybar.z) - ybar.(x.z) + (ybar.x).z`` as a rank-4 tensor."""
    # sb[y, z, k] = coefficient of e_k in bar(e_y).e_z, etc.
    sb_l = np.einsum("my,mzk->yzk", bar, sc)  # bar(e_y) . e_z
    t1 = np.einsum("yzm,xml->xyzl", sb_l, sc)  # x.(ybar.z)
    t2 = np.einsum("xzm,yml->xyzl", sc, sb_l)  # ybar.(x.z)
    t3 = np.einsum("yxm,mzl->xyzl", sb_l, sc)  # (ybar.x).z
    return t1 - t2 + t3


def triple_from_involutive(A: InvolutiveAlgebra, name: str = "") -> TripleSystem:
    """GJTS on a unital V-algebra with involution; ``e = 1`` and ``U_e = bar`` afterwards."""
    alg = A.algebra
    v = is_in_variety_V(alg)
    if not v:
        raise PreconditionError(f"algebra is not in V: {v}", witness=v.witness)
    bar_i, db = integerize(A.bar)
    sc_i, ds = integerize(alg.sc)
    tc = fractionize(_bintriple(sc_i, bar_i)) / (db * ds * ds)
    T = TripleSystem(tc, name=name)
    g = check_gjts(T)
    if not g:
        raise PreconditionError(f"resulting triple product is not a GJTS: {g}", witness=g.witness)
    _tripotent_conditions(T, alg.unit)
    U = np.einsum("i,k,ijkl->lj", alg.unit, alg.unit, T.tc)
    if np.any(U != A.bar):
        raise PreconditionError("U_1 differs from the involution")
    return T


def tilde_system(T: TripleSystem, e) -> TripleSystem:
    """The GJTS ``x~y~z = yxz / <e|e>`` attached to a balanced system and base point."""
    e = as_array(e, ndim=1)
    ok, form = check_balanced(T)
    if not ok:
        raise PreconditionError(f"system is not balanced: {ok}", witness=ok.witness)
    ee = form(e, e)
    if ee == 0:
        raise PreconditionError("isotropic base point: <e|e> = 0")
    return TripleSystem(np.transpose(T.tc, (1, 0, 2, 3)) / ee, name=f"{T.name}~" if T.name else "")


def bfkts_to_quadratic(T: TripleSystem, e) -> QuadraticStructure:
    """Quadratic algebra ``x.y = exy / <e|e>`` on a balanced system, unit ``e``."""
    e = as_array(e, ndim=1)
    if len(e) != T.dim:
        raise StructureError("base point has the wrong length")
    ok, form = check_balanced(T)
    if not ok:
        raise PreconditionError(f"system is not a balanced (-1,-1)-FKTS: {ok}", witness=ok.witness)
    ee = form(e, e)
    if ee == 0:
        raise PreconditionError("isotropic base point: <e|e> = 0")
    sc = np.einsum("i,ijkl->jkl", e, T.tc) / ee
    try:
        A = Algebra(sc, unit=e, name=f"({T.name}, .)" if T.name else "")
    except StructureError as exc:
        raise PreconditionError(f"e is not a unit: {exc}") from None
    # x.y + y.x = N(e,x) y + N(e,y) x - N(x,y) e  with N(x,y) = 2<x|y>/<e|e>
    N = 2 * form.gram / ee
    Ne = N.dot(e)
    n = T.dim
    eye = identity(n)
    sym = A.sc + np.transpose(A.sc, (1, 0, 2))
    target = (np.einsum("x,yk->xyk", Ne, eye) + np.einsum("y,xk->xyk", Ne, eye)
              - np.einsum("xy,k->xyk", N, e))
    w = first_nonzero(sym - target)
    if w is not None:
        raise PreconditionError("x.x = N(e,x)x - N(x)e fails", witness=w)
    v = is_in_variety_V(A)
    if not v:
        raise PreconditionError(f"quadratic algebra is not in V: {v}", witness=v.witness)
    Q = quadratic_structure(A)
    if Q is None:
        raise PreconditionError("product is not quadratic")
    return Q


def quadratic_to_bfkts(Q: QuadraticStructure | Algebra, name: str = "") -> TripleSystem:
    """Balanced system ``xyz = (xbar.y).z - xbar.(y.z) + y.(xbar.z)`` with ``<x|x> = N(x)``."""
    if isinstance(Q, Algebra):
        qs = quadratic_structure(Q)
        if qs is None:
            raise PreconditionError("algebra is not quadratic")
        Q = qs
    A = Q.algebra
    v = is_in_variety_V(A)
    if not v:
        raise PreconditionError(f"algebra is not in V: {v}", witness=v.witness)
    if not Q.form.is_symmetric():
        raise PreconditionError("vector form is not symmetric")
    nt = norm_trace_involution(Q)
    bar = nt.bar
    sc = A.sc
    xb_l = np.einsum("mx,myk->xyk", bar, sc)  # xbar . y
    t1 = np.einsum("xym,mzl->xyzl", xb_l, sc)  # (xbar.y).z
    t2 = np.einsum("yzm,xml->xyzl", sc, xb_l)  # xbar.(y.z)
    t3 = np.einsum("xzm,yml->xyzl", xb_l, sc)  # y.(xbar.z)
    form = BilinearForm(nt.norm.gram / 2)
    T = TripleSystem(t1 - t2 + t3, form=form, name=name)
    ok, _ = check_balanced(T)
    if not ok:
        raise PreconditionError(f"constructed system fails the balanced check: {ok}", witness=ok.witness)
    return T


def involutive_from_quadratic(Q: QuadraticStructure) -> InvolutiveAlgebra:
    return InvolutiveAlgebra(Q.algebra, norm_trace_involution(Q).bar)


def jordan_triple(A: Algebra, name: str = "") -> TripleSystem:
    """``xyz = x.(y.z) - y.(x.z) + (y.x).z`` on a unital algebra (identity involution)."""
    return triple_from_involutive(InvolutiveAlgebra(A, identity(A.dim)), name=name)


def homotope_roundtrip(T: TripleSystem, e) -> bool:
    return triple_from_involutive(homotope(T, e)) == T


def quadratic_roundtrip(Q: QuadraticStructure) -> bool:
    T = quadratic_to_bfkts(Q)
    return bfkts_to_quadratic(T, Q.algebra.unit).algebra == Q.algebra


def norm_of_base(T: TripleSystem, e) -> Fraction:
    ok, form = check_balanced(T)
    if not ok:
        raise PreconditionError(f"system is not balanced: {ok}")
    return form(e, e)
