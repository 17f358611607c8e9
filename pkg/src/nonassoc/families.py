"""Composition algebras, hermitian modules and the six families of balanced systems.

Every builder checks what it promises (GJTS identity, balanced form, and
the product law of the attached quadratic algebra) and raises
:class:`PreconditionError` when an input violates a hypothesis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

import numpy as np

from .algebra import (
    Algebra,
    QuadraticStructure,
    check_homomorphism,
    left_mult,
    multiply,
    norm_trace_involution,
    quadratic_algebra,
    quadratic_structure,
    right_mult,
    scalar_mutation,
    scale_form,
)
from .correspondence import bfkts_to_quadratic
from .kernel import (
    BilinearForm,
    Check,
    PreconditionError,
    StructureError,
    as_array,
    basis_vector,
    det,
    identity,
    integerize,
    inverse,
    kernel_basis,
    rank,
    residual_check,
    solve,
    basis_matrix,
    zeros,
)
from .triple import TripleSystem, check_balanced, check_gjts


# -- composition algebras ---------------------------------------------------------

@dataclass(eq=False)
class CompositionAlgebra:
    """Unital algebra with multiplicative norm; ``norm`` is the polar form ``N(x, y)``."""

    algebra: Algebra
    norm: BilinearForm
    doubling_params: tuple
    bar: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def unit(self):
        return self.algebra.unit

    def N(self, x) -> Fraction:
        return self.norm(x, x) / 2

    def trace(self, x) -> Fraction:
        return self.norm(x, self.unit)

    def mul(self, x, y):
        return multiply(self.algebra, x, y)

    def conj(self, x):
        return self.bar.dot(as_array(x))


def _double(sc, bar, gram, gamma):
    d = sc.shape[0]
    n = 2 * d
    new = zeros(n, n, n)
    bar_sc = np.einsum("bj,ibk->ijk", bar, sc)  # e_i bar(e_j)
    sc_bar = np.einsum("aj,aik->jik", bar, sc)  # bar(e_j) e_i
    new[:d, :d, :d] = sc  # (a,0)(c,0) = (ac, 0)
    new[:d, d:, d:] = np.transpose(sc, (1, 0, 2))  # (a,0)(0,d) = (0, da)
    new[d:, :d, d:] = bar_sc  # (0,b)(c,0) = (0, b cbar)
    new[d:, d:, :d] = gamma * np.transpose(sc_bar, (1, 0, 2))  # (0,b)(0,d) = (gamma dbar b, 0)
    nbar = zeros(n, n)
    nbar[:d, :d] = bar
    nbar[d:, d:] = -identity(d)
    ngram = zeros(n, n)
    ngram[:d, :d] = gram
    ngram[d:, d:] = -gamma * gram
    return new, nbar, ngram


def cayley_dickson(params, name: str = "") -> CompositionAlgebra:
    """Iterated doubling ``(a,b)(c,d) = (ac + g dbar b, da + b cbar)`` of the ground field.

    With params ``(-1, -1)`` the basis is ``1, i, j, k`` and ``i j = k``.
    The composition property is verified before returning.
    """
    params = tuple(Fraction(p) for p in params)
    if not 1 <= len(params) <= 3:
        raise StructureError("between one and three doubling parameters are supported")
    if any(p == 0 for p in params):
        raise StructureError("doubling parameters must be nonzero")
    sc = as_array([[[1]]])
    bar = identity(1)
    gram = as_array([[2]])
    for g in params:
        sc, bar, gram = _double(sc, bar, gram, g)
    label = name or "CD(" + ", ".join(str(p) for p in params) + ")"
    A = Algebra(sc, unit=basis_vector(len(sc), 0), name=label)
    C = CompositionAlgebra(A, BilinearForm(gram), params, bar)
    ok = check_composition(A, C.norm)
    if not ok:
        raise StructureError(f"doubling failed to produce a composition algebra: {ok}")
    return C


def check_composition(A: Algebra, norm: BilinearForm) -> Check:
    """``N(xy, zw) + N(xw, zy) = N(x, z) N(y, w)`` on basis 4-tuples (polar ``N``)."""
    sc, d = integerize(A.sc)
    g, dg = integerize(norm.gram)
    # scaling: lhs carries d^2 dg, rhs dg^2
    prod = np.einsum("xya,ab,zwb->xyzw", sc, g, sc)
    lhs = (prod + np.transpose(prod, (0, 3, 2, 1))) * dg
    rhs = np.einsum("xz,yw->xyzw", g, g) * d * d
    return residual_check("composition", lhs - rhs, "N(xy) != N(x)N(y)")


def composition_from_quadratic(Q: QuadraticStructure, name: str = "") -> CompositionAlgebra:
    """Wrap a quadratic algebra with its own norm; fails unless the norm is multiplicative."""
    nt = norm_trace_involution(Q)
    ok = check_composition(Q.algebra, nt.norm)
    if not ok:
        raise PreconditionError(f"norm is not multiplicative: {ok}", witness=ok.witness)
    return CompositionAlgebra(Q.algebra, nt.norm, (), nt.bar)


def split_cayley() -> CompositionAlgebra:
    """Split octonions; basis element 1 (``i``) has trace 0 and norm 1."""
    return cayley_dickson((-1, -1, 1), name="split Cayley")


# -- hermitian modules -----------------------------------------------------------------

@dataclass(eq=False)
class HermitianModule:
    """Left module ``S`` over a coefficient algebra, flattened to an F-space.

    ``action[a]`` is the matrix of left multiplication by the ``a``-th
    coefficient basis element; ``herm[i, j]`` is ``h(b_i, b_j)`` in coefficient
    coordinates, for the F-basis ``b_i`` of ``S``.
    """

    coeff: CompositionAlgebra
    rank: int
    action: np.ndarray
    herm: np.ndarray
    name: str = ""

    @property
    def total_dim(self) -> int:
        return self.rank * self.coeff.dim

    def h(self, x, y):
        return np.einsum("i,j,ijc->c", as_array(x), as_array(y), self.herm)

    def act(self, alpha, x):
        return np.einsum("a,aij,j->i", as_array(alpha), self.action, as_array(x))

    def check(self) -> list[Check]:
        K = self.coeff
        n = self.total_dim
        out = []
        # unital representation: 1 acts trivially, action(ab) = action(a) action(b)
        lhs = np.einsum("abc,cij->abij", K.algebra.sc, self.action)
        rhs = np.einsum("aik,bkj->abij", self.action, self.action)
        unit_ok = not np.any(np.einsum("a,aij->ij", K.unit, self.action) != identity(n))
        r = residual_check("module action", lhs - rhs, "action(ab) != action(a)action(b)")
        out.append(r if unit_ok else Check("module action", False, None, "unit does not act trivially"))
        # h(a x, y) = a h(x, y)
        left = np.einsum("aki,kjc->aijc", self.action, self.herm)
        right = np.einsum("ijb,abc->aijc", self.herm, K.algebra.sc)
        out.append(residual_check("h left-linear", left - right, "h(ax, y) != a h(x, y)"))
        # h(x, y) = bar(h(y, x))
        conj = np.einsum("jic,dc->ijd", self.herm, K.bar)
        out.append(residual_check("h hermitian", self.herm - conj, "h(x, y) != bar h(y, x)"))
        return out


def free_hermitian_module(K: CompositionAlgebra, gram, name: str = "") -> HermitianModule:
    """``K^r`` with ``h(x, y) = sum_pq x_p G_pq bar(y_q)``.

    ``gram`` is an ``r x r`` array of coefficient vectors (shape ``(r, r, dim K)``)
    and must satisfy ``G_pq = bar(G_qp)``.
    """
    G = as_array(gram, ndim=3)
    r = G.shape[0]
    d = K.dim
    if G.shape != (r, r, d):
        raise StructureError(f"hermitian Gram data must have shape (r, r, {d})")
    sc = K.algebra.sc
    n = r * d
    action = zeros(d, n, n)
    for p in range(r):
        blk = slice(p * d, (p + 1) * d)
        action[:, blk, blk] = np.transpose(sc, (0, 2, 1))  # a . x_p
    # h(e_a b_p, e_b b_q) = e_a G_pq bar(e_b)
    herm = zeros(n, n, d)
    bar_basis = K.bar  # column b = bar(e_b)
    for p in range(r):
        for q in range(r):
            aG = np.einsum("a,iak->ik", G[p, q], sc)  # row i: e_i G_pq
            for a in range(d):
                for b in range(d):
                    herm[p * d + a, q * d + b] = np.einsum("i,j,ijk->k", aG[a], bar_basis[:, b], sc)
    M = HermitianModule(K, r, action, herm, name=name)
    bad = [c for c in M.check() if not c]
    if bad:
        raise PreconditionError(f"not a hermitian module: {bad[0]}", witness=bad[0].witness)
    return M


def _diagonal_gram(K: CompositionAlgebra, entries):
    r = len(entries)
    G = zeros(r, r, K.dim)
    for p, a in enumerate(entries):
        G[p, p] = Fraction(a) * K.unit
    return G


def split_unitarian_module(m: int = 3) -> HermitianModule:
    """Rank-``m`` module over ``K = F x F`` with the standard hermitian form.

    In the idempotent basis of ``K`` this is ``W + W*`` with
    ``h((u, f), (v, g)) = (g(u), f(v))``.
    """
    K = cayley_dickson((1,), name="F x F")
    return free_hermitian_module(K, _diagonal_gram(K, [1] * m), name=f"split unitarian rank {m}")


def split_symplectic_module(r: int = 2) -> HermitianModule:
    """Rank-``r`` module over split quaternions with the standard hermitian form."""
    H = cayley_dickson((1, 1), name="split quaternions")
    return free_hermitian_module(H, _diagonal_gram(H, [1] * r), name=f"split symplectic rank {r}")


# -- triple systems of the six families -------------------------------------------------

def _orthogonal_tensor(gram):
    """``xyz = <z|x>y - <z|y>x + <x|y>z``."""
    n = gram.shape[0]
    eye = identity(n)
    return (np.einsum("zx,yl->xyzl", gram, eye)
            - np.einsum("zy,xl->xyzl", gram, eye)
            + np.einsum("xy,zl->xyzl", gram, eye))


def _base_vector(e, n):
    if isinstance(e, (int, np.integer)):
        return basis_vector(n, int(e))
    e = as_array(e, ndim=1)
    if len(e) != n:
        raise StructureError("base point has the wrong length")
    return e


def _finish(T: TripleSystem, e, verify: bool) -> TripleSystem:
    if not verify:
        return T
    g = check_gjts(T)
    if not g:
        raise PreconditionError(f"{T.name}: {g}", witness=g.witness)
    ok, _ = check_balanced(T, require_gjts=False)
    if not ok:
        raise PreconditionError(f"{T.name}: {ok}", witness=ok.witness)
    return T


def build_orthogonal(gram, e=0, name: str = "", verify: bool = True) -> TripleSystem:
    gram = as_array(gram, ndim=2)
    n = gram.shape[0]
    if gram.shape != (n, n) or np.any(gram != gram.T):
        raise PreconditionError("Gram matrix must be square and symmetric")
    e = _base_vector(e, n)
    if e.dot(gram).dot(e) != 1:
        raise PreconditionError(f"base point must have <e|e> = 1, got {e.dot(gram).dot(e)}")
    T = TripleSystem(_orthogonal_tensor(gram), form=BilinearForm(gram), name=name or f"orthogonal({n})",
                     base=e, meta={"family": "orthogonal"})
    return _finish(T, e, verify)


def _hermitian_tensor(M: HermitianModule):
    # xyz = h(z,x)y - h(z,y)x + h(x,y)z
    A, H = M.action, M.herm
    return (np.einsum("zxc,cly->xyzl", H, A)
            - np.einsum("zyc,clx->xyzl", H, A)
            + np.einsum("xyc,clz->xyzl", H, A))


def _build_hermitian(M: HermitianModule, e, family: str, name: str, verify: bool) -> TripleSystem:
    bad = [c for c in M.check() if not c]
    if bad:
        raise PreconditionError(f"not a hermitian module: {bad[0]}", witness=bad[0].witness)
    if rank(M.coeff.norm.gram) < M.coeff.dim:
        raise PreconditionError("coefficient algebra has a degenerate norm")
    n = M.total_dim
    e = _base_vector(e, n)
    hee = M.h(e, e)
    if np.any(hee != M.coeff.unit):
        raise PreconditionError("base point must have h(e, e) = 1")
    # <x|y> = t(h(x, y)) / 2
    trace = M.coeff.norm.gram.dot(M.coeff.unit)
    form = BilinearForm(np.einsum("ijc,c->ij", M.herm, trace) / 2)
    if rank(form.gram) < n:
        raise PreconditionError("hermitian form is degenerate")
    T = TripleSystem(_hermitian_tensor(M), form=form, name=name or f"{family}({n})",
                     base=e, meta={"family": family})
    T = _finish(T, e, verify)
    if verify:
        law = check_hermitian_law(T, M)
        if not law:
            raise PreconditionError(f"{T.name}: {law}", witness=law.witness)
    return T


def build_unitarian(M: HermitianModule, e=0, name: str = "", verify: bool = True) -> TripleSystem:
    """``xyz = h(z,x)y - h(z,y)x + h(x,y)z`` for a hermitian module over a quadratic etale algebra."""
    if M.coeff.dim != 2:
        raise PreconditionError("unitarian type needs a two-dimensional coefficient algebra")
    return _build_hermitian(M, e, "unitarian", name, verify)


def build_symplectic(M: HermitianModule, e=0, name: str = "", verify: bool = True) -> TripleSystem:
    """Same product as the unitarian type, over a quaternion algebra."""
    if M.coeff.dim != 4:
        raise PreconditionError("symplectic type needs a quaternion coefficient algebra")
    return _build_hermitian(M, e, "symplectic", name, verify)


def check_hermitian_law(T: TripleSystem, M: HermitianModule, e=None) -> Check:
    """Compare ``x.y = exy`` with the closed formula on ``Ke + W``.

    ``(a e + u).(b e + v) = (abar b + b(a - abar) - h(v, u)) e + (abar v + b u)``
    with ``a, b`` in the coefficient algebra and ``u, v`` in ``W = {h(e, x) = 0}``.
    Over a commutative ``K`` the scalar part collapses to ``ab``.
    """
    e = T.base if e is None else as_array(e, ndim=1)
    K = M.coeff
    S = bfkts_to_quadratic(T, e).algebra
    d = K.dim
    # W = kernel of x -> h(e, x)
    W = kernel_basis(np.einsum("i,ijc->cj", e, M.herm))
    ae = [M.act(basis_vector(d, a), e) for a in range(d)]
    kb = [basis_vector(d, a) for a in range(d)]

    def kmul(a, b):
        return K.mul(a, b)

    def formula(a, u, b, v):
        # a, b coefficient vectors (or None), u, v module vectors (or None)
        zero_k = zeros(d)
        a_ = zero_k if a is None else a
        b_ = zero_k if b is None else b
        abar = K.conj(a_)
        scal = kmul(abar, b_) + kmul(b_, a_ - abar)
        if u is not None and v is not None:
            scal = scal - M.h(v, u)
        out = M.act(scal, e)
        if v is not None:
            out = out + M.act(abar, v)
        if u is not None:
            out = out + M.act(b_, u)
        return out

    terms = []
    for i, a in enumerate(kb):
        for j, b in enumerate(kb):
            terms.append((("Ke", i, "Ke", j), ae[i], ae[j], formula(a, None, b, None)))
        for j, v in enumerate(W):
            terms.append((("Ke", i, "W", j), ae[i], v, formula(a, None, None, v)))
            terms.append((("W", j, "Ke", i), v, ae[i], formula(None, v, a, None)))
    for i, u in enumerate(W):
        for j, v in enumerate(W):
            terms.append((("W", i, "W", j), u, v, formula(None, u, None, v)))
    for tag, x, y, expected in terms:
        if np.any(multiply(S, x, y) != expected):
            return Check("hermitian product law", False, tag, "homotope product differs from the closed formula")
    return Check("hermitian product law", True)


def _levi_civita(n: int = 4):
    eps = np.zeros((n,) * n, dtype=object)
    eps.fill(Fraction(0))
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        eps[p] = Fraction(-1 if inv % 2 else 1)
    return eps


def _det3_tensor(g):
    """``D[a1,a2,a3,b1,b2,b3] = det(g[a_i, b_j])``."""
    out = None
    for p in permutations(range(3)):
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
        rhs = "".join("xyz"[k] for k in p)
        term = np.einsum(f"a{rhs[0]},b{rhs[1]},c{rhs[2]}->abcxyz", g, g, g)
        term = -term if inv % 2 else term
        out = term if out is None else out + term
    return out


@dataclass(eq=False)
class DMuData:
    bracket: np.ndarray  # bracket[x, y, z, l]: coefficient of e_l in [xyz]
    mu: Fraction
    checks: list


def build_d_mu(gram=None, e=0, phi_scale=1, name: str = "", verify: bool = True):
    """Four-dimensional system ``xyz = [xyz] + <z|x>y - <z|y>x + <x|y>z``.

    ``[xyz]`` is defined by ``<[xyz]|t> = phi_scale * det(x, y, z, t)``.  The
    scalar ``mu`` with ``<[a1a2a3]|[b1b2b3]> = mu det(<a_i|b_j>)`` is read off
    one nondegenerate tuple and then checked on every basis 6-tuple.
    Returns ``(T, mu)``.
    """
    gram = identity(4) if gram is None else as_array(gram, ndim=2)
    if gram.shape != (4, 4):
        raise PreconditionError("D_mu type is four-dimensional")
    if np.any(gram != gram.T) or det(gram) == 0:
        raise PreconditionError("Gram matrix must be symmetric and nondegenerate")
    lam = Fraction(phi_scale)
    if lam == 0:
        raise PreconditionError("phi_scale must be nonzero")
    e = _base_vector(e, 4)
    if e.dot(gram).dot(e) != 1:
        raise PreconditionError("base point must have <e|e> = 1")
    ginv = inverse(gram)
    phi = lam * _levi_civita(4)
    bracket = np.einsum("xyzt,lt->xyzl", phi, ginv)
    mu = _read_mu(bracket, gram)
    T = TripleSystem(bracket + _orthogonal_tensor(gram), form=BilinearForm(gram),
                     name=name or f"D_mu(scale {lam})", base=e,
                     meta={"family": "d_mu", "mu": mu, "phi_scale": lam})
    T = _finish(T, e, verify)
    if verify:
        for c in d_mu_checks(T, bracket, mu):
            if not c:
                raise PreconditionError(f"{T.name}: {c}", witness=c.witness)
    return T, mu


def _read_mu(bracket, gram):
    # try each basis triple against itself until the determinant is nonzero
    n = gram.shape[0]
    for a in permutations(range(n), 3):
        a = sorted(a)
        sub = gram[np.ix_(a, a)]
        dt = det(sub)
        if dt != 0:
            v = bracket[a[0], a[1], a[2]]
            return Fraction(v.dot(gram).dot(v)) / dt
    raise StructureError("no nondegenerate basis triple")


def check_mu(bracket, gram, mu) -> Check:
    """``<[a1a2a3]|[b1b2b3]> = mu det(<a_i|b_j>)`` on every basis 6-tuple."""
    lhs = np.einsum("abcl,lm,xyzm->abcxyz", bracket, gram, bracket)
    return residual_check("mu identity", lhs - mu * _det3_tensor(gram), "inconsistent mu")


def d_mu_checks(T: TripleSystem, bracket=None, mu=None) -> list[Check]:
    """The mu identity, the cross identity on V and the quaternion property after rescaling."""
    gram = T.form.gram
    e = T.base
    if bracket is None:
        bracket = T.tc - _orthogonal_tensor(gram)
    if mu is None:
        mu = T.meta.get("mu") or _read_mu(bracket, gram)
    out = [check_mu(bracket, gram, mu)]
    Q = bfkts_to_quadratic(T, e)
    # (u x v | u x v) = det[(u|u) (u|v); (u|v) (v|v)] polarized, with (.|.) = mu <.|.>
    f = mu * Q.form.gram
    cr = Q.cross
    lhs = np.einsum("uvk,kl,xyl->uvxy", cr, f, cr)
    rhs = np.einsum("ux,vy->uvxy", f, f) - np.einsum("uy,vx->uvxy", f, f)
    out.append(residual_check("cross identity", lhs - rhs, "(u x v|u x v) != det"))
    H = quadratic_structure(scale_form(Q, mu))
    out.append(check_composition(H.algebra, norm_trace_involution(H).norm))
    return out


# -- Cayley-based families ----------------------------------------------------------

def _trace_zero_basis(C: CompositionAlgebra):
    tr = C.norm.gram.dot(C.unit)
    return kernel_basis(as_array([tr]))


def _coords(P, v):
    """Coordinates of ``v`` in the column basis ``P`` (which must contain it)."""
    c = solve(P, v)
    if c is None:
        raise StructureError("vector is outside the subspace")
    return c


def _check_g_point(C: CompositionAlgebra, e):
    if C.dim != 8:
        raise PreconditionError("a Cayley algebra (dimension 8) is required")
    if C.trace(e) != 0:
        raise PreconditionError(f"t(e) must be 0, got {C.trace(e)}")
    if C.N(e) == 0:
        raise PreconditionError("n(e) must be nonzero")


def _d_cayley(C: CompositionAlgebra, x, y):
    """``D_{x,y} = [L_x, L_y] + [L_x, R_y] + [R_x, R_y]``."""
    A = C.algebra
    lx, ly, rx, ry = left_mult(A, x), left_mult(A, y), right_mult(A, x), right_mult(A, y)
    return (lx.dot(ly) - ly.dot(lx)) + (lx.dot(ry) - ry.dot(lx)) + (rx.dot(ry) - ry.dot(rx))


def build_g_type(C: CompositionAlgebra, e, name: str = "", verify: bool = True) -> TripleSystem:
    """Seven-dimensional system on ``C_0``: ``xyz = a(D_{x,y}z - 2t(xy)z)``, ``a = 1/(4n(e))``.

    The form is ``<x|y> = -2a t(xy)``, so ``<e|e> = 1``.  The base point of the
    result is ``e`` in coordinates of ``C_0``; ``T.meta['c0_basis']`` holds the
    ambient vectors of that basis.
    """
    e = as_array(e, ndim=1)
    _check_g_point(C, e)
    alpha = 1 / (4 * C.N(e))
    basis = _trace_zero_basis(C)
    P = basis_matrix(basis, C.dim)
    m = len(basis)
    tc = zeros(m, m, m, m)
    gram = zeros(m, m)
    for a, x in enumerate(basis):
        for b, y in enumerate(basis):
            xy = C.mul(x, y)
            txy = C.trace(xy)
            gram[a, b] = -2 * alpha * txy
            D = _d_cayley(C, x, y)
            for c, z in enumerate(basis):
                val = alpha * (D.dot(z) - 2 * txy * z)
                tc[a, b, c] = _coords(P, val)
    e0 = _coords(P, e)
    T = TripleSystem(tc, form=BilinearForm(gram), name=name or "G-type", base=e0,
                     meta={"family": "g_type", "c0_basis": basis, "cayley": C, "e_ambient": e})
    T = _finish(T, e0, verify)
    if verify:
        for c in g_type_checks(T):
            if not c:
                raise PreconditionError(f"{T.name}: {c}", witness=c.witness)
    return T


def color_v_basis(C: CompositionAlgebra, e):
    """Basis of ``V = {x : t(x) = 0, t(ex) = 0}``."""
    tr = C.norm.gram.dot(C.unit)
    te = np.einsum("i,ijk,k->j", e, C.algebra.sc, tr)  # x -> t(ex)
    return kernel_basis(as_array([tr, te]))


def g_type_checks(T: TripleSystem) -> list[Check]:
    """``D_{e,u}(v) = -2n(u,v)e + [e,uv]`` and the closed product formula on ``V``."""
    C = T.meta["cayley"]
    e = T.meta["e_ambient"]
    basis = T.meta["c0_basis"]
    P = basis_matrix(basis, C.dim)
    V = color_v_basis(C, e)
    ne = C.N(e)
    S = bfkts_to_quadratic(T, T.base).algebra
    d_ok = Check("D_{e,u}(v) formula", True)
    law_ok = Check("G-type product law", True)
    for i, u in enumerate(V):
        D = _d_cayley(C, e, u)
        for j, v in enumerate(V):
            uv = C.mul(u, v)
            comm = C.mul(e, uv) - C.mul(uv, e)
            nuv = C.norm(u, v)
            if d_ok and np.any(D.dot(v) != -2 * nuv * e + comm):
                d_ok = Check("D_{e,u}(v) formula", False, (i, j), "D_{e,u}(v) != -2n(u,v)e + [e,uv]")
            expected = -nuv / (2 * ne) * e + comm / (4 * ne)
            got = P.dot(multiply(S, _coords(P, u), _coords(P, v)))
            if law_ok and np.any(got != expected):
                law_ok = Check("G-type product law", False, (i, j), "u.v differs from the closed formula")
    return [d_ok, law_ok]


@dataclass(eq=False)
class ColorAlgebra(QuadraticStructure):
    """``B = Q(V, -n, *)`` with the ambient Cayley data kept alongside.

    ``v_ambient[k]`` is the Cayley vector of the ``k``-th basis vector of ``V``.
    """

    cayley: CompositionAlgebra = None
    e: np.ndarray = None
    v_ambient: list = None

    def sigma(self, x, y):
        """``sigma(x,y) = (n(x,y) 1 - n(ex,y) e / n(e)) / 2`` as a Cayley vector."""
        C = self.cayley
        return (C.norm(x, y) * C.unit - C.norm(C.mul(self.e, x), y) / C.N(self.e) * self.e) / 2

    def star(self, x, y):
        C = self.cayley
        return C.mul(x, y) + self.sigma(x, y)


def build_color(C: CompositionAlgebra, e, verify: bool = True) -> ColorAlgebra:
    """Color algebra from a Cayley algebra and a trace-zero ``e`` with ``n(e) != 0``.

    ``uv = -sigma(u,v) + u*v`` on ``V``; the result is ``Q(V, -n(.,.), *)``
    with ``n(.,.)`` the polar norm.
    """
    e = as_array(e, ndim=1)
    _check_g_point(C, e)
    V = color_v_basis(C, e)
    P = basis_matrix(V, C.dim)
    m = len(V)
    form = zeros(m, m)
    cross = zeros(m, m, m)
    proto = ColorAlgebra(None, [], None, None, None, cayley=C, e=e, v_ambient=V)
    for i, u in enumerate(V):
        for j, v in enumerate(V):
            form[i, j] = -C.norm(u, v)
            cross[i, j] = _coords(P, proto.star(u, v))
    A = quadratic_algebra(form, cross, name="color")
    Q = quadratic_structure(A)
    B = ColorAlgebra(Q.algebra, Q.vbasis, Q.form, Q.cross, Q.change, cayley=C, e=e, v_ambient=V)
    if verify:
        for c in color_checks(B):
            if not c:
                raise PreconditionError(f"color algebra: {c}", witness=c.witness)
    return B


def color_checks(B: ColorAlgebra) -> list[Check]:
    """Hermitian sigma, anticommutative ``*`` and the three color laws on basis tuples."""
    C, e, V = B.cayley, B.e, B.v_ambient
    K = [C.unit, e]
    m = len(V)
    star = [[B.star(u, v) for v in V] for u in V]
    sig = [[B.sigma(u, v) for v in V] for u in V]
    results = {}

    def fail(name, w, detail):
        results.setdefault(name, Check(name, False, w, detail))

    for i in range(m):
        for j in range(m):
            if np.any(sig[i][j] != C.conj(sig[j][i])):
                fail("sigma hermitian", (i, j), "sigma(x,y) != bar sigma(y,x)")
            if np.any(star[i][j] != -star[j][i]):
                fail("* anticommutative", (i, j), "x*y != -(y*x)")
            for k, mu in enumerate(K):
                lhs = C.mul(mu, star[i][j])
                rhs = B.star(C.mul(C.conj(mu), V[i]), V[j])
                if np.any(lhs != rhs):
                    fail("K-linearity of *", (k, i, j), "mu(x*y) != (bar mu x)*y")
            for k in range(m):
                lhs = B.sigma(V[i], star[j][k])
                rhs = C.conj(B.sigma(star[i][j], V[k]))
                if np.any(lhs != rhs):
                    fail("sigma(x, y*z) = bar sigma(x*y, z)", (i, j, k), "")
                lhs = B.star(star[i][j], V[k])
                rhs = C.mul(sig[i][k], V[j]) - C.mul(sig[j][k], V[i])
                if np.any(lhs != rhs):
                    fail("(x*y)*z = sigma(x,z)y - sigma(y,z)x", (i, j, k), "")
    names = ["sigma hermitian", "* anticommutative", "K-linearity of *",
             "sigma(x, y*z) = bar sigma(x*y, z)", "(x*y)*z = sigma(x,z)y - sigma(y,z)x"]
    return [results.get(n, Check(n, True)) for n in names]


def g_iso_map(B: ColorAlgebra, T: TripleSystem, u_scale=-2):
    """Matrix of ``phi(1) = e``, ``phi(u) = u_scale * e u`` from ``B`` into ``C_0`` coordinates."""
    C = B.cayley
    P = basis_matrix(T.meta["c0_basis"], C.dim)
    cols = [_coords(P, B.e)]
    for k in range(len(B.v_ambient)):
        u = B.v_ambient[k]
        cols.append(_coords(P, Fraction(u_scale) * C.mul(B.e, u)))
    # B's basis is 1, v_1, ..., v_m; translate from B coordinates via the change matrix
    phi = basis_matrix(cols, len(cols[0]))
    return phi.dot(B.change_inv)


def verify_g_iso(B: ColorAlgebra, T: TripleSystem, u_scale=-2) -> Check:
    """``phi: B^[-2] -> (S, .)`` with ``phi(1) = e`` and ``phi(u) = u_scale e u`` is a homomorphism."""
    if T.meta.get("family") != "g_type" or T.meta["cayley"].algebra != B.cayley.algebra:
        raise PreconditionError("color algebra and G-type system come from different Cayley data")
    if np.any(T.meta["e_ambient"] != B.e):
        raise PreconditionError("color algebra and G-type system use different points e")
    S = bfkts_to_quadratic(T, T.base).algebra
    src = scale_form(B, -2)
    phi = g_iso_map(B, T, u_scale)
    if rank(phi) < phi.shape[0]:
        return Check("G-type isomorphism", False, None, "map is singular")
    c = check_homomorphism(src, S, phi)
    return Check("G-type isomorphism", c.ok, c.witness, c.detail)


@dataclass(eq=False)
class CrossProduct3Fold:
    """``X(x,y,z) = (x ybar)z + <x|z>y - <y|z>x - <x|y>z`` on a Cayley algebra."""

    space_dim: int
    form: BilinearForm
    x_tensor: np.ndarray

    def __call__(self, x, y, z):
        return np.einsum("i,j,k,ijkl->l", as_array(x), as_array(y), as_array(z), self.x_tensor)

    def check(self) -> list[Check]:
        X, _ = integerize(self.x_tensor)
        g = self.form.gram
        alt = residual_check("X alternating", np.concatenate([
            (X + np.transpose(X, (1, 0, 2, 3))).ravel(),
            (X + np.transpose(X, (0, 2, 1, 3))).ravel()]), "X(x,y,z) not alternating")
        four = np.einsum("xyzl,lt->xyzt", self.x_tensor, g)
        alt4 = residual_check("<X(x,y,z)|t> alternating", four + np.transpose(four, (0, 1, 3, 2)))
        return [alt, alt4]


def cross3(C: CompositionAlgebra) -> CrossProduct3Fold:
    g = C.norm.gram / 2
    sc = C.algebra.sc
    n = C.dim
    eye = identity(n)
    xbar = np.einsum("by,xbm->xym", C.bar, sc)  # x ybar
    X = (np.einsum("xym,mzl->xyzl", xbar, sc)
         + np.einsum("xz,yl->xyzl", g, eye)
         - np.einsum("yz,xl->xyzl", g, eye)
         - np.einsum("xy,zl->xyzl", g, eye))
    return CrossProduct3Fold(n, BilinearForm(g), X)


def build_f_type(C: CompositionAlgebra, name: str = "", verify: bool = True) -> TripleSystem:
    """``xyz = X(x,y,z)/3 + <z|x>y - <z|y>x + <x|y>z`` with ``<x|x> = n(x)``, base point ``1``."""
    if C.dim != 8:
        raise PreconditionError("F-type needs a Cayley algebra (dimension 8)")
    ok = check_composition(C.algebra, C.norm)
    if not ok:
        raise PreconditionError(f"not a composition algebra: {ok}", witness=ok.witness)
    X = cross3(C)
    if verify:
        for c in X.check():
            if not c:
                raise PreconditionError(f"3-fold cross product: {c}", witness=c.witness)
    g = X.form.gram
    T = TripleSystem(X.x_tensor / 3 + _orthogonal_tensor(g), form=X.form, name=name or "F-type",
                     base=C.unit, meta={"family": "f_type", "cayley": C})
    return _finish(T, C.unit, verify)


def f_type_quadratic(T: TripleSystem) -> Algebra:
    return bfkts_to_quadratic(T, T.base).algebra


def nu_isomorphism(Q: QuadraticStructure, nu):
    """``phi(1) = 1``, ``phi(v) = nu v`` as a matrix in Q's ambient basis."""
    nu = Fraction(nu)
    n = Q.dim
    d = identity(n) * nu
    d[0, 0] = Fraction(1)
    return Q.change.dot(d).dot(Q.change_inv)


def f_type_iso(C: CompositionAlgebra, T: TripleSystem, nus=(-3, 3)):
    """Try ``phi: C^[9] -> (S, .)``, ``phi(v) = nu v`` for each ``nu``; return ``(nu, Check)``.

    ``nu`` is the first value that works, or ``None``.
    """
    S = f_type_quadratic(T)
    Q = quadratic_structure(C.algebra)
    C9 = scale_form(Q, 9)
    last = None
    for nu in nus:
        c = check_homomorphism(C9, S, nu_isomorphism(Q, nu))
        if c:
            return Fraction(nu), Check("F-type isomorphism to C^[9]", True)
        last = c
    return None, Check("F-type isomorphism to C^[9]", False, last.witness, last.detail)


def mutation_isomorphism(Q: QuadraticStructure, alpha):
    """``Q^[1/(2a-1)^2] -> Q^(a)``, ``phi(v) = v/(2a-1)``.  Returns ``(source, target, phi, Check)``."""
    alpha = Fraction(alpha)
    if 2 * alpha == 1:
        raise StructureError("alpha = 1/2 gives a commutative mutation with no such isomorphism")
    nu = 1 / (2 * alpha - 1)
    src = scale_form(Q, nu * nu)
    tgt = scalar_mutation(Q.algebra, alpha)
    phi = nu_isomorphism(Q, nu)
    return src, tgt, phi, check_homomorphism(src, tgt, phi)


# -- identities of cross products -------------------------------------------------------

def check_quaca(Q: QuadraticStructure) -> Check:
    """``(x x y) x y = (x|y)y - (y|y)x``, linearized in ``y``, on basis triples of ``V``."""
    cr, dc = integerize(Q.cross)
    f, df = integerize(Q.form.gram)
    m = cr.shape[0]
    eye = np.eye(m, dtype=object)
    lhs = np.einsum("xym,mwl->xywl", cr, cr)
    lhs = (lhs + np.transpose(lhs, (0, 2, 1, 3))) * df  # (x*y)*w + (x*w)*y, scaled dc^2 df
    rhs = (np.einsum("xy,wl->xywl", f, eye) + np.einsum("xw,yl->xywl", f, eye)
           - 2 * np.einsum("yw,xl->xywl", f, eye)) * dc * dc
    return residual_check("quaca", lhs - rhs, "(x x y) x y != (x|y)y - (y|y)x")


def check_colo(Q: QuadraticStructure) -> Check:
    """``((x x y) x y) x y = (y|y) (x x y) / 2``, fully linearized in ``y``."""
    cr = Q.cross
    f = Q.form.gram
    t = np.einsum("xam,mbn,ncl->xabcl", cr, cr, cr)
    s = np.einsum("bc,xal->xabcl", f, cr) / 2
    res = zeros(*t.shape)
    for p in permutations((1, 2, 3)):
        perm = (0,) + p + (4,)
        res = res + np.transpose(t - s, perm)
    return residual_check("colo", res, "((x x y) x y) x y != (y|y)(x x y)/2")


def vector_algebra(C: CompositionAlgebra) -> QuadraticStructure:
    return quadratic_structure(C.algebra)


# -- the catalog of minimal instances ----------------------------------------------------

def minimal_instances() -> dict:
    """The smallest instance of each family, keyed by a short label."""
    sc = split_cayley()
    g_e = basis_vector(8, 1)
    out = {
        "orthogonal2": build_orthogonal(identity(2), 0, name="orthogonal(2)"),
        "orthogonal4": build_orthogonal(identity(4), 0, name="orthogonal(4)"),
        "unitarian6": build_unitarian(split_unitarian_module(3), 0, name="unitarian(6)"),
        "symplectic8": build_symplectic(split_symplectic_module(2), 0, name="symplectic(8)"),
        "d_mu1": build_d_mu(phi_scale=1, name="D_mu(scale 1)")[0],
        "d_mu2": build_d_mu(phi_scale=2, name="D_mu(scale 2)")[0],
        "g_type7": build_g_type(sc, g_e, name="G-type(7)"),
        "f_type8": build_f_type(sc, name="F-type(8)"),
    }
    return out
