"""Ideals, simplicity certificates, isomorphism checks and invariants."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy

from .algebra import (
    Algebra,
    associator,
    check_homomorphism,
    d_operator,
    is_associative,
    is_commutative,
    is_flexible,
    quadratic_structure,
)
from .kernel import (
    Check,
    PreconditionError,
    StructureError,
    as_array,
    basis_vector,
    det,
    identity,
    integerize,
    is_zero,
    kernel_basis,
    rank,
    span_closure,
    zeros,
)
from .triple import TripleSystem

# prime for the modular envelope computation; p^2 * 64 stays below 2^63
PRIME = 67108859


@dataclass
class IdealReport:
    generator_description: str
    closure_dim: int
    is_proper: bool
    basis: list = field(repr=False)


@dataclass
class SimplicityVerdict:
    verdict: str  # "simple", "not_simple" or "unknown"
    witness: IdealReport | None
    certificate_note: str

    def __str__(self):
        s = f"{self.verdict}: {self.certificate_note}"
        if self.witness is not None:
            s += f" (ideal of dimension {self.witness.closure_dim} from {self.witness.generator_description})"
        return s


def algebra_operators(A: Algebra) -> list[np.ndarray]:
    """``L_{e_i}`` and ``R_{e_i}`` for every basis element."""
    L = np.transpose(A.sc, (0, 2, 1))
    R = np.transpose(A.sc, (1, 2, 0))
    return [L[i] for i in range(A.dim)] + [R[i] for i in range(A.dim)]


def triple_operators(T: TripleSystem) -> list[np.ndarray]:
    """``z -> e_i e_j z``, ``z -> e_i z e_j`` and ``z -> z e_i e_j`` for all ``i, j``."""
    tc = T.tc
    n = T.dim
    first = np.transpose(tc, (0, 1, 3, 2))  # [i,j][l,z] = tc[i,j,z,l]
    middle = np.transpose(tc, (0, 2, 3, 1))  # [i,j][l,y] = tc[i,y,j,l]
    last = np.transpose(tc, (1, 2, 3, 0))  # [i,j][l,x] = tc[x,i,j,l]
    return [op[i, j] for op in (first, middle, last) for i in range(n) for j in range(n)]


def _operators(obj):
    if isinstance(obj, Algebra):
        return algebra_operators(obj)
    if isinstance(obj, TripleSystem):
        return triple_operators(obj)
    raise TypeError(f"expected an Algebra or TripleSystem, got {type(obj).__name__}")


def _report(basis, n, description) -> IdealReport:
    k = len(basis)
    return IdealReport(description, k, 0 < k < n, basis)


def _closure(obj, seed, description, ops=None) -> IdealReport:
    seed = as_array(seed, ndim=1)
    if len(seed) != obj.dim:
        raise StructureError("seed has the wrong length")
    if is_zero(seed):
        raise StructureError("seed must be nonzero")
    ops = _operators(obj) if ops is None else ops
    return _report(span_closure([seed], ops), obj.dim, description)


def ideal_closure_algebra(A: Algebra, seed) -> IdealReport:
    """Two-sided ideal generated by ``seed``."""
    return _closure(A, seed, "seed")


def ideal_closure_triple(T: TripleSystem, seed) -> IdealReport:
    """Smallest subspace containing ``seed`` and stable under the product in every slot."""
    return _closure(T, seed, "seed")


# -- simplicity ---------------------------------------------------------------------

def _modp_envelope_dim(ops, n: int, p: int = PRIME) -> int:
    """Dimension mod ``p`` of the unital associative algebra generated by ``ops``.

    Each operator is scaled to an integer matrix first.  The envelope over the
    rationals is at least as large as the one computed here, so reaching ``n^2``
    proves that the rational envelope is all of ``End(F^n)``.
    """
    dtype = np.int64 if n <= 64 else object
    gens = [np.asarray(integerize(op)[0], dtype=object) % p for op in ops]
    gens = [g.astype(dtype) for g in gens if np.any(g)]
    rows: list[tuple[int, np.ndarray]] = []
    mats: list[np.ndarray] = []
    target = n * n

    def add(m):
        v = m.reshape(-1).copy()
        for piv, r in rows:
            if v[piv]:
                v = (v - v[piv] * r) % p
        nz = np.nonzero(v)[0]
        if len(nz) == 0:
            return False
        piv = int(nz[0])
        inv = pow(int(v[piv]), -1, p)
        rows.append((piv, (v * inv) % p))
        mats.append(m)
        return True

    add(np.eye(n, dtype=dtype))
    for g in gens:
        add(g)
        if len(rows) == target:
            return target
    i = 0
    while i < len(mats) and len(rows) < target:
        m = mats[i]
        for g in gens:
            add((m.dot(g)) % p)
            if len(rows) == target:
                break
        i += 1
    return len(rows)


def _charpoly_factors(a):
    x = sympy.Symbol("x")
    M = sympy.Matrix(a.shape[0], a.shape[1], [sympy.Rational(v.numerator, v.denominator) for v in a.flat])
    poly = M.charpoly(x)
    _, factors = sympy.factor_list(poly.as_expr(), x)
    out = []
    for f, _mult in factors:
        coeffs = sympy.Poly(f, x).all_coeffs()
        out.append([Fraction(int(c.p), int(c.q)) for c in coeffs])
    return sorted(out, key=len)


def _poly_at(coeffs, a):
    n = a.shape[0]
    acc = zeros(n, n)
    for c in coeffs:  # Horner, leading coefficient first
        acc = acc.dot(a) + c * identity(n)
    return acc


def _random_element(ops, rng):
    n = ops[0].shape[0]
    a = zeros(n, n)
    for op in ops:
        a = a + Fraction(rng.randint(-2, 2)) * op
    i, j = rng.randrange(len(ops)), rng.randrange(len(ops))
    return a + ops[i].dot(ops[j])


def certify_simplicity(obj, probe_budget: int = 8, seed: int = 0) -> SimplicityVerdict:
    """Three-valued simplicity test for an algebra or triple system.

    1. Spin every basis vector and ``probe_budget`` random vectors; a proper
       closure is an ideal.
    2. If the operators generate all ``n x n`` matrices (checked modulo a
       prime, which can only undercount) the module is irreducible.
    3. Otherwise up to ``probe_budget`` Norton tests: take a random element
       ``a`` of the envelope, an irreducible factor ``f`` of its characteristic
       polynomial with ``dim ker f(a) = deg f``, and spin a kernel vector of
       ``f(a)`` and one of ``f(a)^T`` in the dual module.  If both spin to
       everything the module is irreducible; otherwise an ideal is found.

    The random generator is seeded with ``seed`` so verdicts are reproducible.
    """
    n = obj.dim
    ops = _operators(obj)
    ops = [op for op in ops if not is_zero(op)]
    if not ops:
        if n == 1:
            return SimplicityVerdict("unknown", None, "product is zero and there is no proper subspace")
        return SimplicityVerdict("not_simple", _closure(obj, basis_vector(n, 0), "basis vector 0", ops),
                                 "product is zero, every subspace is an ideal")
    rng = random.Random(seed)
    for i in range(n):
        rep = _closure(obj, basis_vector(n, i), f"basis vector {i}", ops)
        if rep.is_proper:
            return SimplicityVerdict("not_simple", rep, "proper closure of a basis vector")
    for k in range(probe_budget):
        v = as_array([rng.randint(-3, 3) for _ in range(n)])
        if is_zero(v):
            continue
        rep = _closure(obj, v, f"random probe {k}", ops)
        if rep.is_proper:
            return SimplicityVerdict("not_simple", rep, "proper closure of a random probe")
    if _modp_envelope_dim(ops, n) == n * n:
        return SimplicityVerdict("simple", None, f"operators generate all {n}x{n} matrices (Burnside)")
    dual_ops = [op.T for op in ops]
    for k in range(probe_budget):
        a = _random_element(ops, rng)
        for coeffs in _charpoly_factors(a):
            theta = _poly_at(coeffs, a)
            ker = kernel_basis(theta)
            if len(ker) != len(coeffs) - 1:
                continue
            sub = span_closure([ker[0]], ops)
            if len(sub) < n:
                return SimplicityVerdict("not_simple", _report(sub, n, f"kernel vector of Norton element {k}"),
                                         "proper closure of a Norton kernel vector")
            dual = span_closure([kernel_basis(theta.T)[0]], dual_ops)
            if len(dual) < n:
                ideal = kernel_basis(as_array(np.stack(dual)))
                return SimplicityVerdict("not_simple", _report(ideal, n, f"annihilator of dual closure {k}"),
                                         "proper closure in the dual module")
            return SimplicityVerdict("simple", None,
                                     f"Norton test with an irreducible factor of degree {len(coeffs) - 1}")
    return SimplicityVerdict("unknown", None, f"no certificate within a probe budget of {probe_budget}")


# -- isomorphisms and invariants ------------------------------------------------------

def verify_isomorphism(A: Algebra, B: Algebra, phi) -> Check:
    """``phi(x y) = phi(x) phi(y)`` on basis pairs for an invertible ``phi`` (columns = images)."""
    phi = as_array(phi, ndim=2)
    if A.dim != B.dim or phi.shape != (B.dim, A.dim):
        raise PreconditionError(f"map of shape {phi.shape} cannot be an isomorphism between dimensions "
                                f"{A.dim} and {B.dim}")
    if rank(phi) < A.dim:
        raise PreconditionError("map is singular")
    c = check_homomorphism(A, B, phi)
    return Check("isomorphism", c.ok, c.witness, c.detail)


def square_class(q) -> int:
    """Squarefree integer representing ``q`` modulo nonzero rational squares."""
    q = Fraction(q)
    if q == 0:
        return 0
    m = q.numerator * q.denominator
    out = -1 if m < 0 else 1
    for p, e in sympy.factorint(abs(m)).items():
        if e % 2:
            out *= p
    return out


def invariant_report(A: Algebra) -> dict:
    n = A.dim
    basis = A.basis()
    comm, assoc, flex = is_commutative(A), is_associative(A), is_flexible(A)
    report = {
        "name": A.name,
        "dimension": n,
        "commutative": comm.ok,
        "associative": assoc.ok,
        "associator_witness": assoc.witness,
        "flexible": flex.ok,
        "quadratic": False,
    }
    if A.unit is not None:
        Q = quadratic_structure(A)
        if Q is not None:
            d = det(Q.form.gram) if Q.form.dim else Fraction(1)
            report.update(quadratic=True, vform_det=d, vform_square_class=square_class(d))
    ds = [d_operator(A, basis[i], basis[j]).reshape(-1) for i in range(n) for j in range(i + 1, n)]
    report["d_span_dim"] = rank(as_array(ds)) if ds else 0
    assoc_vecs = [associator(A, x, y, z) for x in basis for y in basis for z in basis]
    report["associator_span_dim"] = rank(as_array(assoc_vecs))
    return report


def invariant_differences(A: Algebra, B: Algebra) -> list[str]:
    """Invariants that differ; any entry proves A and B are not isomorphic."""
    ra, rb = invariant_report(A), invariant_report(B)
    keys = ["dimension", "commutative", "associative", "flexible", "quadratic",
            "vform_square_class", "d_span_dim", "associator_span_dim"]
    return [k for k in keys if ra.get(k) != rb.get(k)]
