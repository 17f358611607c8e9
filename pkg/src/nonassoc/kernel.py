"""Exact rational scalars and dense linear algebra over them.

Vectors and matrices are numpy arrays of ``dtype=object`` holding
:class:`fractions.Fraction` entries, so all arithmetic is exact.  Identity
checks elsewhere in the package convert to integer arrays with
:func:`integerize` before contracting, which is much faster than Fraction
arithmetic and still exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

Scalar = Fraction


class StructureError(ValueError):
    """Inputs have incompatible shapes or violate a structural invariant."""


class PreconditionError(ValueError):
    """A construction's hypotheses do not hold.

    ``witness`` carries the offending basis tuple (or other data) when known.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Check:
    """Outcome of an identity check; falsy on failure.

    ``witness`` is the first basis-index tuple at which the identity fails.
    """

    name: str
    ok: bool
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return f"{self.name}: pass"
        msg = f"{self.name}: FAIL"
        if self.witness is not None:
            msg += f" at {self.witness}"
        if self.detail:
            msg += f" ({self.detail})"
        return msg


def residual_check(name: str, residual: np.ndarray, detail: str = "") -> Check:
    w = first_nonzero(residual)
    if w is None:
        return Check(name, True)
    return Check(name, False, w, detail)


def scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact scalars; pass a str or Fraction")
    return Fraction(x)


def as_array(data, ndim: int | None = None) -> np.ndarray:
    """Convert nested sequences (or an array) to an object array of Fractions."""
    raw = np.asarray(data, dtype=object)
    out = np.empty(raw.shape, dtype=object)
    for idx, v in np.ndenumerate(raw):
        out[idx] = scalar(v)
    if ndim is not None and out.ndim != ndim:
        raise StructureError(f"expected a rank-{ndim} array, got shape {out.shape}")
    return out


def vector(entries: Iterable) -> np.ndarray:
    return as_array(list(entries), ndim=1)


def matrix(rows) -> np.ndarray:
    return as_array(rows, ndim=2)


def zeros(*shape: int) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def basis_vector(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = Fraction(1)
    return v


def is_zero(a) -> bool:
    return not np.any(np.asarray(a) != 0)


def fractionize(a: np.ndarray) -> np.ndarray:
    """Coerce an object array of ints/Fractions to Fractions (after integer math)."""
    return as_array(a)


def integerize(a: np.ndarray) -> tuple[np.ndarray, int]:
    """Return ``(m, d)`` with ``m`` an integer object array and ``a == m / d``.

    Python ints are kept (object dtype), so no overflow is possible.
    """
    a = np.asarray(a, dtype=object)
    d = 1
    for v in a.flat:
        d = lcm(d, Fraction(v).denominator)
    m = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        v = Fraction(v)
        m[idx] = v.numerator * (d // v.denominator)
    return m, d


def first_nonzero(a: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(np.asarray(a) != 0)
    if len(hits) == 0:
        return None
    return tuple(int(i) for i in hits[0])


def primitive(v: np.ndarray) -> np.ndarray:
    """Scale ``v`` to a primitive integer vector, keeping its direction and sign."""
    d = 1
    for x in v:
        d = lcm(d, Fraction(x).denominator)
    ints = [int(Fraction(x) * d) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return vector(ints)
    return vector([Fraction(x, g) for x in ints])


# -- elimination ---------------------------------------------------------------

def rref(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with deterministic first-nonzero pivoting."""
    m = as_array(a, ndim=2).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[[r, p]] = m[[p, r]]
        m[r] = m[r] / m[r, c]
        for i in range(rows):
            if i != r and m[i, c] != 0:
                m[i] = m[i] - m[i, c] * m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray) -> int:
    a = np.asarray(a, dtype=object)
    if a.size == 0:
        return 0
    return len(rref(a)[1])


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Some ``x`` with ``a @ x == b``, or ``None`` when the system is inconsistent."""
    a = as_array(a, ndim=2)
    b = as_array(b, ndim=1)
    rows, cols = a.shape
    if b.shape[0] != rows:
        raise StructureError(f"matrix has {rows} rows but right-hand side has length {b.shape[0]}")
    aug = np.concatenate([a, b.reshape(rows, 1)], axis=1)
    r, pivots = rref(aug)
    if cols in pivots:
        return None
    x = zeros(cols)
    for i, c in enumerate(pivots):
        x[c] = r[i, cols]
    return x


def kernel_basis(a: np.ndarray) -> list[np.ndarray]:
    """Basis of the null space; one vector per free column, in column order."""
    a = as_array(a, ndim=2)
    rows, cols = a.shape
    if rows == 0:
        return [basis_vector(cols, j) for j in range(cols)]
    r, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(cols)
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -r[i, f]
        basis.append(v)
    return basis


def inverse(a: np.ndarray) -> np.ndarray:
    a = as_array(a, ndim=2)
    n = a.shape[0]
    if a.shape != (n, n):
        raise StructureError("only square matrices have inverses")
    r, pivots = rref(np.concatenate([a, identity(n)], axis=1))
    if pivots[:n] != list(range(n)):
        raise StructureError("matrix is singular")
    return r[:, n:]


def det(a: np.ndarray) -> Fraction:
    m = as_array(a, ndim=2).copy()
    n = m.shape[0]
    if m.shape != (n, n):
        raise StructureError("determinant needs a square matrix")
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i, c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[[c, p]] = m[[p, c]]
            d = -d
        d *= m[c, c]
        for i in range(c + 1, n):
            if m[i, c] != 0:
                m[i] = m[i] - (m[i, c] / m[c, c]) * m[c]
    return d


# -- subspaces -----------------------------------------------------------------

class Echelon:
    """Incrementally maintained subspace basis (semi-echelon form).

    ``basis`` keeps the vectors in the order they were accepted, which makes
    spun bases reproducible.
    """

    def __init__(self, n: int):
        self.n = n
        self.basis: list[np.ndarray] = []
        self._rows: list[tuple[int, np.ndarray]] = []  # (pivot, reduced row with pivot 1)

    def __len__(self):
        return len(self.basis)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = as_array(v, ndim=1).copy()
        for p, row in self._rows:
            if v[p] != 0:
                v = v - v[p] * row
        return v

    def contains(self, v) -> bool:
        return is_zero(self.reduce(v))

    def add(self, v) -> bool:
        w = self.reduce(v)
        p = first_nonzero(w)
        if p is None:
            return False
        p = p[0]
        w = w / w[p]
        self._rows.append((p, w))
        self.basis.append(as_array(v))
        return True


def span_basis(vectors: Sequence[np.ndarray], n: int | None = None) -> list[np.ndarray]:
    if n is None:
        n = len(vectors[0])
    e = Echelon(n)
    for v in vectors:
        e.add(v)
    return e.basis


def span_closure(vectors: Sequence[np.ndarray], operators: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Basis of the smallest operator-stable subspace containing ``vectors`` (spinning)."""
    if not vectors:
        return []
    n = len(vectors[0])
    for op in operators:
        if np.shape(op) != (n, n):
            raise StructureError(f"operator of shape {np.shape(op)} does not act on dimension {n}")
    ops = [integerize(op)[0] for op in operators]
    e = Echelon(n)
    queue = []
    for v in vectors:
        if len(v) != n:
            raise StructureError("vectors of different lengths")
        if e.add(v):
            queue.append(e.basis[-1])
    while queue and len(e) < n:
        v = queue.pop(0)
        vi, _ = integerize(v)
        for op in ops:
            w = fractionize(op.dot(vi))
            if e.add(w):
                queue.append(e.basis[-1])
                if len(e) == n:
                    break
    return e.basis


def basis_matrix(vectors: Sequence[np.ndarray], n: int) -> np.ndarray:
    """Columns are the given vectors."""
    if not vectors:
        return zeros(n, 0)
    return as_array(np.stack(vectors, axis=1))


@dataclass(frozen=True, eq=False)
class BilinearForm:
    gram: np.ndarray

    def __post_init__(self):
        g = as_array(self.gram, ndim=2)
        if g.shape[0] != g.shape[1]:
            raise StructureError("Gram matrix must be square")
        object.__setattr__(self, "gram", g)

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    def __call__(self, x, y) -> Fraction:
        return Fraction(as_array(x).dot(self.gram).dot(as_array(y)))

    def is_symmetric(self) -> bool:
        return not np.any(self.gram != self.gram.T)

    def is_zero(self) -> bool:
        return is_zero(self.gram)

    def __eq__(self, other):
        return isinstance(other, BilinearForm) and np.array_equal(self.gram, other.gram)

    def __repr__(self):
        return f"BilinearForm({format_matrix(self.gram)})"


def format_scalar(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_vector(v) -> str:
    return "(" + ", ".join(format_scalar(x) for x in v) + ")"


def format_matrix(m) -> str:
    return "[" + "; ".join(" ".join(format_scalar(x) for x in row) for row in m) + "]"
