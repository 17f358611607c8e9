"""Plain-text structure files and instance spec files.

Structure files are line oriented::

    kind triple
    dim 4
    name orthogonal(4)
    meta family orthogonal
    base 1 0 0 0
    form 0 0 1
    0 1 0 1 1

Header lines start with a keyword (``kind``, ``dim``, ``name``, ``meta``,
``unit``, ``base``, ``form``, ``bar``); every other line is a nonzero tensor
entry ``i j k [l] p/q`` with 0-based indices.  Rationals are written in
lowest terms, with the denominator omitted when it is 1.  ``#`` starts a
comment.  Matrix files (``kind matrix``) carry ``rows``/``cols`` and entries
``i j p/q``.
"""
from __future__ import annotations

import configparser
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .algebra import Algebra
from .correspondence import InvolutiveAlgebra
from .kernel import BilinearForm, as_array, format_scalar, identity, zeros
from .triple import TripleSystem

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


class FormatError(ValueError):
    """Malformed structure or spec file; carries the line number when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _entries(tensor):
    for idx in zip(*np.nonzero(tensor != 0)):
        yield " ".join(str(int(i)) for i in idx) + " " + format_scalar(tensor[idx])


def _meta_lines(meta):
    out = []
    for k in sorted(meta):
        v = meta[k]
        if isinstance(v, (Fraction, int)) and not isinstance(v, bool):
            out.append(f"meta {k} {format_scalar(v)}")
        elif isinstance(v, str) and "\n" not in v:
            out.append(f"meta {k} {v}")
    return out


def dumps(obj) -> str:
    """Serialize an Algebra, InvolutiveAlgebra, TripleSystem or matrix (2-d array)."""
    lines = []
    if isinstance(obj, InvolutiveAlgebra):
        A, bar = obj.algebra, obj.bar
    elif isinstance(obj, Algebra):
        A, bar = obj, None
    else:
        A = bar = None
    if A is not None:
        lines += ["kind algebra", f"dim {A.dim}"]
        if A.name:
            lines.append(f"name {A.name}")
        lines += _meta_lines(A.meta)
        if A.unit is not None:
            lines.append("unit " + " ".join(format_scalar(x) for x in A.unit))
        if bar is not None:
            lines += ["bar " + e for e in _entries(bar)]
        lines += list(_entries(A.sc))
    elif isinstance(obj, TripleSystem):
        lines += ["kind triple", f"dim {obj.dim}"]
        if obj.name:
            lines.append(f"name {obj.name}")
        lines += _meta_lines(obj.meta)
        if obj.base is not None:
            lines.append("base " + " ".join(format_scalar(x) for x in obj.base))
        if obj.form is not None:
            lines += ["form " + e for e in _entries(obj.form.gram)]
        lines += list(_entries(obj.tc))
    else:
        m = as_array(obj, ndim=2)
        lines += ["kind matrix", f"rows {m.shape[0]}", f"cols {m.shape[1]}"]
        lines += list(_entries(m))
    return "\n".join(lines) + "\n"


def _scalar(tok, lineno):
    if not _RATIONAL.match(tok):
        raise FormatError(f"not a rational number: {tok!r}", lineno)
    return Fraction(tok)


def _index(tok, bound, lineno):
    if not tok.isdigit():
        raise FormatError(f"not an index: {tok!r}", lineno)
    i = int(tok)
    if i >= bound:
        raise FormatError(f"index {i} out of range for dimension {bound}", lineno)
    return i


def loads(text: str):
    """Parse the output of :func:`dumps`."""
    header = {}
    meta = {}
    forms, bars, entries = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        key = toks[0]
        if key[0].isdigit():
            entries.append((lineno, toks))
        elif key in ("kind", "name"):
            if len(toks) < 2:
                raise FormatError(f"{key} needs a value", lineno)
            header[key] = line.split(None, 1)[1]
        elif key in ("dim", "rows", "cols"):
            if len(toks) != 2 or not toks[1].isdigit() or int(toks[1]) == 0:
                raise FormatError(f"{key} must be a positive integer", lineno)
            header[key] = int(toks[1])
        elif key == "meta":
            if len(toks) < 3:
                raise FormatError("meta needs a key and a value", lineno)
            val = line.split(None, 2)[2]
            meta[toks[1]] = Fraction(val) if _RATIONAL.match(val) else val
        elif key in ("unit", "base"):
            header[key] = (lineno, toks[1:])
        elif key == "form":
            forms.append((lineno, toks[1:]))
        elif key == "bar":
            bars.append((lineno, toks[1:]))
        else:
            raise FormatError(f"unknown keyword {key!r}", lineno)
    kind = header.get("kind")
    if kind not in ("algebra", "triple", "matrix"):
        raise FormatError(f"missing or unknown kind: {kind!r}")

    def fill(shape, items, arity):
        t = zeros(*shape)
        for lineno, toks in items:
            if len(toks) != arity + 1:
                raise FormatError(f"expected {arity} indices and a value", lineno)
            idx = tuple(_index(tok, shape[k], lineno) for k, tok in enumerate(toks[:arity]))
            t[idx] = _scalar(toks[arity], lineno)
        return t

    def vec(key, n):
        lineno, toks = header[key]
        if len(toks) != n:
            raise FormatError(f"{key} must have {n} entries", lineno)
        return as_array([_scalar(t, lineno) for t in toks])

    if kind == "matrix":
        if "rows" not in header or "cols" not in header:
            raise FormatError("matrix files need rows and cols")
        return fill((header["rows"], header["cols"]), entries, 2)
    if "dim" not in header:
        raise FormatError("missing dim")
    n = header["dim"]
    name = header.get("name", "")
    if kind == "algebra":
        sc = fill((n, n, n), entries, 3)
        unit = vec("unit", n) if "unit" in header else None
        A = Algebra(sc, unit=unit, name=name, meta=meta)
        if bars:
            return InvolutiveAlgebra(A, fill((n, n), bars, 2))
        return A
    tc = fill((n, n, n, n), entries, 4)
    form = BilinearForm(fill((n, n), forms, 2)) if forms else None
    base = vec("base", n) if "base" in header else None
    return TripleSystem(tc, form=form, name=name, base=base, meta=meta)


def save(obj, path) -> None:
    Path(path).write_text(dumps(obj))


def load(path):
    return loads(Path(path).read_text())


def same_structure(a, b) -> bool:
    """Exact equality of everything the file format records."""
    return dumps(a) == dumps(b)


# -- instance spec files -----------------------------------------------------------------

FAMILY_KEYS = {
    "orthogonal": "gram (rows separated by ';') or n for an orthonormal basis; base",
    "unitarian": "rank; params (doubling parameter, default 1); hermitian (diagonal, default all 1); base",
    "symplectic": "rank; params (two doubling parameters, default 1 1); hermitian; base",
    "d_mu": "gram (4x4, default identity); phi_scale (default 1); base",
    "g_type": "params (three doubling parameters, default -1 -1 1); e (Cayley vector, default basis vector 1)",
    "f_type": "params (three doubling parameters, default -1 -1 1)",
    "custom": "structure (path to a structure file, relative to the spec file)",
}


@dataclass
class InstanceSpec:
    family: str
    parameters: dict
    base_point: object = None
    source: Path | None = None


def _parse_vector(text, what):
    toks = text.replace(",", " ").split()
    try:
        return [Fraction(t) for t in toks]
    except ValueError:
        raise FormatError(f"{what}: not a list of rationals: {text!r}") from None


def _parse_matrix(text, what):
    rows = [r for r in text.split(";") if r.strip()]
    m = [_parse_vector(r, what) for r in rows]
    if not m or any(len(r) != len(m[0]) for r in m):
        raise FormatError(f"{what}: rows have different lengths")
    return m


def parse_base(text):
    """A base point is either a basis index or a list of rationals."""
    text = text.strip()
    if text.isdigit():
        return int(text)
    return as_array(_parse_vector(text, "base"))


def read_spec(path) -> InstanceSpec:
    cp = configparser.ConfigParser()
    path = Path(path)
    try:
        with open(path) as fh:
            cp.read_file(fh)
    except configparser.Error as exc:
        raise FormatError(str(exc)) from None
    if "instance" not in cp:
        raise FormatError("spec file needs an [instance] section")
    sec = dict(cp["instance"])
    family = sec.pop("family", None)
    if family not in FAMILY_KEYS:
        raise FormatError(f"family must be one of {', '.join(FAMILY_KEYS)}; got {family!r}")
    base = sec.pop("base", None)
    return InstanceSpec(family, sec, parse_base(base) if base is not None else None, path)


def build_from_spec(spec: InstanceSpec):
    """Construct the object described by a spec; returns a TripleSystem or Algebra."""
    from . import families as fam

    p = dict(spec.parameters)
    base = 0 if spec.base_point is None else spec.base_point

    def take(key, default=None):
        return p.pop(key, default)

    def done(obj):
        if p:
            raise FormatError(f"unknown keys for family {spec.family}: {', '.join(sorted(p))}")
        return obj

    f = spec.family
    if f == "orthogonal":
        gram, n = take("gram"), take("n")
        if gram is not None:
            g = as_array(_parse_matrix(gram, "gram"))
        elif n is not None:
            g = identity(int(n))
        else:
            raise FormatError("orthogonal needs gram or n")
        return done(fam.build_orthogonal(g, base))
    if f in ("unitarian", "symplectic"):
        r = int(take("rank", 3 if f == "unitarian" else 2))
        params = _parse_vector(take("params", "1" if f == "unitarian" else "1 1"), "params")
        K = fam.cayley_dickson(params)
        diag = _parse_vector(take("hermitian", " ".join(["1"] * r)), "hermitian")
        if len(diag) != r:
            raise FormatError("hermitian needs one diagonal entry per rank")
        M = fam.free_hermitian_module(K, fam._diagonal_gram(K, diag))
        builder = fam.build_unitarian if f == "unitarian" else fam.build_symplectic
        return done(builder(M, base))
    if f == "d_mu":
        gram = take("gram")
        g = as_array(_parse_matrix(gram, "gram")) if gram is not None else None
        scale = Fraction(take("phi_scale", "1"))
        return done(fam.build_d_mu(g, base, scale)[0])
    if f in ("g_type", "f_type"):
        C = fam.cayley_dickson(_parse_vector(take("params", "-1 -1 1"), "params"))
        if f == "f_type":
            return done(fam.build_f_type(C))
        e = take("e")
        e = fam.basis_vector(8, 1) if e is None else as_array(_parse_vector(e, "e"))
        return done(fam.build_g_type(C, e))
    struct = take("structure")
    if struct is None:
        raise FormatError("custom needs structure = <path>")
    sp = Path(struct)
    if not sp.is_absolute() and spec.source is not None:
        sp = spec.source.parent / sp
    return done(load(sp))
