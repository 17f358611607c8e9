"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage,
parse or precondition errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import serialize
from .algebra import (
    Algebra,
    check_cyclic_identity,
    is_flexible,
    is_in_variety_V,
    is_noncommutative_jordan,
)
from .analysis import (
    certify_simplicity,
    invariant_differences,
    invariant_report,
    square_class,
    verify_isomorphism,
)
from .correspondence import (
    InvolutiveAlgebra,
    bfkts_to_quadratic,
    homotope,
    quadratic_to_bfkts,
    tilde_system,
    triple_from_involutive,
)
from .kernel import Check, PreconditionError, StructureError, basis_vector, det, format_vector, identity
from .triple import TripleSystem, check_balanced, check_fkts, check_gjts, check_jts

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def _emit(args, text: str, data: dict):
    out = json.dumps(_jsonable(data), indent=2, sort_keys=True) + "\n" if args.format == "structured" else text
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _load(path):
    try:
        return serialize.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _base_point(arg, obj, n):
    if arg is not None:
        b = serialize.parse_base(arg)
        return basis_vector(n, b) if isinstance(b, int) else b
    if isinstance(obj, TripleSystem) and obj.base is not None:
        return obj.base
    return None


# -- build ----------------------------------------------------------------------------

def cmd_build(args) -> int:
    spec = serialize.read_spec(args.spec)
    obj = serialize.build_from_spec(spec)
    text = serialize.dumps(obj)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.verbose:
        print(f"built {spec.family} instance of dimension {obj.dim}", file=sys.stderr)
    return OK


# -- verify ---------------------------------------------------------------------------

def _timed(fn, *a):
    t = time.perf_counter()
    c = fn(*a)
    return c, time.perf_counter() - t


VARIETY_CHECKS = (is_flexible, is_noncommutative_jordan, is_in_variety_V, check_cyclic_identity)


def cmd_verify(args) -> int:
    obj = _load(args.structure)
    if isinstance(obj, InvolutiveAlgebra):
        obj = obj.algebra
    rows: list[tuple[Check, float]] = []
    suite = args.suite
    if isinstance(obj, TripleSystem):
        if suite in ("gjts", "bfkts", "all"):
            rows.append(_timed(check_gjts, obj))
        if suite in ("bfkts", "all"):
            rows.append(_timed(check_fkts, obj))
            rows.append(_timed(lambda T: check_balanced(T, require_gjts=False)[0], obj))
        if suite in ("varietyV", "all"):
            e = _base_point(args.base, obj, obj.dim)
            if e is None:
                raise UsageError("the varietyV suite on a triple system needs a base point (--base)")
            A = bfkts_to_quadratic(obj, e).algebra
            rows += [_timed(f, A) for f in VARIETY_CHECKS]
    elif isinstance(obj, Algebra):
        if suite in ("gjts", "bfkts"):
            raise UsageError(f"suite {suite} applies to triple systems")
        rows += [_timed(f, obj) for f in VARIETY_CHECKS]
    else:
        raise UsageError("verify needs an algebra or triple system file")
    ok = all(c.ok for c, _ in rows)
    lines = []
    for c, dt in rows:
        w = ""
        if not c.ok and c.witness is not None and args.verbose:
            w = " as vectors: " + ", ".join(format_vector(basis_vector(obj.dim, i)) for i in c.witness)
        lines.append(f"{c}{w}  [{dt:.3f}s]")
    lines.append(f"overall: {'pass' if ok else 'FAIL'}")
    data = {"structure": str(args.structure), "suite": suite, "overall": "pass" if ok else "fail",
            "checks": [{"name": c.name, "pass": c.ok, "witness": c.witness, "detail": c.detail,
                        "seconds": round(dt, 4)} for c, dt in rows]}
    _emit(args, "\n".join(lines) + "\n", data)
    return OK if ok else FAILED


# -- convert ---------------------------------------------------------------------------

def cmd_convert(args) -> int:
    obj = _load(args.structure)
    d = args.direction
    roundtrip_ok = None
    if d in ("homotope", "bfkts_to_quadratic"):
        if not isinstance(obj, TripleSystem):
            raise UsageError(f"{d} needs a triple system")
        e = _base_point(args.base, obj, obj.dim)
        if e is None:
            raise UsageError("a base point is required (--base)")
        if d == "homotope":
            if args.tilde:
                obj = tilde_system(obj, e)
            out = homotope(obj, e)
            if args.roundtrip:
                roundtrip_ok = serialize.same_structure(_strip(triple_from_involutive(out)), _strip(obj))
        else:
            out = bfkts_to_quadratic(obj, e).algebra
            if args.roundtrip:
                back = quadratic_to_bfkts(out)
                roundtrip_ok = serialize.same_structure(_strip(back, form=False), _strip(obj, form=False))
    else:
        if isinstance(obj, InvolutiveAlgebra):
            inv = obj
        elif isinstance(obj, Algebra):
            if obj.unit is None:
                raise UsageError(f"{d} needs a unital algebra")
            inv = InvolutiveAlgebra(obj, identity(obj.dim)) if d == "triple_from_algebra" else None
        else:
            raise UsageError(f"{d} needs an algebra")
        alg = inv.algebra if inv is not None else obj
        if d == "triple_from_algebra":
            out = triple_from_involutive(inv, name=alg.name)
            out.base = alg.unit
            if args.roundtrip:
                h = homotope(out, alg.unit)
                roundtrip_ok = (serialize.same_structure(_strip(h.algebra), _strip(alg))
                                and not np.any(h.bar != inv.bar))
        else:
            out = quadratic_to_bfkts(alg, name=alg.name)
            out.base = alg.unit
            if args.roundtrip:
                back = bfkts_to_quadratic(out, alg.unit).algebra
                roundtrip_ok = serialize.same_structure(_strip(back), _strip(alg))
    text = serialize.dumps(out)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if roundtrip_ok is not None:
        print(f"roundtrip: {'pass' if roundtrip_ok else 'FAIL'}", file=sys.stderr)
        return OK if roundtrip_ok else FAILED
    return OK


def _strip(obj, form=True):
    """Copy with only the tensor data (and form), for exact comparisons."""
    if isinstance(obj, InvolutiveAlgebra):
        obj = obj.algebra
    if isinstance(obj, Algebra):
        return Algebra(obj.sc, unit=obj.unit)
    return TripleSystem(obj.tc, form=obj.form if form else None)


# -- simplicity, iso-check, report -------------------------------------------------------

def cmd_simplicity(args) -> int:
    obj = _load(args.structure)
    if isinstance(obj, InvolutiveAlgebra):
        obj = obj.algebra
    if not isinstance(obj, (Algebra, TripleSystem)):
        raise UsageError("simplicity needs an algebra or triple system")
    v = certify_simplicity(obj, probe_budget=args.budget, seed=args.seed)
    data = {"verdict": v.verdict, "note": v.certificate_note, "seed": args.seed, "budget": args.budget,
            "witness": None if v.witness is None else {
                "generator": v.witness.generator_description, "dim": v.witness.closure_dim,
                "basis": v.witness.basis}}
    _emit(args, str(v) + "\n", data)
    return OK


def cmd_iso_check(args) -> int:
    A, B, phi = _load(args.source), _load(args.target), _load(args.map)
    A = A.algebra if isinstance(A, InvolutiveAlgebra) else A
    B = B.algebra if isinstance(B, InvolutiveAlgebra) else B
    if not (isinstance(A, Algebra) and isinstance(B, Algebra) and isinstance(phi, np.ndarray)):
        raise UsageError("iso-check needs two algebra files and a matrix file")
    c = verify_isomorphism(A, B, phi)
    diffs = [] if c else invariant_differences(A, B)
    text = str(c) + "\n"
    if diffs:
        text += "distinct: invariants differ in " + ", ".join(diffs) + "\n"
    elif not c:
        text += "map is not an isomorphism; no invariant distinguishes the algebras\n"
    _emit(args, text, {"isomorphism": c.ok, "witness": c.witness, "invariant_differences": diffs})
    return OK if c else FAILED


def cmd_report(args) -> int:
    obj = _load(args.structure)
    if isinstance(obj, InvolutiveAlgebra):
        obj = obj.algebra
    if isinstance(obj, Algebra):
        rep = invariant_report(obj)
    elif isinstance(obj, TripleSystem):
        ok, form = check_balanced(obj)
        rep = {"name": obj.name, "dimension": obj.dim, "gjts": check_gjts(obj).ok, "jts": check_jts(obj).ok,
               "balanced": ok.ok}
        if form is not None:
            d = det(form.gram)
            rep.update(form_det=d, form_square_class=square_class(d))
        rep.update({k: v for k, v in obj.meta.items() if isinstance(v, (str, Fraction, int))})
    else:
        raise UsageError("report needs an algebra or triple system")
    text = "".join(f"{k}: {v}\n" for k, v in rep.items())
    _emit(args, text, rep)
    return OK


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    spec_help = "\n".join(f"  {k}: {v}" for k, v in serialize.FAMILY_KEYS.items())
    p = argparse.ArgumentParser(prog="nonassoc", description="Exact checks for triple systems and algebras.")
    p.add_argument("-v", "--verbose", action="store_true", help="print witnesses as vectors")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out=True, fmt=True):
        if out:
            sp.add_argument("--out", help="write the result here instead of stdout")
        if fmt:
            sp.add_argument("--format", choices=["text", "structured"], default="text")

    b = sub.add_parser("build", help="build a family instance from a spec file",
                       formatter_class=argparse.RawDescriptionHelpFormatter,
                       epilog="Spec files have an [instance] section with 'family' and 'base' plus:\n" + spec_help)
    b.add_argument("spec")
    common(b, fmt=False)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="run an identity suite")
    v.add_argument("structure")
    v.add_argument("--suite", choices=["gjts", "bfkts", "varietyV", "all"], default="all")
    v.add_argument("--base", help="base point (index or list of rationals) for the varietyV suite")
    common(v)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("convert", help="pass between triple systems and algebras")
    c.add_argument("structure")
    c.add_argument("--direction", required=True,
                   choices=["homotope", "triple_from_algebra", "bfkts_to_quadratic", "quadratic_to_bfkts"])
    c.add_argument("--base", help="base point (index or list of rationals)")
    c.add_argument("--roundtrip", action="store_true", help="convert back and require exact equality")
    c.add_argument("--tilde", action="store_true",
                   help="for homotope: use the system x~y~z = yxz/<e|e> of a balanced input")
    common(c, fmt=False)
    c.set_defaults(func=cmd_convert)

    s = sub.add_parser("simplicity", help="certify simplicity")
    s.add_argument("structure")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int, default=8, help="random probes and Norton attempts")
    common(s)
    s.set_defaults(func=cmd_simplicity)

    i = sub.add_parser("iso-check", help="check an explicit map between two algebras")
    i.add_argument("source")
    i.add_argument("target")
    i.add_argument("map", help="matrix file; columns are images of the source basis")
    common(i)
    i.set_defaults(func=cmd_iso_check)

    r = sub.add_parser("report", help="invariants of an algebra or triple system")
    r.add_argument("structure")
    common(r)
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, serialize.FormatError, PreconditionError, StructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
