"""Batch command-line front end: file checks, constructions, searches.

Exit codes: 0 all requested checks pass, 2 a check failed or a module error
occurred, 64 usage error, 65 parse error.  Machine reports (--json) follow
the versioned ``report_v1`` schema; the worker count for searches comes from
the NVK_THREADS environment variable.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import __version__
from .affine import (
    affinize_r,
    check_completed_cybe,
    check_completed_lie_bialgebra,
    check_completed_lie_coalgebra,
    check_laurent_jacobi,
    cross_check_coboundary_routes,
    delta_banded,
    graded_quasi_frobenius,
    quasi_frobenius_equivalence,
    LaurentVector,
)
from .algebras import (
    Algebra,
    check_comm_assoc,
    check_l_dendriform,
    check_lie,
    check_novikov,
    check_pre_novikov,
    check_right_novikov,
    check_zinbiel,
)
from .bialgebra import (
    Coalgebra,
    check_cob_conditions,
    check_novikov_bialgebra,
    check_novikov_coalgebra,
    coboundary_coproduct,
)
from .core import Basis, is_zero, zeros
from .doubling import assemble_double, check_manin_triple_novikov, equivalence_suite
from .errors import CapExceeded, NovikovError, ParseError
from .fields import Field, prime_field
from .fileformat import AlgebraFile, parse, parse_tensor_expression, serialize
from .report import Report, ReportBuilder
from .yangbaxter import (
    RTensor,
    check_nybe,
    check_o_operator,
    check_quasi_frobenius,
    nybe_residual,
)

EXIT_OK = 0
EXIT_CHECK = 2
EXIT_USAGE = 64
EXIT_PARSE = 65


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


CLASS_CHECKERS = {
    "novikov": check_novikov,
    "right_novikov": check_right_novikov,
    "lie": check_lie,
    "comm_assoc": check_comm_assoc,
    "zinbiel": check_zinbiel,
    "pre_novikov": check_pre_novikov,
    "l_dendriform": check_l_dendriform,
}


def build_parser() -> _Parser:
    parser = _Parser(prog="nvk", description="exact Novikov algebra/bialgebra verification toolkit")
    parser.add_argument("--version", action="version", version=f"nvk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, needs_file=True):
        p = sub.add_parser(name, help=help_text)
        if needs_file:
            p.add_argument("file", help="input .alg file")
        p.add_argument("--json", metavar="PATH", help="write a machine-readable report_v1 file")
        return p

    p = add("check", "verify class axioms of an algebra or pre-Novikov object")
    p.add_argument("--class", dest="cls", required=True, choices=sorted(CLASS_CHECKERS))
    p.add_argument("--object", help="object name (defaults to the unique candidate)")

    p = add("bialgebra", "verify a (co)algebra pair as a bialgebra")
    p.add_argument("--algebra", help="algebra name")
    p.add_argument("--coalgebra", help="coalgebra name")

    p = add("coboundary", "build the coboundary coproduct of r and verify its conditions")
    p.add_argument("--r", dest="r_expr", help="inline two-tensor, e.g. 'b^c - c^b'")
    p.add_argument("--tensor", help="name of a tensor2 object in the file")

    p = add("nybe", "test r against the Yang-Baxter equation of the Novikov product")
    p.add_argument("--r", dest="r_expr")
    p.add_argument("--tensor")

    p = add("ooperator", "verify the operator identity of a representation's T map")
    p.add_argument("--rep", help="representation name")

    p = add("double", "assemble the double and verify the Manin-triple equivalences")
    p.add_argument("--algebra")
    p.add_argument("--coalgebra")

    p = add("affinize", "verify the completed (co/bi)algebra structure on the Laurent affinization")
    p.add_argument("--algebra")
    p.add_argument("--coalgebra")
    p.add_argument("--probes", default="0,1,2", help="comma-separated probe degrees")

    p = add("cybe", "lift r to the affinization and test the completed Yang-Baxter equation")
    p.add_argument("--r", dest="r_expr")
    p.add_argument("--tensor")

    p = add("quasifrobenius", "verify a quasi-Frobenius form and its graded equivalences")
    p.add_argument("--form", help="bilinear form name")

    p = add("search", "enumerate structure constants over a prime field", needs_file=False)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--field", type=int, required=True, metavar="P")
    p.add_argument("--class", dest="cls", required=True, choices=sorted(set(CLASS_CHECKERS) - {"pre_novikov", "l_dendriform"}))
    p.add_argument("--filter", choices=("quasi-frobenius", "skew-nybe"), help="secondary existence filter")
    p.add_argument("--cap", type=int, default=2, help="maximum dimension for exhaustive enumeration")
    p.add_argument("--sample", type=int, help="sampling mode: number of random candidates")
    p.add_argument("--seed", type=int, default=0, help="seed for sampling mode")
    p.add_argument("--limit", type=int, help="stop printing after this many finds (count still exact)")

    add("selftest", "run the built-in example battery", needs_file=False)
    return parser


# ---------------------------------------------------------------------------
# helpers


def _load(path: str) -> tuple[AlgebraFile, str]:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse(text), hashlib.sha256(text.encode()).hexdigest()


def _pick_algebra(doc: AlgebraFile, name: str | None) -> Algebra:
    obj = doc.get(name) if name else doc.single_of("algebra", "--algebra")
    if obj.kind != "algebra":
        raise NovikovError(f"object {obj.name!r} is a {obj.kind}, not an algebra")
    return obj.payload


def _pick_coalgebra(doc: AlgebraFile, name: str | None) -> Coalgebra:
    obj = doc.get(name) if name else doc.single_of("coalgebra", "--coalgebra")
    if obj.kind != "coalgebra":
        raise NovikovError(f"object {obj.name!r} is a {obj.kind}, not a coalgebra")
    return obj.payload


def _pick_r(doc: AlgebraFile, algebra: Algebra, args) -> RTensor:
    if args.r_expr:
        return parse_tensor_expression(doc.field, algebra.basis, args.r_expr)
    if args.tensor:
        obj = doc.get(args.tensor)
    else:
        obj = doc.single_of("tensor2", "--tensor")
    if obj.kind != "tensor2":
        raise NovikovError(f"object {obj.name!r} is a {obj.kind}, not a tensor2")
    return obj.payload


def _serialize_banded(x) -> list:
    out = []
    for d, poly in sorted(x.bands.items()):
        table = {
            ",".join(map(str, mono)): [[str(v) for v in row] for row in arr.reshape(arr.shape[0], -1)]
            for mono, arr in sorted(poly.coeffs.items())
        }
        out.append([d, table])
    return out


def _emit(args, reports: list[Report], extra: dict, digest: str | None, started: float, command: list[str]) -> int:
    passed = all(r.passed for r in reports)
    for rep in reports:
        print(rep.render())
    payload = {
        "schema": "report_v1",
        "tool": "nvk",
        "version": __version__,
        "command": command,
        "input_digest": digest,
        "passed": passed,
        "reports": [r.to_dict() for r in reports],
        "extra": extra,
        "timing": {"seconds": time.monotonic() - started},
    }
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK if passed else EXIT_CHECK


# ---------------------------------------------------------------------------
# commands


def _cmd_check(args, command):
    started = time.monotonic()
    doc, digest = _load(args.file)
    checker = CLASS_CHECKERS[args.cls]
    want_kind = "pre_novikov" if args.cls in ("pre_novikov", "l_dendriform") else "algebra"
    obj = doc.get(args.object) if args.object else doc.single_of(want_kind, "--object")
    if obj.kind != want_kind:
        raise NovikovError(f"object {obj.name!r} is a {obj.kind}, not a {want_kind}")
    rep = checker(obj.payload)
    return _emit(args, [rep], {"object": obj.name, "class": args.cls}, digest, started, command)


def _cmd_bialgebra(args, command):
    started = time.monotonic()
    doc, digest = _load(args.file)
    a = _pick_algebra(doc, args.algebra)
    c = _pick_coalgebra(doc, args.coalgebra)
    rep = check_novikov_bialgebra(a, c)
    return _emit(args, [rep], {}, digest, started, command)


def _cmd_coboundary(args, command):
    started = time.monotonic()
    doc, digest = _load(args.file)
    a = _pick_algebra(doc, None)
    r = _pick_r(doc, a, args)
    conditions = check_cob_conditions(a, r)
    delta = coboundary_coproduct(a, r)
    bial = check_novikov_bialgebra(a, delta)
    extra = {"skewsymmetric": r.skewsymmetric, "coproduct": _coalgebra_dict(delta)}
    return _emit(args, [conditions, bial], extra, digest, started, command)


def _coalgebra_dict(c: Coalgebra) -> dict:
    out = {}
    for g in range(c.dim):
        if not is_zero(c.d[g]):
            out[c.basis.names[g]] = [[str(v) for v in row] for row in c.d[g]]
    return out


def _cmd_nybe(args, command):
    started = time.monotonic()
    doc, digest = _load(args.file)
    a = _pick_algebra(doc, None)
    r = _pick_r(doc, a, args)
    rep = check_nybe(a, r)
    return _emit(args, [rep], {"skewsymmetric": r.skewsymmetric}, digest, started, command)


def _cmd_ooperator(args, command):
    started = time.monotonic()
    doc, digest = _load(args.file)
    if args.rep:
        obj = doc.get(args.rep + ".T") if args.rep + ".T" in doc.objects else doc.get(args.rep)
    else:
        obj = doc.single_of("o_operator", "--rep")
    if obj.kind != "o_operator":
        raise NovikovError(f"object {obj.name!r} carries no operator lines")
    rep = check_o_operator(obj.payload)
    return _emit(args, [rep], {"object": obj.name}, digest, started, command)


def _cmd_double(args, command):
    started = time.monotonic()
    doc, digest = _load(args.file)
    a = _pick_algebra(doc, args.algebra)
    c = _pick_coalgebra(doc, args.coalgebra)
    triple = assemble_double(a, c)
    rep1 = check_manin_triple_novikov(triple)
    rep2 = equivalence_suite(a, c)
    extra = {"double_dim": triple.double.dim}
    return _emit(args, [rep1, rep2], extra, digest, started, command)


def _cmd_affinize(args, command):
    started = time.monotonic()
    doc, digest = _load(args.file)
    probes = tuple(int(x) for x in args.probes.split(","))
    c = _pick_coalgebra(doc, args.coalgebra)
    reports = []
    extra: dict = {}
    try:
        a = _pick_algebra(doc, args.algebra)
    except KeyError:
        a = None
    if a is None:
        reports.append(check_completed_lie_coalgebra(c, probes))
    else:
        reports.append(check_completed_lie_bialgebra(a, c, probes))
    field = doc.field
    bands = {}
    for g in range(c.dim):
        for k in probes:
            x = LaurentVector.basis_term(field, c.dim, g, k)
            bands[f"{c.basis.names[g]}@t^{k}"] = _serialize_banded(delta_banded(c, x))
    extra["delta_bands"] = bands
    return _emit(args, reports, extra, digest, started, command)


def _cmd_cybe(args, command):
    started = time.monotonic()
    doc, digest = _load(args.file)
    a = _pick_algebra(doc, None)
    r = _pick_r(doc, a, args)
    r_l = affinize_r(a, r)
    rep = check_completed_cybe(a, r_l)
    finite = r.skewsymmetric and is_zero(nybe_residual(a, r, verify=False))
    rb = ReportBuilder(doc.field, "finite/banded agreement")
    rb.flag("matches_finite_equation", rep.passed == finite, (), "banded and finite verdicts differ")
    extra = {"r_l_bands": _serialize_banded(r_l)}
    return _emit(args, [rep, rb.build()], extra, digest, started, command)


def _cmd_quasifrobenius(args, command):
    started = time.monotonic()
    doc, digest = _load(args.file)
    a = _pick_algebra(doc, None)
    obj = doc.get(args.form) if args.form else doc.single_of("bilinear_form", "--form")
    if obj.kind != "bilinear_form":
        raise NovikovError(f"object {obj.name!r} is a {obj.kind}, not a bilinear_form")
    form = obj.payload
    rep1 = check_quasi_frobenius(a, form)
    reports = [rep1]
    if form.nondegenerate:
        reports.append(quasi_frobenius_equivalence(a, form))
        reports.append(graded_quasi_frobenius(a, form))
    return _emit(args, reports, {}, digest, started, command)


# ---------------------------------------------------------------------------
# search


def _candidate_algebra(field: Field, basis: Basis, index: int, p: int, cells: int) -> Algebra:
    n = basis.dim
    c = zeros(field, (n, n, n))
    flat = c.reshape(-1)
    for pos in range(cells):
        index, digit = divmod(index, p)
        flat[pos] = field.from_int(digit)
    return Algebra(field, basis, c)


def _skew_candidates(field: Field, n: int):
    """Nonzero skewsymmetric matrices, projectively normalized (first nonzero
    upper-triangular entry = 1); complete for scale-invariant predicates."""
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    p = field.characteristic
    for index in range(p ** len(slots)):
        digits = []
        rest = index
        for _ in slots:
            rest, d = divmod(rest, p)
            digits.append(d)
        nz = [d for d in digits if d]
        if not nz or nz[0] != 1:
            continue
        m = zeros(field, (n, n))
        for (i, j), d in zip(slots, digits):
            m[i, j] = field.from_int(d)
            m[j, i] = -field.from_int(d)
        yield m


def _passes_filter(a: Algebra, which: str | None) -> bool:
    if which is None:
        return True
    from .core import BilinearForm

    if which == "quasi-frobenius":
        for m in _skew_candidates(a.field, a.dim):
            form = BilinearForm(a.field, m)
            if form.nondegenerate and check_quasi_frobenius(a, form).passed:
                return True
        return False
    if which == "skew-nybe":
        for m in _skew_candidates(a.field, a.dim):
            if is_zero(nybe_residual(a, m, verify=False)):
                return True
        return False
    raise ValueError(which)


def _cmd_search(args, command):
    started = time.monotonic()
    field = prime_field(args.field, allow_small_char=True)
    if args.field in (2, 3):
        print(f"warning: characteristic {args.field} degenerates several identities in this theory", file=sys.stderr)
    n = args.dim
    if n > args.cap and not args.sample:
        raise CapExceeded(f"dim {n} exceeds enumeration cap {args.cap}; use --sample N --seed S")
    basis = Basis.standard(n)
    checker = CLASS_CHECKERS[args.cls]
    cells = n**3
    p = args.field

    def test(index: int) -> bool:
        a = _candidate_algebra(field, basis, index, p, cells)
        return checker(a).passed and _passes_filter(a, args.filter)

    if args.sample:
        import random

        rng = random.Random(args.seed)
        candidates = [rng.randrange(p**cells) for _ in range(args.sample)]
        seen = set()
        ordered = [c for c in candidates if not (c in seen or seen.add(c))]
    else:
        ordered = range(p**cells)

    workers = max(1, int(os.environ.get("NVK_THREADS", "1")))
    found: list[int] = []
    if workers == 1:
        found = [i for i in ordered if test(i)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for idx, ok in zip(ordered, pool.map(test, ordered, chunksize=64)):
                if ok:
                    found.append(idx)

    entries = []
    limit = args.limit if args.limit is not None else len(found)
    for pos, index in enumerate(found):
        a = _candidate_algebra(field, basis, index, p, cells)
        desc = _algebra_lines(a)
        entries.append({"index": index, "constants": desc})
        if pos < limit:
            print(f"# candidate {index}")
            for line in desc:
                print(line)
    mode = f"sample({args.sample}, seed={args.seed})" if args.sample else "exhaustive"
    print(f"search: {len(found)} {args.cls} algebra(s) of dim {n} over F{p} [{mode}]"
          + (f" with filter {args.filter}" if args.filter else ""))
    payload = {
        "schema": "report_v1",
        "tool": "nvk",
        "version": __version__,
        "command": command,
        "input_digest": None,
        "passed": True,
        "reports": [],
        "extra": {
            "count": len(found),
            "matches": entries,
            "mode": mode,
            "class": args.cls,
            "filter": args.filter,
            "dim": n,
            "field": f"F{p}",
        },
        "timing": {"seconds": time.monotonic() - started},
    }
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK


def _algebra_lines(a: Algebra) -> list[str]:
    from .fileformat import _fmt_combo

    lines = []
    for i in range(a.dim):
        for j in range(a.dim):
            if not is_zero(a.c[i, j]):
                lines.append(f"{a.basis.names[i]}*{a.basis.names[j]} = " + _fmt_combo(a.field, a.basis, a.c[i, j]))
    return lines or ["# zero product"]


# ---------------------------------------------------------------------------
# selftest


def _selftest_battery() -> list[tuple[str, bool]]:
    from .data import example_bialgebra_2d, example_final_pipeline, example_quadratic_right, example_sv3

    results = []
    field, a, c = example_bialgebra_2d(Fraction(1))
    results.append(("2-dim bialgebra family (finite checks)", check_novikov_bialgebra(a, c).passed))
    results.append(("2-dim bialgebra family (banded checks)", check_completed_lie_bialgebra(a, c).passed))
    results.append(("2-dim bialgebra family (equivalence suite)", equivalence_suite(a, c).passed))
    b, form = example_quadratic_right()
    from .yangbaxter import check_invariant_form

    results.append(("quadratic right-sided 2-dim pair", check_invariant_form(b, form, "right_novikov").passed))
    sv, r = example_sv3()
    results.append(("3-dim witt-like algebra: finite equation", check_nybe(sv, r).passed))
    results.append(("3-dim witt-like algebra: completed equation", check_completed_cybe(sv, affinize_r(sv, r)).passed))
    results.append(("3-dim witt-like algebra: route comparison", cross_check_coboundary_routes(sv, r).passed))
    amb, r49, omega = example_final_pipeline()
    results.append(("pre-Novikov pipeline: finite equation", check_nybe(amb, r49).passed))
    results.append(("pre-Novikov pipeline: quasi-frobenius", check_quasi_frobenius(amb, omega).passed))
    results.append(("pre-Novikov pipeline: four-way equivalence", quasi_frobenius_equivalence(amb, omega).passed))
    return results


def _cmd_selftest(args, command):
    started = time.monotonic()
    results = _selftest_battery()
    ok = True
    for name, passed in results:
        print(f"[{'ok  ' if passed else 'FAIL'}] {name}")
        ok &= passed
    payload = {
        "schema": "report_v1",
        "tool": "nvk",
        "version": __version__,
        "command": command,
        "input_digest": None,
        "passed": ok,
        "reports": [],
        "extra": {"results": [{"name": n, "passed": p} for n, p in results]},
        "timing": {"seconds": time.monotonic() - started},
    }
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK if ok else EXIT_CHECK


COMMANDS = {
    "check": _cmd_check,
    "bialgebra": _cmd_bialgebra,
    "coboundary": _cmd_coboundary,
    "nybe": _cmd_nybe,
    "ooperator": _cmd_ooperator,
    "double": _cmd_double,
    "affinize": _cmd_affinize,
    "cybe": _cmd_cybe,
    "quasifrobenius": _cmd_quasifrobenius,
    "search": _cmd_search,
    "selftest": _cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, ["nvk"] + argv)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NovikovError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
