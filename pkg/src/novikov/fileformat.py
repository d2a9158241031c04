"""Line-oriented input files for algebras, coproducts, forms and tensors.

Grammar sketch (UTF-8, ``#`` comments)::

    field Q                      # or F5, F7, ...
    basis e1 e2                  # opens an anonymous algebra block
    e1*e1 = e1                   # product lines; RHS is a linear combination
    e2*e1 = 1/2 e1 + e2
    delta e1 = 1 e2.e2           # coproduct lines
    form e1,e2 = 1               # bilinear form entries
    r = e1^e2 - e2^e1            # a two-tensor

Named blocks open with ``<kind> <name> [on <base>]`` where kind is one of
algebra, coalgebra, pre_novikov, representation, bilinear_form, tensor2,
matched_pair.  Pre-Novikov blocks use ``a<b`` / ``a>b`` entry lines for the
two products; representation blocks declare ``module v1 v2`` and use action
lines ``l[e1] v1 = ...`` / ``r[e1] v1 = ...`` plus optional operator lines
``T v1 = ...``; matched pairs open with ``matched_pair M of A B`` and use
``lA[e]``, ``rA[e]``, ``lB[x]``, ``rB[x]`` action lines.

Absent entries are zero.  Duplicate left-hand sides, unknown basis names and
unknown line shapes are rejected with line numbers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebras import Algebra, PreNovikovAlgebra
from .bialgebra import Coalgebra
from .core import Basis, BilinearForm, zeros
from .errors import DuplicateEntry, ParseError, UnknownBasisName
from .fields import Field, parse_field
from .representations import Representation
from .yangbaxter import OOperator, RTensor

KINDS = ("algebra", "coalgebra", "pre_novikov", "representation", "bilinear_form", "tensor2", "matched_pair")

_NAME = r"[A-Za-z_][A-Za-z0-9_'*]*"
_COEF = r"[+-]?\d+(?:/\d+)?"


@dataclass
class ParsedObject:
    kind: str
    name: str
    basis: Basis
    payload: object
    base: str | None = None
    base2: str | None = None


@dataclass
class AlgebraFile:
    field: Field
    objects: dict[str, ParsedObject] = dc_field(default_factory=dict)
    order: list[str] = dc_field(default_factory=list)

    def get(self, name: str) -> ParsedObject:
        if name not in self.objects:
            raise KeyError(f"no object named {name!r} in file")
        return self.objects[name]

    def first_of(self, kind: str) -> ParsedObject | None:
        for name in self.order:
            if self.objects[name].kind == kind:
                return self.objects[name]
        return None

    def single_of(self, kind: str, flag: str) -> ParsedObject:
        found = [self.objects[n] for n in self.order if self.objects[n].kind == kind]
        if not found:
            raise KeyError(f"file defines no {kind}; nothing for {flag}")
        if len(found) > 1:
            raise KeyError(f"file defines several {kind} objects; disambiguate with {flag}")
        return found[0]


def _split_terms(rhs: str, lineno: int) -> list[tuple[str, str]]:
    """Break ``1/2 e1 + e2 - 3 e1.e2`` into (sign-folded coefficient, symbol)."""
    rhs = rhs.strip()
    if rhs == "0":
        return []
    pattern = re.compile(
        rf"\s*(?P<sign>[+-])?\s*(?P<coef>\d+(?:/\d+)?\s+)?(?P<sym>{_NAME}(?:[.^]{_NAME})?)\s*"
    )
    pos = 0
    out = []
    first = True
    while pos < len(rhs):
        m = pattern.match(rhs, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse term at ...{rhs[pos:]!r}", lineno, pos + 1)
        sign = m.group("sign")
        if first and sign is None:
            sign = "+"
        if sign is None:
            raise ParseError(f"missing + or - before {m.group('sym')!r}", lineno, pos + 1)
        coef = (m.group("coef") or "1").strip()
        out.append((sign + coef, m.group("sym")))
        pos = m.end()
        first = False
    return out


def _linear_combo(field: Field, basis: Basis, rhs: str, lineno: int) -> np.ndarray:
    vec = zeros(field, basis.dim)
    for coef, sym in _split_terms(rhs, lineno):
        if sym not in basis.names:
            raise UnknownBasisName(f"unknown basis element {sym!r}", lineno)
        vec[basis.index(sym)] = vec[basis.index(sym)] + field.parse(coef)
    return vec


class _Block:
    def __init__(self, kind: str, name: str, lineno: int, base: str | None = None, base2: str | None = None):
        self.kind = kind
        self.name = name
        self.lineno = lineno
        self.base = base
        self.base2 = base2
        self.basis: Basis | None = None
        self.module: Basis | None = None
        self.entries: list[tuple[int, str, str, str]] = []  # (lineno, tag, lhs, rhs)
        self.seen: set[tuple[str, str]] = set()

    def add(self, lineno: int, tag: str, lhs: str, rhs: str) -> None:
        if (tag, lhs) in self.seen:
            raise DuplicateEntry(f"duplicate entry for {lhs!r}", lineno)
        self.seen.add((tag, lhs))
        self.entries.append((lineno, tag, lhs, rhs))


_HEADER = re.compile(rf"^(?P<kind>{'|'.join(KINDS)})\s+(?P<name>{_NAME})(?:\s+(?:on|of)\s+(?P<base>{_NAME})(?:\s+(?P<base2>{_NAME}))?)?\s*$")
_PRODUCT = re.compile(rf"^(?P<a>{_NAME})\s*(?P<op>[*<>])\s*(?P<b>{_NAME})\s*=\s*(?P<rhs>.+)$")
_DELTA = re.compile(rf"^delta\s+(?P<a>{_NAME})\s*=\s*(?P<rhs>.+)$")
_FORM = re.compile(rf"^(?:form\s+)?(?P<a>{_NAME})\s*,\s*(?P<b>{_NAME})\s*=\s*(?P<rhs>{_COEF})$")
_TENSOR = re.compile(r"^r\s*=\s*(?P<rhs>.+)$")
_ACTION = re.compile(rf"^(?P<map>l|r|lA|rA|lB|rB)\[(?P<a>{_NAME})\]\s+(?P<v>{_NAME})\s*=\s*(?P<rhs>.+)$")
_TMAP = re.compile(rf"^T\s+(?P<v>{_NAME})\s*=\s*(?P<rhs>.+)$")


def parse(text: str) -> AlgebraFile:
    field: Field | None = None
    blocks: list[_Block] = []
    current: _Block | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("field "):
            if field is not None:
                raise ParseError("duplicate field line", lineno)
            try:
                field = parse_field(line[6:])
            except ValueError as exc:
                raise ParseError(str(exc), lineno, 7) from None
            continue
        if field is None:
            raise ParseError("expected a field line first", lineno)
        m = _HEADER.match(line)
        if m:
            current = _Block(m.group("kind"), m.group("name"), lineno, m.group("base"), m.group("base2"))
            blocks.append(current)
            continue
        if line.startswith("basis ") or line.startswith("module "):
            names = tuple(line.split()[1:])
            try:
                b = Basis(names)
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            if line.startswith("basis"):
                if current is None:
                    current = _Block("algebra", "A", lineno)
                    blocks.append(current)
                if current.basis is not None:
                    raise ParseError("duplicate basis line in block", lineno)
                current.basis = b
            else:
                if current is None or current.kind != "representation":
                    raise ParseError("module line outside a representation block", lineno)
                current.module = b
            continue
        if current is None:
            raise ParseError("entry line before any basis or block header", lineno)
        m = _DELTA.match(line)
        if m:
            current.add(lineno, "delta", m.group("a"), m.group("rhs"))
            continue
        m = _FORM.match(line)
        if m and (line.startswith("form ") or current.kind == "bilinear_form"):
            current.add(lineno, "form", f"{m.group('a')},{m.group('b')}", m.group("rhs"))
            continue
        m = _TENSOR.match(line)
        if m:
            current.add(lineno, "tensor", "r", m.group("rhs"))
            continue
        m = _ACTION.match(line)
        if m:
            current.add(lineno, m.group("map"), f"{m.group('a')}|{m.group('v')}", m.group("rhs"))
            continue
        m = _TMAP.match(line)
        if m:
            current.add(lineno, "T", m.group("v"), m.group("rhs"))
            continue
        m = _PRODUCT.match(line)
        if m:
            tag = {"*": "product", "<": "left", ">": "right"}[m.group("op")]
            current.add(lineno, tag, f"{m.group('a')}|{m.group('b')}", m.group("rhs"))
            continue
        raise ParseError(f"unrecognized line {line!r}", lineno)

    if field is None:
        raise ParseError("empty input: missing field line", 1)

    out = AlgebraFile(field)

    def basis_of(block: _Block) -> Basis:
        if block.basis is not None:
            return block.basis
        if block.base:
            if block.base not in out.objects:
                raise ParseError(f"unknown base object {block.base!r}", block.lineno)
            return out.objects[block.base].basis
        raise ParseError(f"block {block.name!r} needs a basis or a base object", block.lineno)

    for block in blocks:
        if block.name in out.objects:
            raise ParseError(f"duplicate object name {block.name!r}", block.lineno)
        obj = _realize(field, block, out, basis_of)
        for name, parsed in obj:
            if name in out.objects:
                raise ParseError(f"duplicate object name {name!r}", block.lineno)
            out.objects[name] = parsed
            out.order.append(name)
    return out


def _realize(field: Field, block: _Block, done: AlgebraFile, basis_of) -> list[tuple[str, ParsedObject]]:
    n_of = lambda b: b.dim
    extras: list[tuple[str, ParsedObject]] = []
    basis = basis_of(block) if block.kind != "matched_pair" else None

    def prods(tag: str, b: Basis) -> np.ndarray:
        c = zeros(field, (b.dim, b.dim, b.dim))
        for lineno, t, lhs, rhs in block.entries:
            if t != tag:
                continue
            a_name, b_name = lhs.split("|")
            for nm in (a_name, b_name):
                if nm not in b.names:
                    raise UnknownBasisName(f"unknown basis element {nm!r}", lineno)
            c[b.index(a_name), b.index(b_name)] = _linear_combo(field, b, rhs, lineno)
        return c

    if block.kind == "algebra":
        anon_delta = [e for e in block.entries if e[1] == "delta"]
        anon_form = [e for e in block.entries if e[1] == "form"]
        anon_tensor = [e for e in block.entries if e[1] == "tensor"]
        allowed = {"product", "delta", "form", "tensor"}
        _reject_unknown(block, allowed)
        alg = Algebra(field, basis, prods("product", basis))
        extras.append((block.name, ParsedObject("algebra", block.name, basis, alg)))
        if anon_delta:
            d = zeros(field, (basis.dim,) * 3)
            for lineno, _, lhs, rhs in anon_delta:
                if lhs not in basis.names:
                    raise UnknownBasisName(f"unknown basis element {lhs!r}", lineno)
                d[basis.index(lhs)] = _tensor_square(field, basis, rhs, lineno, ".")
            extras.append(("Delta", ParsedObject("coalgebra", "Delta", basis, Coalgebra(field, basis, d), block.name)))
        if anon_form:
            extras.append(("omega", ParsedObject("bilinear_form", "omega", basis, _form_of(field, basis, anon_form), block.name)))
        if anon_tensor:
            lineno, _, _, rhs = anon_tensor[0]
            extras.append(("r", ParsedObject("tensor2", "r", basis, RTensor(field, _tensor_square(field, basis, rhs, lineno, "^")), block.name)))
        return extras

    if block.kind == "coalgebra":
        _reject_unknown(block, {"delta"})
        d = zeros(field, (basis.dim,) * 3)
        for lineno, _, lhs, rhs in block.entries:
            if lhs not in basis.names:
                raise UnknownBasisName(f"unknown basis element {lhs!r}", lineno)
            d[basis.index(lhs)] = _tensor_square(field, basis, rhs, lineno, ".")
        return [(block.name, ParsedObject("coalgebra", block.name, basis, Coalgebra(field, basis, d), block.base))]

    if block.kind == "pre_novikov":
        _reject_unknown(block, {"left", "right"})
        pre = PreNovikovAlgebra(field, basis, prods("left", basis), prods("right", basis))
        return [(block.name, ParsedObject("pre_novikov", block.name, basis, pre))]

    if block.kind == "bilinear_form":
        _reject_unknown(block, {"form"})
        return [(block.name, ParsedObject("bilinear_form", block.name, basis, _form_of(field, basis, block.entries), block.base))]

    if block.kind == "tensor2":
        _reject_unknown(block, {"tensor"})
        if not block.entries:
            raise ParseError(f"tensor2 block {block.name!r} has no r line", block.lineno)
        lineno, _, _, rhs = block.entries[0]
        return [(block.name, ParsedObject("tensor2", block.name, basis, RTensor(field, _tensor_square(field, basis, rhs, lineno, "^")), block.base))]

    if block.kind == "representation":
        _reject_unknown(block, {"l", "r", "T"})
        if block.base is None or block.base not in done.objects:
            raise ParseError(f"representation {block.name!r} needs 'on <algebra>'", block.lineno)
        base = done.objects[block.base]
        if base.kind != "algebra":
            raise ParseError(f"representation base {block.base!r} is not an algebra", block.lineno)
        if block.module is None:
            raise ParseError(f"representation {block.name!r} needs a module line", block.lineno)
        alg: Algebra = base.payload
        mod = block.module
        left = zeros(field, (alg.dim, mod.dim, mod.dim))
        right = zeros(field, (alg.dim, mod.dim, mod.dim))
        tmat = zeros(field, (alg.dim, mod.dim))
        has_t = False
        for lineno, tag, lhs, rhs in block.entries:
            if tag == "T":
                if lhs not in mod.names:
                    raise UnknownBasisName(f"unknown module element {lhs!r}", lineno)
                tmat[:, mod.index(lhs)] = _linear_combo(field, alg.basis, rhs, lineno)
                has_t = True
                continue
            a_name, v_name = lhs.split("|")
            if a_name not in alg.basis.names:
                raise UnknownBasisName(f"unknown basis element {a_name!r}", lineno)
            if v_name not in mod.names:
                raise UnknownBasisName(f"unknown module element {v_name!r}", lineno)
            target = left if tag == "l" else right
            target[alg.basis.index(a_name), :, mod.index(v_name)] = _linear_combo(field, mod, rhs, lineno)
        rep = Representation(alg, mod, left, right)
        parsed = [(block.name, ParsedObject("representation", block.name, mod, rep, block.base))]
        if has_t:
            parsed.append((block.name + ".T", ParsedObject("o_operator", block.name + ".T", mod, OOperator(rep, tmat), block.name)))
        return parsed

    if block.kind == "matched_pair":
        _reject_unknown(block, {"lA", "rA", "lB", "rB"})
        if not block.base or not block.base2:
            raise ParseError(f"matched_pair {block.name!r} needs 'of <A> <B>'", block.lineno)
        for nm in (block.base, block.base2):
            if nm not in done.objects or done.objects[nm].kind != "algebra":
                raise ParseError(f"matched_pair base {nm!r} is not a declared algebra", block.lineno)
        a: Algebra = done.objects[block.base].payload
        b: Algebra = done.objects[block.base2].payload
        la = zeros(field, (a.dim, b.dim, b.dim))
        ra = zeros(field, (a.dim, b.dim, b.dim))
        lb = zeros(field, (b.dim, a.dim, a.dim))
        rb = zeros(field, (b.dim, a.dim, a.dim))
        for lineno, tag, lhs, rhs in block.entries:
            act_name, v_name = lhs.split("|")
            if tag in ("lA", "rA"):
                actor, acted, target = a.basis, b.basis, (la if tag == "lA" else ra)
            else:
                actor, acted, target = b.basis, a.basis, (lb if tag == "lB" else rb)
            if act_name not in actor.names:
                raise UnknownBasisName(f"unknown basis element {act_name!r}", lineno)
            if v_name not in acted.names:
                raise UnknownBasisName(f"unknown basis element {v_name!r}", lineno)
            target[actor.index(act_name), :, acted.index(v_name)] = _linear_combo(field, acted, rhs, lineno)
        from .doubling import MatchedPair

        pair = MatchedPair(a, b, la, ra, lb, rb)
        return [
            (
                block.name,
                ParsedObject(
                    "matched_pair", block.name, a.basis.concat(b.basis), pair, block.base, block.base2
                ),
            )
        ]

    raise ParseError(f"unhandled block kind {block.kind}", block.lineno)


def _reject_unknown(block: _Block, allowed: set[str]) -> None:
    for lineno, tag, lhs, _ in block.entries:
        if tag not in allowed:
            raise ParseError(f"entry {lhs!r} not allowed in a {block.kind} block", lineno)


def _tensor_square(field: Field, basis: Basis, rhs: str, lineno: int, sep: str) -> np.ndarray:
    out = zeros(field, (basis.dim, basis.dim))
    for coef, sym in _split_terms(rhs, lineno):
        if sep not in sym:
            raise ParseError(f"expected {sep!r}-separated pair in {sym!r}", lineno)
        a_name, b_name = sym.split(sep, 1)
        for nm in (a_name, b_name):
            if nm not in basis.names:
                raise UnknownBasisName(f"unknown basis element {nm!r}", lineno)
        i, j = basis.index(a_name), basis.index(b_name)
        out[i, j] = out[i, j] + field.parse(coef)
    return out


def _form_of(field: Field, basis: Basis, entries) -> BilinearForm:
    w = zeros(field, (basis.dim, basis.dim))
    for lineno, _, lhs, rhs in entries:
        a_name, b_name = lhs.split(",")
        for nm in (a_name, b_name):
            if nm not in basis.names:
                raise UnknownBasisName(f"unknown basis element {nm!r}", lineno)
        w[basis.index(a_name), basis.index(b_name)] = field.parse(rhs)
    return BilinearForm(field, w)


def parse_tensor_expression(field: Field, basis: Basis, expr: str) -> RTensor:
    """Parse an inline two-tensor such as ``b^c - c^b``."""
    return RTensor(field, _tensor_square(field, basis, expr, 0, "^"))


# ---------------------------------------------------------------------------
# serialization


def _fmt_terms(field: Field, terms: list[tuple[object, str]]) -> str:
    text = ""
    for x, sym in terms:
        if not x:
            continue
        coef = field.format(x)
        neg = coef.startswith("-")
        mag = coef[1:] if neg else coef
        body = sym if mag == "1" else f"{mag} {sym}"
        if not text:
            text = f"-{body}" if neg else body
        else:
            text += f" - {body}" if neg else f" + {body}"
    return text or "0"


def _fmt_combo(field: Field, basis: Basis, vec: np.ndarray) -> str:
    return _fmt_terms(field, [(vec[i], basis.names[i]) for i in range(len(vec))])


def _fmt_pairs(field: Field, basis: Basis, mat: np.ndarray, sep: str) -> str:
    names = basis.names
    terms = [
        (mat[i, j], f"{names[i]}{sep}{names[j]}")
        for i in range(mat.shape[0])
        for j in range(mat.shape[1])
    ]
    return _fmt_terms(field, terms)


def serialize(doc: AlgebraFile) -> str:
    lines = [f"field {doc.field.name}"]
    for name in doc.order:
        obj = doc.objects[name]
        lines.append("")
        if obj.kind == "algebra":
            alg: Algebra = obj.payload
            lines.append(f"algebra {name}")
            lines.append("basis " + " ".join(obj.basis.names))
            for i in range(alg.dim):
                for j in range(alg.dim):
                    if not all(not x for x in alg.c[i, j]):
                        lines.append(
                            f"{obj.basis.names[i]}*{obj.basis.names[j]} = "
                            + _fmt_combo(doc.field, obj.basis, alg.c[i, j])
                        )
        elif obj.kind == "coalgebra":
            co: Coalgebra = obj.payload
            lines.append(f"coalgebra {name}" + (f" on {obj.base}" if obj.base else ""))
            if not obj.base:
                lines.append("basis " + " ".join(obj.basis.names))
            for g in range(co.dim):
                if not all(not x for x in co.d[g].flat):
                    lines.append(f"delta {obj.basis.names[g]} = " + _fmt_pairs(doc.field, obj.basis, co.d[g], "."))
        elif obj.kind == "pre_novikov":
            pre: PreNovikovAlgebra = obj.payload
            lines.append(f"pre_novikov {name}")
            lines.append("basis " + " ".join(obj.basis.names))
            for op, arr in (("<", pre.left), (">", pre.right)):
                for i in range(pre.dim):
                    for j in range(pre.dim):
                        if not all(not x for x in arr[i, j]):
                            lines.append(
                                f"{obj.basis.names[i]}{op}{obj.basis.names[j]} = "
                                + _fmt_combo(doc.field, obj.basis, arr[i, j])
                            )
        elif obj.kind == "bilinear_form":
            form: BilinearForm = obj.payload
            lines.append(f"bilinear_form {name}" + (f" on {obj.base}" if obj.base else ""))
            if not obj.base:
                lines.append("basis " + " ".join(obj.basis.names))
            for i in range(form.dim):
                for j in range(form.dim):
                    if form.matrix[i, j]:
                        lines.append(
                            f"form {obj.basis.names[i]},{obj.basis.names[j]} = "
                            + doc.field.format(form.matrix[i, j])
                        )
        elif obj.kind == "tensor2":
            rt: RTensor = obj.payload
            lines.append(f"tensor2 {name}" + (f" on {obj.base}" if obj.base else ""))
            if not obj.base:
                lines.append("basis " + " ".join(obj.basis.names))
            lines.append("r = " + _fmt_pairs(doc.field, obj.basis, rt.r, "^"))
        elif obj.kind == "representation":
            rep: Representation = obj.payload
            lines.append(f"representation {name} on {obj.base}")
            lines.append("module " + " ".join(rep.module.names))
            for tag, arr in (("l", rep.left), ("r", rep.right)):
                for i in range(rep.algebra.dim):
                    for j in range(rep.module_dim):
                        col = arr[i, :, j]
                        if not all(not x for x in col):
                            lines.append(
                                f"{tag}[{rep.algebra.basis.names[i]}] {rep.module.names[j]} = "
                                + _fmt_combo(doc.field, rep.module, col)
                            )
            op_name = name + ".T"
            if op_name in doc.objects and doc.objects[op_name].kind == "o_operator":
                op: OOperator = doc.objects[op_name].payload
                for j in range(rep.module_dim):
                    col = op.t[:, j]
                    if not all(not x for x in col):
                        lines.append(f"T {rep.module.names[j]} = " + _fmt_combo(doc.field, rep.algebra.basis, col))
        elif obj.kind == "o_operator":
            continue  # emitted inside its representation block
        elif obj.kind == "matched_pair":
            mp = obj.payload
            lines.append(f"matched_pair {name} of {obj.base} {obj.base2}")
            specs = (
                ("lA", mp.l_a, mp.a.basis, mp.b.basis),
                ("rA", mp.r_a, mp.a.basis, mp.b.basis),
                ("lB", mp.l_b, mp.b.basis, mp.a.basis),
                ("rB", mp.r_b, mp.b.basis, mp.a.basis),
            )
            for tag, arr, actor, acted in specs:
                for i in range(len(actor.names)):
                    for j in range(len(acted.names)):
                        col = arr[i, :, j]
                        if not all(not x for x in col):
                            lines.append(
                                f"{tag}[{actor.names[i]}] {acted.names[j]} = "
                                + _fmt_combo(doc.field, acted, col)
                            )
        else:
            raise ValueError(f"cannot serialize {obj.kind}")
    return "\n".join(lines) + "\n"
