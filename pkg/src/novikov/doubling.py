"""Matched pairs, Manin triples (Novikov and Lie flavors), the double of a
bialgebra, and the finite-dimensional commuting squares."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from .affine import finite_delta, finite_right_coproduct, induced_lie_finite
from .algebras import Algebra, check_lie, check_novikov
from .bialgebra import Coalgebra, check_novikov_bialgebra, dualize_coproduct
from .core import Basis, BilinearForm, arrays_equal, contract, inverse, is_zero, zeros
from .errors import DegenerateForm, NotMatchedPair, NotRepresentation, ShapeMismatch
from .fields import Field
from .report import Report, ReportBuilder, combined
from .representations import Representation, check_representation
from .yangbaxter import check_invariant_form

# ---------------------------------------------------------------------------
# matched pairs


@dataclass(frozen=True)
class MatchedPair:
    """Two algebras acting on each other.

    ``l_a[i]``/``r_a[i]`` are dim(B) x dim(B) matrices (actions of the i-th
    basis element of A on B); ``l_b``/``r_b`` act on A likewise.
    """

    a: Algebra
    b: Algebra
    l_a: np.ndarray
    r_a: np.ndarray
    l_b: np.ndarray
    r_b: np.ndarray

    def __post_init__(self):
        na, nb = self.a.dim, self.b.dim
        for arr, shape in ((self.l_a, (na, nb, nb)), (self.r_a, (na, nb, nb)),
                           (self.l_b, (nb, na, na)), (self.r_b, (nb, na, na))):
            if arr.shape != shape:
                raise ShapeMismatch(f"action shape {arr.shape} != {shape}")

    @property
    def field(self) -> Field:
        return self.a.field

    def rep_of_a(self) -> Representation:
        return Representation(self.a, self.b.basis, self.l_a, self.r_a)

    def rep_of_b(self) -> Representation:
        return Representation(self.b, self.a.basis, self.l_b, self.r_b)


def _act(mats: np.ndarray, x: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Apply sum_i x_i mats[i] to v."""
    return contract("i,igm,m->g", x, mats, v)


MATCHED_PAIR_IDS = tuple(f"mp{i}" for i in range(1, 9))


def check_matched_pair(m: MatchedPair) -> Report:
    """The two representation layers plus the eight coupling identities."""
    rep_a = check_representation(m.rep_of_a())
    rep_b = check_representation(m.rep_of_b())
    rb = ReportBuilder(m.field, "matched pair couplings")
    rb.flag("rep_of_first", rep_a.passed, (), "first action is not a representation")
    rb.flag("rep_of_second", rep_b.passed, (), "second action is not a representation")
    la, ra, lb, rbm = m.l_a, m.r_a, m.l_b, m.r_b
    A, B = m.a, m.b
    fa = m.field
    na, nb = A.dim, B.dim
    names_a, names_b = A.basis.names, B.basis.names
    ea = [zeros(fa, na) for _ in range(na)]
    for i in range(na):
        ea[i][i] = fa.one
    eb = [zeros(fa, nb) for _ in range(nb)]
    for i in range(nb):
        eb[i][i] = fa.one

    def act_a(x, v):  # x in A acting on v in B
        return _act(la, x, v), _act(ra, x, v)

    for i, j, k in iproduct(range(na), range(na), range(nb)):
        a, b, x = ea[i], ea[j], eb[k]
        loc = (names_a[i], names_a[j], names_b[k])
        lax, rax = _act(la, a, x), _act(ra, a, x)
        lbx_a, rbx_a = _act(lb, x, a), _act(rbm, x, a)
        lbx_b, rbx_b = _act(lb, x, b), _act(rbm, x, b)
        rb.check(
            "mp1",
            loc,
            _act(lb, x, A.product(a, b))
            + _act(lb, lax - rax, b)
            - A.product(lbx_a - rbx_a, b)
            - _act(rbm, _act(ra, b, x), a)
            - A.product(a, lbx_b),
        )
        rb.check(
            "mp2",
            loc,
            _act(rbm, x, A.product(a, b) - A.product(b, a))
            - _act(rbm, _act(la, b, x), a)
            + _act(rbm, lax, b)
            - A.product(a, rbx_b)
            + A.product(b, rbx_a),
        )
        rb.check(
            "mp5",
            loc,
            A.product(lbx_a, b)
            + _act(lb, rax, b)
            - A.product(lbx_b, a)
            - _act(lb, _act(ra, b, x), a),
        )
        rb.check(
            "mp6",
            loc,
            A.product(rbx_a, b) + _act(lb, lax, b) - _act(rbm, x, A.product(a, b)),
        )
    for k, l, i in iproduct(range(nb), range(nb), range(na)):
        x, y, a = eb[k], eb[l], ea[i]
        loc = (names_b[k], names_b[l], names_a[i])
        lbx, rbx = _act(lb, x, a), _act(rbm, x, a)
        lby, rby = _act(lb, y, a), _act(rbm, y, a)
        rb.check(
            "mp3",
            loc,
            _act(la, a, B.product(x, y))
            + _act(la, lbx - rbx, y)
            - B.product(_act(la, a, x) - _act(ra, a, x), y)
            - _act(ra, rby, x)
            - B.product(x, _act(la, a, y)),
        )
        rb.check(
            "mp4",
            loc,
            _act(ra, a, B.product(x, y) - B.product(y, x))
            - _act(ra, lby, x)
            + _act(ra, lbx, y)
            - B.product(x, _act(ra, a, y))
            + B.product(y, _act(ra, a, x)),
        )
        rb.check(
            "mp7",
            loc,
            _act(la, rbx, y)
            + B.product(_act(la, a, x), y)
            - _act(la, rby, x)
            - B.product(_act(la, a, y), x),
        )
        rb.check(
            "mp8",
            loc,
            _act(la, lbx, y) + B.product(_act(ra, a, x), y) - _act(ra, a, B.product(x, y)),
        )
    return rb.build()


def matched_pair_to_algebra(m: MatchedPair, *, verify: bool = True) -> Algebra:
    """(a + x)(b + y) = (ab + l_b(x)b + r_b(y)a) + (xy + l_a(a)y + r_a(b)x)."""
    if verify:
        rep = check_matched_pair(m)
        if not rep.passed:
            raise NotMatchedPair(rep.render())
    na, nb = m.a.dim, m.b.dim
    n = na + nb
    c = zeros(m.field, (n, n, n))
    c[:na, :na, :na] = m.a.c
    c[na:, na:, na:] = m.b.c
    # a * y: A-part r_b(y)a, B-part l_a(a)y
    c[:na, na:, :na] = m.r_b.transpose(2, 0, 1)   # [a, y, g] = r_b[y][g, a]
    c[:na, na:, na:] = m.l_a.transpose(0, 2, 1)   # [a, y, g] = l_a[a][g, y]
    # x * b: A-part l_b(x)b, B-part r_a(b)x
    c[na:, :na, :na] = m.l_b.transpose(0, 2, 1)   # [x, b, g] = l_b[x][g, b]
    c[na:, :na, na:] = m.r_a.transpose(2, 0, 1)   # [x, b, g] = r_a[b][g, x]
    out = Algebra(m.field, m.a.basis.concat(m.b.basis), c)
    if verify:
        assert check_novikov(out).passed
        out = Algebra(m.field, out.basis, c, frozenset({"novikov"}))
    return out


def standard_matched_pair(a: Algebra, coalg: Coalgebra) -> MatchedPair:
    """The matched pair on (A, dual of the coproduct) with the canonical
    dual actions; its couplings hold exactly when (A, coproduct) is a
    bialgebra."""
    c, d = a.c, coalg.d
    dual = dualize_coproduct(coalg)
    n = a.dim
    l_a = zeros(a.field, (n, n, n))
    r_a = zeros(a.field, (n, n, n))
    l_b = zeros(a.field, (n, n, n))
    r_b = zeros(a.field, (n, n, n))
    for i, g, m in iproduct(range(n), repeat=3):
        l_a[i][g, m] = -(c[g, i, m] + c[i, g, m])
        r_a[i][g, m] = c[g, i, m]
        l_b[i][g, m] = -(d[m, g, i] + d[m, i, g])
        r_b[i][g, m] = d[m, g, i]
    return MatchedPair(a, dual, l_a, r_a, l_b, r_b)


# ---------------------------------------------------------------------------
# Manin triples of Novikov algebras


@dataclass(frozen=True)
class ManinTripleNovikov:
    double: Algebra
    algebra: Algebra
    dual_algebra: Algebra
    form: BilinearForm

    @property
    def split(self) -> int:
        return self.algebra.dim


def standard_pairing_form(field: Field, n: int) -> BilinearForm:
    w = zeros(field, (2 * n, 2 * n))
    for i in range(n):
        w[i, n + i] = field.one
        w[n + i, i] = field.one
    return BilinearForm(field, w)


def assemble_double(a: Algebra, coalg: Coalgebra) -> ManinTripleNovikov:
    """The double A + A* with the product induced by the canonical dual
    actions, carrying the standard symmetric pairing."""
    pair = standard_matched_pair(a, coalg)
    double = matched_pair_to_algebra(pair, verify=False)
    return ManinTripleNovikov(double, a, pair.b, standard_pairing_form(a.field, a.dim))


def check_manin_triple_novikov(t: ManinTripleNovikov) -> Report:
    """The double is Novikov, both halves embed as subalgebras with their own
    products, and the standard pairing is invariant."""
    n = t.split
    d = t.double
    rb = ReportBuilder(d.field, "manin triple (novikov)")
    rb.flag("total_novikov", check_novikov(d).passed, (), "double is not Novikov")
    sub1 = d.c[:n, :n]
    rb.flag(
        "first_subalgebra",
        is_zero(sub1[:, :, n:]) and arrays_equal(sub1[:, :, :n], t.algebra.c),
        (),
        "first half is not the expected subalgebra",
    )
    sub2 = d.c[n:, n:]
    rb.flag(
        "second_subalgebra",
        is_zero(sub2[:, :, :n]) and arrays_equal(sub2[:, :, n:], t.dual_algebra.c),
        (),
        "second half is not the expected subalgebra",
    )
    rb.merge(check_invariant_form(d, t.form, "novikov"), prefix="pairing_")
    return rb.build()


# ---------------------------------------------------------------------------
# Manin triples of Lie algebras


@dataclass(frozen=True)
class ManinTripleLie:
    lie: Algebra
    part1: tuple[int, ...]
    part2: tuple[int, ...]
    form: BilinearForm

    def __post_init__(self):
        n = self.lie.dim
        if sorted(self.part1 + self.part2) != list(range(n)):
            raise ShapeMismatch("parts must partition the basis")
        if self.form.dim != n:
            raise ShapeMismatch("form dimension mismatch")


def check_manin_triple_lie(t: ManinTripleLie) -> Report:
    g = t.lie
    rb = ReportBuilder(g.field, "manin triple (lie)")
    rb.flag("total_lie", check_lie(g).passed, (), "total algebra is not Lie")
    w = t.form.matrix
    rb.flag("form_symmetric", t.form.symmetric, (), "form is not symmetric")
    rb.flag("form_nondegenerate", t.form.nondegenerate, (), "form is degenerate")
    inv = contract("abm,mc->abc", g.c, w) - contract("bcm,am->abc", g.c, w)
    names = g.basis.names
    for i, j, k in iproduct(range(g.dim), repeat=3):
        rb.check("form_invariant", (names[i], names[j], names[k]), inv[i, j, k])
    for label, part in (("first", t.part1), ("second", t.part2)):
        other = [x for x in range(g.dim) if x not in part]
        closed = all(is_zero(g.c[i, j][other]) for i in part for j in part) if other else True
        rb.flag(f"{label}_subalgebra", closed, (), f"{label} part is not closed under the bracket")
        iso = all(not w[i, j] for i in part for j in part)
        rb.flag(f"{label}_isotropic", iso, (), f"{label} part is not isotropic")
    return rb.build()


def lie_manin_triple_from_double(
    t: ManinTripleNovikov, b: Algebra, form_b: BilinearForm, *, verify: bool = True
) -> ManinTripleLie:
    """Tensor a Novikov Manin triple with a finite-dimensional quadratic right
    Novikov algebra; the pairing couples the two halves through the form."""
    big = induced_lie_finite(t.double, b, verify=verify)
    n, m = t.split, b.dim
    part1 = tuple(i * m + p for i in range(n) for p in range(m))
    part2 = tuple((n + i) * m + p for i in range(n) for p in range(m))
    total = 2 * n * m
    w = zeros(t.double.field, (total, total))
    wb = form_b.matrix
    for i in range(n):
        for p, q in iproduct(range(m), repeat=2):
            w[i * m + p, (n + i) * m + q] = wb[p, q]
            w[(n + i) * m + q, i * m + p] = wb[p, q]
    return ManinTripleLie(big, part1, part2, BilinearForm(t.double.field, w))


def transport_right_novikov(b: Algebra, form: BilinearForm, *, verify: bool = True) -> Algebra:
    """Move the product to the dual space along the form isomorphism."""
    if not form.nondegenerate:
        raise DegenerateForm("form is degenerate")
    if verify:
        rep = check_invariant_form(b, form, "right_novikov")
        if not rep.passed or not form.symmetric:
            raise DegenerateForm("form is not symmetric invariant for the product")
    w = form.matrix
    winv = inverse(b.field, w)
    c = contract("im,jl,mlp,pg->ijg", winv, winv, b.c, w)
    out = Algebra(b.field, b.basis.dual(), c)
    if verify:
        from .algebras import check_right_novikov

        assert check_right_novikov(out).passed
        out = Algebra(b.field, out.basis, c, frozenset({"right_novikov"}))
    return out


def transported_triple_comparison(
    t: ManinTripleNovikov, b: Algebra, form_b: BilinearForm
) -> Report:
    """Exact structure-constant comparison: the tensored Manin triple,
    transported along identity (x) form-isomorphism, is the direct sum of the
    two induced Lie algebras with the standard pairing."""
    field = t.double.field
    n, m = t.split, b.dim
    big = induced_lie_finite(t.double, b, verify=False)
    winv = inverse(field, form_b.matrix)
    total = 2 * n * m
    g = zeros(field, (total, total))
    for i in range(n):
        for p in range(m):
            g[i * m + p, i * m + p] = field.one
    for i in range(n):
        for p, q in iproduct(range(m), repeat=2):
            # the q-th transported dual vector pulls back to sum_p winv[q, p] b_p
            g[(n + i) * m + p, (n + i) * m + q] = winv[q, p]
    ginv = inverse(field, g)
    transported = contract("ma,nb,mnp,gp->abg", g, g, big.c, ginv)
    rb = ReportBuilder(field, "transported manin triple")
    lie1 = induced_lie_finite(t.algebra, b, verify=False)
    rb.flag(
        "first_block_matches",
        arrays_equal(transported[: n * m, : n * m, : n * m], lie1.c)
        and is_zero(transported[: n * m, : n * m, n * m :]),
        (),
        "A-half transported constants differ from the induced bracket",
    )
    bstar = transport_right_novikov(b, form_b, verify=False)
    lie2 = induced_lie_finite(t.dual_algebra, bstar, verify=False)
    rb.flag(
        "second_block_matches",
        arrays_equal(transported[n * m :, n * m :, n * m :], lie2.c)
        and is_zero(transported[n * m :, n * m :, : n * m]),
        (),
        "dual-half transported constants differ from the induced bracket",
    )
    lie_triple = lie_manin_triple_from_double(t, b, form_b, verify=False)
    wt = contract("ma,nb,mn->ab", g, g, lie_triple.form.matrix)
    expected = zeros(field, (total, total))
    for i in range(n):
        for p in range(m):
            expected[i * m + p, n * m + i * m + p] = field.one
            expected[n * m + i * m + p, i * m + p] = field.one
    rb.flag("form_matches_standard_pairing", arrays_equal(wt, expected), (), "transported form differs")
    return rb.build()


def lie_bialgebra_from_triple(
    t: ManinTripleNovikov, b: Algebra, form_b: BilinearForm
) -> Coalgebra:
    """Read the coproduct on A (x) B off the dual half of the transported
    Manin triple: the coproduct constants are the bracket constants of the
    dual-half Lie algebra."""
    bstar = transport_right_novikov(b, form_b, verify=False)
    lie2 = induced_lie_finite(t.dual_algebra, bstar, verify=False)
    basis = t.algebra.basis.tensor(b.basis)
    return Coalgebra(t.double.field, basis, lie2.c.transpose(2, 0, 1).copy())


def commuting_square_report(a: Algebra, coalg: Coalgebra, b: Algebra, form_b: BilinearForm) -> Report:
    """Finite-dimensional commuting square: the coproduct from the tensored
    coalgebras equals the one read off the Lie Manin triple, exactly."""
    direct = finite_delta(coalg, b, form_b)
    triple = assemble_double(a, coalg)
    from_triple = lie_bialgebra_from_triple(triple, b, form_b)
    rb = ReportBuilder(a.field, "finite commuting square")
    rb.flag(
        "coproducts_equal",
        arrays_equal(direct.d, from_triple.d),
        (),
        "tensored coproduct differs from the Manin-triple coproduct",
    )
    return rb.build()


# ---------------------------------------------------------------------------
# the tri-equivalence


def equivalence_suite(a: Algebra, coalg: Coalgebra) -> Report:
    """Three layered verdicts (bialgebra, matched pair, Manin triple) that
    the theory asserts are always identical; the report passes iff they are."""
    bial = check_novikov_bialgebra(a, coalg).passed

    novikov_ok = check_novikov(a).passed
    dual_ok = check_novikov(dualize_coproduct(coalg)).passed
    if novikov_ok and dual_ok:
        matched = check_matched_pair(standard_matched_pair(a, coalg)).passed
    else:
        matched = False
    if novikov_ok and dual_ok:
        manin = check_manin_triple_novikov(assemble_double(a, coalg)).passed
    else:
        manin = False

    rb = ReportBuilder(a.field, "bialgebra / matched pair / manin triple equivalence")
    rb.flag("bialgebra", bial, (), "bialgebra check fails")
    rb.flag("matched_pair", matched, (), "matched-pair check fails")
    rb.flag("manin_triple", manin, (), "manin-triple check fails")
    rb.flag(
        "verdicts_identical",
        len({bial, matched, manin}) == 1,
        (),
        f"verdicts differ: bialgebra={bial} matched={matched} manin={manin}",
    )
    return rb.build()
