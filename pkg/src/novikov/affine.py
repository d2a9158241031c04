"""Affinization machinery.

Finite-dimensional path: induced Lie algebras on A (x) B for a quadratic
right Novikov algebra B, and their coproducts.

Laurent path: L = A (x) k[t, 1/t].  Elements of the completed tensor squares
and cubes of L are represented exactly as *banded tensors*: finitely many
bands of fixed total Laurent degree, each carrying a polynomial (in the free
slot-degree variables) with values in the tensor powers of A.  Every
operation performed here (twists, slot permutations, coproduct extensions,
adjoint actions, pairwise brackets) maps bands to bands by affine
substitutions, so exact zero-testing decides every completed identity.

The Laurent factor's own laws are hard-coded:
    t^i . t^j = i t^{i+j-1},    (t^i, t^j) = [i+j+1 == 0],
    coproduct of t^j = sum_i (i+1) t^{-i-2} (x) t^{j+i}.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product as iproduct

import numpy as np

from .algebras import Algebra, check_lie, check_novikov, check_right_novikov
from .bialgebra import Coalgebra, check_novikov_bialgebra, check_novikov_coalgebra, coboundary_coproduct
from .core import (
    BandPoly,
    Basis,
    BilinearForm,
    affine,
    arrays_equal,
    contract,
    inverse,
    is_zero,
    zeros,
)
from .errors import DegenerateForm, NotNovikov, NotRightNovikov, ShapeMismatch
from .fields import Field, Scalar
from .report import Report, ReportBuilder, combined
from .yangbaxter import RTensor, _r_array, check_quasi_frobenius, form_to_r, nybe_residual

# ---------------------------------------------------------------------------
# the Laurent factor


def laurent_product_coeff(i: int, j: int) -> tuple[int, int]:
    """t^i . t^j = coeff * t^degree."""
    return i, i + j - 1


def laurent_pairing(i: int, j: int) -> int:
    return 1 if i + j + 1 == 0 else 0


def laurent_coproduct_coeff(j: int, p: int, q: int) -> int:
    """Coefficient of t^p (x) t^q in the coproduct of t^j."""
    return (-p - 1) if p + q == j - 2 else 0


# ---------------------------------------------------------------------------
# elements of L = A (x) k[t, 1/t]


@dataclass(frozen=True)
class LaurentVector:
    """Finite sum of (A-vector) * t^degree terms, normalized."""

    field: Field
    dim: int
    terms: dict[int, np.ndarray] = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for deg, vec in self.terms.items():
            if vec.shape != (self.dim,):
                raise ShapeMismatch("laurent term has wrong dimension")
            if not is_zero(vec):
                clean[deg] = vec
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @staticmethod
    def single(field: Field, vec: np.ndarray, degree: int) -> "LaurentVector":
        return LaurentVector(field, vec.shape[0], {degree: vec})

    @staticmethod
    def basis_term(field: Field, dim: int, index: int, degree: int) -> "LaurentVector":
        v = zeros(field, dim)
        v[index] = field.one
        return LaurentVector(field, dim, {degree: v})

    def __add__(self, other: "LaurentVector") -> "LaurentVector":
        out = dict(self.terms)
        for deg, vec in other.terms.items():
            out[deg] = out[deg] + vec if deg in out else vec
        return LaurentVector(self.field, self.dim, out)

    def __neg__(self) -> "LaurentVector":
        return LaurentVector(self.field, self.dim, {d: -v for d, v in self.terms.items()})

    def __sub__(self, other: "LaurentVector") -> "LaurentVector":
        return self + (-other)

    def scale(self, s: Scalar) -> "LaurentVector":
        return LaurentVector(self.field, self.dim, {d: s * v for d, v in self.terms.items()})

    @property
    def is_zero(self) -> bool:
        return not self.terms


def laurent_bracket(a: Algebra, x: LaurentVector, y: LaurentVector) -> LaurentVector:
    """[u t^i, v t^j] = i (u v) t^{i+j-1} - j (v u) t^{i+j-1}."""
    out: dict[int, np.ndarray] = {}
    for i, u in x.terms.items():
        for j, v in y.terms.items():
            vec = a.field.from_int(i) * a.product(u, v) - a.field.from_int(j) * a.product(v, u)
            deg = i + j - 1
            out[deg] = out[deg] + vec if deg in out else vec
    return LaurentVector(a.field, a.dim, out)


# ---------------------------------------------------------------------------
# banded tensors


def _canonical_bands(bands: dict[int, BandPoly]) -> dict[int, BandPoly]:
    return {d: p for d, p in sorted(bands.items()) if not p.is_zero}


@dataclass(frozen=True)
class Banded2:
    """Element of L (x)^ L: band of total degree d holds a polynomial f_d(u)
    whose value at u = q is the A (x) A component at slot degrees (d-q, q)."""

    field: Field
    shape: tuple[int, int]
    bands: dict[int, BandPoly] = dc_field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "bands", _canonical_bands(self.bands))

    @staticmethod
    def zero(field: Field, shape: tuple[int, int]) -> "Banded2":
        return Banded2(field, shape, {})

    @property
    def is_zero(self) -> bool:
        return not self.bands

    def _binop(self, other: "Banded2", sign: int) -> "Banded2":
        if self.shape != other.shape:
            raise ShapeMismatch("banded shapes differ")
        out = dict(self.bands)
        for d, p in other.bands.items():
            q = p if sign > 0 else -p
            out[d] = out[d] + q if d in out else q
        return Banded2(self.field, self.shape, out)

    def __add__(self, other: "Banded2") -> "Banded2":
        return self._binop(other, +1)

    def __sub__(self, other: "Banded2") -> "Banded2":
        return self._binop(other, -1)

    def __neg__(self) -> "Banded2":
        return Banded2(self.field, self.shape, {d: -p for d, p in self.bands.items()})

    def scale(self, s: Scalar) -> "Banded2":
        return Banded2(self.field, self.shape, {d: p.scale(s) for d, p in self.bands.items()})

    def twist(self) -> "Banded2":
        """Completed flip: component at (p, q) moves to (q, p) with the two
        A-legs exchanged; per band this is u -> d - u."""
        out = {}
        for d, p in self.bands.items():
            out[d] = p.substitute([affine(1, const=d, u=-1)], 1).map_values(
                lambda a: a.T.copy(), (self.shape[1], self.shape[0])
            )
        return Banded2(self.field, (self.shape[1], self.shape[0]), out)

    def component(self, p: int, q: int) -> np.ndarray:
        poly = self.bands.get(p + q)
        if poly is None:
            return zeros(self.field, self.shape)
        return poly.evaluate((q,))

    def window(self, lo: int, hi: int) -> dict[tuple[int, int], np.ndarray]:
        out = {}
        for d, poly in self.bands.items():
            for q in range(max(lo, d - hi), min(hi, d - lo) + 1):
                val = poly.evaluate((q,))
                if not is_zero(val):
                    out[(d - q, q)] = val
        return out


@dataclass(frozen=True)
class Banded3:
    """Element of the completed triple tensor power: band d holds g_d(u, v),
    the component at slot degrees (d-u-v, u, v)."""

    field: Field
    shape: tuple[int, int, int]
    bands: dict[int, BandPoly] = dc_field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "bands", _canonical_bands(self.bands))

    @property
    def is_zero(self) -> bool:
        return not self.bands

    def _binop(self, other: "Banded3", sign: int) -> "Banded3":
        if self.shape != other.shape:
            raise ShapeMismatch("banded shapes differ")
        out = dict(self.bands)
        for d, p in other.bands.items():
            q = p if sign > 0 else -p
            out[d] = out[d] + q if d in out else q
        return Banded3(self.field, self.shape, out)

    def __add__(self, other: "Banded3") -> "Banded3":
        return self._binop(other, +1)

    def __sub__(self, other: "Banded3") -> "Banded3":
        return self._binop(other, -1)

    def __neg__(self) -> "Banded3":
        return Banded3(self.field, self.shape, {d: -p for d, p in self.bands.items()})

    def _permute(self, subs_of_d, legs: tuple[int, int, int]) -> "Banded3":
        out = {}
        shape = tuple(self.shape[i] for i in legs)
        for d, p in self.bands.items():
            out[d] = p.substitute(subs_of_d(d), 2).map_values(
                lambda a: a.transpose(legs).copy(), shape
            )
        return Banded3(self.field, shape, out)

    def swap12(self) -> "Banded3":
        return self._permute(
            lambda d: [affine(2, const=d, u=-1, v=-1), affine(2, v=1)], (1, 0, 2)
        )

    def swap23(self) -> "Banded3":
        return self._permute(lambda d: [affine(2, v=1), affine(2, u=1)], (0, 2, 1))

    def swap13(self) -> "Banded3":
        return self._permute(
            lambda d: [affine(2, u=1), affine(2, const=d, u=-1, v=-1)], (2, 1, 0)
        )

    def component(self, p: int, q: int, s: int) -> np.ndarray:
        poly = self.bands.get(p + q + s)
        if poly is None:
            return zeros(self.field, self.shape)
        return poly.evaluate((q, s))

    def window(self, lo: int, hi: int) -> dict[tuple[int, int, int], np.ndarray]:
        out = {}
        for d, poly in self.bands.items():
            for q in range(lo, hi + 1):
                for s in range(max(lo, d - q - hi), min(hi, d - q - lo) + 1):
                    val = poly.evaluate((q, s))
                    if not is_zero(val):
                        out[(d - q - s, q, s)] = val
        return out


# ---------------------------------------------------------------------------
# producers on the Laurent path


def delta_banded(coalg: Coalgebra, x: LaurentVector) -> Banded2:
    """The affinized coproduct of an element of L: each input term at degree k
    produces one band at total degree k - 2 with a degree-1 polynomial."""
    field = coalg.field
    n = coalg.dim
    bands: dict[int, BandPoly] = {}
    for k, vec in x.terms.items():
        da = coalg.delta_of(vec)
        tda = da.T.copy()
        const = field.from_int(1 - k) * da + tda
        lin = da + tda
        poly = BandPoly(field, 1, (n, n), {(0,): const, (1,): lin})
        d = k - 2
        bands[d] = bands[d] + poly if d in bands else poly
    return Banded2(field, (n, n), bands)


def extend_delta_slot(coalg: Coalgebra, x: Banded2, slot: int) -> Banded3:
    """Apply the affinized coproduct to one slot of a banded 2-tensor."""
    field = coalg.field
    d3 = coalg.d
    n = coalg.dim
    shape3 = (n, n, n)
    out: dict[int, BandPoly] = {}
    for d, poly in x.bands.items():
        if slot == 2:
            shifted = poly.substitute([affine(2, const=2, u=1, v=1)], 2)
            t1 = shifted.map_values(lambda a: contract("xm,myz->xyz", a, d3), shape3)
            t2 = shifted.map_values(lambda a: contract("xm,mzy->xyz", a, d3), shape3)
            g = t1.times_int_poly(affine(2, const=-1, u=-1)) + t2.times_int_poly(affine(2, const=1, v=1))
        elif slot == 1:
            moved = poly.substitute([affine(2, v=1)], 2)
            t1 = moved.map_values(lambda a: contract("mz,mxy->xyz", a, d3), shape3)
            t2 = moved.map_values(lambda a: contract("mz,myx->xyz", a, d3), shape3)
            g = t1.times_int_poly(affine(2, const=1 - d, u=1, v=1)) + t2.times_int_poly(affine(2, const=1, u=1))
        else:
            raise ValueError("slot must be 1 or 2")
        key = d - 2
        out[key] = out[key] + g if key in out else g
    return Banded3(field, shape3, out)


def ad_banded(a: Algebra, x: LaurentVector, t: Banded2, side: int) -> Banded2:
    """Adjoint action of an element of L on one slot of a banded 2-tensor."""
    field = a.field
    n = a.dim
    out: dict[int, BandPoly] = {}
    for k, vec in x.terms.items():
        lmat = a.left_mult_of(vec)
        rmat = a.right_mult_of(vec)
        for d, poly in t.bands.items():
            if side == 1:
                tl = poly.map_values(lambda arr: lmat @ arr, (n, n)).times_int_poly(affine(1, const=k))
                tr = poly.map_values(lambda arr: rmat @ arr, (n, n)).times_int_poly(affine(1, const=d, u=-1))
            elif side == 2:
                shifted = poly.substitute([affine(1, const=1 - k, u=1)], 1)
                tl = shifted.map_values(lambda arr: arr @ lmat.T, (n, n)).times_int_poly(affine(1, const=k))
                tr = shifted.map_values(lambda arr: arr @ rmat.T, (n, n)).times_int_poly(
                    affine(1, const=1 - k, u=1)
                )
            else:
                raise ValueError("side must be 1 or 2")
            g = tl - tr
            key = d + k - 1
            out[key] = out[key] + g if key in out else g
    return Banded2(field, (n, n), out)


_COMBINE_SPECS = {
    # placement -> (plus einsum, minus einsum)
    "12_13": ("ab,cd,acg->gbd", "ab,cd,cag->gbd"),
    "12_23": ("ab,cd,bcg->agd", "ab,cd,cbg->agd"),
    "13_23": ("ab,cd,bdg->acg", "ab,cd,dbg->acg"),
}


def bracket_combine(a: Algebra, x: Banded2, y: Banded2, placement: str) -> Banded3:
    """Pair two banded 2-tensors into three slots, bracketing the legs that
    collide (slot 1 for 12_13, slot 2 for 12_23, slot 3 for 13_23)."""
    spec_plus, spec_minus = _COMBINE_SPECS[placement]
    c = a.c
    n = a.dim
    shape3 = (n, n, n)
    out: dict[int, BandPoly] = {}
    for dx, f in x.bands.items():
        for dy, g in y.bands.items():
            big = dx + dy - 1
            if placement == "12_13":
                f2 = f.substitute([affine(2, u=1)], 2)
                g2 = g.substitute([affine(2, v=1)], 2)
                w_plus = affine(2, const=dx, u=-1)
                w_minus = affine(2, const=dy, v=-1)
            elif placement == "12_23":
                f2 = f.substitute([affine(2, const=1 - dy, u=1, v=1)], 2)
                g2 = g.substitute([affine(2, v=1)], 2)
                w_plus = affine(2, const=1 - dy, u=1, v=1)
                w_minus = affine(2, const=dy, v=-1)
            else:  # 13_23
                f2 = f.substitute([affine(2, const=1 - dy, u=1, v=1)], 2)
                g2 = g.substitute([affine(2, const=dy, u=-1)], 2)
                w_plus = affine(2, const=1 - dy, u=1, v=1)
                w_minus = affine(2, const=dy, u=-1)
            plus = f2.combine(g2, lambda F, G: contract(spec_plus, F, G, c), shape3)
            minus = f2.combine(g2, lambda F, G: contract(spec_minus, F, G, c), shape3)
            h = plus.times_int_poly(w_plus) - minus.times_int_poly(w_minus)
            out[big] = out[big] + h if big in out else h
    return Banded3(a.field, shape3, out)


def affinize_r(a: Algebra, r, *, verify: bool = True) -> Banded2:
    """The canonical lift of a finite 2-tensor: one band of total degree -1
    with constant coefficient r (components r at every (i, -i-1))."""
    if verify and not check_novikov(a).passed:
        raise NotNovikov("base algebra is not Novikov")
    rr = _r_array(r)
    n = a.dim
    return Banded2(a.field, (n, n), {-1: BandPoly.const(a.field, 1, rr.copy())})


def coboundary_delta(a: Algebra, r_l: Banded2, x: LaurentVector) -> Banded2:
    """delta(x) = (ad_x (x)^ id + id (x)^ ad_x) r_L."""
    return ad_banded(a, x, r_l, 1) + ad_banded(a, x, r_l, 2)


# ---------------------------------------------------------------------------
# completed checks

DEFAULT_PROBES = (0, 1, 2)
JACOBI_PROBE_TRIPLES = ((1, 0, 0), (1, 1, 0), (2, 0, 0))


def check_laurent_jacobi(
    a: Algebra, degree_triples=JACOBI_PROBE_TRIPLES, *, subject: str = "laurent jacobi"
) -> Report:
    """Jacobi identity of the affinized bracket at the given degree triples,
    over all basis triples."""
    rb = ReportBuilder(a.field, subject)
    names = a.basis.names
    n = a.dim
    for (di, dj, dk) in degree_triples:
        for i, j, k in iproduct(range(n), repeat=3):
            x = LaurentVector.basis_term(a.field, n, i, di)
            y = LaurentVector.basis_term(a.field, n, j, dj)
            z = LaurentVector.basis_term(a.field, n, k, dk)
            jac = (
                laurent_bracket(a, laurent_bracket(a, x, y), z)
                + laurent_bracket(a, laurent_bracket(a, z, x), y)
                + laurent_bracket(a, laurent_bracket(a, y, z), x)
            )
            residual = zeros(a.field, n) if jac.is_zero else next(iter(jac.terms.values()))
            rb.check("jacobi", (names[i], names[j], names[k], (di, dj, dk)), residual)
    return rb.build()


def check_completed_lie_coalgebra(coalg: Coalgebra, probe_degrees=DEFAULT_PROBES) -> Report:
    """Skewsymmetry of the affinized coproduct plus the completed co-Jacobi
    residual, tested exactly as banded tensors at each probe degree."""
    rb = ReportBuilder(coalg.field, "completed lie coalgebra")
    names = coalg.basis.names
    n = coalg.dim
    for k in probe_degrees:
        for g in range(n):
            x = LaurentVector.basis_term(coalg.field, n, g, k)
            dx = delta_banded(coalg, x)
            rb.flag("co_skew", (dx + dx.twist()).is_zero, (names[g], k), "delta != -twist(delta)")
            t1 = extend_delta_slot(coalg, dx, 2)
            residual = t1 - t1.swap12() - extend_delta_slot(coalg, dx, 1)
            rb.flag("co_jacobi", residual.is_zero, (names[g], k), "co-jacobi residual is a nonzero band")
    return rb.build()


def cocycle_residual_banded(
    a: Algebra, coalg: Coalgebra, x: LaurentVector, y: LaurentVector
) -> Banded2:
    lhs = delta_banded(coalg, laurent_bracket(a, x, y))
    dy = delta_banded(coalg, y)
    dx = delta_banded(coalg, x)
    return (
        lhs
        - ad_banded(a, x, dy, 1)
        - ad_banded(a, x, dy, 2)
        + ad_banded(a, y, dx, 1)
        + ad_banded(a, y, dx, 2)
    )


def check_completed_lie_bialgebra(
    a: Algebra, coalg: Coalgebra, probe_degrees=DEFAULT_PROBES
) -> Report:
    """Layered completed verdict: Jacobi probes, completed coalgebra probes,
    and the cocycle residual on probe degree pairs.  Bit-equal to the finite
    bialgebra verdict (both directions are exercised by the test suite)."""
    reports = [
        check_laurent_jacobi(a),
        check_completed_lie_coalgebra(coalg, probe_degrees),
    ]
    rb = ReportBuilder(a.field, "completed cocycle")
    names = a.basis.names
    n = a.dim
    for j, k in iproduct(probe_degrees, repeat=2):
        for i1, i2 in iproduct(range(n), repeat=2):
            x = LaurentVector.basis_term(a.field, n, i1, j)
            y = LaurentVector.basis_term(a.field, n, i2, k)
            residual = cocycle_residual_banded(a, coalg, x, y)
            rb.flag(
                "cocycle",
                residual.is_zero,
                (names[i1], j, names[i2], k),
                "cocycle residual is a nonzero band",
            )
    reports.append(rb.build())
    return combined("completed lie bialgebra", reports)


def cybe_residual_banded(a: Algebra, r_l: Banded2) -> Banded3:
    return (
        bracket_combine(a, r_l, r_l, "12_13")
        + bracket_combine(a, r_l, r_l, "12_23")
        + bracket_combine(a, r_l, r_l, "13_23")
    )


def check_completed_cybe(a: Algebra, r_l: Banded2) -> Report:
    """Skewsymmetry and the completed classical Yang-Baxter residual."""
    rb = ReportBuilder(a.field, "completed cybe")
    rb.flag("skew", (r_l + r_l.twist()).is_zero, (), "r_L is not skewsymmetric")
    rb.flag("cybe", cybe_residual_banded(a, r_l).is_zero, (), "nonzero residual band")
    return rb.build()


def cross_check_coboundary_routes(
    a: Algebra, r, probe_degrees=DEFAULT_PROBES, *, verify: bool = True
) -> Report:
    """Band-by-band equality of the two coproduct constructions: the
    affinization of the negated coboundary coproduct versus the adjoint
    action of the lifted two-tensor."""
    rr = _r_array(r)
    neg = Coalgebra(a.field, a.basis, -coboundary_coproduct(a, rr, verify=verify).d)
    r_l = affinize_r(a, rr, verify=False)
    rb = ReportBuilder(a.field, "coboundary route comparison")
    names = a.basis.names
    n = a.dim
    for k in probe_degrees:
        for g in range(n):
            x = LaurentVector.basis_term(a.field, n, g, k)
            lhs = delta_banded(neg, x)
            rhs = coboundary_delta(a, r_l, x)
            rb.flag("routes_agree", (lhs - rhs).is_zero, (names[g], k), "the two coproducts differ")
    return rb.build()


# ---------------------------------------------------------------------------
# finite-dimensional path


def induced_lie_finite(a: Algebra, b: Algebra, *, verify: bool = True) -> Algebra:
    """Lie bracket on the product basis:
    [x (x) p, y (x) q] = xy (x) pq - yx (x) qp."""
    if verify:
        if not check_novikov(a).passed:
            raise NotNovikov("left factor is not Novikov")
        if not check_right_novikov(b).passed:
            raise NotRightNovikov("right factor is not right Novikov")
    na, nb = a.dim, b.dim
    t = contract("ijg,pqs->ipjqgs", a.c, b.c)
    cl = t - t.transpose(2, 3, 0, 1, 4, 5)
    c = cl.reshape(na * nb, na * nb, na * nb)
    out = Algebra(a.field, a.basis.tensor(b.basis), c)
    if verify:
        assert check_lie(out).passed
        out = Algebra(a.field, out.basis, c, frozenset({"lie"}))
    return out


def finite_right_coproduct(b: Algebra, form: BilinearForm) -> Coalgebra:
    """Dualize the right Novikov product through a nondegenerate invariant
    form (finite-dimensional counterpart of the Laurent coproduct)."""
    if not form.nondegenerate:
        raise DegenerateForm("form is degenerate")
    w = form.matrix
    winv = inverse(b.field, w)
    d = contract("xu,yv,uvm,pm->pxy", winv, winv, b.c, w)
    return Coalgebra(b.field, b.basis, d)


def finite_delta(coalg_a: Coalgebra, b: Algebra, form: BilinearForm) -> Coalgebra:
    """The induced coproduct on the product basis for finite-dimensional B:
    antisymmetrized interleaving of the two coproducts."""
    db = finite_right_coproduct(b, form).d
    da = coalg_a.d
    na, nb = coalg_a.dim, b.dim
    t = contract("ixz,pyw->ipxyzw", da, db)  # (x,y) first leg, (z,w) second leg
    t = t - t.transpose(0, 1, 4, 5, 2, 3)
    d = t.reshape(na * nb, na * nb, na * nb)
    return Coalgebra(coalg_a.field, coalg_a.basis.tensor(b.basis), d)


# ---------------------------------------------------------------------------
# graded quasi-Frobenius structures

GRADED_PROBE_PAIRS = ((1, 0), (0, 1))


def graded_form_value(omega: BilinearForm, x: LaurentVector, y: LaurentVector) -> Scalar:
    """(u t^i, v t^j) = omega(u, v) [i + j + 1 == 0]."""
    total = omega.field.zero
    for i, u in x.terms.items():
        for j, v in y.terms.items():
            if laurent_pairing(i, j):
                total = total + omega.value(u, v)
    return total


def graded_quasi_frobenius(
    a: Algebra, omega: BilinearForm, probe_pairs=GRADED_PROBE_PAIRS
) -> Report:
    """Skewsymmetric nondegenerate graded form with the cyclic invariance of
    the affinized bracket; the residual is linear in the two free degrees, so
    the default probes decide it."""
    if not omega.nondegenerate:
        raise DegenerateForm("form is degenerate")
    rb = ReportBuilder(a.field, "graded quasi-frobenius")
    rb.flag("skewsymmetric", omega.skewsymmetric, (), "base form is not skewsymmetric")
    rb.flag("nondegenerate", omega.nondegenerate, (), "base form is degenerate")
    names = a.basis.names
    n = a.dim
    for m, nn in probe_pairs:
        k = -m - nn
        for i, j, l in iproduct(range(n), repeat=3):
            x = LaurentVector.basis_term(a.field, n, i, m)
            y = LaurentVector.basis_term(a.field, n, j, nn)
            z = LaurentVector.basis_term(a.field, n, l, k)
            residual = (
                graded_form_value(omega, laurent_bracket(a, x, y), z)
                + graded_form_value(omega, laurent_bracket(a, z, x), y)
                + graded_form_value(omega, laurent_bracket(a, y, z), x)
            )
            rb.check("cyclic_invariance", (names[i], names[j], names[l], (m, nn, k)), residual)
    return rb.build()


def quasi_frobenius_equivalence(a: Algebra, omega: BilinearForm) -> Report:
    """The four-way equivalence: finite quasi-Frobenius form, skew solution of
    the finite Yang-Baxter equation, banded completed solution, and graded
    quasi-Frobenius form.  All four verdicts are reported plus an agreement
    flag."""
    if not omega.nondegenerate:
        raise DegenerateForm("form is degenerate")
    v1 = check_quasi_frobenius(a, omega).passed
    r = form_to_r(a, omega)
    v2 = r.skewsymmetric and is_zero(nybe_residual(a, r, verify=False))
    r_l = affinize_r(a, r, verify=False)
    v3 = check_completed_cybe(a, r_l).passed
    v4 = graded_quasi_frobenius(a, omega).passed
    rb = ReportBuilder(a.field, "quasi-frobenius equivalence")
    rb.flag("finite_form", v1, (), "finite quasi-frobenius check fails")
    rb.flag("finite_ybe", v2, (), "dual-basis tensor is not a skew solution")
    rb.flag("completed_ybe", v3, (), "banded completed solution check fails")
    rb.flag("graded_form", v4, (), "graded quasi-frobenius check fails")
    rb.flag("all_equivalent", len({v1, v2, v3, v4}) == 1, (), f"verdicts differ: {(v1, v2, v3, v4)}")
    return rb.build()


# ---------------------------------------------------------------------------
# dense window oracle
#
# Independent evaluation of everything above by literal term-by-term sums
# over explicit degree ranges; used to validate the banded engine.

Dense2 = dict[tuple[int, int], np.ndarray]
Dense3 = dict[tuple[int, int, int], np.ndarray]


def _dense_add(store: dict, key: tuple, val: np.ndarray) -> None:
    store[key] = store[key] + val if key in store else val


def _dense_clean(store: dict) -> dict:
    return {k: v for k, v in store.items() if not is_zero(v)}


def window_truncate(x: Banded2 | Banded3, lo: int, hi: int) -> dict:
    return x.window(lo, hi)


def dense_delta(coalg: Coalgebra, x: LaurentVector, lo: int, hi: int) -> Dense2:
    out: Dense2 = {}
    for k, vec in x.terms.items():
        da = coalg.delta_of(vec)
        for i in range(-hi - 2, -lo - 1):  # -i-2 in [lo, hi]
            if lo <= k + i <= hi:
                _dense_add(out, (-i - 2, k + i), coalg.field.from_int(i + 1) * da)
        for i in range(lo - k, hi - k + 1):  # k+i in [lo, hi]
            if lo <= -i - 2 <= hi:
                _dense_add(out, (k + i, -i - 2), coalg.field.from_int(-(i + 1)) * da.T)
    return _dense_clean(out)


def dense_extend(coalg: Coalgebra, x: Dense2, slot: int, lo: int, hi: int) -> Dense3:
    d3 = coalg.d
    out: Dense3 = {}
    for (p, q), arr in x.items():
        deg = q if slot == 2 else p
        for i in range(-hi - 2, -lo - 1):
            if not (lo <= deg + i <= hi):
                continue
            if slot == 2:
                if not (lo <= p <= hi):
                    continue
                plus = contract("xm,myz->xyz", arr, d3)
                minus = contract("xm,mzy->xyz", arr, d3)
                f = coalg.field.from_int(i + 1)
                _dense_add(out, (p, -i - 2, q + i), f * plus)
                _dense_add(out, (p, q + i, -i - 2), -f * minus)
            else:
                if not (lo <= q <= hi):
                    continue
                plus = contract("mz,mxy->xyz", arr, d3)
                minus = contract("mz,myx->xyz", arr, d3)
                f = coalg.field.from_int(i + 1)
                _dense_add(out, (-i - 2, p + i, q), f * plus)
                _dense_add(out, (p + i, -i - 2, q), -f * minus)
    return _dense_clean(out)


def dense_ad(a: Algebra, x: LaurentVector, t: Dense2, side: int, lo: int, hi: int) -> Dense2:
    out: Dense2 = {}
    for k, vec in x.terms.items():
        lmat = a.left_mult_of(vec)
        rmat = a.right_mult_of(vec)
        for (p, q), arr in t.items():
            if side == 1:
                val = a.field.from_int(k) * (lmat @ arr) - a.field.from_int(p) * (rmat @ arr)
                key = (k + p - 1, q)
            else:
                val = a.field.from_int(k) * (arr @ lmat.T) - a.field.from_int(q) * (arr @ rmat.T)
                key = (p, k + q - 1)
            if lo <= key[0] <= hi and lo <= key[1] <= hi:
                _dense_add(out, key, val)
    return _dense_clean(out)


def dense_rl(field: Field, r: np.ndarray, lo: int, hi: int) -> Dense2:
    out: Dense2 = {}
    for i in range(lo, hi + 1):
        if lo <= -i - 1 <= hi:
            out[(i, -i - 1)] = r.copy()
    return _dense_clean(out)


def dense_bracket_combine(a: Algebra, x: Dense2, y: Dense2, placement: str, lo: int, hi: int) -> Dense3:
    spec_plus, spec_minus = _COMBINE_SPECS[placement]
    out: Dense3 = {}
    for (p1, q1), f in x.items():
        for (p2, q2), g in y.items():
            if placement == "12_13":
                key = (p1 + p2 - 1, q1, q2)
                w_plus, w_minus = p1, p2
            elif placement == "12_23":
                key = (p1, q1 + p2 - 1, q2)
                w_plus, w_minus = q1, p2
            else:
                key = (p1, p2, q1 + q2 - 1)
                w_plus, w_minus = q1, q2
            if not all(lo <= kk <= hi for kk in key):
                continue
            val = a.field.from_int(w_plus) * contract(spec_plus, f, g, a.c) - a.field.from_int(
                w_minus
            ) * contract(spec_minus, f, g, a.c)
            _dense_add(out, key, val)
    return _dense_clean(out)


def _dense_equal(x: dict, y: dict) -> bool:
    keys = set(x) | set(y)
    for k in keys:
        a = x.get(k)
        b = y.get(k)
        if a is None or b is None:
            return False
        if not arrays_equal(a, b):
            return False
    return True


def oracle_window_check(kind: str, *, window: tuple[int, int] = (-8, 8), **kw) -> Report:
    """Compare a banded computation against the dense term-by-term oracle on
    a degree window.  Kinds: delta, co_jacobi, cocycle, cybe."""
    lo, hi = window
    pad = (hi - lo) + 6  # wide enough for every intermediate degree range below
    plo, phi = lo - pad, hi + pad
    field = kw.get("coalg", kw.get("algebra")).field
    rb = ReportBuilder(field, f"window oracle: {kind}")
    if kind == "delta":
        coalg, x = kw["coalg"], kw["x"]
        banded = delta_banded(coalg, x).window(lo, hi)
        dense = dense_delta(coalg, x, lo, hi)
        rb.flag("window_agrees", _dense_equal(banded, dense), (kind,), "banded != dense on window")
    elif kind == "co_jacobi":
        coalg, x = kw["coalg"], kw["x"]
        dx = delta_banded(coalg, x)
        t1 = extend_delta_slot(coalg, dx, 2)
        banded = (t1 - t1.swap12() - extend_delta_slot(coalg, dx, 1)).window(lo, hi)
        ddx = dense_delta(coalg, x, plo, phi)
        d1 = dense_extend(coalg, ddx, 2, lo, hi)
        d1s = {(q, p, s): v.transpose(1, 0, 2) for (p, q, s), v in d1.items()}
        d3 = dense_extend(coalg, ddx, 1, lo, hi)
        dense: Dense3 = {}
        for store, sign in ((d1, 1), (d1s, -1), (d3, -1)):
            for k, v in store.items():
                _dense_add(dense, k, sign * v)
        rb.flag("window_agrees", _dense_equal(banded, _dense_clean(dense)), (kind,), "banded != dense")
    elif kind == "cocycle":
        a, coalg, x, y = kw["algebra"], kw["coalg"], kw["x"], kw["y"]
        banded = cocycle_residual_banded(a, coalg, x, y).window(lo, hi)
        dy = dense_delta(coalg, y, plo, phi)
        dx = dense_delta(coalg, x, plo, phi)
        dense: Dense2 = {}
        for k, v in dense_delta(coalg, laurent_bracket(a, x, y), lo, hi).items():
            _dense_add(dense, k, v)
        for store, sign in (
            (dense_ad(a, x, dy, 1, lo, hi), -1),
            (dense_ad(a, x, dy, 2, lo, hi), -1),
            (dense_ad(a, y, dx, 1, lo, hi), 1),
            (dense_ad(a, y, dx, 2, lo, hi), 1),
        ):
            for k, v in store.items():
                _dense_add(dense, k, sign * v)
        rb.flag("window_agrees", _dense_equal(banded, _dense_clean(dense)), (kind,), "banded != dense")
    elif kind == "cybe":
        a, r = kw["algebra"], _r_array(kw["r"])
        r_l = affinize_r(a, r, verify=False)
        banded = cybe_residual_banded(a, r_l).window(lo, hi)
        drl = dense_rl(a.field, r, plo, phi)
        dense: Dense3 = {}
        for placement in ("12_13", "12_23", "13_23"):
            for k, v in dense_bracket_combine(a, drl, drl, placement, lo, hi).items():
                _dense_add(dense, k, v)
        rb.flag("window_agrees", _dense_equal(banded, _dense_clean(dense)), (kind,), "banded != dense")
    else:
        raise ValueError(f"unknown oracle kind {kind!r}")
    return rb.build()
