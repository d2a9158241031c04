"""Yang-Baxter machinery for Novikov algebras: two-tensor placements, the
NYBE residual, operator forms, O-operators, and quasi-Frobenius forms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct

import numpy as np

from .algebras import Algebra, PreNovikovAlgebra, associated_novikov, check_novikov
from .core import BilinearForm, contract, inverse, is_zero, zeros
from .errors import DegenerateForm, NotNovikov, NotOOperator, NotRepresentation
from .fields import Field
from .report import Report, ReportBuilder
from .representations import Representation, check_representation, dual_representation, semidirect_product


@dataclass(frozen=True)
class RTensor:
    """An element of A (x) A as an n x n coefficient array."""

    field: Field
    r: np.ndarray

    @cached_property
    def skewsymmetric(self) -> bool:
        return is_zero(self.r + self.r.T)

    @property
    def dim(self) -> int:
        return self.r.shape[0]


def _r_array(r) -> np.ndarray:
    return r.r if isinstance(r, RTensor) else r


# ---------------------------------------------------------------------------
# two-tensor placements into A (x) A (x) A
#
# For r = sum X[a,b] e_a (x) e_b and r' = sum Y[c,d] e_c (x) e_d, the named
# placements put the two tensors into three slots and multiply the legs that
# collide.  These index conventions are pinned by dedicated unit tests against
# a brute-force expansion.

_PLACEMENTS = {
    "12*13": "ab,cd,acg->gbd",  # (x . x') (x) y (x) y'
    "12*23": "ab,cd,bcg->agd",  # x (x) (y . x') (x) y'
    "13*23": "ab,cd,bdg->acg",  # x (x) x' (x) (y . y')
    "13*12": "ab,cd,acg->gdb",  # (x . x') (x) y' (x) y
    "23*13": "ab,cd,bdg->cag",  # x' (x) x (x) (y . y')
}


def place_product(constants: np.ndarray, x: np.ndarray, y: np.ndarray, placement: str) -> np.ndarray:
    return contract(_PLACEMENTS[placement], x, y, constants)


def nybe_residual(a: Algebra, r, *, verify: bool = True) -> np.ndarray:
    """r13.r23 + r12*r23 + r13.r12 (zero iff r solves the Yang-Baxter-type
    equation for the Novikov product)."""
    if verify and not check_novikov(a).passed:
        raise NotNovikov("base algebra is not Novikov")
    rr = _r_array(r)
    return (
        place_product(a.c, rr, rr, "13*23")
        + place_product(a.star_c, rr, rr, "12*23")
        + place_product(a.c, rr, rr, "13*12")
    )


def check_nybe(a: Algebra, r, *, verify: bool = True) -> Report:
    rr = _r_array(r)
    rb = ReportBuilder(a.field, "nybe")
    rb.flag("skewsymmetric", is_zero(rr + rr.T), (), "r + tau(r) != 0")
    rb.check("residual_zero", (), nybe_residual(a, rr, verify=verify))
    return rb.build()


# ---------------------------------------------------------------------------
# operator form of the equation


def t_map(r) -> np.ndarray:
    """Matrix of the contraction map dual -> algebra induced by r; column g
    is the image of the g-th dual basis vector."""
    return _r_array(r).T.copy()


def check_t_identity(a: Algebra, r, *, verify: bool = True) -> Report:
    """Operator identity equivalent (for skewsymmetric r) to the NYBE:
    T(f).T(g) = T(Lstar*(Tf) g) - T(R*(Tg) f) on all dual basis pairs."""
    if verify and not check_novikov(a).passed:
        raise NotNovikov("base algebra is not Novikov")
    rr = _r_array(r)
    n = a.dim
    t = rr.T
    rb = ReportBuilder(a.field, "t-operator identity")
    names = a.basis.names
    for i, j in iproduct(range(n), repeat=2):
        tf, tg = t[:, i], t[:, j]
        lhs = a.product(tf, tg)
        arg1 = -contract("a,aml,l->m", tf, a.star_c, _unit(a.field, n, j))  # Lstar*(Tf) g
        arg2 = -contract("a,mal,l->m", tg, a.c, _unit(a.field, n, i))       # R*(Tg) f
        residual = lhs - t @ arg1 + t @ arg2
        rb.check("t_identity", (names[i] + "*", names[j] + "*"), residual)
    return rb.build()


def _unit(field: Field, n: int, i: int) -> np.ndarray:
    v = zeros(field, n)
    v[i] = field.one
    return v


# ---------------------------------------------------------------------------
# O-operators


@dataclass(frozen=True)
class OOperator:
    rep: Representation
    t: np.ndarray  # (dim A, dim V): columns are images of module basis vectors

    def __post_init__(self):
        n, m = self.rep.algebra.dim, self.rep.module_dim
        if self.t.shape != (n, m):
            from .errors import ShapeMismatch

            raise ShapeMismatch(f"operator shape {self.t.shape} != {(n, m)}")


def check_o_operator(op: OOperator, *, verify: bool = True) -> Report:
    if verify:
        rep = check_representation(op.rep)
        if not rep.passed:
            raise NotRepresentation(rep.render())
    rho, t = op.rep, op.t
    a = rho.algebra
    m = rho.module_dim
    rb = ReportBuilder(a.field, "o-operator identity")
    for i, j in iproduct(range(m), repeat=2):
        tu, tv = t[:, i], t[:, j]
        lhs = a.product(tu, tv)
        arg1 = rho.left_of(tu)[:, j]   # l(Tu) v
        arg2 = rho.right_of(tv)[:, i]  # r(Tv) u
        rb.check("o_identity", (rho.module.names[i], rho.module.names[j]), lhs - t @ arg1 - t @ arg2)
    return rb.build()


def o_operator_to_pre_novikov(op: OOperator) -> PreNovikovAlgebra:
    """u|>v = l(Tu)v, u<|v = r(Tv)u on the module."""
    rep = check_o_operator(op)
    if not rep.passed:
        raise NotOOperator(rep.render())
    rho, t = op.rep, op.t
    right = contract("ai,agj->ijg", t, rho.left)
    left = contract("aj,agi->ijg", t, rho.right)
    out = PreNovikovAlgebra(rho.field, rho.module, left, right)
    from .algebras import check_pre_novikov

    assert check_pre_novikov(out).passed
    return out


def o_operator_lift(op: OOperator) -> tuple[Algebra, RTensor]:
    """Lift through the semidirect product by the dual module: returns the
    ambient algebra and the skew two-tensor whose NYBE residual vanishes iff
    the operator identity holds."""
    rho, t = op.rep, op.t
    rep = check_representation(rho)
    if not rep.passed:
        raise NotRepresentation(rep.render())
    ambient = semidirect_product(dual_representation(rho))
    n, m = rho.algebra.dim, rho.module_dim
    rt = zeros(rho.field, (n + m, n + m))
    rt[:n, n:] = t
    r = RTensor(rho.field, rt - rt.T)
    return ambient, r


def pre_novikov_canonical_solution(p: PreNovikovAlgebra) -> tuple[Algebra, RTensor, BilinearForm]:
    """The canonical skewsymmetric solution attached to a pre-Novikov algebra:
    identity O-operator, lifted to A + A*, with the standard skew pairing."""
    a = associated_novikov(p)  # raises NotPreNovikov
    rho = Representation(a, p.basis, p.right.transpose(0, 2, 1).copy(), p.left.transpose(1, 2, 0).copy())
    n = a.dim
    ident = zeros(a.field, (n, n))
    for i in range(n):
        ident[i, i] = a.field.one
    ambient, r = o_operator_lift(OOperator(rho, ident))
    w = zeros(a.field, (2 * n, 2 * n))
    for i in range(n):
        w[i, n + i] = a.field.one
        w[n + i, i] = -a.field.one
    omega = BilinearForm(a.field, w)
    assert is_zero(nybe_residual(ambient, r, verify=False))
    assert check_quasi_frobenius(ambient, omega).passed
    return ambient, r, omega


# ---------------------------------------------------------------------------
# invariant and quasi-Frobenius forms


def check_invariant_form(a: Algebra, form: BilinearForm, flavor: str = "novikov") -> Report:
    """Invariance of a bilinear form: B(xy, z) = -B(y, x*z + z*x) for the
    Novikov flavor, (xy, z) = -(x, yz + zy) for the right Novikov flavor."""
    w = form.matrix
    c = a.c
    if flavor == "novikov":
        residual = contract("abm,mc->abc", c, w) + contract("acm,bm->abc", a.star_c, w)
    elif flavor == "right_novikov":
        residual = contract("abm,mc->abc", c, w) + contract("bcm,am->abc", c + c.transpose(1, 0, 2), w)
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    rb = ReportBuilder(a.field, f"{flavor} invariant form")
    names = a.basis.names
    for i, j, k in iproduct(range(a.dim), repeat=3):
        rb.check("invariance", (names[i], names[j], names[k]), residual[i, j, k])
    rb.note(f"symmetric={form.symmetric} skewsymmetric={form.skewsymmetric} nondegenerate={form.nondegenerate}")
    return rb.build()


def check_quasi_frobenius(a: Algebra, omega: BilinearForm) -> Report:
    """Skewsymmetric nondegenerate omega with
    omega(xy, z) - omega(x*z + z*x, y) + omega(zy, x) = 0."""
    w = omega.matrix
    residual = (
        contract("abm,mc->abc", a.c, w)
        - contract("acm,mb->abc", a.star_c, w)
        + contract("cbm,ma->abc", a.c, w)
    )
    rb = ReportBuilder(a.field, "quasi-frobenius form")
    rb.flag("skewsymmetric", omega.skewsymmetric, (), "form is not skewsymmetric")
    rb.flag("nondegenerate", omega.nondegenerate, (), "form is degenerate")
    names = a.basis.names
    for i, j, k in iproduct(range(a.dim), repeat=3):
        rb.check("cyclic_invariance", (names[i], names[j], names[k]), residual[i, j, k])
    return rb.build()


def form_to_r(a: Algebra, omega: BilinearForm) -> RTensor:
    """r = sum e_i (x) f_i with {f_i} the form-dual basis (omega(e_i, f_j)
    is the identity); coefficient matrix is the inverse-transpose Gram."""
    if not omega.nondegenerate:
        raise DegenerateForm("form is degenerate")
    return RTensor(a.field, inverse(a.field, omega.matrix).T)


def r_to_form(a: Algebra, r) -> BilinearForm:
    """Inverse of :func:`form_to_r`; needs the coefficient matrix invertible."""
    rr = _r_array(r)
    try:
        w = inverse(a.field, rr.T)
    except DegenerateForm:
        raise DegenerateForm("two-tensor coefficient matrix is singular") from None
    return BilinearForm(a.field, w)
