"""Algebras over structure constants, class checkers, and constructions.

Structure constants follow ``e_a * e_b = sum_g c[a, b, g] e_g``.  Every
identity in scope is multilinear, so checking it on all basis triples is
complete; checkers report at most 10 violation witnesses with exact residuals.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct

import numpy as np

from .core import Basis, arrays_equal, contract, is_zero, zeros
from .errors import NotCommAssoc, NotDerivation, NotPreNovikov, NotZinbiel, ShapeMismatch
from .fields import Field
from .report import Report, ReportBuilder

CLASS_NAMES = ("novikov", "right_novikov", "lie", "comm_assoc", "zinbiel")


@dataclass(frozen=True)
class Algebra:
    """A binary product on a named basis, given by a rank-3 constants tensor."""

    field: Field
    basis: Basis
    c: np.ndarray
    class_claims: frozenset[str] = frozenset()

    def __post_init__(self):
        n = self.basis.dim
        if self.c.shape != (n, n, n):
            raise ShapeMismatch(f"constants shape {self.c.shape} != {(n, n, n)}")
        unknown = set(self.class_claims) - set(CLASS_NAMES)
        if unknown:
            raise ValueError(f"unknown class claims {sorted(unknown)}")

    @property
    def dim(self) -> int:
        return self.basis.dim

    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return contract("a,b,abg->g", x, y, self.c)

    @cached_property
    def left_mult(self) -> np.ndarray:
        """L[a][g, m]: matrix of left multiplication by e_a."""
        return self.c.transpose(0, 2, 1)

    @cached_property
    def right_mult(self) -> np.ndarray:
        """R[a][g, m]: matrix of right multiplication by e_a."""
        return self.c.transpose(1, 2, 0)

    @cached_property
    def star_c(self) -> np.ndarray:
        """Constants of the symmetrized product x*y + y*x."""
        return self.c + self.c.transpose(1, 0, 2)

    def left_mult_of(self, x: np.ndarray) -> np.ndarray:
        return contract("a,agm->gm", x, self.left_mult)

    def right_mult_of(self, x: np.ndarray) -> np.ndarray:
        return contract("a,agm->gm", x, self.right_mult)


def zero_algebra(field: Field, basis: Basis) -> Algebra:
    n = basis.dim
    return Algebra(field, basis, zeros(field, (n, n, n)))


def opposite(a: Algebra) -> Algebra:
    """Swap the product arguments; Novikov algebras map to right Novikov ones."""
    swap = {"novikov": "right_novikov", "right_novikov": "novikov"}
    claims = frozenset(swap.get(cl, cl) for cl in a.class_claims)
    return Algebra(a.field, a.basis, a.c.transpose(1, 0, 2).copy(), claims)


def star_product(a: Algebra) -> Algebra:
    return Algebra(a.field, a.basis, a.star_c.copy())


def multiplication_operators(a: Algebra) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-basis-element matrices (L, R, L+R)."""
    return a.left_mult.copy(), a.right_mult.copy(), (a.left_mult + a.right_mult).copy()


def commutator_algebra(a: Algebra) -> Algebra:
    """The bracket x*y - y*x on the same basis."""
    return Algebra(a.field, a.basis, a.c - a.c.transpose(1, 0, 2))


# ---------------------------------------------------------------------------
# checkers


def _witness_scan(rb: ReportBuilder, identity: str, basis: Basis, residual: np.ndarray, arity: int) -> None:
    """residual has shape (n,)*arity + (n,): one residual vector per tuple."""
    names = basis.names
    for idx in iproduct(*(range(basis.dim) for _ in range(arity))):
        rb.check(identity, tuple(names[i] for i in idx), residual[idx])


def check_novikov(a: Algebra) -> Report:
    """Left symmetry and right commutativity of the product."""
    c = a.c
    t1 = contract("abm,mcg->abcg", c, c)  # (x y) z
    t2 = contract("bcm,amg->abcg", c, c)  # x (y z)
    left_sym = t1 - t2 - t1.transpose(1, 0, 2, 3) + t2.transpose(1, 0, 2, 3)
    right_comm = t1 - t1.transpose(0, 2, 1, 3)
    rb = ReportBuilder(a.field, "novikov axioms")
    _witness_scan(rb, "left_symmetry", a.basis, left_sym, 3)
    _witness_scan(rb, "right_commutativity", a.basis, right_comm, 3)
    return rb.build()


def check_right_novikov(a: Algebra) -> Report:
    c = a.c
    t1 = contract("abm,mcg->abcg", c, c)  # (x y) z
    t2 = contract("bcm,amg->abcg", c, c)  # x (y z)
    right_sym = t1 - t2 - t1.transpose(0, 2, 1, 3) + t2.transpose(0, 2, 1, 3)
    left_comm = t2 - t2.transpose(1, 0, 2, 3)
    rb = ReportBuilder(a.field, "right novikov axioms")
    _witness_scan(rb, "right_symmetry", a.basis, right_sym, 3)
    _witness_scan(rb, "left_commutativity", a.basis, left_comm, 3)
    return rb.build()


def check_lie(a: Algebra) -> Report:
    """Alternating bracket ([x, x] = 0, so also skewsymmetric in any
    characteristic) plus the Jacobi identity."""
    c = a.c
    rb = ReportBuilder(a.field, "lie axioms")
    for i in range(a.dim):
        rb.check("alternating", (a.basis.names[i],), c[i, i])
    _witness_scan(rb, "skewsymmetry", a.basis, c + c.transpose(1, 0, 2), 2)
    t1 = contract("abm,mcg->abcg", c, c)  # [[x,y],z]
    jac = t1 + t1.transpose(2, 0, 1, 3) + t1.transpose(1, 2, 0, 3)
    _witness_scan(rb, "jacobi", a.basis, jac, 3)
    return rb.build()


def check_comm_assoc(a: Algebra) -> Report:
    c = a.c
    rb = ReportBuilder(a.field, "commutative associative axioms")
    _witness_scan(rb, "commutativity", a.basis, c - c.transpose(1, 0, 2), 2)
    t1 = contract("abm,mcg->abcg", c, c)
    t2 = contract("bcm,amg->abcg", c, c)
    _witness_scan(rb, "associativity", a.basis, t1 - t2, 3)
    return rb.build()


def check_zinbiel(a: Algebra) -> Report:
    """x(yz) = (yx)z + (xy)z."""
    c = a.c
    t1 = contract("abm,mcg->abcg", c, c)
    t2 = contract("bcm,amg->abcg", c, c)
    residual = t2 - t1.transpose(1, 0, 2, 3) - t1
    rb = ReportBuilder(a.field, "zinbiel axiom")
    _witness_scan(rb, "zinbiel", a.basis, residual, 3)
    return rb.build()


CHECKERS = {
    "novikov": check_novikov,
    "right_novikov": check_right_novikov,
    "lie": check_lie,
    "comm_assoc": check_comm_assoc,
    "zinbiel": check_zinbiel,
}


def verify_claims(a: Algebra) -> Report:
    rb = ReportBuilder(a.field, "class claims")
    for cl in sorted(a.class_claims):
        rb.flag(f"claim_{cl}", CHECKERS[cl](a).passed, (cl,), "claimed class fails its checker")
    return rb.build()


# ---------------------------------------------------------------------------
# pre-Novikov algebras (two-product splitting; left product <|, right |>)


@dataclass(frozen=True)
class PreNovikovAlgebra:
    field: Field
    basis: Basis
    left: np.ndarray   # x <| y
    right: np.ndarray  # x |> y

    def __post_init__(self):
        n = self.basis.dim
        for arr in (self.left, self.right):
            if arr.shape != (n, n, n):
                raise ShapeMismatch("pre-Novikov constants must be (n, n, n)")

    @property
    def dim(self) -> int:
        return self.basis.dim


def _pre_novikov_residuals(p: PreNovikovAlgebra):
    lc, rc = p.left, p.right
    both = lc + rc
    # pre1: x|>(y|>z) = (x|>y + x<|y)|>z + y|>(x|>z) - (y|>x + y<|x)|>z
    t_r_r = contract("bcm,amg->abcg", rc, rc)      # x |> (y |> z)
    t_both_r = contract("abm,mcg->abcg", both, rc)  # (x*y) |> z
    pre1 = t_r_r - t_both_r - t_r_r.transpose(1, 0, 2, 3) + t_both_r.transpose(1, 0, 2, 3)
    # pre2: x|>(y<|z) = (x|>y)<|z + y<|(x<|z + x|>z) - (y<|x)<|z
    t_r_l = contract("bcm,amg->abcg", lc, rc)       # x |> (y <| z)
    t_rl = contract("abm,mcg->abcg", rc, lc)        # (x |> y) <| z
    t_l_both = contract("acm,bmg->abcg", both, lc)  # y <| (x * z)
    t_ll = contract("abm,mcg->abcg", lc, lc)        # (x <| y) <| z
    pre2 = t_r_l - t_rl - t_l_both + t_ll.transpose(1, 0, 2, 3)
    # pre3: (x<|y + x|>y)|>z = (x|>z)<|y
    t_rz_l = contract("acm,mbg->abcg", rc, lc)      # (x |> z) <| y
    pre3 = t_both_r - t_rz_l
    # pre4: (x<|y)<|z = (x<|z)<|y
    pre4 = t_ll - t_ll.transpose(0, 2, 1, 3)
    return pre1, pre2, pre3, pre4


def check_pre_novikov(p: PreNovikovAlgebra) -> Report:
    rb = ReportBuilder(p.field, "pre-novikov axioms")
    for name, residual in zip(("pre1", "pre2", "pre3", "pre4"), _pre_novikov_residuals(p)):
        _witness_scan(rb, name, p.basis, residual, 3)
    return rb.build()


def check_l_dendriform(p: PreNovikovAlgebra) -> Report:
    """Only the first two splitting identities (the weaker class)."""
    rb = ReportBuilder(p.field, "l-dendriform axioms")
    pre1, pre2, _, _ = _pre_novikov_residuals(p)
    _witness_scan(rb, "pre1", p.basis, pre1, 3)
    _witness_scan(rb, "pre2", p.basis, pre2, 3)
    return rb.build()


def associated_novikov(p: PreNovikovAlgebra) -> Algebra:
    """x*y = x<|y + x|>y; requires a valid pre-Novikov input."""
    rep = check_pre_novikov(p)
    if not rep.passed:
        raise NotPreNovikov(rep.render())
    out = Algebra(p.field, p.basis, p.left + p.right, frozenset({"novikov"}))
    assert check_novikov(out).passed
    return out


# ---------------------------------------------------------------------------
# derivations and the Gelfand constructions


@dataclass(frozen=True)
class DerivationData:
    """A commutative associative (or Zinbiel) algebra together with a
    derivation matrix D (columns: images of basis vectors)."""

    algebra: Algebra
    derivation: np.ndarray

    def __post_init__(self):
        n = self.algebra.dim
        if self.derivation.shape != (n, n):
            raise ShapeMismatch("derivation matrix must be n x n")

    def derivation_residual(self) -> np.ndarray:
        """D(ab) - D(a)b - aD(b) on basis pairs; shape (n, n, n)."""
        c, d = self.algebra.c, self.derivation
        t0 = contract("abm,gm->abg", c, d)
        t1 = contract("ma,mbg->abg", d, c)
        t2 = contract("mb,amg->abg", d, c)
        return t0 - t1 - t2

    @property
    def is_derivation(self) -> bool:
        return is_zero(self.derivation_residual())


def gelfand_novikov(data: DerivationData) -> Algebra:
    """a*b = a . D(b) on a commutative associative algebra."""
    if not check_comm_assoc(data.algebra).passed:
        raise NotCommAssoc("base algebra is not commutative associative")
    if not data.is_derivation:
        raise NotDerivation("matrix fails the Leibniz rule")
    c = contract("mb,amg->abg", data.derivation, data.algebra.c)
    out = Algebra(data.algebra.field, data.algebra.basis, c, frozenset({"novikov"}))
    assert check_novikov(out).passed
    return out


def gelfand_right_novikov(data: DerivationData) -> Algebra:
    """a*b = D(a) . b on a commutative associative algebra."""
    if not check_comm_assoc(data.algebra).passed:
        raise NotCommAssoc("base algebra is not commutative associative")
    if not data.is_derivation:
        raise NotDerivation("matrix fails the Leibniz rule")
    c = contract("ma,mbg->abg", data.derivation, data.algebra.c)
    out = Algebra(data.algebra.field, data.algebra.basis, c, frozenset({"right_novikov"}))
    assert check_right_novikov(out).passed
    return out


def zinbiel_pre_novikov(data: DerivationData) -> PreNovikovAlgebra:
    """a<|b = D(b).a and a|>b = a.D(b) on a Zinbiel algebra."""
    if not check_zinbiel(data.algebra).passed:
        raise NotZinbiel("base algebra is not Zinbiel")
    if not data.is_derivation:
        raise NotDerivation("matrix fails the Leibniz rule")
    c = data.algebra.c
    left = contract("mb,mag->abg", data.derivation, c)
    right = contract("mb,amg->abg", data.derivation, c)
    out = PreNovikovAlgebra(data.algebra.field, data.algebra.basis, left, right)
    assert check_pre_novikov(out).passed
    return out


# ---------------------------------------------------------------------------
# change of basis (used by the sample generators and isomorphism transports)


def change_of_basis(a: Algebra, g: np.ndarray, names: Basis | None = None) -> Algebra:
    """Transport the product along x -> g x (g invertible, columns = images
    of the old basis vectors expressed in the old basis)."""
    from .core import inverse  # local import to keep module load cheap

    ginv = inverse(a.field, g)
    # new constants: c'[a, b, g] with e'_i = sum_m g[m, i] e_m
    c = contract("ma,nb,mnp,gp->abg", g, g, a.c, ginv)
    return Algebra(a.field, names or a.basis, c, a.class_claims)


def random_algebra(field: Field, basis: Basis, rng) -> Algebra:
    n = basis.dim
    c = zeros(field, (n, n, n))
    for idx in np.ndindex(c.shape):
        c[idx] = field.random(rng)
    return Algebra(field, basis, c)
