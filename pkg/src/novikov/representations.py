"""Representations of Novikov algebras: checker, duals, semidirect products."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from .algebras import Algebra
from .core import Basis, contract, zeros
from .errors import NotRepresentation, ShapeMismatch
from .fields import Field
from .report import Report, ReportBuilder


@dataclass(frozen=True)
class Representation:
    """Left/right action matrices of a Novikov algebra on a module.

    ``left[a]`` and ``right[a]`` are the m x m matrices of the two actions of
    the a-th basis element; matrices act on coordinate columns.
    """

    algebra: Algebra
    module: Basis
    left: np.ndarray   # (n, m, m)
    right: np.ndarray  # (n, m, m)

    def __post_init__(self):
        n, m = self.algebra.dim, self.module.dim
        for arr in (self.left, self.right):
            if arr.shape != (n, m, m):
                raise ShapeMismatch(f"action shape {arr.shape} != {(n, m, m)}")

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def module_dim(self) -> int:
        return self.module.dim

    def left_of(self, x: np.ndarray) -> np.ndarray:
        return contract("a,aij->ij", x, self.left)

    def right_of(self, x: np.ndarray) -> np.ndarray:
        return contract("a,aij->ij", x, self.right)


def adjoint_representation(a: Algebra) -> Representation:
    return Representation(a, a.basis, a.left_mult.copy(), a.right_mult.copy())


def _mm(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return contract("ij,jk->ik", x, y)


def check_representation(rho: Representation) -> Report:
    """The four operator identities defining a module over a Novikov algebra,
    checked as exact m x m matrix equations for every basis pair."""
    a = rho.algebra
    rb = ReportBuilder(rho.field, "representation axioms")
    names = a.basis.names
    for i, j in iproduct(range(a.dim), repeat=2):
        li, lj = rho.left[i], rho.left[j]
        ri, rj = rho.right[i], rho.right[j]
        prod_ij = a.c[i, j]  # coordinates of e_i * e_j
        prod_ji = a.c[j, i]
        l_prod = contract("m,mxy->xy", prod_ij, rho.left)
        l_comm = contract("m,mxy->xy", prod_ij - prod_ji, rho.left)
        r_prod = contract("m,mxy->xy", prod_ij, rho.right)
        loc = (names[i], names[j])
        rb.check("left_bracket_action", loc, l_comm - _mm(li, lj) + _mm(lj, li))
        rb.check("mixed_action", loc, _mm(li, rj) - _mm(rj, li) - r_prod + _mm(rj, ri))
        rb.check("left_product_action", loc, l_prod - _mm(rj, li))
        rb.check("right_actions_commute", loc, _mm(ri, rj) - _mm(rj, ri))
    return rb.build()


def dual_representation(rho: Representation) -> Representation:
    """The module structure on the dual space: (l + r, -r) composed with the
    pairing transpose phi -> -phi^T."""
    rep = check_representation(rho)
    if not rep.passed:
        raise NotRepresentation(rep.render())
    star = lambda arr: -arr.transpose(0, 2, 1)
    out = Representation(
        rho.algebra,
        rho.module.dual(),
        star(rho.left + rho.right),
        -star(rho.right),
    )
    assert check_representation(out).passed
    return out


def semidirect_product(rho: Representation, *, verify: bool = True) -> Algebra:
    """Novikov structure on A + V: (a+u)(b+v) = ab + l(a)v + r(b)u.

    With ``verify`` the input must be a representation (then the output is
    asserted Novikov); disabling it exposes the converse direction of the
    equivalence for testing.
    """
    if verify:
        rep = check_representation(rho)
        if not rep.passed:
            raise NotRepresentation(rep.render())
    a = rho.algebra
    n, m = a.dim, rho.module_dim
    basis = a.basis.concat(rho.module)
    c = zeros(a.field, (n + m, n + m, n + m))
    c[:n, :n, :n] = a.c
    # a * v = l(a) v  lands in the module block
    c[:n, n:, n:] = rho.left.transpose(0, 2, 1)
    # u * b = r(b) u
    c[n:, :n, n:] = rho.right.transpose(2, 0, 1)
    out = Algebra(a.field, basis, c)
    if verify:
        from .algebras import check_novikov

        assert check_novikov(out).passed
        out = Algebra(a.field, basis, c, frozenset({"novikov"}))
    return out
