"""Built-in worked examples used by the self-test battery and the test suite."""

from __future__ import annotations

from fractions import Fraction

from .algebras import Algebra, PreNovikovAlgebra
from .bialgebra import Coalgebra
from .core import Basis, BilinearForm, tensor, zeros
from .fields import QQ, Field
from .yangbaxter import RTensor, pre_novikov_canonical_solution


def example_bialgebra_2d(lam=Fraction(1), field: Field = QQ):
    """The 2-dimensional bialgebra family: e1e1 = e1, e2e1 = e2, e1e2 = -e2,
    with the coproduct lam * e2 (x) e2 on e1."""
    basis = Basis(("e1", "e2"))
    c = zeros(field, (2, 2, 2))
    c[0, 0, 0] = field.one
    c[1, 0, 1] = field.one
    c[0, 1, 1] = -field.one
    d = zeros(field, (2, 2, 2))
    d[0, 1, 1] = field.scalar(lam)
    return field, Algebra(field, basis, c, frozenset({"novikov"})), Coalgebra(field, basis, d)


def example_quadratic_right(field: Field = QQ):
    """The 2-dimensional quadratic right Novikov algebra: e1e2 = -2e1,
    e2e1 = e1, e2e2 = e2 with the hyperbolic pairing."""
    basis = Basis(("e1", "e2"))
    c = zeros(field, (2, 2, 2))
    c[0, 1, 0] = field.from_int(-2)
    c[1, 0, 0] = field.one
    c[1, 1, 1] = field.one
    form = BilinearForm(field, tensor(field, [[0, 1], [1, 0]]))
    return Algebra(field, basis, c, frozenset({"right_novikov"})), form


def example_sv3(field: Field = QQ):
    """The 3-dimensional algebra whose affinization is the centerless
    Schroedinger-Virasoro Lie algebra, with its canonical skew solution."""
    basis = Basis(("a", "b", "c"))
    c = zeros(field, (3, 3, 3))
    c[0, 0, 0] = field.one
    c[0, 1, 1] = field.scalar(Fraction(1, 2))
    c[1, 0, 1] = field.one
    c[2, 0, 2] = field.one
    c[1, 1, 2] = field.one
    r = zeros(field, (3, 3))
    r[1, 2] = field.one
    r[2, 1] = -field.one
    return Algebra(field, basis, c, frozenset({"novikov"})), RTensor(field, r)


def example_pre_novikov_1d(field: Field = QQ) -> PreNovikovAlgebra:
    """One-dimensional splitting: e<e = e, e>e = 0."""
    basis = Basis(("e",))
    left = zeros(field, (1, 1, 1))
    left[0, 0, 0] = field.one
    right = zeros(field, (1, 1, 1))
    return PreNovikovAlgebra(field, basis, left, right)


def example_final_pipeline(field: Field = QQ):
    """The end-to-end pipeline of the paper's closing example: the canonical
    solution attached to the 1-dimensional pre-Novikov algebra."""
    return pre_novikov_canonical_solution(example_pre_novikov_1d(field))
