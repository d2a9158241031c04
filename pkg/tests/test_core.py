import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from novikov.core import (
    BandPoly,
    Basis,
    BilinearForm,
    affine,
    arrays_equal,
    det,
    inverse,
    is_zero,
    tensor,
    tensor_contract,
    zeros,
)
from novikov.errors import DegenerateForm, DegreeCapExceeded, ShapeMismatch
from novikov.fields import QQ, prime_field

F5 = prime_field(5)


def test_basis_validation():
    with pytest.raises(ValueError):
        Basis(())
    with pytest.raises(ValueError):
        Basis(("a", "a"))
    b = Basis(("x", "y"))
    assert b.index("y") == 1
    assert b.dual().names == ("x*", "y*")
    assert b.tensor(Basis(("t",))).names == ("x.t", "y.t")


def test_tensor_contract_shapes_and_slices():
    t = tensor(QQ, [[[1, 0], [0, 0]], [[0, 2], [0, 0]]])
    v = tensor(QQ, [1, 0])
    out = tensor_contract(t, 0, v)
    assert arrays_equal(out, tensor(QQ, [[1, 0], [0, 0]]))
    assert is_zero(tensor_contract(zeros(QQ, (2, 2, 2)), 1, v))
    with pytest.raises(ShapeMismatch):
        tensor_contract(t, 3, v)
    with pytest.raises(ShapeMismatch):
        tensor_contract(t, 0, tensor(QQ, [1, 2, 3]))


@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
def test_contraction_linearity(a1, a2, b1, b2):
    rng = random.Random(11)
    t = zeros(F5, (2, 2))
    for idx in np.ndindex(t.shape):
        t[idx] = F5.random(rng)
    alpha, beta = F5.from_int(a1), F5.from_int(a2)
    v = tensor(F5, [b1, b2])
    w = tensor(F5, [a2, b2])
    lhs = tensor_contract(t, 1, alpha * v + beta * w)
    rhs = alpha * tensor_contract(t, 1, v) + beta * tensor_contract(t, 1, w)
    assert arrays_equal(lhs, rhs)


def test_det_inverse_exact():
    m = tensor(QQ, [[1, Fraction(1, 2)], [Fraction(1, 3), 1]])
    assert det(QQ, m) == Fraction(5, 6)
    mi = inverse(QQ, m)
    assert arrays_equal(m @ mi, tensor(QQ, [[1, 0], [0, 1]]))
    with pytest.raises(DegenerateForm):
        inverse(QQ, tensor(QQ, [[1, 2], [2, 4]]))


def test_bilinear_form_flags():
    sym = BilinearForm(QQ, tensor(QQ, [[0, 1], [1, 0]]))
    assert sym.symmetric and not sym.skewsymmetric and sym.nondegenerate
    skew = BilinearForm(QQ, tensor(QQ, [[0, 1], [-1, 0]]))
    assert skew.skewsymmetric and skew.nondegenerate
    degenerate = BilinearForm(QQ, zeros(QQ, (2, 2)))
    assert degenerate.symmetric and degenerate.skewsymmetric and not degenerate.nondegenerate


# --- band polynomials -------------------------------------------------------


def _poly(field, coeffs):
    return BandPoly(field, 1, (1,), {(m,): tensor(field, [c]) for m, c in coeffs.items()})


def test_poly_affine_substitution_examples():
    # u + 1 under u -> 3 - u gives 4 - u
    p = _poly(QQ, {0: 1, 1: 1})
    q = p.substitute([affine(1, const=3, u=-1)], 1)
    assert q.coeffs[(0,)][0] == 4 and q.coeffs[(1,)][0] == -1
    # u^2 under u -> u - 2 gives u^2 - 4u + 4
    p2 = _poly(QQ, {2: 1})
    q2 = p2.substitute([affine(1, const=-2, u=1)], 1)
    assert q2.coeffs[(0,)][0] == 4 and q2.coeffs[(1,)][0] == -4 and q2.coeffs[(2,)][0] == 1
    # uv under the swap u->v, v->u is itself
    p3 = BandPoly(QQ, 2, (1,), {(1, 1): tensor(QQ, [1])})
    q3 = p3.substitute([affine(2, v=1), affine(2, u=1)], 2)
    assert arrays_equal(q3.coeffs[(1, 1)], tensor(QQ, [1]))


@settings(max_examples=20)
@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))
def test_poly_substitute_commutes_with_evaluation(a, b, point):
    rng = random.Random(27)
    coeffs = {(m,): tensor(QQ, [rng.randint(-5, 5)]) for m in range(3)}
    p = BandPoly(QQ, 1, (1,), coeffs)
    sub = affine(1, const=b, u=a)
    q = p.substitute([sub], 1)
    direct = p.evaluate((a * point + b,))
    composed = q.evaluate((point,))
    assert arrays_equal(direct, composed)


def test_degree_cap():
    big = {(9,): tensor(QQ, [1])}
    with pytest.raises(DegreeCapExceeded):
        BandPoly(QQ, 1, (1,), big)
    p = _poly(QQ, {4: 1})
    with pytest.raises(DegreeCapExceeded):
        p.times_int_poly({(5,): 1})


def test_poly_canonical_zero_removal():
    p = _poly(QQ, {0: 1, 1: 0})
    assert list(p.coeffs) == [(0,)]
    assert (p - p).is_zero
