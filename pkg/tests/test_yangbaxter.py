import random
from fractions import Fraction
from itertools import product as iproduct

import numpy as np
import pytest

from _samples import F5, bialgebra_2d, random_novikov, random_tensor
from novikov.algebras import Algebra, PreNovikovAlgebra, associated_novikov, check_pre_novikov
from novikov.core import Basis, BilinearForm, arrays_equal, is_zero, tensor, zeros
from novikov.data import example_final_pipeline, example_pre_novikov_1d, example_quadratic_right, example_sv3
from novikov.errors import DegenerateForm
from novikov.fields import QQ
from novikov.representations import Representation, adjoint_representation
from novikov.yangbaxter import (
    OOperator,
    RTensor,
    check_invariant_form,
    check_nybe,
    check_o_operator,
    check_quasi_frobenius,
    check_t_identity,
    form_to_r,
    nybe_residual,
    o_operator_lift,
    o_operator_to_pre_novikov,
    place_product,
    pre_novikov_canonical_solution,
    r_to_form,
    t_map,
)

# --- placement conventions, pinned against a brute-force expansion -----------


def _brute_place(c, x, y, placement, field):
    """Literal double sum over decompositions r = sum x_a (x) y_b."""
    n = x.shape[0]
    out = zeros(field, (n, n, n))
    prod = lambda i, j: c[i, j]  # vector of (e_i e_j)
    for a, b in iproduct(range(n), repeat=2):
        if not x[a, b]:
            continue
        for cc, d in iproduct(range(n), repeat=2):
            if not y[cc, d]:
                continue
            coef = x[a, b] * y[cc, d]
            if placement == "12*13":
                for g in range(n):
                    out[g, b, d] += coef * prod(a, cc)[g]
            elif placement == "12*23":
                for g in range(n):
                    out[a, g, d] += coef * prod(b, cc)[g]
            elif placement == "13*23":
                for g in range(n):
                    out[a, cc, g] += coef * prod(b, d)[g]
            elif placement == "13*12":
                for g in range(n):
                    out[g, d, b] += coef * prod(a, cc)[g]
            elif placement == "23*13":
                for g in range(n):
                    out[cc, a, g] += coef * prod(b, d)[g]
    return out


def test_placements_match_brute_force():
    rng = random.Random(13)
    for _ in range(15):
        c = random_tensor(F5, (2, 2, 2), rng)
        x = random_tensor(F5, (2, 2), rng)
        y = random_tensor(F5, (2, 2), rng)
        for placement in ("12*13", "12*23", "13*23", "13*12", "23*13"):
            assert arrays_equal(
                place_product(c, x, y, placement), _brute_place(c, x, y, placement, F5)
            ), placement


def test_placement_frozen_literal():
    """Hand-expanded pinned case: product e1e1 = e2 only, r = e1 (x) e1."""
    c = zeros(QQ, (2, 2, 2))
    c[0, 0, 1] = QQ.one
    r = tensor(QQ, [[1, 0], [0, 0]])
    out = place_product(c, r, r, "13*12")
    expected = zeros(QQ, (2, 2, 2))
    expected[1, 0, 0] = QQ.one  # (e1 e1) (x) e1 (x) e1 = e2 (x) e1 (x) e1
    assert arrays_equal(out, expected)
    out23 = place_product(c, r, r, "12*23")
    expected23 = zeros(QQ, (2, 2, 2))
    expected23[0, 1, 0] = QQ.one
    assert arrays_equal(out23, expected23)


# --- the equation and its operator form --------------------------------------


def test_witt_like_solution():
    sv, r = example_sv3()
    assert r.skewsymmetric
    assert is_zero(nybe_residual(sv, r))
    assert check_nybe(sv, r).passed


def test_zero_tensor_solves():
    a, _ = bialgebra_2d(QQ, 0)
    assert is_zero(nybe_residual(a, zeros(QQ, (2, 2))))


def test_final_example_solution():
    amb, r, _ = example_final_pipeline()
    assert is_zero(nybe_residual(amb, r))


def test_t_map_matrix():
    r = tensor(QQ, [[0, 2], [-2, 0]])
    t = t_map(r)
    assert arrays_equal(t, tensor(QQ, [[0, -2], [2, 0]]))


def test_t_identity_tracks_equation():
    sv, r = example_sv3()
    assert check_t_identity(sv, r).passed
    a, _ = bialgebra_2d(QQ, 0)
    assert check_t_identity(a, zeros(QQ, (2, 2))).passed
    rng = random.Random(8)
    both = {True: 0, False: 0}
    for _ in range(200):
        alg = random_novikov(F5, rng, 2)
        w = F5.random(rng)
        r5 = zeros(F5, (2, 2))
        r5[0, 1] = w
        r5[1, 0] = -w
        solves = is_zero(nybe_residual(alg, r5, verify=False))
        assert solves == check_t_identity(alg, r5, verify=False).passed
        both[solves] += 1
    assert min(both.values()) >= 10


# --- O-operators --------------------------------------------------------------


def test_identity_o_operator_of_splitting():
    p = example_pre_novikov_1d()
    a = associated_novikov(p)
    rho = Representation(a, p.basis, p.right.transpose(0, 2, 1).copy(), p.left.transpose(1, 2, 0).copy())
    ident = tensor(QQ, [[1]])
    op = OOperator(rho, ident)
    assert check_o_operator(op).passed
    back = o_operator_to_pre_novikov(op)
    assert arrays_equal(back.left, p.left) and arrays_equal(back.right, p.right)


def test_zero_operator_passes():
    a, _ = bialgebra_2d(QQ, 1)
    rho = adjoint_representation(a)
    assert check_o_operator(OOperator(rho, zeros(QQ, (2, 2)))).passed


def test_identity_on_noncommutative_adjoint_fails():
    a, _ = bialgebra_2d(QQ, 1)
    rho = adjoint_representation(a)
    ident = tensor(QQ, [[1, 0], [0, 1]])
    assert not check_o_operator(OOperator(rho, ident)).passed


def test_lift_equivalence_both_directions():
    rng = random.Random(19)
    both = {True: 0, False: 0}
    for _ in range(60):
        a = random_novikov(F5, rng, 2)
        rho = adjoint_representation(a)
        t = random_tensor(F5, (2, 2), rng)
        op = OOperator(rho, t)
        ambient, r = o_operator_lift(op)
        solves = is_zero(nybe_residual(ambient, r, verify=False))
        is_op = check_o_operator(op, verify=False).passed
        assert solves == is_op
        both[is_op] += 1
    assert both[True] >= 5 and both[False] >= 5


def test_lift_zero_operator_gives_zero_tensor():
    a, _ = bialgebra_2d(QQ, 1)
    ambient, r = o_operator_lift(OOperator(adjoint_representation(a), zeros(QQ, (2, 2))))
    assert is_zero(r.r)
    assert ambient.dim == 4


def test_zinbiel_roundtrip_through_operator():
    from novikov.algebras import DerivationData, zinbiel_pre_novikov

    c = zeros(QQ, (2, 2, 2))
    c[0, 0, 1] = QQ.one
    z = Algebra(QQ, Basis(("e1", "e2")), c)
    p = zinbiel_pre_novikov(DerivationData(z, tensor(QQ, [[1, 0], [0, 2]])))
    a = associated_novikov(p)
    rho = Representation(a, p.basis, p.right.transpose(0, 2, 1).copy(), p.left.transpose(1, 2, 0).copy())
    ident = tensor(QQ, [[1, 0], [0, 1]])
    back = o_operator_to_pre_novikov(OOperator(rho, ident))
    assert arrays_equal(back.left, p.left) and arrays_equal(back.right, p.right)


# --- canonical solutions and forms --------------------------------------------


def test_canonical_solution_pipeline():
    ambient, r, omega = example_final_pipeline()
    assert ambient.c[0, 0, 0] == 1 and ambient.c[0, 1, 1] == -1 and ambient.c[1, 0, 1] == 1
    assert arrays_equal(r.r, tensor(QQ, [[0, 1], [-1, 0]]))
    assert omega.value(tensor(QQ, [1, 0]), tensor(QQ, [0, 1])) == 1
    assert check_quasi_frobenius(ambient, omega).passed


def test_canonical_solution_of_zero_splitting():
    basis = Basis(("e",))
    p = PreNovikovAlgebra(QQ, basis, zeros(QQ, (1, 1, 1)), zeros(QQ, (1, 1, 1)))
    ambient, r, omega = pre_novikov_canonical_solution(p)
    assert is_zero(ambient.c)
    assert r.skewsymmetric and is_zero(nybe_residual(ambient, r, verify=False))
    assert omega.skewsymmetric and omega.nondegenerate


def test_canonical_solution_of_zinbiel_splitting():
    from novikov.algebras import DerivationData, zinbiel_pre_novikov

    c = zeros(QQ, (2, 2, 2))
    c[0, 0, 1] = QQ.one
    z = Algebra(QQ, Basis(("e1", "e2")), c)
    p = zinbiel_pre_novikov(DerivationData(z, tensor(QQ, [[1, 0], [0, 2]])))
    ambient, r, omega = pre_novikov_canonical_solution(p)
    assert is_zero(nybe_residual(ambient, r, verify=False))
    assert check_quasi_frobenius(ambient, omega).passed


def test_invariant_form_right_flavor():
    b, form = example_quadratic_right()
    rep = check_invariant_form(b, form, "right_novikov")
    assert rep.passed
    assert form.symmetric and form.nondegenerate
    zero_form = BilinearForm(QQ, zeros(QQ, (2, 2)))
    rep0 = check_invariant_form(b, zero_form, "right_novikov")
    assert rep0.passed and not zero_form.nondegenerate
    ident = BilinearForm(QQ, tensor(QQ, [[1, 0], [0, 1]]))
    repi = check_invariant_form(b, ident, "right_novikov")
    assert not repi.passed
    assert ("e2", "e2", "e2") in [w.location for w in repi.result("invariance").witnesses]


def test_quasi_frobenius_failures():
    a, _ = bialgebra_2d(QQ, 0)
    one_dim = Algebra(QQ, Basis(("e",)), zeros(QQ, (1, 1, 1)))
    rep = check_quasi_frobenius(one_dim, BilinearForm(QQ, zeros(QQ, (1, 1))))
    assert not rep.result("nondegenerate").passed
    sym = BilinearForm(QQ, tensor(QQ, [[0, 1], [1, 0]]))
    rep2 = check_quasi_frobenius(a, sym)
    assert not rep2.result("skewsymmetric").passed


def test_form_tensor_correspondence():
    ambient, r, omega = example_final_pipeline()
    assert arrays_equal(form_to_r(ambient, omega).r, r.r)
    back = r_to_form(ambient, r)
    assert arrays_equal(back.matrix, omega.matrix)
    with pytest.raises(DegenerateForm):
        form_to_r(ambient, BilinearForm(QQ, zeros(QQ, (2, 2))))
    with pytest.raises(DegenerateForm):
        r_to_form(ambient, zeros(QQ, (2, 2)))


def test_symmetric_form_gives_symmetric_tensor_and_fails_equation():
    a, _ = bialgebra_2d(QQ, 1)
    ident = BilinearForm(QQ, tensor(QQ, [[1, 0], [0, 1]]))
    r = form_to_r(a, ident)
    assert not r.skewsymmetric
    assert check_quasi_frobenius(a, ident).passed == (
        r.skewsymmetric and is_zero(nybe_residual(a, r, verify=False))
    )


def test_quasi_frobenius_equivalence_random():
    rng = random.Random(55)
    both = {True: 0, False: 0}
    for _ in range(100):
        a = random_novikov(F5, rng, 2)
        while True:
            w = random_tensor(F5, (2, 2), rng)
            form = BilinearForm(F5, w)
            if form.nondegenerate:
                break
        qf = check_quasi_frobenius(a, form).passed
        r = form_to_r(a, form)
        ybe = r.skewsymmetric and is_zero(nybe_residual(a, r, verify=False))
        assert qf == ybe
        both[qf] += 1
    assert both[False] >= 10
