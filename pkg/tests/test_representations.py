import random

import pytest

from _samples import F5, bialgebra_2d, random_novikov, random_tensor
from novikov.algebras import Algebra, check_novikov
from novikov.core import Basis, arrays_equal, is_zero, zeros
from novikov.errors import NotRepresentation
from novikov.fields import QQ
from novikov.representations import (
    Representation,
    adjoint_representation,
    check_representation,
    dual_representation,
    semidirect_product,
)


def _example_algebra():
    a, _ = bialgebra_2d(QQ, 1)
    return a


def test_adjoint_representation_passes():
    assert check_representation(adjoint_representation(_example_algebra())).passed


def test_zero_maps_pass_on_any_module():
    a = _example_algebra()
    rho = Representation(a, Basis(("v1", "v2", "v3")), zeros(QQ, (2, 3, 3)), zeros(QQ, (2, 3, 3)))
    assert check_representation(rho).passed


def test_swapped_actions_fail_for_noncommutative_example():
    rho = adjoint_representation(_example_algebra())
    swapped = Representation(rho.algebra, rho.module, rho.right.copy(), rho.left.copy())
    assert not check_representation(swapped).passed


def test_dual_representation_matrices_and_double_dual():
    a = _example_algebra()
    rho = adjoint_representation(a)
    dual = dual_representation(rho)
    assert check_representation(dual).passed
    # l' = -(l+r)^T and r' = r^T entrywise
    assert arrays_equal(dual.left, -(rho.left + rho.right).transpose(0, 2, 1))
    assert arrays_equal(dual.right, rho.right.transpose(0, 2, 1))
    double = dual_representation(dual)
    assert arrays_equal(double.left, rho.left)
    assert is_zero(dual_representation(Representation(a, Basis(("v",)), zeros(QQ, (2, 1, 1)), zeros(QQ, (2, 1, 1)))).left)


def test_semidirect_of_one_dim_idempotent_matches_ambient_table():
    c = zeros(QQ, (1, 1, 1))
    c[0, 0, 0] = QQ.one
    a = Algebra(QQ, Basis(("e",)), c)
    # splitting representation of e<e = e, e>e = 0: left action 0, right action 1
    left = zeros(QQ, (1, 1, 1))
    right = zeros(QQ, (1, 1, 1))
    right[0, 0, 0] = QQ.one
    rho = Representation(a, Basis(("e",)), left, right)
    amb = semidirect_product(dual_representation(rho))
    assert amb.basis.names == ("e", "e*")
    assert amb.c[0, 0, 0] == 1    # e e = e
    assert amb.c[0, 1, 1] == -1   # e e* = -e*
    assert amb.c[1, 0, 1] == 1    # e* e = e*
    assert amb.c[1, 1, 1] == 0 and amb.c[1, 1, 0] == 0
    # the adjoint representation is a different module: its dual doubles the action
    adj = semidirect_product(dual_representation(adjoint_representation(a)))
    assert adj.c[0, 1, 1] == -2
    assert check_novikov(adj).passed


def test_semidirect_zero_rep_is_direct_sum():
    a = _example_algebra()
    rho = Representation(a, Basis(("v",)), zeros(QQ, (2, 1, 1)), zeros(QQ, (2, 1, 1)))
    out = semidirect_product(rho)
    assert arrays_equal(out.c[:2, :2, :2], a.c)
    assert is_zero(out.c[:2, 2:]) and is_zero(out.c[2:, :2]) and is_zero(out.c[2:, 2:])


def test_semidirect_iff_representation():
    """Perturbed actions are not representations exactly when the semidirect
    product fails the product axioms."""
    rng = random.Random(23)
    hits = {True: 0, False: 0}
    for _ in range(60):
        a = random_novikov(F5, rng, 2)
        rho = adjoint_representation(a)
        left = rho.left.copy()
        if rng.randrange(2):
            left[rng.randrange(2)][rng.randrange(2), rng.randrange(2)] += F5.from_int(rng.randrange(1, 5))
        cand = Representation(a, Basis(("v1", "v2")), left, rho.right.copy())
        is_rep = check_representation(cand).passed
        out = semidirect_product(cand, verify=False)
        assert is_rep == check_novikov(out).passed
        hits[is_rep] += 1
    assert hits[True] >= 10 and hits[False] >= 10


def test_dual_requires_representation():
    rho = adjoint_representation(_example_algebra())
    left = rho.left.copy()
    left[0][0, 1] = left[0][0, 1] + QQ.one
    bad = Representation(rho.algebra, rho.module, left, rho.right.copy())
    assert not check_representation(bad).passed
    with pytest.raises(NotRepresentation):
        dual_representation(bad)
