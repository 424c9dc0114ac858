import numpy as np
import pytest

from conftest import random_pd
from matmeans.errors import DimensionMismatch
from matmeans.hermitian import congruence, random_unitary
from matmeans.majorization import (
    eigenvalue_dominates,
    log_majorizes,
    log_submajorizes,
    log_supermajorizes,
    majorizes,
    supermajorizes,
)
from matmeans.means import weighted_geometric
from matmeans.hermitian import sorted_diagonal


def d(*x):
    return np.diag(np.array(x, dtype=float))


def test_reflexive(rng):
    a = random_pd(rng, 4)
    for rel in (supermajorizes, majorizes, log_supermajorizes, log_majorizes, log_submajorizes, eigenvalue_dominates):
        v = rel(a, a, 1e-10)
        assert v.holds
    assert supermajorizes(a, a).worst_margin == 0
    assert log_supermajorizes(a, a).worst_margin == 0


def test_supermajorization_hand_checks():
    assert supermajorizes(d(1, 1), d(2, 0)).holds
    v = supermajorizes(d(2, 0), d(1, 1))
    assert not v.holds and v.worst_k == 1


def test_majorization_trace_mismatch():
    assert not majorizes(d(1, 1), d(3, 0)).holds


def test_log_supermajorization_hand_check():
    assert not log_supermajorizes(d(4, 1), d(2, 2)).holds


def test_log_majorization():
    assert log_majorizes(d(2, 2), d(4, 1)).holds
    assert not log_majorizes(d(4, 1), d(2, 2)).holds


def test_log_submajorization():
    assert log_submajorizes(d(1, 1), d(4, 1)).holds
    assert not log_submajorizes(d(4, 1), d(1, 1)).holds


def test_eigenvalue_dominance():
    assert eigenvalue_dominates(2 * np.eye(2), np.eye(2)).holds
    v = eigenvalue_dominates(d(3, 1), d(2, 2))
    assert not v.holds and v.worst_k == 2


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        majorizes(np.eye(2), np.eye(3))


def test_singular_products():
    # a zero factor on the left fails against a positive right-hand product
    assert not log_supermajorizes(d(1, 0), d(1, 1)).holds
    assert log_supermajorizes(d(1, 1), d(1, 0)).holds


def test_implications(rng):
    for _ in range(50):
        a, b = random_pd(rng, 3), random_pd(rng, 3)
        if eigenvalue_dominates(a, b).holds:
            assert supermajorizes(a, b).holds and log_supermajorizes(a, b).holds
        if supermajorizes(a, b).holds:
            assert log_supermajorizes(a, b, 1e-9).holds


def test_transitivity(rng):
    for _ in range(50):
        a = random_pd(rng, 3)
        b = a + np.diag(rng.uniform(0, 0.2, 3))
        c = b + np.diag(rng.uniform(0, 0.2, 3))
        assert supermajorizes(c, b).holds and supermajorizes(b, a).holds
        assert supermajorizes(c, a).worst_margin >= -2e-10


def test_unitary_invariance(rng):
    a, b = random_pd(rng, 4), random_pd(rng, 4)
    u = random_unitary(rng, 4)
    for rel in (supermajorizes, log_majorizes, eigenvalue_dominates):
        v1, v2 = rel(a, b), rel(congruence(u, a), congruence(u, b))
        assert v1.holds == v2.holds
        assert v1.worst_margin == pytest.approx(v2.worst_margin, abs=1e-10)


def test_geometric_mean_log_majorized_by_sorted(rng):
    for _ in range(20):
        a, b = random_pd(rng, 4), random_pd(rng, 4)
        lhs = weighted_geometric(a, b, 0.5)
        rhs = weighted_geometric(sorted_diagonal(a, "down"), sorted_diagonal(b, "down"), 0.5)
        assert log_majorizes(lhs, rhs, 1e-9).holds
