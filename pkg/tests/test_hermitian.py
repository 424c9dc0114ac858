import math

import numpy as np
import pytest

from conftest import random_pd
from matmeans.errors import DimensionMismatch, DomainViolation
from matmeans.hermitian import (
    Interval,
    PsdSamplerConfig,
    congruence,
    eigh,
    eigvalsh,
    hermitian,
    loewner_geq,
    matrix_function,
    mexp,
    mlog,
    mpow,
    random_hermitian,
    random_unitary,
    sample_psd,
    sorted_diagonal,
)


def cubic_roots(a):
    """Eigenvalues of a 1x1, 2x2 or 3x3 Hermitian matrix from its characteristic polynomial."""
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real])
    if n == 2:
        tr = (a[0, 0] + a[1, 1]).real
        det = (a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]).real
        disc = math.sqrt(max(tr * tr / 4 - det, 0.0))
        return np.array([tr / 2 + disc, tr / 2 - disc])
    # trigonometric solution of the depressed cubic
    q = np.trace(a).real / 3
    b = a - q * np.eye(3)
    p = math.sqrt(max(np.trace(b @ b).real / 6, 0.0))
    if p == 0:
        return np.full(3, q)
    r = np.clip(np.linalg.det(b / p).real / 2, -1.0, 1.0)
    phi = math.acos(r) / 3
    roots = q + 2 * p * np.cos(phi + 2 * math.pi * np.arange(3) / 3)
    return np.sort(roots)[::-1]


def test_diagonal_input():
    d = eigh(np.diag([1.0, 2.0, 3.0]))
    np.testing.assert_allclose(d.values, [3, 2, 1])
    np.testing.assert_allclose(np.abs(d.basis), np.eye(3)[:, ::-1])


def test_swap_matrix():
    d = eigh(np.array([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_allclose(d.values, [1, -1], atol=1e-15)
    v = d.basis
    # columns are (1,1)/sqrt2 and (1,-1)/sqrt2 up to phase
    assert abs(abs(np.vdot(v[:, 0], [1, 1])) - math.sqrt(2)) < 1e-12
    assert abs(abs(np.vdot(v[:, 1], [1, -1])) - math.sqrt(2)) < 1e-12


def test_reconstruction_seed_42():
    a = random_hermitian(np.random.default_rng(42), 6)
    vals, u = eigh(a)
    err = np.linalg.norm((u * vals) @ u.conj().T - a) / np.linalg.norm(a)
    assert err < 1e-10
    assert np.linalg.norm(u.conj().T @ u - np.eye(6)) < 1e-10


@pytest.mark.parametrize("n", [1, 2, 3])
def test_matches_characteristic_polynomial(rng, n):
    for _ in range(50):
        a = random_hermitian(rng, n)
        np.testing.assert_allclose(eigvalsh(a), cubic_roots(a), atol=1e-9)


def test_batched_matches_single(rng):
    stack = np.stack([random_hermitian(rng, 4) for _ in range(5)])
    batch = eigvalsh(stack)
    for a, vals in zip(stack, batch):
        np.testing.assert_array_equal(vals, eigvalsh(a))


def test_rejects_non_square():
    with pytest.raises(DimensionMismatch):
        eigh(np.ones((2, 3)))


def test_hermitian_symmetrizes():
    m = np.array([[1.0, 2.0], [0.0, 1.0]])
    np.testing.assert_allclose(hermitian(m), [[1, 1], [1, 1]])


def test_sqrt_of_diagonal():
    np.testing.assert_allclose(matrix_function(np.diag([4.0, 9.0]), np.sqrt, Interval()), np.diag([2.0, 3.0]))


def test_identity_function(rng):
    a = random_hermitian(rng, 5)
    np.testing.assert_allclose(matrix_function(a, lambda x: x), a, atol=1e-12)


def test_exp_log_round_trip():
    a = np.array([[2.0, 1.0], [1.0, 2.0]])
    np.testing.assert_allclose(np.sort(eigvalsh(mlog(a))), np.log([1.0, 3.0]), atol=1e-14)
    np.testing.assert_allclose(mexp(mlog(a)), a, atol=1e-10)


def test_composition(rng):
    a = random_pd(rng, 4)
    lhs = matrix_function(matrix_function(a, np.sqrt, Interval()), np.log, Interval(0, math.inf, True))
    rhs = matrix_function(a, lambda x: np.log(np.sqrt(x)), Interval(0, math.inf, True))
    assert np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs) < 1e-9


def test_domain_clamp_and_violation():
    tiny = np.diag([1.0, -1e-14])
    np.testing.assert_allclose(matrix_function(tiny, np.sqrt, Interval()), np.diag([1.0, 0.0]))
    with pytest.raises(DomainViolation):
        matrix_function(np.diag([1.0, -1e-3]), np.sqrt, Interval())


def test_mpow_matches_repeated_product(rng):
    a = random_pd(rng, 3)
    np.testing.assert_allclose(mpow(a, 2.0), a @ a, atol=1e-10)


def test_congruence():
    a = np.array([[2.0, 1.0], [1.0, 3.0]])
    np.testing.assert_allclose(congruence(np.eye(2), a), a)
    np.testing.assert_allclose(congruence(2 * np.eye(2), a), 4 * a)
    with pytest.raises(DimensionMismatch):
        congruence(np.eye(3), a)


def test_unitary_invariance(rng):
    a = random_hermitian(rng, 5)
    u = random_unitary(rng, 5)
    np.testing.assert_allclose(eigvalsh(u @ a @ u.conj().T), eigvalsh(a), atol=1e-10)
    np.testing.assert_allclose(eigvalsh(congruence(u, a)), eigvalsh(a), atol=1e-10)


def test_loewner_geq():
    assert loewner_geq(2 * np.eye(2), np.eye(2), 1e-10)
    assert not loewner_geq(np.eye(2), 2 * np.eye(2), 1e-10)
    assert not loewner_geq(np.diag([2.0, 1.0]), np.diag([1.0, 2.0]), 1e-10)
    assert not loewner_geq(np.diag([1.0, 2.0]), np.diag([2.0, 1.0]), 1e-10)


def test_sorted_diagonal():
    a = np.array([[2.0, 1.0], [1.0, 2.0]])
    np.testing.assert_allclose(sorted_diagonal(a, "down"), np.diag([3.0, 1.0]), atol=1e-14)
    np.testing.assert_allclose(sorted_diagonal(a, "up"), np.diag([1.0, 3.0]), atol=1e-14)
    np.testing.assert_allclose(sorted_diagonal(np.diag([1.0, 5.0, 2.0])), np.diag([5.0, 2.0, 1.0]))
    low = sorted_diagonal(a, "up")
    assert abs(np.trace(low) - np.trace(a)) < 1e-12
    assert abs(np.linalg.det(low) - np.linalg.det(a)) < 1e-12


def test_sampler_is_deterministic():
    cfg = PsdSamplerConfig(dim=3, invertible=True, seed=1)
    np.testing.assert_array_equal(sample_psd(cfg), sample_psd(cfg))


def test_sampler_rank_deficit():
    a = sample_psd(PsdSamplerConfig(dim=4, invertible=False, rank_deficit=1, seed=3))
    lam = eigvalsh(a)
    assert abs(lam[-1]) < 1e-14 * lam[0]
    assert lam[-2] > 1e-3


@pytest.mark.parametrize("seed", range(5))
def test_sampler_condition(seed):
    lam = eigvalsh(sample_psd(PsdSamplerConfig(dim=4, condition_target=100.0, seed=seed)))
    assert 90 <= lam[0] / lam[-1] <= 110
