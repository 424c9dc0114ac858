"""Randomized invariants driven by hypothesis."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from matmeans.antinorms import antinorm_from_spec, evaluate_antinorm
from matmeans.hermitian import eigh, eigvalsh, hermitian, loewner_geq, random_unitary
from matmeans.majorization import log_majorizes, supermajorizes
from matmeans.means import arithmetic, b_p, f_alpha, geometric, harmonic, kubo_ando, scalar_mean
from matmeans.multi import karcher_mean

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 6)
SETTINGS = settings(max_examples=40, deadline=None)


def pd(seed, n, spread=2.0):
    rng = np.random.default_rng(seed)
    u = random_unitary(rng, n)
    return hermitian((u * np.exp(rng.uniform(-spread, spread, n))) @ u.conj().T)


@SETTINGS
@given(seeds, dims, st.floats(1e-3, 1e3))
def test_eigh_reconstructs_scaled_matrices(seed, n, scale):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    a = scale * hermitian(g + g.conj().T)
    vals, u = eigh(a)
    assert np.all(np.diff(vals) <= 0)
    assert np.linalg.norm((u * vals) @ u.conj().T - a) <= 1e-10 * np.linalg.norm(a)


@SETTINGS
@given(seeds, dims)
def test_mean_ordering(seed, n):
    # harmonic <= geometric <= logarithmic <= arithmetic
    a, b = pd(seed, n), pd(seed + 1, n)
    chain = [kubo_ando(h, a, b) for h in (harmonic(), geometric(), f_alpha(1.0), arithmetic())]
    for lo, hi in zip(chain, chain[1:]):
        assert loewner_geq(hi, lo, 1e-9)


@SETTINGS
@given(st.floats(1e-3, 1e3), st.floats(1e-3, 1e3), st.sampled_from([0.25, 0.5, 1.0]))
def test_scalar_means_between_min_and_max(x, y, p):
    v = float(scalar_mean(b_p(p), x, y))
    assert min(x, y) * (1 - 1e-12) <= v <= max(x, y) * (1 + 1e-12)


@SETTINGS
@given(seeds, st.integers(2, 5), st.sampled_from(["anorm:kyfan:k=2", "anorm:negschatten:p=1", "anorm:minkowski"]))
def test_antinorm_superadditive(seed, n, spec):
    an = antinorm_from_spec(spec)
    a, b = pd(seed, n), pd(seed + 7, n)
    fa, fb = evaluate_antinorm(an, a), evaluate_antinorm(an, b)
    assert evaluate_antinorm(an, a + b) >= (fa + fb) * (1 - 1e-10)


@SETTINGS
@given(seeds, st.integers(2, 5))
def test_sum_supermajorization(seed, n):
    # eigenvalues of A + B are majorized by the sum of the sorted spectra
    a, b = pd(seed, n), pd(seed + 3, n)
    both = np.diag(eigvalsh(a) + eigvalsh(b))
    assert supermajorizes(a + b, both, 1e-9).holds


@SETTINGS
@given(seeds, st.integers(2, 4), st.integers(2, 4))
def test_karcher_determinant_identity(seed, n, m):
    # det G_m(w; A) = prod det(A_i)^{w_i}
    rng = np.random.default_rng(seed)
    mats = [pd(seed + i, n, 1.0) for i in range(m)]
    w = rng.dirichlet(np.ones(m))
    g = karcher_mean(w, mats)
    lhs = np.sum(np.log(eigvalsh(g)))
    rhs = sum(wi * np.sum(np.log(eigvalsh(x))) for wi, x in zip(w, mats))
    assert abs(lhs - rhs) <= 1e-8 * (1 + abs(rhs))


@SETTINGS
@given(seeds, st.integers(2, 4), st.floats(0.0, 1.0))
def test_weighted_geometric_log_majorized_by_sorted(seed, n, t):
    from matmeans.means import weighted_geometric
    from matmeans.hermitian import sorted_diagonal

    a, b = pd(seed, n), pd(seed + 5, n)
    down = weighted_geometric(sorted_diagonal(a, "down"), sorted_diagonal(b, "down"), t)
    assert log_majorizes(weighted_geometric(a, b, t), down, 1e-9).holds
