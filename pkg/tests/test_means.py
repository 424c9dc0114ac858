import math

import numpy as np
import pytest

from conftest import random_pd, random_psd
from matmeans.errors import ConfigError
from matmeans.hermitian import eigvalsh, loewner_geq, mpow
from matmeans.majorization import log_majorizes
from matmeans.means import (
    GEOM_CONCAVE,
    GEOM_CONVEX,
    GeodesicMeasure,
    adjoint,
    arithmetic,
    b_p,
    certify_geom_class,
    check_absolute_monotonicity,
    dual,
    f_alpha,
    geodesic_mean,
    geometric,
    h_alpha,
    harmonic,
    kubo_ando,
    power_fn,
    power_mean,
    rf_catalog,
    rf_transforms,
    scalar_mean,
    transpose,
    weighted_geometric,
)
from matmeans.specs import mean_from_spec

X = np.geomspace(0.05, 20, 9)


def test_arithmetic_mean(rng):
    a, b = random_pd(rng, 4), random_pd(rng, 4)
    np.testing.assert_allclose(kubo_ando(arithmetic(), a, b), (a + b) / 2, atol=1e-12)


def test_commuting_geometric():
    out = kubo_ando(geometric(), np.diag([1.0, 4.0]), np.diag([4.0, 1.0]))
    np.testing.assert_allclose(out, np.diag([2.0, 2.0]), atol=1e-12)


def test_harmonic_mean(rng):
    a, b = random_pd(rng, 3), random_pd(rng, 3)
    expect = 2 * np.linalg.inv(np.linalg.inv(a) + np.linalg.inv(b))
    np.testing.assert_allclose(kubo_ando(harmonic(), a, b), expect, atol=1e-10)


def test_singular_input_via_regularization(rng):
    a = random_psd(rng, 3, 2)
    b = random_pd(rng, 3)
    lam = eigvalsh(kubo_ando(geometric(), a, b, eps=None))
    assert lam[-1] < 1e-3 * lam[0]
    # the kernel direction of A makes the smallest eigenvalue decay like sqrt(eps)
    small = [eigvalsh(kubo_ando(geometric(), a, b, eps=e))[-1] for e in (1e-6, 1e-8, 1e-10)]
    np.testing.assert_allclose(np.diff(np.log10(small)), [-1.0, -1.0], atol=0.05)


def test_weighted_geometric_endpoints(rng):
    a, b = random_pd(rng, 3), random_pd(rng, 3)
    np.testing.assert_allclose(weighted_geometric(a, b, 0.0), a, atol=1e-12)
    np.testing.assert_allclose(weighted_geometric(a, b, 1.0), b, atol=1e-10)
    for t in (0.2, 0.5, 0.9):
        np.testing.assert_allclose(weighted_geometric(a, a, t), a, atol=1e-10)


def test_geometric_mean_riccati(rng):
    # A # B is the unique positive solution of X A^{-1} X = B
    a, b = random_pd(rng, 4), random_pd(rng, 4)
    g = weighted_geometric(a, b, 0.5)
    np.testing.assert_allclose(g @ np.linalg.inv(a) @ g, b, atol=1e-9)


def test_power_mean(rng):
    a, b = random_pd(rng, 3), random_pd(rng, 3)
    np.testing.assert_allclose(power_mean(a, b, 1.0), (a + b) / 2, atol=1e-12)
    for p in (0.0, 0.3, 1.0):
        np.testing.assert_allclose(power_mean(a, a, p), a, atol=1e-10)
    r8 = math.sqrt(8)
    np.testing.assert_allclose(power_mean(np.diag([1.0, 8.0]), np.diag([8.0, 1.0]), 0.0), np.diag([r8, r8]), atol=1e-12)


def test_power_mean_approaches_log_euclidean(rng):
    a, b = random_pd(rng, 3), random_pd(rng, 3)
    p0 = power_mean(a, b, 0.0)
    errs = [np.linalg.norm(power_mean(a, b, p) - p0) for p in (1e-1, 1e-2, 1e-3)]
    assert errs[0] > errs[1] > errs[2]


def test_geodesic_mean_atoms(rng):
    a, b = random_pd(rng, 3), random_pd(rng, 3)
    nu = GeodesicMeasure.from_atoms([(0.5, 1.0)])
    np.testing.assert_allclose(geodesic_mean(nu, a, b), weighted_geometric(a, b, 0.5), atol=1e-12)
    i = np.eye(3)
    np.testing.assert_allclose(geodesic_mean(GeodesicMeasure.uniform(), i, i), i, atol=1e-12)


def test_geodesic_mean_matches_representing_function(rng):
    # nu with atoms of b_{1/2} reproduces the mean with representing function b_{1/2}
    a, b = random_pd(rng, 3), random_pd(rng, 3)
    nu = b_p(0.5).measure
    np.testing.assert_allclose(geodesic_mean(nu, a, b), kubo_ando(b_p(0.5), a, b), atol=1e-9)


def test_logarithmic_mean_scalar():
    assert scalar_mean(f_alpha(1), 1.0, math.e) == pytest.approx(math.e - 1, rel=1e-12)
    assert "logarithmic" in f_alpha(1).tags
    nu = GeodesicMeasure.uniform()
    assert float(nu.function(np.array(math.e))) == pytest.approx(math.e - 1, rel=1e-12)


def test_b_half_measure():
    assert b_p(0.5).measure.atoms == ((0.0, 0.25), (0.5, 0.5), (1.0, 0.25))


def test_measure_families():
    for m in (2, 3, 4):
        atoms = f_alpha(m / (m - 1)).measure.atoms
        np.testing.assert_allclose([a for a, _ in atoms], [k / (m - 1) for k in range(m)])
        np.testing.assert_allclose([w for _, w in atoms], [1 / m] * m)
        atoms = f_alpha(m / (m + 1)).measure.atoms
        np.testing.assert_allclose([a for a, _ in atoms], [k / (m + 1) for k in range(1, m + 1)])
        atoms = b_p(1 / m).measure.atoms
        np.testing.assert_allclose([w for _, w in atoms], [math.comb(m, k) / 2**m for k in range(m + 1)])


@pytest.mark.parametrize("h", rf_catalog(), ids=lambda h: h.name)
def test_measures_reproduce_functions(h):
    if h.measure is not None:
        np.testing.assert_allclose(h.measure.function(X), h(X), rtol=1e-9)


@pytest.mark.parametrize("h", rf_catalog(), ids=lambda h: h.name)
def test_normalized_and_transforms(h):
    assert float(h(np.array(1.0))) == pytest.approx(1.0, abs=1e-12)
    for g in rf_transforms(h):
        assert float(g(np.array(1.0))) == pytest.approx(1.0, abs=1e-12)


def test_transforms_of_geometric_and_arithmetic():
    for g in rf_transforms(geometric()):
        np.testing.assert_allclose(g(X), np.sqrt(X), rtol=1e-12)
    np.testing.assert_allclose(adjoint(arithmetic())(X), 2 * X / (1 + X), rtol=1e-12)
    np.testing.assert_allclose(dual(arithmetic())(X), 2 * X / (1 + X), rtol=1e-12)
    np.testing.assert_allclose(transpose(power_fn(0.25))(X), X**0.75, rtol=1e-12)


def test_transpose_swaps_arguments(rng):
    a, b = random_pd(rng, 3), random_pd(rng, 3)
    h = f_alpha(0.25)
    np.testing.assert_allclose(kubo_ando(transpose(h), a, b), kubo_ando(h, b, a), atol=1e-9)


@pytest.mark.parametrize(
    "h,cls",
    [
        (arithmetic(), GEOM_CONVEX),
        (harmonic(), GEOM_CONCAVE),
        (f_alpha(0.25), GEOM_CONCAVE),
        (f_alpha(1.0), GEOM_CONVEX),
        (h_alpha(0.25), GEOM_CONVEX),
    ],
    ids=lambda x: getattr(x, "name", x),
)
def test_geom_class(h, cls):
    assert certify_geom_class(h).geom_class == cls


def test_geometric_mean_is_both():
    assert certify_geom_class(geometric()).geom_class == "both"


def test_absolute_monotonicity_screens():
    assert check_absolute_monotonicity(power_fn(0.5)).first_failure is None
    assert check_absolute_monotonicity(b_p(0.5)).first_failure is None
    # order 8 differences cannot see b_{2/3}; the first negative derivative is order 15
    assert check_absolute_monotonicity(b_p(2 / 3)).first_failure is None
    rep = check_absolute_monotonicity(b_p(2 / 3), order=24, precision="mpmath")
    assert rep.first_failure is not None and rep.first_failure[0] == 16
    with pytest.raises(ValueError):
        check_absolute_monotonicity(b_p(0.5), order=9)


def test_operator_monotone(rng):
    # A <= A' implies A sigma B <= A' sigma B
    for h in (arithmetic(), harmonic(), geometric(), f_alpha(1.0), b_p(0.5)):
        a, b = random_pd(rng, 3), random_pd(rng, 3)
        a2 = a + random_psd(rng, 3, 1)
        assert loewner_geq(kubo_ando(h, a2, b), kubo_ando(h, a, b), 1e-9)


def test_geometric_log_majorization(rng):
    from matmeans.hermitian import sorted_diagonal

    for _ in range(20):
        a, b = random_pd(rng, 3), random_pd(rng, 3)
        down = weighted_geometric(sorted_diagonal(a, "down"), sorted_diagonal(b, "down"), 0.5)
        assert log_majorizes(weighted_geometric(a, b, 0.5), down, 1e-9).holds


def test_congruence_covariance(rng):
    a, b = random_pd(rng, 3), random_pd(rng, 3)
    x = rng.standard_normal((3, 3)) + 3 * np.eye(3)
    for h in (f_alpha(1.0), b_p(0.5), harmonic()):
        lhs = kubo_ando(h, x.T @ a @ x, x.T @ b @ x)
        rhs = x.T @ kubo_ando(h, a, b) @ x
        np.testing.assert_allclose(lhs, rhs, atol=1e-8 * np.linalg.norm(rhs))


@pytest.mark.parametrize(
    "spec,expect",
    [
        ("mean:arith", lambda a, b: (a + b) / 2),
        ("mean:harm", lambda a, b: 2 * a * b / (a + b)),
        ("mean:geo:alpha=0.5", lambda a, b: math.sqrt(a * b)),
        ("mean:power:p=0.5", lambda a, b: ((math.sqrt(a) + math.sqrt(b)) / 2) ** 2),
        ("mean:bp:p=0.5", lambda a, b: ((math.sqrt(a) + math.sqrt(b)) / 2) ** 2),
        ("mean:falpha:a=1", lambda a, b: (b - a) / math.log(b / a)),
        ("mean:geodesic:uniform", lambda a, b: (b - a) / math.log(b / a)),
        ("mean:geodesic:atoms=(0,0.25),(0.5,0.5),(1,0.25)", lambda a, b: ((math.sqrt(a) + math.sqrt(b)) / 2) ** 2),
    ],
)
def test_mean_specs_on_scalars(spec, expect):
    m = mean_from_spec(spec)
    assert float(m.scalar(2.0, 5.0)) == pytest.approx(expect(2.0, 5.0), rel=1e-10)
    out = m.matrix(np.diag([2.0, 3.0]), np.diag([5.0, 7.0]))
    np.testing.assert_allclose(np.diag(out).real, [expect(2.0, 5.0), expect(3.0, 7.0)], rtol=1e-9)


@pytest.mark.parametrize("bad", ["mean:nope", "mean:power:p=2", "mean:geodesic:atoms=(0,0.5)", "mean:geo:beta=1"])
def test_bad_mean_specs(bad):
    with pytest.raises(ConfigError):
        mean_from_spec(bad)


def test_mpow_consistency(rng):
    a = random_pd(rng, 3)
    np.testing.assert_allclose(weighted_geometric(np.eye(3), a, 0.3), mpow(a, 0.3), atol=1e-10)
