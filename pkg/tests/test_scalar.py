import math

import numpy as np
import pytest

from matmeans.errors import ConfigError
from matmeans.hermitian import Interval
from matmeans.scalar import (
    IntervalFunction,
    catalog,
    certify_concave,
    certify_convex,
    certify_doubly_concave,
    certify_doubly_convex,
    concavifying_transform,
    convexifying_transform,
    function_from_spec,
    random_concave_decreasing,
)


def names():
    return {f.name for f in catalog()}


def test_catalog_contents():
    cat = {f.name: f for f in catalog()}
    assert cat["pow:0.5"].class_claim == "doubly_concave"
    assert cat["log1p"].class_claim == "unclassified"
    tent = cat["tent:1"]
    assert (tent.domain.lo, tent.domain.hi) == (0.0, 2.0)
    assert float(tent.func(np.array(1.0))) == 1.0
    assert float(tent.func(np.array(0.5))) == 0.5


@pytest.mark.parametrize("f", [f for f in catalog() if f.class_claim == "doubly_concave"], ids=lambda f: f.name)
def test_catalog_doubly_concave_members_certify(f):
    rep = certify_doubly_concave(f)
    assert rep.ordinary_ok and rep.geometric_ok, rep


@pytest.mark.parametrize("f", [f for f in catalog() if f.class_claim == "doubly_convex"], ids=lambda f: f.name)
def test_catalog_doubly_convex_members_certify(f):
    rep = certify_doubly_convex(f, window=(1e-2, 1e2))
    assert rep.ordinary_ok and rep.geometric_ok, rep


def test_sqrt_on_window():
    rep = certify_doubly_concave(function_from_spec("pow:0.5"), window=(1e-3, 1e3))
    assert rep.ordinary_ok and rep.geometric_ok


def test_log1p_stays_unclassified_but_certifies():
    # log log(1 + e^s) has second derivative u(log(1+u) - u) / ((1+u)^2 log(1+u)^2) < 0,
    # so the grid check passes even though the catalog does not claim the class
    f = function_from_spec("log1p")
    assert f.class_claim == "unclassified"
    rep = certify_doubly_concave(f, window=(1e-3, 1e3))
    assert rep.ordinary_ok and rep.geometric_ok


def test_sin_on_half_period():
    rep = certify_doubly_concave(function_from_spec("sin"))
    assert rep.ordinary_ok and rep.geometric_ok


def test_concavifying_sqrt():
    g = concavifying_transform(function_from_spec("pow:0.5"), 0.5)
    t = np.linspace(0.1, 10, 7)
    np.testing.assert_allclose(g.func(t), np.sqrt(t), rtol=1e-13)
    assert certify_concave(g, window=(1e-2, 10)).ordinary_ok


def test_concavifying_identity_p1():
    g = concavifying_transform(function_from_spec("pow:1"), 1.0)
    t = np.linspace(0, 5, 6)
    np.testing.assert_allclose(g.func(t), t)


def test_concavifying_oneminusexp():
    g = concavifying_transform(function_from_spec("oneminusexp"), 0.5)
    lo, hi = math.sqrt(1e-2), math.sqrt(10)
    assert certify_concave(g, window=(lo, hi)).ordinary_ok


def test_convexifying_square():
    g = convexifying_transform(function_from_spec("powsum:1@2"), 2.0)
    t = np.linspace(0.1, 4, 6)
    np.testing.assert_allclose(g.func(t), t**2, rtol=1e-12)
    assert certify_convex(g, window=(0.1, 10)).ordinary_ok


def test_convexifying_identity_q1():
    g = convexifying_transform(function_from_spec("powsum:1@1"), 1.0)
    t = np.linspace(0.5, 5, 6)
    np.testing.assert_allclose(g.func(t), t)


def test_convexifying_reciprocal():
    g = convexifying_transform(function_from_spec("powsum:1@-1"), 2.0)
    assert certify_convex(g, window=(1e-2, 1e2)).ordinary_ok


def test_random_concave_decreasing_certifies(rng):
    for _ in range(20):
        f = random_concave_decreasing(rng, beta=float(rng.uniform(0.5, 3)))
        assert f.monotone == "decreasing"
        rep = certify_doubly_concave(f)
        assert rep.ordinary_ok and rep.geometric_ok


def test_parabola_is_nonnegative_on_unit_interval():
    f = function_from_spec("parabola")
    t = np.linspace(0, 1, 11)
    assert np.all(f.func(t) >= 0)
    assert float(f.func(np.array(0.5))) == 0.25


def test_report_consistency():
    rep = certify_doubly_concave(function_from_spec("log1p"), tol=1e-9)
    assert (rep.worst_violation >= -1e-9) == (rep.ordinary_ok and rep.geometric_ok)


@pytest.mark.parametrize("bad", ["nope", "pow", "pow:a", "frac:1", "powsum:", "powsum:1"])
def test_bad_specs(bad):
    with pytest.raises(ConfigError):
        function_from_spec(bad)


def test_custom_function_object():
    f = IntervalFunction("square", Interval(0, 2), lambda t: t * t)
    rep = certify_doubly_concave(f)
    assert not rep.ordinary_ok
