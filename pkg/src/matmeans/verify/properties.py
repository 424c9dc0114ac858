"""Registry of checkable inequalities.

Every :class:`Property` pairs a sampler with a pure checker. The sampler draws
one trial's inputs from a generator (matrices plus the discrete choices:
function, mean, anti-norm, exponent...), and the checker maps those inputs to
a signed margin that is non-negative when the inequality holds. Inputs are
plain data, so a trial can be serialized as a witness and replayed.

Margins are normalized: additive comparisons ``lhs >= rhs`` report
``(lhs - rhs) / (1 + |lhs| + |rhs|)``, Löwner comparisons report the smallest
eigenvalue of the difference over ``1 + ||X|| + ||Y||``, and majorization
relations report the margins of :mod:`matmeans.majorization`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from ..antinorms import AntiNorm, Norm, antinorm_from_spec, norm_from_spec
from ..errors import ConfigError
from ..hermitian import EigDecomposition, Interval, eigh, eigvalsh, hermitian, matrix_function, mexp, mlog, mpow, msqrt, random_unitary
from ..majorization import eigenvalue_dominates, log_majorizes, log_supermajorizes
from ..maps import PositiveMap, kraus_map, pinch_diag, pinching, schur_map, two_block_average, zero_power_map
from ..means import scalar_mean
from ..multi import karcher_mean, karcher_solve, simplex_cubature, weighted_arithmetic, weighted_harmonic
from ..scalar import DOUBLY_CONCAVE, DOUBLY_CONVEX, IntervalFunction, function_from_spec
from ..specs import Mean, mean_from_spec, scalar_power_mean
from . import sampling as smp

__all__ = [
    "HOLDS",
    "FAILS",
    "OPEN",
    "Property",
    "REGISTRY",
    "det_counterexample",
    "exact_det",
    "get_property",
    "registry_ids",
    "validate_knobs",
]

HOLDS = "holds"
FAILS = "fails"
OPEN = "open"


@dataclass(frozen=True)
class Property:
    """One registry entry.

    Attributes
    ----------
    id : str
        Registry identifier.
    summary : str
        What is checked, in words.
    expected : {"holds", "fails", "open"}
        ``fails`` marks a designed negative control, ``open`` an unsettled
        hypothesis whose failures are reported but never unexpected.
    sample : callable
        ``(rng, dim, knobs) -> inputs``.
    check : callable
        ``inputs -> margin``.
    knobs : tuple of str
        Knob names the sampler understands.
    deterministic : bool
        Inputs do not depend on the generator; one trial suffices.
    min_dim : int
    """

    id: str
    summary: str
    expected: str
    sample: Callable = field(repr=False)
    check: Callable = field(repr=False)
    knobs: tuple[str, ...] = ()
    deterministic: bool = False
    min_dim: int = 1


# --------------------------------------------------------------------------
# shared helpers
# --------------------------------------------------------------------------


@lru_cache(maxsize=256)
def _fn(spec: str) -> IntervalFunction:
    return function_from_spec(spec)


@lru_cache(maxsize=256)
def _anorm(spec: str) -> AntiNorm:
    return antinorm_from_spec(spec)


@lru_cache(maxsize=256)
def _norm(spec: str) -> Norm:
    return norm_from_spec(spec)


def _mean(spec: str) -> Mean:
    return mean_from_spec(spec)


def _geodesic(spec: str) -> Mean:
    m = _mean(spec)
    if m.rf is None or m.rf.measure is None:
        raise ConfigError(f"{spec} is not a geodesic mean")
    return m


# Eigenvalues this small relative to the largest are roundoff images of exact
# zeros. Roots and fractional powers would blow them up (1e-17 ** 0.25 is
# about 6e-5), so they are set to zero before any non-Lipschitz operation.
SNAP_RTOL = 1e-12
_NONNEG = Interval(0.0, math.inf)


def snap(values) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    return np.where(np.abs(values) <= SNAP_RTOL * scale, 0.0, values)


def spectral(a, g, dom: Interval):
    """``U g(L) U*`` with snapped eigenvalues whenever 0 lies in ``dom``."""
    d = eigh(a)
    values = snap(d.values) if 0.0 in dom else d.values
    return matrix_function(a, g, dom, decomposition=EigDecomposition(values, d.basis))


def fmat(spec: str, a):
    f = _fn(spec)
    return spectral(a, f, f.domain)


def desc(a) -> np.ndarray:
    """Snapped eigenvalues in decreasing order, clipped at 0."""
    return np.clip(snap(eigvalsh(a)), 0.0, None)


def power(a, p: float):
    return spectral(a, lambda x: x**p, _NONNEG)


def top_root(lam, k: int) -> float:
    """``(prod of the k largest)^{1/k}`` of a decreasing vector."""
    head = lam[:k]
    return 0.0 if head.min() <= 0 else float(math.exp(np.mean(np.log(head))))


def bot_root(lam, k: int) -> float:
    tail = lam[len(lam) - k :]
    return 0.0 if tail.min() <= 0 else float(math.exp(np.mean(np.log(tail))))


def rel(lhs, rhs) -> float:
    """Normalized slack of ``lhs >= rhs``."""
    lhs = float(lhs)
    rhs = float(rhs)
    return (lhs - rhs) / (1.0 + abs(lhs) + abs(rhs))


def loewner_margin(x, y) -> float:
    """Normalized smallest eigenvalue of ``X - Y`` (non-negative iff ``X >= Y``)."""
    scale = 1.0 + float(np.max(np.abs(eigvalsh(x)))) + float(np.max(np.abs(eigvalsh(y))))
    return float(eigvalsh(hermitian(x - y))[-1]) / scale


def singular_values(x) -> np.ndarray:
    """Singular values (decreasing) via the Hermitian dilation ``[[0, X], [X*, 0]]``."""
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[0]
    big = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    big[:n, n:] = x
    big[n:, :n] = x.conj().T
    return np.clip(eigvalsh(big)[:n], 0.0, None)


def _root_margins(lhs_fn, rhs_fn, n):
    return min(rel(lhs_fn(k), rhs_fn(k)) for k in range(1, n + 1))


def _pick(rng, knobs, key, options):
    value = knobs.get(key)
    if isinstance(value, (list, tuple)):
        return value[int(rng.integers(len(value)))]
    return smp.choose(rng, knobs, key, options)


# function families
DC_HALFLINE = ("pow:0.25", "pow:0.5", "pow:0.75", "pow:1", "frac", "sqrtfrac", "oneminusexp")
DC_OTHER = (
    "log", "shiftpow:0.5", "rootdiff:2", "parabola", "entropy", "circle", "sin", "cos",
    "sincos:0.5,0.5", "sincos:0.3,0.2", "minsincos", "tent:1", "tent4:1,2,4",
)  # fmt: skip
DC_ALL = DC_HALFLINE + DC_OTHER
DC_MONOTONE = tuple(s for s in DC_ALL if function_from_spec(s).monotone != "none")
CONVEX_ZERO = ("cpow:1.5", "cpow:2", "cpow:3", "expm1", "id")
CONVEX_DECREASING = ("powsum:1@-1", "powsum:1@-2", "powsum:1@-0.5")
DOUBLY_CONVEX = ("powsum:1@2", "powsum:1@-1", "powsum:1@0,2@1.5,0.5@-2", "cpow:1.5", "cpow:3", "powsum:1@1,1@-1")
INCREASING_CONCAVE = ("pow:0.25", "pow:0.5", "pow:1", "frac", "sqrtfrac", "oneminusexp", "log1p")

# two-variable means
GEOM_CONVEX_MEANS = (
    "mean:arith", "mean:geo:alpha=0.25", "mean:geo:alpha=0.5", "mean:geo:alpha=0.75",
    "mean:bp:p=0.25", "mean:bp:p=0.5", "mean:bp:p=0.75", "mean:bp:p=1",
    "mean:falpha:a=0.75", "mean:falpha:a=1", "mean:falpha:a=1.5", "mean:falpha:a=2",
    "mean:halpha:a=0", "mean:halpha:a=0.25", "mean:geodesic:atoms=(0.1,0.5),(0.8,0.5)",
)  # fmt: skip
GEOM_CONCAVE_MEANS = (
    "mean:harm", "mean:geo:alpha=0.25", "mean:geo:alpha=0.5", "mean:geo:alpha=0.75",
    "mean:bp:p=-0.5", "mean:bp:p=-1", "mean:falpha:a=-1", "mean:falpha:a=0", "mean:falpha:a=0.25",
)  # fmt: skip
GEODESIC_MEANS = (
    "mean:geo:alpha=0.5", "mean:falpha:a=1", "mean:bp:p=0.5", "mean:geo:alpha=0.25",
    "mean:halpha:a=0.25", "mean:falpha:a=2", "mean:falpha:a=0.75", "mean:bp:p=1",
    "mean:geodesic:atoms=(0,0.25),(0.5,0.5),(1,0.25)",
)  # fmt: skip
REGULAR_ANTINORMS = ("anorm:trace", "anorm:schatten:p=0.5", "anorm:schatten:p=0.25", "anorm:schatten:p=1")


def derived_antinorms(n: int) -> tuple[str, ...]:
    out = [f"anorm:derived:norm=kyfan:k={k},p={p:g}" for k in range(1, n + 1) for p in (0.5, 1.0, 2.0)]
    out += ["anorm:negschatten:p=0.5", "anorm:negschatten:p=1", "anorm:derived:norm=schatten:p=2,p=1"]
    out += ["anorm:derived:norm=operator,p=0.5", f"anorm:schattenkyfan:p=1,k={max(1, n - 1)}"]
    return tuple(out)


def all_antinorms(n: int) -> tuple[str, ...]:
    out = list(derived_antinorms(n)) + list(REGULAR_ANTINORMS)
    out += [f"anorm:kyfan:k={k}" for k in range(1, n + 1)]
    out += [f"anorm:delta:k={k}" for k in range(1, n + 1)] + ["anorm:minkowski"]
    out += [f"anorm:dual:of=anorm:kyfan:k={k}" for k in range(1, n + 1)]
    return tuple(out)


def norms(n: int) -> tuple[str, ...]:
    out = [f"norm:kyfan:k={k}" for k in range(1, n + 1)]
    return tuple(out + ["norm:schatten:p=1", "norm:schatten:p=2", "norm:schatten:p=3", "norm:operator", "norm:trace"])


def _anorm_value(spec: str, a) -> float:
    return _anorm(spec).gauge(desc(a))


# --------------------------------------------------------------------------
# positive maps described by plain data
# --------------------------------------------------------------------------

UNITAL_MAPS = ("pinch-diag", "two-block", "schur-ones")
ALL_MAPS = UNITAL_MAPS + ("kraus-subunital",)


def _sample_map(rng, n, name):
    """Map data for ``name``; returns ``(in_dim, extras)``."""
    if name == "two-block":
        return 2 * n, {}
    if name == "schur-ones":
        return n, {"S": smp.correlation_matrix(rng, n)}
    if name == "kraus-subunital":
        c = smp.psd(rng, n, 10.0, scale=False)
        c = c / eigvalsh(c)[0] * rng.uniform(0.5, 1.0)
        v = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))[0]
        return n, {"kraus": np.stack([msqrt(c) @ v])}
    if name == "pinch-diag":
        return n, {}
    raise ConfigError(f"unknown map {name!r}")


def build_map(inputs) -> PositiveMap:
    name = inputs["map"]
    n = inputs["n"]
    if name == "pinch-diag":
        return pinch_diag(n)
    if name == "two-block":
        return two_block_average(n)
    if name == "schur-ones":
        return schur_map(inputs["S"])
    if name == "kraus-subunital":
        return kraus_map(list(inputs["kraus"]))
    if name == "pinching":
        return pinching([int(b) for b in inputs["blocks"]])
    if name == "mixed-unitary":
        return kraus_map(list(inputs["kraus"]))
    raise ConfigError(f"unknown map {name!r}")


# --------------------------------------------------------------------------
# Jensen inequalities for power maps
# --------------------------------------------------------------------------


def _sample_jensen(rng, n, knobs, fns, maps, ps, *, p0=False, monotone=False):
    f = _pick(rng, knobs, "f", fns)
    dom = _fn(f).domain
    map_opts = [m for m in maps if m != "kraus-subunital" or dom.lo == 0]
    name = _pick(rng, knobs, "map", map_opts)
    in_dim, extras = _sample_map(rng, n, name)
    p = 0.0 if p0 else float(_pick(rng, knobs, "p", ps))
    cond = 1e6 if p0 else 100.0
    z = smp.in_domain(rng, in_dim, dom, cond_max=cond)
    return {"f": f, "map": name, "n": n, "p": p, "Z": z, **extras}


def power_map(e: PositiveMap, z, p: float):
    """``E(Z^p)^{1/p}`` for any ``p > 0``; ``p = 0`` gives ``exp E(log Z)``."""
    if p == 0:
        return zero_power_map(e, z)
    return power(e.apply(power(z, p)), 1.0 / p)


def _jensen_pair(inputs):
    e = build_map(inputs)
    f, z, p = inputs["f"], inputs["Z"], inputs["p"]
    return fmat(f, power_map(e, z, p)), power_map(e, fmat(f, z), p)


def check_logsup(inputs):
    x, y = _jensen_pair(inputs)
    return log_supermajorizes(x, y).worst_margin


def check_dominance(inputs):
    x, y = _jensen_pair(inputs)
    return eigenvalue_dominates(x, y).worst_margin


def check_p0(inputs):
    x, y = _jensen_pair(inputs)
    margin = log_supermajorizes(x, y).worst_margin
    if _fn(inputs["f"]).monotone != "none":
        margin = min(margin, eigenvalue_dominates(x, y).worst_margin)
    return margin


P_OPTIONS = (0.25, 0.5, 0.75, 1.0)


def sample_thm27_logsup(rng, n, knobs):
    return _sample_jensen(rng, n, knobs, DC_ALL, ALL_MAPS, P_OPTIONS)


def sample_thm27_dominance(rng, n, knobs):
    return _sample_jensen(rng, n, knobs, DC_MONOTONE, ALL_MAPS, P_OPTIONS)


def sample_thm27_p0(rng, n, knobs):
    fns = tuple(s for s in DC_ALL if s not in ("pow:0",))
    return _sample_jensen(rng, n, knobs, fns, UNITAL_MAPS, P_OPTIONS, p0=True)


# power means of two matrices


def matrix_power_mean(a, b, p: float):
    """``((A^p + B^p)/2)^{1/p}`` for any ``p > 0``; ``p = 0`` gives the log-Euclidean midpoint."""
    if p == 0:
        return mexp(0.5 * (mlog(a) + mlog(b)))
    return power(0.5 * (power(a, p) + power(b, p)), 1.0 / p)


def sample_cor28(rng, n, knobs):
    f = _pick(rng, knobs, "f", DC_HALFLINE)
    p = float(_pick(rng, knobs, "p", P_OPTIONS + (0.0,)))
    sing = 0.0 if p == 0 else 0.15
    return {"f": f, "p": p, "A": smp.psd(rng, n, singular_prob=sing), "B": smp.psd(rng, n, singular_prob=sing)}


def check_cor28(inputs):
    f, p, a, b = inputs["f"], inputs["p"], inputs["A"], inputs["B"]
    x = fmat(f, matrix_power_mean(a, b, p))
    y = matrix_power_mean(fmat(f, a), fmat(f, b), p)
    return eigenvalue_dominates(x, y).worst_margin


def sample_cor29(rng, n, knobs):
    f = _pick(rng, knobs, "f", DC_HALFLINE)
    p = float(_pick(rng, knobs, "p", P_OPTIONS))
    g = smp.psd(rng, n, 10.0, scale=False)
    s = g / np.max(np.diagonal(g).real) * rng.uniform(0.3, 1.0)
    return {"f": f, "p": p, "S": s, "Z": smp.psd(rng, n, singular_prob=0.15)}


def check_cor29(inputs):
    f, p, s, z = inputs["f"], inputs["p"], inputs["S"], inputs["Z"]
    e = schur_map(s)
    x = fmat(f, power_map(e, z, p))
    y = power_map(e, fmat(f, z), p)
    return eigenvalue_dominates(x, y).worst_margin


def det_root(a) -> float:
    return bot_root(desc(a), a.shape[0])


def sample_cor211(rng, n, knobs):
    f = _pick(rng, knobs, "f", DC_ALL)
    dom = _fn(f).domain
    p = float(_pick(rng, knobs, "p", P_OPTIONS + (0.0,)))
    return {"f": f, "p": p, "A": smp.in_domain(rng, n, dom), "B": smp.in_domain(rng, n, dom)}


def check_cor211(inputs):
    f, p, a, b = inputs["f"], inputs["p"], inputs["A"], inputs["B"]
    lhs = det_root(fmat(f, matrix_power_mean(a, b, p)))
    rhs = scalar_power_mean(det_root(fmat(f, a)), det_root(fmat(f, b)), p)
    return rel(lhs, rhs)


Q_OPTIONS = (1.0, 1.5, 2.0, 3.0)


def sample_prop213(rng, n, knobs):
    if knobs.get("g") is None:
        g = _pick(rng, knobs, "g", CONVEX_DECREASING if rng.random() < 0.3 else CONVEX_ZERO)
    else:
        g = _pick(rng, knobs, "g", ())
    decreasing = _fn(g).monotone == "decreasing"
    maps = UNITAL_MAPS if decreasing else ALL_MAPS
    name = _pick(rng, knobs, "map", maps)
    in_dim, extras = _sample_map(rng, n, name)
    q = float(_pick(rng, knobs, "q", Q_OPTIONS))
    z = smp.psd(rng, in_dim, 10.0, singular_prob=0.0 if decreasing else 0.15, scale=False)
    return {"g": g, "map": name, "n": n, "q": q, "Z": z, **extras}


def check_prop213(inputs):
    e = build_map(inputs)
    g, q, z = inputs["g"], inputs["q"], inputs["Z"]
    lhs = fmat(g, power_map(e, z, q))
    rhs = power_map(e, fmat(g, z), q)
    return eigenvalue_dominates(rhs, lhs).worst_margin


def sample_cor214(rng, n, knobs):
    g = _pick(rng, knobs, "g", CONVEX_ZERO)
    q = float(_pick(rng, knobs, "q", Q_OPTIONS))
    return {"g": g, "q": q, "A": smp.psd(rng, n, 10.0, 0.15, False), "B": smp.psd(rng, n, 10.0, 0.15, False)}


def check_cor214(inputs):
    g, q, a, b = inputs["g"], inputs["q"], inputs["A"], inputs["B"]
    lhs = fmat(g, matrix_power_mean(a, b, q))
    rhs = matrix_power_mean(fmat(g, a), fmat(g, b), q)
    return eigenvalue_dominates(rhs, lhs).worst_margin


# --------------------------------------------------------------------------
# Minkowski type inequalities for Kubo–Ando means
# --------------------------------------------------------------------------


def _sample_pair(rng, n, knobs, means, **extra):
    mean = _pick(rng, knobs, "mean", means)
    return {"mean": mean, "A": smp.psd(rng, n), "B": smp.psd(rng, n), **extra}


def _pair_spectra(inputs):
    m = _mean(inputs["mean"])
    a, b = inputs["A"], inputs["B"]
    return m, desc(m.matrix(a, b)), desc(a), desc(b)


def sample_thm31i(rng, n, knobs):
    return _sample_pair(rng, n, knobs, GEOM_CONVEX_MEANS)


def check_thm31i(inputs):
    m, s, la, lb = _pair_spectra(inputs)
    n = len(la)
    one = _root_margins(lambda k: top_root(s, k), lambda k: m.scalar(top_root(la, k), bot_root(lb, k)), n)
    two = _root_margins(lambda k: top_root(s, k), lambda k: m.scalar(bot_root(la, k), top_root(lb, k)), n)
    return min(one, two)


def sample_thm31ii(rng, n, knobs):
    return _sample_pair(rng, n, knobs, GEOM_CONCAVE_MEANS)


def check_thm31ii(inputs):
    m, s, la, lb = _pair_spectra(inputs)
    n = len(la)
    one = _root_margins(lambda k: m.scalar(bot_root(la, k), top_root(lb, k)), lambda k: bot_root(s, k), n)
    two = _root_margins(lambda k: m.scalar(top_root(la, k), bot_root(lb, k)), lambda k: bot_root(s, k), n)
    return min(one, two)


def sample_cor32(rng, n, knobs):
    return _sample_pair(rng, n, knobs, tuple(dict.fromkeys(GEOM_CONVEX_MEANS + GEOM_CONCAVE_MEANS)))


def check_cor32(inputs):
    m, s, la, lb = _pair_spectra(inputs)
    n = len(la)
    lhs = bot_root(s, n)
    rhs = float(m.scalar(bot_root(la, n), bot_root(lb, n)))
    margins = []
    if m.rf.is_geom_convex:
        margins.append(rel(lhs, rhs))
    if m.rf.is_geom_concave:
        margins.append(rel(rhs, lhs))
    if not margins:
        raise ConfigError(f"{inputs['mean']} has no geometric class")
    return min(margins)


ALPHAS = (0.25, 0.5, 0.75)


def sample_prop35(rng, n, knobs):
    alpha = float(_pick(rng, knobs, "alpha", ALPHAS + (float(rng.uniform()),)))
    return {"alpha": alpha, "A": smp.psd(rng, n), "B": smp.psd(rng, n)}


def _geo_scalar(x, y, alpha):
    return x ** (1.0 - alpha) * y**alpha


def check_prop35(inputs):
    alpha, a, b = inputs["alpha"], inputs["A"], inputs["B"]
    m = mean_from_spec(f"mean:geo:alpha={alpha!r}")
    s, la, lb = desc(m.matrix(a, b)), desc(a), desc(b)
    n = len(la)
    margins = [
        _root_margins(lambda k: top_root(s, k), lambda k: _geo_scalar(top_root(la, k), bot_root(lb, k), alpha), n),
        _root_margins(lambda k: _geo_scalar(top_root(la, k), top_root(lb, k), alpha), lambda k: top_root(s, k), n),
        _root_margins(lambda k: _geo_scalar(bot_root(la, k), top_root(lb, k), alpha), lambda k: bot_root(s, k), n),
        _root_margins(lambda k: bot_root(s, k), lambda k: _geo_scalar(bot_root(la, k), bot_root(lb, k), alpha), n),
    ]
    return min(margins)


def sample_cor36(rng, n, knobs):
    return sample_prop35(rng, n, knobs)


def check_cor36(inputs):
    alpha, a, b = inputs["alpha"], inputs["A"], inputs["B"]
    g = mean_from_spec(f"mean:geo:alpha={alpha!r}").matrix(a, b)
    sorted_mean = np.diag(desc(a) ** (1.0 - alpha) * desc(b) ** alpha)
    return log_majorizes(g, sorted_mean).worst_margin


def sample_prop37(rng, n, knobs):
    return _sample_pair(rng, n, knobs, GEODESIC_MEANS)


def check_prop37(inputs):
    m, s, la, lb = _pair_spectra(inputs)
    _geodesic(inputs["mean"])
    n = len(la)
    return _root_margins(lambda k: bot_root(s, k), lambda k: m.scalar(bot_root(la, k), bot_root(lb, k)), n)


def conj17_margin(mean_spec: str, a, b) -> float:
    """Both relations ``A↓ σ B↑ ≺^{w(log)} A σ B ≺^{w(log)} A↓ σ B↓``."""
    m = _mean(mean_spec)
    la, lb = desc(a), desc(b)
    mid = m.matrix(a, b)
    low = np.diag(m.scalar(la, lb[::-1]))
    high = np.diag(m.scalar(la, lb))
    return min(log_supermajorizes(low, mid).worst_margin, log_supermajorizes(mid, high).worst_margin)


def random_geom_convex_mean(rng) -> str:
    """A mean from the conjecture's search space, with continuous parameters."""
    kind = int(rng.integers(5))
    if kind == 0:
        return "mean:arith"
    if kind == 1:
        return f"mean:bp:p={float(rng.uniform(0.01, 1.0))!r}"
    if kind == 2:
        return f"mean:falpha:a={float(rng.uniform(0.5, 2.0))!r}"
    if kind == 3:
        return f"mean:halpha:a={float(rng.uniform(0.0, 0.5))!r}"
    k = int(rng.integers(2, 4))
    alphas = rng.uniform(0.0, 1.0, k)
    w = rng.dirichlet(np.ones(k))
    w[-1] = 1.0 - w[:-1].sum()
    return "mean:geodesic:atoms=" + ",".join(f"({a!r},{x!r})" for a, x in zip(alphas.tolist(), w.tolist()))


def sample_conj17(rng, n, knobs):
    mean = knobs.get("mean") or random_geom_convex_mean(rng)
    return {"mean": mean, "A": smp.psd(rng, n), "B": smp.psd(rng, n)}


def check_conj17(inputs):
    return conj17_margin(inputs["mean"], inputs["A"], inputs["B"])


def sample_rem33(rng, n, knobs):
    return {"A": smp.psd(rng, n), "B": smp.psd(rng, n)}


def check_rem33(inputs):
    """The false claim ``μ_1(A ∇ B) >= μ_1(A) ∇ μ_1(B)``."""
    a, b = inputs["A"], inputs["B"]
    lhs = desc(0.5 * (a + b))[0]
    rhs = 0.5 * (desc(a)[0] + desc(b)[0])
    return rel(lhs, rhs)


# --------------------------------------------------------------------------
# anti-norm inequalities for two-variable means
# --------------------------------------------------------------------------


def _sample_fab(rng, n, knobs, fns, **extra):
    f = _pick(rng, knobs, "f", fns)
    dom = _fn(f).domain
    return {"f": f, "A": smp.in_domain(rng, n, dom), "B": smp.in_domain(rng, n, dom), **extra}


def sample_thm47(rng, n, knobs):
    mean = _pick(rng, knobs, "mean", GEODESIC_MEANS)
    anorm = _pick(rng, knobs, "anorm", derived_antinorms(n))
    return _sample_fab(rng, n, knobs, DC_ALL, mean=mean, anorm=anorm)


def check_thm47(inputs):
    m = _geodesic(inputs["mean"])
    f, a, b, spec = inputs["f"], inputs["A"], inputs["B"], inputs["anorm"]
    if not _anorm(spec).is_derived:
        raise ConfigError(f"{spec} is not a derived anti-norm")
    lhs = _anorm_value(spec, fmat(f, m.matrix(a, b)))
    rhs = m.scalar(_anorm_value(spec, fmat(f, a)), _anorm_value(spec, fmat(f, b)))
    return rel(lhs, rhs)


def sample_cor48(rng, n, knobs):
    mean = _pick(rng, knobs, "mean", GEODESIC_MEANS)
    return _sample_fab(rng, n, knobs, DC_ALL, mean=mean)


def check_cor48(inputs):
    m = _geodesic(inputs["mean"])
    f, a, b = inputs["f"], inputs["A"], inputs["B"]
    s, fa, fb = desc(fmat(f, m.matrix(a, b))), desc(fmat(f, a)), desc(fmat(f, b))
    n = len(s)
    return _root_margins(lambda k: bot_root(s, k), lambda k: m.scalar(bot_root(fa, k), bot_root(fb, k)), n)


def sample_rem49(rng, n, knobs):
    """Orthogonally supported ``A = U diag(a, 0) U*`` and ``B = U diag(0, b) U*``."""
    r = int(rng.integers(1, n))
    u = random_unitary(rng, n)
    lam_a = np.zeros(n)
    lam_b = np.zeros(n)
    lam_a[:r] = np.exp(rng.uniform(-1.0, 1.0, r))
    lam_b[r:] = np.exp(rng.uniform(-1.0, 1.0, n - r))
    anorm = _pick(rng, knobs, "anorm", REGULAR_ANTINORMS + (f"anorm:kyfan:k={n}",))
    mean = knobs.get("mean") or "mean:falpha:a=1"
    return {"mean": mean, "anorm": anorm, "U": u, "a": lam_a, "b": lam_b}


def check_rem49(inputs):
    """Commuting inputs, so ``A σ B`` is evaluated exactly through scalar means."""
    m = _mean(inputs["mean"])
    u, la, lb = inputs["U"], inputs["a"], inputs["b"]
    spec = inputs["anorm"]
    mid = np.asarray(m.scalar(la, lb), dtype=float)
    a = hermitian((u * la) @ u.conj().T)
    b = hermitian((u * lb) @ u.conj().T)
    lhs = _anorm(spec).gauge(mid)
    rhs = m.scalar(_anorm_value(spec, a), _anorm_value(spec, b))
    return rel(lhs, rhs)


def sample_prop412(rng, n, knobs):
    anorm = _pick(rng, knobs, "anorm", derived_antinorms(n))
    p = float(_pick(rng, knobs, "p", P_OPTIONS + (0.0,)))
    return _sample_fab(rng, n, knobs, DC_ALL, anorm=anorm, p=p)


def check_prop412(inputs):
    f, a, b, spec, p = inputs["f"], inputs["A"], inputs["B"], inputs["anorm"], inputs["p"]
    if not _anorm(spec).is_derived:
        raise ConfigError(f"{spec} is not a derived anti-norm")
    x, y = fmat(f, a), fmat(f, b)
    nx, ny = _anorm_value(spec, x), _anorm_value(spec, y)
    lhs = _anorm_value(spec, fmat(f, matrix_power_mean(a, b, p)))
    margin = rel(lhs, scalar_power_mean(nx, ny, p))
    if p > 0:
        # superadditivity of X -> ||X^{1/p}||^p in the form ||(X^p + Y^p)^{1/p}||^p >= ||X||^p + ||Y||^p
        s = 2.0 ** (1.0 / p) * matrix_power_mean(x, y, p)
        margin = min(margin, rel(_anorm_value(spec, s) ** p, nx**p + ny**p))
    return margin


def sample_prop413(rng, n, knobs):
    mean = _pick(rng, knobs, "mean", GEODESIC_MEANS)
    norm = _pick(rng, knobs, "norm", norms(n))
    g = _pick(rng, knobs, "g", DOUBLY_CONVEX)
    return {"g": g, "mean": mean, "norm": norm, "A": smp.psd(rng, n, 30.0), "B": smp.psd(rng, n, 30.0)}


def check_prop413(inputs):
    m = _geodesic(inputs["mean"])
    g, a, b, nrm = inputs["g"], inputs["A"], inputs["B"], _norm(inputs["norm"])
    lhs = nrm(fmat(g, m.matrix(a, b)))
    rhs = m.scalar(nrm(fmat(g, a)), nrm(fmat(g, b)))
    return rel(rhs, lhs)


# --------------------------------------------------------------------------
# m-variable geodesic means
# --------------------------------------------------------------------------

M_OPTIONS = (2, 3, 4)


def _sample_measure(rng, m):
    if rng.random() < 0.5:
        k = int(rng.integers(1, 5))
        pts = rng.dirichlet(np.ones(m), size=k)
        mass = rng.dirichlet(np.ones(k))
        return pts, mass
    return simplex_cubature(m, int(rng.integers(2, 4)))


def _sample_multi(rng, n, knobs, dom=None, cond=100.0):
    m = int(_pick(rng, knobs, "m", M_OPTIONS))
    pts, mass = _sample_measure(rng, m)
    if dom is None:
        mats = np.stack([smp.psd(rng, n, cond) for _ in range(m)])
    else:
        mats = np.stack([smp.in_domain(rng, n, dom, cond) for _ in range(m)])
    return {"mats": mats, "nu_points": pts, "nu_mass": mass}


def sigma_m(points, mass, mats):
    """``Σ mass_k G_m(w_k; A)`` for a discrete measure on the simplex."""
    g = karcher_solve(np.asarray(points), np.asarray(mats)[None], None).mean
    return hermitian(np.einsum("k,kij->ij", np.asarray(mass), g))


def scalar_sigma_m(points, mass, values) -> float:
    with np.errstate(divide="ignore"):
        logs = np.log(np.asarray(values, dtype=float))
    if np.any(np.isneginf(logs)):
        # a zero argument with positive weight sends the geometric mean to 0
        pts = np.asarray(points)
        zero = np.isneginf(logs)
        vals = np.where(np.any(pts[:, zero] > 0, axis=1), 0.0, np.exp(pts[:, ~zero] @ logs[~zero]))
        return float(np.asarray(mass) @ vals)
    return float(np.asarray(mass) @ np.exp(np.asarray(points) @ logs))


def sample_prop52(rng, n, knobs):
    return _sample_multi(rng, n, knobs)


def check_prop52(inputs):
    pts, mass, mats = inputs["nu_points"], inputs["nu_mass"], inputs["mats"]
    s = sigma_m(pts, mass, mats)
    wbar = np.asarray(mass) @ np.asarray(pts)
    wbar = wbar / wbar.sum()
    return min(loewner_margin(s, weighted_harmonic(wbar, mats)), loewner_margin(weighted_arithmetic(wbar, mats), s))


def sample_prop53(rng, n, knobs):
    m = int(_pick(rng, knobs, "m", M_OPTIONS))
    return {"w": smp.dirichlet_weights(rng, m), "mats": np.stack([smp.psd(rng, n) for _ in range(m)])}


def check_prop53(inputs):
    w, mats = inputs["w"], inputs["mats"]
    g = karcher_mean(w, mats)
    logs = np.log(np.stack([desc(a) for a in mats]))
    return log_majorizes(g, np.diag(np.exp(w @ logs))).worst_margin


def sample_prop54(rng, n, knobs):
    return _sample_multi(rng, n, knobs)


def check_prop54(inputs):
    pts, mass, mats = inputs["nu_points"], inputs["nu_mass"], inputs["mats"]
    s = desc(sigma_m(pts, mass, mats))
    specs = [desc(a) for a in mats]
    n = len(s)
    return _root_margins(lambda k: bot_root(s, k), lambda k: scalar_sigma_m(pts, mass, [bot_root(x, k) for x in specs]), n)


def sample_thm55(rng, n, knobs):
    f = _pick(rng, knobs, "f", DC_ALL)
    dom = _fn(f).domain
    out = _sample_multi(rng, n, knobs, dom=dom)
    out["f"] = f
    out["anorm"] = _pick(rng, knobs, "anorm", derived_antinorms(n))
    out["g"] = _pick(rng, knobs, "g", DOUBLY_CONVEX)
    out["norm"] = _pick(rng, knobs, "norm", norms(n))
    # the convex half runs on its own positive matrices
    out["mats_g"] = np.stack([smp.psd(rng, n, 30.0) for _ in range(out["mats"].shape[0])])
    return out


def check_thm55(inputs):
    pts, mass = inputs["nu_points"], inputs["nu_mass"]
    f, spec, mats = inputs["f"], inputs["anorm"], inputs["mats"]
    if not _anorm(spec).is_derived:
        raise ConfigError(f"{spec} is not a derived anti-norm")
    lhs = _anorm_value(spec, fmat(f, sigma_m(pts, mass, mats)))
    rhs = scalar_sigma_m(pts, mass, [_anorm_value(spec, fmat(f, a)) for a in mats])
    first = rel(lhs, rhs)
    g, nrm, mats_g = inputs["g"], _norm(inputs["norm"]), inputs["mats_g"]
    lhs2 = nrm(fmat(g, sigma_m(pts, mass, mats_g)))
    rhs2 = scalar_sigma_m(pts, mass, [nrm(fmat(g, a)) for a in mats_g])
    return min(first, rel(rhs2, lhs2))


def sample_bk_norm(rng, n, knobs):
    out = sample_prop53(rng, n, knobs)
    out["norm"] = _pick(rng, knobs, "norm", norms(n))
    return out


def check_bk_norm(inputs):
    w, mats, nrm = inputs["w"], inputs["mats"], _norm(inputs["norm"])
    lhs = nrm(karcher_mean(w, mats))
    rhs = float(np.prod([nrm(a) ** wi for a, wi in zip(mats, w)]))
    return rel(rhs, lhs)


def sample_bk_antinorm(rng, n, knobs):
    out = sample_prop53(rng, n, knobs)
    out["anorm"] = _pick(rng, knobs, "anorm", derived_antinorms(n))
    return out


def check_bk_antinorm(inputs):
    w, mats, spec = inputs["w"], inputs["mats"], inputs["anorm"]
    lhs = _anorm_value(spec, karcher_mean(w, mats))
    rhs = float(np.prod([_anorm_value(spec, a) ** wi for a, wi in zip(mats, w)]))
    return rel(lhs, rhs)


# --------------------------------------------------------------------------
# further anti-norm inequalities
# --------------------------------------------------------------------------


def sample_cor64(rng, n, knobs):
    name = _pick(rng, knobs, "map", ("pinching", "mixed-unitary", "schur-ones"))
    out = {"map": name, "n": n, "anorm": _pick(rng, knobs, "anorm", all_antinorms(n))}
    if name == "pinching":
        cuts = np.sort(rng.choice(np.arange(1, n), size=int(rng.integers(0, n)), replace=False)) if n > 1 else []
        out["blocks"] = np.diff(np.concatenate(([0], cuts, [n]))).astype(float)
    elif name == "mixed-unitary":
        out["kraus"] = smp.mixed_unitary_kraus(rng, n, int(rng.integers(1, 4)))
    else:
        out["S"] = smp.correlation_matrix(rng, n)
    out["Z"] = smp.psd(rng, n, singular_prob=0.15)
    return out


def check_cor64(inputs):
    e = build_map(inputs)
    spec, z = inputs["anorm"], inputs["Z"]
    return rel(_anorm_value(spec, e.apply(z)), _anorm_value(spec, z))


def _diag_dominant(rng, n):
    c = smp.correlation_matrix(rng, n)
    d = np.sqrt(rng.uniform(1.0, 3.0, n))
    return hermitian(c * d[:, None] * d[None, :])


def sample_thm65(rng, n, knobs):
    return {"S": _diag_dominant(rng, n), "Z": smp.psd(rng, n, singular_prob=0.15), "anorm": _pick(rng, knobs, "anorm", all_antinorms(n))}


def check_thm65(inputs):
    s, z, spec = inputs["S"], inputs["Z"], inputs["anorm"]
    if np.any(np.diagonal(s).real < 1.0 - 1e-12):
        raise ConfigError("the Schur multiplier needs diagonal entries >= 1")
    return rel(_anorm_value(spec, hermitian(s * z)), _anorm_value(spec, z))


def sample_cor66(rng, n, knobs):
    return {"S": _diag_dominant(rng, n), "Z": smp.psd(rng, n, singular_prob=0.15), "f": _pick(rng, knobs, "f", INCREASING_CONCAVE)}


def check_cor66(inputs):
    s, z, f = inputs["S"], inputs["Z"], _fn(inputs["f"])
    lhs = float(np.sum(f(desc(hermitian(s * z)))))
    rhs = float(np.sum(f(desc(z))))
    return rel(lhs, rhs)


def agm_kernel(lam, alpha: float) -> np.ndarray:
    """``K_ij = cosh((1-α) r/2) sinh(α r/2)/(α r/2)`` with ``r = log(λ_i/λ_j)``; ``α = 0`` is the limit."""
    r = np.log(lam)[:, None] - np.log(lam)[None, :]
    if alpha == 0:
        return np.cosh(r / 2.0)
    x = alpha * r / 2.0
    with np.errstate(invalid="ignore", divide="ignore"):
        sinhc = np.where(x == 0, 1.0, np.sinh(x) / np.where(x == 0, 1.0, x))
    return np.cosh((1.0 - alpha) * r / 2.0) * sinhc


def agm_integral(a, z, alpha: float):
    """``(1/2α) ∫_0^α (A^{t-1/2} Z A^{1/2-t} + A^{1/2-t} Z A^{t-1/2}) dt`` in closed form."""
    lam, u = eigh(a)
    zt = u.conj().T @ z @ u
    return hermitian(u @ (agm_kernel(lam, alpha) * zt) @ u.conj().T)


def _psd_ok(x, rtol=1e-12) -> bool:
    ev = eigvalsh(x)
    return bool(ev[-1] >= -rtol * max(abs(ev[0]), 1e-300))


def _sample_preconditioned(rng, n, accept, max_attempts=1000):
    a = smp.psd(rng, n)
    for attempt in range(1, max_attempts + 1):
        z = smp.psd_commuting_mix(rng, a)
        if accept(a, z):
            return a, z, attempt
    # a commuting Z always satisfies the constraint
    lam, u = eigh(a)
    return a, hermitian((u * rng.permutation(lam)) @ u.conj().T), max_attempts + 1


AGM_ALPHAS = (0.0, 0.1, 0.25, 0.5)


def sample_cor67(rng, n, knobs):
    alpha = float(_pick(rng, knobs, "alpha", AGM_ALPHAS))
    a, z, attempts = _sample_preconditioned(rng, n, lambda a, z: _psd_ok(agm_integral(a, z, alpha)))
    return {"alpha": alpha, "A": a, "Z": z, "anorm": _pick(rng, knobs, "anorm", all_antinorms(n)), "attempts": attempts}


def check_cor67(inputs):
    alpha, a, z, spec = inputs["alpha"], inputs["A"], inputs["Z"], inputs["anorm"]
    m = agm_integral(a, z, alpha)
    if not _psd_ok(m):
        raise ConfigError("integral is not positive semidefinite")
    return rel(_anorm_value(spec, z), _anorm_value(spec, m))


def sample_agm(rng, n, knobs):
    a, z, attempts = _sample_preconditioned(rng, n, lambda a, z: _psd_ok(hermitian(a @ z + z @ a)))
    return {"A": a, "Z": z, "anorm": _pick(rng, knobs, "anorm", all_antinorms(n)), "attempts": attempts}


def check_agm(inputs):
    a, z, spec = inputs["A"], inputs["Z"], inputs["anorm"]
    s = hermitian(a @ z + z @ a)
    if not _psd_ok(s):
        raise ConfigError("AZ + ZA is not positive semidefinite")
    r = msqrt(a)
    return rel(_anorm_value(spec, hermitian(r @ z @ r)), 0.5 * _anorm_value(spec, s))


def det_counterexample():
    """The 4x4 pair with ``det((AZ+ZA)/2) = 1/16`` while ``det A det Z = 0``."""
    a = np.diag([1.0, 0.0, 1.0, 0.0])
    j = np.ones((2, 2))
    z = np.block([[j, np.zeros((2, 2))], [np.zeros((2, 2)), j]])
    return a, z


def exact_det(rows) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            factor = m[r][c] / m[c][c]
            m[r] = [x - factor * y for x, y in zip(m[r], m[c])]
    return det


def sample_det(rng, n, knobs):
    a, z = det_counterexample()
    return {"A": a, "Z": z}


def det_values(a, z) -> tuple[Fraction, Fraction]:
    """Exact ``(det((AZ+ZA)/2), det A det Z)`` for real matrices with float entries."""
    fa = [[Fraction(float(x)) for x in row] for row in np.asarray(a).real]
    fz = [[Fraction(float(x)) for x in row] for row in np.asarray(z).real]
    n = len(fa)
    az = [[sum(fa[i][k] * fz[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    za = [[sum(fz[i][k] * fa[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    mid = [[(az[i][j] + za[i][j]) / 2 for j in range(n)] for i in range(n)]
    return exact_det(mid), exact_det(fa) * exact_det(fz)


def check_det(inputs):
    """Slack of the claim ``det A det Z >= det((AZ+ZA)/2)``, computed exactly."""
    mid, prod = det_values(inputs["A"], inputs["Z"])
    return float((prod - mid) / (1 + abs(prod) + abs(mid)))


def sample_revholder(rng, n, knobs):
    p = float(_pick(rng, knobs, "p", (0.25, 0.5, 0.75, float(rng.uniform(0.05, 0.95)))))
    return {"p": p, "norm": _pick(rng, knobs, "norm", norms(n)), "A": smp.psd(rng, n), "B": smp.psd(rng, n)}


def check_revholder(inputs):
    p, nrm, a, b = inputs["p"], _norm(inputs["norm"]), inputs["A"], inputs["B"]
    q = p / (p - 1.0)
    lhs = nrm.gauge(singular_values(a @ b))
    rhs = nrm.gauge(desc(a) ** p) ** (1.0 / p) * nrm.gauge(desc(b) ** q) ** (1.0 / q)
    return rel(lhs, rhs)


def sample_chain(rng, n, knobs):
    r = float(_pick(rng, knobs, "r", (0.5, 0.25)))
    return {"r": r, "norm": _pick(rng, knobs, "norm", norms(n)), "A": smp.psd(rng, n, 10.0), "B": smp.psd(rng, n, 10.0)}


def check_chain(inputs):
    r, nrm, a, b = inputs["r"], _norm(inputs["norm"]), inputs["A"], inputs["B"]
    t1 = nrm.gauge(singular_values(mpow(a, 1.0 / r) @ mpow(b, 1.0 / r)) ** r)
    t2 = nrm.gauge(singular_values(a @ b))
    t3 = nrm.gauge(singular_values(mpow(a, r) @ mpow(b, r)) ** (1.0 / r))
    t4 = nrm.gauge(desc(a) * desc(b)[::-1])
    return min(rel(t1, t2), rel(t2, t3), rel(t3, t4))


def sample_cor69(rng, n, knobs):
    return {"A": smp.psd(rng, n), "B": smp.psd(rng, n)}


def check_cor69(inputs):
    a, b = inputs["A"], inputs["B"]
    s = desc(matrix_power_mean(a, b, 0.0))
    la, lb = desc(a), desc(b)
    n = len(s)
    return _root_margins(lambda k: float(np.mean(s[:k])), lambda k: math.sqrt(top_root(la, k) * bot_root(lb, k)), n)


# --------------------------------------------------------------------------
# registry
# --------------------------------------------------------------------------

_F = ("f",)
_ENTRIES = [
    Property("thm-2.7-logsup", "f(E_p(Z)) is log-supermajorized by E_p(f(Z)) for doubly concave f", HOLDS,
             sample_thm27_logsup, check_logsup, ("f", "p", "map")),
    Property("thm-2.7-dominance", "eigenvalues of f(E_p(Z)) dominate those of E_p(f(Z)) for monotone doubly concave f", HOLDS,
             sample_thm27_dominance, check_dominance, ("f", "p", "map")),
    Property("thm-2.7-p0", "both Jensen relations for E_0(Z) = exp E(log Z), unital E, invertible Z", HOLDS,
             sample_thm27_p0, check_p0, ("f", "map")),
    Property("cor-2.8", "eigenvalues of f(A β_p B) dominate those of f(A) β_p f(B)", HOLDS,
             sample_cor28, check_cor28, ("f", "p")),
    Property("cor-2.9", "Schur-product Jensen inequality with a multiplier of diagonal at most 1", HOLDS,
             sample_cor29, check_cor29, ("f", "p")),
    Property("cor-2.11", "det^{1/n} f(A β_p B) >= det^{1/n} f(A) β_p det^{1/n} f(B)", HOLDS,
             sample_cor211, check_cor211, ("f", "p")),
    Property("prop-2.13", "g(E_q(Z)) is eigenvalue-dominated by E_q(g(Z)) for convex g, q >= 1", HOLDS,
             sample_prop213, check_prop213, ("g", "q", "map")),
    Property("cor-2.14", "g(A β_q B) is eigenvalue-dominated by g(A) β_q g(B) for convex g with g(0) = 0", HOLDS,
             sample_cor214, check_cor214, ("g", "q")),
    Property("thm-3.1-i", "top-k products of A σ B against mixed top/bottom products, geometrically convex h", HOLDS,
             sample_thm31i, check_thm31i, ("mean",)),
    Property("thm-3.1-ii", "bottom-k products of A σ B against mixed products, geometrically concave h", HOLDS,
             sample_thm31ii, check_thm31ii, ("mean",)),
    Property("cor-3.2", "det^{1/n}(A σ B) compared with det^{1/n} A σ det^{1/n} B", HOLDS,
             sample_cor32, check_cor32, ("mean",)),
    Property("prop-3.5", "four product bounds for the weighted geometric mean", HOLDS,
             sample_prop35, check_prop35, ("alpha",)),
    Property("cor-3.6", "A #_α B is log-majorized by A↓ #_α B↓", HOLDS,
             sample_cor36, check_cor36, ("alpha",)),
    Property("prop-3.7", "bottom-k products are superadditive under measure-backed means", HOLDS,
             sample_prop37, check_prop37, ("mean",)),
    Property("conj-1.7-search", "A↓ σ B↑ ≺^{w(log)} A σ B ≺^{w(log)} A↓ σ B↓ for geometrically convex h", OPEN,
             sample_conj17, check_conj17, ("mean",)),
    Property("thm-4.7", "||f(A σ B)||_! >= ||f(A)||_! σ ||f(B)||_! for derived anti-norms, geodesic σ", HOLDS,
             sample_thm47, check_thm47, ("f", "mean", "anorm"), min_dim=1),
    Property("cor-4.8", "Δ_k(f(A σ B)) >= Δ_k(f(A)) σ Δ_k(f(B)) for geodesic σ", HOLDS,
             sample_cor48, check_cor48, ("f", "mean")),
    Property("rem-4.9-negative", "regular anti-norms fail the mean inequality on orthogonal supports", FAILS,
             sample_rem49, check_rem49, ("mean", "anorm"), min_dim=2),
    Property("prop-4.12", "power-mean anti-norm inequality and its superadditive form", HOLDS,
             sample_prop412, check_prop412, ("f", "p", "anorm")),
    Property("prop-4.13", "||g(A σ B)|| <= ||g(A)|| σ ||g(B)|| for doubly convex g, symmetric norms", HOLDS,
             sample_prop413, check_prop413, ("g", "mean", "norm")),
    Property("prop-5.2", "weighted harmonic <= σ_m(A) <= weighted arithmetic in the Löwner order", HOLDS,
             sample_prop52, check_prop52, ("m",)),
    Property("prop-5.3", "G_m(w; A) is log-majorized by G_m(w; A↓)", HOLDS,
             sample_prop53, check_prop53, ("m",)),
    Property("prop-5.4", "Δ_k(σ_m(A)) >= σ_m(Δ_k(A_1), ..., Δ_k(A_m))", HOLDS,
             sample_prop54, check_prop54, ("m",)),
    Property("thm-5.5", "m-variable anti-norm and norm inequalities for geodesic means", HOLDS,
             sample_thm55, check_thm55, ("m", "f", "g", "anorm", "norm")),
    Property("bk-norm", "||G_m(w; A)|| <= prod ||A_i||^{w_i}", HOLDS,
             sample_bk_norm, check_bk_norm, ("m", "norm")),
    Property("bk-antinorm", "||G_m(w; A)||_! >= prod ||A_i||_!^{w_i} for derived anti-norms", HOLDS,
             sample_bk_antinorm, check_bk_antinorm, ("m", "anorm")),
    Property("cor-6.4", "||E(Z)||_! >= ||Z||_! for unital trace-preserving E", HOLDS,
             sample_cor64, check_cor64, ("map", "anorm")),
    Property("thm-6.5", "||S ∘ Z||_! >= ||Z||_! when S has diagonal entries >= 1", HOLDS,
             sample_thm65, check_thm65, ("anorm",)),
    Property("cor-6.6", "Tr f(S ∘ Z) >= Tr f(Z) for increasing concave f", HOLDS,
             sample_cor66, check_cor66, _F),
    Property("cor-6.7", "anti-norm inequality for the averaged A^t Z A^{-t} integral", HOLDS,
             sample_cor67, check_cor67, ("alpha", "anorm")),
    Property("cor-agm", "||A^{1/2} Z A^{1/2}||_! >= ||AZ + ZA||_!/2 when AZ + ZA >= 0", HOLDS,
             sample_agm, check_agm, ("anorm",)),
    Property("sec6-det-counterexample", "det A det Z >= det((AZ+ZA)/2) fails without AZ + ZA >= 0", FAILS,
             sample_det, check_det, (), deterministic=True),
    Property("prop-revholder", "||AB|| >= ||A^p||^{1/p} ||B^q||^{1/q} with 1/p + 1/q = 1, 0 < p < 1", HOLDS,
             sample_revholder, check_revholder, ("p", "norm")),
    Property("chain-6.14", "|||A^{1/r}B^{1/r}|^r|| >= ||AB|| >= |||A^rB^r|^{1/r}|| >= ||A↓B↑||", HOLDS,
             sample_chain, check_chain, ("r", "norm")),
    Property("cor-6.9", "Ky Fan averages of A β_0 B against top/bottom products", HOLDS,
             sample_cor69, check_cor69, ()),
    Property("rem-3.3-false", "the false claim μ_1(A ∇ B) >= μ_1(A) ∇ μ_1(B)", FAILS,
             sample_rem33, check_rem33, ()),
]  # fmt: skip

REGISTRY: dict[str, Property] = {p.id: p for p in _ENTRIES}


# --------------------------------------------------------------------------
# knob validation
# --------------------------------------------------------------------------


def _interval(lo, hi, lo_open=False, hi_open=False):
    dom = Interval(lo, hi, lo_open, hi_open)

    def check(value, dim):
        if not isinstance(value, (int, float)) or float(value) not in dom:
            raise ConfigError(f"value {value!r} outside {dom}")

    return check


def _member(options):
    def check(value, dim):
        if value not in options:
            raise ConfigError(f"{value!r} is not one of {', '.join(map(str, options))}")

    return check


def _function(pred, what):
    def check(value, dim):
        f = function_from_spec(str(value))
        if not pred(f):
            raise ConfigError(f"{value!r} is not catalogued as {what}")

    return check


def _zero_at_zero(f) -> bool:
    return 0.0 in f.domain and abs(float(f(np.array([0.0]))[0])) == 0.0


_DC = _function(lambda f: f.class_claim == DOUBLY_CONCAVE, "doubly concave")
_DC_MONO = _function(lambda f: f.class_claim == DOUBLY_CONCAVE and f.monotone != "none", "monotone doubly concave")
_DCVX = _function(lambda f: f.class_claim == DOUBLY_CONVEX, "doubly convex")
_CVX_ZERO = _function(
    lambda f: f.name in CONVEX_ZERO or (f.class_claim == DOUBLY_CONVEX and _zero_at_zero(f)), "convex with g(0) = 0"
)
_CVX_JENSEN = _function(
    lambda f: f.name in CONVEX_ZERO + CONVEX_DECREASING
    or (f.class_claim == DOUBLY_CONVEX and (f.monotone == "decreasing" or _zero_at_zero(f))),
    "convex with g(0) = 0 or convex decreasing",
)
_INC_CONCAVE = _function(
    lambda f: f.name in INCREASING_CONCAVE or (f.class_claim == DOUBLY_CONCAVE and f.monotone == "increasing"),
    "increasing and concave",
)


def _mean_rule(kind):
    def check(value, dim):
        m = mean_from_spec(str(value))
        ok = {
            "convex": m.rf is not None and m.rf.is_geom_convex,
            "concave": m.rf is not None and m.rf.is_geom_concave,
            "either": m.rf is not None and (m.rf.is_geom_convex or m.rf.is_geom_concave),
            "geodesic": m.rf is not None and m.rf.measure is not None,
            "any": True,
        }[kind]
        if not ok:
            raise ConfigError(f"{value!r} is not a {kind} mean")

    return check


def _anorm_rule(derived: bool):
    def check(value, dim):
        a = antinorm_from_spec(str(value))
        if derived and not a.is_derived:
            raise ConfigError(f"{value!r} is not a derived anti-norm")
        if (a.k or 0) > dim:
            raise ConfigError(f"{value!r} needs k <= {dim}")

    return check


def _norm_rule(value, dim):
    nrm = norm_from_spec(str(value))
    if (nrm.k or 0) > dim:
        raise ConfigError(f"{value!r} needs k <= {dim}")


def _m_rule(value, dim):
    if not isinstance(value, int) or not 2 <= value <= 8:
        raise ConfigError(f"m must be an integer in [2, 8], got {value!r}")


_P01 = _interval(0.0, 1.0, lo_open=True)
_P01_ZERO = _interval(0.0, 1.0)
_Q = _interval(1.0, math.inf)
_ALPHA = _interval(0.0, 1.0)

RULES: dict[str, dict[str, Callable]] = {
    "thm-2.7-logsup": {"f": _DC, "p": _P01, "map": _member(ALL_MAPS)},
    "thm-2.7-dominance": {"f": _DC_MONO, "p": _P01, "map": _member(ALL_MAPS)},
    "thm-2.7-p0": {"f": _DC, "map": _member(UNITAL_MAPS)},
    "cor-2.8": {"f": _DC, "p": _P01_ZERO},
    "cor-2.9": {"f": _DC, "p": _P01},
    "cor-2.11": {"f": _DC, "p": _P01_ZERO},
    "prop-2.13": {"g": _CVX_JENSEN, "q": _Q, "map": _member(ALL_MAPS)},
    "cor-2.14": {"g": _CVX_ZERO, "q": _Q},
    "thm-3.1-i": {"mean": _mean_rule("convex")},
    "thm-3.1-ii": {"mean": _mean_rule("concave")},
    "cor-3.2": {"mean": _mean_rule("either")},
    "prop-3.5": {"alpha": _ALPHA},
    "cor-3.6": {"alpha": _ALPHA},
    "prop-3.7": {"mean": _mean_rule("geodesic")},
    "conj-1.7-search": {"mean": _mean_rule("convex")},
    "thm-4.7": {"f": _DC, "mean": _mean_rule("geodesic"), "anorm": _anorm_rule(True)},
    "cor-4.8": {"f": _DC, "mean": _mean_rule("geodesic")},
    "rem-4.9-negative": {"mean": _mean_rule("any"), "anorm": _anorm_rule(False)},
    "prop-4.12": {"f": _DC, "p": _P01_ZERO, "anorm": _anorm_rule(True)},
    "prop-4.13": {"g": _DCVX, "mean": _mean_rule("geodesic"), "norm": _norm_rule},
    "prop-5.2": {"m": _m_rule},
    "prop-5.3": {"m": _m_rule},
    "prop-5.4": {"m": _m_rule},
    "thm-5.5": {"m": _m_rule, "f": _DC, "g": _DCVX, "anorm": _anorm_rule(True), "norm": _norm_rule},
    "bk-norm": {"m": _m_rule, "norm": _norm_rule},
    "bk-antinorm": {"m": _m_rule, "anorm": _anorm_rule(True)},
    "cor-6.4": {"map": _member(("pinching", "mixed-unitary", "schur-ones")), "anorm": _anorm_rule(False)},
    "thm-6.5": {"anorm": _anorm_rule(False)},
    "cor-6.6": {"f": _INC_CONCAVE},
    "cor-6.7": {"alpha": _interval(0.0, 0.5), "anorm": _anorm_rule(False)},
    "cor-agm": {"anorm": _anorm_rule(False)},
    "prop-revholder": {"p": _interval(0.0, 1.0, True, True), "norm": _norm_rule},
    "chain-6.14": {"r": _interval(0.0, 1.0, lo_open=True), "norm": _norm_rule},
}


def validate_knobs(prop: Property, knobs: dict, dim: int) -> None:
    """Raise :class:`ConfigError` for unknown knobs or values outside the declared ranges.

    A knob may be a single value or a list of values to sample from.
    """
    if dim < prop.min_dim:
        raise ConfigError(f"{prop.id} needs dim >= {prop.min_dim}")
    rules = RULES.get(prop.id, {})
    for key, value in knobs.items():
        if value is None:
            continue
        if key not in rules:
            raise ConfigError(f"{prop.id} has no knob {key!r}")
        values = value if isinstance(value, (list, tuple)) else [value]
        if not values:
            raise ConfigError(f"knob {key!r} has an empty list")
        for v in values:
            try:
                rules[key](v, dim)
            except ConfigError as exc:
                raise ConfigError(f"{prop.id}: knob {key}: {exc}") from exc
            except Exception as exc:
                raise ConfigError(f"{prop.id}: knob {key}: {exc}") from exc


def registry_ids() -> list[str]:
    return list(REGISTRY)


def get_property(pid: str) -> Property:
    try:
        return REGISTRY[pid]
    except KeyError as exc:
        raise ConfigError(f"unknown property id {pid!r}") from exc
