"""Scalar functions that are doubly concave or doubly convex, and grid certification.

A function ``f >= 0`` on an interval is *doubly concave* when it is concave and
geometrically concave, ``f(sqrt(xy)) >= sqrt(f(x) f(y))``. Doubly convex is
the mirror notion. The catalog below collects standard members of both
classes; :func:`certify` checks the two defining inequalities on a grid.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ConfigError, DomainViolation
from .hermitian import Interval

__all__ = [
    "ClassReport",
    "IntervalFunction",
    "catalog",
    "certify",
    "certify_concave",
    "certify_convex",
    "certify_doubly_concave",
    "certify_doubly_convex",
    "concavifying_transform",
    "convexifying_transform",
    "function_from_spec",
    "geometric_combination",
    "pointwise_min",
    "random_concave_decreasing",
]

DOUBLY_CONCAVE = "doubly_concave"
DOUBLY_CONVEX = "doubly_convex"
UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class IntervalFunction:
    """A vectorized scalar function with its domain and claimed class.

    Parameters
    ----------
    name : str
        Spec string that rebuilds the function via :func:`function_from_spec`.
    domain : Interval
        Where the function is defined.
    func : callable
        Maps a float array to a float array of the same shape.
    monotone : {"increasing", "decreasing", "none"}
    class_claim : {"doubly_concave", "doubly_convex", "unclassified"}
    """

    name: str
    domain: Interval
    func: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    monotone: str = "none"
    class_claim: str = UNCLASSIFIED

    def __call__(self, x):
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.func(np.asarray(x, dtype=float))


# --------------------------------------------------------------------------
# catalog
# --------------------------------------------------------------------------

_NONNEG = Interval(0.0, math.inf)
_POS = Interval(0.0, math.inf, lo_open=True)
_FROM_ONE = Interval(1.0, math.inf)
_UNIT = Interval(0.0, 1.0)


def _pow(q: float) -> IntervalFunction:
    if not 0 <= q <= 1:
        raise ConfigError(f"pow exponent must lie in [0, 1], got {q}")
    mono = "none" if q == 0 else "increasing"
    return IntervalFunction(f"pow:{q:g}", _NONNEG, lambda t: np.power(t, q), mono, DOUBLY_CONCAVE)


def _cpow(q: float) -> IntervalFunction:
    """``t^q`` for ``q >= 1``: convex, increasing, vanishing at 0."""
    if q < 1:
        raise ConfigError(f"cpow exponent must be >= 1, got {q}")
    return IntervalFunction(f"cpow:{q:g}", _NONNEG, lambda t: np.power(t, q), "increasing", DOUBLY_CONVEX)


def _shiftpow(p: float) -> IntervalFunction:
    if not 0 <= p <= 1:
        raise ConfigError(f"shiftpow exponent must lie in [0, 1], got {p}")
    return IntervalFunction(
        f"shiftpow:{p:g}", _FROM_ONE, lambda t: np.power(t - 1.0, p), "increasing", DOUBLY_CONCAVE
    )


def _rootdiff(q: float) -> IntervalFunction:
    if q < 1:
        raise ConfigError(f"rootdiff exponent must be >= 1, got {q}")
    return IntervalFunction(
        f"rootdiff:{q:g}",
        _FROM_ONE,
        lambda t: np.power(np.power(t, q) - 1.0, 1.0 / q),
        "increasing",
        DOUBLY_CONCAVE,
    )


def _entropy(t):
    return np.where(t > 0, -t * np.log(np.where(t > 0, t, 1.0)), 0.0)


def _sincos(a: float, b: float) -> IntervalFunction:
    if a < 0 or b < 0 or a + b > 1:
        raise ConfigError(f"sincos needs a, b >= 0 with a + b <= 1, got {a}, {b}")

    def f(t):
        s = np.clip(np.sin(t), 0.0, None)
        c = np.clip(np.cos(t), 0.0, None)
        return (s**a if a else 1.0) * (c**b if b else 1.0) + 0.0 * t

    mono = "increasing" if b == 0 and a > 0 else "decreasing" if a == 0 and b > 0 else "none"
    return IntervalFunction(f"sincos:{a:g},{b:g}", Interval(0.0, math.pi / 2), f, mono, DOUBLY_CONCAVE)


def _tent(a: float) -> IntervalFunction:
    if a <= 0:
        raise ConfigError(f"tent apex must be positive, got {a}")
    return IntervalFunction(
        f"tent:{a:g}", Interval(0.0, 2 * a), lambda t: a - np.abs(t - a), "none", DOUBLY_CONCAVE
    )


def _tent4(a1: float, a2: float, b: float) -> IntervalFunction:
    if not 0 < a1 <= a2 < b:
        raise ConfigError(f"tent4 needs 0 < a1 <= a2 < b, got {a1}, {a2}, {b}")
    xs = np.array([0.0, a1, a2, b])
    ys = np.array([0.0, 1.0, 1.0, 0.0])
    return IntervalFunction(
        f"tent4:{a1:g},{a2:g},{b:g}", Interval(0.0, b), lambda t: np.interp(t, xs, ys), "none", DOUBLY_CONCAVE
    )


def _powsum(terms: list[tuple[float, float]]) -> IntervalFunction:
    for c, a in terms:
        if c < 0 or 0 < a < 1:
            raise ConfigError(f"powsum needs c >= 0 and exponent outside (0, 1), got {c}@{a}")
    name = "powsum:" + ",".join(f"{c:g}@{a:g}" for c, a in terms)

    def f(t):
        out = np.zeros_like(t)
        for c, a in terms:
            out = out + c * np.power(t, a)
        return out

    if all(a >= 1 for _, a in terms):
        mono = "increasing"
    elif all(a <= 0 for _, a in terms):
        mono = "decreasing"
    else:
        mono = "none"
    return IntervalFunction(name, _POS, f, mono, DOUBLY_CONVEX)


_FIXED = {
    "frac": lambda: IntervalFunction("frac", _NONNEG, lambda t: t / (t + 1.0), "increasing", DOUBLY_CONCAVE),
    "sqrtfrac": lambda: IntervalFunction(
        "sqrtfrac", _NONNEG, lambda t: t / np.sqrt(t + 1.0), "increasing", DOUBLY_CONCAVE
    ),
    "oneminusexp": lambda: IntervalFunction(
        "oneminusexp", _NONNEG, lambda t: -np.expm1(-t), "increasing", DOUBLY_CONCAVE
    ),
    "log1p": lambda: IntervalFunction("log1p", _NONNEG, np.log1p, "increasing", UNCLASSIFIED),
    "log": lambda: IntervalFunction("log", _FROM_ONE, np.log, "increasing", DOUBLY_CONCAVE),
    "parabola": lambda: IntervalFunction("parabola", _UNIT, lambda t: t * (1.0 - t), "none", DOUBLY_CONCAVE),
    "entropy": lambda: IntervalFunction("entropy", _UNIT, _entropy, "none", DOUBLY_CONCAVE),
    "circle": lambda: IntervalFunction(
        "circle", _UNIT, lambda t: np.sqrt(np.clip(1.0 - t * t, 0.0, None)), "decreasing", DOUBLY_CONCAVE
    ),
    "sin": lambda: IntervalFunction(
        "sin", Interval(0.0, math.pi), lambda t: np.clip(np.sin(t), 0.0, None), "none", DOUBLY_CONCAVE
    ),
    "cos": lambda: IntervalFunction(
        "cos", Interval(0.0, math.pi / 2), lambda t: np.clip(np.cos(t), 0.0, None), "decreasing", DOUBLY_CONCAVE
    ),
    "minsincos": lambda: IntervalFunction(
        "minsincos",
        Interval(0.0, math.pi / 2),
        lambda t: np.clip(np.minimum(np.sin(t), np.cos(t)), 0.0, None),
        "none",
        DOUBLY_CONCAVE,
    ),
    "expm1": lambda: IntervalFunction("expm1", _NONNEG, np.expm1, "increasing", UNCLASSIFIED),
    "id": lambda: IntervalFunction("id", _NONNEG, lambda t: t + 0.0, "increasing", UNCLASSIFIED),
}


def _floats(text: str, count: int | None, name: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",")] if text else []
    except ValueError as exc:
        raise ConfigError(f"bad parameters for {name!r}: {text!r}") from exc
    if count is not None and len(vals) != count:
        raise ConfigError(f"{name!r} takes {count} parameter(s), got {len(vals)}")
    return vals


def function_from_spec(spec: str) -> IntervalFunction:
    """Build a catalog function from a string such as ``"pow:0.5"`` or ``"tent:1.0"``.

    Recognized names: ``pow:q``, ``cpow:q``, ``frac``, ``sqrtfrac``, ``oneminusexp``, ``log1p``,
    ``log``, ``shiftpow:p``, ``rootdiff:q``, ``parabola``, ``entropy``, ``circle``,
    ``sin``, ``cos``, ``sincos:a,b``, ``minsincos``, ``tent:a``, ``tent4:a1,a2,b``,
    ``powsum:c@a,...``, ``expm1``, ``id``.
    """
    name, _, params = spec.strip().partition(":")
    if name in _FIXED:
        if params:
            raise ConfigError(f"{name!r} takes no parameters")
        return _FIXED[name]()
    if name == "pow":
        return _pow(*_floats(params, 1, name))
    if name == "cpow":
        return _cpow(*_floats(params, 1, name))
    if name == "shiftpow":
        return _shiftpow(*_floats(params, 1, name))
    if name == "rootdiff":
        return _rootdiff(*_floats(params, 1, name))
    if name == "sincos":
        return _sincos(*_floats(params, 2, name))
    if name == "tent":
        return _tent(*_floats(params, 1, name))
    if name == "tent4":
        return _tent4(*_floats(params, 3, name))
    if name == "powsum":
        terms = []
        for item in filter(None, params.split(",")):
            m = re.fullmatch(r"\s*([^@]+)@([^@]+)\s*", item)
            if not m:
                raise ConfigError(f"powsum term must look like c@a, got {item!r}")
            terms.append((float(m.group(1)), float(m.group(2))))
        if not terms:
            raise ConfigError("powsum needs at least one term")
        return _powsum(terms)
    raise ConfigError(f"unknown function {spec!r}")


_CATALOG_SPECS = (
    "pow:0", "pow:0.25", "pow:0.5", "pow:0.75", "pow:1",
    "frac", "sqrtfrac", "oneminusexp", "log1p",
    "log", "shiftpow:0.5", "shiftpow:1", "rootdiff:1", "rootdiff:2", "rootdiff:3",
    "parabola", "entropy", "circle",
    "sin", "cos", "sincos:0.5,0.5", "sincos:0.3,0.2", "minsincos",
    "tent:1", "tent:2.5", "tent4:1,2,4",
    "powsum:1@2", "powsum:1@-1", "powsum:1@0,2@1.5,0.5@-2",
)  # fmt: skip


def catalog() -> list[IntervalFunction]:
    """Standard doubly concave and doubly convex functions, plus ``log1p`` (unclassified)."""
    return [function_from_spec(s) for s in _CATALOG_SPECS]


# --------------------------------------------------------------------------
# combinations and transforms
# --------------------------------------------------------------------------


def geometric_combination(f: IntervalFunction, g: IntervalFunction, alpha: float) -> IntervalFunction:
    """``f**alpha * g**(1-alpha)``; doubly concave when f and g are."""
    if f.domain != g.domain:
        raise DomainViolation("domains differ", None, (f.domain, g.domain))
    claim = DOUBLY_CONCAVE if f.class_claim == g.class_claim == DOUBLY_CONCAVE else UNCLASSIFIED
    return IntervalFunction(
        f"geo({f.name},{g.name},{alpha:g})",
        f.domain,
        lambda t: f(t) ** alpha * g(t) ** (1 - alpha),
        "none",
        claim,
    )


def pointwise_min(f: IntervalFunction, g: IntervalFunction) -> IntervalFunction:
    if f.domain != g.domain:
        raise DomainViolation("domains differ", None, (f.domain, g.domain))
    claim = DOUBLY_CONCAVE if f.class_claim == g.class_claim == DOUBLY_CONCAVE else UNCLASSIFIED
    return IntervalFunction(f"min({f.name},{g.name})", f.domain, lambda t: np.minimum(f(t), g(t)), "none", claim)


def _power_domain(dom: Interval, r: float) -> Interval:
    return Interval(dom.lo**r, dom.hi**r if math.isfinite(dom.hi) else math.inf, dom.lo_open, dom.hi_open)


def concavifying_transform(f: IntervalFunction, p: float) -> IntervalFunction:
    """``t -> f(t**(1/p))**p`` on ``{t**p}``; concave when f is doubly concave and ``0 < p <= 1``."""
    if not 0 < p <= 1:
        raise DomainViolation(f"p must lie in (0, 1], got {p}", p, Interval(0.0, 1.0, lo_open=True))
    return IntervalFunction(
        f"{f.name}^[{p:g}]",
        _power_domain(f.domain, p),
        lambda t: np.power(f(np.power(t, 1.0 / p)), p),
        f.monotone,
        UNCLASSIFIED,
    )


def convexifying_transform(g: IntervalFunction, q: float) -> IntervalFunction:
    """``t -> g(t**(1/q))**q`` on ``{t**q}``; convex for the non-negative convex g used with ``q >= 1``."""
    if q < 1:
        raise DomainViolation(f"q must be >= 1, got {q}", q, Interval(1.0, math.inf))
    return IntervalFunction(
        f"{g.name}^[{q:g}]",
        _power_domain(g.domain, q),
        lambda t: np.power(g(np.power(t, 1.0 / q)), q),
        g.monotone,
        UNCLASSIFIED,
    )


def random_concave_decreasing(rng: np.random.Generator, beta: float = 1.0, knots: int = 5) -> IntervalFunction:
    """Random non-negative, non-increasing, concave piecewise-linear function on ``[0, beta]``."""
    xs = np.concatenate(([0.0], np.sort(rng.uniform(0.0, beta, knots - 2)), [beta]))
    slopes = -np.sort(rng.exponential(1.0, knots - 1))
    slopes[0] *= rng.uniform(0.0, 1.0)  # allow a flat start
    ys = np.concatenate(([0.0], np.cumsum(slopes * np.diff(xs))))
    ys = ys - ys[-1] + rng.uniform(0.0, 1.0)
    return IntervalFunction(
        "random-concave-decreasing",
        Interval(0.0, beta),
        lambda t: np.interp(t, xs, ys),
        "decreasing",
        DOUBLY_CONCAVE,
    )


# --------------------------------------------------------------------------
# certification
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassReport:
    """Result of a grid certification.

    ``worst_violation`` is the smallest normalized slack over all tested pairs
    (0 on the diagonal, so it is never positive); ``worst_point_pair`` is where
    it occurs.
    """

    kind: str
    ordinary_ok: bool
    geometric_ok: bool
    worst_violation: float
    worst_point_pair: tuple[float, float]
    ordinary_violation: float = 0.0
    geometric_violation: float = 0.0

    @property
    def concave_ok(self) -> bool:
        return self.kind == "concave" and self.ordinary_ok

    @property
    def geom_concave_ok(self) -> bool:
        return self.kind == "concave" and self.geometric_ok

    @property
    def convex_ok(self) -> bool:
        return self.kind == "convex" and self.ordinary_ok

    @property
    def geom_convex_ok(self) -> bool:
        return self.kind == "convex" and self.geometric_ok

    @property
    def ok(self) -> bool:
        return self.ordinary_ok and self.geometric_ok


def certification_grid(dom: Interval, grid_size: int, window: tuple[float, float] | None = None) -> np.ndarray:
    """Grid on the domain: log-spaced when unbounded or bounded away from 0, else linear."""
    if grid_size < 16:
        raise ValueError("grid_size must be >= 16")
    lo, hi = window if window is not None else (dom.lo, dom.hi)
    lo = max(lo, dom.lo)
    hi = min(hi, dom.hi)
    unbounded = not math.isfinite(hi)
    if unbounded:
        hi = 1e3 if lo <= 0 else lo * 1e3
    if hi <= lo:
        raise DomainViolation(f"empty interior for domain {dom}", None, dom)
    if lo > 0 or unbounded:
        grid = np.geomspace(max(lo, 1e-3 if lo <= 0 else lo), hi, grid_size)
    else:
        grid = np.linspace(lo, hi, grid_size)
    grid = np.array([x for x in grid if x in dom])
    if grid.size < 2:
        raise DomainViolation(f"empty interior for domain {dom}", None, dom)
    return grid


def certify(
    f: IntervalFunction,
    kind: str = "concave",
    grid_size: int = 64,
    tol: float = 1e-9,
    window: tuple[float, float] | None = None,
    check_geometric: bool = True,
) -> ClassReport:
    """Check ordinary and geometric concavity (or convexity) on all grid pairs.

    A pair passes when its slack is at least ``-tol * (1 + |f(x)| + |f(y)|)``.
    """
    if kind not in ("concave", "convex"):
        raise ValueError("kind must be 'concave' or 'convex'")
    x = certification_grid(f.domain, grid_size, window)
    xx, yy = np.meshgrid(x, x, indexing="ij")
    fx, fy = f(xx), f(yy)
    if not (np.all(np.isfinite(fx)) and np.all(np.isfinite(fy))):
        raise DomainViolation(f"{f.name} is not finite on the grid", None, f.domain)
    scale = 1.0 + np.abs(fx) + np.abs(fy)
    sign = 1.0 if kind == "concave" else -1.0
    ordinary = sign * (f(0.5 * (xx + yy)) - 0.5 * (fx + fy)) / scale
    if check_geometric:
        with np.errstate(invalid="ignore"):
            gm = np.sqrt(np.clip(fx, 0.0, None) * np.clip(fy, 0.0, None))
        geometric = sign * (f(np.sqrt(xx * yy)) - gm) / scale
    else:
        geometric = np.zeros_like(ordinary)
    both = np.minimum(ordinary, geometric)
    i, j = np.unravel_index(int(np.argmin(both)), both.shape)
    o_min = float(ordinary.min())
    g_min = float(geometric.min())
    return ClassReport(
        kind,
        o_min >= -tol,
        g_min >= -tol,
        float(both[i, j]),
        (float(x[i]), float(x[j])),
        o_min,
        g_min,
    )


def certify_doubly_concave(f: IntervalFunction, grid_size: int = 64, tol: float = 1e-9, window=None) -> ClassReport:
    return certify(f, "concave", grid_size, tol, window)


def certify_doubly_convex(f: IntervalFunction, grid_size: int = 64, tol: float = 1e-9, window=None) -> ClassReport:
    return certify(f, "convex", grid_size, tol, window)


def certify_concave(f: IntervalFunction, grid_size: int = 64, tol: float = 1e-9, window=None) -> ClassReport:
    """Ordinary concavity only."""
    return certify(f, "concave", grid_size, tol, window, check_geometric=False)


def certify_convex(f: IntervalFunction, grid_size: int = 64, tol: float = 1e-9, window=None) -> ClassReport:
    """Ordinary convexity only."""
    return certify(f, "convex", grid_size, tol, window, check_geometric=False)
