"""Two-variable operator means.

Kubo–Ando means ``A σ B = A^{1/2} h(A^{-1/2} B A^{-1/2}) A^{1/2}`` are built from
a :class:`RepresentingFunction` ``h``. Geodesic means integrate the weighted
geometric means ``A #_α B`` against a probability measure on ``[0, 1]``; since
``∫ x^α dν(α)`` is itself a representing function they reduce to one
Kubo–Ando evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable

import mpmath
import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import DimensionMismatch, DomainViolation, SingularInput
from .hermitian import Interval, eigh, fro, hermitian, matrix_function

__all__ = [
    "AbsoluteMonotonicityReport",
    "GeodesicMeasure",
    "RepresentingFunction",
    "adjoint",
    "arithmetic",
    "b_p",
    "certify_geom_class",
    "check_absolute_monotonicity",
    "default_eps",
    "dual",
    "f_alpha",
    "from_measure",
    "geodesic_catalog",
    "geodesic_mean",
    "geometric",
    "h_alpha",
    "harmonic",
    "kubo_ando",
    "power_fn",
    "power_mean",
    "rf_catalog",
    "rf_transforms",
    "scalar_mean",
    "transpose",
    "weighted_geometric",
]

GEOM_CONVEX = "geom_convex"
GEOM_CONCAVE = "geom_concave"
GEOM_BOTH = "both"
GEOM_UNKNOWN = "unknown"

_FLIP = {GEOM_CONVEX: GEOM_CONCAVE, GEOM_CONCAVE: GEOM_CONVEX, GEOM_BOTH: GEOM_BOTH, GEOM_UNKNOWN: GEOM_UNKNOWN}


# --------------------------------------------------------------------------
# geodesic measures
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GeodesicMeasure:
    """Probability measure on ``[0, 1]``: point masses plus an optional density.

    The density part is integrated by Gauss–Legendre quadrature with
    ``quad_nodes`` nodes and must carry mass ``1 - sum(weights of atoms)``.
    """

    atoms: tuple[tuple[float, float], ...] = ()
    density: Callable[[np.ndarray], np.ndarray] | None = field(default=None, compare=False)
    quad_nodes: int = 33
    label: str = ""

    def __post_init__(self):
        for a, w in self.atoms:
            if not (0.0 <= a <= 1.0) or w <= 0:
                raise DomainViolation(f"bad atom ({a}, {w})", a, Interval(0.0, 1.0))
        if abs(self.total_mass() - 1.0) > 1e-12:
            raise DomainViolation(f"total mass {self.total_mass()!r} is not 1", self.total_mass(), None)

    @cached_property
    def _nodes(self):
        x, w = leggauss(self.quad_nodes)
        x = 0.5 * (x + 1.0)
        w = 0.5 * w
        if self.density is None:
            return np.empty(0), np.empty(0)
        return x, w * np.asarray(self.density(x), dtype=float)

    def total_mass(self) -> float:
        return float(sum(w for _, w in self.atoms) + self._nodes[1].sum())

    def support(self) -> tuple[np.ndarray, np.ndarray]:
        """Exponents and weights of the discrete rule (atoms, then quadrature nodes)."""
        a = np.array([a for a, _ in self.atoms], dtype=float)
        w = np.array([w for _, w in self.atoms], dtype=float)
        return np.concatenate((a, self._nodes[0])), np.concatenate((w, self._nodes[1]))

    def function(self, x):
        """``∫ x^α dν(α)``, with ``0^0 = 1``."""
        x = np.asarray(x, dtype=float)
        alphas, weights = self.support()
        out = np.zeros_like(x)
        for a, w in zip(alphas, weights):
            out = out + w * (np.power(x, a) if a else 1.0)
        return out

    def endpoint_mass(self) -> tuple[float, float]:
        """Masses at 0 and at 1: the limits ``h(0)`` and ``h(x)/x`` at infinity."""
        m0 = sum(w for a, w in self.atoms if a == 0.0)
        m1 = sum(w for a, w in self.atoms if a == 1.0)
        return m0, m1

    @classmethod
    def uniform(cls, quad_nodes: int = 33) -> "GeodesicMeasure":
        return cls((), lambda a: np.ones_like(a), quad_nodes, "uniform")

    @classmethod
    def from_atoms(cls, atoms, label: str = "") -> "GeodesicMeasure":
        return cls(tuple((float(a), float(w)) for a, w in atoms), None, 33, label)


def _binomial_atoms(m: int):
    return [(k / m, math.comb(m, k) / 2.0**m) for k in range(m + 1)]


# --------------------------------------------------------------------------
# representing functions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RepresentingFunction:
    """Representing function ``h`` of a Kubo–Ando mean, with ``h(1) = 1``.

    Parameters
    ----------
    name : str
    func : callable
        Vectorized ``h`` on ``[0, inf)``; must return finite values at 0.
    h0, slope : float
        ``h(0)`` and ``lim h(x)/x`` as ``x -> inf``; used by :func:`scalar_mean`
        when one argument vanishes.
    geom_class : str
        ``geom_convex``, ``geom_concave``, ``both`` or ``unknown``.
    measure : GeodesicMeasure, optional
        Measure ν with ``h(x) = ∫ x^α dν(α)`` when one exists.
    exp_form_mp : callable, optional
        ``t -> h(e^t)`` on mpmath numbers, for high-precision screening.
    tags : tuple of str
    """

    name: str
    func: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    h0: float = 0.0
    slope: float = 0.0
    geom_class: str = GEOM_UNKNOWN
    measure: GeodesicMeasure | None = field(default=None, compare=False)
    exp_form_mp: Callable | None = field(default=None, repr=False, compare=False)
    tags: tuple[str, ...] = ()
    domain: Interval = Interval(0.0, math.inf)

    def __call__(self, x):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            return np.asarray(self.func(np.asarray(x, dtype=float)), dtype=float)

    def exp_form(self, t, xp=np):
        """``g(t) = h(e^t)``; ``xp`` is ``numpy`` or ``mpmath``."""
        if xp is mpmath:
            if self.exp_form_mp is None:
                raise NotImplementedError(f"{self.name} has no high-precision form")
            return self.exp_form_mp(t)
        return self(np.exp(t))

    @property
    def is_geom_convex(self) -> bool:
        return self.geom_class in (GEOM_CONVEX, GEOM_BOTH)

    @property
    def is_geom_concave(self) -> bool:
        return self.geom_class in (GEOM_CONCAVE, GEOM_BOTH)


def from_measure(name, measure: GeodesicMeasure, tags=()) -> RepresentingFunction:
    """Representing function ``x -> ∫ x^α dν(α)`` of a geodesic mean."""
    alphas, weights = measure.support()

    def g_mp(t):
        return mpmath.fsum(mpmath.mpf(w) * mpmath.exp(mpmath.mpf(a) * t) for a, w in zip(alphas, weights))

    m0, m1 = measure.endpoint_mass()
    return RepresentingFunction(name, measure.function, m0, m1, GEOM_CONVEX, measure, g_mp, tags)


def power_fn(alpha: float) -> RepresentingFunction:
    """``t^α``, the weighted geometric mean ``#_α``."""
    if not 0 <= alpha <= 1:
        raise DomainViolation(f"alpha must lie in [0, 1], got {alpha}", alpha, Interval(0.0, 1.0))
    name = "geometric" if alpha == 0.5 else f"pow:{alpha:g}"
    rf = from_measure(name, GeodesicMeasure.from_atoms([(alpha, 1.0)], f"delta:{alpha:g}"), ("power",))
    return replace(rf, geom_class=GEOM_BOTH)


def geometric() -> RepresentingFunction:
    return power_fn(0.5)


def arithmetic() -> RepresentingFunction:
    return replace(b_p(1.0), name="arithmetic", tags=("arithmetic",))


def harmonic() -> RepresentingFunction:
    return replace(b_p(-1.0), name="harmonic", tags=("harmonic",))


def h_alpha(alpha: float) -> RepresentingFunction:
    """``(x^α + x^{1-α}) / 2``."""
    if not 0 <= alpha <= 1:
        raise DomainViolation(f"alpha must lie in [0, 1], got {alpha}", alpha, Interval(0.0, 1.0))
    atoms = [(alpha, 0.5), (1.0 - alpha, 0.5)] if alpha != 0.5 else [(0.5, 1.0)]
    return from_measure(f"h_alpha:{alpha:g}", GeodesicMeasure.from_atoms(atoms, f"h_alpha:{alpha:g}"))


def b_p(p: float) -> RepresentingFunction:
    """``((x^p + 1)/2)^{1/p}``, the representing function of the operator p-mean; ``b_0 = sqrt``."""
    if not -1 <= p <= 1:
        raise DomainViolation(f"p must lie in [-1, 1], got {p}", p, Interval(-1.0, 1.0))
    name = f"b_p:{p:g}"
    if p == 0:
        return replace(geometric(), name=name, tags=("power",))
    inv = 1.0 / p
    m = round(inv)
    if p > 0 and abs(inv - m) < 1e-12:
        return replace(
            from_measure(name, GeodesicMeasure.from_atoms(_binomial_atoms(m), f"binomial:{m}")),
            func=lambda x: ((np.power(x, p) + 1.0) / 2.0) ** inv,
        )

    def h(x):
        with np.errstate(divide="ignore"):
            if p > 0:
                return ((np.power(x, p) + 1.0) / 2.0) ** inv
            # x^p overflows near 0; rewrite as x * ((1 + x^{-p}) / 2)^{1/p}
            return np.where(x > 0, x * ((1.0 + np.power(x, -p)) / 2.0) ** inv, 0.0)

    def g_mp(t):
        return ((mpmath.exp(p * t) + 1) / 2) ** (1 / mpmath.mpf(p))

    limit = 2.0 ** (-inv) if p > 0 else 0.0
    cls = GEOM_CONVEX if p > 0 else GEOM_CONCAVE
    return RepresentingFunction(name, h, limit, limit, cls, None, g_mp)


def f_alpha(alpha: float) -> RepresentingFunction:
    """``(α-1)/α · (x^α - 1)/(x^{α-1} - 1)`` for ``α ∈ [-1, 2]``; ``f_1`` is the logarithmic mean."""
    if not -1 <= alpha <= 2:
        raise DomainViolation(f"alpha must lie in [-1, 2], got {alpha}", alpha, Interval(-1.0, 2.0))
    a = float(alpha)
    name = f"f_alpha:{a:g}"

    if a == 0.5:
        return replace(geometric(), name=name)
    if a == 1.0:
        rf = from_measure(name, GeodesicMeasure.uniform(), ("logarithmic",))
        return replace(rf, func=_log_mean_fn, exp_form_mp=lambda t: mpmath.expm1(t) / t if t else mpmath.mpf(1))

    def g(t):
        # h(e^t) written with expm1 so that t -> 0 is stable
        if a == 0.0:
            return np.where(t == 0, 1.0, t * np.exp(t) / np.expm1(np.where(t == 0, 1.0, t)))
        ts = np.where(t == 0, 1.0, t)
        return np.where(t == 0, 1.0, (a - 1) / a * np.expm1(a * ts) / np.expm1((a - 1) * ts))

    def h(x):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            t = np.log(np.where(x > 0, x, 1.0))
            return np.where(x > 0, g(t), h0)

    def g_mp(t):
        if t == 0:
            return mpmath.mpf(1)
        if a == 0.0:
            return t * mpmath.exp(t) / mpmath.expm1(t)
        am = mpmath.mpf(alpha)
        return (am - 1) / am * mpmath.expm1(am * t) / mpmath.expm1((am - 1) * t)

    h0 = (a - 1) / a if a > 1 else 0.0
    slope = (a - 1) / a if a > 1 else 0.0
    cls = GEOM_CONVEX if a > 0.5 else GEOM_CONCAVE
    measure = None
    m = a / (a - 1) if a != 1 else None
    if a > 1 and m is not None and abs(m - round(m)) < 1e-12 and round(m) >= 2:
        m = round(m)
        measure = GeodesicMeasure.from_atoms([(k / (m - 1), 1.0 / m) for k in range(m)], f"uniform-atoms:{m}")
    elif 0.5 <= a < 1:
        m = a / (1 - a)
        if abs(m - round(m)) < 1e-12:
            m = round(m)
            measure = GeodesicMeasure.from_atoms([(k / (m + 1), 1.0 / m) for k in range(1, m + 1)], f"inner-atoms:{m}")
    tags = ("arithmetic",) if a == 2 else ("harmonic",) if a == -1 else ()
    return RepresentingFunction(name, h, h0, slope, cls, measure, g_mp, tags)


def _log_mean_fn(x):
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.log(np.where(x > 0, x, 1.0))
        ts = np.where(t == 0, 1.0, t)
        return np.where(x > 0, np.where(t == 0, 1.0, np.expm1(ts) / ts), 0.0)


def rf_catalog() -> list[RepresentingFunction]:
    """Catalog of representing functions, with geodesic measures attached where they exist."""
    out = [arithmetic(), harmonic(), geometric(), power_fn(0.25), power_fn(0.75), h_alpha(0.0), h_alpha(0.25)]
    out += [b_p(p) for p in (-1.0, -0.5, 0.0, 1 / 3, 0.5, 2 / 3, 1.0)]
    out += [f_alpha(a) for a in (-1.0, 0.0, 0.25, 0.5, 2 / 3, 0.75, 1.0, 4 / 3, 1.5, 2.0)]
    return out


def geodesic_catalog() -> list[RepresentingFunction]:
    return [rf for rf in rf_catalog() if rf.measure is not None]


# --------------------------------------------------------------------------
# transforms
# --------------------------------------------------------------------------


def transpose(h: RepresentingFunction) -> RepresentingFunction:
    """``t h(1/t)``: the mean with its arguments swapped."""

    def f(x):
        with np.errstate(divide="ignore"):
            return np.where(x > 0, x * h(1.0 / np.where(x > 0, x, 1.0)), h.slope)

    g_mp = None if h.exp_form_mp is None else (lambda t: mpmath.exp(t) * h.exp_form_mp(-t))
    measure = None
    if h.measure is not None and h.measure.density is None:
        measure = GeodesicMeasure.from_atoms([(1.0 - a, w) for a, w in h.measure.atoms], "transposed")
    return RepresentingFunction(f"transpose({h.name})", f, h.slope, h.h0, h.geom_class, measure, g_mp)


def adjoint(h: RepresentingFunction) -> RepresentingFunction:
    """``1 / h(1/t)``."""
    # h*(0) = 1/h(inf) and lim h*(x)/x = lim_{y->0} y/h(y), both taken numerically
    with np.errstate(divide="ignore"):
        h0 = float(1.0 / h(np.array(1e300)))
        slope = 0.0 if h.h0 > 0 else float(1e-200 / h(np.array(1e-200)))

    def f(x):
        with np.errstate(divide="ignore"):
            return np.where(x > 0, 1.0 / h(1.0 / np.where(x > 0, x, 1.0)), h0)

    g_mp = None if h.exp_form_mp is None else (lambda t: 1 / h.exp_form_mp(-t))
    return RepresentingFunction(f"adjoint({h.name})", f, h0, slope, _FLIP[h.geom_class], None, g_mp)


def dual(h: RepresentingFunction) -> RepresentingFunction:
    """``t / h(t)``, the adjoint of the transpose."""
    return replace(adjoint(transpose(h)), name=f"dual({h.name})")


def rf_transforms(h: RepresentingFunction):
    """``(transpose, adjoint, dual)`` of a representing function."""
    return transpose(h), adjoint(h), dual(h)


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------


def scalar_mean(h: RepresentingFunction, a, b):
    """Scalar mean ``a σ b = a h(b/a)``, using the limits of ``h`` when ``a`` or ``b`` is 0."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(a > 0, b / np.where(a > 0, a, 1.0), 0.0)
        val = a * h(ratio)
    return np.where(a > 0, val, b * h.slope)


def default_eps(a, b) -> float:
    """Regularization ``1e-10 (1 + ||A||_F + ||B||_F)`` used for singular operands."""
    return 1e-10 * (1.0 + float(fro(np.asarray(a))) + float(fro(np.asarray(b))))


def _check_pair(a, b):
    a = hermitian(a)
    b = hermitian(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return a, b


def _roots(a, *, need_inverse=True):
    """``A^{1/2}`` and ``A^{-1/2}`` from one decomposition; raises if A is singular."""
    vals, vecs = eigh(a)
    n = a.shape[-1]
    scale = 1e-13 * (1.0 + float(np.linalg.norm(vals)))
    if vals[..., -1].min() <= scale:
        raise SingularInput(f"matrix is singular (lambda_min = {vals[..., -1].min():.3g})")
    s = np.sqrt(vals)
    vh = np.swapaxes(vecs, -1, -2).conj()
    root = (vecs * s[..., None, :]) @ vh
    inv_root = (vecs * (1.0 / s)[..., None, :]) @ vh if need_inverse else None
    del n
    return root, inv_root


def kubo_ando(h: RepresentingFunction, a, b, eps: float | None = 0.0):
    """``A σ B = A^{1/2} h(A^{-1/2} B A^{-1/2}) A^{1/2}``.

    Parameters
    ----------
    h : RepresentingFunction
    a, b : array_like
        Positive semidefinite matrices of equal size.
    eps : float or None
        Both operands are shifted by ``eps I`` first. ``None`` selects
        :func:`default_eps` when either operand is singular and 0 otherwise.
        With ``eps = 0`` a singular ``A`` raises :class:`SingularInput`.
    """
    a, b = _check_pair(a, b)
    if eps is None:
        try:
            _roots(a, need_inverse=False)
            _roots(b, need_inverse=False)
            eps = 0.0
        except SingularInput:
            eps = default_eps(a, b)
    if eps:
        eye = np.eye(a.shape[-1])
        a = a + eps * eye
        b = b + eps * eye
    root, inv_root = _roots(a)
    c = inv_root @ b @ inv_root
    return hermitian(root @ matrix_function(hermitian(c), h, Interval(0.0, math.inf)) @ root)


def weighted_geometric(a, b, alpha: float):
    """``A #_α B = A^{1/2} (A^{-1/2} B A^{-1/2})^α A^{1/2}`` for invertible A, B."""
    if not 0 <= alpha <= 1:
        raise DomainViolation(f"alpha must lie in [0, 1], got {alpha}", alpha, Interval(0.0, 1.0))
    a, b = _check_pair(a, b)
    _roots(b, need_inverse=False)
    if alpha == 0:
        _roots(a, need_inverse=False)
        return a
    if alpha == 1:
        _roots(a, need_inverse=False)
        return b
    return kubo_ando(power_fn(alpha), a, b, eps=0.0)


def power_mean(a, b, p: float):
    """``A β_p B = ((A^p + B^p)/2)^{1/p}``; for ``p = 0`` the limit ``exp((log A + log B)/2)``."""
    if not 0 <= p <= 1:
        raise DomainViolation(f"p must lie in [0, 1], got {p}", p, Interval(0.0, 1.0))
    a, b = _check_pair(a, b)
    nonneg = Interval(0.0, math.inf)
    if p == 0:
        pos = Interval(0.0, math.inf, lo_open=True)
        try:
            la = matrix_function(a, np.log, pos)
            lb = matrix_function(b, np.log, pos)
        except DomainViolation as exc:
            raise SingularInput("the p = 0 power mean needs invertible operands") from exc
        return matrix_function(0.5 * (la + lb), np.exp)
    if p == 1:
        return 0.5 * (a + b)
    s = 0.5 * (matrix_function(a, lambda x: x**p, nonneg) + matrix_function(b, lambda x: x**p, nonneg))
    return matrix_function(s, lambda x: x ** (1.0 / p), nonneg)


def geodesic_mean(nu: GeodesicMeasure, a, b):
    """``∫ A #_α B dν(α)`` for invertible A, B."""
    a, b = _check_pair(a, b)
    _roots(b, need_inverse=False)
    rf = from_measure(nu.label or "geodesic", nu)
    return kubo_ando(rf, a, b, eps=0.0)


# --------------------------------------------------------------------------
# analytic screens
# --------------------------------------------------------------------------


def certify_geom_class(h: RepresentingFunction, grid: int | np.ndarray = 64, tol: float = 1e-10):
    """Test ``h(sqrt(xy))`` against ``sqrt(h(x) h(y))`` on grid pairs.

    Returns a :class:`~matmeans.scalar.ClassReport` with ``kind = "convex"`` when
    geometric convexity holds (or both hold), else ``kind = "concave"``; its
    ``ordinary_ok`` field is not used and set equal to ``geometric_ok``.
    """
    from .scalar import ClassReport

    x = np.geomspace(1e-3, 1e3, grid) if np.isscalar(grid) else np.asarray(grid, dtype=float)
    if x.size < 16:
        raise ValueError("need at least 16 grid points")
    xx, yy = np.meshgrid(x, x, indexing="ij")
    hx, hy = h(xx), h(yy)
    scale = 1.0 + hx + hy
    slack = (np.sqrt(hx * hy) - h(np.sqrt(xx * yy))) / scale
    cvx = float(slack.min())
    ccv = float((-slack).min())
    if cvx >= -tol:
        i, j = np.unravel_index(int(np.argmin(slack)), slack.shape)
        report = ClassReport("convex", True, True, cvx, (float(x[i]), float(x[j])), cvx, cvx)
    else:
        i, j = np.unravel_index(int(np.argmin(-slack)), slack.shape)
        ok = ccv >= -tol
        report = ClassReport("concave", ok, ok, ccv, (float(x[i]), float(x[j])), ccv, ccv)
    return _GeomClassReport(report, cvx >= -tol, ccv >= -tol)


@dataclass(frozen=True)
class _GeomClassReport:
    report: object
    convex_ok: bool
    concave_ok: bool

    def __getattr__(self, name):
        return getattr(self.report, name)

    @property
    def geom_class(self) -> str:
        if self.convex_ok and self.concave_ok:
            return GEOM_BOTH
        if self.convex_ok:
            return GEOM_CONVEX
        if self.concave_ok:
            return GEOM_CONCAVE
        return GEOM_UNKNOWN


@dataclass(frozen=True)
class AbsoluteMonotonicityReport:
    """Worst scaled forward difference of ``g(t) = h(e^t)`` for each order.

    ``worst[k-1]`` is ``min_i Δ^k g(t_i) / step^k``; the screen passes when every
    entry is at least ``-tol_fd``. ``first_failure`` is ``(order, t)`` of the
    lowest failing order.
    """

    worst: tuple[float, ...]
    worst_at: tuple[float, ...]
    tol_fd: float
    first_failure: tuple[int, float] | None
    mode: str

    @property
    def passed(self) -> bool:
        return self.first_failure is None


def check_absolute_monotonicity(
    h: RepresentingFunction,
    order: int = 8,
    grid: tuple[float, float] = (-3.0, 3.0),
    step: float = 0.25,
    precision: str = "float64",
    dps: int = 80,
) -> AbsoluteMonotonicityReport:
    """Finite-difference screen for absolute monotonicity of ``h(e^t)``.

    Forward differences of orders ``1..order`` are taken at every grid point
    (extending the grid to the right by ``order`` steps). In ``float64`` mode
    orders above 8 are rejected and ``tol_fd = 1e-6 max|g|``. In ``mpmath``
    mode the arithmetic uses ``dps`` digits, orders up to 32 are allowed and
    ``tol_fd = 10^(-dps/2) max|g|``. A pass is a necessary condition only.
    """
    lo, hi = grid
    n_base = int(round((hi - lo) / step)) + 1
    worst, where, failed = [], [], []
    if precision == "float64":
        if not 1 <= order <= 8:
            raise ValueError("float64 mode supports orders 1..8")
        t = lo + step * np.arange(n_base + order)
        d = h.exp_form(t)
        tol = 1e-6 * float(np.max(np.abs(d[:n_base])))
        for k in range(1, order + 1):
            d = np.diff(d)
            vals = d[:n_base] / step**k
            i = int(np.argmin(vals))
            worst.append(float(vals[i]))
            where.append(float(t[i]))
            failed.append(vals[i] < -tol)
    elif precision == "mpmath":
        if not 1 <= order <= 32:
            raise ValueError("mpmath mode supports orders 1..32")
        with mpmath.workdps(dps):
            st = mpmath.mpf(step)
            ts = [mpmath.mpf(lo) + st * i for i in range(n_base + order)]
            d = [h.exp_form(x, mpmath) for x in ts]
            tol_mp = mpmath.mpf(10) ** (-(dps // 2)) * max(abs(v) for v in d[:n_base])
            tol = float(tol_mp)
            for k in range(1, order + 1):
                d = [d[i + 1] - d[i] for i in range(len(d) - 1)]
                vals = [d[i] / st**k for i in range(n_base)]
                i = min(range(n_base), key=vals.__getitem__)
                worst.append(float(vals[i]))
                where.append(float(ts[i]))
                failed.append(vals[i] < -tol_mp)
    else:
        raise ValueError("precision must be 'float64' or 'mpmath'")
    first = next(((k + 1, where[k]) for k in range(order) if failed[k]), None)
    return AbsoluteMonotonicityReport(tuple(worst), tuple(where), tol, first, precision)
