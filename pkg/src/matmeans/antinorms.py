"""Symmetric anti-norms and symmetric norms on positive matrices.

An anti-norm is a continuous, positively homogeneous, unitarily invariant and
*superadditive* functional on PSD matrices. All of the functionals here are
spectral: they are evaluated through a symmetric gauge ``Φ`` applied to the
eigenvalues, never entrywise.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from .errors import ConfigError, DimensionMismatch, OptimizerFailure
from .hermitian import eigh, eigvalsh, hermitian, random_unitary

__all__ = [
    "AntiNorm",
    "DualResult",
    "Norm",
    "antinorm_from_spec",
    "dual_antinorm",
    "evaluate_antinorm",
    "evaluate_norm",
    "kyfan_anti_decomposition_form",
    "kyfan_anti_projection_form",
    "norm_from_spec",
]


def _spectrum(a) -> np.ndarray:
    """Non-negative spectrum in increasing order (1-D input is taken as a spectrum)."""
    a = np.asarray(a)
    lam = np.sort(a.real.astype(float)) if a.ndim == 1 else eigvalsh(a)[::-1]
    return np.clip(lam, 0.0, None)


def _check_k(k: int, n: int) -> None:
    if not 1 <= k <= n:
        raise DimensionMismatch(f"k = {k} outside 1..{n}")


# --------------------------------------------------------------------------
# symmetric norms
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Norm:
    """Symmetric norm: ``kyfan`` (k), ``schatten`` (p >= 1), ``operator`` or ``trace``."""

    kind: str
    k: int | None = None
    p: float | None = None

    def __post_init__(self):
        if self.kind not in ("kyfan", "schatten", "operator", "trace"):
            raise ConfigError(f"unknown norm kind {self.kind!r}")
        if self.kind == "kyfan" and (self.k is None or self.k < 1):
            raise ConfigError("kyfan norm needs k >= 1")
        if self.kind == "schatten" and (self.p is None or self.p < 1):
            raise ConfigError("schatten norm needs p >= 1")

    def gauge(self, x) -> float:
        """Symmetric gauge on a non-negative vector."""
        x = np.sort(np.abs(np.asarray(x, dtype=float)))[::-1]
        if self.kind == "trace":
            return float(x.sum())
        if self.kind == "operator":
            return float(x[0])
        if self.kind == "kyfan":
            _check_k(self.k, x.size)
            return float(x[: self.k].sum())
        if math.isinf(self.p):
            return float(x[0])
        top = x[0]
        if top == 0:
            return 0.0
        return float(top * np.sum((x / top) ** self.p) ** (1.0 / self.p))

    def __call__(self, a) -> float:
        a = np.asarray(a)
        if a.ndim == 1:
            return self.gauge(a)
        # singular values of a Hermitian matrix are |eigenvalues|
        return self.gauge(np.abs(eigvalsh(a)))

    @property
    def spec(self) -> str:
        if self.kind == "kyfan":
            return f"norm:kyfan:k={self.k}"
        if self.kind == "schatten":
            return f"norm:schatten:p={self.p:g}"
        return f"norm:{self.kind}"


def evaluate_norm(spec: Norm, a) -> float:
    return spec(a)


# --------------------------------------------------------------------------
# anti-norms
# --------------------------------------------------------------------------

_KINDS = (
    "trace",
    "kyfan_anti",
    "schatten",
    "neg_schatten",
    "schatten_kyfan",
    "delta",
    "minkowski",
    "derived",
    "dual",
)


@dataclass(frozen=True)
class AntiNorm:
    """A symmetric anti-norm from the catalog.

    Parameters
    ----------
    kind : str
        One of ``trace``, ``kyfan_anti`` (k), ``schatten`` (0 < p <= 1),
        ``neg_schatten`` (p > 0, the exponent is -p), ``schatten_kyfan``
        (p > 0, k), ``delta`` (k), ``minkowski``, ``derived`` (norm, p),
        ``dual`` (base).
    scale : float
        Constant factor; only used to express ``n det^{1/n}`` style duals.
    """

    kind: str
    k: int | None = None
    p: float | None = None
    norm: Norm | None = None
    base: "AntiNorm | None" = None
    scale: float = 1.0
    seed: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ConfigError(f"unknown anti-norm kind {self.kind!r}")
        if self.kind in ("kyfan_anti", "schatten_kyfan", "delta") and (self.k is None or self.k < 1):
            raise ConfigError(f"{self.kind} needs k >= 1")
        if self.kind == "schatten" and not (self.p is not None and 0 < self.p <= 1):
            raise ConfigError("schatten anti-norm needs 0 < p <= 1")
        if self.kind in ("neg_schatten", "schatten_kyfan", "derived") and not (self.p is not None and self.p > 0):
            raise ConfigError(f"{self.kind} needs p > 0")
        if self.kind == "derived" and self.norm is None:
            raise ConfigError("derived anti-norm needs a norm")
        if self.kind == "dual" and self.base is None:
            raise ConfigError("dual anti-norm needs a base anti-norm")

    # ---- evaluation -------------------------------------------------------

    def gauge(self, y) -> float:
        """Anti-gauge ``Φ_!`` on a non-negative vector (any order)."""
        y = np.sort(np.clip(np.asarray(y, dtype=float), 0.0, None))
        n = y.size
        kind = self.kind
        if kind == "trace":
            val = y.sum()
        elif kind == "kyfan_anti":
            _check_k(self.k, n)
            val = y[: self.k].sum()
        elif kind == "schatten":
            top = y[-1]
            val = 0.0 if top == 0 else top * np.sum((y / top) ** self.p) ** (1.0 / self.p)
        elif kind == "neg_schatten":
            val = _neg_power_mean(y, self.p)
        elif kind == "schatten_kyfan":
            _check_k(self.k, n)
            val = _neg_power_mean(y[: self.k], self.p)
        elif kind in ("delta", "minkowski"):
            k = n if kind == "minkowski" else self.k
            _check_k(k, n)
            val = 0.0 if y[0] <= 0 else math.exp(np.mean(np.log(y[:k])))
        elif kind == "derived":
            val = 0.0 if y[0] <= 0 else self.norm.gauge(y ** (-self.p)) ** (-1.0 / self.p)
        else:
            val = dual_antinorm(self.base, y).value
        return float(self.scale * val)

    def __call__(self, a) -> float:
        return self.gauge(_spectrum(a))

    # ---- structure --------------------------------------------------------

    @property
    def is_derived(self) -> bool:
        """Derived anti-norms ``||A^{-p}||^{-1/p}`` (including negative Schatten forms)."""
        return self.kind in ("derived", "neg_schatten", "schatten_kyfan")

    def as_derived(self) -> tuple[Norm, float]:
        """``(norm, p)`` with ``||A||_! = ||A^{-p}||^{-1/p}``."""
        if self.kind == "derived":
            return self.norm, self.p
        if self.kind == "neg_schatten":
            return Norm("trace"), self.p
        if self.kind == "schatten_kyfan":
            return Norm("kyfan", k=self.k), self.p
        raise ConfigError(f"{self.spec} is not a derived anti-norm")

    def regular(self, n: int) -> bool:
        """Whether ``||A||_! = 0`` forces ``A = 0`` on ``n x n`` matrices."""
        if self.kind in ("trace", "schatten"):
            return True
        if self.kind == "kyfan_anti":
            return self.k == n
        if self.kind == "dual":
            return False
        return False

    @property
    def spec(self) -> str:
        k = self.kind
        pre = "" if self.scale == 1.0 else f"{self.scale:g}*"
        if k == "kyfan_anti":
            s = f"anorm:kyfan:k={self.k}"
        elif k == "schatten":
            s = f"anorm:schatten:p={self.p:g}"
        elif k == "neg_schatten":
            s = f"anorm:negschatten:p={self.p:g}"
        elif k == "schatten_kyfan":
            s = f"anorm:schattenkyfan:p={self.p:g},k={self.k}"
        elif k == "delta":
            s = f"anorm:delta:k={self.k}"
        elif k == "derived":
            s = f"anorm:derived:norm={self.norm.spec.removeprefix('norm:')},p={self.p:g}"
        elif k == "dual":
            s = f"anorm:dual:of={self.base.spec}"
        else:
            s = f"anorm:{k}"
        return pre + s


def _neg_power_mean(y, p):
    if y.size == 0 or y[0] <= 0:
        return 0.0
    # factor out the smallest entry so y^-p cannot overflow
    lo = y[0]
    return float(lo * np.sum((y / lo) ** (-p)) ** (-1.0 / p))


def evaluate_antinorm(spec: AntiNorm, a) -> float:
    """``||A||_!`` computed from the spectrum of ``A``."""
    return spec(a)


# --------------------------------------------------------------------------
# duality
# --------------------------------------------------------------------------


class DualResult(NamedTuple):
    value: float
    gap: float
    method: str


def closed_form_dual(spec: AntiNorm, n: int) -> AntiNorm | None:
    """Closed-form dual where one is known, else ``None``."""
    k = spec.kind
    s = spec.scale
    if k == "trace" or (k == "schatten" and spec.p == 1.0) or (k == "kyfan_anti" and spec.k == n):
        return AntiNorm("kyfan_anti", k=1, scale=1.0 / s)
    if k == "kyfan_anti" and spec.k == 1:
        return AntiNorm("trace", scale=1.0 / s)
    if k == "schatten":
        return AntiNorm("neg_schatten", p=spec.p / (1.0 - spec.p), scale=1.0 / s)
    if k == "neg_schatten":
        return AntiNorm("schatten", p=spec.p / (spec.p + 1.0), scale=1.0 / s)
    if k == "minkowski" or (k == "delta" and spec.k == n):
        return AntiNorm("minkowski", scale=n / s)
    return None


def _kyfan_anti_dual(x, k):
    """``inf{<x, y> : sum of k smallest y >= 1}`` as the best LP vertex.

    Vertices put ``1/(k-j)`` on the ``n-j`` coordinates carrying the smallest
    ``x`` and zero elsewhere, ``j = 0..k-1``.
    """
    xs = np.sort(x)
    n = xs.size
    return min(xs[: n - j].sum() / (k - j) for j in range(k))


def _numeric_dual(spec: AntiNorm, x, restarts: int = 8, seed: int = 0) -> DualResult:
    """Solve ``inf{<x↓, y↑> : Φ_!(y) >= 1}`` through its homogeneous form.

    The value is ``1 / max Φ_!(y)`` over the polytope of increasing ``y >= 0``
    with ``<x↓, y> = 1``. That polytope is the simplex spanned by the vertices
    ``1_{i >= j} / sum_{i >= j} x↓_i``, so the solve maximizes the concave
    ``log Φ_!`` over barycentric weights, with SLSQP from ``restarts`` random
    starts.
    """
    xd = np.sort(np.asarray(x, dtype=float))[::-1]
    n = xd.size
    if xd[0] <= 0:
        return DualResult(0.0, 0.0, "numeric")
    # the dual is monotone and upper semicontinuous, so singular A is the limit of A + eps I
    xd = np.maximum(xd, 1e-12 * xd[0])
    tails = np.cumsum(xd[::-1])[::-1]
    verts = np.tril(np.ones((n, n))) / tails
    rng = np.random.default_rng(seed)

    def neg_log_gauge(lam):
        g = spec.gauge(verts @ np.clip(lam, 0.0, None))
        return -math.log(g) if g > 0 else 700.0

    simplex = [{"type": "eq", "fun": lambda lam: lam.sum() - 1.0, "jac": lambda lam: np.ones(n)}]
    values = []
    for _ in range(restarts):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            res = minimize(
                neg_log_gauge,
                rng.dirichlet(np.ones(n)),
                method="SLSQP",
                bounds=[(0.0, 1.0)] * n,
                constraints=simplex,
                options={"maxiter": 500, "ftol": 1e-15},
            )
        lam = np.clip(res.x, 0.0, None)
        y = verts @ (lam / lam.sum())
        g = spec.gauge(y)
        if g > 0:
            values.append(float(xd @ y) / g)
    if not values:
        raise OptimizerFailure(f"no restart converged for the dual of {spec.spec}")
    values = np.array(values)
    best = float(values.min())
    spread = float(values.max() - best) / max(abs(best), 1e-300)
    if spread > 1e-4:
        raise OptimizerFailure(f"dual restarts disagree (relative spread {spread:.2e}) for {spec.spec}")
    return DualResult(best, spread, "numeric")


def dual_antinorm(spec: AntiNorm, a, restarts: int = 8, seed: int = 0, force_numeric: bool = False) -> DualResult:
    """Dual anti-norm ``inf{Tr AB : ||B||_! = 1}`` evaluated at ``A``.

    Closed forms are used for the trace, Ky Fan, Schatten, negative Schatten
    and Minkowski anti-norms; everything else goes to a restarted SLSQP
    solve of the vector program. ``gap`` is the relative spread between
    restarts (0 for closed forms).
    """
    x = _spectrum(a)
    n = x.size
    if not force_numeric:
        closed = closed_form_dual(spec, n)
        if closed is not None:
            return DualResult(closed.gauge(x), 0.0, "closed")
        if spec.kind == "kyfan_anti":
            _check_k(spec.k, n)
            return DualResult(float(_kyfan_anti_dual(x, spec.k) / spec.scale), 0.0, "closed")
        if spec.kind == "dual" and _has_closed_dual(spec.base, n):
            # the bidual is the original anti-norm
            return DualResult(spec.base.gauge(x), 0.0, "closed")
    if np.all(x == 0):
        return DualResult(0.0, 0.0, "closed")
    return _numeric_dual(spec, x, restarts, seed)


def _has_closed_dual(spec: AntiNorm, n: int) -> bool:
    return closed_form_dual(spec, n) is not None or spec.kind == "kyfan_anti"


# --------------------------------------------------------------------------
# Ky Fan anti-norm as a minimum over projections and as a decomposition
# --------------------------------------------------------------------------


class ProjectionForm(NamedTuple):
    value: float
    projection: np.ndarray
    sampled_min: float


def kyfan_anti_projection_form(z, k: int, trials: int = 0, rng=None, tol: float = 1e-10) -> ProjectionForm:
    """``min{Tr ZP : P projection of rank k}``, attained on the k bottom eigenvectors.

    ``trials`` random rank-k projections are also sampled; each must give a
    trace at least the minimum minus ``tol (1 + ||Z||_F)``.
    """
    z = hermitian(z)
    n = z.shape[0]
    _check_k(k, n)
    vals, vecs = eigh(z)
    v = vecs[:, n - k :]
    p = v @ v.conj().T
    value = float(np.trace(z @ p).real)
    sampled = math.inf
    if trials:
        rng = rng if rng is not None else np.random.default_rng(0)
        bound = tol * (1.0 + np.linalg.norm(z))
        for _ in range(trials):
            u = random_unitary(rng, n)[:, :k]
            t = float(np.trace(u.conj().T @ z @ u).real)
            sampled = min(sampled, t)
            if t < value - bound:
                raise AssertionError(f"random projection beat the spectral minimum: {t} < {value}")
    return ProjectionForm(value, p, sampled)


class DecompositionForm(NamedTuple):
    value: float
    a: np.ndarray
    b: np.ndarray


def kyfan_anti_decomposition_form(z, k: int) -> DecompositionForm:
    """Witness ``Z = A - B`` with ``k λ_n(A) - Tr B = ||Z||_{k}``.

    ``A`` caps the k smallest eigenvalues at ``λ_{n+1-k}(Z)`` and ``B`` holds the
    difference.
    """
    z = hermitian(z)
    n = z.shape[0]
    _check_k(k, n)
    vals, vecs = eigh(z)
    cut = vals[n - k]
    a_vals = vals.copy()
    a_vals[n - k :] = cut
    b_vals = a_vals - vals
    vh = vecs.conj().T
    a = hermitian((vecs * a_vals) @ vh)
    b = hermitian((vecs * b_vals) @ vh)
    value = float(k * cut - b_vals.sum())
    return DecompositionForm(value, a, b)


# --------------------------------------------------------------------------
# spec strings
# --------------------------------------------------------------------------


def _params(text: str) -> dict[str, str]:
    out = {}
    for item in filter(None, text.split(",")):
        key, sep, val = item.partition("=")
        if not sep:
            raise ConfigError(f"expected key=value, got {item!r}")
        out[key.strip()] = val.strip()
    return out


def _num(params, key, cast=float):
    try:
        return cast(params[key])
    except KeyError as exc:
        raise ConfigError(f"missing parameter {key!r}") from exc
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {params[key]!r}") from exc


def norm_from_spec(spec: str) -> Norm:
    """Parse ``norm:kyfan:k=1``, ``norm:schatten:p=2``, ``norm:operator``, ``norm:trace``."""
    body = spec.strip().removeprefix("norm:")
    name, _, rest = body.partition(":")
    params = _params(rest)
    if name == "kyfan":
        return Norm("kyfan", k=_num(params, "k", int))
    if name == "schatten":
        p = params.get("p", "")
        return Norm("schatten", p=math.inf if p in ("inf", "infinity") else _num(params, "p"))
    if name in ("operator", "trace"):
        return Norm(name)
    raise ConfigError(f"unknown norm {spec!r}")


def antinorm_from_spec(spec: str) -> AntiNorm:
    """Parse anti-norm strings such as ``anorm:kyfan:k=2`` or ``anorm:derived:norm=kyfan:k=2,p=1``.

    Recognized: ``trace``, ``lambdamin``, ``kyfan:k=``, ``schatten:p=``,
    ``negschatten:p=``, ``schattenkyfan:p=,k=``, ``delta:k=``, ``minkowski``,
    ``derived:norm=<norm>,p=``, ``dual:of=<anti-norm spec>``.
    """
    body = spec.strip().removeprefix("anorm:")
    name, _, rest = body.partition(":")
    if name == "dual":
        if not rest.startswith("of="):
            raise ConfigError("dual anti-norm needs of=<spec>")
        return AntiNorm("dual", base=antinorm_from_spec(rest[3:]))
    if name == "derived":
        m = re.fullmatch(r"norm=(.+),p=([^,]+)", rest)
        if not m:
            raise ConfigError(f"derived anti-norm needs norm=<norm>,p=<p>, got {rest!r}")
        try:
            p = float(m.group(2))
        except ValueError as exc:
            raise ConfigError(f"bad p in {spec!r}") from exc
        return AntiNorm("derived", p=p, norm=norm_from_spec(m.group(1)))
    params = _params(rest)
    if name == "trace":
        return AntiNorm("trace")
    if name == "lambdamin":
        return AntiNorm("kyfan_anti", k=1)
    if name == "kyfan":
        return AntiNorm("kyfan_anti", k=_num(params, "k", int))
    if name == "schatten":
        return AntiNorm("schatten", p=_num(params, "p"))
    if name == "negschatten":
        return AntiNorm("neg_schatten", p=_num(params, "p"))
    if name == "schattenkyfan":
        return AntiNorm("schatten_kyfan", p=_num(params, "p"), k=_num(params, "k", int))
    if name == "delta":
        return AntiNorm("delta", k=_num(params, "k", int))
    if name == "minkowski":
        return AntiNorm("minkowski")
    raise ConfigError(f"unknown anti-norm {spec!r}")
