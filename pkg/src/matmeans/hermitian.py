"""Hermitian linear algebra: eigendecomposition, functional calculus, Löwner order.

Every routine works on complex ``(..., n, n)`` arrays; leading axes are
treated as a batch. Matrices are plain :class:`numpy.ndarray` objects, made
Hermitian on entry by :func:`hermitian`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numba
import numpy as np

from .errors import DimensionMismatch, DomainViolation, NonConvergence, SingularInput

__all__ = [
    "EigDecomposition",
    "Interval",
    "PsdSamplerConfig",
    "congruence",
    "eigh",
    "eigvalsh",
    "fro",
    "hermitian",
    "is_invertible",
    "loewner_geq",
    "matrix_function",
    "mexp",
    "minv",
    "mlog",
    "mpow",
    "msqrt",
    "random_hermitian",
    "random_unitary",
    "sample_psd",
    "sorted_diagonal",
]

MAX_SWEEPS = 100
_OFF_TARGET = 1e-14
_OFF_ACCEPT = 1e-12


@dataclass(frozen=True)
class Interval:
    """A sub-interval of the real line, possibly unbounded or half-open."""

    lo: float = 0.0
    hi: float = math.inf
    lo_open: bool = False
    hi_open: bool = False

    def __contains__(self, x: float) -> bool:
        above = x > self.lo if self.lo_open else x >= self.lo
        below = x < self.hi if self.hi_open else x <= self.hi
        return above and below

    def __str__(self) -> str:
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open or math.isinf(self.hi) else "]"
        return f"{left}{self.lo:g}, {self.hi:g}{right}"


REAL_LINE = Interval(-math.inf, math.inf, True, True)


class EigDecomposition(NamedTuple):
    """Eigenvalues in non-increasing order and the matching eigenvector columns."""

    values: np.ndarray
    basis: np.ndarray


# --------------------------------------------------------------------------
# cyclic Jacobi kernel
# --------------------------------------------------------------------------


@numba.njit(cache=True)
def _offdiag(a):
    n = a.shape[0]
    s = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            z = a[p, q]
            s += z.real * z.real + z.imag * z.imag
    return math.sqrt(2.0 * s)


@numba.njit(cache=True)
def _jacobi(a, v):
    """Diagonalize Hermitian ``a`` in place, accumulating rotations into ``v``.

    Returns (sweeps, off) where sweeps is -1 on non-convergence.
    """
    n = a.shape[0]
    normf = 0.0
    for i in range(n):
        for j in range(n):
            z = a[i, j]
            normf += z.real * z.real + z.imag * z.imag
    normf = math.sqrt(normf)
    if normf == 0.0:
        return 0, 0.0
    for sweep in range(MAX_SWEEPS):
        off = _offdiag(a)
        if off <= _OFF_TARGET * normf:
            return sweep, off
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                if sweep > 3 and r <= 1e-18 * (abs(app) + abs(aqq)):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                ph = apq / r
                cph = ph.conjugate()
                theta = (aqq - app) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    if k != p and k != q:
                        akp = a[k, p]
                        akq = a[k, q]
                        nkp = c * akp - s * cph * akq
                        nkq = s * ph * akp + c * akq
                        a[k, p] = nkp
                        a[p, k] = nkp.conjugate()
                        a[k, q] = nkq
                        a[q, k] = nkq.conjugate()
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * cph * vkq
                    v[k, q] = s * ph * vkp + c * vkq
    off = _offdiag(a)
    if off <= _OFF_ACCEPT * normf:
        return MAX_SWEEPS, off
    return -1, off


@numba.njit(cache=True)
def _jacobi_batch(stack):
    b, n, _ = stack.shape
    vals = np.empty((b, n))
    vecs = np.zeros((b, n, n), dtype=np.complex128)
    status = np.empty(b, dtype=np.int64)
    for i in range(b):
        a = stack[i].copy()
        v = vecs[i]
        for j in range(n):
            v[j, j] = 1.0
        sweeps, _ = _jacobi(a, v)
        status[i] = sweeps
        for j in range(n):
            vals[i, j] = a[j, j].real
    return vals, vecs, status


# --------------------------------------------------------------------------
# construction and decomposition
# --------------------------------------------------------------------------


def hermitian(m) -> np.ndarray:
    """Return ``(M + M*)/2`` as a complex array, checking squareness."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2] or m.shape[-1] < 1:
        raise DimensionMismatch(f"expected square matrices, got shape {m.shape}")
    return 0.5 * (m + np.swapaxes(m, -1, -2).conj())


def _h(m):
    return 0.5 * (m + np.swapaxes(m, -1, -2).conj())


def fro(a) -> np.ndarray:
    """Frobenius norm over the last two axes."""
    return np.sqrt(np.sum(np.abs(a) ** 2, axis=(-2, -1)))


def eigh(a) -> EigDecomposition:
    """Eigendecomposition of a Hermitian matrix (or stack) by cyclic Jacobi sweeps.

    Eigenvalues are returned in non-increasing order; ties keep the order in
    which the sweeps left them. Raises :class:`NonConvergence` if the
    off-diagonal mass is still above ``1e-12 * ||A||_F`` after 100 sweeps.
    """
    a = np.asarray(a)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DimensionMismatch(f"expected square matrices, got shape {a.shape}")
    batch = a.shape[:-2]
    n = a.shape[-1]
    flat = np.ascontiguousarray(a, dtype=np.complex128).reshape(-1, n, n)
    vals, vecs, status = _jacobi_batch(flat)
    if np.any(status < 0):
        raise NonConvergence(f"Jacobi sweeps did not converge within {MAX_SWEEPS} sweeps")
    order = np.argsort(-vals, axis=-1, kind="stable")
    vals = np.take_along_axis(vals, order, axis=-1)
    vecs = np.take_along_axis(vecs, order[:, None, :], axis=-1)
    return EigDecomposition(vals.reshape(*batch, n), vecs.reshape(*batch, n, n))


def eigvalsh(a) -> np.ndarray:
    """Eigenvalues only, non-increasing."""
    return eigh(a).values


def _domain_of(f, domain):
    if domain is not None:
        if isinstance(domain, Interval):
            return domain
        lo, hi = domain
        return Interval(lo, hi)
    dom = getattr(f, "domain", None)
    return dom if isinstance(dom, Interval) else REAL_LINE


def _clamp(values, dom: Interval, eps):
    """Clamp eigenvalues lying within ``eps`` outside a closed endpoint."""
    out = values.copy()
    eps = np.broadcast_to(np.asarray(eps)[..., None], values.shape)
    if math.isfinite(dom.lo):
        low = values < dom.lo if not dom.lo_open else values <= dom.lo
        if np.any(low):
            fixable = low & ~np.bool_(dom.lo_open) & (values >= dom.lo - eps)
            if np.any(low & ~fixable):
                bad = float(values[low & ~fixable].min())
                raise DomainViolation(f"eigenvalue {bad:.6g} outside {dom}", bad, dom)
            out[fixable] = dom.lo
    if math.isfinite(dom.hi):
        high = values > dom.hi if not dom.hi_open else values >= dom.hi
        if np.any(high):
            fixable = high & ~np.bool_(dom.hi_open) & (values <= dom.hi + eps)
            if np.any(high & ~fixable):
                bad = float(values[high & ~fixable].max())
                raise DomainViolation(f"eigenvalue {bad:.6g} outside {dom}", bad, dom)
            out[fixable] = dom.hi
    return out


def _recompose(basis, values):
    return _h((basis * values[..., None, :]) @ np.swapaxes(basis, -1, -2).conj())


def matrix_function(a, f: Callable, domain=None, *, decomposition: EigDecomposition | None = None):
    """Apply a scalar function through the spectral decomposition, ``U f(L) U*``.

    ``f`` must accept and return real arrays. Its domain is taken from
    ``domain`` (an :class:`Interval` or ``(lo, hi)``), else from ``f.domain``,
    else the whole line. Eigenvalues within ``1e-10 * (1 + ||A||_F)`` outside a
    closed endpoint are clamped onto it; anything further out raises
    :class:`DomainViolation`.
    """
    dom = _domain_of(f, domain)
    if decomposition is None:
        decomposition = eigh(a)
    values, basis = decomposition
    eps = 1e-10 * (1.0 + fro(np.asarray(a))) if a is not None else 1e-10
    values = _clamp(values, dom, eps)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        fv = np.asarray(f(values), dtype=float)
    if not np.all(np.isfinite(fv)):
        raise DomainViolation(f"function not finite on spectrum {values}", None, dom)
    return _recompose(basis, fv)


_NONNEG = Interval(0.0, math.inf)
_POS = Interval(0.0, math.inf, lo_open=True)


def mpow(a, t: float):
    """``A**t``; non-negative powers use ``0**t = 0``, negative powers need ``A > 0``."""
    if t == 0:
        return _h(np.broadcast_to(np.eye(a.shape[-1], dtype=complex), a.shape).copy())
    if t > 0:
        return matrix_function(a, lambda x: x**t, _NONNEG)
    try:
        return matrix_function(a, lambda x: x**t, _POS)
    except DomainViolation as exc:
        raise SingularInput(f"negative power {t} of a singular matrix") from exc


def msqrt(a):
    return mpow(a, 0.5)


def minv(a):
    return mpow(a, -1.0)


def mlog(a):
    try:
        return matrix_function(a, np.log, _POS)
    except DomainViolation as exc:
        raise SingularInput("logarithm of a singular matrix") from exc


def mexp(a):
    return matrix_function(a, np.exp)


def congruence(x, a):
    """``X* A X``, re-symmetrized."""
    x = np.asarray(x, dtype=np.complex128)
    a = np.asarray(a, dtype=np.complex128)
    if x.shape[-2] != a.shape[-1]:
        raise DimensionMismatch(f"cannot form X*AX with X {x.shape} and A {a.shape}")
    return _h(np.swapaxes(x, -1, -2).conj() @ a @ x)


def loewner_geq(a, b, tol: float = 1e-10) -> bool:
    """True iff ``A - B`` is positive semidefinite up to ``tol * (1 + ||A|| + ||B||)``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    lam = eigvalsh(_h(a - b))[..., -1]
    return bool(np.all(lam >= -tol * (1.0 + fro(a) + fro(b))))


def is_invertible(a, rtol: float = 1e-13) -> bool:
    """Positive-definiteness test for a PSD matrix: ``lambda_min > rtol * (1 + ||A||_F)``."""
    lam = eigvalsh(a)[..., -1]
    return bool(np.all(lam > rtol * (1.0 + fro(np.asarray(a)))))


def sorted_diagonal(a, direction: str = "down"):
    """Diagonal matrix of the eigenvalues, decreasing (``down``) or increasing (``up``)."""
    values = eigvalsh(a)
    if direction == "up":
        values = values[..., ::-1]
    elif direction != "down":
        raise ValueError(f"direction must be 'down' or 'up', not {direction!r}")
    n = values.shape[-1]
    out = np.zeros(values.shape + (n,), dtype=np.complex128)
    idx = np.arange(n)
    out[..., idx, idx] = values
    return out


# --------------------------------------------------------------------------
# random sampling
# --------------------------------------------------------------------------


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar unitary from the QR factorization of a complex Gaussian matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    """GUE-like Hermitian matrix."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return _h(z)


@dataclass(frozen=True)
class PsdSamplerConfig:
    """Parameters for :func:`sample_psd`.

    The positive eigenvalues are log-uniform in ``[1/sqrt(c), sqrt(c)]`` with the
    two endpoints always attained, so ``lambda_max / lambda_min_positive == c``.
    """

    dim: int
    condition_target: float = 10.0
    invertible: bool = True
    rank_deficit: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.condition_target < 1:
            raise ValueError("condition_target must be >= 1")
        if self.rank_deficit < 0 or self.rank_deficit >= self.dim:
            raise ValueError("rank_deficit must lie in [0, dim)")
        if self.invertible and self.rank_deficit:
            raise ValueError("an invertible sample cannot have a rank deficit")


def psd_spectrum(rng: np.random.Generator, dim: int, condition: float, zeros: int = 0) -> np.ndarray:
    """Design spectrum used by :func:`sample_psd` (decreasing)."""
    r = dim - zeros
    half = 0.5 * math.log(condition)
    if r == 1:
        logs = np.zeros(1)
    else:
        logs = np.concatenate(([half, -half], rng.uniform(-half, half, r - 2)))
    pos = np.sort(np.exp(logs))[::-1]
    return np.concatenate((pos, np.zeros(zeros)))


def sample_psd(cfg: PsdSamplerConfig) -> np.ndarray:
    """Deterministic random PSD matrix ``U diag(lambda) U*`` with Haar ``U``."""
    rng = np.random.default_rng(cfg.seed)
    u = random_unitary(rng, cfg.dim)
    lam = psd_spectrum(rng, cfg.dim, cfg.condition_target, cfg.rank_deficit)
    return _recompose(u, lam)
