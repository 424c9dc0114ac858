"""Means of several positive definite matrices.

The weighted geometric (Karcher) mean ``G_m(w; A)`` minimizes
``sum w_i δ(X, A_i)^2`` for the Riemannian distance ``δ``. Geodesic means
average ``G_m(w; A)`` over a probability measure on the weight simplex; the
uniform measure gives the m-variable logarithmic mean ``L_m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import NamedTuple

import numpy as np
from scipy.special import roots_jacobi

from .errors import DimensionMismatch, DomainViolation, NonConvergence, SingularInput
from .hermitian import eigh, fro, hermitian

__all__ = [
    "KarcherConfig",
    "KarcherResult",
    "SimplexMeasure",
    "geodesic_mean_m",
    "inductive_mean",
    "karcher_mean",
    "karcher_residual",
    "karcher_solve",
    "riemannian_distance",
    "scalar_geodesic_mean_m",
    "simplex_cubature",
    "sturm_approximation",
    "uniform_simplex_sample",
    "weighted_arithmetic",
    "weighted_harmonic",
]


def _vh(u):
    return np.swapaxes(u, -1, -2).conj()


def _fn(vals, vecs, f):
    return (vecs * f(vals)[..., None, :]) @ _vh(vecs)


def _pd_eig(a, what="matrix"):
    vals, vecs = eigh(a)
    if np.any(vals[..., -1] <= 1e-14 * (1.0 + np.abs(vals[..., 0]))):
        raise SingularInput(f"{what} must be positive definite")
    return vals, vecs


def _as_stack(mats):
    a = hermitian(np.asarray(mats, dtype=np.complex128))
    if a.ndim < 3:
        raise DimensionMismatch("expected a sequence of square matrices")
    return a


def _weights(w, m):
    w = np.asarray(w, dtype=float)
    if w.shape[-1] != m:
        raise DimensionMismatch(f"{w.shape[-1]} weights for {m} matrices")
    if np.any(w < 0) or np.any(np.abs(w.sum(axis=-1) - 1.0) > 1e-12):
        raise DomainViolation("weights must be non-negative and sum to 1", None, None)
    return w


def riemannian_distance(a, b) -> float:
    """``δ(A, B) = ||log A^{-1/2} B A^{-1/2}||_F``."""
    a = hermitian(a)
    b = hermitian(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    va, ua = _pd_eig(a)
    _pd_eig(b)
    ir = _fn(va, ua, lambda x: x**-0.5)
    lam = eigh(hermitian(ir @ b @ ir)).values
    return float(np.sqrt(np.sum(np.log(lam) ** 2, axis=-1)))


# --------------------------------------------------------------------------
# Karcher mean
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class KarcherConfig:
    """Settings for the damped fixed-point Karcher solver.

    ``tol_grad = None`` selects ``1e-10 * m * (1 + max ||log A_i||_F)``.
    """

    tol_grad: float | None = None
    max_iter: int = 500
    step: float = 1.0

    def __post_init__(self):
        if self.tol_grad is not None and self.tol_grad <= 0:
            raise ValueError("tol_grad must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if not 0 < self.step <= 1:
            raise ValueError("step must lie in (0, 1]")


class KarcherResult(NamedTuple):
    mean: np.ndarray
    iterations: int
    residual: np.ndarray


_MIN_STEP = 1.0 / 16.0
_STALL = 0.95


def _gradient(x, a, w):
    """``sum w_i log(X^{-1/2} A_i X^{-1/2})`` together with ``X^{1/2}``."""
    xv, xu = _pd_eig(x, "iterate")
    root = _fn(xv, xu, np.sqrt)
    iroot = _fn(xv, xu, lambda v: 1.0 / np.sqrt(v))
    c = hermitian(iroot[..., None, :, :] @ a @ iroot[..., None, :, :])
    cv, cu = eigh(c)
    logs = _fn(cv, cu, np.log)
    return np.einsum("...m,...mij->...ij", w, logs), root


def karcher_solve(w, mats, cfg: KarcherConfig | None = None) -> KarcherResult:
    """Weighted Karcher mean, batched over leading axes.

    Parameters
    ----------
    w : array_like, shape (..., m)
        Weight vectors; a single vector is broadcast over the batch.
    mats : array_like, shape (..., m, n, n)
        Positive definite matrices.
    cfg : KarcherConfig, optional

    Returns
    -------
    KarcherResult
        Mean(s), iterations used and final gradient norm(s).
    """
    cfg = cfg or KarcherConfig()
    a = _as_stack(mats)
    m = a.shape[-3]
    w = _weights(w, m)
    batch = np.broadcast_shapes(w.shape[:-1], a.shape[:-3])
    a = np.broadcast_to(a, batch + a.shape[-3:])
    w = np.broadcast_to(w, batch + (m,))

    av, au = _pd_eig(a, "every A_i")
    logs = _fn(av, au, np.log)
    if cfg.tol_grad is None:
        # only the matrices that carry weight enter the tolerance scale
        scale = np.max(np.where(w > 0, fro(logs), 0.0), axis=-1)
        tol = 1e-10 * np.count_nonzero(w > 0, axis=-1) * (1.0 + scale)
    else:
        tol = np.full(batch, cfg.tol_grad)
    le = np.einsum("...m,...mij->...ij", w, logs)
    lv, lu = eigh(hermitian(le))
    x = hermitian(_fn(lv, lu, np.exp))

    # iterate on the flattened batch, dropping problems as they converge
    n = a.shape[-1]
    a = a.reshape((-1,) + a.shape[-3:])
    w = w.reshape(-1, m)
    x = x.reshape(-1, n, n).copy()
    tol = np.broadcast_to(tol, batch).reshape(-1)
    res = np.full(len(x), np.inf)
    step = np.full(len(x), cfg.step)
    prev = np.full(len(x), np.inf)
    active = np.arange(len(x))
    iterations = 0
    for it in range(cfg.max_iter + 1):
        g, root = _gradient(x[active], a[active], w[active])
        r = fro(g)
        res[active] = r
        keep = r > tol[active]
        iterations = it
        if not np.any(keep):
            active = active[:0]
            break
        if it == cfg.max_iter:
            break
        active, g, root, r = active[keep], g[keep], root[keep], r[keep]
        # a stalling or growing residual signals overshoot (the undamped map can cycle)
        step[active] = np.where(r > _STALL * prev[active], np.maximum(step[active] / 2.0, _MIN_STEP), step[active])
        prev[active] = r
        gv, gu = eigh(hermitian(g * step[active][:, None, None]))
        x[active] = hermitian(root @ _fn(gv, gu, np.exp) @ root)
    if active.size:
        raise NonConvergence(
            f"Karcher iteration stalled at gradient norm {float(np.max(res)):.3e} (tol {float(np.max(tol)):.3e})"
        )
    return KarcherResult(x.reshape(batch + (n, n)), iterations, res.reshape(batch))


def karcher_mean(w, mats, cfg: KarcherConfig | None = None):
    """``G_m(w; A_1, ..., A_m)``; see :func:`karcher_solve`."""
    return karcher_solve(w, mats, cfg).mean


def karcher_residual(x, w, mats) -> float:
    """First-order residual ``||sum w_i log(X^{-1/2} A_i X^{-1/2})||_F``."""
    a = _as_stack(mats)
    g, _ = _gradient(hermitian(x), a, _weights(w, a.shape[-3]))
    return float(np.max(fro(g)))


# --------------------------------------------------------------------------
# inductive mean and stochastic approximation
# --------------------------------------------------------------------------


def _geodesic_step(s, a, t):
    sv, su = _pd_eig(s)
    root = _fn(sv, su, np.sqrt)
    iroot = _fn(sv, su, lambda v: 1.0 / np.sqrt(v))
    cv, cu = eigh(hermitian(iroot @ a @ iroot))
    if np.any(cv[..., -1] <= 0):
        raise SingularInput("inputs must be positive definite")
    return hermitian(root @ _fn(cv, cu, lambda v: v**t) @ root)


def inductive_mean(mats):
    """``S_1 = A_1``, ``S_k = S_{k-1} #_{1/k} A_k``."""
    a = _as_stack(mats)
    s = a[..., 0, :, :]
    _pd_eig(s)
    for k in range(2, a.shape[-3] + 1):
        s = _geodesic_step(s, a[..., k - 1, :, :], 1.0 / k)
    return s


def sturm_approximation(w, mats, steps: int, seed: int = 0):
    """Inductive mean of ``steps`` matrices drawn i.i.d. from ``sum w_i δ_{A_i}``."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    a = _as_stack(mats)
    w = _weights(w, a.shape[-3])
    idx = np.random.default_rng(seed).choice(a.shape[-3], size=steps, p=w)
    s = a[idx[0]]
    for k in range(2, steps + 1):
        s = _geodesic_step(s, a[idx[k - 1]], 1.0 / k)
    return s


# --------------------------------------------------------------------------
# measures on the simplex
# --------------------------------------------------------------------------


def uniform_simplex_sample(rng: np.random.Generator, m: int, size: int, symmetrize: bool = False) -> np.ndarray:
    """Uniform points on the simplex as normalized exponential draws.

    With ``symmetrize`` each draw is replaced by all its coordinate permutations.
    """
    e = rng.exponential(1.0, (size, m))
    pts = e / e.sum(axis=1, keepdims=True)
    if symmetrize:
        pts = np.concatenate([pts[:, list(p)] for p in permutations(range(m))])
    return pts


def simplex_cubature(m: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Conical product (collapsed Gauss–Jacobi) rule for the uniform measure on the simplex.

    Stick-breaking ``w_j = u_j prod_{i<j}(1-u_i)`` maps the cube onto the
    simplex with Jacobian ``prod (1-u_j)^{m-1-j}``, absorbed into Gauss–Jacobi
    weights. Exact for polynomials of degree ``2*order - 1`` in each ``u_j``.
    """
    if m < 1 or order < 1:
        raise ValueError("m and order must be positive")
    if m == 1:
        return np.ones((1, 1)), np.ones(1)
    axes = []
    for j in range(m - 1):
        x, wt = roots_jacobi(order, m - 2 - j, 0.0)
        u = 0.5 * (x + 1.0)
        axes.append((u, wt / wt.sum()))
    grids = np.meshgrid(*[u for u, _ in axes], indexing="ij")
    wgrid = np.meshgrid(*[wt for _, wt in axes], indexing="ij")
    us = np.stack([g.ravel() for g in grids], axis=1)
    mass = np.prod(np.stack([g.ravel() for g in wgrid], axis=1), axis=1)
    pts = np.empty((us.shape[0], m))
    rest = np.ones(us.shape[0])
    for j in range(m - 1):
        pts[:, j] = rest * us[:, j]
        rest = rest * (1.0 - us[:, j])
    pts[:, -1] = rest
    return pts, mass


@dataclass(frozen=True)
class SimplexMeasure:
    """Probability measure on the weight simplex used by :func:`geodesic_mean_m`.

    Exactly one source is used, in this order of precedence: explicit
    ``atoms`` (weight vector, mass); a deterministic ``cubature_order`` rule
    for the uniform measure; or ``mc_samples`` Monte Carlo draws from the
    uniform measure with ``seed``.
    """

    m: int
    atoms: tuple[tuple[tuple[float, ...], float], ...] = ()
    mc_samples: int | None = None
    seed: int = 0
    symmetrize: bool = False
    cubature_order: int | None = None

    def __post_init__(self):
        if self.atoms:
            total = sum(mass for _, mass in self.atoms)
            if abs(total - 1.0) > 1e-12 or any(mass <= 0 for _, mass in self.atoms):
                raise DomainViolation(f"atom masses must be positive and sum to 1, got {total}", total, None)
            for w, _ in self.atoms:
                _weights(w, self.m)
        elif self.cubature_order is None and not self.mc_samples:
            raise ValueError("give atoms, cubature_order or mc_samples")

    @classmethod
    def dirac(cls, w) -> "SimplexMeasure":
        w = tuple(float(x) for x in w)
        return cls(len(w), ((w, 1.0),))

    @classmethod
    def uniform(cls, m: int, samples: int = 2000, seed: int = 0, symmetrize: bool = False) -> "SimplexMeasure":
        return cls(m, mc_samples=samples, seed=seed, symmetrize=symmetrize)

    @classmethod
    def uniform_cubature(cls, m: int, order: int = 6) -> "SimplexMeasure":
        return cls(m, cubature_order=order)

    def discretize(self) -> tuple[np.ndarray, np.ndarray]:
        """Weight vectors (K, m) and their masses (K,)."""
        if self.atoms:
            return np.array([w for w, _ in self.atoms]), np.array([mass for _, mass in self.atoms])
        if self.cubature_order is not None:
            return simplex_cubature(self.m, self.cubature_order)
        pts = uniform_simplex_sample(np.random.default_rng(self.seed), self.m, self.mc_samples, self.symmetrize)
        return pts, np.full(pts.shape[0], 1.0 / pts.shape[0])

    def mean_weights(self) -> np.ndarray:
        """``w̄_i = ∫ w_i dν``."""
        pts, mass = self.discretize()
        return mass @ pts


def geodesic_mean_m(nu: SimplexMeasure, mats, cfg: KarcherConfig | None = None, return_stderr: bool = False):
    """``∫ G_m(w; A) dν(w)`` over the discretization of ``nu``.

    With ``return_stderr`` the Frobenius norm of the Monte Carlo standard error
    is returned as well (0 for atoms and cubature).
    """
    a = _as_stack(mats)
    if a.shape[-3] != nu.m:
        raise DimensionMismatch(f"measure on {nu.m} weights, got {a.shape[-3]} matrices")
    pts, mass = nu.discretize()
    keep = mass > 0
    pts, mass = pts[keep], mass[keep]
    g = karcher_solve(pts, a[..., None, :, :, :], cfg).mean
    out = hermitian(np.einsum("k,...kij->...ij", mass, g))
    if not return_stderr:
        return out
    if nu.atoms or nu.cubature_order is not None:
        return out, 0.0
    dev = g - out[..., None, :, :]
    var = np.einsum("k,...kij->...ij", mass, np.abs(dev) ** 2) / max(len(mass) - 1, 1)
    return out, float(np.sqrt(np.max(np.sum(var, axis=(-2, -1)))))


def scalar_geodesic_mean_m(nu: SimplexMeasure, values) -> float:
    """``∫ prod a_i^{w_i} dν(w)`` for positive scalars ``a_i``."""
    pts, mass = nu.discretize()
    logs = np.log(np.asarray(values, dtype=float))
    return float(mass @ np.exp(pts @ logs))


def weighted_arithmetic(w, mats):
    a = _as_stack(mats)
    return hermitian(np.einsum("m,mij->ij", _weights(w, a.shape[-3]), a))


def weighted_harmonic(w, mats):
    """``(sum w_i A_i^{-1})^{-1}``."""
    a = _as_stack(mats)
    w = _weights(w, a.shape[-3])
    av, au = _pd_eig(a)
    s = np.einsum("m,mij->ij", w, _fn(av, au, lambda v: 1.0 / v))
    sv, su = _pd_eig(hermitian(s))
    return hermitian(_fn(sv, su, lambda v: 1.0 / v))


