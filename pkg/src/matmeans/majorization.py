"""Majorization relations between positive matrices, with signed margins.

Each predicate compares spectra and returns a :class:`MajorizationVerdict`
whose ``worst_margin`` is the smallest normalized slack over ``k = 1..n``.
A relation holds when that margin is at least ``-tol``. Inputs may be
matrices or, for convenience, 1-D spectra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .hermitian import eigvalsh

__all__ = [
    "MajorizationVerdict",
    "LOG_FLOOR",
    "eigenvalue_dominates",
    "log_majorizes",
    "log_submajorizes",
    "log_supermajorizes",
    "majorizes",
    "supermajorizes",
]

LOG_FLOOR = 1e-300


@dataclass(frozen=True)
class MajorizationVerdict:
    """Outcome of a majorization test.

    Attributes
    ----------
    holds : bool
        ``worst_margin >= -tol``.
    worst_margin : float
        Smallest normalized slack; negative means violated.
    worst_k : int
        1-based index where the smallest slack occurs.
    """

    holds: bool
    worst_margin: float
    worst_k: int

    def __bool__(self) -> bool:
        return self.holds


def _spectra(a, b):
    la = _spec(a)
    lb = _spec(b)
    if la.shape != lb.shape:
        raise DimensionMismatch(f"dimensions {la.shape[-1]} and {lb.shape[-1]} differ")
    return la, lb


def _spec(a):
    a = np.asarray(a)
    if a.ndim == 1:
        return np.sort(a.real.astype(float))[::-1]
    return eigvalsh(a)


def _scale(la, lb):
    # ||A||_F of a Hermitian matrix equals the Euclidean norm of its spectrum
    return 1.0 + np.linalg.norm(la) + np.linalg.norm(lb)


def _verdict(margins, tol):
    k = int(np.argmin(margins))
    worst = float(margins[k])
    return MajorizationVerdict(worst >= -tol, worst, k + 1)


def _root_products(lam):
    """``(prod_{j<=k} lam_j)^{1/k}`` for each k; an exact 0 once a factor vanishes."""
    lam = np.clip(lam, 0.0, None)
    k = np.arange(1, lam.size + 1)
    zero = np.cumsum(lam <= LOG_FLOOR) > 0
    with np.errstate(divide="ignore"):
        logs = np.cumsum(np.log(np.where(lam > LOG_FLOOR, lam, 1.0))) / k
    return np.where(zero, 0.0, np.exp(logs))


def _product_margin(small, large):
    return (large - small) / (1.0 + small + large)


def supermajorizes(a, b, tol: float = 1e-10) -> MajorizationVerdict:
    """``A ≺^w B``: every sum of the k smallest eigenvalues of A dominates that of B."""
    la, lb = _spectra(a, b)
    margins = (np.cumsum(la[::-1]) - np.cumsum(lb[::-1])) / _scale(la, lb)
    return _verdict(margins, tol)


def majorizes(a, b, tol: float = 1e-10) -> MajorizationVerdict:
    """``A ≺ B``: supermajorization together with equal traces."""
    la, lb = _spectra(a, b)
    scale = _scale(la, lb)
    margins = (np.cumsum(la[::-1]) - np.cumsum(lb[::-1])) / scale
    margins[-1] = -abs(margins[-1])
    return _verdict(margins, tol)


def log_supermajorizes(a, b, tol: float = 1e-10) -> MajorizationVerdict:
    """``A ≺^{w(log)} B``: products of the k smallest eigenvalues of A dominate those of B.

    Margins compare k-th roots of the products, relative to their size.
    """
    la, lb = _spectra(a, b)
    pa = _root_products(la[::-1])
    pb = _root_products(lb[::-1])
    return _verdict(_product_margin(pb, pa), tol)


def log_submajorizes(a, b, tol: float = 1e-10) -> MajorizationVerdict:
    """``A ≺_{w(log)} B``: products of the k largest eigenvalues of A are at most those of B."""
    la, lb = _spectra(a, b)
    return _verdict(_product_margin(_root_products(la), _root_products(lb)), tol)


def log_majorizes(a, b, tol: float = 1e-10) -> MajorizationVerdict:
    """``A ≺_(log) B``: log-submajorization with equal determinants."""
    la, lb = _spectra(a, b)
    pa = _root_products(la)
    pb = _root_products(lb)
    margins = _product_margin(pa, pb)
    margins[-1] = -abs(margins[-1])
    return _verdict(margins, tol)


def eigenvalue_dominates(a, b, tol: float = 1e-10) -> MajorizationVerdict:
    """``λ_j(A) >= λ_j(B)`` for every j, i.e. ``A >= V B V*`` for some unitary V."""
    la, lb = _spectra(a, b)
    return _verdict((la - lb) / _scale(la, lb), tol)
