"""Random inputs for the property checks.

Every helper draws from the generator it is handed, so a trial is fully
determined by its ``(case_seed, trial)`` pair.
"""

from __future__ import annotations

import math

import numpy as np

from ..hermitian import Interval, eigh, eigvalsh, hermitian, psd_spectrum, random_unitary

__all__ = [
    "choose",
    "correlation_matrix",
    "dirichlet_weights",
    "in_domain",
    "mixed_unitary_kraus",
    "psd",
    "psd_commuting_mix",
    "spectrum_in",
]


def choose(rng: np.random.Generator, knobs: dict, key: str, options):
    """``knobs[key]`` when set, otherwise a uniform pick from ``options``."""
    if knobs.get(key) is not None:
        return knobs[key]
    return options[int(rng.integers(len(options)))]


def _rebuild(u, lam):
    return hermitian((u * lam) @ u.conj().T)


def psd(rng: np.random.Generator, n: int, cond_max: float = 100.0, singular_prob: float = 0.0, scale: bool = True):
    """Haar-rotated PSD matrix with condition number log-uniform in ``[1, cond_max]``.

    With probability ``singular_prob`` a random number of eigenvalues is set to
    zero. ``scale`` multiplies by a log-uniform factor in ``[0.1, 10]``.
    """
    cond = math.exp(rng.uniform(0.0, math.log(cond_max)))
    zeros = int(rng.integers(1, n)) if n > 1 and rng.random() < singular_prob else 0
    u = random_unitary(rng, n)
    lam = psd_spectrum(rng, n, cond, zeros)
    if scale:
        lam = lam * math.exp(rng.uniform(-math.log(10.0), math.log(10.0)))
    return _rebuild(u, lam)


def spectrum_in(rng: np.random.Generator, n: int, dom: Interval, cond_max: float = 100.0) -> np.ndarray:
    """``n`` eigenvalues strictly inside ``dom``.

    Half-lines ``[0, inf)`` get a log-uniform spread of condition at most
    ``cond_max``; ``[c, inf)`` with ``c > 0`` gets ``c + `` such a spread;
    bounded intervals are sampled uniformly away from the endpoints.
    """
    if math.isinf(dom.hi):
        cond = math.exp(rng.uniform(0.0, math.log(cond_max)))
        base = psd_spectrum(rng, n, cond) * math.exp(rng.uniform(-math.log(10.0), math.log(10.0)))
        return base if dom.lo <= 0 else dom.lo + base
    width = dom.hi - dom.lo
    return np.sort(dom.lo + width * rng.uniform(0.01, 0.99, n))[::-1]


def in_domain(rng: np.random.Generator, n: int, dom: Interval, cond_max: float = 100.0):
    """Haar-rotated Hermitian matrix with spectrum from :func:`spectrum_in`."""
    u = random_unitary(rng, n)
    return _rebuild(u, spectrum_in(rng, n, dom, cond_max))


def correlation_matrix(rng: np.random.Generator, n: int, rank: int | None = None):
    """PSD matrix with unit diagonal: normalized Gram matrix of random complex vectors."""
    r = rank or int(rng.integers(1, n + 1))
    g = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
    c = g @ g.conj().T
    d = 1.0 / np.sqrt(np.diagonal(c).real)
    c = c * d[:, None] * d[None, :]
    np.fill_diagonal(c, 1.0)
    return hermitian(c)


def mixed_unitary_kraus(rng: np.random.Generator, n: int, terms: int = 3):
    """Kraus operators ``sqrt(p_i) U_i``: a unital, trace-preserving map."""
    p = rng.dirichlet(np.ones(terms))
    return np.stack([math.sqrt(pi) * random_unitary(rng, n) for pi in p])


def dirichlet_weights(rng: np.random.Generator, m: int) -> np.ndarray:
    return rng.dirichlet(np.ones(m))


def psd_commuting_mix(rng: np.random.Generator, a, cond_max: float = 100.0):
    """PSD ``Z`` equal to a matrix commuting with ``A`` plus a PSD perturbation.

    The perturbation size is log-uniform in ``[1e-3, 3]`` relative to ``Z``'s
    commuting part, so that constraints such as ``AZ + ZA >= 0`` are met often
    while non-commuting pairs still appear.
    """
    n = a.shape[0]
    _, u = eigh(a)
    d = psd_spectrum(rng, n, math.exp(rng.uniform(0.0, math.log(cond_max))))
    rng.shuffle(d)
    base = _rebuild(u, d)
    w = psd(rng, n, cond_max, scale=False)
    s = math.exp(rng.uniform(math.log(1e-3), math.log(3.0)))
    return hermitian(base + s * w / max(eigvalsh(w)[0], 1e-300) * np.max(d))
