"""Randomized counterexample search for open hypotheses.

Three hypotheses are searchable:

``conj-1.7``
    ``A↓ σ B↑ ≺^{w(log)} A σ B ≺^{w(log)} A↓ σ B↓`` for geometrically convex
    representing functions.
``gm-le-lm``
    ``G_m(A) <= L_m(A)`` in the Löwner order, where ``L_m`` averages the
    weighted Karcher means over the uniform measure on the simplex.
``thm-4.7-sigma-p``
    ``||f(A σ_p B)||_! >= ||f(A)||_! σ_p ||f(B)||_!`` for the operator p-means.

The search spends its budget in two phases. Random sampling comes first. Then
coordinate perturbations start from the best point found. A candidate is
reported only if an independent re-evaluation, with a finer cubature for
``gm-le-lm``, confirms a margin below ``-10 * tol``. A ``None`` result never
claims that the hypothesis is true.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError
from ..hermitian import eigh, hermitian, random_unitary
from ..multi import karcher_solve, simplex_cubature
from ..specs import mean_from_spec
from . import sampling as smp
from .codec import decode_inputs, encode_inputs
from .properties import (
    DC_ALL,
    _anorm_value,
    _fn,
    conj17_margin,
    derived_antinorms,
    fmat,
    loewner_margin,
    random_geom_convex_mean,
    rel,
)
from .runner import case_seed

__all__ = ["HYPOTHESES", "SearchResult", "evaluate", "replay_search_witness", "search_counterexample"]

HYPOTHESES = ("conj-1.7", "gm-le-lm", "thm-4.7-sigma-p")

# cubature orders for the uniform simplex measure: cheap while searching,
# finer when confirming a candidate
SEARCH_ORDER = 4
VERIFY_ORDER = 10
GM_BATCH = 64
GM_PERTURB_BATCH = 16


@dataclass
class SearchResult:
    hypothesis: str
    evaluated: int
    best_margin: float
    witness: dict | None

    def to_dict(self) -> dict:
        from .codec import json_float

        return {
            "hypothesis": self.hypothesis,
            "evaluated": self.evaluated,
            "best_margin": json_float(self.best_margin),
            "witness": self.witness,
        }


def _gm_batch(rng, size, commuting):
    """``size`` candidates sharing ``m`` and the dimension, stacked for batched solves."""
    m = int(rng.integers(2, 4))
    dim = int(rng.integers(2, 4))
    out = np.empty((size, m, dim, dim), dtype=np.complex128)
    for b in range(size):
        if commuting:
            u = random_unitary(rng, dim)
            out[b] = np.stack([hermitian((u * np.exp(rng.uniform(-2, 2, dim))) @ u.conj().T) for _ in range(m)])
        else:
            out[b] = np.stack([smp.psd(rng, dim) for _ in range(m)])
    return out


def _gm_margins(mats, order: int = SEARCH_ORDER) -> np.ndarray:
    """Margins of ``L_m >= G_m`` for a stack of shape ``(batch, m, n, n)``."""
    m = mats.shape[1]
    pts, mass = simplex_cubature(m, order)
    g = karcher_solve(pts, mats[:, None], None).mean
    lm = hermitian(np.einsum("k,bkij->bij", mass, g))
    gm = karcher_solve(np.full(m, 1.0 / m), mats, None).mean
    return np.array([loewner_margin(x, y) for x, y in zip(lm, gm)])


def _sample(hypothesis, rng, commuting=False):
    dim = int(rng.integers(2, 5))
    if hypothesis == "conj-1.7":
        return {"mean": random_geom_convex_mean(rng), "A": smp.psd(rng, dim), "B": smp.psd(rng, dim)}
    if hypothesis == "thm-4.7-sigma-p":
        f = DC_ALL[int(rng.integers(len(DC_ALL)))]
        dom = _fn(f).domain
        anorms = derived_antinorms(dim)
        return {
            "p": float(rng.uniform(0.01, 0.99)),
            "f": f,
            "anorm": anorms[int(rng.integers(len(anorms)))],
            "A": smp.in_domain(rng, dim, dom),
            "B": smp.in_domain(rng, dim, dom),
        }
    raise ConfigError(f"unknown hypothesis {hypothesis!r}; expected one of {', '.join(HYPOTHESES)}")


def evaluate(hypothesis: str, inputs: dict, order: int = SEARCH_ORDER) -> float:
    """Signed margin of one candidate; negative refutes the hypothesis."""
    if hypothesis == "conj-1.7":
        return conj17_margin(inputs["mean"], inputs["A"], inputs["B"])
    if hypothesis == "gm-le-lm":
        return float(_gm_margins(np.asarray(inputs["mats"])[None], order)[0])
    if hypothesis == "thm-4.7-sigma-p":
        mean = mean_from_spec(f"mean:bp:p={inputs['p']!r}")
        f, spec, a, b = inputs["f"], inputs["anorm"], inputs["A"], inputs["B"]
        lhs = _anorm_value(spec, fmat(f, mean.matrix(a, b)))
        rhs = mean.scalar(_anorm_value(spec, fmat(f, a)), _anorm_value(spec, fmat(f, b)))
        return rel(lhs, rhs)
    raise ConfigError(f"unknown hypothesis {hypothesis!r}; expected one of {', '.join(HYPOTHESES)}")


def _perturb_psd(rng, a, scale):
    n = a.shape[0]
    h = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = hermitian(h + h.conj().T) / (2.0 * math.sqrt(n))
    lam, u = eigh(a)
    top = float(lam[0])
    x = hermitian(a + scale * top * h)
    lam, u = eigh(x)
    lam = np.clip(lam, 1e-3 * max(top, 1e-300), None)
    return hermitian((u * lam) @ u.conj().T)


def _perturb(hypothesis, rng, inputs, scale, dom=None):
    out = dict(inputs)
    if hypothesis == "gm-le-lm":
        mats = inputs["mats"].copy()
        i = int(rng.integers(mats.shape[0]))
        mats[i] = _perturb_psd(rng, mats[i], scale)
        out["mats"] = mats
        return out
    key = "A" if rng.random() < 0.5 else "B"
    if hypothesis == "thm-4.7-sigma-p" and dom is not None and not (dom.lo == 0 and math.isinf(dom.hi)):
        # keep bounded domains intact by rescaling the spectrum into the interior
        x = _perturb_psd(rng, inputs[key], scale)
        lam, u = eigh(x)
        lam = np.clip(lam, dom.lo + 1e-3 * (1 + abs(dom.lo)), dom.hi - 1e-3 if math.isfinite(dom.hi) else None)
        out[key] = hermitian((u * lam) @ u.conj().T)
        return out
    out[key] = _perturb_psd(rng, inputs[key], scale)
    return out


def search_counterexample(
    hypothesis: str, budget: int, seed: int = 0, tol: float = 1e-8, commuting: bool = False
) -> SearchResult:
    """Search for a refuting instance within ``budget`` evaluations.

    Parameters
    ----------
    hypothesis : {"conj-1.7", "gm-le-lm", "thm-4.7-sigma-p"}
    budget : int
        Total number of candidate evaluations.
    seed : int
    tol : float
        A witness is returned only if its confirmed margin is below ``-10 * tol``.
    commuting : bool
        For ``gm-le-lm``, restrict to commuting inputs.

    Returns
    -------
    SearchResult
        ``witness`` is ``None`` unless a confirmed counterexample was found.
    """
    if hypothesis not in HYPOTHESES:
        raise ConfigError(f"unknown hypothesis {hypothesis!r}; expected one of {', '.join(HYPOTHESES)}")
    if budget < 0:
        raise ConfigError("budget must be non-negative")
    rng = np.random.default_rng(case_seed(seed, hypothesis))
    best, best_inputs = math.inf, None
    evaluated = 0
    random_phase = budget if commuting else budget - budget // 4
    while evaluated < random_phase:
        if hypothesis == "gm-le-lm":
            size = min(GM_BATCH, random_phase - evaluated)
            batch = _gm_batch(rng, size, commuting)
            try:
                margins = _gm_margins(batch)
            except Exception:
                margins = np.full(size, np.inf)
            evaluated += size
            k = int(np.argmin(margins))
            if margins[k] < best:
                best, best_inputs = float(margins[k]), {"mats": batch[k]}
            continue
        inputs = _sample(hypothesis, rng, commuting)
        margin = _safe_eval(hypothesis, inputs)
        evaluated += 1
        if margin < best:
            best, best_inputs = margin, inputs
    if best_inputs is not None and not commuting:
        scale = 0.2
        dom = None
        if hypothesis == "thm-4.7-sigma-p":
            dom = _fn(best_inputs["f"]).domain
        while evaluated < budget:
            # gm-le-lm perturbs in batches so the Karcher solves stay vectorized
            size = min(GM_PERTURB_BATCH if hypothesis == "gm-le-lm" else 1, budget - evaluated)
            cands = [_perturb(hypothesis, rng, best_inputs, scale, dom) for _ in range(size)]
            if hypothesis == "gm-le-lm":
                try:
                    margins = _gm_margins(np.stack([c["mats"] for c in cands]))
                except Exception:
                    margins = np.full(size, np.inf)
            else:
                margins = np.array([_safe_eval(hypothesis, c) for c in cands])
            evaluated += size
            k = int(np.argmin(margins))
            if margins[k] < best:
                best, best_inputs = float(margins[k]), cands[k]
                scale = min(1.0, scale * 1.5)
            else:
                scale = max(1e-4, scale * 0.9)
    witness = None
    if best_inputs is not None and best < -10 * tol:
        confirmed = evaluate(hypothesis, best_inputs, VERIFY_ORDER)
        if confirmed < -10 * tol:
            witness = {"hypothesis": hypothesis, "margin": confirmed, "inputs": encode_inputs(best_inputs)}
    return SearchResult(hypothesis, evaluated, best, witness)


def _safe_eval(hypothesis, inputs):
    # a numerical breakdown is not evidence against the hypothesis
    try:
        margin = evaluate(hypothesis, inputs)
    except Exception:
        return math.inf
    return margin if math.isfinite(margin) else math.inf


def replay_search_witness(witness: dict) -> float:
    """Recompute a search witness at the confirmation accuracy."""
    return evaluate(witness["hypothesis"], decode_inputs(witness["inputs"]), VERIFY_ORDER)
