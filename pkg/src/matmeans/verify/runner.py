"""Seeded campaigns over the property registry.

A campaign runs each requested property for a number of trials. Trial ``t`` of
property ``id`` draws from ``default_rng([case_seed(master, id), t])``, so a
case's verdict depends only on the master seed, its id and its knobs, never on
which other cases run alongside it or in what order.

The JSON report splits into a *body* (configuration and verdicts) and a
``timing`` block (timestamp and elapsed seconds). Reruns with the same master
seed give byte-identical bodies.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Sequence

import numpy as np

from ..errors import ConfigError
from .codec import decode_inputs, encode_inputs, json_float
from .properties import FAILS, HOLDS, OPEN, get_property, registry_ids, validate_knobs

__all__ = [
    "CampaignReport",
    "PropertyCase",
    "PropertyVerdict",
    "case_seed",
    "expand_ids",
    "replay_witness",
    "run_campaign",
    "run_property",
]

SCHEMA = 1
DEFAULT_TOL = 1e-8


def case_seed(master: int, pid: str) -> int:
    """Stable 64-bit seed for ``pid`` under ``master``."""
    digest = hashlib.sha256(f"{master}:{pid}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


@dataclass(frozen=True)
class PropertyCase:
    """One property to run.

    ``dims`` cycles over trials: trial ``t`` uses ``dims[t % len(dims)]``.
    ``knobs`` pins choices the sampler would otherwise randomize; a list value
    is sampled from uniformly.
    """

    id: str
    dims: tuple[int, ...] = (3,)
    trials: int = 200
    seed: int = 7
    tol: float = DEFAULT_TOL
    knobs: dict = field(default_factory=dict)

    def validate(self):
        prop = get_property(self.id)
        if self.trials < 1:
            raise ConfigError("trials must be positive")
        if not self.dims or min(self.dims) < 1 or max(self.dims) > 16:
            raise ConfigError(f"dims must lie in [1, 16], got {self.dims}")
        if not self.tol >= 0:
            raise ConfigError("tol must be non-negative")
        for d in self.dims:
            validate_knobs(prop, self.knobs, d)
        return prop


@dataclass
class PropertyVerdict:
    id: str
    expected: str
    trials: int
    failures: int
    worst_margin: float
    seed: int
    witness: dict | None = None
    errors: int = 0
    acceptance: float | None = None
    elapsed: float = 0.0

    @property
    def outcome(self) -> str:
        return "pass" if self.failures == 0 else "fail"

    @property
    def as_expected(self) -> bool:
        if self.expected == HOLDS:
            return self.failures == 0
        if self.expected == FAILS:
            return self.failures > 0
        return True

    def body(self) -> dict:
        out = {
            "id": self.id,
            "expected": self.expected,
            "outcome": self.outcome,
            "as_expected": self.as_expected,
            "trials": self.trials,
            "failures": self.failures,
            "errors": self.errors,
            "worst_margin": json_float(self.worst_margin),
            "seed": self.seed,
            "witness": self.witness,
        }
        if self.acceptance is not None:
            out["acceptance"] = self.acceptance
        return out


def run_property(case: PropertyCase) -> PropertyVerdict:
    """Run one case; errors inside a trial count as failures with margin ``-inf``."""
    prop = case.validate()
    start = time.perf_counter()
    seed = case_seed(case.seed, case.id)
    trials = 1 if prop.deterministic else case.trials
    worst = math.inf
    worst_trial = None
    failures = errors = attempts = 0
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        dim = case.dims[t % len(case.dims)]
        inputs = None
        error = None
        try:
            inputs = prop.sample(rng, dim, case.knobs)
            margin = float(prop.check(inputs))
            if math.isnan(margin):
                raise FloatingPointError("checker returned nan")
        except Exception as exc:  # recorded, never propagated
            margin = -math.inf
            error = f"{type(exc).__name__}: {exc}"
            errors += 1
        if inputs is not None:
            attempts += int(inputs.get("attempts", 1))
        if margin < -case.tol:
            failures += 1
        if margin < worst or worst_trial is None:
            worst = margin
            worst_trial = (t, dim, inputs, error)
    witness = None
    if failures:
        t, dim, inputs, error = worst_trial
        witness = {"id": case.id, "case_seed": seed, "trial": t, "dim": dim, "margin": json_float(worst)}
        if inputs is not None:
            witness["inputs"] = encode_inputs(inputs)
        if error is not None:
            witness["error"] = error
    acceptance = None
    if prop.id in ("cor-6.7", "cor-agm") and attempts:
        acceptance = trials / attempts
    return PropertyVerdict(
        id=case.id,
        expected=prop.expected,
        trials=trials,
        failures=failures,
        worst_margin=worst,
        seed=seed,
        witness=witness,
        errors=errors,
        acceptance=acceptance,
        elapsed=time.perf_counter() - start,
    )


def replay_witness(witness: dict) -> float:
    """Recompute a stored witness's margin from its serialized inputs."""
    prop = get_property(witness["id"])
    if "inputs" not in witness:
        raise ConfigError("witness has no inputs to replay")
    return float(prop.check(decode_inputs(witness["inputs"])))


def expand_ids(props: str | Sequence[str]) -> list[str]:
    """``"all"``, a comma-separated string or a list of ids, in registry order for ``all``."""
    if isinstance(props, str):
        items = [p.strip() for p in props.split(",") if p.strip()]
    else:
        items = list(props)
    if items == ["all"]:
        return registry_ids()
    if not items:
        raise ConfigError("no properties requested")
    for pid in items:
        get_property(pid)
    return list(dict.fromkeys(items))


@dataclass
class CampaignReport:
    seed: int
    config: dict
    verdicts: list[PropertyVerdict]
    version: str
    timestamp: str
    elapsed: float

    @property
    def unexpected(self) -> list[str]:
        return [v.id for v in self.verdicts if not v.as_expected]

    def body(self) -> dict:
        return {
            "schema": SCHEMA,
            "seed": self.seed,
            "version": self.version,
            "config": self.config,
            "cases": [v.body() for v in self.verdicts],
        }

    def to_dict(self) -> dict:
        out = self.body()
        out["timing"] = {
            "timestamp": self.timestamp,
            "elapsed": self.elapsed,
            "cases": {v.id: v.elapsed for v in self.verdicts},
        }
        return out

    def body_json(self) -> str:
        return json.dumps(self.body(), indent=2, allow_nan=False)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "expected", "outcome", "as_expected", "trials", "failures", "errors", "worst_margin", "acceptance"])
        for v in self.verdicts:
            acc = "" if v.acceptance is None else f"{v.acceptance:.4f}"
            w.writerow([v.id, v.expected, v.outcome, v.as_expected, v.trials, v.failures, v.errors, repr(v.worst_margin), acc])
        return buf.getvalue()


def _version() -> str:
    from .. import __version__

    return __version__


def run_campaign(cases: Sequence[PropertyCase], parallelism: int = 1) -> CampaignReport:
    """Run every case and aggregate verdicts in request order.

    Raises :class:`ConfigError` up front if any case is invalid; once running,
    failures inside trials are recorded rather than raised.
    """
    cases = list(cases)
    if not cases:
        raise ConfigError("empty campaign")
    seeds = {c.seed for c in cases}
    if len(seeds) != 1:
        raise ConfigError("all cases of a campaign share one master seed")
    for c in cases:
        c.validate()
    start = time.perf_counter()
    if parallelism > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            verdicts = list(pool.map(run_property, cases))
    else:
        verdicts = [run_property(c) for c in cases]
    first = cases[0]
    config = {
        "props": [c.id for c in cases],
        "dims": list(first.dims),
        "trials": first.trials,
        "tol": first.tol,
        "knobs": {c.id: c.knobs for c in cases if c.knobs},
    }
    return CampaignReport(
        seed=first.seed,
        config=config,
        verdicts=verdicts,
        version=_version(),
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        elapsed=time.perf_counter() - start,
    )
