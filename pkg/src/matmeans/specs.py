"""Parsers for the configuration strings accepted by the command line and the verifier.

Each family has a prefix: ``mean:``, ``mmean:``, ``map:``, ``anorm:``, ``norm:``.
Functions use the bare catalog names of :func:`matmeans.scalar.function_from_spec`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .antinorms import antinorm_from_spec, norm_from_spec
from .errors import ConfigError, MatmeansError
from .io import load_matrix
from .maps import PositiveMap, kraus_map, pinch_diag, schur_map, two_block_average
from .means import (
    GeodesicMeasure,
    RepresentingFunction,
    arithmetic,
    b_p,
    f_alpha,
    from_measure,
    harmonic,
    h_alpha,
    kubo_ando,
    power_fn,
    power_mean,
    scalar_mean,
)
from .multi import KarcherConfig, SimplexMeasure, geodesic_mean_m, inductive_mean
from .scalar import function_from_spec

__all__ = [
    "Mean",
    "MultiMean",
    "antinorm_from_spec",
    "function_from_spec",
    "map_from_spec",
    "mean_from_spec",
    "mmean_from_spec",
    "norm_from_spec",
    "scalar_power_mean",
]


def scalar_power_mean(a, b, p: float):
    """``((a^p + b^p)/2)^{1/p}`` for ``p > 0``; ``sqrt(ab)`` for ``p = 0``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if p == 0:
        return np.sqrt(a * b)
    return ((a**p + b**p) / 2.0) ** (1.0 / p)


@dataclass(frozen=True)
class Mean:
    """A two-variable mean: a Kubo–Ando mean (``rf``) or a power mean ``β_p``."""

    spec: str
    rf: RepresentingFunction | None = field(default=None, compare=False)
    power: float | None = None

    def matrix(self, a, b, eps: float | None = 0.0):
        if self.power is not None:
            return power_mean(a, b, self.power)
        return kubo_ando(self.rf, a, b, eps=eps)

    def scalar(self, a, b):
        if self.power is not None:
            return scalar_power_mean(a, b, self.power)
        return scalar_mean(self.rf, a, b)

    @property
    def geom_class(self) -> str:
        return self.rf.geom_class if self.rf is not None else "unknown"


def _kv(text: str, key: str) -> float:
    m = re.fullmatch(rf"{key}=([^,]+)", text)
    if not m:
        raise ConfigError(f"expected {key}=<value>, got {text!r}")
    try:
        return float(m.group(1))
    except ValueError as exc:
        raise ConfigError(f"bad value in {text!r}") from exc


def _atoms(text: str):
    pairs = re.findall(r"\(\s*([^,()]+)\s*,\s*([^,()]+)\s*\)", text)
    if not pairs or re.sub(r"\(\s*[^,()]+\s*,\s*[^,()]+\s*\)|,|\s", "", text):
        raise ConfigError(f"atoms must look like (a,w),(a,w),..., got {text!r}")
    return [(float(a), float(w)) for a, w in pairs]


@lru_cache(maxsize=256)
def mean_from_spec(spec: str) -> Mean:
    """Parse ``mean:arith``, ``mean:harm``, ``mean:geo:alpha=``, ``mean:power:p=``,
    ``mean:bp:p=``, ``mean:falpha:a=``, ``mean:halpha:a=``, ``mean:geodesic:uniform``
    or ``mean:geodesic:atoms=(a,w),...``."""
    body = spec.strip().removeprefix("mean:")
    name, _, rest = body.partition(":")
    try:
        if name == "arith" and not rest:
            return Mean(spec, arithmetic())
        if name == "harm" and not rest:
            return Mean(spec, harmonic())
        if name == "geo":
            return Mean(spec, power_fn(_kv(rest, "alpha")) if rest else power_fn(0.5))
        if name == "power":
            p = _kv(rest, "p")
            if not 0 <= p <= 1:
                raise ConfigError(f"power mean needs p in [0, 1], got {p}")
            return Mean(spec, None, p)
        if name == "bp":
            return Mean(spec, b_p(_kv(rest, "p")))
        if name == "falpha":
            return Mean(spec, f_alpha(_kv(rest, "a")))
        if name == "halpha":
            return Mean(spec, h_alpha(_kv(rest, "a")))
        if name == "geodesic":
            if rest == "uniform":
                return Mean(spec, f_alpha(1.0))
            if rest.startswith("atoms="):
                nu = GeodesicMeasure.from_atoms(_atoms(rest[6:]), "atoms")
                return Mean(spec, from_measure(spec, nu))
    except ConfigError:
        raise
    except MatmeansError as exc:
        raise ConfigError(f"invalid mean {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown mean {spec!r}")


def map_from_spec(spec: str, dim: int) -> PositiveMap:
    """Parse ``map:pinch-diag``, ``map:two-block``, ``map:schur:<file>`` or ``map:kraus:<f1>,<f2>``.

    ``dim`` is the output dimension for the parameter-free maps.
    """
    body = spec.strip().removeprefix("map:")
    name, _, rest = body.partition(":")
    if name == "pinch-diag":
        return pinch_diag(dim)
    if name == "two-block":
        return two_block_average(dim)
    try:
        if name == "schur" and rest:
            return schur_map(load_matrix(rest))
        if name == "kraus" and rest:
            return kraus_map([load_matrix(f) for f in rest.split(",")])
    except (OSError, ValueError, KeyError) as exc:
        raise ConfigError(f"cannot build {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown map {spec!r}")


@dataclass(frozen=True)
class MultiMean:
    """An m-variable mean: geodesic (``measure``) or inductive."""

    spec: str
    kind: str
    weights: tuple[float, ...] = ()
    samples: int = 0
    seed: int = 0

    def measure(self, m: int) -> SimplexMeasure:
        if self.kind == "karcher":
            if len(self.weights) != m:
                raise ConfigError(f"{len(self.weights)} weights for {m} matrices")
            return SimplexMeasure.dirac(self.weights)
        if self.kind == "logarithmic":
            return SimplexMeasure.uniform(m, self.samples, self.seed)
        raise ConfigError(f"{self.spec} has no simplex measure")

    def apply(self, mats, cfg: KarcherConfig | None = None):
        mats = np.asarray(mats)
        if self.kind == "inductive":
            return inductive_mean(mats)
        return geodesic_mean_m(self.measure(mats.shape[0]), mats, cfg)


def mmean_from_spec(spec: str) -> MultiMean:
    """Parse ``mmean:karcher:w=0.2,0.3,0.5``, ``mmean:inductive`` or ``mmean:logarithmic:S=2000``."""
    body = spec.strip().removeprefix("mmean:")
    name, _, rest = body.partition(":")
    if name == "inductive" and not rest:
        return MultiMean(spec, "inductive")
    if name == "karcher":
        if not rest.startswith("w="):
            raise ConfigError("karcher mean needs w=<weights>")
        try:
            w = tuple(float(x) for x in rest[2:].split(","))
        except ValueError as exc:
            raise ConfigError(f"bad weights in {spec!r}") from exc
        if any(x < 0 for x in w) or abs(sum(w) - 1.0) > 1e-9:
            raise ConfigError("weights must be non-negative and sum to 1")
        return MultiMean(spec, "karcher", w)
    if name == "logarithmic":
        samples = int(_kv(rest, "S")) if rest else 2000
        if samples < 1:
            raise ConfigError("S must be positive")
        return MultiMean(spec, "logarithmic", samples=samples)
    raise ConfigError(f"unknown m-variable mean {spec!r}")

