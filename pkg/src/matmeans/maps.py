"""Positive linear maps and their power companions ``E_p(Z) = E(Z^p)^{1/p}``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, DomainViolation, NotUnital, SingularInput
from .hermitian import Interval, eigvalsh, hermitian, matrix_function

__all__ = [
    "PositiveMap",
    "identity_map",
    "kraus_map",
    "pinching",
    "pinch_diag",
    "power_map",
    "schur_map",
    "two_block_average",
    "zero_power_map",
]

_NONNEG = Interval(0.0, math.inf)
_POS = Interval(0.0, math.inf, lo_open=True)


@dataclass(frozen=True)
class PositiveMap:
    """A positive linear map ``M_n -> M_m``.

    Use the constructors :func:`kraus_map`, :func:`schur_map`, :func:`pinching`,
    :func:`pinch_diag`, :func:`two_block_average` rather than building this directly.
    """

    kind: str
    in_dim: int
    out_dim: int
    kraus: tuple[np.ndarray, ...] = field(default=(), repr=False, compare=False)
    schur: np.ndarray | None = field(default=None, repr=False, compare=False)
    blocks: tuple[int, ...] = ()

    def __call__(self, z):
        return self.apply(z)

    def apply(self, z):
        """Image of ``Z`` (a matrix or a stack of matrices)."""
        z = np.asarray(z, dtype=np.complex128)
        if z.shape[-1] != self.in_dim or z.shape[-2] != self.in_dim:
            raise DimensionMismatch(f"map expects {self.in_dim}x{self.in_dim} input, got {z.shape}")
        if self.kind == "schur":
            return hermitian(self.schur * z)
        if self.kind == "pinching":
            out = np.zeros_like(z)
            start = 0
            for size in self.blocks:
                sl = slice(start, start + size)
                out[..., sl, sl] = z[..., sl, sl]
                start += size
            return hermitian(out)
        total = 0
        for c in self.kraus:
            total = total + c.conj().T @ z @ c
        return hermitian(total)

    def unit_image(self):
        return self.apply(np.eye(self.in_dim))

    @property
    def is_unital(self) -> bool:
        return bool(np.allclose(self.unit_image(), np.eye(self.out_dim), atol=1e-10))

    @property
    def is_subunital(self) -> bool:
        return bool(eigvalsh(np.eye(self.out_dim) - self.unit_image())[-1] >= -1e-10)

    @property
    def is_trace_preserving(self) -> bool:
        """``Tr E(Z) = Tr Z`` for all Z, tested on the matrix units."""
        if self.in_dim != self.out_dim:
            return False
        n = self.in_dim
        units = np.zeros((n * n, n, n), dtype=complex)
        units[np.arange(n * n), np.repeat(np.arange(n), n), np.tile(np.arange(n), n)] = 1.0
        img = self.apply(units)
        return bool(np.allclose(np.trace(img, axis1=-2, axis2=-1), np.trace(units, axis1=-2, axis2=-1), atol=1e-10))


def kraus_map(operators) -> PositiveMap:
    """``Z -> sum C_i* Z C_i`` for ``n x m`` matrices ``C_i`` with ``sum C_i* C_i <= I``."""
    ops = tuple(np.asarray(c, dtype=np.complex128) for c in operators)
    if not ops:
        raise ValueError("need at least one Kraus operator")
    n, m = ops[0].shape
    if any(c.shape != (n, m) for c in ops):
        raise DimensionMismatch("Kraus operators must share one shape")
    gram = sum(c.conj().T @ c for c in ops)
    if eigvalsh(np.eye(m) - gram)[-1] < -1e-10:
        raise NotUnital("sum C_i* C_i exceeds the identity; the map is not sub-unital")
    return PositiveMap("kraus", n, m, kraus=ops)


def identity_map(n: int) -> PositiveMap:
    return kraus_map([np.eye(n)])


def schur_map(a) -> PositiveMap:
    """``Z -> A ∘ Z`` for PSD ``A`` with diagonal entries in ``(0, 1]``."""
    a = hermitian(a)
    d = np.diagonal(a).real
    if np.any(d <= 0) or np.any(d > 1 + 1e-12):
        raise NotUnital("Schur multiplier needs diagonal entries in (0, 1]")
    if eigvalsh(a)[-1] < -1e-10 * (1 + np.linalg.norm(a)):
        raise DomainViolation("Schur multiplier must be positive semidefinite", None, None)
    n = a.shape[0]
    return PositiveMap("schur", n, n, schur=a)


def pinching(blocks) -> PositiveMap:
    """Block-diagonal compression with the given block sizes."""
    blocks = tuple(int(b) for b in blocks)
    if not blocks or any(b < 1 for b in blocks):
        raise ValueError("block sizes must be positive")
    n = sum(blocks)
    return PositiveMap("pinching", n, n, blocks=blocks)


def pinch_diag(n: int) -> PositiveMap:
    return pinching([1] * n)


def two_block_average(n: int) -> PositiveMap:
    """``M_{2n} -> M_n`` sending ``[[A, X], [Y, B]]`` to ``(A + B)/2``."""
    top = np.vstack((np.eye(n), np.zeros((n, n)))) / math.sqrt(2.0)
    bottom = np.vstack((np.zeros((n, n)), np.eye(n))) / math.sqrt(2.0)
    m = kraus_map([top, bottom])
    return PositiveMap("two_block", 2 * n, n, kraus=m.kraus)


def power_map(e: PositiveMap, z, p: float):
    """``E_p(Z) = E(Z^p)^{1/p}`` for PSD ``Z`` and ``p in (0, 1]``; ``0^p = 0``."""
    if not 0 < p <= 1:
        raise DomainViolation(f"p must lie in (0, 1], got {p}", p, Interval(0.0, 1.0, lo_open=True))
    if p == 1:
        return e.apply(z)
    zp = matrix_function(z, lambda x: x**p, _NONNEG)
    return matrix_function(e.apply(zp), lambda x: x ** (1.0 / p), _NONNEG)


def zero_power_map(e: PositiveMap, z):
    """``E_0(Z) = exp E(log Z)`` for unital ``E`` and invertible ``Z``."""
    if not e.is_unital:
        raise NotUnital("E_0 requires a unital map")
    try:
        logz = matrix_function(z, np.log, _POS)
    except DomainViolation as exc:
        raise SingularInput("E_0 requires an invertible argument") from exc
    return matrix_function(e.apply(logz), np.exp)
