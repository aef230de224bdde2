"""Tolerances, the chi convention and the seeded random source shared by every module."""

from __future__ import annotations

import math
import os

import numpy as np

DEFAULT_TOL = 1e-10
TOL_ENV_VAR = "HWMAP_TOLERANCE"

# Hermiticity gate for the eigensolver and reconstruction bound for its output.
TOL_HERMITIAN = 1e-10
TOL_RECONSTRUCT = 1e-12

# Tolerance used when a weight vector is required to be a probability vector.
TOL_PROBABILITY = 1e-12

CHI_VALUES = {"+": (1 + 1j) / 2, "-": (1 - 1j) / 2}
DEFAULT_CHI = "+"


def default_tolerance() -> float:
    """Default absolute tolerance, overridable through ``HWMAP_TOLERANCE``."""
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError as exc:
        raise ValueError(f"{TOL_ENV_VAR}={raw!r} is not a number") from exc
    if not tol > 0 or not math.isfinite(tol):
        raise ValueError(f"{TOL_ENV_VAR} must be a positive finite number, got {raw!r}")
    return tol


def chi_value(chi: str | complex = DEFAULT_CHI) -> complex:
    """Map a convention sign ``'+'``/``'-'`` to (1 +- i)/2.

    A complex value is accepted if it is one of the two allowed values.
    """
    if isinstance(chi, str):
        try:
            return CHI_VALUES[chi]
        except KeyError:
            raise ValueError(f"chi must be '+' or '-', got {chi!r}") from None
    value = complex(chi)
    for allowed in CHI_VALUES.values():
        if abs(value - allowed) < 1e-15:
            return allowed
    raise ValueError(f"chi must be (1+i)/2 or (1-i)/2, got {value}")


_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Small 64-bit generator; every sampled check in reports draws from it.

    Uses the published splitmix64 constants so that a seed reproduces the
    same stream on any platform.
    """

    def __init__(self, seed: int = 0):
        if seed < 0 or seed > _MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, low: float = 0.0, high: float = 1.0, size: int | None = None):
        if size is None:
            return low + (high - low) * self.random()
        return np.array([low + (high - low) * self.random() for _ in range(size)])

    def normal(self, size: int | None = None):
        # Box-Muller; one uniform pair per sample keeps the stream easy to reproduce.
        def one() -> float:
            u1 = 1.0 - self.random()
            u2 = self.random()
            return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

        if size is None:
            return one()
        return np.array([one() for _ in range(size)])

    def probability_vector(self, n: int) -> np.ndarray:
        """Uniform sample from the (n-1)-simplex (normalized exponentials)."""
        e = np.array([-math.log(1.0 - self.random()) for _ in range(n)])
        return e / e.sum()

    def complex_matrix(self, rows: int, cols: int | None = None) -> np.ndarray:
        cols = rows if cols is None else cols
        re = self.normal(rows * cols).reshape(rows, cols)
        im = self.normal(rows * cols).reshape(rows, cols)
        return re + 1j * im

    def hermitian(self, n: int) -> np.ndarray:
        a = self.complex_matrix(n)
        return (a + a.conj().T) / 2
