"""Shift, phase, Weyl and displacement operators and Heisenberg-Weyl observables.

Index conventions: every index pair (k, l) is reduced mod d on entry, and the
phase of D_{k,l} = exp(-i pi kl/d) Z^k X^l uses the product kl reduced mod d.
With that reduction D_{k,l}^dagger = D_{-k,-l} holds exactly for every d.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .config import DEFAULT_CHI, chi_value
from .linalg import max_abs


class WeylIndex(NamedTuple):
    k: int
    l: int
    d: int

    @classmethod
    def of(cls, k: int, l: int, d: int) -> "WeylIndex":
        _check_dim(d)
        return cls(k % d, l % d, d)

    def neg(self) -> "WeylIndex":
        return WeylIndex((-self.k) % self.d, (-self.l) % self.d, self.d)

    def scaled(self, n: int) -> "WeylIndex":
        return WeylIndex((n * self.k) % self.d, (n * self.l) % self.d, self.d)


@dataclass(frozen=True)
class HWObservable:
    index: WeylIndex
    chi: str
    matrix: np.ndarray


def _check_dim(d: int) -> None:
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool) or d < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {d!r}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def all_indices(d: int, include_identity: bool = True) -> list[tuple[int, int]]:
    """All (k, l) in row-major order."""
    return [(k, l) for k in range(d) for l in range(d) if include_identity or (k, l) != (0, 0)]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def shift_op(d: int) -> np.ndarray:
    """X|r> = |r+1 mod d>."""
    _check_dim(d)
    x = np.zeros((d, d), dtype=complex)
    for r in range(d):
        x[(r + 1) % d, r] = 1.0
    return _frozen(x)


@lru_cache(maxsize=None)
def phase_op(d: int) -> np.ndarray:
    """Z|r> = omega^r |r> with omega = exp(2 pi i / d)."""
    _check_dim(d)
    return _frozen(np.diag(np.exp(2j * np.pi * np.arange(d) / d)))


def _z_pow(k: int, d: int) -> np.ndarray:
    return np.diag(np.exp(2j * np.pi * k * np.arange(d) / d))


def _x_pow(l: int, d: int) -> np.ndarray:
    return np.roll(np.eye(d, dtype=complex), l % d, axis=0)


@lru_cache(maxsize=None)
def _zx(k: int, l: int, d: int) -> np.ndarray:
    return _frozen(_z_pow(k, d) @ _x_pow(l, d))


@lru_cache(maxsize=None)
def weyl_op(k: int, l: int, d: int) -> np.ndarray:
    """W_{k,l} = X^l Z^k."""
    _check_dim(d)
    k, l = k % d, l % d
    return _frozen(_x_pow(l, d) @ _z_pow(k, d))


@lru_cache(maxsize=None)
def displacement_op(k: int, l: int, d: int) -> np.ndarray:
    """D_{k,l} = exp(-i pi (kl mod d)/d) Z^k X^l."""
    _check_dim(d)
    k, l = k % d, l % d
    phase = np.exp(-1j * np.pi * ((k * l) % d) / d)
    return _frozen(phase * _zx(k, l, d))


@lru_cache(maxsize=None)
def observable(k: int, l: int, d: int, chi: str = DEFAULT_CHI) -> np.ndarray:
    """Matrix of Q_{k,l} = chi D_{k,l} + chi* D_{k,l}^dagger."""
    c = chi_value(chi)
    dk = displacement_op(k, l, d)
    q = c * dk + np.conj(c) * dk.conj().T
    # Hermitian by construction; remove rounding asymmetry
    return _frozen((q + q.conj().T) / 2)


def hw_observable(idx: WeylIndex, chi: str = DEFAULT_CHI) -> HWObservable:
    idx = WeylIndex.of(*idx)
    return HWObservable(idx, chi, observable(idx.k, idx.l, idx.d, chi))


def gram_matrix(d: int, chi: str = DEFAULT_CHI) -> np.ndarray:
    """Hilbert-Schmidt Gram matrix of all d^2 observables, row-major order."""
    vecs = np.array([observable(k, l, d, chi).ravel() for k, l in all_indices(d)])
    return vecs.conj() @ vecs.T


def commutator_norm(a, b) -> float:
    return max_abs(a @ b - b @ a)


def commuting_subsets(d: int) -> list[list[tuple[int, int]]]:
    """Partition of the d^2 - 1 non-identity indices into d + 1 commuting families.

    Order: {(n, alpha n)} for alpha = 1..d-1, then {(n, 0)}, then {(0, n)},
    each family listed for n = 1..d-1.
    """
    _check_dim(d)
    if not is_prime(d):
        raise ValueError(f"commuting partition requires prime d, got {d}")
    families = [[(n, (alpha * n) % d) for n in range(1, d)] for alpha in range(1, d)]
    families.append([(n, 0) for n in range(1, d)])
    families.append([(0, n) for n in range(1, d)])
    return families


def verify_family_commutation(k: int, l: int, d: int, chi: str = DEFAULT_CHI) -> float:
    """Max commutator norm within {Q_{nk,nl} : n = 1..d-1}."""
    ops = [observable(n * k, n * l, d, chi) for n in range(1, d)]
    return max(
        (commutator_norm(a, b) for i, a in enumerate(ops) for b in ops[i + 1:]),
        default=0.0,
    )


def verify_square_pair(k: int, l: int, d: int, chi: str = DEFAULT_CHI) -> float:
    """||Q_{k,l}^2 + Q_{-k,-l}^2 - 2I||."""
    q1 = observable(k, l, d, chi)
    q2 = observable(-k, -l, d, chi)
    return max_abs(q1 @ q1 + q2 @ q2 - 2 * np.eye(d))


def verify_sum_of_squares(k: int, l: int, d: int, chi: str = DEFAULT_CHI) -> float:
    """||sum_{n=1}^{d-1} Q_{nk,nl}^2 - (d-1)I||."""
    _check_dim(d)
    if k % d == 0 and l % d == 0:
        raise ValueError("sum of squares is stated for (k, l) != (0, 0)")
    total = np.zeros((d, d), dtype=complex)
    for n in range(1, d):
        q = observable(n * k, n * l, d, chi)
        total += q @ q
    return max_abs(total - (d - 1) * np.eye(d))
