"""Mutually unbiased bases from eigenbases of H.W. observables (prime d).

Basis labels follow the commuting families of ``hwops.commuting_subsets``:
alpha = 1..d-1 is the eigenbasis of Q_{1,alpha}, alpha = d that of Q_{1,0}
and alpha = d+1 that of Q_{0,1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import DEFAULT_CHI
from .hwops import _check_dim, commuting_subsets, is_prime, observable
from .linalg import hermitian_eigen, max_abs

DEGENERACY_GAP = 1e-8


@dataclass(frozen=True)
class Basis:
    label: int
    generator: tuple[int, int]
    vectors: np.ndarray  # columns are the basis vectors

    @property
    def d(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True)
class ProjectorSet:
    label: int
    projectors: tuple[np.ndarray, ...]


def _fix_phase(vectors: np.ndarray) -> np.ndarray:
    """Rescale each column so its first non-negligible entry is real positive."""
    out = vectors.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size:
            z = col[nz[0]]
            out[:, j] = col * (abs(z) / z)
    return out


def eigenbasis(k: int, l: int, d: int, chi: str = DEFAULT_CHI) -> np.ndarray:
    """Orthonormal eigenbasis of Q_{k,l}; rejects degenerate spectra."""
    values, vectors = hermitian_eigen(observable(k, l, d, chi))
    gaps = np.diff(values)
    if gaps.size and gaps.min() < DEGENERACY_GAP:
        raise ValueError(
            f"Q_({k},{l}) has a degenerate spectrum at d={d} (min gap {gaps.min():.2e}); "
            "its eigenbasis is not unique"
        )
    return _fix_phase(vectors)


@lru_cache(maxsize=None)
def _cached_bases(d: int, chi: str) -> tuple[Basis, ...]:
    # works for every prime d including 2; the public entry point restricts to odd d
    bases = []
    for label, family in enumerate(commuting_subsets(d), start=1):
        k, l = family[0]
        vectors = eigenbasis(k, l, d, chi)
        vectors.setflags(write=False)
        bases.append(Basis(label, (k, l), vectors))
    return tuple(bases)


def _bases(d: int, chi: str) -> list[Basis]:
    return list(_cached_bases(d, chi))


def mub_bases(d: int, chi: str = DEFAULT_CHI) -> list[Basis]:
    """The d + 1 bases for an odd prime d."""
    _check_dim(d)
    if d % 2 == 0 or not is_prime(d):
        raise ValueError(f"MUB construction from Q eigenbases needs an odd prime d, got {d}")
    return _bases(d, chi)


def bases_for_channel(d: int, chi: str = DEFAULT_CHI) -> list[Basis]:
    """mub_bases, with d = 2 handled through the eigenbases of Y, Z and X."""
    if d == 2:
        return _bases(2, chi)
    return mub_bases(d, chi)


def projector_set(basis: Basis) -> ProjectorSet:
    v = basis.vectors
    return ProjectorSet(basis.label, tuple(np.outer(v[:, r], v[:, r].conj()) for r in range(v.shape[1])))


def projector_map_apply(projectors: ProjectorSet, sigma) -> np.ndarray:
    """sum_r P_r sigma P_r."""
    sigma = np.asarray(sigma, dtype=complex)
    d = projectors.projectors[0].shape[0]
    if sigma.shape != (d, d):
        raise ValueError(f"expected a {d}x{d} operator, got shape {sigma.shape}")
    return sum(p @ sigma @ p for p in projectors.projectors)


def overlap_table(bases: list[Basis]) -> np.ndarray:
    """|<eta_r^a | eta_s^b>|^2 as an array indexed [a, b, r, s]."""
    v = np.array([b.vectors for b in bases])
    return np.abs(np.einsum("air,bis->abrs", v.conj(), v)) ** 2


def unbiasedness_deviation(bases: list[Basis]) -> float:
    """Max |overlap - 1/d| over all pairs of distinct bases."""
    d = bases[0].d
    table = overlap_table(bases)
    worst = 0.0
    for a in range(len(bases)):
        for b in range(len(bases)):
            if a != b:
                worst = max(worst, max_abs(table[a, b] - 1.0 / d))
    return worst


def orthonormality_deviation(basis: Basis) -> float:
    v = basis.vectors
    return max_abs(v.conj().T @ v - np.eye(v.shape[1]))


def completeness_deviation(projectors: ProjectorSet) -> float:
    d = projectors.projectors[0].shape[0]
    return max_abs(sum(projectors.projectors) - np.eye(d))


def family_diagonalization_deviation(basis: Basis, chi: str = DEFAULT_CHI) -> float:
    """Max ||P_r Q - Q P_r|| over every Q in the family the basis belongs to."""
    d = basis.d
    family = commuting_subsets(d)[basis.label - 1]
    worst = 0.0
    for p in projector_set(basis).projectors:
        for k, l in family:
            q = observable(k, l, d, chi)
            worst = max(worst, max_abs(p @ q - q @ p))
    return worst


def _matrix_units(d: int):
    for i in range(d):
        for j in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            yield e


def verify_complementarity(alpha: int, beta: int, d: int, chi: str = DEFAULT_CHI, probes=None) -> float:
    """Max over probes of ||Phi_alpha(Phi_beta(sigma)) - Tr(sigma) I/d|| for alpha != beta.

    Probes default to all d^2 matrix units; both composition orders are checked.
    """
    if alpha == beta:
        raise ValueError("complementarity identity requires alpha != beta")
    bases = bases_for_channel(d, chi)
    if not (1 <= alpha <= d + 1 and 1 <= beta <= d + 1):
        raise ValueError(f"basis labels run over 1..{d + 1}")
    pa = projector_set(bases[alpha - 1])
    pb = projector_set(bases[beta - 1])
    probes = list(_matrix_units(d)) if probes is None else probes
    worst = 0.0
    for sigma in probes:
        target = np.trace(sigma) * np.eye(d) / d
        worst = max(
            worst,
            max_abs(projector_map_apply(pa, projector_map_apply(pb, sigma)) - target),
            max_abs(projector_map_apply(pb, projector_map_apply(pa, sigma)) - target),
        )
    return worst
