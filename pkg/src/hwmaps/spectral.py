"""Power identity for Z^k X^l and isospectrality checks via characteristic polynomials.

Spectra are compared coefficientwise through ``char_poly``, never as sorted
eigenvalue lists. The sign (-1)^{kl} uses the product kl reduced mod d, the
same product that enters the phase of D_{k,l}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_CHI
from .hwops import _check_dim, _zx, all_indices, commuting_subsets, displacement_op, is_prime, observable
from .linalg import char_poly, max_abs


@dataclass(frozen=True)
class SpectralClaimResult:
    claim: str
    d: int
    indices: tuple = field(repr=False)
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance


def sign(k: int, l: int, d: int) -> int:
    return -1 if ((k % d) * (l % d)) % d % 2 else 1


def verify_power_lemma(k: int, l: int, d: int) -> float:
    """||(Z^k X^l)^d - s I|| with s = (-1)^{kl} for even d and 1 for odd d."""
    _check_dim(d)
    m = np.linalg.matrix_power(np.asarray(_zx(k % d, l % d, d)), d)
    s = (-1) ** ((k * l) % 2) if d % 2 == 0 else 1
    return max_abs(m - s * np.eye(d))


def power_lemma_scalar(k: int, l: int, d: int) -> complex:
    """The scalar c with (Z^k X^l)^d = c I, read off the computed power."""
    m = np.linalg.matrix_power(np.asarray(_zx(k % d, l % d, d)), d)
    return complex(m[0, 0])


def roots_of_unity_poly(d: int) -> np.ndarray:
    p = np.zeros(d + 1, dtype=complex)
    p[0], p[-1] = 1.0, -1.0
    return p


def signed_displacement(k: int, l: int, d: int) -> np.ndarray:
    return sign(k, l, d) * displacement_op(k, l, d)


def signed_observable(k: int, l: int, d: int, chi: str = DEFAULT_CHI) -> np.ndarray:
    return sign(k, l, d) * observable(k, l, d, chi)


def displacement_poly_deviations(d: int) -> dict[tuple[int, int], float]:
    target = roots_of_unity_poly(d)
    return {
        (k, l): max_abs(char_poly(signed_displacement(k, l, d)) - target)
        for k, l in all_indices(d, include_identity=False)
    }


def verify_displacement_isospectral(d: int) -> float:
    """Max coefficient deviation of char_poly((-1)^{kl} D_{k,l}) from z^d - 1.

    The identity index is excluded: D_{0,0} = I has char poly (z - 1)^d.
    """
    _check_dim(d)
    return max(displacement_poly_deviations(d).values())


def _max_pairwise(polys: list[np.ndarray]) -> float:
    worst = 0.0
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            worst = max(worst, max_abs(polys[i] - polys[j]))
    return worst


def verify_Q_isospectral(d: int, chi: str = DEFAULT_CHI) -> float:
    """Max pairwise char-poly distance among (-1)^{kl} Q_{k,l}, (k,l) != (0,0)."""
    _check_dim(d)
    polys = [char_poly(signed_observable(k, l, d, chi)) for k, l in all_indices(d, False)]
    return _max_pairwise(polys)


def subset_sum(k: int, l: int, d: int, chi: str = DEFAULT_CHI, per_term_sign: bool = True) -> np.ndarray:
    """sum_{n=1}^{d-1} s_n Q_{nk,nl}.

    With ``per_term_sign`` each summand carries the sign of its own index,
    s_n = (-1)^{(nk)(nl)}; otherwise every summand gets (-1)^{kl}.
    """
    total = np.zeros((d, d), dtype=complex)
    for n in range(1, d):
        kn, ln = (n * k) % d, (n * l) % d
        s = sign(kn, ln, d) if per_term_sign else sign(k, l, d)
        total += s * observable(kn, ln, d, chi)
    return total


def subset_representatives(d: int) -> list[tuple[int, int]]:
    """First member (n = 1) of every commuting family: (1, alpha), (1, 0), (0, 1)."""
    return [family[0] for family in commuting_subsets(d)]


def verify_sum_isospectral(d: int, chi: str = DEFAULT_CHI, per_term_sign: bool = True) -> float:
    """Max pairwise char-poly distance between the d + 1 commuting-family sums (prime d)."""
    _check_dim(d)
    if not is_prime(d):
        raise ValueError(f"family-sum isospectrality requires prime d, got {d}")
    polys = [char_poly(subset_sum(k, l, d, chi, per_term_sign)) for k, l in subset_representatives(d)]
    return _max_pairwise(polys)


def verify_sum_isospectral_all_indices(d: int, chi: str = DEFAULT_CHI, per_term_sign: bool = True) -> float:
    """Same comparison with every non-identity (k, l) used as the generator."""
    polys = [char_poly(subset_sum(k, l, d, chi, per_term_sign)) for k, l in all_indices(d, False)]
    return _max_pairwise(polys)


def binomial_envelope_defect(u: np.ndarray) -> float:
    """Largest excess of |c_j| over C(n, j) for the char poly of a unitary (<= 0 expected)."""
    from math import comb

    c = char_poly(u)
    n = len(c) - 1
    return max(abs(c[j]) - comb(n, j) for j in range(n + 1))
