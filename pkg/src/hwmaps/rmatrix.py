"""Transfer matrices of maps in the normalized H.W. basis, and the d = 3 case study.

Basis: Gamma_0 = I/sqrt(d), then Q_{k,l}/sqrt(d) in row-major (k, l) order.
R_{ba} = <Gamma_b, Lambda(Gamma_a)>. The block split is

    R = [[R00, s^T],
         [t,   Delta]]

so ``t`` (the image of the identity direction) carries unitality and ``s``
(the trace of the images) carries trace preservation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import DEFAULT_CHI, DEFAULT_TOL
from .hwops import _check_dim, all_indices, observable
from .linalg import max_abs, operator_norm
from .maps import (
    SandwichMap,
    apply,
    as_weights,
    hw_map,
    is_completely_positive,
    is_trace_preserving,
    is_unital,
    superoperator,
    vec,
)

IMAG_RESIDUE_TOL = 1e-10
TWO_POSITIVE_MARGIN = 1e-12


@dataclass(frozen=True)
class RDecomposition:
    R00: float
    t: np.ndarray
    s: np.ndarray
    delta: np.ndarray

    def assemble(self) -> np.ndarray:
        n = self.t.size + 1
        r = np.empty((n, n))
        r[0, 0] = self.R00
        r[0, 1:] = self.s
        r[1:, 0] = self.t
        r[1:, 1:] = self.delta
        return r

    @classmethod
    def split(cls, r: np.ndarray) -> "RDecomposition":
        return cls(float(r[0, 0]), r[1:, 0].copy(), r[0, 1:].copy(), r[1:, 1:].copy())


@dataclass(frozen=True)
class GateResult:
    holds: bool
    lhs: float
    rhs: float


@lru_cache(maxsize=None)
def hw_basis(d: int, chi: str = DEFAULT_CHI) -> tuple[np.ndarray, ...]:
    _check_dim(d)
    basis = tuple(observable(k, l, d, chi) / np.sqrt(d) for k, l in all_indices(d))
    vecs = np.array([b.ravel() for b in basis])
    gram = vecs.conj() @ vecs.T
    err = max_abs(gram - np.eye(d * d))
    if err > 1e-10:
        raise RuntimeError(f"H.W. basis is not orthonormal at d={d} (deviation {err:.2e})")
    for b in basis:
        b.setflags(write=False)
    return basis


def _basis_matrix(d: int, chi: str) -> np.ndarray:
    return np.array([vec(g) for g in hw_basis(d, chi)]).T


def r_matrix(m: SandwichMap, chi: str = DEFAULT_CHI) -> tuple[np.ndarray, RDecomposition]:
    """Real transfer matrix of ``m`` and its block decomposition.

    Raises ValueError if the complex R has an imaginary residue above 1e-10,
    which means the map is not Hermiticity-preserving.
    """
    b = _basis_matrix(m.d, chi)
    r = b.conj().T @ superoperator(m) @ b
    residue = max_abs(r.imag)
    if residue > IMAG_RESIDUE_TOL:
        raise ValueError(f"R matrix has imaginary residue {residue:.3e}; map is not Hermiticity-preserving")
    r = r.real.copy()
    return r, RDecomposition.split(r)


def r_matrix_of_superop(s: np.ndarray, d: int, chi: str = DEFAULT_CHI) -> np.ndarray:
    b = _basis_matrix(d, chi)
    return (b.conj().T @ s @ b).real


def unital_tp_characterize(dec: RDecomposition, d1: int, d2: int, tol: float = DEFAULT_TOL,
                           check_against: SandwichMap | None = None) -> dict:
    """Unital iff t = 0 and R00 = sqrt(d2/d1); trace preserving iff s = 0 and R00 = sqrt(d1/d2).

    With ``check_against`` the verdicts are compared with the direct checks
    on that map and a disagreement raises AssertionError.
    """
    unital = bool(np.all(np.abs(dec.t) <= tol) and abs(dec.R00 - np.sqrt(d2 / d1)) <= tol)
    tp = bool(np.all(np.abs(dec.s) <= tol) and abs(dec.R00 - np.sqrt(d1 / d2)) <= tol)
    if check_against is not None:
        direct_unital = is_unital(check_against) <= tol
        direct_tp = is_trace_preserving(check_against) <= tol
        if (unital, tp) != (direct_unital, direct_tp):
            raise AssertionError(
                f"block verdicts (unital={unital}, tp={tp}) disagree with direct checks "
                f"(unital={direct_unital}, tp={direct_tp})"
            )
    return {"unital": unital, "trace_preserving": tp}


def positivity_sufficient(dec: RDecomposition, d1: int, d2: int, tol: float = DEFAULT_TOL) -> GateResult:
    """sqrt(d2-1)|t| + sqrt(d1-1)|s| + sqrt((d2-1)(d1-1)) ||Delta|| <= R00 implies positivity.

    Norms on t, s are Euclidean and ||Delta|| is the operator norm. A failed
    gate is inconclusive. ``holds`` allows ``tol`` of slack so that maps
    sitting exactly on the boundary are not lost to rounding.
    """
    lhs = (
        np.sqrt(d2 - 1) * np.linalg.norm(dec.t)
        + np.sqrt(d1 - 1) * np.linalg.norm(dec.s)
        + np.sqrt((d2 - 1) * (d1 - 1)) * (operator_norm(dec.delta) if dec.delta.size else 0.0)
    )
    rhs = dec.R00
    return GateResult(bool(lhs <= rhs + tol), float(lhs), float(rhs))


def eigenvalue_formula(k: int, l: int, m: int, n: int, d: int) -> float:
    """2 cos(2 pi (k n - l m) / d), the eigenvalue of the (k, l) pair map on Q_{m,n}."""
    return 2.0 * np.cos(2.0 * np.pi * (k * n - l * m) / d)


def eigenvalue_residual(k: int, l: int, m: int, n: int, d: int, chi: str = DEFAULT_CHI) -> float:
    qk, qnk = observable(k, l, d, chi), observable(-k, -l, d, chi)
    q = observable(m, n, d, chi)
    image = qk @ q @ qk + qnk @ q @ qnk
    return max_abs(image - eigenvalue_formula(k, l, m, n, d) * q)


def predicted_diagonal(p, d: int) -> np.ndarray:
    """p_{0,0} + sum over (k,l) != 0 of p_{k,l} cos(2 pi (k n - l m)/d), per basis index (m, n).

    For negation-symmetric weights this is p_{0,0} plus one pair-weight times the
    pair-map eigenvalue for each negation pair.
    """
    w = as_weights(p, d)
    out = []
    for m, n in all_indices(d):
        total = w[0, 0]
        for k, l in all_indices(d, include_identity=False):
            total += w[k, l] * np.cos(2.0 * np.pi * (k * n - l * m) / d)
        out.append(total)
    return np.array(out)


def diagonal_r_check(p, d: int, chi: str = DEFAULT_CHI, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """(max off-diagonal |R|, max diagonal deviation from the pair-eigenvalue formula)."""
    _check_dim(d)
    if d % 2 == 0:
        raise ValueError(f"diagonal R check is stated for odd d, got {d}")
    w = as_weights(p, d)
    neg = w[(-np.arange(d)) % d][:, (-np.arange(d)) % d]
    if max_abs(w - neg) > tol:
        raise ValueError("weights are not symmetric under (k, l) -> (-k, -l)")
    r, _ = r_matrix(hw_map(w, d, chi), chi)
    off = max_abs(r - np.diag(np.diag(r)))
    diag_dev = max_abs(np.diag(r) - predicted_diagonal(w, d))
    return off, diag_dev


# -- d = 3 case study -------------------------------------------------------

# Q_0..Q_8 shorthand is the row-major order of (k, l) at d = 3.
NEGATION_PAIRS_D3 = ((1, 2), (3, 6), (4, 8), (5, 7))


def d3_lambdas(w) -> np.ndarray:
    """The four distinct diagonal entries of Delta for a unital symmetric d = 3 map.

    Returned in basis order: for Q_1/Q_2, Q_3/Q_6, Q_4/Q_8, Q_5/Q_7.
    """
    p = np.asarray(w, dtype=float).ravel()
    p1, p3, p4, p5 = p[1], p[3], p[4], p[5]
    return np.array([
        1 - 3 * (p3 + p4 + p5),
        1 - 3 * (p1 + p4 + p5),
        1 - 3 * (p1 + p3 + p5),
        1 - 3 * (p1 + p3 + p4),
    ])


def d3_delta_prediction(w) -> np.ndarray:
    """Predicted Delta diagonal (8 entries, basis order Q_1..Q_8)."""
    lam = d3_lambdas(w)
    slot = {1: 0, 2: 0, 3: 1, 6: 1, 4: 2, 8: 2, 5: 3, 7: 3}
    return np.array([lam[slot[i]] for i in range(1, 9)])


def d3_unital_conditions(w, tol: float = DEFAULT_TOL) -> bool:
    p = np.asarray(w, dtype=float).ravel()
    symmetric = all(abs(p[a] - p[b]) <= tol for a, b in NEGATION_PAIRS_D3)
    normalized = abs(p[0] - (1 - 2 * (p[1] + p[3] + p[4] + p[5]))) <= tol
    return bool(symmetric and normalized)


def d3_cp_conditions(w, tol: float = DEFAULT_TOL) -> bool:
    """p_0, p_1, p_3, p_4, p_5 >= 0 (the unital-map characterization)."""
    p = np.asarray(w, dtype=float).ravel()
    return bool(all(p[i] >= -tol for i in (0, 1, 3, 4, 5)))


def reduction_weights() -> np.ndarray:
    return np.array([-1 / 3] + [1 / 6] * 8)


def reduction_map_apply(x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    return 0.5 * (np.trace(x) * np.eye(x.shape[0]) - x)


@dataclass(frozen=True)
class CaseStudyReport:
    weights: np.ndarray
    unital: bool
    unital_conditions: bool
    cp: bool
    cp_conditions: bool
    min_choi_eigenvalue: float
    R00: float
    t: np.ndarray
    s: np.ndarray
    delta_diagonal: np.ndarray
    delta_offdiagonal: float
    lambdas: np.ndarray | None
    lambda_deviation: float | None
    gate: GateResult
    two_positive: bool | None

    def to_json(self) -> dict:
        return {
            "weights": [float(x) for x in self.weights],
            "unital": self.unital,
            "cp": self.cp,
            "delta_diagonal": [float(x) for x in self.delta_diagonal],
            "gate": {"lhs": self.gate.lhs, "rhs": self.gate.rhs, "holds": self.gate.holds},
            "two_positive": self.two_positive,
            "unital_conditions": self.unital_conditions,
            "cp_conditions": self.cp_conditions,
            "min_choi_eigenvalue": self.min_choi_eigenvalue,
            "R00": self.R00,
            "t": [float(x) for x in self.t],
            "s": [float(x) for x in self.s],
            "delta_offdiagonal": self.delta_offdiagonal,
            "lambdas": None if self.lambdas is None else [float(x) for x in self.lambdas],
            "lambda_deviation": self.lambda_deviation,
        }


def two_positive_verdict(w, unital: bool, gate_holds: bool) -> bool | None:
    """At least two of p_1, p_3, p_4, p_5 positive, or None when the hypotheses fail.

    Hypotheses: the map is unital, 2 ||Delta|| <= 1 and the four lambdas share a sign.
    """
    if not (unital and gate_holds):
        return None
    lam = d3_lambdas(w)
    if not (np.all(lam >= 0) or np.all(lam <= 0)):
        return None
    p = np.asarray(w, dtype=float).ravel()
    return int(sum(p[i] > TWO_POSITIVE_MARGIN for i in (1, 3, 4, 5))) >= 2


def d3_case_study(w, chi: str = DEFAULT_CHI, tol: float = DEFAULT_TOL) -> CaseStudyReport:
    p = np.asarray(w, dtype=float).ravel()
    if p.shape != (9,):
        raise ValueError(f"d = 3 case study needs 9 weights p_0..p_8, got {p.size}")
    m = hw_map(p, 3, chi)
    _, dec = r_matrix(m, chi)
    unital = is_unital(m) <= tol
    cp, lam_min = is_completely_positive(m, tol)
    gate = positivity_sufficient(dec, 3, 3, tol)
    symmetric = all(abs(p[a] - p[b]) <= tol for a, b in NEGATION_PAIRS_D3)
    diag = np.diag(dec.delta).copy()
    offdiag = max_abs(dec.delta - np.diag(diag))
    lambdas = lam_dev = None
    if d3_unital_conditions(p, tol) and symmetric:
        lambdas = d3_lambdas(p)
        lam_dev = max_abs(diag - d3_delta_prediction(p))
    return CaseStudyReport(
        weights=p,
        unital=bool(unital),
        unital_conditions=d3_unital_conditions(p, tol),
        cp=bool(cp),
        cp_conditions=d3_cp_conditions(p, tol),
        min_choi_eigenvalue=lam_min,
        R00=dec.R00,
        t=dec.t,
        s=dec.s,
        delta_diagonal=diag,
        delta_offdiagonal=offdiag,
        lambdas=lambdas,
        lambda_deviation=lam_dev,
        gate=gate,
        two_positive=two_positive_verdict(p, bool(unital), gate.holds),
    )


def reduction_deviation(chi: str = DEFAULT_CHI) -> float:
    """Max over the 9 matrix units of |hw_map(reduction weights)(E) - (Tr E I - E)/2|."""
    m = hw_map(reduction_weights(), 3, chi)
    worst = 0.0
    for i in range(3):
        for j in range(3):
            e = np.zeros((3, 3), dtype=complex)
            e[i, j] = 1.0
            worst = max(worst, max_abs(apply(m, e) - reduction_map_apply(e)))
    return worst
