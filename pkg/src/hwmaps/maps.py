"""Linear maps Y -> sum_i w_i L_i Y R_i built from Weyl operators and H.W. observables.

Conventions used throughout:

* vec is column stacking, so the superoperator of Y -> A Y B is kron(B.T, A);
* the Choi matrix is C = sum_ij E_ij (x) Lambda(E_ij), unnormalized;
* two maps are equal when their superoperators agree entrywise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import DEFAULT_CHI, DEFAULT_TOL, TOL_PROBABILITY, chi_value
from .hwops import _check_dim, all_indices, commuting_subsets, is_prime, observable, weyl_op
from .linalg import hermitian_eigen, max_abs
from .mub import bases_for_channel, projector_set


@dataclass(frozen=True)
class SandwichMap:
    d: int
    terms: tuple  # (weight, left, right) triples

    def __post_init__(self):
        for w, left, right in self.terms:
            if np.shape(left) != (self.d, self.d) or np.shape(right) != (self.d, self.d):
                raise ValueError(f"all sandwich operators must be {self.d}x{self.d}")
            if not np.isfinite(w):
                raise ValueError("weights must be finite")

    def __call__(self, y) -> np.ndarray:
        return apply(self, y)

    def __add__(self, other: "SandwichMap") -> "SandwichMap":
        if other.d != self.d:
            raise ValueError("dimension mismatch")
        return SandwichMap(self.d, self.terms + other.terms)

    def scaled(self, factor: float) -> "SandwichMap":
        return SandwichMap(self.d, tuple((factor * w, a, b) for w, a, b in self.terms))


def identity_map(d: int) -> SandwichMap:
    eye = np.eye(d, dtype=complex)
    return SandwichMap(d, ((1.0, eye, eye),))


def zero_map(d: int) -> SandwichMap:
    return SandwichMap(d, ())


def apply(m: SandwichMap, y) -> np.ndarray:
    y = np.asarray(y, dtype=complex)
    if y.shape != (m.d, m.d):
        raise ValueError(f"expected a {m.d}x{m.d} operator, got shape {y.shape}")
    out = np.zeros((m.d, m.d), dtype=complex)
    for w, left, right in m.terms:
        out += w * (left @ y @ right)
    return out


def vec(a) -> np.ndarray:
    return np.asarray(a).reshape(-1, order="F")


def unvec(v, d: int) -> np.ndarray:
    return np.asarray(v).reshape((d, d), order="F")


def matrix_units(d: int):
    for j in range(d):
        for i in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            yield i, j, e


def superoperator(m: SandwichMap) -> np.ndarray:
    s = np.zeros((m.d**2, m.d**2), dtype=complex)
    for w, left, right in m.terms:
        s += w * np.kron(np.asarray(right).T, left)
    return s


def compose(m1: SandwichMap, m2: SandwichMap) -> np.ndarray:
    """Superoperator of m1 after m2."""
    if m1.d != m2.d:
        raise ValueError("dimension mismatch")
    return superoperator(m1) @ superoperator(m2)


def choi(m: SandwichMap) -> np.ndarray:
    d = m.d
    c = np.zeros((d * d, d * d), dtype=complex)
    for i, j, e in matrix_units(d):
        c += np.kron(e, apply(m, e))
    return c


def min_choi_eigenvalue(m: SandwichMap) -> float:
    return float(hermitian_eigen(choi(m))[0][0])


def is_completely_positive(m: SandwichMap, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    lam = min_choi_eigenvalue(m)
    return lam >= -tol, lam


def is_unital(m: SandwichMap) -> float:
    """||Lambda(I) - I||."""
    return max_abs(apply(m, np.eye(m.d)) - np.eye(m.d))


def is_trace_preserving(m: SandwichMap) -> float:
    """max over matrix units of |Tr Lambda(E_ij) - Tr E_ij|."""
    return max(abs(np.trace(apply(m, e)) - (1.0 if i == j else 0.0)) for i, j, e in matrix_units(m.d))


def map_distance(m1, m2) -> float:
    s1 = m1 if isinstance(m1, np.ndarray) else superoperator(m1)
    s2 = m2 if isinstance(m2, np.ndarray) else superoperator(m2)
    return max_abs(s1 - s2)


# -- weight vectors ---------------------------------------------------------


def as_weights(p, d: int) -> np.ndarray:
    """Accept a (d, d) array or a flat row-major list of d^2 weights."""
    _check_dim(d)
    arr = np.asarray(p, dtype=float)
    if arr.shape == (d, d):
        w = arr.copy()
    elif arr.shape == (d * d,):
        w = arr.reshape(d, d).copy()
    else:
        raise ValueError(f"expected {d * d} weights for d={d}, got shape {arr.shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite")
    return w


def check_probability_vector(p, tol: float = TOL_PROBABILITY) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if not np.all(np.isfinite(p)):
        raise ValueError("weights must be finite")
    if np.any(p < -tol):
        raise ValueError(f"probability vector has a negative entry ({p.min():.3e})")
    if abs(p.sum() - 1.0) > tol:
        raise ValueError(f"probability vector must sum to 1, sums to {p.sum():.15g}")
    return p


def hw_map(p, d: int, chi: str = DEFAULT_CHI) -> SandwichMap:
    """Lambda(Y) = sum_{k,l} p_{k,l} Q_{k,l} Y Q_{k,l}; weights may be negative."""
    w = as_weights(p, d)
    terms = []
    for k, l in all_indices(d):
        q = observable(k, l, d, chi)
        terms.append((float(w[k, l]), q, q))
    return SandwichMap(d, tuple(terms))


def weyl_channel(p, d: int) -> SandwichMap:
    """Lambda_W(Y) = sum p_{k,l} W_{k,l} Y W_{k,l}^dagger for a probability vector p."""
    w = as_weights(p, d)
    check_probability_vector(w.ravel())
    terms = []
    for k, l in all_indices(d):
        u = weyl_op(k, l, d)
        terms.append((float(w[k, l]), u, u.conj().T))
    return SandwichMap(d, tuple(terms))


def pair_map(k: int, l: int, d: int, chi: str = DEFAULT_CHI) -> SandwichMap:
    """Y -> Q_{k,l} Y Q_{k,l} + Q_{-k,-l} Y Q_{-k,-l}."""
    q1 = observable(k, l, d, chi)
    q2 = observable(-k, -l, d, chi)
    return SandwichMap(d, ((1.0, q1, q1), (1.0, q2, q2)))


def unitality_sufficient(p, d: int, tol: float = DEFAULT_TOL) -> bool:
    """Negation-symmetric weights with p_{0,0} = 1 - sum of the others."""
    w = as_weights(p, d)
    neg = w[(-np.arange(d)) % d][:, (-np.arange(d)) % d]
    symmetric = max_abs(w - neg) <= tol
    normalized = abs(w[0, 0] - (1.0 - (w.sum() - w[0, 0]))) <= tol
    return bool(symmetric and normalized)


def family_map(family: list[tuple[int, int]], d: int, chi: str = DEFAULT_CHI) -> SandwichMap:
    """U(X) = sum over a commuting family of Q X Q."""
    terms = []
    for k, l in family:
        q = observable(k, l, d, chi)
        terms.append((1.0, q, q))
    return SandwichMap(d, tuple(terms))


def _check_channel_input(p, d: int) -> np.ndarray:
    _check_dim(d)
    if not is_prime(d):
        raise ValueError(f"generalized Pauli channel requires prime d, got {d}")
    p = np.asarray(p, dtype=float)
    if p.shape != (d + 2,):
        raise ValueError(f"expected d + 2 = {d + 2} weights, got shape {p.shape}")
    return check_probability_vector(p)


def gen_pauli_channel_hw(p, d: int, chi: str = DEFAULT_CHI) -> SandwichMap:
    """p_0 id + 1/(d-1) sum_alpha p_alpha U_alpha with U_alpha = sum over family alpha of Q X Q."""
    p = _check_channel_input(p, d)
    m = identity_map(d).scaled(p[0])
    for alpha, family in enumerate(commuting_subsets(d), start=1):
        m = m + family_map(family, d, chi).scaled(p[alpha] / (d - 1))
    return m


def gen_pauli_channel_mub(p, d: int, chi: str = DEFAULT_CHI) -> SandwichMap:
    """p_0 id + 1/(d-1) sum_alpha p_alpha (d Phi_alpha - id), Phi_alpha the pinching onto basis alpha."""
    p = _check_channel_input(p, d)
    eye = np.eye(d, dtype=complex)
    terms = [(float(p[0]), eye, eye)]
    for basis in bases_for_channel(d, chi):
        pa = p[basis.label] / (d - 1)
        for proj in projector_set(basis).projectors:
            terms.append((d * pa, proj, proj))
        terms.append((-pa, eye, eye))
    return SandwichMap(d, tuple(terms))


def mub_family_map(alpha: int, d: int, chi: str = DEFAULT_CHI) -> SandwichMap:
    """d Phi_alpha - id built from the projectors of basis alpha."""
    basis = bases_for_channel(d, chi)[alpha - 1]
    eye = np.eye(d, dtype=complex)
    terms = [(float(d), proj, proj) for proj in projector_set(basis).projectors]
    terms.append((-1.0, eye, eye))
    return SandwichMap(d, tuple(terms))


def refined_pairs(d: int) -> list[list[tuple[int, int]]]:
    """For each family gamma, the representatives (i, alpha i) of its (d-1)/2 negation pairs."""
    _check_dim(d)
    if d % 2 == 0 or not is_prime(d):
        raise ValueError(f"refined map requires an odd prime d, got {d}")
    half = (d - 1) // 2
    return [family[:half] for family in commuting_subsets(d)]


def refined_submap(gamma: int, i: int, d: int, chi: str = DEFAULT_CHI) -> SandwichMap:
    """U_gamma^i: the pair map of the i-th negation pair in family gamma (both 1-based)."""
    k, l = refined_pairs(d)[gamma - 1][i - 1]
    return pair_map(k, l, d, chi)


def refined_map(p0: float, pair_weights, d: int, chi: str = DEFAULT_CHI) -> SandwichMap:
    """p_0 id + 1/(d-1) sum_gamma sum_i p_gamma^i U_gamma^i.

    ``pair_weights`` has shape (d + 1, (d - 1)/2), rows ordered like the
    commuting families (alpha = 1..d-1, then (n, 0), then (0, n)).
    """
    pairs = refined_pairs(d)
    w = np.asarray(pair_weights, dtype=float)
    expected = (d + 1, (d - 1) // 2)
    if w.shape != expected:
        if w.size == expected[0] * expected[1]:
            w = w.reshape(expected)
        else:
            raise ValueError(f"expected {expected[0] * expected[1]} pair weights, got {w.size}")
    m = identity_map(d).scaled(float(p0))
    for g, reps in enumerate(pairs):
        for i, (k, l) in enumerate(reps):
            m = m + pair_map(k, l, d, chi).scaled(w[g, i] / (d - 1))
    return m


# -- weight files -----------------------------------------------------------


class WeightFileError(ValueError):
    pass


def parse_weight_document(doc) -> tuple[int, str, np.ndarray]:
    """Validate ``{"d": int, "chi": "+"|"-", "weights": [[k, l, value], ...]}``.

    Missing indices default to 0; ``chi`` is optional and defaults to '+'.
    """
    if not isinstance(doc, dict):
        raise WeightFileError("top level must be a JSON object")
    if "d" not in doc:
        raise WeightFileError("missing field 'd'")
    d = doc["d"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 2:
        raise WeightFileError(f"field 'd' must be an integer >= 2, got {d!r}")
    chi = doc.get("chi", DEFAULT_CHI)
    try:
        chi_value(chi)
    except (ValueError, TypeError):
        raise WeightFileError(f"field 'chi' must be '+' or '-', got {chi!r}") from None
    entries = doc.get("weights", [])
    if not isinstance(entries, list):
        raise WeightFileError("field 'weights' must be a list of [k, l, value] triples")
    w = np.zeros((d, d))
    seen = set()
    for n, entry in enumerate(entries):
        where = f"weights[{n}]"
        if not isinstance(entry, list) or len(entry) != 3:
            raise WeightFileError(f"{where}: expected [k, l, value], got {entry!r}")
        k, l, value = entry
        for name, v in (("k", k), ("l", l)):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < d:
                raise WeightFileError(f"{where}: {name} must be an integer in [0, {d}), got {v!r}")
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not np.isfinite(value):
            raise WeightFileError(f"{where}: value must be a finite number, got {value!r}")
        if (k, l) in seen:
            raise WeightFileError(f"{where}: duplicate index ({k}, {l})")
        seen.add((k, l))
        w[k, l] = float(value)
    return d, chi, w


def load_weight_file(path) -> tuple[int, str, np.ndarray]:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WeightFileError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_weight_document(doc)


def weight_document(w: np.ndarray, chi: str = DEFAULT_CHI) -> dict:
    d = w.shape[0]
    return {
        "d": d,
        "chi": chi,
        "weights": [[k, l, float(w[k, l])] for k, l in all_indices(d) if w[k, l] != 0],
    }
