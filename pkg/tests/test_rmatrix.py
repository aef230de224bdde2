import numpy as np
import pytest

from hwmaps import maps, rmatrix
from hwmaps.config import SplitMix64
from hwmaps.linalg import max_abs


def symmetric_weights(rng, d, unital=True):
    w = rng.normal(d * d).reshape(d, d) * 0.2
    neg = (-np.arange(d)) % d
    w = (w + w[neg][:, neg]) / 2
    if unital:
        w[0, 0] = 1 - (w.sum() - w[0, 0])
    return w


@pytest.mark.parametrize("d", [2, 3, 4])
def test_r_matrix_round_trip(d, rng):
    m = maps.hw_map(rng.normal(d * d), d)
    r, dec = rmatrix.r_matrix(m)
    assert max_abs(dec.assemble() - r) == 0
    b = np.array([maps.vec(g) for g in rmatrix.hw_basis(d)]).T
    assert max_abs(b @ r @ b.conj().T - maps.superoperator(m)) < 1e-12


def test_identity_map_has_identity_r():
    r, _ = rmatrix.r_matrix(maps.identity_map(3))
    assert max_abs(r - np.eye(9)) < 1e-14


def test_non_hermiticity_preserving_map_rejected():
    a = np.diag([1, 1j, 1])
    with pytest.raises(ValueError, match="Hermiticity"):
        rmatrix.r_matrix(maps.SandwichMap(3, ((1.0, a, np.eye(3)),)))


@pytest.mark.parametrize("d", [2, 3, 5])
def test_block_characterization_matches_direct_checks(d):
    rng = SplitMix64(d)
    for i in range(12):
        w = symmetric_weights(rng, d, unital=i % 2 == 0) if i % 3 else rng.normal(d * d)
        m = maps.hw_map(w, d)
        _, dec = rmatrix.r_matrix(m)
        rmatrix.unital_tp_characterize(dec, d, d, 1e-10, check_against=m)


def test_unital_means_first_column_vanishes(rng):
    w = symmetric_weights(rng, 3)
    w[0, 1] += 0.1  # break symmetry so the map is neither unital nor TP
    _, dec = rmatrix.r_matrix(maps.hw_map(w, 3))
    assert np.linalg.norm(dec.t) > 1e-3 and np.linalg.norm(dec.s) > 1e-3
    _, dec = rmatrix.r_matrix(maps.hw_map(symmetric_weights(rng, 3), 3))
    assert np.linalg.norm(dec.t) < 1e-12 and abs(dec.R00 - 1) < 1e-12


@pytest.mark.parametrize("d", [3, 5, 7])
def test_symmetric_weights_give_diagonal_r(d, rng):
    off, dev = rmatrix.diagonal_r_check(symmetric_weights(rng, d, unital=False), d)
    assert off < 1e-10 and dev < 1e-10


def test_diagonal_r_preconditions(rng):
    with pytest.raises(ValueError, match="odd"):
        rmatrix.diagonal_r_check(np.eye(4), 4)
    with pytest.raises(ValueError, match="symmetric"):
        rmatrix.diagonal_r_check(rng.normal(9), 3)


def test_eigenvalue_formula_residuals():
    for d in (2, 3, 4):
        for k, l, m, n in np.ndindex(d, d, d, d):
            assert rmatrix.eigenvalue_residual(k, l, m, n, d) < 1e-12


def test_gate_on_positive_and_inconclusive_maps(rng):
    _, dec = rmatrix.r_matrix(maps.identity_map(3))
    gate = rmatrix.positivity_sufficient(dec, 3, 3)
    assert gate.lhs > gate.rhs and not gate.holds  # identity is positive but outside the ball
    _, dec = rmatrix.r_matrix(maps.weyl_channel(np.full(9, 1 / 9), 3))
    gate = rmatrix.positivity_sufficient(dec, 3, 3)
    assert gate.holds and gate.lhs < 1e-12


class TestCaseStudyD3:
    def test_reduction_map(self):
        assert rmatrix.reduction_deviation() < 1e-12
        assert rmatrix.reduction_deviation("-") < 1e-12
        rep = rmatrix.d3_case_study(rmatrix.reduction_weights())
        assert rep.unital and not rep.cp
        assert abs(rep.min_choi_eigenvalue + 1) < 1e-12
        assert abs(rep.gate.lhs - 1) < 1e-12 and abs(rep.gate.rhs - 1) < 1e-12
        assert rep.gate.holds
        assert max_abs(rep.delta_diagonal + 0.5) < 1e-12
        assert rep.two_positive is True

    def test_delta_pairing(self, rng):
        for _ in range(10):
            q = rng.uniform(-0.05, 0.25, size=4)
            w = np.zeros(9)
            for (a, b), v in zip(rmatrix.NEGATION_PAIRS_D3, q):
                w[a] = w[b] = v
            w[0] = 1 - 2 * q.sum()
            rep = rmatrix.d3_case_study(w)
            assert rep.unital and rep.unital_conditions
            assert rep.delta_offdiagonal < 1e-12 and rep.lambda_deviation < 1e-12
            assert rep.cp == rep.cp_conditions

    def test_unital_conditions_detect_asymmetry(self):
        w = np.zeros(9)
        w[0], w[1] = 1.0, 0.1
        rep = rmatrix.d3_case_study(w)
        assert not rep.unital and not rep.unital_conditions and rep.lambdas is None
        assert rep.two_positive is None

    def test_json_keys_in_order(self):
        keys = list(rmatrix.d3_case_study(rmatrix.reduction_weights()).to_json())
        assert keys[:6] == ["weights", "unital", "cp", "delta_diagonal", "gate", "two_positive"]

    def test_wrong_length(self):
        with pytest.raises(ValueError, match="9 weights"):
            rmatrix.d3_case_study(np.zeros(8))
