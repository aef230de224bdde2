import itertools

import numpy as np
import pytest

from hwmaps import hwops
from hwmaps.linalg import max_abs

DIMS = [2, 3, 4, 5, 6, 7]


@pytest.mark.parametrize("d", DIMS)
def test_shift_and_phase_act_on_basis(d):
    x, z = hwops.shift_op(d), hwops.phase_op(d)
    omega = np.exp(2j * np.pi / d)
    for r in range(d):
        e = np.zeros(d)
        e[r] = 1
        assert max_abs(x @ e - np.roll(e, 1)) == 0
        assert abs((z @ e)[r] - omega**r) < 1e-15
    assert max_abs(z @ x - omega * x @ z) < 1e-14


@pytest.mark.parametrize("d", DIMS)
def test_weyl_and_displacement_definitions(d):
    x, z = hwops.shift_op(d), hwops.phase_op(d)
    for k, l in hwops.all_indices(d):
        xl, zk = np.linalg.matrix_power(x, l), np.linalg.matrix_power(z, k)
        assert max_abs(hwops.weyl_op(k, l, d) - xl @ zk) < 1e-13
        phase = np.exp(-1j * np.pi * ((k * l) % d) / d)
        assert max_abs(hwops.displacement_op(k, l, d) - phase * zk @ xl) < 1e-13


@pytest.mark.parametrize("d", DIMS)
@pytest.mark.parametrize("chi", ["+", "-"])
def test_observables_hermitian_and_orthogonal(d, chi):
    for k, l in hwops.all_indices(d):
        q = hwops.observable(k, l, d, chi)
        assert max_abs(q - q.conj().T) == 0
    assert max_abs(hwops.gram_matrix(d, chi) - d * np.eye(d * d)) < 1e-12


@pytest.mark.parametrize("d", DIMS)
def test_identity_observable_and_index_reduction(d):
    assert max_abs(hwops.observable(0, 0, d) - np.eye(d)) < 1e-15
    assert max_abs(hwops.observable(d + 1, -1, d) - hwops.observable(1, d - 1, d)) == 0


def test_displacement_adjoint_is_negated_index():
    for d in DIMS:
        for k, l in hwops.all_indices(d):
            dk = hwops.displacement_op(k, l, d)
            assert max_abs(dk.conj().T - hwops.displacement_op(-k, -l, d)) < 1e-13


@pytest.mark.parametrize("d", DIMS)
def test_square_pair_and_family_identities(d):
    for k, l in hwops.all_indices(d):
        assert hwops.verify_square_pair(k, l, d) < 1e-12
    for k, l in hwops.all_indices(d, include_identity=False):
        assert hwops.verify_sum_of_squares(k, l, d) < 1e-12
        assert hwops.verify_family_commutation(k, l, d) < 1e-12


def test_sum_of_squares_rejects_identity_index():
    with pytest.raises(ValueError):
        hwops.verify_sum_of_squares(0, 0, 3)


@pytest.mark.parametrize("d", [2, 3, 5, 7])
def test_commuting_partition(d):
    fams = hwops.commuting_subsets(d)
    assert len(fams) == d + 1
    assert sorted(i for f in fams for i in f) == hwops.all_indices(d, include_identity=False)
    for fam in fams:
        for a, b in itertools.combinations(fam, 2):
            assert hwops.commutator_norm(hwops.observable(*a, d), hwops.observable(*b, d)) < 1e-12


def test_commuting_partition_requires_prime():
    with pytest.raises(ValueError, match="prime"):
        hwops.commuting_subsets(4)


def test_distinct_families_do_not_commute():
    d = 5
    fams = hwops.commuting_subsets(d)
    q1, q2 = hwops.observable(*fams[0][0], d), hwops.observable(*fams[1][0], d)
    assert hwops.commutator_norm(q1, q2) > 1e-3


def test_bad_dimension_and_chi():
    with pytest.raises(ValueError):
        hwops.shift_op(1)
    with pytest.raises(ValueError):
        hwops.observable(1, 1, 3, "x")


def test_cached_operators_are_read_only():
    q = hwops.observable(1, 2, 5)
    with pytest.raises(ValueError):
        q[0, 0] = 0


def test_weyl_index_helpers():
    idx = hwops.WeylIndex.of(4, -1, 3)
    assert idx == (1, 2, 3)
    assert idx.neg() == (2, 1, 3)
    assert idx.scaled(2) == (2, 1, 3)
    obs = hwops.hw_observable(idx)
    assert max_abs(obs.matrix - hwops.observable(1, 2, 3)) == 0
