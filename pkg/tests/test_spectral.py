import numpy as np
import pytest

from hwmaps import spectral
from hwmaps.linalg import char_poly


@pytest.mark.parametrize("d", range(2, 9))
def test_power_identity_sign_pattern(d):
    for k in range(d):
        for l in range(d):
            assert spectral.verify_power_lemma(k, l, d) < 1e-10
            expected = (-1) ** (k * l) if d % 2 == 0 else 1
            assert abs(spectral.power_lemma_scalar(k, l, d) - expected) < 1e-10


def test_sign_uses_reduced_product():
    # 2 * 2 = 4 = 1 mod 3, so the sign is -1 although the raw product is even
    assert spectral.sign(2, 2, 3) == -1
    assert spectral.sign(1, 1, 3) == -1
    assert spectral.sign(1, 2, 3) == 1


@pytest.mark.parametrize("d", [2, 3, 5, 7])
def test_displacement_char_poly_prime(d):
    assert spectral.verify_displacement_isospectral(d) < 1e-9


@pytest.mark.parametrize("d", [4, 6])
def test_displacement_char_poly_fails_for_composite(d):
    assert spectral.verify_displacement_isospectral(d) > 0.5


@pytest.mark.parametrize("d", [2, 3, 5, 7])
@pytest.mark.parametrize("chi", ["+", "-"])
def test_observables_isospectral_prime(d, chi):
    assert spectral.verify_Q_isospectral(d, chi) < 1e-9


@pytest.mark.parametrize("d", [2, 3, 5, 7])
def test_family_sums_isospectral(d):
    assert spectral.verify_sum_isospectral(d) < 1e-9
    assert spectral.verify_sum_isospectral_all_indices(d) < 1e-9


@pytest.mark.parametrize("d", [5, 7])
def test_common_sign_reading_is_not_isospectral(d):
    assert spectral.verify_sum_isospectral(d, per_term_sign=False) > 1.0


def test_family_sum_needs_prime():
    with pytest.raises(ValueError):
        spectral.verify_sum_isospectral(6)


def test_roots_of_unity_poly():
    p = spectral.roots_of_unity_poly(4)
    np.testing.assert_array_equal(p, [1, 0, 0, 0, -1])
    assert np.allclose(char_poly(np.diag(np.exp(2j * np.pi * np.arange(4) / 4))), p)


@pytest.mark.parametrize("d", [3, 5])
def test_binomial_envelope_for_displacements(d):
    for k in range(d):
        for l in range(d):
            assert spectral.binomial_envelope_defect(spectral.signed_displacement(k, l, d)) < 1e-9
