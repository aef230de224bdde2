"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v`` (the lines are
printed with capture disabled) or as ``python tests/test_acceptance.py``.
"""

import itertools
import json
import subprocess
import sys
import time

import numpy as np

from hwmaps import hwops, maps, mub, rmatrix, spectral
from hwmaps.config import SplitMix64
from hwmaps.linalg import max_abs
from hwmaps.suites import case_study_sample

SEED = 20240611


def report(capsys, number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    assert ok, line


def test_criterion_1_algebraic_identities(capsys):
    start = time.perf_counter()
    worst = 0.0
    for d in (2, 3, 4, 5, 7):
        for chi in ("+", "-"):
            for k, l in hwops.all_indices(d):
                worst = max(worst, hwops.verify_square_pair(k, l, d, chi))
            for k, l in hwops.all_indices(d, include_identity=False):
                worst = max(worst, hwops.verify_sum_of_squares(k, l, d, chi))
    elapsed = time.perf_counter() - start
    report(capsys, 1, "square-pair and sum-of-squares identities, d in {2,3,4,5,7}",
           worst <= 1e-10 and elapsed < 5.0, f"max dev {worst:.2e} <= 1e-10, {elapsed:.2f} s < 5 s")


def test_criterion_2_spectral(capsys):
    sign_ok = True
    power_dev = 0.0
    for d in range(2, 9):
        for k, l in itertools.product(range(d), repeat=2):
            power_dev = max(power_dev, spectral.verify_power_lemma(k, l, d))
            expected = (-1) ** (k * l) if d % 2 == 0 else 1
            sign_ok &= round(spectral.power_lemma_scalar(k, l, d).real) == expected
    primes = (2, 3, 5, 7)
    poly_dev = max(spectral.verify_displacement_isospectral(d) for d in primes)
    iso_dev = max(spectral.verify_Q_isospectral(d, chi) for d in primes for chi in "+-")
    sum_dev = max(spectral.verify_sum_isospectral(d, chi) for d in (3, 5) for chi in "+-")
    ok = sign_ok and power_dev <= 1e-10 and poly_dev <= 1e-9 and iso_dev <= 1e-9 and sum_dev <= 1e-9
    report(capsys, 2, "power sign pattern d=2..8, D char poly, Q isospectrality, family sums",
           ok, f"signs exact={sign_ok}, power {power_dev:.1e}, char poly {poly_dev:.1e}, "
               f"Q {iso_dev:.1e}, family sums {sum_dev:.1e}; tol 1e-9")


def test_criterion_3_commutation(capsys):
    fam_dev = pair_dev = 0.0
    for d in (2, 3, 4, 5):
        for k, l in hwops.all_indices(d, include_identity=False):
            fam_dev = max(fam_dev, hwops.verify_family_commutation(k, l, d))
        sups = [maps.superoperator(maps.pair_map(k, l, d)) for k, l in hwops.all_indices(d)]
        for s1, s2 in itertools.combinations(sups, 2):
            pair_dev = max(pair_dev, max_abs(s1 @ s2 - s2 @ s1))
    report(capsys, 3, "within-family commutators and pair-map commutativity, d in {2,3,4,5}",
           fam_dev <= 1e-10 and pair_dev <= 1e-10, f"family {fam_dev:.1e}, pair maps {pair_dev:.1e}; tol 1e-10")


def test_criterion_4_mub(capsys):
    unb = comp = 0.0
    for d in (3, 5, 7):
        unb = max(unb, mub.unbiasedness_deviation(mub.mub_bases(d)))
        for a, b in itertools.combinations(range(1, d + 2), 2):
            comp = max(comp, mub.verify_complementarity(a, b, d))
    report(capsys, 4, "MUB overlaps 1/d and pinching complementarity, d in {3,5,7}",
           unb <= 1e-10 and comp <= 1e-10, f"overlap {unb:.1e}, complementarity {comp:.1e}; tol 1e-10")


def test_criterion_5_channel_equivalence(capsys):
    worst = 0.0
    for d in (3, 5):
        rng = SplitMix64(SEED + d)
        for _ in range(50):
            p = rng.probability_vector(d + 2)
            worst = max(worst, maps.map_distance(maps.gen_pauli_channel_hw(p, d), maps.gen_pauli_channel_mub(p, d)))
    report(capsys, 5, "MUB-projector vs H.W.-observable generalized Pauli channel, 50 vectors, d in {3,5}",
           worst <= 1e-9, f"max superoperator distance {worst:.1e} <= 1e-9")


def test_criterion_6_eigenvalue_formula(capsys):
    worst = 0.0
    for d in (3, 5, 7):
        for k, l, m, n in itertools.product(range(d), repeat=4):
            worst = max(worst, rmatrix.eigenvalue_residual(k, l, m, n, d))
    report(capsys, 6, "pair-map eigenvalue 2cos(2pi(kn-lm)/d) over all d^4 tuples, d in {3,5,7}",
           worst <= 1e-10, f"max residual {worst:.1e} <= 1e-10")


def test_criterion_7_case_study_d3(capsys):
    rng = SplitMix64(SEED)
    unital_disagree = cp_disagree = 0
    delta_dev = 0.0
    kinds = {"unital": 0, "non-unital": 0}
    hypotheses_met = 0
    implication_ok = True
    for i in range(200):
        rep = rmatrix.d3_case_study(case_study_sample(rng, i))
        kinds["unital" if rep.unital else "non-unital"] += 1
        unital_disagree += rep.unital != rep.unital_conditions
        cp_disagree += rep.cp != rep.cp_conditions
        if rep.lambdas is not None:
            delta_dev = max(delta_dev, rep.delta_offdiagonal, rep.lambda_deviation)
        if rep.two_positive is not None:
            hypotheses_met += 1
            implication_ok &= rep.two_positive
    red_dev = rmatrix.reduction_deviation()
    red = rmatrix.d3_case_study(rmatrix.reduction_weights())
    gate_dev = max(abs(red.gate.lhs - 1), abs(red.gate.rhs - 1))
    ok = (
        unital_disagree == 0
        and cp_disagree == 0
        and delta_dev <= 1e-12
        and red_dev <= 1e-12
        and gate_dev <= 1e-12
        and hypotheses_met > 0
        and implication_ok
    )
    report(capsys, 7, "d=3 case study (a) unital iff (b) CP iff (c) Delta (d) reduction map (e) two-positive",
           ok, f"(a) {unital_disagree} and (b) {cp_disagree} disagreements over 200 samples "
               f"({kinds['unital']} unital); (c) {delta_dev:.1e}; (d) map {red_dev:.1e}, "
               f"gate |lhs-1|,|rhs-1| {gate_dev:.1e}; (e) {hypotheses_met} instances, all hold={implication_ok}")


def test_criterion_8_identity_image_d4(capsys):
    rng = SplitMix64(SEED + 4)
    worst = 0.0
    for _ in range(50):
        w = rng.normal(16)
        worst = max(worst, max_abs(maps.hw_map(w, 4)(np.eye(4)) - w.sum() * np.eye(4)))
    report(capsys, 8, "d=4: Lambda(I) = (sum p) I on 50 weight vectors", worst <= 1e-10,
           f"max dev {worst:.1e} <= 1e-10")


def test_criterion_9_full_verify(capsys):
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "hwmaps.cli", "verify", "--dims", "2,3,4,5,7"],
        capture_output=True, text=True,
    )
    elapsed = time.perf_counter() - start
    summary = json.loads(proc.stdout)["summary"] if proc.stdout else {}
    report(capsys, 9, "full verify over d in {2,3,4,5,7}", proc.returncode == 0 and elapsed < 60,
           f"exit {proc.returncode}, {elapsed:.1f} s < 60 s, summary {summary}")


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn(None)
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
