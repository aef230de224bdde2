"""Verification suites run by ``hwmaps verify``.

Each suite returns ``Record`` objects. ``status`` is one of ``pass``, ``fail``,
``skipped`` (precondition on d not met) or ``info`` (measured and reported,
not asserted). Sampled checks draw from a SplitMix64 stream seeded from the
run seed, the claim id and d, so a record does not depend on which other
suites ran.
"""

from __future__ import annotations

import itertools
import zlib
from dataclasses import dataclass, field

import numpy as np

from . import hwops, maps, mub, rmatrix, spectral
from .config import SplitMix64
from .linalg import is_unitary_defect, max_abs


@dataclass
class SuiteConfig:
    dimensions: list[int]
    tolerance: float
    chi: str = "+"
    seed: int = 0
    samples: int = 10

    def __post_init__(self):
        if not self.dimensions:
            raise ValueError("at least one dimension is required")
        for d in self.dimensions:
            if not isinstance(d, int) or d < 2:
                raise ValueError(f"dimensions must be integers >= 2, got {d!r}")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.chi not in ("+", "-"):
            raise ValueError("chi must be '+' or '-'")


@dataclass
class Record:
    suite: str
    claim: str
    anchor: str
    d: int
    deviation: float | None
    tolerance: float
    status: str
    note: str = field(default="")

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "claim": self.claim,
            "anchor": self.anchor,
            "d": self.d,
            "deviation": self.deviation,
            "tolerance": self.tolerance,
            "status": self.status,
        }
        if self.note:
            out["note"] = self.note
        return out


def rng_for(seed: int, claim: str, d: int) -> SplitMix64:
    mixed = SplitMix64((seed ^ (zlib.crc32(claim.encode()) << 16) ^ (d << 48)) & ((1 << 64) - 1))
    return SplitMix64(mixed.next_u64())


class _Builder:
    def __init__(self, suite: str, d: int, cfg: SuiteConfig):
        self.suite, self.d, self.cfg = suite, d, cfg
        self.records: list[Record] = []

    def check(self, claim: str, anchor: str, deviation: float, tolerance: float | None = None):
        tol = self.cfg.tolerance if tolerance is None else tolerance
        status = "pass" if deviation <= tol else "fail"
        self.records.append(Record(self.suite, claim, anchor, self.d, float(deviation), tol, status))

    def flag(self, claim: str, anchor: str, ok: bool, note: str = ""):
        self.records.append(
            Record(self.suite, claim, anchor, self.d, None, self.cfg.tolerance, "pass" if ok else "fail", note)
        )

    def info(self, claim: str, anchor: str, deviation: float, note: str = ""):
        self.records.append(Record(self.suite, claim, anchor, self.d, float(deviation), self.cfg.tolerance, "info", note))

    def skip(self, claim: str, anchor: str, reason: str):
        self.records.append(Record(self.suite, claim, anchor, self.d, None, self.cfg.tolerance, "skipped", reason))

    def rng(self, claim: str) -> SplitMix64:
        return rng_for(self.cfg.seed, claim, self.d)


def _odd_prime(d: int) -> bool:
    return d % 2 == 1 and hwops.is_prime(d)


def _random_symmetric_weights(rng: SplitMix64, d: int, unital: bool = True) -> np.ndarray:
    w = np.zeros((d, d))
    for k, l in hwops.all_indices(d, include_identity=False):
        nk, nl = (-k) % d, (-l) % d
        if (nk, nl) < (k, l):
            w[k, l] = w[nk, nl]
        else:
            w[k, l] = rng.uniform(-0.2, 0.3)
    w[0, 0] = 1.0 - (w.sum() - w[0, 0]) if unital else rng.uniform(-1, 1)
    return w


def identity_suite(d: int, cfg: SuiteConfig) -> list[Record]:
    b = _Builder("identities", d, cfg)
    chi = cfg.chi
    idx = hwops.all_indices(d)
    b.check("weyl_unitary", "W_{k,l} unitary", max(is_unitary_defect(hwops.weyl_op(k, l, d)) for k, l in idx))
    b.check("displacement_unitary", "D_{k,l} unitary",
            max(is_unitary_defect(hwops.displacement_op(k, l, d)) for k, l in idx))
    b.check("displacement_adjoint", "D_{k,l}^dagger = D_{-k,-l}",
            max(max_abs(hwops.displacement_op(k, l, d).conj().T - hwops.displacement_op(-k, -l, d)) for k, l in idx))
    omega = np.exp(2j * np.pi / d)
    b.check("weyl_product", "W_{k,l} W_{r,s} = omega^{ks} W_{k+r,l+s}", max(
        max_abs(hwops.weyl_op(k, l, d) @ hwops.weyl_op(r, s, d) - omega ** (k * s) * hwops.weyl_op(k + r, l + s, d))
        for (k, l), (r, s) in itertools.product(idx, idx)))
    b.check("weyl_adjoint", "W_{k,l}^dagger = omega^{kl} W_{-k,-l}", max(
        max_abs(hwops.weyl_op(k, l, d).conj().T - omega ** (k * l) * hwops.weyl_op(-k, -l, d)) for k, l in idx))
    b.check("observable_hermitian", "Q_{k,l} Hermitian (both chi)", max(
        max_abs(q - q.conj().T) for c in "+-" for q in (hwops.observable(k, l, d, c) for k, l in idx)))
    b.check("observable_orthogonality", "Tr(Q_a Q_b) = d delta_ab",
            max_abs(hwops.gram_matrix(d, chi) - d * np.eye(d * d)))
    b.check("square_pair", "Q_{k,l}^2 + Q_{-k,-l}^2 = 2I",
            max(hwops.verify_square_pair(k, l, d, chi) for k, l in idx))
    b.check("sum_of_squares", "sum_n Q_{nk,nl}^2 = (d-1)I",
            max(hwops.verify_sum_of_squares(k, l, d, chi) for k, l in hwops.all_indices(d, False)))
    b.check("family_commutation", "[Q_{n1 k,n1 l}, Q_{n2 k,n2 l}] = 0",
            max(hwops.verify_family_commutation(k, l, d, chi) for k, l in hwops.all_indices(d, False)))
    if hwops.is_prime(d):
        fams = hwops.commuting_subsets(d)
        cover = sorted(i for f in fams for i in f) == hwops.all_indices(d, False)
        b.flag("commuting_partition", "d+1 commuting families of size d-1",
               cover and len(fams) == d + 1 and all(len(f) == d - 1 for f in fams))
    else:
        b.skip("commuting_partition", "d+1 commuting families of size d-1", "requires prime d")

    rng = b.rng("unitality_sufficient")
    worst = 0.0
    for _ in range(cfg.samples):
        w = _random_symmetric_weights(rng, d)
        assert maps.unitality_sufficient(w, d)
        worst = max(worst, maps.is_unital(maps.hw_map(w, d, chi)))
    b.check("unitality_sufficient", "symmetric weights with p00 = 1 - sum => unital", worst)

    rng = b.rng("identity_image_sum")
    worst = 0.0
    for _ in range(cfg.samples):
        w = rng.normal(d * d).reshape(d, d)
        m = maps.hw_map(w, d, chi)
        worst = max(worst, max_abs(maps.apply(m, np.eye(d)) - w.sum() * np.eye(d)))
    if d == 4:
        b.check("identity_image_sum", "d=4: Lambda(I) = (sum p) I", worst)
    else:
        b.info("identity_image_sum", "d=4: Lambda(I) = (sum p) I", worst, "measured outside d=4, not asserted")
    return b.records


def spectral_suite(d: int, cfg: SuiteConfig) -> list[Record]:
    b = _Builder("spectral", d, cfg)
    chi = cfg.chi
    b.check("power_identity", "(Z^k X^l)^d = (-1)^{kl} I (d even), I (d odd)",
            max(spectral.verify_power_lemma(k, l, d) for k, l in hwops.all_indices(d)))
    dev_d = spectral.verify_displacement_isospectral(d)
    dev_q = spectral.verify_Q_isospectral(d, chi)
    if hwops.is_prime(d):
        b.check("displacement_isospectral", "char poly of (-1)^{kl} D_{k,l} = z^d - 1", dev_d)
        b.check("observable_isospectral", "(-1)^{kl} Q_{k,l} isospectral", dev_q)
        b.check("family_sum_isospectral", "family sums of (-1)^{kl} Q isospectral",
                spectral.verify_sum_isospectral(d, chi))
        b.info("family_sum_isospectral_common_sign", "family sums, one sign per family",
               spectral.verify_sum_isospectral(d, chi, per_term_sign=False),
               "sign (-1)^{kl} of the generator applied to every summand")
        b.info("family_sum_isospectral_all_generators", "family sums, every generator",
               spectral.verify_sum_isospectral_all_indices(d, chi))
    else:
        note = "composite d: Weyl spectra degenerate, reported only"
        b.info("displacement_isospectral", "char poly of (-1)^{kl} D_{k,l} = z^d - 1", dev_d, note)
        b.info("observable_isospectral", "(-1)^{kl} Q_{k,l} isospectral", dev_q, note)
        b.skip("family_sum_isospectral", "family sums of (-1)^{kl} Q isospectral", "requires prime d")
    return b.records


def mub_suite(d: int, cfg: SuiteConfig) -> list[Record]:
    b = _Builder("mub", d, cfg)
    claims = [
        ("mub_unbiased", "|<eta_r^a|eta_s^b>|^2 = 1/d"),
        ("mub_orthonormal", "each basis orthonormal"),
        ("projector_completeness", "sum_r P_r^a = I"),
        ("family_diagonalization", "basis a diagonalizes its commuting family"),
        ("complementarity", "Phi_a(Phi_b(s)) = Tr(s) I/d"),
    ]
    if not _odd_prime(d):
        for claim, anchor in claims:
            b.skip(claim, anchor, "requires odd prime d")
        return b.records
    bases = mub.mub_bases(d, cfg.chi)
    b.check("mub_unbiased", claims[0][1], mub.unbiasedness_deviation(bases))
    b.check("mub_orthonormal", claims[1][1], max(mub.orthonormality_deviation(x) for x in bases))
    b.check("projector_completeness", claims[2][1],
            max(mub.completeness_deviation(mub.projector_set(x)) for x in bases))
    b.check("family_diagonalization", claims[3][1],
            max(mub.family_diagonalization_deviation(x, cfg.chi) for x in bases))
    b.check("complementarity", claims[4][1], max(
        mub.verify_complementarity(a, c, d, cfg.chi)
        for a in range(1, d + 2) for c in range(a + 1, d + 2)))
    return b.records


def channel_suite(d: int, cfg: SuiteConfig) -> list[Record]:
    b = _Builder("channels", d, cfg)
    chi = cfg.chi
    rng = b.rng("weyl_channel_cptp")
    worst_cp = worst_tp = 0.0
    for _ in range(min(cfg.samples, 3)):
        ch = maps.weyl_channel(rng.probability_vector(d * d), d)
        worst_cp = max(worst_cp, -maps.min_choi_eigenvalue(ch))
        worst_tp = max(worst_tp, maps.is_trace_preserving(ch))
    b.check("weyl_channel_cp", "Weyl channel completely positive (-min Choi eigenvalue)", max(worst_cp, 0.0))
    b.check("weyl_channel_tp", "Weyl channel trace preserving", worst_tp)

    if not hwops.is_prime(d):
        for claim in ("gen_pauli_equivalence", "gen_pauli_cp", "gen_pauli_tp"):
            b.skip(claim, "generalized Pauli channel", "requires prime d")
    else:
        rng = b.rng("gen_pauli_equivalence")
        dist = 0.0
        for _ in range(cfg.samples):
            p = rng.probability_vector(d + 2)
            dist = max(dist, maps.map_distance(maps.gen_pauli_channel_hw(p, d, chi),
                                               maps.gen_pauli_channel_mub(p, d, chi)))
        b.check("gen_pauli_equivalence", "H.W. and MUB generalized Pauli channels coincide", dist)
        p = b.rng("gen_pauli_cptp").probability_vector(d + 2)
        ch = maps.gen_pauli_channel_hw(p, d, chi)
        b.check("gen_pauli_cp", "generalized Pauli channel completely positive",
                max(-maps.min_choi_eigenvalue(ch), 0.0))
        b.check("gen_pauli_tp", "generalized Pauli channel trace preserving", maps.is_trace_preserving(ch))

    if not _odd_prime(d):
        for claim in ("refined_special_case", "refined_pair_commute"):
            b.skip(claim, "refined pair-weighted map", "requires odd prime d")
        return b.records
    rng = b.rng("refined_special_case")
    p = rng.probability_vector(d + 2)
    pair_w = np.repeat(p[1:, None], (d - 1) // 2, axis=1)
    b.check("refined_special_case", "equal pair weights reproduce the generalized Pauli channel",
            maps.map_distance(maps.refined_map(p[0], pair_w, d, chi), maps.gen_pauli_channel_hw(p, d, chi)))
    worst = 0.0
    for g in range(1, d + 2):
        subs = [maps.superoperator(maps.refined_submap(g, i, d, chi)) for i in range(1, (d - 1) // 2 + 1)]
        for s1, s2 in itertools.combinations(subs, 2):
            worst = max(worst, max_abs(s1 @ s2 - s2 @ s1))
    b.check("refined_pair_commute", "U_g^m U_g^n = U_g^n U_g^m", worst)
    return b.records


def eigen_suite(d: int, cfg: SuiteConfig) -> list[Record]:
    b = _Builder("pair_maps", d, cfg)
    chi = cfg.chi
    b.check("eigenvalue_formula", "pair map eigenvalue 2cos(2pi(kn-lm)/d) on Q_{m,n}", max(
        rmatrix.eigenvalue_residual(k, l, m, n, d, chi) for k, l, m, n in itertools.product(range(d), repeat=4)))
    sups = [maps.superoperator(maps.pair_map(k, l, d, chi)) for k, l in hwops.all_indices(d)]
    worst = 0.0
    for i, s1 in enumerate(sups):
        for s2 in sups[i + 1:]:
            worst = max(worst, max_abs(s1 @ s2 - s2 @ s1))
    b.check("pair_maps_commute", "Psi_1 Psi_2 = Psi_2 Psi_1", worst)
    if d % 2 == 1:
        rng = b.rng("diagonal_r")
        off = dev = 0.0
        for _ in range(cfg.samples):
            o, v = rmatrix.diagonal_r_check(_random_symmetric_weights(rng, d, unital=False), d, chi)
            off, dev = max(off, o), max(dev, v)
        b.check("diagonal_r", "symmetric weights give a diagonal R matrix", off)
        b.check("diagonal_r_entries", "R diagonal = p00 + sum p lambda", dev)
    else:
        b.skip("diagonal_r", "symmetric weights give a diagonal R matrix", "requires odd d")
        b.skip("diagonal_r_entries", "R diagonal = p00 + sum p lambda", "requires odd d")
    rng = b.rng("r_block_characterization")
    ok = True
    for _ in range(cfg.samples):
        unital = rng.random() < 0.5
        w = _random_symmetric_weights(rng, d, unital=unital) if rng.random() < 0.5 else rng.normal(d * d).reshape(d, d)
        m = maps.hw_map(w, d, chi)
        _, dec = rmatrix.r_matrix(m, chi)
        try:
            rmatrix.unital_tp_characterize(dec, d, d, cfg.tolerance, check_against=m)
        except AssertionError:
            ok = False
    b.flag("r_block_characterization", "unital iff t=0, R00=1; TP iff s=0, R00=1", ok)
    return b.records


CASE_STUDY_SAMPLES = 200


def case_study_suite(d: int, cfg: SuiteConfig) -> list[Record]:
    b = _Builder("case_study_d3", d, cfg)
    if d != 3:
        return []
    chi = cfg.chi
    b.check("reduction_map", "p0=-1/3, p_i=1/6 gives (Tr(X) I - X)/2", rmatrix.reduction_deviation(chi))
    rep = rmatrix.d3_case_study(rmatrix.reduction_weights(), chi, cfg.tolerance)
    b.check("reduction_gate_boundary", "reduction map gate lhs = rhs = 1",
            max(abs(rep.gate.lhs - 1), abs(rep.gate.rhs - 1)))
    b.flag("reduction_not_cp", "reduction map is positive but not CP", rep.unital and not rep.cp and rep.gate.holds)

    rng = b.rng("d3_iff_sample")
    disagree_unital = disagree_cp = 0
    lam_dev = 0.0
    two_pos_ok = True
    for i in range(CASE_STUDY_SAMPLES):
        w = case_study_sample(rng, i)
        rep = rmatrix.d3_case_study(w, chi, cfg.tolerance)
        disagree_unital += rep.unital != rep.unital_conditions
        disagree_cp += rep.cp != rep.cp_conditions
        if rep.lambdas is not None:
            lam_dev = max(lam_dev, rep.lambda_deviation, rep.delta_offdiagonal)
        if rep.two_positive is False:
            two_pos_ok = False
    b.check("d3_unital_iff", "unital iff p1=p2, p3=p6, p4=p8, p5=p7, p0=1-2(...)", disagree_unital, 0.0)
    b.check("d3_cp_iff", "CP iff p0, p1, p3, p4, p5 >= 0", disagree_cp, 0.0)
    b.check("d3_delta_diagonal", "Delta = diag(lambda^(i)) each twice", lam_dev)
    b.flag("d3_two_positive", "at least two of p1, p3, p4, p5 positive", two_pos_ok)
    return b.records


def case_study_sample(rng: SplitMix64, i: int) -> np.ndarray:
    """Signed d = 3 weights: unital symmetric, symmetric with a wrong p0, or asymmetric."""
    kind = i % 4
    q = rng.uniform(-0.05, 0.25, size=4)  # p1, p3, p4, p5
    w = np.zeros(9)
    for (a, b_), v in zip(rmatrix.NEGATION_PAIRS_D3, q):
        w[a] = w[b_] = v
    w[0] = 1 - 2 * q.sum()
    if kind == 2:
        w[0] += rng.uniform(0.01, 0.2) * (1 if rng.random() < 0.5 else -1)
    elif kind == 3:
        j = rmatrix.NEGATION_PAIRS_D3[int(rng.random() * 4)][1]
        w[j] += rng.uniform(0.01, 0.2)
    return w


SUITES = [
    ("identities", identity_suite),
    ("spectral", spectral_suite),
    ("mub", mub_suite),
    ("channels", channel_suite),
    ("pair_maps", eigen_suite),
    ("case_study_d3", case_study_suite),
]


def run_verify(cfg: SuiteConfig) -> dict:
    records: list[Record] = []
    for name, suite in SUITES:
        for d in cfg.dimensions:
            records.extend(suite(d, cfg))
    counts = {s: sum(r.status == s for r in records) for s in ("pass", "fail", "skipped", "info")}
    return {
        "suite": "verify",
        "config": {
            "dimensions": list(cfg.dimensions),
            "tolerance": cfg.tolerance,
            "chi": cfg.chi,
            "seed": cfg.seed,
            "samples": cfg.samples,
        },
        "records": [r.to_json() for r in records],
        "summary": {"total": len(records), "passed": counts["pass"], "failed": counts["fail"],
                    "skipped": counts["skipped"], "info": counts["info"]},
    }
