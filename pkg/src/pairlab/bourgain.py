"""Random-set construction with flat autocorrelation and its R2 blow-up.

Sets A ⊂ {KN+1 .. 2KN} draw each element independently with probability
1/K. The checks mirror the three lemma properties (autocorrelation ceiling
2N/K, floor N/(2K) on the initial range, size in [N/2, 2N]), the energy
ceiling 8N^3/K, and the blow-up of R2 at rational dilations p/q with
q < N/K, where every multiple of q lands exactly on 0. R2 is computed
both directly and through the autocorrelation-sum identity
count = sum_{k != 0} d(k) * [||k alpha|| <= s/|A|]; the two must agree
exactly, and that agreement is asserted everywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from pairlab import rng
from pairlab.arith import Alpha
from pairlab.energy import AutocorrelationProfile, EnergyReport, autocorrelation, energy
from pairlab.errors import ValidationError
from pairlab.paircorr import sweep_count
from pairlab.reports import BoundCheckReport
from pairlab.seqgen import Explicit, Sequence

MAX_RESAMPLES = 64


@dataclass(frozen=True)
class RandomSetParams:
    n: int
    k: int
    seed: int

    def __post_init__(self):
        if self.k < 2:
            raise ValidationError(f"K must be >= 2, got {self.k}")
        if self.n < self.k:
            raise ValidationError(f"N must be >= K, got N={self.n}, K={self.k}")


@dataclass(frozen=True)
class LemmaSixReport:
    size: int
    max_auto: int
    min_auto_in_range: int
    pass_i: bool
    pass_ii: bool
    pass_iii: bool

    @property
    def all_pass(self) -> bool:
        return self.pass_i and self.pass_ii and self.pass_iii

    def payload(self) -> dict:
        return {"size": self.size, "max_auto": self.max_auto,
                "min_auto_in_range": self.min_auto_in_range,
                "pass_i": self.pass_i, "pass_ii": self.pass_ii,
                "pass_iii": self.pass_iii, "all_pass": self.all_pass}


@dataclass(frozen=True)
class BlowupReport:
    alpha_text: str
    p: int
    q: int
    count: int
    size: int
    threshold: Fraction              # K/20
    passed: bool
    identity_ok: bool

    @property
    def value(self) -> float:
        return self.count / self.size

    def payload(self) -> dict:
        return {"alpha": self.alpha_text, "p": self.p, "q": self.q,
                "count": self.count, "size": self.size, "value": self.value,
                "threshold": float(self.threshold), "passed": self.passed,
                "identity_ok": self.identity_ok}


def sample_set(params: RandomSetParams) -> tuple[Sequence, int]:
    """Draw the random set; returns (sequence, resamples used).

    Inclusion uses a shared u64 lane per slot with threshold 2^64 // K
    (exactly 1/K for dyadic K). An empty draw advances a recorded
    sub-seed; the draw itself never depends on evaluation order.
    """
    kn = params.k * params.n
    thr = np.uint64((1 << 64) // params.k)
    for attempt in range(MAX_RESAMPLES):
        lanes = rng.u64_array("bourgain-set", params.seed, attempt, kn)
        picks = np.flatnonzero(lanes < thr)
        if len(picks) >= 2:
            values = tuple(int(i) + kn + 1 for i in picks)
            return Sequence(values, Explicit(values)), attempt
    raise ValidationError(f"empty draw {MAX_RESAMPLES} times for {params}")


def lemma6_check(a: Sequence, params: RandomSetParams,
                 profile: AutocorrelationProfile | None = None) -> LemmaSixReport:
    """Exact threshold checks: (i) d(k) <= 2N/K for k != 0,
    (ii) d(k) > N/(2K) for 0 < |k| < KN/10, (iii) N/2 <= |A| <= 2N."""
    n, k = params.n, params.k
    prof = autocorrelation(a) if profile is None else profile
    size = a.n
    max_auto = prof.max_shifted()
    min_auto = size
    j = 1
    while 10 * j < k * n:
        d = prof.counts.get(j, 0)
        if d < min_auto:
            min_auto = d
        j += 1
    pass_i = max_auto * k <= 2 * n
    pass_ii = min_auto * 2 * k > n
    pass_iii = 2 * size >= n and size <= 2 * n
    return LemmaSixReport(size, max_auto, min_auto, pass_i, pass_ii, pass_iii)


def energy_bound_check(a: Sequence, params: RandomSetParams) -> BoundCheckReport:
    """E(A) against 8N^3/K, the ceiling implied by the flat profile."""
    rep: EnergyReport = energy(a)
    rhs = 8 * params.n ** 3 / params.k
    return BoundCheckReport("bourgain-energy", float(rep.e), rhs,
                            details={"E": rep.e, "N": params.n, "K": params.k})


def r2_both_counts(values: list[int], alpha: Alpha, s=1,
                   profile: AutocorrelationProfile | None = None) -> tuple[int, int]:
    """Ordered pair count by the direct sweep and by the autocorrelation
    identity; exact integers, must coincide."""
    s = Fraction(s)
    size = len(values)
    if 2 * s > size:
        raise ValidationError(f"need 2s <= |A|; got s={s}, |A|={size}")
    num, den = alpha.num, alpha.den
    nums = [(v * num) % den for v in values]
    direct = sweep_count(nums, den, s)
    prof = autocorrelation(values) if profile is None else profile
    thr_a = s.denominator * size
    thr_b = s.numerator * den
    total = 0
    for k, d in prof.counts.items():
        m = (k * num) % den
        if min(m, den - m) * thr_a <= thr_b:
            total += 2 * d
    return direct, total


def blowup_experiment(a: Sequence, params: RandomSetParams, q: int, p: int,
                      interval_sample: bool = False,
                      profile: AutocorrelationProfile | None = None) -> BlowupReport:
    """R2 at s=1 under alpha = p/q (or a point inside the resonant interval
    |alpha - p/q| < 1/(K^2 N^2) when interval_sample is set); pass iff the
    value reaches K/20."""
    if q < 1:
        raise ValidationError(f"q must be positive, got {q}")
    if q * params.k >= params.n:
        raise ValidationError(f"need q < N/K; got q={q}, N/K={params.n / params.k}")
    p %= max(q, 1)
    if gcd(p, q) != 1:
        raise ValidationError(f"p/q must be reduced, got {p}/{q}")
    if interval_sample:
        bits = 192
        base = (p << bits) // q
        radius = (1 << bits) // (params.k ** 2 * params.n ** 2)
        u = rng.uniform_bits(f"blowup-interval:{p}/{q}", params.seed, 0, bits)
        offset = u % (2 * radius + 1) - radius
        alpha = Alpha.fixed_point((base + offset) % (1 << bits), bits,
                                  source=f"{p}/{q}~interval")
    else:
        alpha = Alpha.rational(p, q)
    direct, via_profile = r2_both_counts(list(a.values), alpha, 1, profile)
    threshold = Fraction(params.k, 20)
    passed = direct * threshold.denominator >= threshold.numerator * a.n
    return BlowupReport(alpha.source, p, q, direct, a.n, threshold, passed,
                        identity_ok=direct == via_profile)


def sample_blowup_pq(params: RandomSetParams, j: int) -> tuple[int, int]:
    """Deterministic (p, q) draw for campaigns: q <= floor(N/(2K)) keeps the
    multiples-of-q count high enough for the K/20 threshold."""
    qmax = max(2, params.n // (2 * params.k))
    q = 2
    if qmax > 2:
        q += rng.uniform_bits("campaign-q", params.seed, j, 64) % (qmax - 1)
    for i in range(256):
        p = 1
        if q > 2:
            p += rng.uniform_bits("campaign-p", params.seed, j * 256 + i, 64) % (q - 1)
        if gcd(p, q) == 1:
            return p, q
    return 1, q


CAMPAIGN_COLUMNS = ["j", "N", "K", "seed", "size", "max_auto", "min_auto",
                    "E", "E_bound", "alpha", "R2", "threshold", "pass"]


def run_campaign(schedule: list[tuple[int, int]], seeds: list[int]):
    """One row per (schedule entry, seed); returns (rows, summary)."""
    rows = []
    lemma_passes = 0
    energy_passes = 0
    blowup_passes = 0
    for j, (n, k) in enumerate(schedule):
        for seed in seeds:
            params = RandomSetParams(n, k, seed)
            a, _ = sample_set(params)
            prof = autocorrelation(a)
            lemma = lemma6_check(a, params, prof)
            ebound = energy_bound_check(a, params)
            p, q = sample_blowup_pq(params, j)
            blow = blowup_experiment(a, params, q, p, profile=prof)
            if not blow.identity_ok:
                raise AssertionError("autocorrelation-sum identity failed")
            lemma_passes += lemma.all_pass
            energy_passes += ebound.passed
            blowup_passes += blow.passed
            rows.append({"j": j, "N": n, "K": k, "seed": seed,
                         "size": a.n, "max_auto": lemma.max_auto,
                         "min_auto": lemma.min_auto_in_range,
                         "E": ebound.details["E"], "E_bound": ebound.rhs,
                         "alpha": f"{p}/{q}", "R2": blow.value,
                         "threshold": float(blow.threshold),
                         "pass": blow.passed})
    total = max(len(rows), 1)
    summary = {"rows": len(rows),
               "lemma_pass_fraction": lemma_passes / total,
               "energy_pass_fraction": energy_passes / total,
               "blowup_fraction": blowup_passes / total}
    return rows, summary
