"""Monte Carlo checks of the metric statements: variance of R2 over random
dilations, the exceptional-measure bound, and the dimension formula.

Alphas are drawn as B-bit fixed-point values from the counter-based
generator, one stream index per sample, so estimates are reproducible and
independent of evaluation order and thread count.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import exp, fsum, log, sqrt

import numpy as np

from pairlab import rng
from pairlab.arith import DEFAULT_BITS, Alpha
from pairlab.energy import EnergyReport, autocorrelation
from pairlab.errors import ValidationError
from pairlab.paircorr import sweep_count
from pairlab.parallel import pmap
from pairlab.reports import BoundCheckReport
from pairlab.seqgen import Sequence, SequenceSpec, generate, spec_label


@dataclass(frozen=True)
class VarianceEstimate:
    spec: str
    n: int
    s: Fraction
    samples: int
    seed: int
    bits: int
    mean: float
    variance: float
    stderr: float

    @property
    def target_mean(self) -> float:
        return float(2 * (self.n - 1) * self.s / self.n)

    def payload(self) -> dict:
        return {"spec": self.spec, "N": self.n, "s": str(self.s),
                "samples": self.samples, "seed": self.seed, "bits": self.bits,
                "mean": self.mean, "variance": self.variance,
                "stderr": self.stderr, "target_mean": self.target_mean}


@dataclass(frozen=True)
class DimensionBound:
    d: int
    epsilon: float
    bound: float


def variance_estimate(spec: SequenceSpec, n: int, s, samples: int, seed: int,
                      bits: int = DEFAULT_BITS, threads: int = 1) -> VarianceEstimate:
    """Mean/variance of R2 over i.i.d. fixed-point alphas.

    Per-sample counts are exact integers; the float aggregation happens in
    sample-index order regardless of threads.
    """
    if samples < 1:
        raise ValidationError(f"samples must be >= 1, got {samples}")
    s = Fraction(s)
    seq = generate(spec, n)
    if 2 * s > n:
        raise ValidationError(f"need 2s <= N; got s={s}, N={n}")
    values = list(seq.values)

    def one(i: int) -> int:
        alpha = Alpha.fixed_point(rng.uniform_bits("mc-alpha", seed, i, bits), bits)
        nums = [(a * alpha.num) % alpha.den for a in values]
        return sweep_count(nums, alpha.den, s)

    counts = pmap(one, range(samples), threads)
    vals = [c / n for c in counts]
    mean = fsum(vals) / samples
    if samples > 1:
        variance = fsum((v - mean) ** 2 for v in vals) / (samples - 1)
    else:
        variance = 0.0
    stderr = sqrt(variance / samples)
    return VarianceEstimate(spec_label(spec), n, s, samples, seed, bits,
                            mean, variance, stderr)


def lemma3_exp_term(n: int, kappa_hat: float) -> float:
    """exp(kappa_hat * sqrt(log N * logloglog N)/sqrt(loglog N)); N >= 20."""
    if n < 20:
        raise ValidationError(f"iterated logs need N >= 20, got {n}")
    ln = log(n)
    lln = log(ln)
    llln = log(lln)
    return exp(kappa_hat * sqrt(ln * llln) / sqrt(lln))


def variance_bound_check(est: VarianceEstimate, energy: EnergyReport,
                         kappa_hat: float,
                         max_ratio: float = float("inf")) -> BoundCheckReport:
    """Estimated variance vs E(A_N) N^-3 exp-term at kappa_hat."""
    rhs = energy.e / est.n ** 3 * lemma3_exp_term(est.n, kappa_hat)
    return BoundCheckReport("variance-bound", est.variance, rhs, max_ratio,
                            details={"N": est.n, "E": energy.e,
                                     "kappa_hat": kappa_hat, "mean": est.mean})


def dimension_bound(d: int, epsilon: float) -> DimensionBound:
    """(d+3-eps)/(d+3), the exceptional-set dimension bound."""
    if d < 1:
        raise ValidationError(f"d must be >= 1, got {d}")
    if not 0 < epsilon <= d + 3:
        raise ValidationError(f"epsilon must lie in (0, d+3], got {epsilon}")
    return DimensionBound(d, float(epsilon), (d + 3 - epsilon) / (d + 3))


def measure_check(b_values, epsilon, samples: int, seed: int) -> BoundCheckReport:
    """Estimate mes{alpha : ||k*alpha|| < eps/|B-B| for some difference k}
    against the bound 2*eps.

    b_values may contain any distinct integers (the statistic is shift
    invariant); |B-B| comes from the autocorrelation support. Alphas are
    64-bit fixed point, compared by exact wraparound arithmetic.
    """
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise ValidationError(f"epsilon must lie in (0,1), got {eps}")
    if samples < 1:
        raise ValidationError("samples must be >= 1")
    raw = [int(v) for v in b_values]
    vals = sorted(set(raw))
    if len(vals) != len(raw):
        raise ValidationError("B must have distinct values")
    if len(vals) < 2:
        raise ValidationError("B needs at least 2 values")
    shift = 1 - vals[0] if vals[0] < 1 else 0
    prof = autocorrelation([v + shift for v in vals])
    ks = sorted(prof.counts.keys())
    size_bb = 2 * len(ks) + 1                       # |B - B|, 0 included
    delta = eps / size_bb
    thr = (delta.numerator << 64) // delta.denominator   # ||.|| < delta
    ks_arr = np.array(ks, dtype=np.uint64)
    hits = 0
    chunk = max(1, 4_000_000 // max(len(ks), 1))
    for lo in range(0, samples, chunk):
        cnt = min(chunk, samples - lo)
        alphas = np.empty(cnt, dtype=np.uint64)
        for i in range(cnt):
            alphas[i] = rng.uniform_bits("measure-alpha", seed, lo + i, 64)
        prod = alphas[:, None] * ks_arr[None, :]         # wraps mod 2^64
        dist = np.minimum(prod, np.uint64(0) - prod)
        hits += int(np.count_nonzero(np.any(dist < np.uint64(thr), axis=1)))
    lhs = hits / samples
    stderr = sqrt(max(lhs * (1 - lhs), 1e-300) / samples)
    rhs = float(2 * eps)
    allowance = (rhs + 3 * stderr) / rhs
    return BoundCheckReport("measure", lhs, rhs, max_ratio=allowance,
                            details={"stderr": stderr, "samples": samples,
                                     "size_bb": size_bb, "hits": hits,
                                     "threshold": str(delta)})
