"""Additive energy, autocorrelation profiles, and related counters.

E(A) counts quadruples a+b = c+d, realized through differences: with
d(k) = |A ∩ (A+k)| one has E = sum_k d(k)^2, and the same profile serves
as the representation count r(n,A) = d(n) for n != 0. Three algorithms
produce identical integers: a counting map over differences ("hash"), FFT
squaring of the indicator with an integer-deviation guard ("convolution"),
and the quadruple-loop definition ("oracle", small N only).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, log2

import numpy as np

from pairlab import kernels
from pairlab.errors import ValidationError
from pairlab.reports import BoundCheckReport
from pairlab.seqgen import Sequence

AUTOCORR_N_CAP = 200_000       # quadratic-path guard
ORACLE_N_CAP = 64              # N^4 oracle guard
CONV_SPAN_CAP = 1 << 26        # FFT length guard
DENSE_SPAN_CAP = 1 << 24       # dense count-array guard
PAIRS_CAP = 350_000_000        # sorted-diff buffer guard
_INT64_MAX = (1 << 63) - 1


@dataclass(frozen=True)
class AutocorrelationProfile:
    """d(k) for k > 0 with d(k) > 0; d(0) = n, d(-k) = d(k)."""
    n: int
    counts: dict[int, int]

    def d(self, k: int) -> int:
        if k == 0:
            return self.n
        return self.counts.get(abs(k), 0)

    def max_shifted(self) -> int:
        """max over k != 0 of d(k); 0 for a singleton."""
        return max(self.counts.values(), default=0)

    def energy(self) -> int:
        return self.n * self.n + 2 * sum(c * c for c in self.counts.values())

    def total(self) -> int:
        """sum_k d(k) over all k; equals n^2."""
        return self.n + 2 * sum(self.counts.values())


@dataclass(frozen=True)
class EnergyReport:
    n: int
    e: int
    algorithm: str

    def payload(self) -> dict:
        return {"N": self.n, "E": self.e, "algorithm": self.algorithm}


@dataclass(frozen=True)
class ExponentFit:
    points: tuple[tuple[int, int], ...]    # (N, E)
    slope: float
    intercept: float
    residual: float                        # max |log2 E - fit|


def _values(a) -> list[int]:
    vals = list(a.values) if isinstance(a, Sequence) else sorted(a)
    if len(set(vals)) != len(vals):
        raise ValidationError("values must be distinct")
    if any(v < 1 for v in vals):
        raise ValidationError("values must be positive")
    return vals


def autocorrelation(a, cap: int = AUTOCORR_N_CAP) -> AutocorrelationProfile:
    """Exact difference profile via a counting map over the N(N-1)/2 pairs."""
    vals = _values(a)
    n = len(vals)
    if n > cap:
        raise ValidationError(f"N={n} exceeds the quadratic-path cap {cap}")
    span = vals[-1] - vals[0] if n else 0
    if n >= 2 and span <= DENSE_SPAN_CAP and vals[-1] <= _INT64_MAX:
        arr = kernels.diff_counts_dense(np.array(vals, dtype=np.int64), span)
        nz = np.flatnonzero(arr[1:])
        counts = {int(k) + 1: int(arr[k + 1]) for k in nz}
        return AutocorrelationProfile(n, counts)
    counts: dict[int, int] = {}
    for i in range(n):
        vi = vals[i]
        for j in range(i + 1, n):
            k = vals[j] - vi
            counts[k] = counts.get(k, 0) + 1
    return AutocorrelationProfile(n, counts)


def _energy_hash(vals: list[int]) -> int:
    n = len(vals)
    span = vals[-1] - vals[0]
    if vals[-1] <= _INT64_MAX:
        arr = np.array(vals, dtype=np.int64)
        if span <= DENSE_SPAN_CAP:
            counts = kernels.diff_counts_dense(arr, span)[1:]
            return n * n + 2 * int(np.dot(counts, counts))
        return int(kernels.energy_from_diffs(arr, PAIRS_CAP))
    counts: dict[int, int] = {}
    for i in range(n):
        vi = vals[i]
        for j in range(i + 1, n):
            k = vals[j] - vi
            counts[k] = counts.get(k, 0) + 1
    return n * n + 2 * sum(c * c for c in counts.values())


def _energy_convolution(vals: list[int]) -> int:
    n = len(vals)
    span = vals[-1] - vals[0]
    if span > CONV_SPAN_CAP:
        raise ValidationError(
            f"span {span} exceeds 2^26; use the hash algorithm for sparse sets")
    ind = np.zeros(span + 1, dtype=np.float64)
    ind[[v - vals[0] for v in vals]] = 1.0
    length = 1 << (2 * span + 1).bit_length()
    spec = np.fft.rfft(ind, length)
    ac = np.fft.irfft(spec * np.conj(spec), length)[:span + 1]
    rounded = np.rint(ac)
    dev = float(np.max(np.abs(ac - rounded)))
    if dev > 0.3:
        raise ValidationError(f"FFT deviation {dev:.3f} from integers; use hash")
    d = rounded.astype(np.int64)
    assert d[0] == n
    return n * n + 2 * int(np.dot(d[1:], d[1:]))


def _energy_oracle(vals: list[int]) -> int:
    """Quadruple definition: count (a,b,c,d) in A^4 with a+b = c+d."""
    n = len(vals)
    if n > ORACLE_N_CAP:
        raise ValidationError(f"oracle path capped at N={ORACLE_N_CAP}")
    members = set(vals)
    count = 0
    for a in vals:
        for b in vals:
            ab = a + b
            for c in vals:
                if ab - c in members:
                    count += 1
    return count


def energy(a, algorithm: str = "auto") -> EnergyReport:
    """Additive energy; algorithm in {auto, hash, convolution, oracle}."""
    vals = _values(a)
    n = len(vals)
    if n == 0:
        raise ValidationError("energy needs a nonempty set")
    if n == 1:
        return EnergyReport(1, 1, "hash" if algorithm in ("auto", "hash") else algorithm)
    span = vals[-1] - vals[0]
    if algorithm == "auto":
        small_span = span <= CONV_SPAN_CAP and vals[-1] <= _INT64_MAX
        algorithm = "convolution" if small_span and span < n * n // 8 else "hash"
    if algorithm == "hash":
        e = _energy_hash(vals)
    elif algorithm == "convolution":
        e = _energy_convolution(vals)
    elif algorithm == "oracle":
        e = _energy_oracle(vals)
    else:
        raise ValidationError(f"unknown energy algorithm {algorithm!r}")
    return EnergyReport(n, e, algorithm)


def energy_scan(spec, n_list: list[int], algorithm: str = "auto",
                generate_fn=None) -> ExponentFit:
    """Energies at dyadic N plus a least-squares slope of log2 E vs log2 N."""
    from pairlab.seqgen import generate
    if generate_fn is None:
        generate_fn = generate
    if len(n_list) < 4:
        raise ValidationError("energy_scan needs at least 4 dyadic sizes")
    for n in n_list:
        if n < 2 or n & (n - 1):
            raise ValidationError(f"scan sizes must be dyadic, got {n}")
    if sorted(n_list) != list(n_list):
        raise ValidationError("scan sizes must be increasing")
    points = []
    for n in n_list:
        seq = generate_fn(spec, n)
        points.append((n, energy(seq, algorithm).e))
    return fit_exponent(points)


def fit_exponent(points: list[tuple[int, int]]) -> ExponentFit:
    xs = np.array([log2(n) for n, _ in points])
    ys = np.array([log2(e) for _, e in points])
    slope, intercept = np.polyfit(xs, ys, 1)
    residual = float(np.max(np.abs(ys - (slope * xs + intercept))))
    return ExponentFit(tuple(points), float(slope), float(intercept), residual)


def representation_count(a, n: int) -> int:
    """r(n,A) = ordered pairs with difference n; n = 0 rejected."""
    if n == 0:
        raise ValidationError("representation_count needs n != 0 (use |A|)")
    vals = _values(a)
    target = abs(n)
    members = set(vals)
    return sum(1 for v in vals if v + target in members)


def energy_upper_bound_check(a) -> BoundCheckReport:
    """E(A) <= |A|^2 * max_n r(n,A), max over all n (r(0) = |A|).

    The nonzero-max variant is reported alongside; it carries no pass flag
    since it genuinely fails for Sidon-like sets.
    """
    vals = _values(a)
    n = len(vals)
    prof = autocorrelation(vals)
    e = prof.energy()
    max_all = max(n, prof.max_shifted())
    max_nonzero = prof.max_shifted()
    details = {"max_r_all": max_all, "max_r_nonzero": max_nonzero,
               "rhs_nonzero": n * n * max_nonzero}
    return BoundCheckReport("energy-upper", float(e), float(n * n * max_all),
                            max_ratio=1.0, details=details)


def divisor_count(n: int) -> int:
    if n < 1:
        raise ValidationError(f"divisor_count needs n >= 1, got {n}")
    count = 0
    r = isqrt(n)
    for d in range(1, r + 1):
        if n % d == 0:
            count += 2
    if r * r == n:
        count -= 1
    return count


def rz_solution_count(a, m: int, cap: int = 200_000) -> int:
    """Count tuples (n1,n2,x1,y1,x2,y2) with n1(a(x1)-a(y1)) = n2(a(x2)-a(y2)),
    1 <= |ni| <= M, xi != yi, via a counting map over products n*(a(x)-a(y))."""
    vals = _values(a)
    n = len(vals)
    if m < 1:
        raise ValidationError(f"M must be >= 1, got {m}")
    if n * m > cap:
        raise ValidationError(f"N*M = {n * m} exceeds cap {cap}")
    tuples = 2 * m * n * (n - 1)
    if tuples > 50_000_000:
        raise ValidationError(f"{tuples} (n,x,y) tuples exceed the work cap")
    products: dict[int, int] = {}
    diffs = []
    for i in range(n):
        for j in range(n):
            if i != j:
                diffs.append(vals[i] - vals[j])
    for coef in range(1, m + 1):
        for d in diffs:
            for p in (coef * d, -coef * d):
                products[p] = products.get(p, 0) + 1
    # each product entry is one (n, x, y) half-tuple; pairs of equal products
    # are exactly the solutions
    return sum(c * c for c in products.values())
