"""Fourier coefficients of the interval indicator and GCD-sum bounds.

c_n = sin(2*pi*n*s/N)/(pi*n) with c_0 = 2s/N, the quadratic form
sum b_k b_l gcd(m_k,m_l)/sqrt(m_k m_l), and verifiers for the coefficient
pair sums over the solution set n1*v = n2*w. This is the one module whose
outputs are floating point: the quantities are inequality diagnostics, not
exact combinatorics. Parameterization used throughout: n1 = h*w/g,
n2 = h*v/g for g = gcd(v,w), h over nonzero integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import exp, gcd, log, pi, sqrt

import numpy as np
from scipy.special import polygamma

from pairlab import kernels
from pairlab.errors import ValidationError
from pairlab.reports import BoundCheckReport

H_CAP = 1 << 31                    # series-length safety cap


@dataclass(frozen=True)
class FourierCoefficients:
    s: Fraction
    n: int

    def __post_init__(self):
        if self.s <= 0:
            raise ValidationError(f"s must be positive, got {self.s}")
        if self.n < 1:
            raise ValidationError(f"N must be >= 1, got {self.n}")

    @property
    def c0(self) -> float:
        return float(2 * self.s / self.n)

    @property
    def theta(self) -> float:
        """2*pi*s/N, the sine argument per unit n."""
        return 2.0 * pi * float(self.s) / self.n


def make_fc(s, n: int) -> FourierCoefficients:
    return FourierCoefficients(Fraction(s), n)


def coefficient(fc: FourierCoefficients, n: int) -> float:
    """c_n at extended precision (the argument can be a large multiple)."""
    if n == 0:
        return fc.c0
    x = np.longdouble(2) * np.longdouble(np.pi) * np.longdouble(fc.s.numerator) * n \
        / (np.longdouble(fc.s.denominator) * fc.n)
    return float(np.sin(x) / (np.longdouble(np.pi) * n))


def coefficient_bound(fc: FourierCoefficients, n: int) -> float:
    """min(2s/N, 1/|n|), the envelope every c_n obeys."""
    if n == 0:
        return fc.c0
    return min(fc.c0, 1.0 / abs(n))


@dataclass(frozen=True)
class GcdSumInput:
    ms: tuple[int, ...]
    bs: tuple[float, ...]


def make_gcd_input(ms, bs) -> GcdSumInput:
    ms = tuple(int(m) for m in ms)
    bs = tuple(float(b) for b in bs)
    if len(ms) != len(bs):
        raise ValidationError("m and b must have equal length")
    if any(m < 1 for m in ms):
        raise ValidationError("m entries must be positive")
    if len(set(ms)) != len(ms):
        raise ValidationError("duplicate m entries rejected")
    if sum(b * b for b in bs) > 1.0 + 1e-12:
        raise ValidationError("coefficient norm must satisfy sum b^2 <= 1")
    return GcdSumInput(ms, bs)


def gcd_sum(inp: GcdSumInput) -> float:
    m = np.array(inp.ms, dtype=np.int64)
    b = np.array(inp.bs, dtype=np.float64)
    g = np.gcd.outer(m, m).astype(np.float64)
    denom = np.sqrt(np.outer(m.astype(np.float64), m.astype(np.float64)))
    return float(b @ (g / denom) @ b)


def lemma_exp_term(m: int, kappa: float) -> float:
    """exp(kappa * sqrt(log M * logloglog M) / sqrt(loglog M)); needs M >= 20."""
    if m < 20:
        raise ValidationError(f"iterated logs need M >= 20, got {m}")
    lm = log(m)
    llm = log(lm)
    lllm = log(llm)
    return exp(kappa * sqrt(lm * lllm) / sqrt(llm))


def gcd_sum_bound_check(inp: GcdSumInput, kappa: float,
                        max_ratio: float = float("inf")) -> BoundCheckReport:
    lhs = gcd_sum(inp)
    rhs = lemma_exp_term(len(inp.ms), kappa)
    return BoundCheckReport("gcd-sum", lhs, rhs, max_ratio,
                            details={"M": len(inp.ms), "kappa": kappa})


# ---- coefficient pair sums over n1*v = n2*w ----

def _reduced(v: int, w: int) -> tuple[int, int, int]:
    if v == 0 or w == 0:
        raise ValidationError("v and w must be nonzero")
    g = gcd(abs(v), abs(w))
    return g, abs(v) // g, abs(w) // g


def _all_terms_vanish(fc: FourierCoefficients, ap: int, bp: int) -> bool:
    # sin(2*pi*s*ap*h/N) is identically zero when 2*s*ap/N is an integer
    return (2 * fc.s * ap / fc.n).denominator == 1 or \
           (2 * fc.s * bp / fc.n).denominator == 1


def coefficient_pair_sum(v: int, w: int, fc: FourierCoefficients,
                         n_range: str = "all", m: int = 0,
                         rel_tol: float = 1e-15) -> float:
    """Sum of |c_{n1} c_{n2}| over nonzero solutions of n1*v = n2*w.

    n_range "all" truncates the h-series once the per-term envelope
    g^2/(h^2 |vw|) drops below rel_tol times the accumulated sum; for
    |v| = |w| the remaining smooth tail is added exactly via the trigamma
    function, leaving only an oscillatory remainder below ~1e-12.
    n_range "dyadic" restricts to (2^m - 1) N < |n1|,|n2| <= (2^{m+1}-1) N,
    a finite window summed exactly.
    """
    g, ap, bp = _reduced(v, w)
    if n_range not in ("all", "dyadic"):
        raise ValidationError(f"unknown n_range {n_range!r}")
    if _all_terms_vanish(fc, ap, bp):
        return 0.0
    theta = fc.theta
    scale = 2.0 / (pi * pi * ap * bp)      # both signs of h
    if n_range == "dyadic":
        if m < 0:
            raise ValidationError("dyadic window index must be >= 0")
        lo1, hi1 = _window(fc.n, m, bp)
        lo2, hi2 = _window(fc.n, m, ap)
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo > hi:
            return 0.0
        return scale * kernels.abs_cc_partial(theta, ap, bp, lo, hi + 1)
    if ap == 1 and bp == 1:
        # terms are sin^2(h theta)/(pi^2 h^2); after a partial sum to T the
        # smooth tail 2*sum_{h>T} (1/2)/(pi^2 h^2) is exactly psi'(T+1)/pi^2
        # and the oscillatory remainder is Abel-bounded by the sine of theta
        t = 1 << 21
        acc = kernels.abs_cc_partial(theta, 1, 1, 1, t + 1)
        sin_t = abs(np.sin(theta))
        while t < (1 << 27):
            osc = 2.0 / (pi * pi * max(sin_t, 1e-300) * float(t) ** 2)
            if osc <= 1e-12 * max(scale * acc, 1e-12):
                break
            acc += kernels.abs_cc_partial(theta, 1, 1, t + 1, 2 * t + 1)
            t *= 2
        return scale * acc + float(polygamma(1, t + 1)) / (pi * pi)
    acc = 0.0
    h = 1
    chunk = 1 << 16
    while True:
        acc += kernels.abs_cc_partial(theta, ap, bp, h, h + chunk)
        h += chunk
        chunk = min(2 * chunk, 1 << 22)
        # per-term envelope at the next h, in final units, vs accumulated
        if 2.0 / (pi * pi * ap * bp * float(h) ** 2) < rel_tol * scale * acc:
            break
        if h > H_CAP:
            raise ValidationError("pair-sum series exceeded the length cap")
    return scale * acc


def _window(n: int, m: int, factor: int) -> tuple[int, int]:
    lo = ((1 << m) - 1) * n // factor + 1
    hi = ((1 << (m + 1)) - 1) * n // factor
    return lo, hi


def pair_sum_oracle(v: int, w: int, fc: FourierCoefficients, n1_cap: int) -> float:
    """Brute-force double loop over |n1| <= cap (test oracle)."""
    g, ap, bp = _reduced(v, w)
    total = 0.0
    for n1 in range(1, n1_cap + 1):
        # n1 = h * w/g requires bp | n1
        if n1 % bp:
            continue
        h = n1 // bp
        n2 = h * ap
        total += 2 * abs(coefficient(fc, n1) * coefficient(fc, n2))
    return total


def cnto_gcd_check(v: int, w: int, fc: FourierCoefficients,
                   max_ratio: float = float("inf"),
                   rel_tol: float = 1e-15) -> BoundCheckReport:
    """Pair sum vs (log N)(s/N) gcd(v,w)/sqrt|vw| (implied constant 1)."""
    if fc.n < 3:
        raise ValidationError("cnto_gcd_check needs N >= 3")
    g, _, _ = _reduced(v, w)
    lhs = coefficient_pair_sum(v, w, fc, rel_tol=rel_tol)
    rhs = log(fc.n) * float(fc.s) / fc.n * g / sqrt(abs(v) * abs(w))
    return BoundCheckReport("cnto-gcd", lhs, rhs, max_ratio,
                            details={"v": v, "w": w, "N": fc.n, "s": str(fc.s)})


def cnto_gcd_dyadic_check(v: int, w: int, fc: FourierCoefficients, m: int,
                          max_ratio: float = float("inf")) -> BoundCheckReport:
    """Dyadic-window pair sum vs 2^{-m} gcd(v,w)/sqrt|vw|."""
    if fc.n < 3:
        raise ValidationError("cnto_gcd_dyadic_check needs N >= 3")
    if m < 1:
        raise ValidationError("dyadic check needs m >= 1")
    g, _, _ = _reduced(v, w)
    lhs = coefficient_pair_sum(v, w, fc, n_range="dyadic", m=m)
    rhs = 2.0 ** (-m) * g / sqrt(abs(v) * abs(w))
    return BoundCheckReport("cnto-gcd-dyadic", lhs, rhs, max_ratio,
                            details={"v": v, "w": w, "m": m})


def regime_bounds_check(v: int, w: int, h: int,
                        fc: FourierCoefficients) -> BoundCheckReport:
    """|c_{n1} c_{n2}| against the per-regime bound for n1=hw/g, n2=hv/g.

    Regime thresholds N g/(s max(|v|,|w|)) and N g/(s min(|v|,|w|)),
    compared exactly by cross-multiplication.
    """
    if h == 0:
        raise ValidationError("h must be nonzero")
    g, ap, bp = _reduced(v, w)
    n1 = h * w // g
    n2 = h * v // g
    lhs = abs(coefficient(fc, n1) * coefficient(fc, n2))
    s = fc.s
    big, small = max(abs(v), abs(w)), min(abs(v), abs(w))
    # |h| <= N g/(s big)  <=>  |h| s_num big <= N g s_den
    habs = abs(h)
    if habs * s.numerator * big <= fc.n * g * s.denominator:
        regime, rhs = 1, 4.0 * float(s) ** 2 / fc.n ** 2
    elif habs * s.numerator * small <= fc.n * g * s.denominator:
        regime, rhs = 2, (2.0 * float(s) / fc.n) * g / (habs * big)
    else:
        regime, rhs = 3, float(g) ** 2 / (habs * habs * abs(v) * abs(w))
    return BoundCheckReport("regime", lhs, rhs, max_ratio=1.0 + 1e-9,
                            details={"regime": regime, "n1": n1, "n2": n2, "h": h})
