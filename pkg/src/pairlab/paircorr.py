"""Pair correlation statistic and circle gap statistics.

R2 counts ordered pairs j != k with ||theta_j - theta_k|| <= s/N and
divides by N. Everything is exact integer arithmetic on the shared
denominator: the sweep sorts the points once and walks a second cursor
around the wrapped circle, so the cost is O(N log N + count) instead of
the O(N^2) definition (which survives as the test oracle).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from pairlab.arith import Alpha, UnitPoint, frac_nums
from pairlab.errors import ValidationError
from pairlab.seqgen import Sequence, spec_label


@dataclass(frozen=True)
class PairCorrelationStat:
    s: Fraction
    n: int
    ordered_pair_count: int
    alpha: Alpha | None = None
    spec: str | None = None

    @property
    def value(self) -> float:
        return self.ordered_pair_count / self.n

    @property
    def value_exact(self) -> Fraction:
        return Fraction(self.ordered_pair_count, self.n)


@dataclass(frozen=True)
class GapProfile:
    """Sorted circular neighbor gaps, stored as numerators over den."""
    gap_nums: tuple[int, ...]
    den: int
    distinct_gap_count: int

    @property
    def gaps(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(g, self.den) for g in self.gap_nums)


def _parse_s(s) -> Fraction:
    try:
        frac = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"cannot parse interval width {s!r}") from None
    if frac <= 0:
        raise ValidationError(f"interval width s must be positive, got {frac}")
    return frac


def sweep_count(nums: list[int], den: int, s: Fraction) -> int:
    """Ordered pairs j != k with circle_dist <= s/n, by sorted sweep.

    Threshold comparisons cross-multiply: arc <= s/(n*den_s) * den holds
    iff arc * den_s * n <= s_num * den.
    """
    n = len(nums)
    thr_a = s.denominator * n        # arc * thr_a <= thr_b means "inside"
    thr_b = s.numerator * den
    ys = sorted(nums)
    # forward arcs only: each qualifying unordered pair contributes twice,
    # except antipodal pairs (arc exactly den/2, only reachable when the
    # threshold equals 1/2), which the doubled sweep sees from both sides.
    j = 1
    inside = 0
    for i in range(n):
        if j <= i:
            j = i + 1
        while j < i + n:
            arc = ys[j] - ys[i] if j < n else ys[j - n] + den - ys[i]
            if arc * thr_a <= thr_b:
                j += 1
            else:
                break
        inside += j - i - 1
    antipodal = 0
    if 2 * s.numerator == thr_a and den % 2 == 0:   # threshold is exactly 1/2
        half = den // 2
        index = {}
        for y in ys:
            index[y] = index.get(y, 0) + 1
        for y, cnt in index.items():
            other = y + half
            if other in index:
                antipodal += cnt * index[other]
    return 2 * inside - 2 * antipodal


def r2(points: list[UnitPoint], s) -> PairCorrelationStat:
    """Pair correlation of explicit points; boundary pairs count as inside."""
    if not points:
        raise ValidationError("r2 needs a nonempty point list")
    n = len(points)
    if n < 2:
        raise ValidationError("r2 needs at least 2 points")
    den = points[0].den
    for p in points:
        if p.den != den:
            raise ValidationError("points must share a denominator")
    s = _parse_s(s)
    if 2 * s > n:
        raise ValidationError(f"need 2s <= N (threshold <= 1/2); got s={s}, N={n}")
    count = sweep_count([p.num for p in points], den, s)
    return PairCorrelationStat(s, n, count)


def r2_sequence(alpha: Alpha, seq: Sequence, s) -> PairCorrelationStat:
    """R2 of the dilated sequence ⟨alpha * a(x)⟩, x <= N."""
    if seq.n < 2:
        raise ValidationError("r2 needs at least 2 points")
    s = _parse_s(s)
    if 2 * s > seq.n:
        raise ValidationError(f"need 2s <= N; got s={s}, N={seq.n}")
    nums = frac_nums(alpha, list(seq.values))
    count = sweep_count(nums, alpha.den, s)
    return PairCorrelationStat(s, seq.n, count, alpha=alpha, spec=spec_label(seq.spec))


def r2_oracle_count(nums: list[int], den: int, s: Fraction, n: int) -> int:
    """Direct O(N^2) ordered-pair count (test oracle for the sweep)."""
    thr_a = s.denominator * n
    thr_b = s.numerator * den
    count = 0
    for i in range(len(nums)):
        for j in range(len(nums)):
            if i == j:
                continue
            d = (nums[i] - nums[j]) % den
            if min(d, den - d) * thr_a <= thr_b:
                count += 1
    return count


@dataclass(frozen=True)
class GridMeanReport:
    """Exact average of R2 over the full rational grid alpha = j/q."""
    q: int
    n: int
    s: Fraction
    average: Fraction
    target: Fraction            # 2(N-1)s/N
    tolerance: Fraction         # N/q, the Riemann-sum error budget

    @property
    def passed(self) -> bool:
        return abs(self.average - self.target) <= self.tolerance

    def payload(self) -> dict:
        return {"q": self.q, "n": self.n, "s": str(self.s),
                "average": str(self.average), "average_float": float(self.average),
                "target": str(self.target), "target_float": float(self.target),
                "tolerance": str(self.tolerance), "passed": self.passed}


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def grid_mean_check(values: list[int], s, q: int) -> GridMeanReport:
    """Average R2 over every alpha = j/q, j = 0..q-1, against 2(N-1)s/N.

    q must be prime and exceed 2*max(A)*N/s so each nonzero j resolves all
    pair differences; the average then matches the exact mean within N/q.
    Everything stays rational.
    """
    vals = sorted(int(v) for v in values)
    n = len(vals)
    if n < 2:
        raise ValidationError("grid_mean_check needs at least 2 values")
    s = _parse_s(s)
    if 2 * s > n:
        raise ValidationError(f"need 2s <= N; got s={s}, N={n}")
    if not _is_prime(q):
        raise ValidationError(f"grid size q must be prime, got {q}")
    if q * s <= 2 * vals[-1] * n:
        raise ValidationError(f"need q > 2*max(A)*N/s = {2 * vals[-1] * n / s}")
    total = 0
    for j in range(q):
        nums = [(a * j) % q for a in vals]
        total += sweep_count(nums, q, s)
    average = Fraction(total, q * n)
    target = 2 * (n - 1) * s / n
    return GridMeanReport(q, n, s, average, target, Fraction(n, q))


def gap_profile(points: list[UnitPoint]) -> GapProfile:
    """Sorted circular gaps between neighbors, wraparound included."""
    if not points:
        raise ValidationError("gap_profile needs a nonempty point list")
    den = points[0].den
    for p in points:
        if p.den != den:
            raise ValidationError("points must share a denominator")
    ys = sorted(p.num for p in points)
    gaps = [ys[i + 1] - ys[i] for i in range(len(ys) - 1)]
    gaps.append(ys[0] + den - ys[-1])
    gaps.sort()
    distinct = len(set(gaps))
    return GapProfile(tuple(gaps), den, distinct)
