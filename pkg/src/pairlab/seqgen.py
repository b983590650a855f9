"""Generators for the integer sequence families under study.

Monomials x^d, integer polynomials, the minimal lacunary sequence for a
ratio c, powers of two, floor-power sequences ⌊βx^a⌋ with fractional
exponent, explicit convex rules, arithmetic progressions, and sequences
persisted to files. All values are exact big integers; floor of a
non-rational power is computed by integer fixed-point root extraction with
a boundary guard and precision escalation, so results are identical on
every platform.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from pairlab.errors import GenerationError, ValidationError

VALUE_CAP = 1 << 126          # keeps frac_mul at B=192 exact
FILE_MAGIC = "# pairlab-seq v1"


@dataclass(frozen=True)
class Monomial:
    degree: int


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple[int, ...]   # constant first: a0 + a1 x + ... + ad x^d


@dataclass(frozen=True)
class Lacunary:
    ratio: Fraction
    start: int = 1


@dataclass(frozen=True)
class PowersOfTwo:
    pass


@dataclass(frozen=True)
class PiatetskiShapiro:
    beta: Fraction
    alpha_exp: Fraction


@dataclass(frozen=True)
class Convex:
    rule: str
    params: tuple


@dataclass(frozen=True)
class ArithmeticProgression:
    start: int
    step: int


@dataclass(frozen=True)
class FromFile:
    path: str


@dataclass(frozen=True)
class Explicit:
    """A literal value set (CLI --set plumbing)."""
    values: tuple[int, ...]


SequenceSpec = (Monomial | Polynomial | Lacunary | PowersOfTwo | PiatetskiShapiro
                | Convex | ArithmeticProgression | FromFile | Explicit)


@dataclass(frozen=True)
class Sequence:
    values: tuple[int, ...]
    spec: SequenceSpec

    @property
    def n(self) -> int:
        return len(self.values)


def spec_label(spec: SequenceSpec) -> str:
    """Canonical text form, parseable by parse_spec."""
    if isinstance(spec, Monomial):
        return f"mono:{spec.degree}"
    if isinstance(spec, Polynomial):
        return "poly:" + ",".join(str(c) for c in spec.coeffs)
    if isinstance(spec, Lacunary):
        return f"lac:{spec.ratio},{spec.start}"
    if isinstance(spec, PowersOfTwo):
        return "pow2"
    if isinstance(spec, PiatetskiShapiro):
        return f"ps:{spec.beta},{spec.alpha_exp}"
    if isinstance(spec, Convex):
        return "convex:" + ",".join([spec.rule] + [str(p) for p in spec.params])
    if isinstance(spec, ArithmeticProgression):
        return f"ap:{spec.start},{spec.step}"
    if isinstance(spec, FromFile):
        return f"file:{spec.path}"
    if isinstance(spec, Explicit):
        return "set:" + ",".join(str(v) for v in spec.values)
    raise ValidationError(f"unknown spec {spec!r}")


def parse_spec(text: str) -> SequenceSpec:
    """Parse the CLI grammar: mono:d, poly:a0,a1,..., lac:c[,start], pow2,
    ps:beta,alpha, convex:rule[,params...], ap:start,step, file:path,
    set:v1,v2,..."""
    text = text.strip()
    kind, _, rest = text.partition(":")
    try:
        if kind == "mono":
            return Monomial(int(rest))
        if kind == "poly":
            return Polynomial(tuple(int(c) for c in rest.split(",")))
        if kind == "lac":
            parts = rest.split(",")
            start = int(parts[1]) if len(parts) > 1 else 1
            return Lacunary(Fraction(parts[0]), start)
        if kind == "pow2" and not rest:
            return PowersOfTwo()
        if kind == "ps":
            b, a = rest.split(",")
            return PiatetskiShapiro(Fraction(b), Fraction(a))
        if kind == "convex":
            parts = rest.split(",")
            return Convex(parts[0], tuple(Fraction(p) if "/" in p or "." in p else int(p)
                                          for p in parts[1:]))
        if kind == "ap":
            start, step = rest.split(",")
            return ArithmeticProgression(int(start), int(step))
        if kind == "file":
            return FromFile(rest)
        if kind == "set":
            return Explicit(tuple(int(v) for v in rest.split(",")))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad sequence spec {text!r}: {exc}") from None
    raise ValidationError(f"unknown sequence spec {text!r}")


# ---- generation ----

def generate(spec: SequenceSpec, n: int) -> Sequence:
    """Generate the first n terms; validates every Sequence invariant."""
    if n < 2:
        raise ValidationError(f"N must be >= 2, got {n}")
    values = _raw_values(spec, n)
    _validate(values, spec)
    return Sequence(tuple(values), spec)


def _raw_values(spec: SequenceSpec, n: int) -> list[int]:
    if isinstance(spec, Monomial):
        if spec.degree < 1:
            raise ValidationError("monomial degree must be >= 1")
        return [x ** spec.degree for x in range(1, n + 1)]
    if isinstance(spec, Polynomial):
        return _poly_values(spec, n)
    if isinstance(spec, Lacunary):
        return _lacunary_values(spec, n)
    if isinstance(spec, PowersOfTwo):
        if n > 125:
            raise ValidationError(f"2^{n} exceeds the value cap 2^126")
        return [1 << x for x in range(1, n + 1)]
    if isinstance(spec, PiatetskiShapiro):
        return _floor_power_values(spec, n)
    if isinstance(spec, Convex):
        return _convex_values(spec, n)
    if isinstance(spec, ArithmeticProgression):
        if spec.start < 1 or spec.step < 1:
            raise ValidationError("AP needs start >= 1 and step >= 1")
        return [spec.start + spec.step * x for x in range(n)]
    if isinstance(spec, FromFile):
        seq = load_sequence(spec.path)
        if seq.n < n:
            raise ValidationError(f"{spec.path} holds {seq.n} values, need {n}")
        return list(seq.values[:n])
    if isinstance(spec, Explicit):
        vals = sorted(spec.values)
        if len(vals) != n:
            raise ValidationError(f"explicit set has {len(vals)} values, need {n}")
        return vals
    raise ValidationError(f"unknown spec {spec!r}")


def _poly_values(spec: Polynomial, n: int) -> list[int]:
    coeffs = spec.coeffs
    if len(coeffs) < 2:
        raise ValidationError("polynomial degree must be >= 1")
    if coeffs[-1] <= 0:
        raise ValidationError("polynomial leading coefficient must be positive")
    out = []
    for x in range(1, n + 1):
        acc = 0
        for c in reversed(coeffs):
            acc = acc * x + c
        out.append(acc)
    return out


def _lacunary_values(spec: Lacunary, n: int) -> list[int]:
    c = spec.ratio
    if c <= 1:
        raise ValidationError(f"lacunary ratio must exceed 1, got {c}")
    if spec.start < 1:
        raise ValidationError("lacunary start must be >= 1")
    # minimal integer sequence: a(x+1) = max(a(x)+1, ceil(c*a(x)))
    out = [spec.start]
    for _ in range(n - 1):
        a = out[-1]
        ceil_ca = -((-c.numerator * a) // c.denominator)
        out.append(max(a + 1, ceil_ca))
    return out


def iroot(t: int, q: int) -> int:
    """Largest y with y**q <= t (integer Newton iteration)."""
    if t < 0 or q < 1:
        raise ValidationError("iroot needs t >= 0, q >= 1")
    if t == 0:
        return 0
    if q == 1:
        return t
    y = 1 << ((t.bit_length() + q - 1) // q)
    while True:
        z = ((q - 1) * y + t // y ** (q - 1)) // q
        if z >= y:
            break
        y = z
    while y ** q > t:
        y -= 1
    while (y + 1) ** q <= t:
        y += 1
    return y


def floor_power(x: int, beta: Fraction, exponent: Fraction) -> int:
    """Exact ⌊beta * x^exponent⌋ for x >= 1.

    Fixed-point q-th root at F fractional bits; if an integer boundary
    falls inside the 1-ulp uncertainty window, F doubles (starting at 128)
    until the floor is decided. Perfect powers short-circuit exactly.
    """
    p, q = exponent.numerator, exponent.denominator
    b1, b2 = beta.numerator, beta.denominator
    t = x ** p
    r = iroot(t, q)
    if r ** q == t:
        return (b1 * r) // b2
    f = 128
    while f <= 4096:
        y = iroot(t << (q * f), q)          # floor(t^(1/q) * 2^f)
        d = b2 << f
        lo = (b1 * y) // d
        hi = (b1 * (y + 1)) // d
        if lo == hi:
            return lo
        f *= 2
    raise ValidationError(f"floor_power({x}, {beta}, {exponent}) undecided at 4096 bits")


def _floor_power_values(spec: PiatetskiShapiro, n: int) -> list[int]:
    beta, a = spec.beta, spec.alpha_exp
    if beta <= 0:
        raise ValidationError(f"beta must be positive, got {beta}")
    if not Fraction(1) < a < Fraction(3, 2):
        raise ValidationError(f"alpha_exp must lie in (1, 3/2), got {a}")
    if beta * a < 1:
        raise ValidationError(f"beta*alpha_exp must be >= 1 for monotonicity, got {beta * a}")
    return [floor_power(x, beta, a) for x in range(1, n + 1)]


def _convex_values(spec: Convex, n: int) -> list[int]:
    if spec.rule == "bochkarev":
        return _bochkarev_values(spec.params, n)
    raise ValidationError(f"unknown convex rule {spec.rule!r}")


def _bochkarev_values(params: tuple, n: int) -> list[int]:
    # a(x) = floor(exp((log x)^beta)) sampled at x = x0 .. x0+n-1
    if not 1 <= len(params) <= 2:
        raise ValidationError("convex:bochkarev takes params beta[,x0]")
    beta = Fraction(params[0])
    x0 = int(params[1]) if len(params) > 1 else 3
    if beta <= 1:
        raise ValidationError(f"bochkarev beta must exceed 1, got {beta}")
    if x0 < 2:
        raise ValidationError("bochkarev start index must be >= 2")
    import mpmath

    out = []
    for x in range(x0, x0 + n):
        prec = 128
        while True:
            if prec > 4096:
                raise ValidationError(f"bochkarev floor undecided at x={x}")
            with mpmath.workprec(prec):
                b = mpmath.mpf(beta.numerator) / beta.denominator
                v = mpmath.exp(mpmath.log(x) ** b)
                f = mpmath.floor(v)
                guard = mpmath.mpf(2) ** (mpmath.mag(v) - prec + 8)
                if v - f > guard and (f + 1) - v > guard:
                    out.append(int(f))
                    break
            prec *= 2
    return out


def _validate(values: list[int], spec: SequenceSpec) -> None:
    seen: dict[int, int] = {}
    for i, v in enumerate(values):
        if v < 1:
            raise GenerationError(f"value {v} at index {i + 1} is not positive")
        if v >= VALUE_CAP:
            raise GenerationError(f"value at index {i + 1} reaches 2^126 cap")
        if v in seen:
            raise GenerationError(
                f"duplicate value {v} at indices {seen[v] + 1} and {i + 1}")
        seen[v] = i
    for i in range(1, len(values)):
        if values[i] <= values[i - 1]:
            raise GenerationError(f"values not strictly increasing at index {i + 1}")
    if isinstance(spec, Convex):
        ok, where = validate_convex_values(values)
        if not ok:
            raise GenerationError(f"convex rule violated at x={where}")


def validate_convex(seq: Sequence) -> tuple[bool, int | None]:
    """True iff second differences are strictly positive; else the first
    interior 1-based index x where a(x)-a(x-1) >= a(x+1)-a(x)."""
    if seq.n < 3:
        raise ValidationError("convexity check needs N >= 3")
    return validate_convex_values(list(seq.values))


def validate_convex_values(values: list[int]) -> tuple[bool, int | None]:
    for x in range(1, len(values) - 1):
        if values[x] - values[x - 1] >= values[x + 1] - values[x]:
            return False, x + 1
    return True, None


# ---- persistence ----

def save_sequence(seq: Sequence, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{FILE_MAGIC} {spec_label(seq.spec)}\n")
        for v in seq.values:
            fh.write(f"{v}\n")


def load_sequence(path: str) -> Sequence:
    if not os.path.exists(path):
        raise ValidationError(f"sequence file not found: {path}")
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                values.append(int(line))
            except ValueError:
                raise ValidationError(f"{path}:{lineno}: not an integer") from None
    if len(values) < 2:
        raise ValidationError(f"{path}: need at least 2 values")
    seq = Sequence(tuple(values), FromFile(path))
    _validate(list(values), seq.spec)
    return seq
