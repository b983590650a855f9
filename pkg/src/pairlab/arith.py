"""Exact arithmetic for the dilation parameter and points on the unit circle.

The dilation alpha is held either as a fixed-point truncation (B bits, so
alpha = value / 2**B) or as an exact rational p/q. Fractional parts and
circle distances are integer arithmetic on a shared denominator; no floats
enter until a statistic is reported. The rational mode exists so that
resonant dilations can detect ||k*alpha|| = 0 exactly.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from pairlab import rng
from pairlab.errors import TruncationWarning, ValidationError

DEFAULT_BITS = 192
MIN_BITS = 64


@dataclass(frozen=True)
class Alpha:
    kind: str         # "fixed" | "rational"
    num: int          # fixed: value in [0, 2**bits); rational: p
    den: int          # fixed: 2**bits; rational: q
    bits: int = 0     # fixed only
    source: str = ""  # original text, echoed verbatim in results
    truncated: bool = False

    @staticmethod
    def fixed_point(value: int, bits: int = DEFAULT_BITS,
                    source: str = "", truncated: bool = False) -> "Alpha":
        if bits < MIN_BITS:
            raise ValidationError(f"fixed-point bits must be >= {MIN_BITS}, got {bits}")
        if not 0 <= value < (1 << bits):
            raise ValidationError("fixed-point value out of [0, 2**bits)")
        return Alpha("fixed", value, 1 << bits, bits,
                     source or f"fixed:{value}/2^{bits}", truncated)

    @staticmethod
    def rational(p: int, q: int, source: str = "") -> "Alpha":
        if q <= 0:
            raise ValidationError(f"rational denominator must be positive, got {q}")
        p %= q
        g = gcd(p, q)
        p, q = p // g, q // g
        return Alpha("rational", p, q, 0, source or f"{p}/{q}")

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def hex_bits(self) -> str:
        """Canonical hex dump of the fixed-point bits (fixed kind only)."""
        if self.kind != "fixed":
            raise ValidationError("hex_bits is defined for fixed-point alpha only")
        return format(self.num, "x").zfill((self.bits + 3) // 4)

    def payload(self) -> dict:
        """JSON-ready description, echoing the source text verbatim."""
        out = {"text": self.source, "kind": self.kind}
        if self.kind == "fixed":
            out["bits"] = self.bits
            out["value_hex"] = self.hex_bits()
            out["truncated"] = self.truncated
        else:
            out["p"] = self.num
            out["q"] = self.den
        return out


@dataclass(frozen=True)
class UnitPoint:
    """Point num/den on [0,1); den is the shared representation denominator."""
    num: int
    den: int


def frac_mul(alpha: Alpha, a: int) -> UnitPoint:
    """Fractional part of a*alpha as a point with alpha's denominator.

    Fixed mode keeps the low B bits of a*value, i.e. truncation consistent
    with the truncation already applied to alpha itself.
    """
    if a < 1:
        raise ValidationError(f"sequence values must be >= 1, got {a}")
    return UnitPoint((a * alpha.num) % alpha.den, alpha.den)


def frac_nums(alpha: Alpha, values: list[int]) -> list[int]:
    """Bulk frac_mul numerators; the shared denominator is alpha.den."""
    num, den = alpha.num, alpha.den
    for a in values:
        if a < 1:
            raise ValidationError(f"sequence values must be >= 1, got {a}")
    return [(a * num) % den for a in values]


def circle_dist(x: UnitPoint, y: UnitPoint) -> Fraction:
    """Exact distance to the nearest integer of x - y."""
    if x.den != y.den:
        raise ValidationError("circle_dist requires a shared denominator")
    d = (x.num - y.num) % x.den
    return Fraction(min(d, x.den - d), x.den)


def parse_alpha(text: str, mode: str = "auto", bits: int = DEFAULT_BITS) -> Alpha:
    """Parse 'p/q', a decimal literal, or 'random:<seed>'.

    Decimal literals are truncated to B fixed-point bits (warning +
    truncated flag when inexact). mode="fixed" forces p/q through the same
    truncation; mode="auto" keeps p/q exact.
    """
    if mode not in ("auto", "fixed"):
        raise ValidationError(f"unknown alpha mode {mode!r}")
    text = text.strip()
    if text.startswith("random:"):
        try:
            seed = int(text[len("random:"):])
        except ValueError:
            raise ValidationError(f"bad random alpha spec {text!r}") from None
        value = rng.uniform_bits("alpha-random", seed, 0, bits)
        return Alpha.fixed_point(value, bits, source=text)
    if "/" in text:
        parts = text.split("/")
        if len(parts) != 2:
            raise ValidationError(f"bad rational alpha {text!r}")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValidationError(f"bad rational alpha {text!r}") from None
        if mode == "fixed":
            return _truncate(Fraction(p, q) % 1, bits, text)
        return Alpha.rational(p, q, source=text)
    try:
        frac = Fraction(text) % 1
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"cannot parse alpha {text!r}") from None
    return _truncate(frac, bits, text)


def _truncate(frac: Fraction, bits: int, source: str) -> Alpha:
    value = (frac.numerator << bits) // frac.denominator
    exact = (frac.numerator << bits) % frac.denominator == 0
    if not exact:
        warnings.warn(f"alpha {source!r} truncated to {bits} bits",
                      TruncationWarning, stacklevel=3)
    return Alpha.fixed_point(value, bits, source=source, truncated=not exact)
