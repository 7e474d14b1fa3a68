"""Exact coefficient fields.

Two fields are provided: the rationals (the default, backed by
:class:`fractions.Fraction`) and prime fields GF(p) whose elements are plain
``int`` residues.  A field object only knows how to coerce, invert and test for
zero; ordinary ``+``, ``-`` and ``*`` are applied by callers and the result is
passed back through :meth:`Field.coerce` when it may have left canonical form.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class Field:
    name = "field"

    def coerce(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def to_fraction(self, x) -> Fraction:
        return Fraction(x)

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "rational"

    def coerce(self, x) -> Fraction:
        if isinstance(x, float):
            # Floats are accepted only when they hold an exact small rational.
            return Fraction(x).limit_denominator(10**12)
        return Fraction(x)

    def inv(self, x) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")


class PrimeField(Field):
    """GF(p) with residues stored as ints in ``range(p)``."""

    def __init__(self, p: int):
        p = int(p)
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not a prime")
        self.p = p
        self.name = f"gf({p})"

    def coerce(self, x) -> int:
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Rational):
            num, den = x.numerator % self.p, x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator vanishes in {self.name}")
            return num * pow(den, -1, self.p) % self.p
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def inv(self, x) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def to_fraction(self, x) -> Fraction:
        # Symmetric representative, so that -1 prints as -1 rather than p-1.
        x %= self.p
        return Fraction(x - self.p if x > self.p // 2 else x)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("gf", self.p))


QQ = RationalField()


def parse_field(spec: str | Field | None) -> Field:
    """Parse ``"rational"``, ``"gf(p)"``, ``"gf:p"`` or ``"gfp"`` into a field."""
    if spec is None:
        return QQ
    if isinstance(spec, Field):
        return spec
    s = spec.strip().lower()
    if s in ("rational", "rationals", "q", "qq"):
        return QQ
    if s.startswith("gf"):
        digits = s[2:].strip("():= ")
        if digits.isdigit():
            return PrimeField(int(digits))
    raise ValueError(f"unknown field {spec!r}; use 'rational' or 'gf(p)'")
