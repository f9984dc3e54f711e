"""Exact scalar fields: the rationals and prime fields F_p.

Scalars are plain Python objects (``Fraction`` or ``int``); a :class:`Field`
only knows how to normalize, invert and parse them.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PRIME = 32749  # largest prime below 2**15
FIELD_ENV = "SWISSCHEESE_FIELD"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """``p=None`` is the rationals, otherwise the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F_{self.p}"

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def __call__(self, x):
        """Coerce an int, Fraction or numeric string into the field."""
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self(Fraction(x))
        return int(x) % self.p

    def norm(self, x):
        return x if self.p is None else x % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x if self.p is None else pow(x, -1, self.p)

    def random(self, rng, bound: int = 5):
        """A random scalar; small integers over Q keep exact arithmetic cheap."""
        if self.p is None:
            return Fraction(rng.randint(-bound, bound))
        return rng.randrange(self.p)

    def to_json(self, x):
        return str(x) if self.p is None else int(x)


QQ = Field()


def field_from_string(spec: str | None) -> Field:
    """Parse ``"Q"``, ``"rational"``, ``"p"`` (default prime) or ``"F_<p>"``/``"<p>"``."""
    if spec is None:
        spec = os.environ.get(FIELD_ENV, "Q")
    s = spec.strip().lower()
    if s in ("q", "qq", "rational", "rationals"):
        return QQ
    if s in ("p", "prime"):
        return Field(DEFAULT_PRIME)
    s = s.removeprefix("f_").removeprefix("f").removeprefix("prime:")
    return Field(int(s))
