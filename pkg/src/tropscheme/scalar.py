"""Exact rationals and nonarchimedean valuations on Q.

Rationals are :class:`fractions.Fraction`.  Elements of the tropical
hyperfield are nonnegative fractions; every p-adic absolute value of a
rational number is an integral power of p, so nothing is lost by staying
inside Q>=0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

RationalLike = Union[Fraction, int, str]

TropValue = Fraction


class _Infinity:
    """The valuation of zero.  Compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("tropscheme.INF")

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self


INF = _Infinity()


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def as_trop(x: RationalLike) -> TropValue:
    t = as_rational(x)
    if t < 0:
        raise ValueError(f"tropical values are nonnegative, got {t}")
    return t


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational: {text!r}") from None
    if d == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def format_rational(x: Fraction) -> str:
    """Serialize as "num/den" (the denominator is always written)."""
    x = as_rational(x)
    return f"{x.numerator}/{x.denominator}"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _ord(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def padic_valuation(a: RationalLike, p: int):
    """Return ord_p(a) as an int, or :data:`INF` for a = 0."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a = as_rational(a)
    if a == 0:
        return INF
    return _ord(abs(a.numerator), p) - _ord(a.denominator, p)


@dataclass(frozen=True)
class Valuation:
    """A nonarchimedean absolute value on Q: trivial, or p-adic for a prime p."""

    kind: str = "trivial"
    prime: int | None = None

    def __post_init__(self):
        if self.kind == "trivial":
            if self.prime is not None:
                raise ValueError("the trivial valuation takes no prime")
        elif self.kind == "padic":
            if self.prime is None or not is_prime(self.prime):
                raise ValueError(f"p-adic valuation needs a prime, got {self.prime!r}")
        else:
            raise ValueError(f"unknown valuation kind {self.kind!r}")

    @classmethod
    def trivial(cls) -> "Valuation":
        return cls("trivial")

    @classmethod
    def padic(cls, p: int) -> "Valuation":
        return cls("padic", p)

    @classmethod
    def parse(cls, text: str) -> "Valuation":
        """Parse ``trivial`` or ``padic:<p>``."""
        text = text.strip().lower()
        if text == "trivial":
            return cls.trivial()
        head, _, tail = text.partition(":")
        if head == "padic" and tail:
            try:
                p = int(tail)
            except ValueError:
                raise ValueError(f"invalid prime in valuation {text!r}") from None
            return cls.padic(p)
        raise ValueError(f"invalid valuation {text!r}; use 'trivial' or 'padic:<p>'")

    def __str__(self):
        return "trivial" if self.kind == "trivial" else f"padic:{self.prime}"

    def __call__(self, a: RationalLike) -> TropValue:
        return apply_valuation(self, a)


def apply_valuation(v: Valuation, a: RationalLike) -> TropValue:
    a = as_rational(a)
    if a == 0:
        return Fraction(0)
    if v.kind == "trivial":
        return Fraction(1)
    # |a|_p = p^(-ord_p a)
    return Fraction(v.prime) ** (-padic_valuation(a, v.prime))


@dataclass
class SeminormReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_seminorm_axioms(v: Valuation, samples: Iterable[tuple]) -> SeminormReport:
    """Check v(0)=0, v(1)=1, multiplicativity and the ultrametric inequality."""
    report = SeminormReport()
    if v(0) != 0 or v(1) != 1:
        report.violations.append(("normalization", 0, 1))
    for a, b in samples:
        a, b = as_rational(a), as_rational(b)
        report.checked += 1
        if v(a * b) != v(a) * v(b):
            report.violations.append(("multiplicative", a, b))
        if v(a + b) > max(v(a), v(b)):
            report.violations.append(("ultrametric", a, b))
    return report


def random_rational(rng: random.Random, bound: int = 200, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x or not nonzero:
            return x
