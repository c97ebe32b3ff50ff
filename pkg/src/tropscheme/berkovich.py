"""Seminorms on Q[T] extending the trivial absolute value, and their
restriction to the monomials of the line ``T1 + T2 + 1 = 0``.

Polynomials in one variable are :class:`~tropscheme.poly.Polynomial` objects
over ``Signature(1)``; internally they are dense coefficient lists, lowest
degree first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import Polynomial, Signature, parse_polynomial
from .scalar import RationalLike, as_rational, format_rational

LINE = Signature(1)


def _dense(g: Polynomial) -> list[Fraction]:
    if g.sig.num_vars != 1:
        raise ValueError("expected a polynomial in one variable")
    if not g:
        return []
    out = [Fraction(0)] * (g.degree() + 1)
    for t in g:
        out[t.mono[0]] = t.coeff
    return out


def _sparse(c: Sequence[Fraction]) -> Polynomial:
    return Polynomial(LINE, [((i,), x) for i, x in enumerate(c) if x])


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _divmod(a: list, b: list) -> tuple[list, list]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        q[k] = f
        for i, x in enumerate(b):
            a[i + k] -= f * x
        a.pop()
        _trim(a)
    return _trim(q), a


def _mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def multiplicity(f: Polynomial, g: Polynomial) -> int:
    """Largest i with f^i dividing g (g nonzero)."""
    fd, gd = _dense(f), _dense(g)
    if not gd:
        raise ValueError("multiplicity in the zero polynomial is infinite")
    i = 0
    while True:
        q, r = _divmod(gd, fd)
        if r:
            return i
        gd = q
        i += 1


def rational_roots(f: Polynomial) -> list[Fraction]:
    """Rational roots via the rational root theorem."""
    c = _dense(f)
    if not c:
        return []
    # clear denominators
    den = 1
    for x in c:
        den = den * x.denominator // _gcd(den, x.denominator)
    ints = [int(x * den) for x in c]
    roots = set()
    if ints[0] == 0:
        roots.add(Fraction(0))
        while ints and ints[0] == 0:
            ints.pop(0)
    a0, an = abs(ints[0]), abs(ints[-1])
    for p in _divisors(a0):
        for q in _divisors(an):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if sum(x * r**i for i, x in enumerate(ints)) == 0:
                    roots.add(r)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def lint_irreducible(f: Polynomial) -> bool | None:
    """Irreducibility over Q for degree <= 3; None when undecided."""
    d = f.degree()
    if d < 1:
        return False
    if d == 1:
        return True
    if d <= 3:
        return not rational_roots(f)
    return None


def _check_f(f: Polynomial) -> Polynomial:
    c = _dense(f)
    if len(c) < 2:
        raise ValueError("f must be nonconstant")
    if c[-1] != 1:
        raise ValueError("f must be monic")
    return f


class SeminormDescriptor:
    """Base class of the seminorms w on k[T] with w|k trivial."""

    def __call__(self, g: Polynomial) -> Fraction:
        return eval_seminorm(self, g)


@dataclass(frozen=True)
class TrivialNorm(SeminormDescriptor):
    def __str__(self):
        return "w0"


@dataclass(frozen=True)
class FAdic(SeminormDescriptor):
    f: Polynomial
    r: Fraction

    def __post_init__(self):
        _check_f(self.f)
        r = as_rational(self.r)
        if not 0 < r < 1:
            raise ValueError(f"f-adic radius must lie in (0, 1), got {r}")
        object.__setattr__(self, "r", r)

    def __str__(self):
        return f"w[{self.f}, {self.r}]"


@dataclass(frozen=True)
class FAdicZero(SeminormDescriptor):
    f: Polynomial

    def __post_init__(self):
        _check_f(self.f)

    def __str__(self):
        return f"w[{self.f}, 0]"


@dataclass(frozen=True)
class InfinityAdic(SeminormDescriptor):
    r: Fraction

    def __post_init__(self):
        r = as_rational(self.r)
        if not 0 < r < 1:
            raise ValueError(f"infinity-adic radius must lie in (0, 1), got {r}")
        object.__setattr__(self, "r", r)

    def __str__(self):
        return f"w[inf, {self.r}]"


def eval_seminorm(w: SeminormDescriptor, g: Polynomial) -> Fraction:
    if not g:
        return Fraction(0)
    if isinstance(w, TrivialNorm):
        return Fraction(1)
    if isinstance(w, FAdic):
        return w.r ** multiplicity(w.f, g)
    if isinstance(w, FAdicZero):
        return Fraction(0) if multiplicity(w.f, g) > 0 else Fraction(1)
    if isinstance(w, InfinityAdic):
        return w.r ** (-g.degree())
    raise TypeError(f"unknown seminorm descriptor {w!r}")


def eval_seminorm_ratio(w: SeminormDescriptor, g: Polynomial, h: Polynomial) -> Fraction:
    """w(g/h) for h nonzero."""
    return eval_seminorm(w, g) / eval_seminorm(w, h)


@dataclass
class SeminormCheck:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_is_seminorm(w: SeminormDescriptor, samples: Sequence[tuple]) -> SeminormCheck:
    rep = SeminormCheck()
    one = Polynomial(LINE, {(0,): 1})
    if w(Polynomial(LINE)) != 0 or w(one) != 1:
        rep.violations.append(("normalization", None, None))
    for g, h in samples:
        rep.checked += 1
        if w(g * h) != w(g) * w(h):
            rep.violations.append(("multiplicative", g, h))
        if w(g + h) > max(w(g), w(h)):
            rep.violations.append(("ultrametric", g, h))
    return rep


def random_line_poly(rng: random.Random, max_deg: int = 4, bound: int = 9, factor: Polynomial | None = None) -> Polynomial:
    """A random polynomial in Q[T]; optionally multiplied by a random power of ``factor``."""
    deg = rng.randint(0, max_deg)
    g = Polynomial(LINE, [((i,), rng.randint(-bound, bound)) for i in range(deg + 1)])
    if factor is not None:
        for _ in range(rng.randint(0, 2)):
            g = g * factor
    return g


# -- the line T1 + T2 + 1 = 0, parametrized by T1 = T, T2 = -T - 1 ---------------

_T1 = [Fraction(0), Fraction(1)]
_T2 = [Fraction(-1), Fraction(-1)]


def pullback_monomial(e1: int, e2: int) -> Polynomial:
    """The image of T1^e1 T2^e2 in k[T] = k[T1, T2]/(T1 + T2 + 1)."""
    out = [Fraction(1)]
    for _ in range(e1):
        out = _mul(out, _T1)
    for _ in range(e2):
        out = _mul(out, _T2)
    return _sparse(out)


@dataclass
class LineTropImage:
    descriptor: SeminormDescriptor
    values: dict
    trivial: bool
    formula: str

    def __call__(self, e1: int, e2: int) -> Fraction:
        return eval_seminorm(self.descriptor, pullback_monomial(e1, e2))

    def to_json(self) -> dict:
        return {
            "descriptor": str(self.descriptor),
            "trivial": self.trivial,
            "formula": self.formula,
            "values": {f"{e1},{e2}": format_rational(v) for (e1, e2), v in sorted(self.values.items())},
        }


def _formula(w: SeminormDescriptor, values: dict) -> str:
    if all(v == 1 for v in values.values()):
        return "1"
    r = getattr(w, "r", None)
    if r is not None:
        for a, b in ((1, 0), (0, 1), (-1, -1), (1, 1)):
            if all(v == r ** (a * e1 + b * e2) for (e1, e2), v in values.items()):
                ex = " + ".join(f"{'-' if c < 0 else ''}{n}" for c, n in ((a, "e1"), (b, "e2")) if c)
                return f"r^({ex})".replace("+ -", "- ")
    if all(v == (0 if e > 0 else 1) for (e, _), v in values.items()):
        return "0 if e1 > 0 else 1"
    if all(v == (0 if e > 0 else 1) for (_, e), v in values.items()):
        return "0 if e2 > 0 else 1"
    return "tabulated"


def line_trop_image(w: SeminormDescriptor, max_exp: int = 4) -> LineTropImage:
    """Restrict ``w`` to the monomials T1^e1 T2^e2 of the line, 0 <= e1, e2 <= max_exp."""
    values = {
        (e1, e2): eval_seminorm(w, pullback_monomial(e1, e2))
        for e1 in range(max_exp + 1)
        for e2 in range(max_exp + 1)
    }
    trivial = all(v == 1 for v in values.values())
    return LineTropImage(w, values, trivial, _formula(w, values))


def line_poly(text: str) -> Polynomial:
    return parse_polynomial(text, LINE)


def catalog(r: RationalLike = Fraction(1, 2)) -> list[SeminormDescriptor]:
    """A representative sample of every family: w0, f-adic, f-adic zero, infinity-adic."""
    r = as_rational(r)
    fs = [line_poly(s) for s in ("T1", "T1 + 1", "T1 - 2", "T1^2 + 1", "T1^2 + T1 + 1")]
    out: list[SeminormDescriptor] = [TrivialNorm()]
    out += [FAdic(f, r) for f in fs]
    out += [FAdicZero(f) for f in fs]
    out.append(InfinityAdic(r))
    return out
