"""Monomials, polynomials over Q, formal sums, and the generator text grammar.

A monomial is a plain tuple of exponents.  Two kinds of sums appear:

* :class:`Polynomial` -- an element of Q[A] with like terms collected.
* :class:`FormalSum` -- a finite *multiset* of ``(coefficient, monomial)``
  terms, i.e. an element of a free semiring such as N[R>0][A].  Here
  ``a + a`` and ``a`` are different, so terms are never collected.

Grammar accepted by :func:`parse_polynomial`::

    poly    := ["+" | "-"] term (("+" | "-") term)*
    term    := rational ["*"] factors | rational | factors
    factors := factor (["*"] factor)*
    factor  := var ["^" ["-"] int]
    rational:= int ["/" int]

Variables are ``T1 .. Tn``; for ``n <= 3`` the aliases ``x, y, z`` also work,
and a single variable may be written ``T``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .scalar import (
    RationalLike,
    Valuation,
    apply_valuation,
    as_rational,
    as_trop,
    format_rational,
    parse_rational,
)

Monomial = tuple

ALIASES = ("x", "y", "z")


@dataclass(frozen=True)
class Signature:
    """The monoid of (Laurent) monomials in ``num_vars`` variables.

    ``num_vars = 0`` is allowed and gives the trivial monoid {1}; it is used
    for the ground blueprints F1, B and F1^pos.
    """

    num_vars: int
    laurent: bool = False

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("num_vars must be nonnegative")

    def one(self) -> Monomial:
        return (0,) * self.num_vars

    def var(self, i: int) -> Monomial:
        return tuple(1 if j == i else 0 for j in range(self.num_vars))

    def check(self, mono: Sequence[int]) -> Monomial:
        mono = tuple(int(e) for e in mono)
        if len(mono) != self.num_vars:
            raise ValueError(f"monomial {mono} has wrong length for {self.num_vars} variables")
        if not self.laurent and any(e < 0 for e in mono):
            raise ValueError(f"negative exponent in {mono} but signature is not Laurent")
        return mono

    def var_names(self) -> list[str]:
        return [f"T{i + 1}" for i in range(self.num_vars)]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial, laurent: bool = False) -> Monomial | None:
    """Return a/b, or None if it leaves the monoid."""
    q = tuple(x - y for x, y in zip(a, b))
    if not laurent and any(e < 0 for e in q):
        return None
    return q


def grlex_key(mono: Monomial):
    return (sum(mono), mono)


def format_monomial(mono: Monomial, names: Sequence[str] | None = None) -> str:
    names = names or [f"T{i + 1}" for i in range(len(mono))]
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


class Term(NamedTuple):
    coeff: Fraction
    mono: Monomial

    def __mul__(self, other: "Term") -> "Term":
        return Term(self.coeff * other.coeff, mono_mul(self.mono, other.mono))

    def __str__(self):
        return _format_term(self.coeff, self.mono)


def _format_term(c: Fraction, mono: Monomial) -> str:
    m = format_monomial(mono)
    if not m:
        return str(c)
    if c == 1:
        return m
    return f"{c}*{m}"


def _term_key(t: Term):
    return (grlex_key(t.mono), t.coeff)


class FormalSum:
    """A multiset of terms; zero-coefficient terms are dropped.

    Terms are kept in a canonical order (grlex descending, then coefficient
    descending), so equality of FormalSums is multiset equality.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable = ()):
        ts = []
        for t in terms:
            c, m = t
            c = as_rational(c)
            if c != 0:
                ts.append(Term(c, tuple(m)))
        ts.sort(key=_term_key, reverse=True)
        self.terms: tuple[Term, ...] = tuple(ts)
        self._hash = None

    @classmethod
    def single(cls, coeff: RationalLike, mono: Monomial) -> "FormalSum":
        return cls([(coeff, mono)])

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __add__(self, other: "FormalSum") -> "FormalSum":
        return FormalSum(self.terms + other.terms)

    def mul_term(self, t: Term) -> "FormalSum":
        return FormalSum(s * t for s in self.terms)

    def __mul__(self, other: "FormalSum") -> "FormalSum":
        return FormalSum(s * t for s in self.terms for t in other.terms)

    def is_monomial(self) -> bool:
        """At most one term (the empty sum is the monomial 0)."""
        return len(self.terms) <= 1

    def contains(self, sub: "FormalSum") -> bool:
        rest = list(self.terms)
        for t in sub.terms:
            try:
                rest.remove(t)
            except ValueError:
                return False
        return True

    def minus(self, sub: "FormalSum") -> "FormalSum":
        """Multiset difference; ``sub`` must be contained in ``self``."""
        rest = list(self.terms)
        for t in sub.terms:
            rest.remove(t)
        return FormalSum(rest)

    def drop(self, index: int) -> "FormalSum":
        return FormalSum(t for i, t in enumerate(self.terms) if i != index)

    def coefficients(self) -> list[Fraction]:
        return [t.coeff for t in self.terms]

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(str(t) for t in self.terms)

    def __repr__(self):
        return f"FormalSum({str(self)!r})"

    def to_json(self) -> list:
        return [{"coeff": format_rational(t.coeff), "exps": list(t.mono)} for t in self.terms]

    @classmethod
    def from_json(cls, data: list) -> "FormalSum":
        return cls((parse_rational(d["coeff"]), tuple(d["exps"])) for d in data)


TropFormalSum = FormalSum


class Polynomial:
    """An element of Q[A]: collected terms with nonzero rational coefficients."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: Signature, coeffs: Mapping | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[Monomial, Fraction] = {}
        for m, c in items:
            m = sig.check(m)
            acc[m] = acc.get(m, Fraction(0)) + as_rational(c)
        self.sig = sig
        self.terms: tuple[Term, ...] = tuple(
            Term(acc[m], m) for m in sorted(acc, key=grlex_key, reverse=True) if acc[m] != 0
        )

    @property
    def coeffs(self) -> dict:
        return {t.mono: t.coeff for t in self.terms}

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.sig == other.sig and self.terms == other.terms

    def __hash__(self):
        return hash((self.sig, self.terms))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __neg__(self):
        return Polynomial(self.sig, [(t.mono, -t.coeff) for t in self.terms])

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(self.sig, [(t.mono, t.coeff) for t in self.terms + other.terms])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(
            self.sig, [(mono_mul(s.mono, t.mono), s.coeff * t.coeff) for s in self.terms for t in other.terms]
        )

    def degree(self) -> int:
        return max((sum(t.mono) for t in self.terms), default=-1)

    def as_formal_sum(self) -> FormalSum:
        return FormalSum(self.terms)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def to_json(self) -> list:
        return [{"coeff": format_rational(t.coeff), "exps": list(t.mono)} for t in self.terms]

    @classmethod
    def from_json(cls, sig: Signature, data: list) -> "Polynomial":
        return cls(sig, [(tuple(d["exps"]), parse_rational(d["coeff"])) for d in data])


FieldPolynomial = Polynomial


def format_polynomial(p: Polynomial) -> str:
    """Canonical text form; :func:`parse_polynomial` inverts it."""
    if not p.terms:
        return "0"
    out = []
    for i, t in enumerate(p.terms):
        c = t.coeff
        sign = "-" if c < 0 else "+"
        body = _format_term(abs(c), t.mono)
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


class PolynomialSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, expected: str, found: str | None = None):
        self.text = text
        self.pos = pos
        self.expected = expected
        found = found if found is not None else (repr(text[pos]) if pos < len(text) else "end of input")
        self.found = found
        super().__init__(f"position {pos}: expected {expected}, found {found}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolynomialSyntaxError(text, pos, "number, variable or operator")
        start = m.start(m.lastindex)
        kind = ("int", "name", "op")[m.lastindex - 1]
        val = m.group(m.lastindex)
        if val == "**":
            val = "^"
        toks.append((kind, val, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.text = text
        self.sig = sig
        self.toks = _tokenize(text)
        self.i = 0
        self.names = {f"T{j + 1}": j for j in range(sig.num_vars)}
        if sig.num_vars <= 3:
            self.names.update({ALIASES[j]: j for j in range(sig.num_vars)})
        if sig.num_vars == 1:
            self.names["T"] = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, expected: str):
        kind, val, pos = self.peek()
        raise PolynomialSyntaxError(self.text, pos, expected, "end of input" if kind == "end" else repr(val))

    def expect_int(self) -> int:
        kind, val, _ = self.peek()
        if kind != "int":
            self.fail("integer")
        self.take()
        return int(val)

    def parse(self) -> Polynomial:
        acc: list = []
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        while True:
            c, m = self.term()
            acc.append((m, sign * c))
            kind, val, _ = self.peek()
            if kind == "end":
                break
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
                continue
            self.fail("'+', '-' or end of input")
        return Polynomial(self.sig, acc)

    def term(self):
        coeff = Fraction(1)
        exps = [0] * self.sig.num_vars
        have_coeff = False
        kind, val, _ = self.peek()
        if kind == "int":
            self.take()
            num = int(val)
            den = 1
            if self.peek()[:2] == ("op", "/"):
                self.take()
                den = self.expect_int()
                if den == 0:
                    raise PolynomialSyntaxError(self.text, self.toks[self.i - 1][2], "nonzero denominator", "0")
            coeff = Fraction(num, den)
            have_coeff = True
            if self.peek()[:2] == ("op", "*"):
                self.take()
                if self.peek()[0] != "name":
                    self.fail("variable")
        nfactors = 0
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*" and nfactors:
                self.take()
                kind, val, pos = self.peek()
                if kind != "name":
                    self.fail("variable")
            if kind != "name":
                break
            self.take()
            if val not in self.names:
                raise PolynomialSyntaxError(
                    self.text, pos, f"one of {', '.join(sorted(self.names))}", f"unknown variable {val!r}"
                )
            e = 1
            if self.peek()[:2] == ("op", "^"):
                self.take()
                neg = False
                if self.peek()[:2] == ("op", "-"):
                    self.take()
                    neg = True
                epos = self.peek()[2]
                e = self.expect_int()
                if neg:
                    e = -e
                if e < 0 and not self.sig.laurent:
                    raise PolynomialSyntaxError(
                        self.text, epos, "nonnegative exponent (signature is not Laurent)", f"exponent {e}"
                    )
            exps[self.names[val]] += e
            nfactors += 1
        if not have_coeff and not nfactors:
            self.fail("coefficient or variable")
        return coeff, tuple(exps)


def parse_polynomial(text: str, sig: Signature) -> Polynomial:
    return _Parser(text, sig).parse()


def tropicalize_poly(p: Polynomial, v: Valuation) -> FormalSum:
    """Replace every coefficient c by v(c); the result is a formal sum."""
    return FormalSum((apply_valuation(v, t.coeff), t.mono) for t in p.terms)


def _mono_value(mono: Monomial, x: Sequence[Fraction]) -> Fraction:
    val = Fraction(1)
    for xi, e in zip(x, mono):
        if e < 0 and xi == 0:
            raise ZeroDivisionError("zero coordinate raised to a negative exponent")
        val *= xi**e
    return val


def eval_trop(s: FormalSum, x: Sequence[RationalLike]) -> list[Fraction]:
    """Values ``c_i * x^(a_i)`` of the terms of ``s`` at the point ``x``, in term order."""
    x = [as_trop(xi) for xi in x]
    out = []
    for t in s.terms:
        if len(t.mono) != len(x):
            raise ValueError(f"point of dimension {len(x)} for a monomial in {len(t.mono)} variables")
        out.append(t.coeff * _mono_value(t.mono, x))
    return out
