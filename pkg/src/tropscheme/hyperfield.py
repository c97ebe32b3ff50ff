"""Arithmetic in the tropical hyperfield and the extended tropical semiring.

Every hypersum of nonnegative reals is either a singleton ``{M}`` or an
interval ``[0, M]``, so a :class:`HyperSet` only stores the upper end and a
flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .scalar import RationalLike, TropValue, as_trop


@dataclass(frozen=True)
class HyperSet:
    top: TropValue
    interval: bool = False

    def __post_init__(self):
        object.__setattr__(self, "top", as_trop(self.top))
        # [0, 0] is {0}
        if self.top == 0 and self.interval:
            object.__setattr__(self, "interval", False)

    @classmethod
    def singleton(cls, t: RationalLike) -> "HyperSet":
        return cls(as_trop(t), False)

    @classmethod
    def interval0(cls, t: RationalLike) -> "HyperSet":
        return cls(as_trop(t), True)

    def __contains__(self, c) -> bool:
        c = as_trop(c)
        if self.interval:
            return c <= self.top
        return c == self.top

    def __repr__(self):
        if self.interval:
            return f"Interval0({self.top})"
        return f"Singleton({self.top})"


def hypersum(a: RationalLike, b: RationalLike) -> HyperSet:
    a, b = as_trop(a), as_trop(b)
    if a == b:
        return HyperSet.interval0(a)
    return HyperSet.singleton(max(a, b))


def _max_twice(values: Sequence[TropValue]) -> bool:
    m = max(values)
    return sum(1 for x in values if x == m) >= 2


def hypersum_n(values: Sequence[RationalLike]) -> HyperSet:
    """The n-ary hypersum: an interval iff the maximum is attained twice."""
    if not values:
        raise ValueError("empty hypersum")
    vals = [as_trop(x) for x in values]
    m = max(vals)
    return HyperSet(m, _max_twice(vals))


def leq_T(c: RationalLike, summands: Sequence[RationalLike]) -> bool:
    """Decide the monomial relation ``c <= b_1 + ... + b_n`` in the tropical hyperfield.

    It holds iff the maximum among ``c, b_1, ..., b_n`` occurs at least
    twice.  An empty right-hand side is the relation ``c <= 0``, which holds
    only for ``c = 0``.
    """
    c = as_trop(c)
    if not summands:
        return c == 0
    return _max_twice([c] + [as_trop(b) for b in summands])


@dataclass(frozen=True)
class ExtendedTropElement:
    """A singleton ``{t}`` or a ghost ``t^nu = [0, t]``."""

    value: TropValue
    ghost: bool = False

    def __post_init__(self):
        object.__setattr__(self, "value", as_trop(self.value))
        if self.value == 0 and self.ghost:
            object.__setattr__(self, "ghost", False)

    @classmethod
    def point(cls, t: RationalLike) -> "ExtendedTropElement":
        return cls(as_trop(t), False)

    @classmethod
    def ghost_of(cls, t: RationalLike) -> "ExtendedTropElement":
        return cls(as_trop(t), True)

    def as_set(self) -> HyperSet:
        return HyperSet(self.value, self.ghost)

    def __add__(self, other):
        return ext_add(self, other)

    def __mul__(self, other):
        return ext_mul(self, other)

    def __repr__(self):
        return f"Ghost({self.value})" if self.ghost else f"Point({self.value})"


def Point(t: RationalLike) -> ExtendedTropElement:
    return ExtendedTropElement.point(t)


def Ghost(t: RationalLike) -> ExtendedTropElement:
    return ExtendedTropElement.ghost_of(t)


def ext_add(x: ExtendedTropElement, y: ExtendedTropElement) -> ExtendedTropElement:
    a, b = x.value, y.value
    if not x.ghost and not y.ghost:
        return Ghost(a) if a == b else Point(max(a, b))
    if x.ghost and y.ghost:
        return Ghost(max(a, b))
    g, p = (a, b) if x.ghost else (b, a)
    # a point strictly above the ghost level survives; otherwise the ghost absorbs it
    return Point(p) if p > g else Ghost(g)


def ext_mul(x: ExtendedTropElement, y: ExtendedTropElement) -> ExtendedTropElement:
    return ExtendedTropElement(x.value * y.value, x.ghost or y.ghost)


ZERO = Point(Fraction(0))
ONE = Point(Fraction(1))
