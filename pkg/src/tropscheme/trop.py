"""Scheme-theoretic tropicalization at desk scale.

Points of the tropicalization are tuples of exact nonnegative rationals.
Membership of a point in the T-rational point set of a presentation is
decided relation by relation through :func:`~tropscheme.hyperfield.leq_T`.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .blueprint import EQV, Presentation, Relation, base_change_to_T, monomial_blueprint
from .hyperfield import leq_T
from .poly import FormalSum, Polynomial, Signature, eval_trop, tropicalize_poly
from .scalar import RationalLike, Valuation, as_rational, as_trop, format_rational

TropPoint = tuple


class UnsupportedRelation(ValueError):
    pass


def trop_point(coords: Iterable[RationalLike], sig: Signature | None = None) -> TropPoint:
    x = tuple(as_trop(c) for c in coords)
    if sig is not None:
        if len(x) != sig.num_vars:
            raise ValueError(f"point {x} has dimension {len(x)}, expected {sig.num_vars}")
        if sig.laurent and any(c == 0 for c in x):
            raise ValueError("points of a torus have nonzero coordinates")
    return x


def bend_locus_member(p: FormalSum, x: Sequence[RationalLike]) -> bool:
    """True iff the maximum among the term values of ``p`` at ``x`` occurs twice."""
    # monomials with coefficient 0 contribute the value 0, so a maximum of 0
    # is always attained twice; leq_T(0, .) encodes exactly that
    return leq_T(0, eval_trop(p, x))


def _relation_holds(r: Relation, x: Sequence[Fraction]) -> bool:
    lhs, rhs = eval_trop(r.lhs, x), eval_trop(r.rhs, x)
    if r.kind == EQV:
        if not (r.lhs.is_monomial() and r.rhs.is_monomial()):
            raise UnsupportedRelation(f"unsupported relation shape: {r}")
        a = lhs[0] if lhs else Fraction(0)
        b = rhs[0] if rhs else Fraction(0)
        return a == b
    if not r.lhs.is_monomial():
        raise UnsupportedRelation(f"unsupported relation shape: {r}")
    c = lhs[0] if lhs else Fraction(0)
    return leq_T(c, rhs)


def trop_point_member(B: Presentation, x: Sequence[RationalLike]) -> bool:
    """Is the point ``x`` a T-linear morphism from ``B`` to the tropical hyperfield?

    The idempotency axiom ``1+1 = 1`` and positivity ``0 <= 1`` both fail
    in T, so presentations carrying either flag have no T-points.
    """
    if B.domain != "trop":
        raise ValueError("membership needs a presentation over T; apply base_change_to_T first")
    x = trop_point(x, B.sig)
    if B.idempotent or B.totally_positive:
        return False
    return all(_relation_holds(r, x) for r in B.relations)


def grid_axis(lo: RationalLike, hi: RationalLike, step: RationalLike) -> list[Fraction]:
    lo, hi, step = as_rational(lo), as_rational(hi), as_rational(step)
    if step <= 0:
        raise ValueError("grid step must be positive")
    n = math.floor((hi - lo) / step)
    return [lo + i * step for i in range(n + 1)]


def grid_points(box: Sequence[tuple]) -> Iterable[TropPoint]:
    axes = [grid_axis(*ax) for ax in box]
    return itertools.product(*axes)


def _log10(x: Fraction) -> float:
    if x == 0:
        return -math.inf
    return math.log10(x.numerator) - math.log10(x.denominator)


def sample_grid(B: Presentation, box: Sequence[tuple], log_coords: bool = False) -> list:
    """All grid points of ``box`` (per axis ``(lo, hi, step)``) in the point set of ``B``.

    With ``log_coords`` each entry is ``(point, log10 coordinates)``; the
    floats are for plotting only.
    """
    pts = [x for x in grid_points(box) if trop_point_member(B, x)]
    if log_coords:
        return [(x, tuple(_log10(c) for c in x)) for x in pts]
    return pts


@dataclass(frozen=True)
class BendRelation:
    full: FormalSum
    reduced: FormalSum
    dropped_term_index: int
    generator_index: int = 0

    @property
    def dropped(self) -> FormalSum:
        return self.full.minus(self.reduced)

    def __str__(self):
        return f"{self.full} ~ {self.reduced}"

    def to_json(self) -> dict:
        return {
            "full": self.full.to_json(),
            "reduced": self.reduced.to_json(),
            "dropped_term_index": self.dropped_term_index,
            "generator_index": self.generator_index,
        }


def bend_relations(gens: Sequence[Polynomial], v: Valuation) -> list[BendRelation]:
    """``p^trop ~ p^trop - (term i)`` for every generator and every term."""
    out: dict = {}
    for g, p in enumerate(gens):
        if not p:
            raise ValueError("generators must be nonzero")
        full = tropicalize_poly(p, v)
        for i in range(len(full)):
            reduced = full.drop(i)
            out.setdefault((full, reduced), BendRelation(full, reduced, i, g))
    return list(out.values())


def _max_or_zero(vals: list) -> Fraction:
    return max(vals) if vals else Fraction(0)


def bend_equality_holds(r: BendRelation, x: Sequence[RationalLike]) -> bool:
    """The bend relation read in the tropical semifield: equal maxima."""
    return _max_or_zero(eval_trop(r.full, x)) == _max_or_zero(eval_trop(r.reduced, x))


@dataclass
class AgreementReport:
    points: int = 0
    members: int = 0
    disagreements: list = field(default_factory=list)
    relative_to_generators: bool = False

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_json(self) -> dict:
        return {
            "points": self.points,
            "members": self.members,
            "disagreements": [[format_rational(c) for c in x] + list(flags) for x, flags in self.disagreements],
            "relative_to_generators": self.relative_to_generators,
        }


def bend_vs_trop_points(gens: Sequence[Polynomial], v: Valuation, box: Sequence[tuple]) -> AgreementReport:
    """Compare three membership tests on every grid point.

    (i) T-point of the tropicalized presentation, (ii) every tropicalized
    generator bends at the point, (iii) every bend relation holds as an
    equality of maxima.  With more than one generator the comparison is
    relative to the given generators, not to the whole ideal.
    """
    BT = base_change_to_T(monomial_blueprint(gens, valuation=v))
    tropped = [tropicalize_poly(p, v) for p in gens]
    rels = bend_relations(gens, v)
    report = AgreementReport(relative_to_generators=len(gens) > 1)
    for x in grid_points(box):
        a = trop_point_member(BT, x)
        b = all(bend_locus_member(p, x) for p in tropped)
        c = all(bend_equality_holds(r, x) for r in rels)
        report.points += 1
        report.members += a
        if not (a == b == c):
            report.disagreements.append((x, (a, b, c)))
    return report


def write_csv(rows: Iterable[tuple], num_vars: int) -> str:
    """Rows of ``(point, flag)`` as CSV with exact "num/den" coordinates."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"T{i + 1}" for i in range(num_vars)] + ["member"])
    for x, flag in rows:
        w.writerow([format_rational(c) for c in x] + [int(bool(flag))])
    return buf.getvalue()


def write_point_cloud_json(points: Iterable[TropPoint], meta: dict | None = None) -> str:
    data = dict(meta or {})
    data["points"] = [[format_rational(c) for c in x] for x in points]
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_plot_data(points: Iterable[TropPoint], precision: int = 6, log_coords: bool = False) -> str:
    """Whitespace-separated decimal columns, one point per line."""
    lines = []
    for x in points:
        vals = [_log10(c) if log_coords else float(c) for c in x]
        lines.append(" ".join(f"{v:.{precision}f}" for v in vals))
    return "\n".join(lines) + ("\n" if lines else "")
