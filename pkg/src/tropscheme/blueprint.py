"""Finitely presented ordered blueprints.

An ordered blueprint is handled through a presentation: a free algebra over a
coefficient blueprint together with a list of order relations.  The
coefficient blueprint is one of

``field``
    Q^mon with an attached valuation (the blueprint k of a valued field),
``trop``
    the tropical hyperfield,
``f1``
    the field with one element (coefficients are 1, trivial order).

Quotients, base change and the idem/pos/core functors are rewrites of the
relation list.  The axioms ``1+1 = 1`` and ``0 <= 1`` are carried as flags
rather than expanded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import FormalSum, Polynomial, Signature, Term
from .scalar import Valuation, apply_valuation

DOMAINS = ("field", "trop", "f1")
LEQ = "leq"
EQV = "eqv"


@dataclass(frozen=True)
class Relation:
    lhs: FormalSum
    rhs: FormalSum
    kind: str = LEQ

    def __post_init__(self):
        if self.kind not in (LEQ, EQV):
            raise ValueError(f"relation kind must be 'leq' or 'eqv', got {self.kind!r}")

    def __str__(self):
        op = "<=" if self.kind == LEQ else "=="
        return f"{self.lhs} {op} {self.rhs}"

    def to_json(self) -> dict:
        return {"lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(), "kind": self.kind}

    @classmethod
    def from_json(cls, d: dict) -> "Relation":
        return cls(FormalSum.from_json(d["lhs"]), FormalSum.from_json(d["rhs"]), d.get("kind", LEQ))


def _dedupe(relations: Iterable[Relation]) -> tuple[Relation, ...]:
    return tuple(dict.fromkeys(relations))


@dataclass(frozen=True)
class Presentation:
    sig: Signature
    domain: str = "trop"
    valuation: Valuation | None = None
    relations: tuple[Relation, ...] = ()
    idempotent: bool = False
    totally_positive: bool = False

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise ValueError(f"unknown coefficient domain {self.domain!r}")
        rels = _dedupe(self.relations)
        for r in rels:
            for t in (*r.lhs, *r.rhs):
                self.sig.check(t.mono)
                if self.domain == "trop" and t.coeff < 0:
                    raise ValueError(f"negative tropical coefficient in {r}")
                if self.domain == "f1" and t.coeff != 1:
                    raise ValueError(f"F1 coefficients must be 1, got {t.coeff} in {r}")
        object.__setattr__(self, "relations", rels)

    def relation_set(self) -> frozenset:
        return frozenset(self.relations)

    def to_json(self) -> dict:
        return {
            "sig": {"num_vars": self.sig.num_vars, "laurent": self.sig.laurent},
            "coeff_domain": self.domain,
            "valuation": str(self.valuation) if self.valuation is not None else None,
            "relations": [r.to_json() for r in self.relations],
            "flags": {"idempotent": self.idempotent, "totally_positive": self.totally_positive},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, d: dict) -> "Presentation":
        flags = d.get("flags", {})
        val = d.get("valuation")
        return cls(
            sig=Signature(d["sig"]["num_vars"], d["sig"].get("laurent", False)),
            domain=d["coeff_domain"],
            valuation=Valuation.parse(val) if val else None,
            relations=tuple(Relation.from_json(r) for r in d["relations"]),
            idempotent=flags.get("idempotent", False),
            totally_positive=flags.get("totally_positive", False),
        )

    def __str__(self):
        flags = [n for n, f in (("idem", self.idempotent), ("pos", self.totally_positive)) if f]
        head = f"<{self.domain}[{self.sig.num_vars}]" + (f" {','.join(flags)}" if flags else "") + ">"
        return head + "".join(f"\n  {r}" for r in self.relations)


def monomial_blueprint(
    gens: Sequence[Polynomial], sig: Signature | None = None, valuation: Valuation | None = None
) -> Presentation:
    """Order relations of the blueprint attached to generators of an ideal.

    For ``p = sum_j c_j b_j`` this emits ``0 <= p`` and, for each term i,
    ``(-c_i) b_i <= sum_{j != i} c_j b_j``.
    """
    if sig is None:
        if not gens:
            raise ValueError("need a signature when no generators are given")
        sig = gens[0].sig
    rels = []
    for p in gens:
        if not p:
            raise ValueError("generators must be nonzero")
        if p.sig != sig:
            raise ValueError("generator signature mismatch")
        terms = p.terms
        rels.append(Relation(FormalSum(), FormalSum(terms)))
        for i, t in enumerate(terms):
            rest = FormalSum(s for j, s in enumerate(terms) if j != i)
            rels.append(Relation(FormalSum.single(-t.coeff, t.mono), rest))
    return Presentation(sig, "field", valuation, tuple(rels))


def _trop_sum(s: FormalSum, v: Valuation) -> FormalSum:
    return FormalSum((apply_valuation(v, t.coeff), t.mono) for t in s)


def base_change_to_T(B: Presentation, valuation: Valuation | None = None) -> Presentation:
    """Base change along the morphism to the tropical hyperfield induced by v."""
    if B.domain != "field":
        raise ValueError("base change to T needs a presentation over a valued field")
    v = valuation or B.valuation
    if v is None:
        raise ValueError("no valuation attached to the presentation")
    rels = tuple(Relation(_trop_sum(r.lhs, v), _trop_sum(r.rhs, v), r.kind) for r in B.relations)
    return replace(B, domain="trop", valuation=None, relations=rels)


def apply_idem(B: Presentation) -> Presentation:
    return replace(B, idempotent=True)


def apply_pos(B: Presentation) -> Presentation:
    return replace(B, totally_positive=True)


def core(B: Presentation) -> Presentation:
    """Replace the order by the trivial one: keep only the equalities."""
    return replace(B, relations=tuple(r for r in B.relations if r.kind == EQV), idempotent=False, totally_positive=False)


def f1_presentation() -> Presentation:
    return Presentation(Signature(0), "f1")


def boolean_semifield() -> Presentation:
    return apply_idem(f1_presentation())


def trop_presentation(sig: Signature, relations: Sequence[Relation] = ()) -> Presentation:
    return Presentation(sig, "trop", None, tuple(relations))


def idem_normal_form(s: FormalSum) -> FormalSum:
    """Collect terms with equal monomial by the maximum of their coefficients.

    This is the canonical representative of the image of ``s`` in the
    idempotent quotient, where ``a + b = max(a, b)``.
    """
    best: dict = {}
    for t in s:
        if t.coeff > best.get(t.mono, Fraction(0)):
            best[t.mono] = t.coeff
    return FormalSum(Term(c, m) for m, c in best.items())


def idem_leq(x: FormalSum, y: FormalSum) -> bool:
    """``x <= y`` in an idempotent, totally positive blueprint: ``x + y = y``."""
    return idem_normal_form(x + y) == idem_normal_form(y)
