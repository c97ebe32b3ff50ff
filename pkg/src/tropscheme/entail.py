"""Replayable order derivations in finitely presented ordered blueprints.

A :class:`Derivation` is a list of :class:`ProofStep` records, each naming a
rule and the indices of earlier steps it uses.  :func:`check_derivation`
replays the list and is the only trusted component; the search in
:func:`search_leq` and the constructions in :func:`derive_bend_pair` only
produce candidates.

Rules (one step each):

``gen i [rev]``      a defining relation of the presentation
``refl s``           s <= s
``add t``            x <= y  gives  x + t <= y + t   (a single term t)
``mul t``            x <= y  gives  t x <= t y       (a single nonzero term t)
``trans``            x <= y and y <= z give x <= z
``idem collapse``    1 + 1 <= 1   (idempotent presentations only)
``idem expand``      1 <= 1 + 1   (idempotent presentations only)
``pos``              0 <= 1       (totally positive presentations only)
``base c <= a + b``  a generating relation of the coefficient blueprint
                     between constants: in T, the maximum of c, a, b occurs
                     twice; over a field, c = a + b.

Internally the search works with *rewrites*: replace a sub-multiset
``t*L`` of a sum by ``t*R`` for an axiom ``L <= R``.  A chain of rewrites
compiles to the rules above via ``mul``, ``add`` and ``trans``.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .blueprint import EQV, LEQ, Presentation, Relation, idem_normal_form
from .hyperfield import leq_T
from .poly import FormalSum, Term, mono_div, mono_mul
from .scalar import format_rational, parse_rational
from .trop import BendRelation

log = logging.getLogger(__name__)

RULES = ("gen", "refl", "add", "mul", "trans", "idem", "pos", "base")


class DerivationError(ValueError):
    """A structurally malformed derivation (bad premise index, flag violation, ...)."""


class NoMatchingGenerator(ValueError):
    pass


@dataclass(frozen=True)
class ProofStep:
    rule: str
    args: tuple = ()
    premises: tuple = ()

    def __post_init__(self):
        if self.rule not in RULES:
            raise DerivationError(f"unknown rule {self.rule!r}")


@dataclass(frozen=True)
class Derivation:
    steps: tuple
    conclusion: Relation

    def __len__(self):
        return len(self.steps)

    def to_script(self) -> str:
        return format_script(self)


class _Unknown:
    def __repr__(self):
        return "UNKNOWN"

    def __bool__(self):
        return False


UNKNOWN = _Unknown()


def _one(B: Presentation) -> Term:
    return Term(Fraction(1), B.sig.one())


def _const(B: Presentation, *coeffs) -> FormalSum:
    one = B.sig.one()
    return FormalSum((c, one) for c in coeffs)


def _is_constant(s: FormalSum, B: Presentation) -> bool:
    one = B.sig.one()
    return all(t.mono == one for t in s)


def _base_holds(B: Presentation, lhs: FormalSum, rhs: FormalSum) -> bool:
    if len(lhs) > 1 or not 1 <= len(rhs) <= 2:
        return False
    if not (_is_constant(lhs, B) and _is_constant(rhs, B)):
        return False
    c = lhs.terms[0].coeff if lhs else Fraction(0)
    bs = rhs.coefficients()
    if B.domain == "trop":
        return leq_T(c, bs)
    if B.domain == "field":
        return c == sum(bs)
    # F1 has the trivial order
    return lhs == rhs


def _check_multiplier(B: Presentation, t: Term):
    if B.domain == "trop" and t.coeff <= 0:
        raise DerivationError(f"multiplier {t} must have positive coefficient over T")
    if B.domain == "field" and t.coeff == 0:
        raise DerivationError("multiplier must be nonzero")
    if B.domain == "f1" and t.coeff != 1:
        raise DerivationError("F1 multipliers have coefficient 1")
    try:
        B.sig.check(t.mono)
    except ValueError as e:
        raise DerivationError(str(e)) from None


def _premise(results: list, step: ProofStep, k: int, i: int):
    if len(step.premises) != k:
        raise DerivationError(f"step {i} ({step.rule}) needs {k} premise(s), got {len(step.premises)}")
    out = []
    for p in step.premises:
        if not isinstance(p, int) or not 0 <= p < i:
            raise DerivationError(f"step {i} refers to invalid premise {p!r}")
        out.append(results[p])
    return out


def _replay(B: Presentation, d: Derivation) -> list:
    """Conclusions of all steps, or None entries where a rule does not apply."""
    results: list = []
    one = _one(B)
    for i, st in enumerate(d.steps):
        r = None
        if st.rule == "gen":
            _premise(results, st, 0, i)
            idx = st.args[0]
            rev = len(st.args) > 1 and bool(st.args[1])
            if not isinstance(idx, int) or not 0 <= idx < len(B.relations):
                raise DerivationError(f"step {i}: no generator {idx!r}")
            g = B.relations[idx]
            if rev and g.kind != EQV:
                raise DerivationError(f"step {i}: generator {idx} is an inequality and cannot be reversed")
            r = (g.rhs, g.lhs) if rev else (g.lhs, g.rhs)
        elif st.rule == "refl":
            _premise(results, st, 0, i)
            r = (st.args[0], st.args[0])
        elif st.rule in ("add", "mul"):
            (p,) = _premise(results, st, 1, i)
            t = st.args[0]
            if st.rule == "mul":
                _check_multiplier(B, t)
            else:
                try:
                    B.sig.check(t.mono)
                except ValueError as e:
                    raise DerivationError(f"step {i}: {e}") from None
            if p is not None:
                x, y = p
                if st.rule == "add":
                    term = FormalSum([t])
                    r = (x + term, y + term)
                else:
                    r = (x.mul_term(t), y.mul_term(t))
        elif st.rule == "trans":
            p, q = _premise(results, st, 2, i)
            if p is not None and q is not None and p[1] == q[0]:
                r = (p[0], q[1])
        elif st.rule == "idem":
            _premise(results, st, 0, i)
            if not B.idempotent:
                raise DerivationError(f"step {i}: idempotency axiom used but the presentation is not idempotent")
            two, single = FormalSum([one, one]), FormalSum([one])
            if st.args[0] == "collapse":
                r = (two, single)
            elif st.args[0] == "expand":
                r = (single, two)
            else:
                raise DerivationError(f"step {i}: idem direction must be 'collapse' or 'expand'")
        elif st.rule == "pos":
            _premise(results, st, 0, i)
            if not B.totally_positive:
                raise DerivationError(f"step {i}: positivity axiom used but the presentation is not totally positive")
            r = (FormalSum(), FormalSum([one]))
        elif st.rule == "base":
            _premise(results, st, 0, i)
            lhs, rhs = st.args
            if _base_holds(B, lhs, rhs):
                r = (lhs, rhs)
        results.append(r)
    return results


def check_derivation(B: Presentation, d: Derivation) -> bool:
    """Replay ``d`` against ``B``.

    Returns False if a rule does not apply or the last step differs from the
    stated conclusion; raises :class:`DerivationError` on malformed steps.
    """
    if not d.steps:
        raise DerivationError("empty derivation")
    if d.conclusion.kind != LEQ:
        raise DerivationError("derivations conclude inequalities")
    results = _replay(B, d)
    last = results[-1]
    if any(r is None for r in results):
        return False
    return last == (d.conclusion.lhs, d.conclusion.rhs)


# -- rewrites -----------------------------------------------------------------


@dataclass(frozen=True)
class _Axiom:
    lhs: FormalSum
    rhs: FormalSum
    step: ProofStep


@dataclass(frozen=True)
class _Rewrite:
    axiom: _Axiom
    mult: Term
    context: FormalSum

    def source(self) -> FormalSum:
        return self.axiom.lhs.mul_term(self.mult) + self.context

    def target(self) -> FormalSum:
        return self.axiom.rhs.mul_term(self.mult) + self.context


def _static_axioms(B: Presentation) -> list[_Axiom]:
    ax = []
    for i, g in enumerate(B.relations):
        ax.append(_Axiom(g.lhs, g.rhs, ProofStep("gen", (i,))))
        if g.kind == EQV:
            ax.append(_Axiom(g.rhs, g.lhs, ProofStep("gen", (i, True))))
    one = _one(B)
    if B.idempotent:
        ax.append(_Axiom(FormalSum([one, one]), FormalSum([one]), ProofStep("idem", ("collapse",))))
        ax.append(_Axiom(FormalSum([one]), FormalSum([one, one]), ProofStep("idem", ("expand",))))
    if B.totally_positive:
        ax.append(_Axiom(FormalSum(), FormalSum([one]), ProofStep("pos")))
    if B.domain == "trop":
        z, r = FormalSum(), _const(B, 1, 1)
        ax.append(_Axiom(z, r, ProofStep("base", (z, r))))
    elif B.domain == "field":
        z, r = FormalSum(), _const(B, 1, -1)
        ax.append(_Axiom(z, r, ProofStep("base", (z, r))))
    return ax


def _base_axiom(B: Presentation, c, a, b=None) -> _Axiom:
    lhs = _const(B, c)
    rhs = _const(B, a) if b is None else _const(B, a, b)
    return _Axiom(lhs, rhs, ProofStep("base", (lhs, rhs)))


def compile_chain(B: Presentation, start: FormalSum, rewrites: Sequence[_Rewrite]) -> Derivation:
    """Turn a rewrite chain ``start -> ... -> end`` into a rule-level derivation."""
    steps: list[ProofStep] = []
    unit = _one(B)
    if not rewrites:
        steps.append(ProofStep("refl", (start,)))
        return Derivation(tuple(steps), Relation(start, start))
    acc = None
    cur = start
    for rw in rewrites:
        if rw.source() != cur:
            raise ValueError("rewrite chain does not connect")
        steps.append(rw.axiom.step)
        if rw.mult != unit:
            steps.append(ProofStep("mul", (rw.mult,), (len(steps) - 1,)))
        for t in rw.context:
            steps.append(ProofStep("add", (t,), (len(steps) - 1,)))
        if acc is not None:
            steps.append(ProofStep("trans", (), (acc, len(steps) - 1)))
        acc = len(steps) - 1
        cur = rw.target()
    return Derivation(tuple(steps), Relation(start, cur))


def _divide(B: Presentation, u: Term, by: Term) -> Term | None:
    if by.coeff == 0:
        return None
    m = mono_div(u.mono, by.mono, B.sig.laurent)
    if m is None:
        return None
    return Term(u.coeff / by.coeff, m)


def _successors(B: Presentation, s: FormalSum, axioms: list[_Axiom], pool: Sequence[Term]):
    """All one-step rewrites of ``s``; insertions and base moves draw terms from ``pool``."""
    distinct = list(dict.fromkeys(s.terms))
    unit = _one(B)
    for ax in axioms:
        if ax.lhs:
            for u in distinct:
                t = _divide(B, u, ax.lhs.terms[0])
                if t is None or (B.domain == "trop" and t.coeff <= 0):
                    continue
                moved = ax.lhs.mul_term(t)
                if s.contains(moved):
                    yield _Rewrite(ax, t, s.minus(moved))
        else:
            seen = set()
            for w in pool:
                for r in ax.rhs:
                    t = _divide(B, w, r)
                    if t is None or t in seen or (B.domain == "trop" and t.coeff <= 0):
                        continue
                    if B.domain == "f1" and t.coeff != 1:
                        continue
                    seen.add(t)
                    yield _Rewrite(ax, t, s)
    if B.domain not in ("trop", "field"):
        return
    for u in distinct:
        coeffs = sorted({w.coeff for w in pool if w.mono == u.mono} | {u.coeff})
        mult = Term(Fraction(1), u.mono)
        ctx = s.minus(FormalSum([u]))
        if B.domain == "trop":
            pairs = itertools.combinations_with_replacement(coeffs, 2)
            for a, b in pairs:
                if (a, b) != (u.coeff, 0) and leq_T(u.coeff, [a, b]):
                    yield _Rewrite(_base_axiom(B, u.coeff, a, b), mult, ctx)
        else:
            for a in coeffs:
                b = u.coeff - a
                if a != 0 and b != 0:
                    yield _Rewrite(_base_axiom(B, u.coeff, a, b), mult, ctx)


def search_leq(B: Presentation, target: Relation, depth: int = 6, max_states: int = 200_000):
    """Bounded breadth-first search for a derivation of ``target``.

    ``depth`` bounds the number of rewrite steps.  Returns a
    :class:`Derivation` or :data:`UNKNOWN`; a miss never means the relation
    is false.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if target.kind != LEQ:
        raise ValueError("search targets are inequalities")
    x, y = target.lhs, target.rhs
    if x == y:
        return compile_chain(B, x, [])
    axioms = _static_axioms(B)
    pool = list(dict.fromkeys(y.terms))
    # without a length-decreasing axiom no rewrite shortens a sum
    if any(len(ax.lhs) > len(ax.rhs) for ax in axioms):
        size_cap = max(len(x), len(y)) + 4
    else:
        size_cap = len(y)
    parent: dict = {x: None}
    frontier = deque([(x, 0)])
    while frontier:
        s, d = frontier.popleft()
        if d >= depth:
            continue
        for rw in _successors(B, s, axioms, pool):
            nxt = rw.target()
            if nxt in parent or len(nxt) > size_cap:
                continue
            parent[nxt] = (s, rw)
            if nxt == y:
                chain = []
                cur = nxt
                while parent[cur] is not None:
                    prev, step = parent[cur]
                    chain.append(step)
                    cur = prev
                chain.reverse()
                deriv = compile_chain(B, x, chain)
                log.debug("found %s in %d rewrites (%d states)", target, len(chain), len(parent))
                return deriv
            if len(parent) >= max_states:
                log.debug("state budget exhausted for %s", target)
                return UNKNOWN
            frontier.append((nxt, d + 1))
    return UNKNOWN


def random_chain(B: Presentation, start: FormalSum, pool: Sequence[Term], steps: int, rng) -> Derivation:
    """A random rewrite walk from ``start``; its conclusion holds in ``B`` by construction."""
    axioms = _static_axioms(B)
    cur = start
    chain = []
    for _ in range(steps):
        options = list(_successors(B, cur, axioms, pool))
        if not options:
            break
        rw = rng.choice(options)
        chain.append(rw)
        cur = rw.target()
    return compile_chain(B, start, chain)


# -- constructive derivations ---------------------------------------------------


def _find_generator(B: Presentation, lhs: FormalSum, rhs: FormalSum) -> _Axiom:
    for i, g in enumerate(B.relations):
        if (g.lhs, g.rhs) == (lhs, rhs):
            return _Axiom(lhs, rhs, ProofStep("gen", (i,)))
        if g.kind == EQV and (g.rhs, g.lhs) == (lhs, rhs):
            return _Axiom(lhs, rhs, ProofStep("gen", (i, True)))
    raise NoMatchingGenerator(f"no generator {lhs} <= {rhs} in the presentation")


def _collapse_all(B: Presentation, state: FormalSum, terms: Iterable[Term]) -> list[_Rewrite]:
    """Rewrites ``state -> state - terms`` using ``t + t -> t`` for each t in ``terms``."""
    one = _one(B)
    collapse = _Axiom(FormalSum([one, one]), FormalSum([one]), ProofStep("idem", ("collapse",)))
    out = []
    for t in terms:
        pair = FormalSum([t, t])
        rw = _Rewrite(collapse, t, state.minus(pair))
        out.append(rw)
        state = rw.target()
    return out


def derive_bend_pair(B: Presentation, r: BendRelation) -> tuple[Derivation, Derivation]:
    """Derive ``full <= reduced`` and ``reduced <= full`` for a bend relation.

    ``B`` must be idempotent, totally positive and contain the generator
    ``dropped <= reduced``.  The first derivation adds ``reduced`` to that
    generator and collapses the doubled terms with ``1 + 1 = 1``; the second
    inserts the dropped term using ``0 <= 1``.
    """
    dropped = r.dropped
    gen = _find_generator(B, dropped, r.reduced)
    unit = _one(B)
    # full = dropped + reduced -> reduced + reduced -> reduced
    first = _Rewrite(gen, unit, r.reduced)
    le = [first] + _collapse_all(B, first.target(), r.reduced.terms)
    d_le = compile_chain(B, r.full, le)
    one = _one(B)
    pos = _Axiom(FormalSum(), FormalSum([one]), ProofStep("pos"))
    ge = [_Rewrite(pos, t, r.reduced) for t in dropped.terms]
    d_ge = compile_chain(B, r.reduced, ge)
    if d_le.conclusion != Relation(r.full, r.reduced) or d_ge.conclusion != Relation(r.reduced, r.full):
        raise AssertionError("bend derivation does not reach the bend relation")
    return d_le, d_ge


def derive_idempotent_leq(B: Presentation, x: FormalSum, y: FormalSum) -> Derivation:
    """Derive ``x <= y`` in an idempotent, totally positive presentation over T
    when ``x + y = y`` after collecting terms.

    The chain is ``x -> x + y`` by inserting the terms of ``y`` (``0 <= 1``),
    then each term ``b m`` of ``x`` is absorbed by a term ``a m`` of ``y``
    with ``a >= b``: through ``b <= a + a`` when ``b < a``, and ``1 + 1 = 1``.
    """
    if idem_normal_form(x + y) != idem_normal_form(y):
        raise ValueError(f"{x} <= {y} does not hold after collecting terms")
    one = _one(B)
    pos = _Axiom(FormalSum(), FormalSum([one]), ProofStep("pos"))
    collapse = _Axiom(FormalSum([one, one]), FormalSum([one]), ProofStep("idem", ("collapse",)))
    chain = []
    state = x
    for t in y:
        rw = _Rewrite(pos, t, state)
        chain.append(rw)
        state = rw.target()
    for u in x:
        a = max(w.coeff for w in y if w.mono == u.mono)
        big = Term(a, u.mono)
        if u.coeff < a:
            rw = _Rewrite(_base_axiom(B, u.coeff, a, a), Term(Fraction(1), u.mono), state.minus(FormalSum([u])))
            chain.append(rw)
            state = rw.target()
            extra = [big, big]
        else:
            extra = [big]
        for _ in extra:
            rw = _Rewrite(collapse, big, state.minus(FormalSum([big, big])))
            chain.append(rw)
            state = rw.target()
    d = compile_chain(B, x, chain)
    if d.conclusion.rhs != y:
        raise AssertionError("absorption chain did not end at y")
    return d


def compose(d1: Derivation, d2: Derivation) -> Derivation:
    """Chain ``x <= y`` and ``y <= z`` into ``x <= z``."""
    if d1.conclusion.rhs != d2.conclusion.lhs:
        raise ValueError("derivations do not compose")
    off = len(d1.steps)
    shifted = tuple(ProofStep(s.rule, s.args, tuple(p + off for p in s.premises)) for s in d2.steps)
    steps = d1.steps + shifted + (ProofStep("trans", (), (off - 1, off + len(d2.steps) - 1)),)
    return Derivation(steps, Relation(d1.conclusion.lhs, d2.conclusion.rhs))


# -- proof scripts ---------------------------------------------------------------


def _fmt_term(t: Term) -> str:
    return f"{format_rational(t.coeff)}@{','.join(str(e) for e in t.mono)}"


def _fmt_sum(s: FormalSum) -> str:
    return " + ".join(_fmt_term(t) for t in s) if s else "0"


def _parse_term(text: str) -> Term:
    c, _, m = text.strip().partition("@")
    return Term(parse_rational(c), tuple(int(e) for e in m.split(",")) if m else ())


def _parse_sum(text: str) -> FormalSum:
    text = text.strip()
    if text == "0":
        return FormalSum()
    return FormalSum(_parse_term(t) for t in text.split(" + "))


def _parse_rel(text: str) -> tuple[FormalSum, FormalSum]:
    lhs, sep, rhs = text.partition(" <= ")
    if not sep:
        raise DerivationError(f"expected 'lhs <= rhs', got {text!r}")
    return _parse_sum(lhs), _parse_sum(rhs)


def format_script(d: Derivation) -> str:
    """One step per line: ``rule args [<- premises]``; the first line is the conclusion."""
    lines = [f"conclusion {_fmt_sum(d.conclusion.lhs)} <= {_fmt_sum(d.conclusion.rhs)}"]
    for st in d.steps:
        if st.rule == "gen":
            args = str(st.args[0]) + (" rev" if len(st.args) > 1 and st.args[1] else "")
        elif st.rule == "refl":
            args = _fmt_sum(st.args[0])
        elif st.rule in ("add", "mul"):
            args = _fmt_term(st.args[0])
        elif st.rule == "idem":
            args = st.args[0]
        elif st.rule == "base":
            args = f"{_fmt_sum(st.args[0])} <= {_fmt_sum(st.args[1])}"
        else:
            args = ""
        line = st.rule + (f" {args}" if args else "")
        if st.premises:
            line += " <- " + " ".join(str(p) for p in st.premises)
        lines.append(line)
    return "\n".join(lines) + "\n"


def parse_script(text: str) -> Derivation:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or not lines[0].startswith("conclusion "):
        raise DerivationError("proof script must start with a conclusion line")
    lhs, rhs = _parse_rel(lines[0][len("conclusion "):])
    steps = []
    for ln in lines[1:]:
        body, _, prem = ln.partition(" <- ")
        premises = tuple(int(p) for p in prem.split()) if prem else ()
        rule, _, rest = body.strip().partition(" ")
        if rule == "gen":
            parts = rest.split()
            args = (int(parts[0]),) + ((True,) if len(parts) > 1 and parts[1] == "rev" else ())
        elif rule == "refl":
            args = (_parse_sum(rest),)
        elif rule in ("add", "mul"):
            args = (_parse_term(rest),)
        elif rule == "idem":
            args = (rest.strip(),)
        elif rule == "base":
            args = _parse_rel(rest)
        elif rule in ("trans", "pos"):
            args = ()
        else:
            raise DerivationError(f"unknown rule {rule!r}")
        steps.append(ProofStep(rule, args, premises))
    return Derivation(tuple(steps), Relation(lhs, rhs))
