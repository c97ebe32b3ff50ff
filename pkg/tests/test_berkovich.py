import random
from fractions import Fraction

import pytest

from tropscheme import berkovich as bk
from tropscheme.poly import Polynomial

h = Fraction(1, 2)
P = bk.line_poly


def test_eval_examples():
    assert bk.eval_seminorm(bk.FAdic(P("T"), h), P("T^2") * P("T + 1")) == Fraction(1, 4)
    assert bk.eval_seminorm(bk.TrivialNorm(), P("3*T^5 - 7")) == 1
    assert bk.eval_seminorm(bk.InfinityAdic(h), P("T^3")) == 8
    assert bk.eval_seminorm(bk.FAdicZero(P("T + 1")), P("T^2 - 1")) == 0
    assert bk.eval_seminorm(bk.FAdicZero(P("T + 1")), P("T - 1")) == 1
    for w in bk.catalog():
        assert w(Polynomial(bk.LINE)) == 0


def test_multiplicity():
    f = P("T^2 + 1")
    assert bk.multiplicity(f, f * f * P("T - 3")) == 2
    assert bk.multiplicity(P("T"), P("T + 1")) == 0
    with pytest.raises(ValueError):
        bk.multiplicity(f, Polynomial(bk.LINE))


def test_descriptor_guards():
    for bad in (lambda: bk.FAdic(P("T"), 2), lambda: bk.FAdic(P("T"), 1), lambda: bk.InfinityAdic(Fraction(3, 2)),
                lambda: bk.FAdic(P("2*T"), h), lambda: bk.FAdicZero(P("5"))):
        with pytest.raises(ValueError):
            bad()


def test_seminorm_axioms():
    rng = random.Random(1)
    for w in bk.catalog(Fraction(1, 3)):
        f = getattr(w, "f", None)
        samples = [(bk.random_line_poly(rng, factor=f), bk.random_line_poly(rng, factor=f)) for _ in range(200)]
        samples = [(g, q) for g, q in samples if g and q] + [(P("T"), Polynomial(bk.LINE))]
        assert bk.check_is_seminorm(w, samples).ok, str(w)


def test_line_images():
    r = Fraction(1, 3)
    img = bk.line_trop_image(bk.FAdic(P("T"), r))
    assert not img.trivial and img.formula == "r^(e1)" and img(2, 1) == r**2
    assert bk.line_trop_image(bk.FAdic(P("T + 1"), r)).formula == "r^(e2)"
    assert bk.line_trop_image(bk.FAdic(P("T^2 + T + 1"), r)).trivial
    inf = bk.line_trop_image(bk.InfinityAdic(r))
    assert inf.formula == "r^(-e1 - e2)" and inf(1, 2) == r**-3
    assert bk.line_trop_image(bk.TrivialNorm()).trivial


def test_irreducibility_lint():
    assert bk.lint_irreducible(P("T^2 + 1"))
    assert bk.lint_irreducible(P("T^2 - 1")) is False
    assert bk.lint_irreducible(P("T^3 - 2"))
    assert bk.lint_irreducible(P("T^4 + 1")) is None
    assert bk.rational_roots(P("2*T^2 - T")) == [0, Fraction(1, 2)]
