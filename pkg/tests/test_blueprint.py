import json
from fractions import Fraction

import pytest

from tropscheme.blueprint import (
    EQV,
    Presentation,
    Relation,
    apply_idem,
    apply_pos,
    base_change_to_T,
    boolean_semifield,
    core,
    f1_presentation,
    idem_leq,
    idem_normal_form,
    monomial_blueprint,
)
from tropscheme.poly import FormalSum, Signature, parse_polynomial
from tropscheme.scalar import Valuation

S2 = Signature(2)
T1, T2, ONE = (1, 0), (0, 1), (0, 0)


def fs(*terms):
    return FormalSum(terms)


def line(text="T1 + T2 + 1", v=Valuation.trivial()):
    return monomial_blueprint([parse_polynomial(text, S2)], valuation=v)


def test_guiding_example_relations():
    B = line()
    want = {
        Relation(fs(), fs((1, T1), (1, T2), (1, ONE))),
        Relation(fs((-1, T1)), fs((1, T2), (1, ONE))),
        Relation(fs((-1, T2)), fs((1, T1), (1, ONE))),
        Relation(fs((-1, ONE)), fs((1, T1), (1, T2))),
    }
    assert B.relation_set() == want and len(B.relations) == 4


def test_binomial_and_constant():
    B = monomial_blueprint([parse_polynomial("T1 - T2", S2)])
    assert Relation(fs((-1, T1)), fs((-1, T2))) in B.relations
    assert Relation(fs((1, T2)), fs((1, T1))) in B.relations
    C = monomial_blueprint([parse_polynomial("5", S2)])
    assert C.relation_set() == {Relation(fs(), fs((5, ONE))), Relation(fs((-5, ONE)), fs())}


def test_base_change_trivial():
    BT = base_change_to_T(line())
    assert BT.domain == "trop"
    assert Relation(fs((1, T1)), fs((1, T2), (1, ONE))) in BT.relations
    assert Relation(fs((1, ONE)), fs((1, T1), (1, T2))) in BT.relations


def test_base_change_padic():
    BT = base_change_to_T(line("T1 + T2 + 3", Valuation.padic(3)))
    third = Fraction(1, 3)
    assert BT.relations[0] == Relation(fs(), fs((1, T1), (1, T2), (third, ONE)))
    assert Relation(fs((1, T1)), fs((1, T2), (third, ONE))) in BT.relations


def test_base_change_empty_and_errors():
    B = Presentation(S2, "field", Valuation.trivial())
    assert base_change_to_T(B).relations == ()
    with pytest.raises(ValueError):
        base_change_to_T(base_change_to_T(line()))
    with pytest.raises(ValueError):
        base_change_to_T(Presentation(S2, "field"))


def test_dedupe_two_generators():
    p = parse_polynomial("T1 + T2 + 1", S2)
    B = monomial_blueprint([p, p])
    assert len(B.relations) == 4


def test_invariants():
    with pytest.raises(ValueError):
        Presentation(S2, "trop", relations=(Relation(fs((-1, T1)), fs()),))
    with pytest.raises(ValueError):
        Presentation(S2, "ring")
    with pytest.raises(ValueError):
        Presentation(S2, "trop", relations=(Relation(fs((1, (1, 0, 0))), fs()),))


def test_json_roundtrip():
    for B in (line(), base_change_to_T(line("T1 + T2 + 3", Valuation.padic(3))), apply_pos(apply_idem(base_change_to_T(line())))):
        assert Presentation.from_json(json.loads(B.dumps())) == B


def test_flags_and_core():
    B = apply_pos(apply_idem(base_change_to_T(line())))
    assert B.idempotent and B.totally_positive
    assert core(B).relations == () and not core(B).idempotent
    E = Presentation(S2, "trop", relations=(Relation(fs((1, T1)), fs((1, T2)), EQV),))
    assert core(E).relations == E.relations


def test_f1_and_boolean():
    assert f1_presentation().sig.num_vars == 0
    assert boolean_semifield().idempotent
    assert apply_pos(f1_presentation()).totally_positive


def test_idem_normal_form():
    assert idem_normal_form(fs((2, T1), (3, T1))) == fs((3, T1))
    assert idem_normal_form(fs((1, ONE), (1, ONE))) == fs((1, ONE))
    x = fs((2, T1), (1, T2))
    assert idem_normal_form(x) == x
    assert idem_leq(fs((1, T1)), fs((2, T1), (1, T2)))
    assert not idem_leq(fs((3, T1)), fs((2, T1)))
