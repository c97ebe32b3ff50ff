import random
from fractions import Fraction

import pytest

from tropscheme.blueprint import (
    Relation,
    apply_idem,
    apply_pos,
    base_change_to_T,
    boolean_semifield,
    f1_presentation,
    idem_leq,
    monomial_blueprint,
    trop_presentation,
)
from tropscheme.entail import (
    UNKNOWN,
    Derivation,
    DerivationError,
    NoMatchingGenerator,
    ProofStep,
    check_derivation,
    compose,
    derive_bend_pair,
    derive_idempotent_leq,
    format_script,
    parse_script,
    random_chain,
    search_leq,
)
from tropscheme.poly import FormalSum, Signature, Term, parse_polynomial
from tropscheme.scalar import Valuation
from tropscheme.trop import bend_relations
from tropscheme.verify import random_polynomial

S2 = Signature(2)
T1, T2, ONE = (1, 0), (0, 1), (0, 0)


def fs(*terms):
    return FormalSum(terms)


def line_T(text="T1 + T2 + 1", v=Valuation.trivial(), flags=True):
    B = base_change_to_T(monomial_blueprint([parse_polynomial(text, S2)], valuation=v))
    return apply_pos(apply_idem(B)) if flags else B


def gen_index(B, lhs, rhs):
    return B.relations.index(Relation(lhs, rhs))


def test_reflexivity():
    B = line_T(flags=False)
    x = fs((1, T1), (2, T2))
    d = Derivation((ProofStep("refl", (x,)),), Relation(x, x))
    assert check_derivation(B, d)


def test_generator_then_mul():
    B = line_T(flags=False)
    i = gen_index(B, fs((1, ONE)), fs((1, T1), (1, T2)))
    d = Derivation(
        (ProofStep("gen", (i,)), ProofStep("mul", (Term(Fraction(1), T1),), (0,))),
        Relation(fs((1, T1)), fs((1, (2, 0)), (1, (1, 1)))),
    )
    assert check_derivation(B, d)
    wrong = Derivation(d.steps, Relation(fs((1, T1)), fs((1, (2, 0)))))
    assert not check_derivation(B, wrong)


def test_flag_guards():
    B = line_T(flags=False)
    idem = Derivation((ProofStep("idem", ("collapse",)),), Relation(fs((1, ONE), (1, ONE)), fs((1, ONE))))
    with pytest.raises(DerivationError):
        check_derivation(B, idem)
    assert check_derivation(apply_idem(B), idem)
    pos = Derivation((ProofStep("pos"),), Relation(fs(), fs((1, ONE))))
    with pytest.raises(DerivationError):
        check_derivation(B, pos)
    assert check_derivation(apply_pos(B), pos)


def test_malformed_steps():
    B = line_T()
    with pytest.raises(DerivationError):
        ProofStep("cut")
    with pytest.raises(DerivationError):
        check_derivation(B, Derivation((ProofStep("gen", (99,)),), Relation(fs(), fs())))
    with pytest.raises(DerivationError):
        check_derivation(B, Derivation((ProofStep("trans", (), (0, 1)),), Relation(fs(), fs())))
    with pytest.raises(DerivationError):
        check_derivation(B, Derivation((), Relation(fs(), fs())))
    with pytest.raises(DerivationError):
        check_derivation(B, Derivation((ProofStep("gen", (0,)), ProofStep("mul", (Term(Fraction(0), T1),), (0,))),
                                       Relation(fs(), fs())))


def test_mismatched_trans_is_false():
    B = line_T()
    d = Derivation((ProofStep("gen", (0,)), ProofStep("gen", (1,)), ProofStep("trans", (), (0, 1))),
                   Relation(fs(), fs()))
    assert check_derivation(B, d) is False


def test_base_rule():
    B = line_T(flags=False)
    ok = Derivation((ProofStep("base", (fs((1, ONE)), fs((2, ONE), (2, ONE)))),), Relation(fs((1, ONE)), fs((2, ONE), (2, ONE))))
    assert check_derivation(B, ok)
    bad = Derivation((ProofStep("base", (fs((1, ONE)), fs((2, ONE), (1, ONE)))),), Relation(fs((1, ONE)), fs((2, ONE), (1, ONE))))
    assert not check_derivation(B, bad)


def test_bend_pairs_line():
    B = line_T()
    for r in bend_relations([parse_polynomial("T1 + T2 + 1", S2)], Valuation.trivial()):
        le, ge = derive_bend_pair(B, r)
        assert check_derivation(B, le) and check_derivation(B, ge)
        assert le.conclusion == Relation(r.full, r.reduced)
        assert ge.conclusion == Relation(r.reduced, r.full)
        assert check_derivation(B, compose(le, ge))


def test_bend_pair_single_term():
    p = parse_polynomial("2*T1", S2)
    B = apply_pos(apply_idem(base_change_to_T(monomial_blueprint([p], valuation=Valuation.trivial()))))
    (r,) = bend_relations([p], Valuation.trivial())
    le, ge = derive_bend_pair(B, r)
    assert check_derivation(B, le) and check_derivation(B, ge)
    assert {s.rule for s in ge.steps} == {"pos", "mul"}


def test_bend_pair_needs_generator():
    B = line_T()
    (r,) = bend_relations([parse_polynomial("5*T2", S2)], Valuation.trivial())
    with pytest.raises(NoMatchingGenerator):
        derive_bend_pair(B, r)


def test_bend_pairs_random_padic():
    rng = random.Random(5)
    for _ in range(15):
        p = random_polynomial(rng)
        v = Valuation.padic(rng.choice([2, 3, 5]))
        B = apply_pos(apply_idem(base_change_to_T(monomial_blueprint([p], valuation=v))))
        for r in bend_relations([p], v):
            assert all(check_derivation(B, d) for d in derive_bend_pair(B, r))


def test_search_examples():
    B = line_T()
    g = B.relations[1]
    d = search_leq(B, Relation(g.lhs, g.rhs), depth=1)
    assert d is not UNKNOWN and check_derivation(B, d)
    x = fs((1, T1))
    assert check_derivation(B, search_leq(B, Relation(x, x), depth=1))
    target = Relation(fs((1, T1), (1, T2), (1, ONE)), fs((1, T1), (1, T2)))
    d = search_leq(B, target, depth=4)
    assert d is not UNKNOWN and check_derivation(B, d) and d.conclusion == target


def test_search_unknown_is_not_false():
    B = line_T(flags=False)
    res = search_leq(B, Relation(fs((1, T1)), fs((1, T2))), depth=2)
    assert res is UNKNOWN and not res
    with pytest.raises(ValueError):
        search_leq(B, Relation(fs(), fs()), depth=0)


def test_search_f1_and_boolean():
    one = (1, ())
    two, three = fs(one, one), fs(one, one, one)
    pos = apply_pos(f1_presentation())
    assert check_derivation(pos, search_leq(pos, Relation(two, three), depth=2))
    assert search_leq(pos, Relation(three, two), depth=3) is UNKNOWN
    B = boolean_semifield()
    assert check_derivation(B, search_leq(B, Relation(two, fs(one)), depth=1))
    assert search_leq(f1_presentation(), Relation(two, fs(one)), depth=3) is UNKNOWN


def test_search_trop_agrees_with_leq():
    from tropscheme.hyperfield import leq_T

    B = trop_presentation(Signature(0))
    rng = random.Random(2)
    for _ in range(60):
        c = Fraction(rng.randint(0, 4))
        bs = [Fraction(rng.randint(0, 4)) for _ in range(rng.randint(1, 3))]
        res = search_leq(B, Relation(fs((c, ())), FormalSum((b, ()) for b in bs)), depth=4)
        if res is not UNKNOWN:
            assert check_derivation(B, res)
            assert leq_T(c, bs)


def test_idempotent_leq_and_random_chains():
    B = apply_pos(apply_idem(trop_presentation(S2)))
    x = fs((1, T1), (Fraction(1, 2), T2))
    y = fs((2, T1), (1, T2), (3, ONE))
    d = derive_idempotent_leq(B, x, y)
    assert check_derivation(B, d)
    with pytest.raises(ValueError):
        derive_idempotent_leq(B, y, x)
    rng = random.Random(0)
    for _ in range(50):
        d = random_chain(B, x, list(y), rng.randint(1, 5), rng)
        assert check_derivation(B, d)
        assert idem_leq(d.conclusion.lhs, d.conclusion.rhs)


def test_script_roundtrip():
    B = line_T("T1 + T2 + 3", Valuation.padic(3))
    for r in bend_relations([parse_polynomial("T1 + T2 + 3", S2)], Valuation.padic(3)):
        for d in derive_bend_pair(B, r):
            text = format_script(d)
            back = parse_script(text)
            assert back == d and format_script(back) == text
    d = Derivation((ProofStep("base", (fs(), fs((1, ONE), (1, ONE)))), ProofStep("gen", (0,))), Relation(fs(), fs()))
    assert parse_script(format_script(d)) == d
    with pytest.raises(DerivationError):
        parse_script("gen 0\n")
