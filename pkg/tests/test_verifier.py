"""Macrostep interpreter: claim semantics, invariances, instrumentation."""

import random

import pytest

from altbench.arith import Polynomial
from altbench.atm import AtmConfig, atm_accepts, atm_successors, initial_config
from altbench.codec import encode_path
from altbench.errors import ArityMismatch, BadParameters
from altbench.verifier import (
    Verdict,
    build_verifier,
    quantified_accepts_bruteforce,
    quantified_accepts_structured,
    quantified_residual_accepts,
    run_verifier,
)
from helpers import (
    accepting_toy_atm,
    checked_run,
    fixed_toy_atm,
    random_toy_atm,
    rejecting_toy_atm,
    suitable_random_toys,
)

FX = Polynomial.of(0, 1)  # f(x) = x
G2 = Polynomial.of(2)  # g(x) = 2


def toy_instance(spec, h_override=None, tapes=5, g=G2):
    return build_verifier(spec, "x", FX, g, 1, tapes, h_override=h_override)


def pad(vi, word):
    return tuple(word) + (vi.alph.trail,) * (vi.h * vi.h - len(word))


def test_build_verifier_parameters():
    vi = toy_instance(fixed_toy_atm())
    assert vi.m == 2 and vi.h == 2 and not vi.h_overridden
    with pytest.raises(BadParameters):
        toy_instance(fixed_toy_atm(), tapes=4)  # n = m + 2
    g = Polynomial.of(1, 1)  # g(x) = x + 1
    spec = fixed_toy_atm()
    with pytest.raises(BadParameters):
        build_verifier(spec, "xx", FX, g, 1, 5)  # m = 3 needs n >= 6
    vi = build_verifier(spec, "xx", FX, g, 1, 6)
    assert vi.m == 3 and vi.h == 4


def test_build_verifier_rejects_unencodable_word():
    # h must reach |w| + 1, else the initial configuration has no encoding.
    with pytest.raises(BadParameters):
        build_verifier(fixed_toy_atm(), "xxx", Polynomial.of(1), G2, 1, 5)


def test_arity_mismatch():
    vi = toy_instance(fixed_toy_atm())
    with pytest.raises(ArityMismatch):
        run_verifier(vi, [()] * 4)


def test_macrostep1_accepts_existential_hop_to_qacc():
    spec = accepting_toy_atm()
    vi = toy_instance(spec, h_override=3)
    hop = [initial_config(spec, "x"), AtmConfig("x", "A", 1)]
    w1 = pad(vi, encode_path(hop, vi.h, spec.blank))
    verdict, trace = checked_run(vi, [w1, (), (), (), ()])
    assert verdict is Verdict.ACCEPT
    assert trace.records[-1].outcome == "accept"


def test_macrostep1_rejects_malformed():
    spec = accepting_toy_atm()
    vi = toy_instance(spec, h_override=3)
    w1 = ("x", "x", "x")  # no state symbol: first chunk not in C
    verdict, _ = checked_run(vi, [w1, (), (), (), ()])
    assert verdict is Verdict.REJECT


def test_macrostep1_rejects_unanchored_start():
    spec = accepting_toy_atm()
    vi = toy_instance(spec, h_override=3)
    # A valid hop, but from the wrong initial word (empty instead of "x").
    fake_start = AtmConfig("", "e", 0)
    succ = sorted(atm_successors(spec, fake_start), key=repr)
    hop = [fake_start, succ[0]]
    w1 = pad(vi, encode_path(hop, vi.h, spec.blank))
    verdict, _ = checked_run(vi, [w1, (), (), (), ()])
    assert verdict is Verdict.REJECT


def test_even_macrostep_accepts_malformed_continuation():
    spec = rejecting_toy_atm()
    vi = toy_instance(spec, h_override=3)
    hop = [initial_config(spec, "x"), AtmConfig("x", "u", 1)]
    w1 = pad(vi, encode_path(hop, vi.h, spec.blank))
    w2 = ("x", "x")  # length not a multiple of h
    verdict, trace = checked_run(vi, [w1, w2, (), (), ()])
    assert verdict is Verdict.ACCEPT
    assert [r.outcome for r in trace.records] == ["continue", "accept"]


def test_even_macrostep_rejects_universal_hop_to_qrej():
    spec = rejecting_toy_atm()
    vi = toy_instance(spec, h_override=3)
    u = AtmConfig("x", "u", 1)
    hop1 = [initial_config(spec, "x"), u]
    w1 = pad(vi, encode_path(hop1, vi.h, spec.blank))
    rej = AtmConfig("x", "R", 0)
    assert rej in atm_successors(spec, u)
    w2 = pad(vi, encode_path([rej], vi.h, spec.blank))
    verdict, trace = checked_run(vi, [w1, w2, (), (), ()])
    assert verdict is Verdict.REJECT
    assert [r.outcome for r in trace.records] == ["continue", "reject"]


def test_even_macrostep_accepts_universal_hop_to_qacc():
    spec = accepting_toy_atm()
    vi = toy_instance(spec, h_override=3)
    u = AtmConfig("x", "u", 1)
    w1 = pad(vi, encode_path([initial_config(spec, "x"), u], vi.h, spec.blank))
    acc = AtmConfig("x", "A", 0)
    assert acc in atm_successors(spec, u)
    w2 = pad(vi, encode_path([acc], vi.h, spec.blank))
    verdict, _ = checked_run(vi, [w1, w2, (), (), ()])
    assert verdict is Verdict.ACCEPT


def random_inputs(rng, vi, count):
    symbols = sorted(vi.alph.extended)
    out = []
    for _ in range(count):
        out.append(tuple(rng.choice(symbols) for _ in range(rng.randint(0, vi.h * vi.h + 3))))
    return out


def test_property_ii_padding_invariance():
    rng = random.Random(31)
    done = 0
    while done < 60:
        spec = random_toy_atm(rng)
        vi = toy_instance(spec, h_override=rng.choice((2, 3)))
        symbols = sorted(vi.alph.extended)
        inputs = random_inputs(rng, vi, vi.tape_count)
        tape = rng.randrange(vi.m)
        base = list(inputs)
        base[tape] = tuple(rng.choice(symbols) for _ in range(vi.h * vi.h + rng.randint(0, 3)))
        suffix = tuple(rng.choice(symbols) for _ in range(rng.randint(1, 5)))
        padded = list(base)
        padded[tape] = padded[tape] + suffix
        assert checked_run(vi, base) == checked_run(vi, padded)
        done += 1


def test_property_iii_tail_tape_independence():
    rng = random.Random(37)
    done = 0
    while done < 60:
        spec = random_toy_atm(rng)
        vi = toy_instance(spec, h_override=rng.choice((2, 3)))
        inputs = random_inputs(rng, vi, vi.tape_count)
        mutated = list(inputs)
        for i in range(vi.m, vi.tape_count):
            mutated[i] = tuple(rng.choice(sorted(vi.alph.extended)) for _ in range(rng.randint(0, 9)))
        assert checked_run(vi, inputs) == checked_run(vi, mutated)
        done += 1


def test_trace_reports_override():
    vi = toy_instance(fixed_toy_atm(), h_override=3)
    _, trace = run_verifier(vi, [()] * 5)
    assert trace.h_override == 3
    vi2 = toy_instance(fixed_toy_atm())
    _, trace2 = run_verifier(vi2, [()] * 5)
    assert trace2.h_override is None


def test_structured_matches_bruteforce_at_h2():
    rng = random.Random(41)
    for _ in range(6):
        spec = random_toy_atm(rng)
        vi = toy_instance(spec)
        assert quantified_accepts_structured(vi) == quantified_accepts_bruteforce(vi)


def test_quantified_equivalence_designed_toys():
    acc = accepting_toy_atm()
    vi = toy_instance(acc, h_override=3)
    assert quantified_accepts_structured(vi) is True
    assert atm_accepts(acc, "x", 3) is True

    rej = rejecting_toy_atm()
    vi = toy_instance(rej, h_override=3)
    assert quantified_accepts_structured(vi) is False
    assert atm_accepts(rej, "x", 3) is False


def test_quantified_equivalence_random_suitable_toys_h3():
    toys = suitable_random_toys(seed=43, count=8, word="x", h=3, m=2)
    accepts = set()
    for spec in toys:
        vi = toy_instance(spec, h_override=3)
        got = quantified_accepts_structured(vi)
        want = atm_accepts(spec, "x", 3)
        assert got == want
        accepts.add(want)
    # the sample should exercise both outcomes across seeds
    assert accepts == {True, False}


def test_residual_quantification_matches_game():
    spec = rejecting_toy_atm()
    vi = toy_instance(spec)  # h = 2: the residual loop is exhaustive
    hop = [initial_config(spec, "x"), AtmConfig("x", "R", 0)]
    w1 = pad(vi, encode_path(hop, vi.h, spec.blank))
    assert quantified_residual_accepts(vi, [w1]) is False
