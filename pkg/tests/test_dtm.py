"""Multi-tape machine semantics: moves, the left edge, absorption, budgets."""

import pytest

from altbench.dtm import (
    DtmConfig,
    DtmSpec,
    JumpMove,
    OrdinaryMove,
    Verdict,
    dtm_run,
    dtm_step,
    initial_config,
    same_content,
)
from altbench.errors import BadParameters, MalformedConfig
from helpers import ALPHABET01, first_symbol_dtm, random_dtm

import random


def simple_spec(delta_overrides=None):
    delta = {
        (q, a): OrdinaryMove(q, a, 1) for q in ("q0", "q1") for a in ALPHABET01
    }
    delta.update(delta_overrides or {})
    return DtmSpec(
        tape_count=2,
        alphabet=ALPHABET01,
        blank="_",
        states=frozenset({"q0", "q1", "acc", "rej"}),
        qinit="q0",
        qacc="acc",
        qrej="rej",
        delta=delta,
    )


def test_ordinary_move_writes_and_moves():
    spec = simple_spec({("q0", "1"): OrdinaryMove("q1", "0", 1)})
    c = initial_config(spec, ("1", ""))
    c2 = dtm_step(spec, c)
    assert c2.tapes[0][0] == "0"
    assert (c2.state, c2.tape_index, c2.cell_index) == ("q1", 1, 1)


def test_left_edge_rejects_without_writing():
    spec = simple_spec({("q0", "_"): OrdinaryMove("q1", "0", -1)})
    c = initial_config(spec, ("", ""))
    c2 = dtm_step(spec, c)
    assert (c2.state, c2.tape_index, c2.cell_index) == ("rej", 1, 0)
    assert c2.tapes == c.tapes


def test_jump_preserves_cell_index():
    spec = simple_spec({("q0", "_"): JumpMove("q1", 2)})
    c = DtmConfig(("00000", ""), "q0", 1, 5)
    c2 = dtm_step(spec, c)
    assert (c2.state, c2.tape_index, c2.cell_index) == ("q1", 2, 5)
    assert c2.tapes == c.tapes


def test_first_symbol_machine_runs():
    spec = first_symbol_dtm()
    out = dtm_run(spec, ("1", ""), 1)
    assert out.verdict is Verdict.ACCEPTED and out.steps_used == 1
    out = dtm_run(spec, ("0", ""), 5)
    assert out.verdict is Verdict.REJECTED_STATE
    out = dtm_run(spec, ("1", ""), 0)
    assert out.verdict is Verdict.BUDGET_EXHAUSTED


def test_budget_monotonicity():
    spec = first_symbol_dtm()
    base = dtm_run(spec, ("1", ""), 1)
    for extra in range(2, 6):
        again = dtm_run(spec, ("1", ""), extra)
        assert again.verdict is Verdict.ACCEPTED
        assert again.steps_used == base.steps_used


def test_determinism_with_trace():
    rng = random.Random(7)
    for _ in range(10):
        spec = random_dtm(rng, 2)
        a = dtm_run(spec, ("01", "1"), 6, trace=True)
        b = dtm_run(spec, ("01", "1"), 6, trace=True)
        assert a == b


def test_absorption_exhaustive_three_state_machines():
    # Every total delta over one internal state and tiny alphabet: once a
    # terminal state is reached it never changes again.
    alphabet = frozenset({"0", "_"})
    moves = [OrdinaryMove(q, b, i) for q in ("q0", "acc", "rej") for b in sorted(alphabet) for i in (-1, 1)]
    moves += [JumpMove(q, t) for q in ("q0", "acc", "rej") for t in (1, 2)]
    for m0 in moves:
        for m1 in moves:
            spec = DtmSpec(
                tape_count=2,
                alphabet=alphabet,
                blank="_",
                states=frozenset({"q0", "acc", "rej"}),
                qinit="q0",
                qacc="acc",
                qrej="rej",
                delta={("q0", "0"): m0, ("q0", "_"): m1},
            )
            config = initial_config(spec, ("0", ""))
            seen_terminal = None
            for _ in range(8):
                config = dtm_step(spec, config)
                if seen_terminal is not None:
                    assert config.state == seen_terminal
                elif config.state in ("acc", "rej"):
                    seen_terminal = config.state


def test_left_edge_exhaustive_over_directions():
    # Any ordinary move left from cell 0 lands exactly in (rej, 1, 0).
    for write in sorted(ALPHABET01):
        for nxt in ("q0", "q1", "acc"):
            spec = simple_spec({("q0", "0"): OrdinaryMove(nxt, write, -1)})
            c = initial_config(spec, ("0", "1"))
            c2 = dtm_step(spec, c)
            assert (c2.state, c2.tape_index, c2.cell_index) == ("rej", 1, 0)
            assert c2.tapes == c.tapes


def test_malformed_config_rejected():
    spec = simple_spec()
    with pytest.raises(MalformedConfig):
        dtm_step(spec, DtmConfig(("", ""), "nope", 1, 0))
    with pytest.raises(MalformedConfig):
        dtm_step(spec, DtmConfig(("", ""), "q0", 3, 0))


def test_spec_validation():
    with pytest.raises(BadParameters):
        DtmSpec(
            tape_count=1,
            alphabet=ALPHABET01,
            blank="_",
            states=frozenset({"q0", "acc", "rej"}),
            qinit="q0",
            qacc="acc",
            qrej="rej",
            delta={},  # not total
        )
    with pytest.raises(BadParameters):
        first = first_symbol_dtm()
        DtmSpec(
            tape_count=2,
            alphabet=first.alphabet,
            blank="_",
            states=first.states,
            qinit="q0",
            qacc="acc",
            qrej="rej",
            delta={**first.delta, ("acc", "_"): JumpMove("acc", 2)},  # wrong fixed row
        )


def test_same_content_ignores_trailing_blanks():
    spec = simple_spec()
    a = DtmConfig(("01__", ""), "q0", 1, 0)
    b = DtmConfig(("01", "__"), "q0", 1, 0)
    assert same_content(spec, a, b)
    c = DtmConfig(("0_1", ""), "q0", 1, 0)
    assert not same_content(spec, a, c)
