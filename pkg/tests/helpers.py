"""Shared machines, generators and filters for the test suites."""

from __future__ import annotations

import itertools
import random

from altbench.atm import (
    AtmConfig,
    AtmSpec,
    Label,
    atm_label,
    atm_successors,
    fixpoint_labels,
    initial_config,
)
from altbench.dtm import DtmSpec, JumpMove, OrdinaryMove

ALPHABET01 = frozenset({"0", "1", "_"})


def first_symbol_dtm(tapes: int = 2) -> DtmSpec:
    """Accepts iff cell 0 of tape 1 is '1' (one ordinary move)."""
    delta = {}
    for a in ALPHABET01:
        delta[("q0", a)] = OrdinaryMove("acc" if a == "1" else "rej", a, 1)
    return DtmSpec(
        tape_count=tapes,
        alphabet=ALPHABET01,
        blank="_",
        states=frozenset({"q0", "acc", "rej"}),
        qinit="q0",
        qacc="acc",
        qrej="rej",
        delta=delta,
    )


def first_symbol_jump_dtm(tapes: int = 2) -> DtmSpec:
    """Jump-only variant of the first-symbol acceptor (one jump move)."""
    delta = {}
    for a in ALPHABET01:
        delta[("q0", a)] = JumpMove("acc" if a == "1" else "rej", 1)
    return DtmSpec(
        tape_count=tapes,
        alphabet=ALPHABET01,
        blank="_",
        states=frozenset({"q0", "acc", "rej"}),
        qinit="q0",
        qacc="acc",
        qrej="rej",
        delta=delta,
    )


def cell0_equality_dtm(tapes: int = 2) -> DtmSpec:
    """Accepts iff tapes 1 and 2 agree on cell 0 (two jump moves, jump-only)."""
    states = {"q0", "acc", "rej"} | {f"saw{a}" for a in ALPHABET01}
    delta = {}
    for a in ALPHABET01:
        delta[("q0", a)] = JumpMove(f"saw{a}", 2)
        for b in ALPHABET01:
            delta[(f"saw{a}", b)] = JumpMove("acc" if a == b else "rej", 1)
    return DtmSpec(
        tape_count=tapes,
        alphabet=ALPHABET01,
        blank="_",
        states=frozenset(states),
        qinit="q0",
        qacc="acc",
        qrej="rej",
        delta=delta,
    )


def make_toy_atm(delta_ex: dict, delta_un: dict) -> AtmSpec:
    """Two-symbol ATM with one existential and one universal state."""
    delta = {}
    for a in ("_", "x"):
        delta[("e", a)] = frozenset(delta_ex[a])
        delta[("u", a)] = frozenset(delta_un[a])
    return AtmSpec(
        alphabet=frozenset({"_", "x"}),
        blank="_",
        existential=frozenset({"e"}),
        universal=frozenset({"u"}),
        qinit="e",
        qacc="A",
        qrej="R",
        delta=delta,
    )


def fixed_toy_atm() -> AtmSpec:
    """The designed toy for the tower-sized h = 2 instance (left-moving start)."""
    return make_toy_atm(
        delta_ex={"x": {("u", "x", -1)}, "_": {("A", "_", 1)}},
        delta_un={"x": {("A", "x", 1)}, "_": {("R", "_", -1)}},
    )


def accepting_toy_atm() -> AtmSpec:
    """Accepts 'x' within budget 3 through an existential-then-universal game."""
    return make_toy_atm(
        delta_ex={"x": {("A", "x", 1), ("u", "x", 1)}, "_": {("R", "_", 1)}},
        delta_un={"x": {("A", "x", 1)}, "_": {("A", "_", -1)}},
    )


def rejecting_toy_atm() -> AtmSpec:
    """Rejects 'x': the only hop leads to a universal state that can reject."""
    return make_toy_atm(
        delta_ex={"x": {("u", "x", 1)}, "_": {("R", "_", 1)}},
        delta_un={"x": {("A", "x", 1)}, "_": {("R", "_", -1)}},
    )


def random_toy_atm(rng: random.Random) -> AtmSpec:
    triples = [
        (q, b, i) for q in ("e", "u", "A", "R") for b in ("_", "x") for i in (-1, 1)
    ]

    def row() -> set:
        return set(rng.sample(triples, rng.randint(1, 3)))

    return make_toy_atm(
        delta_ex={"_": row(), "x": row()},
        delta_un={"_": row(), "x": row()},
    )


def random_dtm(
    rng: random.Random, tapes: int, jump_only: bool = False, no_left: bool = False
) -> DtmSpec:
    alphabet = sorted(ALPHABET01)
    states = ["q0", "q1", "q2", "acc", "rej"]
    delta = {}
    for q in ("q0", "q1", "q2"):
        for a in alphabet:
            if jump_only or rng.random() < 0.5:
                delta[(q, a)] = JumpMove(rng.choice(states), rng.randint(1, tapes))
            else:
                direction = 1 if no_left else rng.choice((-1, 1))
                delta[(q, a)] = OrdinaryMove(rng.choice(states), rng.choice(alphabet), direction)
    return DtmSpec(
        tape_count=tapes,
        alphabet=ALPHABET01,
        blank="_",
        states=frozenset(states),
        qinit="q0",
        qacc="acc",
        qrej="rej",
        delta=delta,
    )


# ---------------------------------------------------------------------------
# Desk-scale suitability: the construction's hypotheses, checked exhaustively.
# ---------------------------------------------------------------------------


def encodable(config: AtmConfig, h: int) -> bool:
    return config.cell + 2 <= h and len(config.word) + 1 <= h


def box_reachable(spec: AtmSpec, start: AtmConfig, h: int) -> set | None:
    """Configs reachable without stepping past terminals; None on escape."""
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for c in frontier:
            if not encodable(c, h):
                return None
            if spec.is_terminal(c.state):
                continue
            for s in atm_successors(spec, c):
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return seen


def longest_hop_steps(spec: AtmSpec, configs: set) -> int | None:
    """Longest alternation-free hop from any config; None on same-kind cycles."""
    memo: dict[AtmConfig, int] = {}
    in_progress: set[AtmConfig] = set()

    def kind(c: AtmConfig) -> str:
        if c.state in spec.existential:
            return "E"
        if c.state in spec.universal:
            return "U"
        return "T"

    def go(c: AtmConfig) -> int | None:
        if kind(c) == "T":
            return 0
        if c in memo:
            return memo[c]
        if c in in_progress:
            return None
        in_progress.add(c)
        best = 0
        for s in atm_successors(spec, c):
            if kind(s) == kind(c):
                sub = go(s)
                if sub is None:
                    return None
                best = max(best, 1 + sub)
            else:
                best = max(best, 1)
        in_progress.discard(c)
        memo[c] = best
        return best

    worst = 0
    for c in configs:
        steps = go(c)
        if steps is None:
            return None
        worst = max(worst, steps)
    return worst


def max_block_count(spec: AtmSpec, start: AtmConfig, cap: int) -> int | None:
    """Largest number of alternation blocks on any path; None if above cap."""

    def kind(c: AtmConfig) -> str:
        if c.state in spec.existential:
            return "E"
        if c.state in spec.universal:
            return "U"
        return "T"

    seen: set[tuple[AtmConfig, int]] = set()
    worst = 1
    stack = [(start, 1)]
    while stack:
        c, blocks = stack.pop()
        if blocks > cap:
            return None
        worst = max(worst, blocks)
        if kind(c) == "T":
            continue
        for s in atm_successors(spec, c):
            nb = blocks + (1 if kind(s) not in ("T", kind(c)) else 0)
            if (s, nb) not in seen:
                seen.add((s, nb))
                stack.append((s, nb))
    return worst


def suitable_toy(spec: AtmSpec, word: str, h: int, m: int) -> bool:
    """Desk-scale analogue of the time- and alternation-boundedness hypotheses.

    Reachable configurations must stay encodable at h, every game label must
    settle with the root settling within budget h, alternation-free hops
    must fit the h-chunk windows, and no path may open more than m blocks.
    """
    start = initial_config(spec, word)
    configs = box_reachable(spec, start, h)
    if configs is None:
        return False
    labels = fixpoint_labels(spec, configs)
    if any(l is Label.UNDETERMINED for l in labels.values()):
        return False
    if atm_label(spec, start, h) is not labels[start]:
        return False
    hop = longest_hop_steps(spec, configs)
    if hop is None or hop > h - 1:
        return False
    blocks = max_block_count(spec, start, m)
    return blocks is not None


def suitable_random_toys(seed: int, count: int, word: str, h: int, m: int) -> list[AtmSpec]:
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 20000:
            raise AssertionError("could not generate enough suitable toys")
        spec = random_toy_atm(rng)
        if suitable_toy(spec, word, h, m):
            out.append(spec)
    return out


def read_budget(vi, inputs) -> int:
    h = vi.h
    per_tape = sum(min(len(w), h * h) for w in inputs)
    return 8 * vi.m * (h * h + h) + 8 * per_tape


def checked_run(vi, inputs):
    """run_verifier plus the instrumented-cost and per-tape read assertions."""
    from altbench.verifier import run_verifier

    verdict, trace = run_verifier(vi, inputs)
    assert trace.total_reads <= read_budget(vi, inputs), "cost bound violated"
    h = vi.h
    for record in trace.records:
        tape = inputs[record.index - 1]
        assert record.input_reads <= min(len(tape), h * h)
        assert record.carried_reads <= h
        assert len(record.chars_read) <= h * h
    assert len(trace.records) <= vi.m
    return verdict, trace


def all_words(alphabet: frozenset[str], max_len: int) -> list[str]:
    symbols = sorted(alphabet)
    out = []
    for n in range(max_len + 1):
        out.extend("".join(t) for t in itertools.product(symbols, repeat=n))
    return out
