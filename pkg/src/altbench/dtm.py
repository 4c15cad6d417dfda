"""Deterministic n-tape Turing machines with a single shared head.

Tapes are one-way infinite; ordinary moves write and step the head left or
right, jump moves teleport the head to the same cell index of another tape
without touching any tape.  Moving left from cell 0 sends the machine to
the rejecting positional state (qrej, 1, 0) with all tapes unchanged.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import BadParameters, MalformedConfig


@dataclass(frozen=True)
class OrdinaryMove:
    next_state: str
    write: str
    direction: int  # -1 or +1


@dataclass(frozen=True)
class JumpMove:
    next_state: str
    target_tape: int  # 1-based


Move = OrdinaryMove | JumpMove


@dataclass(frozen=True)
class DtmSpec:
    """Complete machine description; the transition map must be total.

    The terminal rows delta(qacc, .) = jump(qacc, 1) and
    delta(qrej, .) = jump(qrej, 1) are installed automatically and
    validated if supplied.
    """

    tape_count: int
    alphabet: frozenset[str]
    blank: str
    states: frozenset[str]
    qinit: str
    qacc: str
    qrej: str
    delta: dict[tuple[str, str], Move]

    def __post_init__(self) -> None:
        if self.tape_count < 1:
            raise BadParameters("tape_count must be positive")
        if self.blank not in self.alphabet:
            raise BadParameters("blank symbol must be in the alphabet")
        if any(len(a) != 1 for a in self.alphabet):
            raise BadParameters("alphabet symbols must be single characters")
        for q in (self.qinit, self.qacc, self.qrej):
            if q not in self.states:
                raise BadParameters(f"distinguished state {q!r} missing from states")
        delta = dict(self.delta)
        for a in self.alphabet:
            for q, fixed in ((self.qacc, self.qacc), (self.qrej, self.qrej)):
                want = JumpMove(fixed, 1)
                got = delta.setdefault((q, a), want)
                if got != want:
                    raise BadParameters(f"delta({q!r},{a!r}) must be the fixed jump to tape 1")
        for q in self.states:
            for a in self.alphabet:
                if (q, a) not in delta:
                    raise BadParameters(f"delta undefined on ({q!r},{a!r})")
        for (q, a), move in delta.items():
            if q not in self.states or a not in self.alphabet:
                raise BadParameters(f"delta keyed outside Q x Sigma: ({q!r},{a!r})")
            if move.next_state not in self.states:
                raise BadParameters(f"delta({q!r},{a!r}) targets unknown state")
            if isinstance(move, OrdinaryMove):
                if move.write not in self.alphabet or move.direction not in (-1, 1):
                    raise BadParameters(f"bad ordinary move at ({q!r},{a!r})")
            else:
                if not 1 <= move.target_tape <= self.tape_count:
                    raise BadParameters(f"jump target out of range at ({q!r},{a!r})")
        object.__setattr__(self, "delta", delta)


@dataclass(frozen=True)
class DtmConfig:
    """Instantaneous description: n finite tape words plus (state, tape, cell).

    Stored words may carry trailing blanks; cells beyond a word hold the
    blank symbol.  Equality of configurations is up to trailing blanks
    (see same_content).
    """

    tapes: tuple[str, ...]
    state: str
    tape_index: int  # j, 1-based
    cell_index: int  # k


class Verdict(enum.Enum):
    ACCEPTED = "Accepted"
    REJECTED_STATE = "RejectedState"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True)
class RunOutcome:
    verdict: Verdict
    steps_used: int
    trace: tuple[tuple[str, int, int], ...] | None = None


def initial_config(spec: DtmSpec, inputs: tuple[str, ...]) -> DtmConfig:
    if len(inputs) != spec.tape_count:
        raise MalformedConfig(f"expected {spec.tape_count} input words, got {len(inputs)}")
    return DtmConfig(tuple(inputs), spec.qinit, 1, 0)


def read_cell(spec: DtmSpec, config: DtmConfig, tape_index: int, cell_index: int) -> str:
    word = config.tapes[tape_index - 1]
    return word[cell_index] if cell_index < len(word) else spec.blank


def strip_blanks(word: str, blank: str) -> str:
    return word.rstrip(blank)


def same_content(spec: DtmSpec, a: DtmConfig, b: DtmConfig) -> bool:
    """Configuration equality up to trailing blanks on each tape."""
    if (a.state, a.tape_index, a.cell_index) != (b.state, b.tape_index, b.cell_index):
        return False
    return all(
        strip_blanks(wa, spec.blank) == strip_blanks(wb, spec.blank)
        for wa, wb in zip(a.tapes, b.tapes)
    )


def _check_config(spec: DtmSpec, config: DtmConfig) -> None:
    if config.state not in spec.states:
        raise MalformedConfig(f"unknown state {config.state!r}")
    if not 1 <= config.tape_index <= spec.tape_count:
        raise MalformedConfig(f"tape index {config.tape_index} out of range")
    if len(config.tapes) != spec.tape_count:
        raise MalformedConfig("wrong number of tapes")


def dtm_step(spec: DtmSpec, config: DtmConfig) -> DtmConfig:
    """Apply one transition: ordinary move, left-edge rejection, or jump."""
    _check_config(spec, config)
    j, k = config.tape_index, config.cell_index
    symbol = read_cell(spec, config, j, k)
    move = spec.delta[(config.state, symbol)]
    if isinstance(move, JumpMove):
        return DtmConfig(config.tapes, move.next_state, move.target_tape, k)
    if k + move.direction < 0:
        return DtmConfig(config.tapes, spec.qrej, 1, 0)
    word = config.tapes[j - 1]
    if k >= len(word):
        word = word + spec.blank * (k + 1 - len(word))
    word = word[:k] + move.write + word[k + 1 :]
    tapes = config.tapes[: j - 1] + (word,) + config.tapes[j:]
    return DtmConfig(tapes, move.next_state, j, k + move.direction)


def dtm_run(
    spec: DtmSpec,
    inputs: tuple[str, ...],
    budget: int,
    trace: bool = False,
) -> RunOutcome:
    """Run from (qinit, 1, 0) for at most `budget` transitions.

    Accepts at the first step where the state is qacc; qrej is absorbing
    and reported as RejectedState; otherwise the budget runs out.
    """
    config = initial_config(spec, inputs)
    positions: list[tuple[str, int, int]] = []
    steps = 0
    while True:
        if trace:
            positions.append((config.state, config.tape_index, config.cell_index))
        if config.state == spec.qacc:
            return RunOutcome(Verdict.ACCEPTED, steps, tuple(positions) if trace else None)
        if config.state == spec.qrej:
            return RunOutcome(Verdict.REJECTED_STATE, steps, tuple(positions) if trace else None)
        if steps == budget:
            return RunOutcome(Verdict.BUDGET_EXHAUSTED, steps, tuple(positions) if trace else None)
        config = dtm_step(spec, config)
        steps += 1
