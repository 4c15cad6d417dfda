"""Alternating single-tape Turing machines.

Configurations are canonical: the tape word never ends in a blank, so
distinct words describe distinct tape contents.  Acceptance is the
budget-bounded labelling function: terminal states label immediately,
existential configurations take the best successor label, universal ones
the worst, and insufficient budget surfaces as Undetermined rather than
rejection.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .errors import BadParameters, NotAPath


@dataclass(frozen=True)
class AtmSpec:
    """Machine description; delta maps (state, symbol) to a set of triples.

    qacc and qrej sit outside the existential/universal partition; their
    fixed self-loop rows are installed automatically and validated if
    supplied.
    """

    alphabet: frozenset[str]
    blank: str
    existential: frozenset[str]
    universal: frozenset[str]
    qinit: str
    qacc: str
    qrej: str
    delta: dict[tuple[str, str], frozenset[tuple[str, str, int]]]

    def __post_init__(self) -> None:
        if len(self.alphabet) < 2 or self.blank not in self.alphabet:
            raise BadParameters("alphabet needs at least two symbols including the blank")
        if any(len(a) != 1 for a in self.alphabet):
            raise BadParameters("alphabet symbols must be single characters")
        if self.existential & self.universal:
            raise BadParameters("existential and universal state sets must be disjoint")
        if self.qinit not in self.existential:
            raise BadParameters("qinit must be an existential state")
        internal = self.existential | self.universal
        if self.qacc in internal or self.qrej in internal or self.qacc == self.qrej:
            raise BadParameters("qacc and qrej must be fresh terminal states")
        delta = dict(self.delta)
        for a in self.alphabet:
            for q, triple in ((self.qacc, (self.qacc, a, 1)), (self.qrej, (self.qrej, a, -1))):
                want = frozenset({triple})
                got = delta.setdefault((q, a), want)
                if got != want:
                    raise BadParameters(f"delta({q!r},{a!r}) must be the fixed terminal loop")
        for q in internal:
            for a in self.alphabet:
                if not delta.get((q, a)):
                    raise BadParameters(f"delta({q!r},{a!r}) must be non-empty")
        for (q, a), triples in delta.items():
            if q not in internal | {self.qacc, self.qrej} or a not in self.alphabet:
                raise BadParameters(f"delta keyed outside Q x Sigma: ({q!r},{a!r})")
            for q2, b, i in triples:
                if q2 not in internal | {self.qacc, self.qrej}:
                    raise BadParameters(f"delta({q!r},{a!r}) targets unknown state {q2!r}")
                if b not in self.alphabet or i not in (-1, 1):
                    raise BadParameters(f"bad triple in delta({q!r},{a!r})")
        object.__setattr__(self, "delta", delta)

    @property
    def states(self) -> frozenset[str]:
        return self.existential | self.universal | {self.qacc, self.qrej}

    def is_terminal(self, state: str) -> bool:
        return state == self.qacc or state == self.qrej


@dataclass(frozen=True)
class AtmConfig:
    """Canonical configuration (word, state, head cell): no trailing blank."""

    word: str
    state: str
    cell: int


class Label(enum.Enum):
    ACC = "Acc"
    REJ = "Rej"
    UNDETERMINED = "Undetermined"


class HopKind(enum.Enum):
    EXISTENTIAL_HOP = "ExistentialHop"
    UNIVERSAL_HOP = "UniversalHop"
    NOT_A_HOP = "NotAHop"


def canonical(word: str, blank: str) -> str:
    return word.rstrip(blank)


def initial_config(spec: AtmSpec, word: str) -> AtmConfig:
    if word != canonical(word, spec.blank):
        raise BadParameters("input word must not end with the blank symbol")
    return AtmConfig(word, spec.qinit, 0)


def read_cell(spec: AtmSpec, config: AtmConfig) -> str:
    return config.word[config.cell] if config.cell < len(config.word) else spec.blank


def atm_successors(spec: AtmSpec, config: AtmConfig) -> frozenset[AtmConfig]:
    """Configurations reachable in exactly one step.

    Writing re-canonicalises the word; a left move at cell 0 keeps the
    tape and lands in (word, qrej, 0).
    """
    symbol = read_cell(spec, config)
    out = set()
    for q2, b, i in spec.delta[(config.state, symbol)]:
        if config.cell + i < 0:
            out.add(AtmConfig(config.word, spec.qrej, 0))
            continue
        word = config.word
        if config.cell >= len(word):
            word = word + spec.blank * (config.cell + 1 - len(word))
        word = word[: config.cell] + b + word[config.cell + 1 :]
        out.add(AtmConfig(canonical(word, spec.blank), q2, config.cell + i))
    return frozenset(out)


def atm_label(spec: AtmSpec, config: AtmConfig, budget: int) -> Label:
    """Budget-bounded labelling: min/max recursion over successors."""

    @lru_cache(maxsize=None)
    def go(c: AtmConfig, t: int) -> Label:
        if c.state == spec.qacc:
            return Label.ACC
        if c.state == spec.qrej:
            return Label.REJ
        if t == 0:
            return Label.UNDETERMINED
        labels = {go(s, t - 1) for s in atm_successors(spec, c)}
        if c.state in spec.existential:
            if Label.ACC in labels:
                return Label.ACC
            if labels == {Label.REJ}:
                return Label.REJ
            return Label.UNDETERMINED
        if Label.REJ in labels:
            return Label.REJ
        if labels == {Label.ACC}:
            return Label.ACC
        return Label.UNDETERMINED

    return go(config, budget)


def atm_accepts(spec: AtmSpec, word: str, budget: int) -> bool:
    """True iff the initial configuration labels Acc within the budget."""
    return atm_label(spec, initial_config(spec, word), budget) is Label.ACC


def is_computation_path(spec: AtmSpec, path: list[AtmConfig]) -> bool:
    return all(b in atm_successors(spec, a) for a, b in zip(path, path[1:]))


def is_existential_hop(spec: AtmSpec, path: list[AtmConfig]) -> bool:
    """All-but-last states existential, last state universal or terminal."""
    if not path:
        return False
    return all(c.state in spec.existential for c in path[:-1]) and (
        path[-1].state in spec.universal or spec.is_terminal(path[-1].state)
    )


def is_universal_hop(spec: AtmSpec, path: list[AtmConfig]) -> bool:
    if not path:
        return False
    return all(c.state in spec.universal for c in path[:-1]) and (
        path[-1].state in spec.existential or spec.is_terminal(path[-1].state)
    )


def classify_hop(spec: AtmSpec, path: list[AtmConfig]) -> HopKind:
    """Classify a computation path; raises NotAPath on a broken successor link.

    A single terminal configuration satisfies both hop definitions
    vacuously; the existential reading wins that tie.
    """
    if not path:
        raise NotAPath("empty path")
    if not is_computation_path(spec, path):
        raise NotAPath("adjacent configurations violate the successor relation")
    if is_existential_hop(spec, path):
        return HopKind.EXISTENTIAL_HOP
    if is_universal_hop(spec, path):
        return HopKind.UNIVERSAL_HOP
    return HopKind.NOT_A_HOP


def reachable_configs(spec: AtmSpec, start: AtmConfig, limit: int = 100_000) -> set[AtmConfig]:
    """Transitive successor closure; guarded against runaway machines."""
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for c in frontier:
            for s in atm_successors(spec, c):
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
                    if len(seen) > limit:
                        raise BadParameters("reachable configuration set exceeds the limit")
        frontier = nxt
    return seen


def fixpoint_labels(spec: AtmSpec, configs: set[AtmConfig]) -> dict[AtmConfig, Label]:
    """Stable labels of the finite game restricted to `configs`.

    Successors outside the set count as undetermined, so the result is
    meaningful when `configs` is successor-closed (e.g. reachable_configs).
    Configurations left unlabeled at the fixpoint map to Undetermined.
    """
    labels: dict[AtmConfig, Label] = {}
    for c in configs:
        if c.state == spec.qacc:
            labels[c] = Label.ACC
        elif c.state == spec.qrej:
            labels[c] = Label.REJ
    changed = True
    while changed:
        changed = False
        for c in configs:
            if c in labels:
                continue
            succ = [labels.get(s, Label.UNDETERMINED) for s in atm_successors(spec, c)]
            new: Label | None = None
            if c.state in spec.existential:
                if Label.ACC in succ:
                    new = Label.ACC
                elif succ and all(l is Label.REJ for l in succ):
                    new = Label.REJ
            else:
                if Label.REJ in succ:
                    new = Label.REJ
                elif succ and all(l is Label.ACC for l in succ):
                    new = Label.ACC
            if new is not None:
                labels[c] = new
                changed = True
    for c in configs:
        labels.setdefault(c, Label.UNDETERMINED)
    return labels


def atm_label_swapped(spec: AtmSpec, config: AtmConfig, budget: int) -> Label:
    """Label under the role-swapped machine (quantifier sets and verdicts flipped).

    The swapped machine cannot be an AtmSpec (its initial state would be
    universal), but its labelling is well-defined on every configuration
    and satisfies label_swapped(c, t) == flip(label(c, t)) exactly.
    """

    @lru_cache(maxsize=None)
    def go(c: AtmConfig, t: int) -> Label:
        if c.state == spec.qacc:
            return Label.REJ
        if c.state == spec.qrej:
            return Label.ACC
        if t == 0:
            return Label.UNDETERMINED
        labels = {go(s, t - 1) for s in atm_successors(spec, c)}
        if c.state in spec.universal:  # existential in the swapped machine
            if Label.ACC in labels:
                return Label.ACC
            if labels == {Label.REJ}:
                return Label.REJ
            return Label.UNDETERMINED
        if Label.REJ in labels:
            return Label.REJ
        if labels == {Label.ACC}:
            return Label.ACC
        return Label.UNDETERMINED

    return go(config, budget)
