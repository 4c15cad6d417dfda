"""Quantified acceptance over fixed-length tape inputs.

An instance asks whether E w1 A w2 ... : machine(w1..wn) accepts within a
time budget, with every quantifier ranging over same-length words.  The
canonical bounds use the tower tetra(k, n) for both the word length and
the budget and are deliberately not runnable past the bit cap; override
bounds make desk-scale evaluation possible.  The reductions construct
prenex instances whose machine is the hop-checking interpreter.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Protocol

from .arith import DEFAULT_CAP, Polynomial, ResourceCap, tetra
from .atm import AtmSpec
from .dtm import DtmSpec, Verdict as DtmVerdict, dtm_run
from .errors import BadParameters, ResourceLimit
from .verifier import (
    Verdict as VerifierVerdict,
    VerifierInstance,
    build_verifier,
    run_verifier,
)

EXISTS = "E"
FORALL = "A"


@dataclass(frozen=True)
class QuantifierPrefix:
    """Sequence over {E, A}; the first quantifier must be existential."""

    quantifiers: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.quantifiers:
            raise BadParameters("prefix must be non-empty")
        if any(q not in (EXISTS, FORALL) for q in self.quantifiers):
            raise BadParameters("quantifiers must be 'E' or 'A'")
        if self.quantifiers[0] != EXISTS:
            raise BadParameters("the first quantifier must be existential")

    @staticmethod
    def parse(text: str) -> "QuantifierPrefix":
        return QuantifierPrefix(tuple(text))

    def __len__(self) -> int:
        return len(self.quantifiers)

    def __str__(self) -> str:
        return "".join(self.quantifiers)


def altern(prefix: QuantifierPrefix) -> int:
    """One plus the number of adjacent quantifier changes."""
    qs = prefix.quantifiers
    return 1 + sum(1 for a, b in zip(qs, qs[1:]) if a != b)


class TapeMachine(Protocol):
    """What solve_prenex needs from a machine."""

    tape_count: int

    def word_domain(self, length: int) -> Iterable:
        """All candidate words of the given length, in a fixed order."""

    def domain_size(self, length: int) -> int: ...

    def effective_tape_count(self) -> int:
        """Tapes that can influence the run; the rest take a representative word."""

    def accepts(self, inputs: tuple, budget: int) -> bool: ...


@dataclass(frozen=True)
class DtmTapeMachine:
    """A deterministic n-tape machine as a quantification target."""

    spec: DtmSpec

    @property
    def tape_count(self) -> int:
        return self.spec.tape_count

    def word_domain(self, length: int) -> Iterable[str]:
        symbols = sorted(self.spec.alphabet)
        return ("".join(t) for t in itertools.product(symbols, repeat=length))

    def domain_size(self, length: int) -> int:
        return len(self.spec.alphabet) ** length

    def effective_tape_count(self) -> int:
        return self.spec.tape_count

    def accepts(self, inputs: tuple, budget: int) -> bool:
        return dtm_run(self.spec, inputs, budget).verdict is DtmVerdict.ACCEPTED


@dataclass(frozen=True)
class VerifierTapeMachine:
    """The hop-checking interpreter as a quantification target.

    "Accepts in time t" is read through the instrumented cost model: the
    run must accept and use at most t cell reads, the interpreter's
    concrete analogue of a step count.
    """

    instance: VerifierInstance

    @property
    def tape_count(self) -> int:
        return self.instance.tape_count

    def word_domain(self, length: int) -> Iterable[tuple[str, ...]]:
        symbols = sorted(self.instance.alph.extended)
        return itertools.product(symbols, repeat=length)

    def domain_size(self, length: int) -> int:
        return len(self.instance.alph.extended) ** length

    def effective_tape_count(self) -> int:
        return self.instance.m

    def accepts(self, inputs: tuple, budget: int) -> bool:
        verdict, trace = run_verifier(self.instance, list(inputs))
        return verdict is VerifierVerdict.ACCEPT and trace.total_reads <= budget

    def read_budget(self, word_length: int) -> int:
        """The documented instrumented cost bound, an admissible time budget."""
        h = self.instance.h
        per_tape = min(word_length, h * h)
        return 8 * self.instance.m * (h * h + h) + 8 * self.instance.m * per_tape


@dataclass(frozen=True)
class PrenexInstance:
    n: int
    prefix: QuantifierPrefix
    machine: TapeMachine
    k: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.k < 1:
            raise BadParameters("n and k must be positive")
        if len(self.prefix) != self.n:
            raise BadParameters("prefix length must equal the tape count")
        if self.machine.tape_count != self.n:
            raise BadParameters("machine tape count must equal n")


@dataclass(frozen=True)
class SolveBounds:
    """Word length and time budget; canonical bounds are tower-sized."""

    word_length: int
    time_budget: int
    canonical: bool = False

    @staticmethod
    def canonical_for(k: int, n: int, cap: ResourceCap = DEFAULT_CAP) -> "SolveBounds":
        size = tetra(k, n, cap)
        return SolveBounds(size, size, canonical=True)

    @staticmethod
    def override(word_length: int, time_budget: int) -> "SolveBounds":
        return SolveBounds(word_length, time_budget, canonical=False)


DEFAULT_BRANCH_LIMIT = 80_000_000


def evaluate_game(
    machine: TapeMachine,
    quantifiers: tuple[str, ...],
    bounds: SolveBounds,
    oracle: bool = False,
    use_effective: bool = True,
    branch_limit: int = DEFAULT_BRANCH_LIMIT,
) -> bool:
    """Game-tree evaluation of an arbitrary quantifier sequence.

    With oracle=True every branch is evaluated (no short-circuiting), which
    is the independent reference the pruned mode is tested against.
    Quantifiers over tapes the machine provably ignores collapse to a
    single representative word when use_effective is set.
    """
    length = bounds.word_length
    effective = machine.effective_tape_count() if use_effective else machine.tape_count
    effective = max(1, effective)
    per_quantifier = machine.domain_size(length)
    if per_quantifier ** min(effective, len(quantifiers)) > branch_limit:
        raise ResourceLimit("quantifier enumeration exceeds the branch limit")

    def domain(index: int) -> Iterable:
        if index > effective:
            return itertools.islice(machine.word_domain(length), 1)
        return machine.word_domain(length)

    def game(index: int, chosen: list) -> bool:
        if index > len(quantifiers):
            return machine.accepts(tuple(chosen), bounds.time_budget)
        branches = (game(index + 1, chosen + [w]) for w in domain(index))
        if quantifiers[index - 1] == EXISTS:
            if oracle:
                return any(list(branches))
            return any(branches)
        if oracle:
            return all(list(branches))
        return all(branches)

    return game(1, [])


def solve_prenex(
    inst: PrenexInstance,
    bounds: SolveBounds,
    oracle: bool = False,
    use_effective: bool = True,
    branch_limit: int = DEFAULT_BRANCH_LIMIT,
) -> bool:
    return evaluate_game(
        inst.machine, inst.prefix.quantifiers, bounds, oracle, use_effective, branch_limit
    )


def strictly_alternating_prefix(n: int) -> QuantifierPrefix:
    return QuantifierPrefix(tuple(EXISTS if i % 2 == 1 else FORALL for i in range(1, n + 1)))


def bounded_alternation_prefix(n: int, j: int) -> QuantifierPrefix:
    """Strict alternation through position j, constant thereafter; altern = j."""
    if not 1 <= j <= n:
        raise BadParameters("need 1 <= j <= n")
    head = [EXISTS if i % 2 == 1 else FORALL for i in range(1, j + 1)]
    return QuantifierPrefix(tuple(head + [head[-1]] * (n - j)))


def reduce_atm_to_prenex(
    atm: AtmSpec,
    word: str,
    f: Polynomial,
    g: Polynomial,
    k: int,
    p_runtime: Polynomial,
    h_override: int | None = None,
    cap: ResourceCap = DEFAULT_CAP,
) -> PrenexInstance:
    """Alternating-machine membership as a prenex instance.

    Uses m = max(f(|w|), g(|w|)) + 3 and n = p_runtime(2m) tapes with a
    strictly alternating prefix; the machine is the hop-checking
    interpreter, which only ever uses its first g(|w|) tapes.  The
    instance is equivalent to word membership at tower-sized bounds by
    construction; desk-scale checks use override bounds.
    """
    if not p_runtime.shaped:
        raise BadParameters("p_runtime must be shape-flagged (alpha*x^d + beta)")
    if len(word) < 1:
        raise BadParameters("input word must be non-empty")
    if f(len(word)) < len(word):
        raise BadParameters("the construction assumes f(x) >= x at the input length")
    m = max(f(len(word)), g(len(word))) + 3
    n = p_runtime(2 * m)
    vi = build_verifier(atm, word, f, g, k, n, h_override=h_override, cap=cap)
    return PrenexInstance(n, strictly_alternating_prefix(n), VerifierTapeMachine(vi), k)


def reduce_atm_to_prenex_bounded(
    atm: AtmSpec,
    word: str,
    f: Polynomial,
    k: int,
    p_runtime: Polynomial,
    j: int,
    h_override: int | None = None,
    cap: ResourceCap = DEFAULT_CAP,
) -> PrenexInstance:
    """Variant for j-alternation-bounded machines: altern(prefix) = j."""
    if not p_runtime.shaped:
        raise BadParameters("p_runtime must be shape-flagged (alpha*x^d + beta)")
    if j < 1:
        raise BadParameters("alternation bound j must be positive")
    if f(len(word)) < len(word):
        raise BadParameters("the construction assumes f(x) >= x at the input length")
    m = max(f(len(word)), j) + 3
    n = p_runtime(2 * m)
    vi = build_verifier(atm, word, f, Polynomial.of(j), k, n, h_override=h_override, cap=cap)
    return PrenexInstance(n, bounded_alternation_prefix(n, j), VerifierTapeMachine(vi), k)
