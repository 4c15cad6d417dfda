"""Macrostep interpreter for the constructed hop-checking machine.

The machine consumes one quantified tape per macrostep.  Odd macrosteps
demand an existential hop (continuing the carried configuration, or
anchored at the initial configuration on macrostep 1) and reject anything
else; even macrosteps demand a universal hop dually, but accept every
malformed or off-shape input, since such words must not count against a
universal quantifier.  Only the first m tapes are ever touched and only a
prefix of at most h^2 symbols of each is examined; instrumentation
counters make those facts, and the overall read budget, testable.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .arith import DEFAULT_CAP, Polynomial, ResourceCap, tetra
from .atm import (
    AtmConfig,
    AtmSpec,
    atm_successors,
    initial_config,
    is_existential_hop,
    is_universal_hop,
)
from .codec import (
    EncodingAlphabet,
    MalformedReason,
    Word,
    alphabet_for,
    decode_config,
    encode_config,
    is_config_word,
)
from .errors import ArityMismatch, BadParameters


class Verdict(enum.Enum):
    ACCEPT = "Accept"
    REJECT = "Reject"


@dataclass(frozen=True)
class MacrostepRecord:
    """What one macrostep did: prefix examined, outcome, and read counters."""

    index: int
    chars_read: Word
    outcome: str  # "accept" | "reject" | "continue"
    carried: Word | None
    input_reads: int
    carried_reads: int
    work_reads: int
    chunk_validations: int


@dataclass(frozen=True)
class VerifierTrace:
    records: tuple[MacrostepRecord, ...]
    h_override: int | None = None

    @property
    def total_reads(self) -> int:
        return sum(r.input_reads + r.carried_reads + r.work_reads for r in self.records)

    def render(self) -> str:
        lines = []
        for r in self.records:
            reads = r.input_reads + r.carried_reads + r.work_reads
            lines.append(f"macrostep={r.index} verdict={r.outcome} reads={reads}")
        return "\n".join(lines)


@dataclass(frozen=True)
class VerifierInstance:
    """Validated parameters of the constructed machine."""

    atm: AtmSpec
    word: str
    f: Polynomial
    g: Polynomial
    k: int
    tape_count: int
    m: int
    h: int
    h_overridden: bool
    alph: EncodingAlphabet


def build_verifier(
    atm: AtmSpec,
    word: str,
    f: Polynomial,
    g: Polynomial,
    k: int,
    tape_count: int,
    h_override: int | None = None,
    cap: ResourceCap = DEFAULT_CAP,
    trail: str = ">",
) -> VerifierInstance:
    """Validate parameters and derive m = g(|w|) and h = tetra(k, f(|w|)).

    The tower for h is only materialised under the bit cap unless an
    explicit override is given; h must leave room to encode the initial
    configuration (h >= |w| + 1).
    """
    if len(word) < 1:
        raise BadParameters("input word must be non-empty")
    if any(c not in atm.alphabet for c in word):
        raise BadParameters("input word uses symbols outside the machine alphabet")
    if word.endswith(atm.blank):
        raise BadParameters("input word must be canonical (no trailing blank)")
    if k < 1:
        raise BadParameters("tower height k must be positive")
    if f(len(word)) < 1:
        raise BadParameters("f(|w|) must be at least 1")
    m = g(len(word))
    if m < 1:
        raise BadParameters("g(|w|) must be at least 1")
    if tape_count < m + 3:
        raise BadParameters(f"need n >= m + 3 tapes, got n={tape_count}, m={m}")
    if h_override is not None:
        if h_override < 2:
            raise BadParameters("h override must be at least 2")
        h = h_override
    else:
        h = tetra(k, f(len(word)), cap)
    if h < len(word) + 1:
        raise BadParameters(f"h={h} cannot encode the initial configuration of a length-{len(word)} word")
    return VerifierInstance(
        atm=atm,
        word=word,
        f=f,
        g=g,
        k=k,
        tape_count=tape_count,
        m=m,
        h=h,
        h_overridden=h_override is not None,
        alph=alphabet_for(atm, trail),
    )


def _extract_prefix(vi: VerifierInstance, tape: Word) -> tuple[Word, int]:
    """Scan at most min(|tape|, h^2) cells, stopping at the trail symbol."""
    bound = min(len(tape), vi.h * vi.h)
    reads = 0
    out: list[str] = []
    for j in range(bound):
        reads += 1
        symbol = tape[j]
        if symbol == vi.alph.trail:
            break
        out.append(symbol)
    return tuple(out), reads


@dataclass
class _StepScan:
    """Decoded chunks of one macrostep plus its read accounting."""

    configs: list[AtmConfig] = field(default_factory=list)
    malformed: MalformedReason | None = None
    anchored: bool = True
    carried_reads: int = 0
    work_reads: int = 0
    chunk_validations: int = 0


def _scan_macrostep(
    vi: VerifierInstance, index: int, prefix: Word, carried: AtmConfig | None
) -> _StepScan:
    """Chunk, decode and link-check one macrostep's prefix, counting reads.

    Reads are charged per h-cell pass: one per chunk for C-membership and
    decoding, one per successor link (against the carried configuration's
    cells for the first link of a continuation macrostep), one for the
    anchor comparison on macrostep 1, and one symbol per decoded
    configuration for the hop-kind inspection done by the caller.
    """
    h = vi.h
    scan = _StepScan()
    if len(prefix) == 0:
        scan.malformed = MalformedReason.EMPTY
        return scan
    if len(prefix) % h != 0:
        scan.malformed = MalformedReason.BAD_CHUNK_LENGTH
        return scan
    previous = carried
    for start in range(0, len(prefix), h):
        chunk = prefix[start : start + h]
        scan.chunk_validations += 1
        scan.work_reads += h
        if not is_config_word(chunk, h, vi.alph):
            scan.malformed = MalformedReason.CHUNK_NOT_IN_C
            return scan
        config = decode_config(chunk, vi.alph, vi.atm.blank)
        if start == 0 and index == 1:
            scan.work_reads += h
            if config != initial_config(vi.atm, vi.word):
                scan.anchored = False
        if previous is not None:
            if start == 0 and carried is not None:
                scan.carried_reads += h
            else:
                scan.work_reads += h
            if config not in atm_successors(vi.atm, previous):
                scan.malformed = MalformedReason.NOT_A_SUCCESSOR
                return scan
        scan.configs.append(config)
        previous = config
    return scan


def run_verifier(vi: VerifierInstance, inputs: list[Word]) -> tuple[Verdict, VerifierTrace]:
    """Execute macrosteps 1..m on tapes 1..m, ignoring the remaining tapes."""
    if len(inputs) != vi.tape_count:
        raise ArityMismatch(f"expected {vi.tape_count} input words, got {len(inputs)}")
    records: list[MacrostepRecord] = []
    h_override = vi.h if vi.h_overridden else None
    carried: AtmConfig | None = None

    def finish(verdict: Verdict) -> tuple[Verdict, VerifierTrace]:
        return verdict, VerifierTrace(tuple(records), h_override)

    for index in range(1, vi.m + 1):
        prefix, input_reads = _extract_prefix(vi, inputs[index - 1])
        scan = _scan_macrostep(vi, index, prefix, carried)
        path = ([carried] if carried is not None else []) + scan.configs
        hop_work = len(path)  # one state inspection per configuration

        def record(outcome: str, next_carried: AtmConfig | None = None) -> None:
            records.append(
                MacrostepRecord(
                    index=index,
                    chars_read=prefix,
                    outcome=outcome,
                    carried=(
                        encode_config(next_carried, vi.h, vi.atm.blank)
                        if next_carried is not None
                        else None
                    ),
                    input_reads=input_reads,
                    carried_reads=scan.carried_reads,
                    work_reads=scan.work_reads + hop_work,
                    chunk_validations=scan.chunk_validations,
                )
            )

        well_formed = scan.malformed is None and scan.anchored
        last = path[-1] if path else None
        if index % 2 == 1:
            hop = well_formed and is_existential_hop(vi.atm, path)
            if hop and last.state == vi.atm.qacc:
                record("accept")
                return finish(Verdict.ACCEPT)
            if hop and index < vi.m and last.state in vi.atm.universal:
                record("continue", last)
                carried = last
                continue
            record("reject")
            return finish(Verdict.REJECT)
        hop = well_formed and is_universal_hop(vi.atm, path)
        if hop and last.state == vi.atm.qrej:
            record("reject")
            return finish(Verdict.REJECT)
        if hop and last.state in vi.atm.existential:
            if index == vi.m:
                record("reject")
                return finish(Verdict.REJECT)
            record("continue", last)
            carried = last
            continue
        record("accept")
        return finish(Verdict.ACCEPT)
    raise AssertionError("macrostep loop must settle at index m")


# ---------------------------------------------------------------------------
# Quantified acceptance over the verifier, for the equivalence suites.
# ---------------------------------------------------------------------------


def tail_padding(vi: VerifierInstance) -> list[Word]:
    """Empty words for the ignored tapes m+1..n."""
    return [() for _ in range(vi.tape_count - vi.m)]


def enumerate_words(vi: VerifierInstance, length: int):
    """All words of the given length over the extended alphabet, sorted."""
    symbols = sorted(vi.alph.extended)
    return itertools.product(symbols, repeat=length)


def quantified_accepts_bruteforce(vi: VerifierInstance, prune: bool = True) -> bool:
    """Evaluate E w1 A w2 ... over full length-h^2 words by running the verifier.

    Quantifier i is existential for odd i, universal for even i, over all
    words of length h^2 on the first m tapes; the remaining tapes carry
    empty words (they are never examined).  Short-circuiting may be
    disabled to force the exhaustive evaluation.
    """
    length = vi.h * vi.h

    def game(index: int, chosen: list[Word]) -> bool:
        if index > vi.m:
            verdict, _ = run_verifier(vi, chosen + tail_padding(vi))
            return verdict is Verdict.ACCEPT
        results = (game(index + 1, chosen + [w]) for w in enumerate_words(vi, length))
        if index % 2 == 1:
            if prune:
                return any(results)
            outcomes = list(results)
            return any(outcomes)
        if prune:
            return all(results)
        outcomes = list(results)
        return all(outcomes)

    return game(1, [])


def quantified_residual_accepts(vi: VerifierInstance, fixed: list[Word]) -> bool:
    """Quantified acceptance with the first len(fixed) tapes pinned."""
    length = vi.h * vi.h

    def game(index: int, chosen: list[Word]) -> bool:
        if index > vi.m:
            verdict, _ = run_verifier(vi, chosen + tail_padding(vi))
            return verdict is Verdict.ACCEPT
        if index <= len(fixed):
            return game(index + 1, chosen + [fixed[index - 1]])
        results = (game(index + 1, chosen + [w]) for w in enumerate_words(vi, length))
        return any(results) if index % 2 == 1 else all(results)

    return game(1, [])


def _encodable(vi: VerifierInstance, config: AtmConfig) -> bool:
    return config.cell + 2 <= vi.h and len(config.word) + 1 <= vi.h


def _walks_from(vi: VerifierInstance, anchor: AtmConfig, max_new: int):
    """Nonempty successor walks of encodable configurations from `anchor`."""
    stack: list[list[AtmConfig]] = [[anchor]]
    while stack:
        walk = stack.pop()
        if len(walk) > 1:
            yield walk
        if len(walk) - 1 < max_new:
            for nxt in sorted(
                atm_successors(vi.atm, walk[-1]), key=lambda c: (c.word, c.state, c.cell)
            ):
                if _encodable(vi, nxt):
                    stack.append(walk + [nxt])


def quantified_accepts_structured(vi: VerifierInstance) -> bool:
    """Hop-window game evaluation, equivalent to the word quantification.

    Every length-h^2 word either fails to decode (odd macrosteps reject it,
    even macrosteps accept it, so it never decides the game) or decodes to
    a successor walk of encodable configurations, and conversely every such
    walk has an encoding word; so quantifying over walks is exact while
    staying feasible for h > 2.
    """
    start = initial_config(vi.atm, vi.word)
    if not _encodable(vi, start):
        return False

    def value(index: int, anchor: AtmConfig) -> bool:
        window = vi.h - 1 if index == 1 else vi.h
        if index % 2 == 1:
            for walk in _walks_from(vi, anchor, window):
                if not is_existential_hop(vi.atm, walk):
                    continue
                last = walk[-1]
                if last.state == vi.atm.qacc:
                    return True
                if last.state in vi.atm.universal and index < vi.m and value(index + 1, last):
                    return True
            return False
        for walk in _walks_from(vi, anchor, window):
            if not is_universal_hop(vi.atm, walk):
                continue
            last = walk[-1]
            if last.state == vi.atm.qrej:
                return False
            if last.state in vi.atm.existential and (
                index == vi.m or not value(index + 1, last)
            ):
                return False
        return True

    return value(1, start)
