"""Fixed-length configuration words and trail-delimited path encodings.

A configuration (w, q, k) becomes a length-h word w''.q.w''' where the
state symbol sits immediately before the head cell and the padded tape
content fills the rest; a computation path is the concatenation of such
chunks, read from a tape up to the first trail symbol or h^2 symbols,
whichever comes first.  Words over the extended alphabet are tuples of
symbols, because state names need not be single characters.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .atm import AtmConfig, AtmSpec, atm_successors, canonical
from .errors import BadParameters, DoesNotFit, NotInC

Word = tuple[str, ...]

TRAIL = ">"


@dataclass(frozen=True)
class EncodingAlphabet:
    """Base symbols, state symbols, and the trail delimiter; pairwise disjoint."""

    sigma: frozenset[str]
    state_symbols: frozenset[str]
    trail: str = TRAIL

    def __post_init__(self) -> None:
        if self.sigma & self.state_symbols:
            raise BadParameters("base and state symbols must be disjoint")
        if self.trail in self.sigma or self.trail in self.state_symbols:
            raise BadParameters("trail symbol must be fresh")

    @property
    def extended(self) -> frozenset[str]:
        return self.sigma | self.state_symbols | {self.trail}


def alphabet_for(spec: AtmSpec, trail: str = TRAIL) -> EncodingAlphabet:
    return EncodingAlphabet(spec.alphabet, spec.states, trail)


class MalformedReason(enum.Enum):
    EMPTY = "Empty"
    BAD_CHUNK_LENGTH = "BadChunkLength"
    CHUNK_NOT_IN_C = "ChunkNotInC"
    NOT_A_SUCCESSOR = "NotASuccessor"


@dataclass(frozen=True)
class PathDecode:
    """Either a decoded path plus the consumed prefix length, or a reason."""

    configs: tuple[AtmConfig, ...] | None
    consumed: int
    reason: MalformedReason | None = None

    @property
    def ok(self) -> bool:
        return self.reason is None

    @staticmethod
    def malformed(reason: MalformedReason, consumed: int) -> "PathDecode":
        return PathDecode(None, consumed, reason)


def encode_config(config: AtmConfig, h: int, blank: str) -> Word:
    """Length-h word encoding `config`; DoesNotFit when h is too small.

    The head position needs h >= k + 2 (a non-empty tail must follow the
    state symbol) and the content needs h >= |w| + 1.
    """
    w, k = config.word, config.cell
    if h < k + 2 or h < len(w) + 1:
        raise DoesNotFit(f"configuration does not fit h={h}")
    content = w + blank * (h - 1 - len(w))
    return tuple(content[:k]) + (config.state,) + tuple(content[k:])


def is_config_word(word: Word, expected_h: int, alph: EncodingAlphabet) -> bool:
    """Membership in C: right length, one state symbol not at the end, no trail."""
    if len(word) != expected_h:
        return False
    state_positions = [i for i, s in enumerate(word) if s in alph.state_symbols]
    if len(state_positions) != 1 or state_positions[0] == len(word) - 1:
        return False
    return all(s in alph.sigma for i, s in enumerate(word) if i != state_positions[0])


def decode_config(word: Word, alph: EncodingAlphabet, blank: str) -> AtmConfig:
    """Inverse of encode_config; NotInC when the word is not a config word."""
    if not is_config_word(word, len(word), alph) or len(word) < 2:
        raise NotInC("not a configuration word")
    k = next(i for i, s in enumerate(word) if s in alph.state_symbols)
    content = "".join(word[:k]) + "".join(word[k + 1 :])
    return AtmConfig(canonical(content, blank), word[k], k)


def take_encoded_prefix(word: Word, h: int, alph: EncodingAlphabet) -> Word:
    """Symbols before the first trail, truncated at length h^2."""
    bound = h * h
    out: list[str] = []
    for s in word[:bound]:
        if s == alph.trail:
            break
        out.append(s)
    return tuple(out)


def decode_chunks(
    prefix: Word,
    h: int,
    spec: AtmSpec,
    alph: EncodingAlphabet,
    predecessor: AtmConfig | None = None,
) -> PathDecode:
    """Split an already-extracted prefix into h-chunks and decode the path.

    With a predecessor, the first chunk must additionally be one of its
    successors (the verifier's carried-configuration link).  Reasons are
    reported in the fixed order: emptiness, chunk length, C-membership,
    successorship.
    """
    if len(prefix) == 0:
        return PathDecode.malformed(MalformedReason.EMPTY, 0)
    if len(prefix) % h != 0:
        return PathDecode.malformed(MalformedReason.BAD_CHUNK_LENGTH, len(prefix))
    configs: list[AtmConfig] = []
    previous = predecessor
    for start in range(0, len(prefix), h):
        chunk = prefix[start : start + h]
        if not is_config_word(chunk, h, alph):
            return PathDecode.malformed(MalformedReason.CHUNK_NOT_IN_C, len(prefix))
        config = decode_config(chunk, alph, spec.blank)
        if previous is not None and config not in atm_successors(spec, previous):
            return PathDecode.malformed(MalformedReason.NOT_A_SUCCESSOR, len(prefix))
        configs.append(config)
        previous = config
    return PathDecode(tuple(configs), len(prefix))


def decode_path(word: Word, h: int, spec: AtmSpec, alph: EncodingAlphabet | None = None) -> PathDecode:
    """Prefix extraction followed by chunk decoding."""
    alph = alph or alphabet_for(spec)
    return decode_chunks(take_encoded_prefix(word, h, alph), h, spec, alph)


def encode_path(path: list[AtmConfig], h: int, blank: str) -> Word:
    """Concatenation of the chunk encodings of a configuration sequence."""
    out: list[str] = []
    for config in path:
        out.extend(encode_config(config, h, blank))
    return tuple(out)
