"""JSON machine and tiling-system files, plus the small text formats.

All symbols are single-codepoint strings; ">" is reserved as the trail
delimiter in path text files.  Machines list only their internal
transition rows; the fixed terminal rows are implied.
"""

from __future__ import annotations

import json
from typing import Any

from .atm import AtmSpec
from .codec import Word
from .dtm import DtmSpec, JumpMove, Move, OrdinaryMove
from .errors import FormatError
from .prenex import QuantifierPrefix
from .tiling import MultiTilingSystem


def _require(data: dict, key: str) -> Any:
    if key not in data:
        raise FormatError(f"missing field {key!r}")
    return data[key]


def load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError(f"{path}: top-level value must be an object")
    return data


def dtm_from_dict(data: dict) -> DtmSpec:
    if data.get("type") != "dtm":
        raise FormatError("machine file must declare \"type\": \"dtm\"")
    delta: dict[tuple[str, str], Move] = {}
    for entry in _require(data, "delta"):
        state, read = _require(entry, "state"), _require(entry, "read")
        if "jump" in entry:
            delta[(state, read)] = JumpMove(_require(entry, "next"), int(entry["jump"]))
        else:
            delta[(state, read)] = OrdinaryMove(
                _require(entry, "next"), _require(entry, "write"), int(_require(entry, "dir"))
            )
    try:
        return DtmSpec(
            tape_count=int(_require(data, "tapes")),
            alphabet=frozenset(_require(data, "alphabet")),
            blank=_require(data, "blank"),
            states=frozenset(_require(data, "states")),
            qinit=_require(data, "init"),
            qacc=_require(data, "accept"),
            qrej=_require(data, "reject"),
            delta=delta,
        )
    except Exception as exc:
        raise FormatError(f"bad machine description: {exc}") from exc


def dtm_to_dict(spec: DtmSpec) -> dict:
    delta = []
    for (state, read), move in sorted(spec.delta.items()):
        if state in (spec.qacc, spec.qrej):
            continue
        if isinstance(move, JumpMove):
            delta.append({"state": state, "read": read, "jump": move.target_tape, "next": move.next_state})
        else:
            delta.append(
                {"state": state, "read": read, "write": move.write, "dir": move.direction, "next": move.next_state}
            )
    return {
        "type": "dtm",
        "tapes": spec.tape_count,
        "alphabet": sorted(spec.alphabet),
        "blank": spec.blank,
        "states": sorted(spec.states),
        "init": spec.qinit,
        "accept": spec.qacc,
        "reject": spec.qrej,
        "delta": delta,
    }


def atm_from_dict(data: dict) -> AtmSpec:
    if data.get("type") != "atm":
        raise FormatError("machine file must declare \"type\": \"atm\"")
    delta: dict[tuple[str, str], frozenset[tuple[str, str, int]]] = {}
    for entry in _require(data, "delta"):
        state, read = _require(entry, "state"), _require(entry, "read")
        triples = frozenset((q, b, int(i)) for q, b, i in _require(entry, "triples"))
        delta[(state, read)] = triples
    try:
        return AtmSpec(
            alphabet=frozenset(_require(data, "alphabet")),
            blank=_require(data, "blank"),
            existential=frozenset(_require(data, "existential")),
            universal=frozenset(_require(data, "universal")),
            qinit=_require(data, "init"),
            qacc=_require(data, "accept"),
            qrej=_require(data, "reject"),
            delta=delta,
        )
    except Exception as exc:
        raise FormatError(f"bad machine description: {exc}") from exc


def atm_to_dict(spec: AtmSpec) -> dict:
    delta = []
    for (state, read), triples in sorted(spec.delta.items()):
        if state in (spec.qacc, spec.qrej):
            continue
        delta.append({"state": state, "read": read, "triples": sorted(triples)})
    return {
        "type": "atm",
        "alphabet": sorted(spec.alphabet),
        "blank": spec.blank,
        "existential": sorted(spec.existential),
        "universal": sorted(spec.universal),
        "init": spec.qinit,
        "accept": spec.qacc,
        "reject": spec.qrej,
        "delta": delta,
    }


def tiling_from_dict(data: dict) -> MultiTilingSystem:
    try:
        return MultiTilingSystem(
            tiles=frozenset(_require(data, "tiles")),
            initial=frozenset(_require(data, "initial")),
            accepting=frozenset(_require(data, "accepting")),
            hori=frozenset(tuple(p) for p in _require(data, "H")),
            vert=frozenset(tuple(p) for p in _require(data, "V")),
            multi=frozenset(tuple(p) for p in _require(data, "M")),
            dimension=int(_require(data, "n")),
            k=int(data.get("k", 1)),
        )
    except FormatError:
        raise
    except Exception as exc:
        raise FormatError(f"bad tiling system: {exc}") from exc


def tiling_to_dict(sys: MultiTilingSystem) -> dict:
    return {
        "tiles": sorted(str(t) for t in sys.tiles),
        "initial": sorted(str(t) for t in sys.initial),
        "accepting": sorted(str(t) for t in sys.accepting),
        "H": sorted([str(a), str(b)] for a, b in sys.hori),
        "V": sorted([str(a), str(b)] for a, b in sys.vert),
        "M": sorted([str(a), str(b)] for a, b in sys.multi),
        "n": sys.dimension,
        "k": sys.k,
    }


def parse_prefix(text: str) -> QuantifierPrefix:
    try:
        return QuantifierPrefix.parse(text)
    except Exception as exc:
        raise FormatError(f"bad quantifier prefix {text!r}: {exc}") from exc


def parse_path_word(text: str) -> Word:
    """One symbol per character; whitespace-separated tokens allow long symbols."""
    text = text.strip("\n")
    if " " in text or "\t" in text:
        return tuple(text.split())
    return tuple(text)


def parse_polynomial(text: str):
    from .arith import Polynomial

    try:
        coefficients = tuple(int(c) for c in text.split(","))
        return Polynomial(coefficients)
    except Exception as exc:
        raise FormatError(f"bad polynomial {text!r}: {exc}") from exc
