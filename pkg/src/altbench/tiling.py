"""Multi-tiling systems, their solvers, and the machine-to-tiling reduction.

A tiling stacks n grid layers; within a layer the first coordinate steps
through H and the second through V, and aligned cells of adjacent layers
must match through M.  The quantified problem alternates over initial rows
drawn from the initial tile set.  The reduction lays out a machine run as
a time-space diagram per tape: rows are times, columns are cells, and the
M chains carry the head between layers on jump moves and raise the accept
bit to the top layer where the accepting tile set can see it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable

from .arith import DEFAULT_CAP, ResourceCap, tetra
from .dtm import DtmSpec, JumpMove
from .errors import BadParameters, ResourceLimit, ShapeMismatch
from .prenex import DtmTapeMachine, PrenexInstance, QuantifierPrefix, SolveBounds

Tile = Hashable
Row = tuple  # s tiles
Layer = tuple  # s rows
Tiling = tuple  # n layers; tiling[l][i][j] = f_{l+1}(i, j)


@dataclass(frozen=True)
class MultiTilingSystem:
    tiles: frozenset
    initial: frozenset
    accepting: frozenset
    hori: frozenset
    vert: frozenset
    multi: frozenset
    dimension: int
    k: int = 1

    def __post_init__(self) -> None:
        if self.dimension < 1 or self.k < 1:
            raise BadParameters("dimension and k must be positive")
        if not self.initial <= self.tiles or not self.accepting <= self.tiles:
            raise BadParameters("initial and accepting tiles must be tile types")
        for rel in (self.hori, self.vert, self.multi):
            if any(a not in self.tiles or b not in self.tiles for a, b in rel):
                raise BadParameters("relations must be over the tile types")

    def initial_sorted(self) -> list:
        return sorted(self.initial, key=repr)

    def tiles_sorted(self) -> list:
        return sorted(self.tiles, key=repr)


@dataclass(frozen=True)
class GridSide:
    """Side length of the square grid; canonical sides are tower-sized."""

    side: int
    canonical: bool = False

    def __post_init__(self) -> None:
        if self.side < 1:
            raise BadParameters("grid side must be positive")

    @staticmethod
    def canonical_for(k: int, n: int, cap: ResourceCap = DEFAULT_CAP) -> "GridSide":
        return GridSide(tetra(k, n, cap), canonical=True)


@dataclass(frozen=True)
class ValidationReport:
    """Failed conditions, each with one witness position."""

    failures: tuple[tuple[str, tuple], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def _check_shape(sys: MultiTilingSystem, side: GridSide, tiling: Tiling) -> None:
    s = side.side
    if len(tiling) != sys.dimension:
        raise ShapeMismatch(f"expected {sys.dimension} layers")
    for layer in tiling:
        if len(layer) != s or any(len(row) != s for row in layer):
            raise ShapeMismatch(f"each layer must be {s}x{s}")


def validate_tiling(sys: MultiTilingSystem, side: GridSide, tiling: Tiling) -> ValidationReport:
    """Check maps, init, acc, hori, vert and multi; report one witness each."""
    _check_shape(sys, side, tiling)
    s = side.side
    failures: list[tuple[str, tuple]] = []

    def witness(name: str, pos: tuple) -> None:
        if not any(f[0] == name for f in failures):
            failures.append((name, pos))

    for l, layer in enumerate(tiling, start=1):
        for i in range(s):
            for j in range(s):
                if layer[i][j] not in sys.tiles:
                    witness("maps", (l, i, j))
    for l, layer in enumerate(tiling, start=1):
        for j in range(s):
            if layer[0][j] not in sys.initial:
                witness("init", (l, 0, j))
    if not any(tiling[sys.dimension - 1][s - 1][j] in sys.accepting for j in range(s)):
        witness("acc", (sys.dimension, s - 1))
    for l, layer in enumerate(tiling, start=1):
        for i in range(s - 1):
            for j in range(s):
                if (layer[i][j], layer[i + 1][j]) not in sys.hori:
                    witness("hori", (l, i, j))
    for l, layer in enumerate(tiling, start=1):
        for i in range(s):
            for j in range(s - 1):
                if (layer[i][j], layer[i][j + 1]) not in sys.vert:
                    witness("vert", (l, i, j))
    for l in range(sys.dimension - 1):
        for i in range(s):
            for j in range(s):
                if (tiling[l][i][j], tiling[l + 1][i][j]) not in sys.multi:
                    witness("multi", (l + 1, i, j))
    return ValidationReport(tuple(failures))


def _check_init_rows(sys: MultiTilingSystem, side: GridSide, rows: list) -> None:
    s = side.side
    if len(rows) != sys.dimension:
        raise ShapeMismatch(f"expected {sys.dimension} initial rows")
    for row in rows:
        if len(row) != s:
            raise ShapeMismatch(f"initial rows must have length {s}")
        if any(t not in sys.initial for t in row):
            raise ShapeMismatch("initial rows must use initial tiles")


MAX_FREE_CELLS = 400


@lru_cache(maxsize=64)
def _search_tables(sys: MultiTilingSystem):
    """Integer-indexed relations, cached per system for repeated searches."""
    tiles = sys.tiles_sorted()
    index = {t: i for i, t in enumerate(tiles)}
    hori_succ: list[tuple[int, ...]] = [() for _ in tiles]
    buckets: dict[int, list[int]] = {}
    for a, b in sys.hori:
        buckets.setdefault(index[a], []).append(index[b])
    for a_id, succ in buckets.items():
        hori_succ[a_id] = tuple(sorted(succ))
    vert = frozenset((index[a], index[b]) for a, b in sys.vert)
    multi = frozenset((index[a], index[b]) for a, b in sys.multi)
    accepting = frozenset(index[t] for t in sys.accepting)
    return index, tuple(hori_succ), vert, multi, accepting


def exists_tiling(
    sys: MultiTilingSystem,
    side: GridSide,
    fixed_init_rows: list,
    node_limit: int = 2_000_000,
) -> bool:
    """Backtracking search for a valid tiling with the given initial rows.

    Cells are filled row-major with layers innermost; candidates come from
    the H-successors of the cell below and are pruned against the V and M
    neighbours; acceptance is checked once the last row is complete.
    """
    _check_init_rows(sys, side, fixed_init_rows)
    s, n = side.side, sys.dimension
    if n * (s - 1) * s > MAX_FREE_CELLS:
        raise ResourceLimit("tiling grid is beyond the desk-scale search limit")
    index, hori_succ, vert, multi, accepting = _search_tables(sys)
    grid = [[[-1] * s for _ in range(s)] for _ in range(n)]
    for l in range(n):
        for j in range(s):
            grid[l][0][j] = index[fixed_init_rows[l][j]]
    for l in range(n):
        for j in range(s - 1):
            if (grid[l][0][j], grid[l][0][j + 1]) not in vert:
                return False
    for l in range(n - 1):
        for j in range(s):
            if (grid[l][0][j], grid[l + 1][0][j]) not in multi:
                return False
    if s == 1:
        return any(grid[n - 1][s - 1][j] in accepting for j in range(s))

    cells = [(i, j, l) for i in range(1, s) for j in range(s) for l in range(n)]
    nodes = 0

    def fill(pos: int) -> bool:
        nonlocal nodes
        if pos == len(cells):
            return any(grid[n - 1][s - 1][j] in accepting for j in range(s))
        i, j, l = cells[pos]
        for tile in hori_succ[grid[l][i - 1][j]]:
            nodes += 1
            if nodes > node_limit:
                raise ResourceLimit("tiling search exceeded the node limit")
            if j > 0 and (grid[l][i][j - 1], tile) not in vert:
                continue
            if l > 0 and (grid[l - 1][i][j], tile) not in multi:
                continue
            grid[l][i][j] = tile
            if fill(pos + 1):
                return True
            grid[l][i][j] = -1
        return False

    return fill(0)


def naive_exists_tiling(sys: MultiTilingSystem, side: GridSide, fixed_init_rows: list) -> bool:
    """Full enumeration over all assignments; the reference oracle."""
    _check_init_rows(sys, side, fixed_init_rows)
    s, n = side.side, sys.dimension
    free = n * (s - 1) * s
    tiles = sys.tiles_sorted()
    if len(tiles) ** free > 40_000_000:
        raise ResourceLimit("naive tiling enumeration is infeasible here")
    for assignment in itertools.product(tiles, repeat=free):
        it = iter(assignment)
        tiling = tuple(
            tuple(
                tuple(fixed_init_rows[l][j] if i == 0 else next(it) for j in range(s))
                for i in range(s)
            )
            for l in range(n)
        )
        if validate_tiling(sys, side, tiling).ok:
            return True
    return False


def solve_quantified_tiling(
    sys: MultiTilingSystem,
    prefix: QuantifierPrefix,
    side: GridSide,
    oracle: bool = False,
    branch_limit: int = 80_000_000,
) -> bool:
    """Evaluate Q1 w1 in T0^s ... Qn wn in T0^s : a tiling with those rows exists."""
    if len(prefix) != sys.dimension:
        raise BadParameters("prefix length must equal the system dimension")
    s = side.side
    per_row = len(sys.initial) ** s
    if per_row ** sys.dimension > branch_limit:
        raise ResourceLimit("quantified row enumeration exceeds the branch limit")
    rows = list(itertools.product(sys.initial_sorted(), repeat=s))

    def game(index: int, chosen: list) -> bool:
        if index > sys.dimension:
            return exists_tiling(sys, side, chosen)
        branches = (game(index + 1, chosen + [row]) for row in rows)
        if prefix.quantifiers[index - 1] == "E":
            return any(list(branches)) if oracle else any(branches)
        return all(list(branches)) if oracle else all(branches)

    return game(1, [])


# ---------------------------------------------------------------------------
# Reduction: prenex instances over jump-only machines to multi-tiling.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InputTile:
    """Initial-row tile: one per tape symbol."""

    symbol: str

    def __repr__(self) -> str:
        return f"In({self.symbol})"


@dataclass(frozen=True)
class SimTile:
    """Simulation tile: cell content at one time on one layer.

    slot = (state, source layer, target layer) marks a jump crossing this
    column during the step into this row; acc_in is the accept bit arriving
    from the layer below; genesis marks the unique start tile, which no
    tile may precede within a row.
    """

    symbol: str
    head: str | None
    layer: int
    slot: tuple[str, int, int] | None
    acc_in: int
    genesis: bool = False

    def __repr__(self) -> str:
        head = self.head or "-"
        slot = "-" if self.slot is None else f"{self.slot[0]}:{self.slot[1]}>{self.slot[2]}"
        gen = "*" if self.genesis else ""
        return f"Sim({self.symbol},{head},L{self.layer},{slot},a{self.acc_in}{gen})"


def _acc_out(tile: SimTile, qacc: str) -> int:
    return 1 if tile.acc_in == 1 or tile.head == qacc else 0


def _is_jump_only(spec: DtmSpec) -> bool:
    return all(isinstance(move, JumpMove) for move in spec.delta.values())


def _sim_tiles(spec: DtmSpec) -> list[SimTile]:
    n = spec.tape_count
    jump_image = sorted(
        {(move.next_state, move.target_tape) for move in spec.delta.values() if isinstance(move, JumpMove)}
    )
    genesis_rows = sorted(
        (a, move.next_state, move.target_tape)
        for (q, a), move in spec.delta.items()
        if q == spec.qinit and isinstance(move, JumpMove)
    )
    tiles: list[SimTile] = []
    for layer in range(1, n + 1):
        accs = (0,) if layer == 1 else (0, 1)
        for symbol in sorted(spec.alphabet):
            for acc in accs:
                tiles.append(SimTile(symbol, None, layer, None, acc))
                for q2, tgt in jump_image:
                    for src in range(1, n + 1):
                        slot = (q2, src, tgt)
                        if layer == src:
                            head = q2 if src == tgt else None
                            tiles.append(SimTile(symbol, head, layer, slot, acc))
                            if (
                                layer == 1
                                and (symbol, q2, tgt) in genesis_rows
                                and acc == 0
                            ):
                                tiles.append(SimTile(symbol, head, layer, slot, acc, genesis=True))
                        elif layer == tgt:
                            tiles.append(SimTile(symbol, q2, layer, slot, acc))
                        else:
                            tiles.append(SimTile(symbol, None, layer, slot, acc))
    return tiles


def _h_allows(spec: DtmSpec, below: Tile, above: Tile) -> bool:
    """Time-step legality at one cell."""
    if isinstance(above, InputTile):
        return False
    assert isinstance(above, SimTile)
    if isinstance(below, InputTile):
        if above.symbol != below.symbol:
            return False
        if above.genesis:
            move = spec.delta[(spec.qinit, below.symbol)]
            assert isinstance(move, JumpMove)
            return above.slot == (move.next_state, 1, move.target_tape)
        if above.slot is None:
            return above.head is None
        q2, src, tgt = above.slot
        if above.layer == src:
            return False  # a step-0 departure must carry the genesis marker
        return True  # arrival or pass-through above the input row
    assert isinstance(below, SimTile)
    if above.genesis or above.layer != below.layer or above.symbol != below.symbol:
        return False
    if below.head is not None:
        move = spec.delta[(below.head, below.symbol)]
        assert isinstance(move, JumpMove)
        return above.slot == (move.next_state, below.layer, move.target_tape)
    if above.slot is None:
        return above.head is None
    q2, src, tgt = above.slot
    return above.layer != src  # departures need the head below


def _v_allows(left: Tile, right: Tile) -> bool:
    if isinstance(left, InputTile) and isinstance(right, InputTile):
        return True
    if isinstance(left, SimTile) and isinstance(right, SimTile):
        return not right.genesis  # nothing may sit before the start marker
    return False


def _m_allows(qacc: str, lower: Tile, upper: Tile) -> bool:
    if isinstance(lower, InputTile) and isinstance(upper, InputTile):
        return True
    if isinstance(lower, SimTile) and isinstance(upper, SimTile):
        return (
            upper.layer == lower.layer + 1
            and upper.slot == lower.slot
            and upper.acc_in == _acc_out(lower, qacc)
        )
    return False


def reduce_prenex_to_tiling(
    inst: PrenexInstance, bounds: SolveBounds
) -> tuple[MultiTilingSystem, QuantifierPrefix, GridSide]:
    """Compile a prenex instance over a jump-only machine into multi-tiling.

    Layer l is tape l's time-space diagram on an s x s grid with
    s = time_budget + 1; quantified initial rows play the quantified input
    words (a jump-only machine's head never leaves cell 0, so only the
    first cell of either carries information and surplus cells are inert).
    The tile set and relations depend only on the machine description.

    Machines with ordinary write-and-move transitions are rejected: the
    tiling conditions leave the outermost column edges unconstrained, so
    horizontally-signalled head motion could be forged there and the
    construction could not honour the equivalence contract.
    """
    machine = inst.machine
    if not isinstance(machine, DtmTapeMachine):
        raise BadParameters("only explicit deterministic machines can be compiled to tilings")
    spec = machine.spec
    if not _is_jump_only(spec):
        raise BadParameters(
            "the tiling compilation supports jump-only machines; ordinary moves "
            "cannot be anchored by the boundary-free tiling conditions"
        )
    if bounds.word_length < 1:
        raise BadParameters("word length must be at least 1")
    if bounds.time_budget < 1:
        raise BadParameters("time budget must be at least 1")
    side = GridSide(bounds.time_budget + 1)
    input_tiles = [InputTile(a) for a in sorted(spec.alphabet)]
    sim_tiles = _sim_tiles(spec)
    tiles: list[Tile] = list(input_tiles) + list(sim_tiles)
    hori = frozenset(
        (b, a) for b in tiles for a in tiles if _h_allows(spec, b, a)
    )
    vert = frozenset((l, r) for l in tiles for r in tiles if _v_allows(l, r))
    multi = frozenset(
        (lo, up) for lo in tiles for up in tiles if _m_allows(spec.qacc, lo, up)
    )
    accepting = frozenset(
        t
        for t in sim_tiles
        if t.layer == spec.tape_count and (t.acc_in == 1 or t.head == spec.qacc)
    )
    system = MultiTilingSystem(
        tiles=frozenset(tiles),
        initial=frozenset(input_tiles),
        accepting=accepting,
        hori=hori,
        vert=vert,
        multi=multi,
        dimension=spec.tape_count,
        k=inst.k,
    )
    return system, inst.prefix, side


def row_for_word(word: str, side: GridSide, blank: str) -> tuple:
    """The initial row playing a machine input word (blank-padded)."""
    padded = word + blank * max(0, side.side - len(word))
    return tuple(InputTile(a) for a in padded[: side.side])
