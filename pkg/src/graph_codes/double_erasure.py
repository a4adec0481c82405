"""Binary double-node-erasure codes for a prime number of nodes.

Three codes share one family of constraints:

* ``cu1``: undirected, neighborhood sets S and diagonal sets D, decoded on
  the lower triangle by two loops (ids I and II).
* ``cu2``: undirected, S' and D', decoded on the upper triangle by loops
  III and IV.
* ``cg4``: directed and optimal, the down orientation of S/D plus the up
  orientation of S'/D'. All four loops run together and hand self loops to
  each other, since a self loop belongs to both orientations.

Information lives on the edges among the first n-2 nodes; nodes n-2 and n-1
hold redundancy only.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .base import GraphCode, edge_sets_matrix
from .exceptions import (
    EncodingError,
    ErasureBudgetExceededError,
    InvalidParametersError,
    NotACodewordError,
    PeelingStalledError,
    SchedulerDeadlockError,
)
from .gf2m import GF2
from .graph import (
    Edge,
    EdgeSet,
    ErasedGraph,
    Graph,
    Orientation,
    orient_edge,
    pair_count,
    require_node_erasure,
)
from .linalg import Matrix
from .parity_sets import FamilyTag, LoopParams, loop_params, loop_s1, parity_family, require_prime
from .peeling import Workspace, constraints_hold, peel, peel_decode

logger = logging.getLogger(__name__)


class Variant(str, Enum):
    CU1 = "cu1"
    CU2 = "cu2"
    CG4 = "cg4"


@dataclass(frozen=True)
class DoubleCodeParams:
    n: int
    variant: Variant

    def __post_init__(self) -> None:
        require_prime(self.n)
        object.__setattr__(self, "variant", Variant(self.variant))

    @property
    def directed(self) -> bool:
        return self.variant is Variant.CG4

    @property
    def redundancy(self) -> int:
        return 4 * self.n - 4 if self.directed else 2 * self.n - 1

    @property
    def constraints(self) -> Tuple[EdgeSet, ...]:
        return code_constraints(self.n, self.variant)


@lru_cache(maxsize=None)
def code_constraints(n: int, variant: Variant) -> Tuple[EdgeSet, ...]:
    """Constraint sets in a fixed order: neighborhoods before diagonals, down before up."""
    variant = Variant(variant)
    if variant is Variant.CU1:
        tags = [FamilyTag.S, FamilyTag.D]
    elif variant is Variant.CU2:
        tags = [FamilyTag.S_PRIME, FamilyTag.D_PRIME]
    else:
        tags = [FamilyTag.S_DOWN, FamilyTag.D_DOWN, FamilyTag.S_UP, FamilyTag.D_UP]
    return tuple(edges for tag in tags for edges in parity_family(n, tag).sets)


@dataclass(frozen=True)
class SyndromeTables:
    """XOR of the surviving labels of every constraint set, per orientation.

    Directed graphs fill the down tables from S_down/D_down and the up tables
    from S_up/D_up. Undirected graphs fill the down tables from S/D and the
    up tables from S'/D', including the self-loop set n-2.
    """

    s_down: Dict[int, int]
    s_up: Dict[int, int]
    d_down: Dict[int, int]
    d_up: Dict[int, int]

    def neighborhood(self, orientation: Orientation) -> Dict[int, int]:
        return self.s_down if orientation is Orientation.DOWN else self.s_up

    def diagonal(self, orientation: Orientation) -> Dict[int, int]:
        return self.d_down if orientation is Orientation.DOWN else self.d_up

    def all_zero(self) -> bool:
        return not any(any(t.values()) for t in (self.s_down, self.s_up, self.d_down, self.d_up))


def _table(eg: ErasedGraph, sets: Sequence[EdgeSet], skip: Sequence[int]) -> Dict[int, int]:
    out = {}
    for index, edges in enumerate(sets):
        if index in skip:
            continue
        total = 0
        for cell in edges:
            if eg.known[cell]:
                total ^= int(eg.labels[cell])
        out[index] = total
    return out


def syndromes(eg: ErasedGraph, i: int, j: int) -> SyndromeTables:
    """Syndrome tables after nodes i and j failed.

    Raises:
        ErasurePatternError: If the Unknown cells are not the failure of i and j
    """
    n = eg.n
    require_prime(n)
    if i == j:
        raise InvalidParametersError("failed nodes must be distinct")
    require_node_erasure(eg, (i, j))
    failed = (i, j)
    if eg.directed:
        tags = (FamilyTag.S_DOWN, FamilyTag.S_UP, FamilyTag.D_DOWN, FamilyTag.D_UP)
    else:
        tags = (FamilyTag.S, FamilyTag.S_PRIME, FamilyTag.D, FamilyTag.D_PRIME)
    s_down, s_up, d_down, d_up = (parity_family(n, tag).sets for tag in tags)
    return SyndromeTables(
        s_down=_table(eg, s_down, failed),
        s_up=_table(eg, s_up, failed),
        d_down=_table(eg, d_down, ()),
        d_up=_table(eg, d_up, ()),
    )


class LoopStatus(str, Enum):
    RUNNING = "running"
    WAITING = "waiting"
    DONE = "done"


@dataclass(frozen=True)
class LoopSpec:
    """One decoding loop.

    At iteration t the loop visits s1 = <sign*d*(t+1) - offset>, writes the
    edge between s1 and ``anchor`` from the diagonal syndrome at s1 + anchor,
    then the edge between s1 and ``other`` from the neighborhood syndrome at
    s1. ``excluded`` is the redundancy node that ends the loop.
    """

    loop_id: str
    sign: int
    offset: int
    last: int
    anchor: int
    other: int
    excluded: int
    orientation: Orientation


@dataclass
class LoopState:
    loop_id: str
    t: int = -1
    s1: int = -1
    s2: int = -1
    b_prev: int = 0
    status: LoopStatus = LoopStatus.RUNNING
    waiting_on: Optional[Edge] = None

    def describe(self) -> str:
        if self.status is LoopStatus.WAITING:
            return f"loop {self.loop_id} at t={self.t} waiting on {self.waiting_on}"
        return f"loop {self.loop_id} at t={self.t} {self.status.value}"


@dataclass(frozen=True)
class Correction:
    loop_id: str
    t: int
    cell: Edge
    value: int


@dataclass
class DecodeTrace:
    """Cells written by the loops, in order, and what was still Unknown afterwards."""

    corrections: List[Correction] = dataclass_field(default_factory=list)
    leftover: List[Edge] = dataclass_field(default_factory=list)

    def by_loop(self, loop_id: str) -> List[Correction]:
        return [c for c in self.corrections if c.loop_id == loop_id]


def loop_specs(params: LoopParams) -> Dict[str, LoopSpec]:
    n, i, j = params.n, params.i, params.j
    return {
        "I": LoopSpec("I", -1, 2, params.x, j, i, n - 1, Orientation.DOWN),
        "II": LoopSpec("II", 1, 2, params.y, i, j, n - 1, Orientation.DOWN),
        "III": LoopSpec("III", -1, 1, params.x_prime, j, i, n - 2, Orientation.UP),
        "IV": LoopSpec("IV", 1, 1, params.y_prime, i, j, n - 2, Orientation.UP),
    }


def loop_task(
    spec: LoopSpec,
    state: LoopState,
    params: LoopParams,
    workspace: Workspace,
    tables: SyndromeTables,
    trace: DecodeTrace,
) -> Iterator[Optional[Edge]]:
    """Run one loop as a resumable task.

    Yields None after every iteration, or the self-loop cell it waits for
    while that cell is still Unknown.
    """
    n = params.n
    s_hat = tables.neighborhood(spec.orientation)
    d_hat = tables.diagonal(spec.orientation)
    anchor, other = spec.anchor, spec.other

    def write(a: int, b: int, value: int) -> None:
        cell = orient_edge((a, b), spec.orientation)
        workspace.set(cell, value)
        trace.corrections.append(Correction(spec.loop_id, state.t, cell, value))
        logger.debug("Loop %s t=%d corrected %s", spec.loop_id, state.t, cell)

    for t in range(spec.last + 1):
        state.t = t
        state.s1 = s1 = loop_s1(n, params.d, spec.sign, spec.offset, t)
        state.s2 = s2 = (s1 + anchor) % n
        if s1 == spec.excluded:
            write(s1, anchor, d_hat[s2] ^ state.b_prev)
        elif s1 == anchor:
            value = d_hat[s2] ^ state.b_prev
            write(anchor, anchor, value)
            self_loop = (other, other)
            if workspace.directed:
                while not workspace.is_known(self_loop):
                    state.status = LoopStatus.WAITING
                    state.waiting_on = self_loop
                    yield self_loop
                state.status = LoopStatus.RUNNING
                state.waiting_on = None
                state.b_prev = workspace.get(self_loop)
            else:
                state.b_prev = s_hat[n - 2] ^ value
                write(other, other, state.b_prev)
        elif s1 != other:
            first = d_hat[s2] ^ state.b_prev
            write(s1, anchor, first)
            state.b_prev = s_hat[s1] ^ first
            write(s1, other, state.b_prev)
        yield None
    state.status = LoopStatus.DONE


class CooperativeScheduler:
    """Round-robin single stepping of loop tasks in one thread of control."""

    def __init__(self) -> None:
        self._tasks: List[Tuple[LoopState, Iterator[Optional[Edge]]]] = []

    def spawn(self, state: LoopState, task: Iterator[Optional[Edge]]) -> None:
        self._tasks.append((state, task))

    def run(self) -> None:
        """Step every task in turn until all are done.

        Raises:
            SchedulerDeadlockError: If every unfinished task is waiting
        """
        active = list(self._tasks)
        while active:
            progressed = False
            for entry in list(active):
                state, task = entry
                try:
                    signal = next(task)
                except StopIteration:
                    state.status = LoopStatus.DONE
                    active.remove(entry)
                    progressed = True
                    continue
                if signal is None:
                    progressed = True
            if active and not progressed:
                raise SchedulerDeadlockError([state.describe() for state, _ in active])


def _run_sequential(tasks: Sequence[Tuple[LoopState, Iterator[Optional[Edge]]]]) -> None:
    for state, task in tasks:
        for signal in task:
            if signal is not None:
                raise SchedulerDeadlockError([state.describe()])


def _finish(
    workspace: Workspace,
    params: LoopParams,
    tables: SyndromeTables,
    orientations: Sequence[Orientation],
    constraints: Sequence[EdgeSet],
    trace: DecodeTrace,
) -> None:
    i, j, n = params.i, params.j, params.n
    trace.leftover = workspace.unknown_cells()
    for orientation in orientations:
        # the edge between i and j is the only Unknown member of D_<i+j>
        workspace.set(orient_edge((i, j), orientation), tables.diagonal(orientation)[(i + j) % n])
    peel(workspace, constraints)


def _loop_decode(
    eg: ErasedGraph,
    i: int,
    j: int,
    variant: Variant,
    trace: Optional[DecodeTrace],
) -> Graph:
    params = loop_params(eg.n, min(i, j), max(i, j))
    tables = syndromes(eg, i, j)
    trace = trace if trace is not None else DecodeTrace()
    workspace = Workspace(eg)
    specs = loop_specs(params)
    ids = {Variant.CU1: ("I", "II"), Variant.CU2: ("III", "IV"),
           Variant.CG4: ("I", "II", "III", "IV")}[variant]
    tasks = []
    for loop_id in ids:
        state = LoopState(loop_id)
        tasks.append((state, loop_task(specs[loop_id], state, params, workspace, tables, trace)))
    if variant is Variant.CG4:
        scheduler = CooperativeScheduler()
        for state, task in tasks:
            scheduler.spawn(state, task)
        scheduler.run()
    else:
        _run_sequential(tasks)
    orientations = sorted({specs[loop_id].orientation for loop_id in ids}, key=lambda o: o.value)
    _finish(workspace, params, tables, orientations, code_constraints(eg.n, variant), trace)
    return workspace.to_graph()


def alg1_decode(eg: ErasedGraph, i: int, j: int, trace: Optional[DecodeTrace] = None) -> Graph:
    """Decode a cu1 graph after nodes i, j in [n-2] failed."""
    if eg.directed:
        raise InvalidParametersError("cu1 decoding needs an undirected graph")
    return _loop_decode(eg, i, j, Variant.CU1, trace)


def alg2_decode(eg: ErasedGraph, i: int, j: int, trace: Optional[DecodeTrace] = None) -> Graph:
    """Decode a cu2 graph after nodes i, j in [n-2] failed."""
    if eg.directed:
        raise InvalidParametersError("cu2 decoding needs an undirected graph")
    return _loop_decode(eg, i, j, Variant.CU2, trace)


def alg3_decode(eg: ErasedGraph, i: int, j: int, trace: Optional[DecodeTrace] = None) -> Graph:
    """Decode a cg4 graph after nodes i < j in [n-2] failed.

    The four loops run under the cooperative scheduler; the edges between i
    and j come from the diagonal syndromes at i + j, and the redundancy
    edges still Unknown are peeled.
    """
    if not eg.directed:
        raise InvalidParametersError("cg4 decoding needs a directed graph")
    return _loop_decode(eg, i, j, Variant.CG4, trace)


_LOOP_DECODERS = {Variant.CU1: alg1_decode, Variant.CU2: alg2_decode, Variant.CG4: alg3_decode}


def double_decode(
    eg: ErasedGraph,
    failed: Sequence[int],
    variant: Variant,
    trace: Optional[DecodeTrace] = None,
) -> Graph:
    """Dispatch between the loop decoders and peeling.

    Two failures among the first n-2 nodes use the loop decoder of the
    variant; every other pattern is peeled over the code's constraints.

    Raises:
        ErasureBudgetExceededError: If more than two nodes failed
        PeelingStalledError: If Unknown cells remain after the loops and peeling
        NotACodewordError: If the recovered graph violates a constraint
    """
    variant = Variant(variant)
    n = eg.n
    require_prime(n)
    nodes = tuple(sorted(set(failed)))
    if len(nodes) > 2:
        raise ErasureBudgetExceededError(f"{len(nodes)} failed nodes exceed the budget of 2")
    require_node_erasure(eg, nodes)
    constraints = code_constraints(n, variant)
    try:
        if len(nodes) == 2 and nodes[1] < n - 2:
            result = _LOOP_DECODERS[variant](eg, nodes[0], nodes[1], trace)
        else:
            result = peel_decode(eg, constraints)
    except PeelingStalledError as e:
        logger.warning("%s decoding of nodes %s stalled with %d Unknown cells",
                       variant.value, nodes, len(e.unknown))
        raise
    if not constraints_hold(result, constraints):
        raise NotACodewordError(f"recovered graph violates the {variant.value} constraints")
    return result


def cg4_decode(eg: ErasedGraph, failed: Sequence[int], trace: Optional[DecodeTrace] = None) -> Graph:
    return double_decode(eg, failed, Variant.CG4, trace)


def peel_encode(n: int, variant: Variant, info: np.ndarray) -> Graph:
    """Place information on the first n-2 nodes and peel the redundancy edges.

    Raises:
        EncodingError: If peeling cannot reach every redundancy edge
    """
    params = DoubleCodeParams(n, variant)
    side = n - 2
    labels = np.zeros((n, n), dtype=np.int64)
    labels[:side, :side] = info
    known = np.zeros((n, n), dtype=bool)
    known[:side, :side] = True
    workspace = Workspace(ErasedGraph(GF2, labels, known, params.directed))
    filled = peel(workspace, params.constraints)
    try:
        graph = workspace.to_graph()
    except PeelingStalledError as e:
        raise EncodingError(f"{len(e.unknown)} redundancy edges unreachable by peeling") from e
    logger.debug("Encoded %s n=%d with %d redundancy edges", params.variant.value, n, filled)
    return graph


class DoubleErasureCode(GraphCode):
    """cu1, cu2 or cg4 as a graph code with rho = 2 over GF(2)."""

    def __init__(self, n: int, variant: Variant):
        self.params = DoubleCodeParams(n, variant)
        super().__init__(n, 2, GF2, directed=self.params.directed)
        self.name = self.params.variant.value

    @property
    def variant(self) -> Variant:
        return self.params.variant

    @property
    def constraints(self) -> Tuple[EdgeSet, ...]:
        return self.params.constraints

    @property
    def k(self) -> int:
        side = self.n - 2
        return side * side if self.directed else pair_count(side)

    @property
    def info_shape(self) -> Tuple[int, int]:
        return (self.n - 2, self.n - 2)

    def _build_parity_check(self) -> Matrix:
        return edge_sets_matrix(GF2, self.n, self.constraints, self.directed)

    def random_info(self, rng: np.random.Generator) -> np.ndarray:
        info = super().random_info(rng)
        if not self.directed:
            lower = np.tril(info)
            info = lower + np.tril(lower, -1).T
        return info

    def encode(self, info: np.ndarray) -> Graph:
        info = np.asarray(info, dtype=np.int64)
        if info.shape != self.info_shape:
            raise InvalidParametersError(
                f"information block must be {self.n - 2}x{self.n - 2}, got {info.shape}"
            )
        if info.size and (info.min() < 0 or info.max() > 1):
            raise InvalidParametersError(f"{self.name} information must be binary")
        if not self.directed and not np.array_equal(info, info.T):
            raise InvalidParametersError("undirected information must be symmetric")
        return peel_encode(self.n, self.variant, info)

    def info_of(self, graph: Graph) -> np.ndarray:
        return graph.matrix()[: self.n - 2, : self.n - 2].copy()

    def decode(self, erased: ErasedGraph, failed: Sequence[int]) -> Graph:
        self._require_failures(erased, failed)
        return double_decode(erased, failed, self.variant)
