"""Structural checks behind the ``audit`` command.

Every check returns plain values so tests can call it directly; ``run_audit``
collects them into a key=value report.
"""

import itertools
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np
from tqdm import tqdm

from .array_code import ArrayCode, cover_weight, iter_codewords, matrix_rank, sample_codewords
from .base import GraphCode
from .double_erasure import DoubleErasureCode, Variant, code_constraints, syndromes
from .exceptions import DecodingError
from .graph import Edge, Graph, erase_nodes, failure_cells, in_neighborhood, out_neighborhood
from .linalg import rank
from .mds_graph_code import RowColumnCode
from .parity_sets import FamilyTag, loop_params, parity_family, require_prime

logger = logging.getLogger(__name__)

# enumerate every codeword up to this dimension, sample above it
C2_ENUMERATION_MAX_DIMENSION = 12


@dataclass(frozen=True)
class DimensionAudit:
    rank: int
    dimension: int
    redundancy: int
    bound: int

    @property
    def optimal(self) -> bool:
        return self.redundancy == self.bound


def audit_dimension(code: GraphCode) -> DimensionAudit:
    """Rank of the assembled constraints and the dimension it leaves."""
    constraint_rank = rank(code.parity_check)
    return DimensionAudit(
        rank=constraint_rank,
        dimension=code.coordinates - constraint_rank,
        redundancy=constraint_rank,
        bound=code.bound,
    )


def claim1_holds(n: int, rho: int) -> bool:
    """Every rho failed nodes meet each row and column in exactly rho cells.

    For each failure set J: every row meets the in-failures of J in rho
    cells, every column meets the out-failures in rho cells, and every
    surviving row meets the full failure sets in rho cells.
    """
    for failed in itertools.combinations(range(n), rho):
        incoming: Set[Edge] = set()
        outgoing: Set[Edge] = set()
        for k in failed:
            incoming.update(in_neighborhood(n, k))
            outgoing.update(out_neighborhood(n, k))
        everything = set(failure_cells(n, failed))
        for ell in range(n):
            row = set(out_neighborhood(n, ell))
            if len(row & incoming) != rho:
                return False
            if len(set(in_neighborhood(n, ell)) & outgoing) != rho:
                return False
            if ell not in failed and len(row & everything) != rho:
                return False
    return True


def claim3_holds(n: int) -> bool:
    """The diagonal at i+j meets the failure set of j only in the edge between i and j."""
    d_down = parity_family(n, FamilyTag.D_DOWN)
    d_up = parity_family(n, FamilyTag.D_UP)
    f_down = parity_family(n, FamilyTag.F_DOWN)
    f_up = parity_family(n, FamilyTag.F_UP)
    for i, j in itertools.permutations(range(n - 2), 2):
        m = (i + j) % n
        if set(d_down[m]) & set(f_down[j]) != {(max(i, j), min(i, j))}:
            return False
        if set(d_up[m]) & set(f_up[j]) != {(min(i, j), max(i, j))}:
            return False
    return True


def claim4_holds(n: int) -> bool:
    """Exactly one pair of loops visits both failed nodes."""
    for i, j in itertools.combinations(range(n - 2), 2):
        params = loop_params(n, i, j)
        pair = {i, j}
        first = pair <= (params.A & params.B_prime)
        second = pair <= (params.A_prime & params.B)
        if first == second:
            return False
    return True


def self_loops_shared(n: int) -> bool:
    """The down and up neighborhood sets of h share only the self loop at h."""
    s_down = parity_family(n, FamilyTag.S_DOWN)
    s_up = parity_family(n, FamilyTag.S_UP)
    return all(set(s_down[h]) & set(s_up[h]) == {(h, h)} for h in range(n - 2))


def syndromes_match_bruteforce(code: DoubleErasureCode, graph: Graph, i: int, j: int) -> bool:
    """Compare the syndrome tables with sums taken directly from the unerased graph."""
    n = code.n
    tables = syndromes(erase_nodes(graph, (i, j)), i, j)
    labels = graph.matrix()
    lost = {i, j}

    def survivors_sum(edges: Sequence[Edge]) -> int:
        total = 0
        for a, b in edges:
            if a not in lost and b not in lost:
                total ^= int(labels[a, b])
        return total

    if code.directed:
        tags = (FamilyTag.S_DOWN, FamilyTag.S_UP, FamilyTag.D_DOWN, FamilyTag.D_UP)
    else:
        tags = (FamilyTag.S, FamilyTag.S_PRIME, FamilyTag.D, FamilyTag.D_PRIME)
    computed = (tables.s_down, tables.s_up, tables.d_down, tables.d_up)
    for tag, table in zip(tags, computed):
        family = parity_family(n, tag)
        for index, value in table.items():
            if survivors_sum(family[index]) != value:
                return False
    return True


@dataclass
class SweepResult:
    """Decode outcomes per failure-set size."""

    ok: Dict[int, int] = dataclass_field(default_factory=dict)
    total: Dict[int, int] = dataclass_field(default_factory=dict)
    oracle_agreed: int = 0
    oracle_checked: int = 0
    failures: List[Tuple[int, ...]] = dataclass_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return sum(self.ok.values()) == sum(self.total.values()) and (
            self.oracle_agreed == self.oracle_checked
        )


def failure_sets(n: int, rho: int) -> List[Tuple[int, ...]]:
    """Every node set of size 1..rho."""
    return [nodes for size in range(1, rho + 1) for nodes in itertools.combinations(range(n), size)]


def decode_sweep(
    code: GraphCode,
    codewords: int,
    rng: np.random.Generator,
    oracle: bool = True,
) -> SweepResult:
    """Decode random codewords under every failure set within the budget.

    Each decode is compared with the original graph and, when ``oracle`` is
    set, with the full-system solve.
    """
    result = SweepResult()
    patterns = failure_sets(code.n, code.rho)
    for _ in tqdm(range(codewords), desc=f"sweep {code.name} n={code.n}", disable=None):
        graph = code.encode(code.random_info(rng))
        for nodes in patterns:
            size = len(nodes)
            result.total[size] = result.total.get(size, 0) + 1
            erased = erase_nodes(graph, nodes)
            try:
                decoded = code.decode(erased, nodes)
            except DecodingError as e:
                logger.warning("%s failed to decode nodes %s: %s", code.name, nodes, e)
                result.failures.append(nodes)
                continue
            if decoded == graph:
                result.ok[size] = result.ok.get(size, 0) + 1
            else:
                result.failures.append(nodes)
            if oracle:
                result.oracle_checked += 1
                if code.solve_by_constraints(erased) == decoded:
                    result.oracle_agreed += 1
    for size in result.total:
        result.ok.setdefault(size, 0)
    return result


@dataclass(frozen=True)
class WeightAudit:
    checked: int
    min_rank: int
    min_cover: int
    exhaustive: bool
    cover_below_rank: int = 0

    def holds(self, rho: int) -> bool:
        return self.min_rank >= 2 * rho + 1 and self.cover_below_rank == 0


def c2_weight_audit(code: ArrayCode, rng: np.random.Generator, samples: int) -> WeightAudit:
    """Smallest matrix rank and cover weight over nonzero codewords.

    Enumerates all codewords when the dimension is small, samples otherwise.
    Each codeword's cover weight must be at least its rank.
    """
    exhaustive = code.k <= C2_ENUMERATION_MAX_DIMENSION
    words = iter_codewords(code) if exhaustive else sample_codewords(code, rng, samples)
    checked = below = 0
    min_rank = min_cover = code.n
    for word in words:
        word_rank = matrix_rank(word)
        word_cover = cover_weight(word)
        if word_cover < word_rank:
            below += 1
        min_rank = min(min_rank, word_rank)
        min_cover = min(min_cover, word_cover)
        checked += 1
    return WeightAudit(checked, min_rank, min_cover, exhaustive, below)


class AuditReport:
    """Ordered key=value lines and an overall verdict."""

    def __init__(self) -> None:
        self.lines: List[Tuple[str, str]] = []
        self.passed = True

    def add(self, key: str, value: object, check: Optional[bool] = None) -> None:
        if isinstance(value, bool):
            value = "true" if value else "false"
        self.lines.append((key, str(value)))
        if check is False:
            self.passed = False
            logger.info("Audit check %s failed", key)

    def render(self) -> str:
        body = [f"{key}={value}" for key, value in self.lines]
        body.append(f"audit_passed={'true' if self.passed else 'false'}")
        return "\n".join(body) + "\n"


def run_audit(
    code: GraphCode,
    rng: np.random.Generator,
    samples: int,
    exhaustive: bool = False,
    sweep_codewords: int = 20,
) -> AuditReport:
    report = AuditReport()
    report.add("code", code.name)
    report.add("n", code.n)
    report.add("rho", code.rho)
    report.add("field", code.field.tag)
    report.add("coordinates", code.coordinates)

    logger.info("Auditing dimension of %r", code)
    dims = audit_dimension(code)
    report.add("rank", dims.rank)
    report.add("dimension", dims.dimension, dims.dimension == code.k)
    report.add("redundancy", dims.redundancy)
    report.add("bound", dims.bound)
    # c2 reports optimality without failing the audit
    report.add("optimal", dims.optimal, None if isinstance(code, ArrayCode) else dims.optimal)
    report.add("rate", f"{code.k / code.coordinates:.6f}")

    if isinstance(code, RowColumnCode):
        claim1 = claim1_holds(code.n, code.rho)
        report.add("claim1", claim1, claim1)
    elif isinstance(code, DoubleErasureCode):
        require_prime(code.n)
        report.add("constraints", len(code_constraints(code.n, code.variant)))
        claim4 = claim4_holds(code.n)
        report.add("claim4", claim4, claim4)
        if code.variant is Variant.CG4:
            claim3 = claim3_holds(code.n)
            shared = self_loops_shared(code.n)
            report.add("claim3", claim3, claim3)
            report.add("self_loops_shared", shared, shared)
    elif isinstance(code, ArrayCode):
        exceeds = dims.redundancy > dims.bound
        relation = ">" if exceeds else "<="
        report.add("redundancy_vs_bound", f"{dims.redundancy}{relation}{dims.bound}", exceeds)
        logger.info("Auditing codeword weights of %r", code)
        weights = c2_weight_audit(code, rng, samples)
        report.add("weight_codewords", weights.checked)
        report.add("weight_exhaustive", weights.exhaustive)
        report.add("min_rank", weights.min_rank)
        report.add("min_cover_weight", weights.min_cover)
        report.add("weight_ok", weights.holds(code.rho), weights.holds(code.rho))

    if exhaustive:
        logger.info("Sweeping every failure set of %r", code)
        sweep = decode_sweep(code, sweep_codewords, rng, oracle=True)
        for size in sorted(sweep.total):
            report.add(f"sweep_size_{size}", f"{sweep.ok[size]}/{sweep.total[size]}",
                       sweep.ok[size] == sweep.total[size])
        report.add("sweep_oracle", f"{sweep.oracle_agreed}/{sweep.oracle_checked}",
                   sweep.oracle_agreed == sweep.oracle_checked)
    return report
