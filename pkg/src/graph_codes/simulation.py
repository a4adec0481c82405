"""Monte-Carlo decoding of random codewords under random node failures."""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from .base import GraphCode
from .exceptions import DecodingError, InvalidParametersError
from .graph import erase_nodes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimulationSummary:
    trials: int
    successes: int
    by_size: Dict[int, Tuple[int, int]]

    @property
    def failures(self) -> int:
        return self.trials - self.successes

    def render(self) -> str:
        lines = [
            f"trials={self.trials}",
            f"successes={self.successes}",
            f"failures={self.failures}",
        ]
        lines += [f"size_{size}={ok}/{total}" for size, (ok, total) in sorted(self.by_size.items())]
        return "\n".join(lines) + "\n"


def run_trials(code: GraphCode, trials: int, seed: int) -> pd.DataFrame:
    """One row per trial: failure-set size, failed nodes and whether decoding matched.

    The failure-set size is uniform in [1, rho]; everything is drawn from a
    generator seeded with ``seed``.
    """
    if trials < 1:
        raise InvalidParametersError(f"trials must be at least 1, got {trials}")
    rng = np.random.default_rng(seed)
    records: List[dict] = []
    for trial in tqdm(range(trials), desc=f"simulate {code.name}", disable=None):
        graph = code.encode(code.random_info(rng))
        size = int(rng.integers(1, code.rho + 1))
        nodes = tuple(sorted(int(v) for v in rng.choice(code.n, size=size, replace=False)))
        try:
            success = code.decode(erase_nodes(graph, nodes), nodes) == graph
        except DecodingError as e:
            logger.warning("Trial %d: nodes %s not decoded: %s", trial, nodes, e)
            success = False
        records.append({"trial": trial, "size": size, "nodes": nodes, "success": success})
    return pd.DataFrame.from_records(records, columns=["trial", "size", "nodes", "success"])


def summarize(frame: pd.DataFrame) -> SimulationSummary:
    grouped = frame.groupby("size")["success"].agg(["sum", "count"])
    by_size = {int(size): (int(row["sum"]), int(row["count"])) for size, row in grouped.iterrows()}
    return SimulationSummary(
        trials=len(frame),
        successes=int(frame["success"].sum()),
        by_size=by_size,
    )


def simulate(code: GraphCode, trials: int, seed: int) -> SimulationSummary:
    return summarize(run_trials(code, trials, seed))
