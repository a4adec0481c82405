"""Tests for Monte-Carlo decoding runs."""

import pandas as pd
import pytest
from src.graph_codes.codes import build_code
from src.graph_codes.exceptions import InvalidParametersError
from src.graph_codes.simulation import SimulationSummary, run_trials, simulate, summarize


def test_run_trials_frame():
    """Test that each trial is one row with size, nodes and outcome."""
    frame = run_trials(build_code("c1", 5, 2), trials=12, seed=3)
    assert isinstance(frame, pd.DataFrame)
    assert list(frame.columns) == ["trial", "size", "nodes", "success"]
    assert len(frame) == 12
    assert frame["size"].between(1, 2).all()
    assert frame["success"].all()


def test_simulation_is_deterministic():
    """Test that the same seed gives the same trials."""
    code = build_code("cg4", 7)
    first = run_trials(code, trials=8, seed=11)
    second = run_trials(code, trials=8, seed=11)
    pd.testing.assert_frame_equal(first, second)


def test_summarize_groups_by_size():
    """Test per-size success counts."""
    frame = pd.DataFrame({
        "trial": [0, 1, 2],
        "size": [1, 2, 2],
        "nodes": [(0,), (0, 1), (1, 2)],
        "success": [True, True, False],
    })
    summary = summarize(frame)
    assert summary == SimulationSummary(trials=3, successes=2, by_size={1: (1, 1), 2: (1, 2)})
    assert summary.failures == 1
    assert summary.render() == "trials=3\nsuccesses=2\nfailures=1\nsize_1=1/1\nsize_2=1/2\n"


def test_simulate_all_codes_succeed():
    """Test that every decode succeeds within the budget."""
    summary = simulate(build_code("cu1", 7), trials=10, seed=0)
    assert summary.trials == 10
    assert summary.failures == 0


def test_simulate_rejects_zero_trials():
    """Test that at least one trial is required."""
    with pytest.raises(InvalidParametersError):
        run_trials(build_code("c1", 5, 2), trials=0, seed=0)
