#!/usr/bin/env python3
"""
Test the census manager - brute-force sweep of decorated permutations
"""

import json

import pytest

import census_manager
from census_manager import CensusManager, brute_force_census, classify_batch
from libs import smoothness_lib
from libs.enumeration_lib import census


@pytest.fixture
def manager():
    return CensusManager(max_workers=2, batch_size=5, executor_kind="thread")


def test_classify_batch_counts_decorations():
    counts = classify_batch([(1,), (2, 1)])
    assert counts["decorated"] == 3
    assert counts["smooth"] == 3
    assert counts["s1"] == {0: 1, 1: 2}
    assert counts["s2"] == {1: 3}


def test_classify_batch_decomposes_once(monkeypatch):
    calls = []
    original = smoothness_lib.sif_decomposition

    def counting(dp, check_components=True):
        calls.append(dp)
        return original(dp, check_components=check_components)

    monkeypatch.setattr(smoothness_lib, "sif_decomposition", counting)
    counts = classify_batch([(2, 1), (1,)])
    assert counts["smooth"] == 3
    assert len(calls) == 3


def test_census_n4(manager):
    result = manager.run_census(4)
    assert result["success"]
    assert result["total_permutations"] == 24
    assert result["total_decorated"] == 65
    assert result["total_smooth"] == 61
    assert result["s1"] == [1, 15, 29, 15, 1]
    assert result["s2"] == [3, 18, 24, 16]
    assert result["batches_processed"] == 5
    assert all(batch["success"] for batch in result["batch_results"])


@pytest.mark.parametrize("n, s1, s2", [(1, [1, 1], [2]), (3, [1, 7, 7, 1], [2, 6, 8])])
def test_small_rows(manager, n, s1, s2):
    result = brute_force_census(n, manager)
    assert result["s1"] == s1
    assert result["s2"] == s2


def test_out_of_range_n_reports_failure(manager):
    result = manager.run_census(0)
    assert not result["success"]
    assert "1 <= n" in result["error"]
    with pytest.raises(RuntimeError):
        brute_force_census(10, manager)


def test_failed_batch_is_reported(manager, monkeypatch):
    def broken(batch):
        raise ZeroDivisionError("boom")

    monkeypatch.setattr(census_manager, "classify_batch", broken)
    result = manager.run_census(3)
    assert not result["success"]
    assert result["error"] == "2 of 2 batches failed"
    assert result["batch_results"][0]["error"] == "boom"


def test_environment_configuration(monkeypatch):
    monkeypatch.setenv("POSITROID_THREADS", "3")
    monkeypatch.setenv("POSITROID_BATCH_SIZE", "7")
    configured = CensusManager(executor_kind="thread")
    assert configured.max_workers == 3
    assert configured.batch_size == 7


@pytest.mark.parametrize("value", ["many", "0", "-2"])
def test_invalid_environment_is_rejected(monkeypatch, value):
    monkeypatch.setenv("POSITROID_THREADS", value)
    with pytest.raises(ValueError, match="POSITROID_THREADS"):
        CensusManager()


def test_unknown_executor():
    with pytest.raises(ValueError):
        CensusManager(max_workers=1, batch_size=1, executor_kind="fiber")


def test_save_results_to_json(manager, tmp_path):
    target = tmp_path / "census.json"
    result = manager.run_census(2, save_to_json=True, filename=str(target))
    assert result["json_file"] == str(target)
    saved = json.loads(target.read_text(encoding="utf-8"))
    assert saved["s1"] == [1, 3, 1]
    assert saved["total_smooth"] == 5


@pytest.mark.slow
def test_process_pool_matches_formula():
    result = brute_force_census(6, CensusManager(max_workers=2, batch_size=120))
    expected = census(6)
    assert result["s1"] == expected.s1[-1].values(0)
    assert result["s2"] == expected.s2[-1].values(1)
    assert result["total_smooth"] == 1132


@pytest.mark.slow
@pytest.mark.parametrize("n", [7, 8])
def test_larger_sweeps_match_formula(n):
    result = brute_force_census(n, CensusManager(max_workers=4, batch_size=500))
    expected = census(n)
    assert result["s1"] == expected.s1[-1].values(0)
    assert result["s2"] == expected.s2[-1].values(1)
