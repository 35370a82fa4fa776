"""Benchmark harness plumbing and the command-line interface."""

import json

import pytest

from cumulants import (
    ALGORITHM_NAMES,
    BoundsError,
    IntegerPartition,
    SetPartition,
    bell_number,
    count_not_complementary,
    instance_partition,
    run_bench,
)
from cumulants.cli import main


def test_instance_partition_consecutive_fill():
    p = instance_partition(IntegerPartition((2, 3, 4)))
    assert p == SetPartition(9, [(1, 2, 3, 4), (5, 6, 7), (8, 9)])
    q = instance_partition(IntegerPartition((1, 1, 2, 2)))
    assert q == SetPartition(6, [(1, 2), (3, 4), (5,), (6,)])


def test_run_bench_single_row():
    report = run_bench([IntegerPartition((1, 1, 2, 2))], reps=3)
    assert report.reps == 3
    (row,) = report.rows
    assert set(row.median_seconds) == set(ALGORITHM_NAMES)
    assert all(t > 0 for t in row.median_seconds.values())
    instance = instance_partition(row.block_type)
    expected = bell_number(6) - count_not_complementary(instance)
    assert row.complementary_count == expected
    assert row.not_complementary_count == count_not_complementary(instance)
    doc = report.to_json_dict()
    assert doc["rows"][0]["type"] == [2, 2, 1, 1]
    assert set(doc["rows"][0]["median_ms"]) == set(ALGORITHM_NAMES)
    assert doc["config"]["reps"] == 3
    assert doc["config"]["warmup"] == 1


def test_run_bench_rejects_few_reps():
    with pytest.raises(BoundsError):
        run_bench([IntegerPartition((2, 2))], reps=2)


# --- CLI ------------------------------------------------------------------------


def test_cli_csp_lines(capsys):
    assert main(["csp", "--partition", "1|2,3,4", "--algo", "twoblock"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 10
    assert "1234" in lines


def test_cli_csp_json_all_algorithms(capsys):
    docs = []
    for name in ALGORITHM_NAMES:
        assert main(["csp", "--partition", "1|234", "--algo", name, "--json"]) == 0
        docs.append(json.loads(capsys.readouterr().out))
    first = docs[0]
    assert first["count"] == 10
    assert first["n"] == 4
    for doc in docs[1:]:
        assert doc["complementary"] == first["complementary"]


def test_cli_gencum(capsys):
    assert main(["gencum", "--partition", "1|2,3"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "κ[1,1,1] + κ[1,1,0] κ[0,0,1] + κ[1,0,1] κ[0,1,0]"


def test_cli_gmc_text_and_json(capsys):
    assert main(["gmc", "--lambda", "1,0|0,2"]) == 0
    assert capsys.readouterr().out.strip() == "κ[1,2] + 2 κ[1,1] κ[0,1]"
    assert main(["gmc", "--lambda", "1,0|0,2", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {
        "terms": [
            {"coeff": 1, "factors": [[1, 2]]},
            {"coeff": 2, "factors": [[1, 1], [0, 1]]},
        ]
    }


def test_cli_partitions(capsys):
    assert main(["partitions", "--n", "3"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 5
    assert main(["partitions", "--n", "4", "--m", "2", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["count"] == 7


def test_cli_estimate(tmp_path, capsys):
    path = tmp_path / "s.csv"
    path.write_text("1,2\n3,4\n")
    assert main(["estimate", "--data", str(path), "--lambda", "1,0|0,1", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["estimate"] == pytest.approx(2.0)
    assert doc["N"] == 2 and doc["n"] == 2
    assert "S[1,1]" in doc["expression"]


def test_cli_estimate_with_header(tmp_path, capsys):
    path = tmp_path / "s.csv"
    path.write_text("a,b\n1,2\n3,4\n5,6\n")
    assert main(["estimate", "--data", str(path), "--lambda", "1,0|0,1", "--header"]) == 0
    out = capsys.readouterr().out
    assert "a, b" in out


def test_cli_bench_json(capsys):
    assert main(["bench", "--types", "2,2;1,1,2", "--reps", "3", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [row["type"] for row in doc["rows"]] == [[2, 2], [2, 1, 1]]
    for row in doc["rows"]:
        assert set(row["median_ms"]) == set(ALGORITHM_NAMES)
        assert row["counts"]["complementary"] + row["counts"]["not_complementary"] == bell_number(sum(row["type"]))


def test_cli_bench_out_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["bench", "--types", "2,2", "--reps", "3", "--out", str(out)]) == 0
    capsys.readouterr()
    doc = json.loads(out.read_text())
    assert doc["config"]["reps"] == 3


def test_cli_usage_errors(capsys):
    assert main(["bogus"]) == 1
    assert main([]) == 1
    assert main(["csp"]) == 1
    capsys.readouterr()


def test_cli_computation_errors(capsys, tmp_path):
    assert main(["csp", "--partition", "1|1"]) == 2
    assert "error" in capsys.readouterr().err
    assert main(["estimate", "--data", str(tmp_path / "missing.csv"), "--lambda", "1,0|0,1"]) == 2
    capsys.readouterr()
    path = tmp_path / "tiny.csv"
    path.write_text("1,2,3\n4,5,6\n")
    # the joint-cumulant estimator needs three distinct rows
    assert main(["estimate", "--data", str(path), "--lambda", "1,0,0|0,1,0|0,0,1"]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_deterministic_output(capsys):
    main(["csp", "--partition", "12|34|5"])
    first = capsys.readouterr().out
    main(["csp", "--partition", "12|34|5"])
    assert capsys.readouterr().out == first
    main(["gmc", "--lambda", "2,1|1,0"])
    a = capsys.readouterr().out
    main(["gmc", "--lambda", "2,1|1,0"])
    assert capsys.readouterr().out == a
