import csv
import json
import subprocess
import sys

import pytest

from qualex.cli import RunConfig, main


def run_cli(*argv):
    return main(list(argv))


def read_meta_line(path):
    with open(path) as fh:
        return fh.readline().rstrip("\n")


# ---------------------------------------------------------------------------
# configuration plumbing

def test_seed_precedence_flag_config_env(tmp_path, monkeypatch):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("seed = 5\n")
    monkeypatch.setenv("EVAL_SEED", "9")

    out = tmp_path / "o1"
    assert run_cli("synth", "--out", str(out), "--applications", "5",
                   "--config", str(cfgfile), "--seed", "3") == 0
    flag_wins = (out / "applications.jsonl").read_text()

    out2 = tmp_path / "o2"
    assert run_cli("synth", "--out", str(out2), "--applications", "5",
                   "--seed", "3") == 0
    assert (out2 / "applications.jsonl").read_text() == flag_wins

    out3 = tmp_path / "o3"
    assert run_cli("synth", "--out", str(out3), "--applications", "5",
                   "--config", str(cfgfile)) == 0
    config_wins = (out3 / "applications.jsonl").read_text()
    assert config_wins != flag_wins

    out4 = tmp_path / "o4"
    assert run_cli("synth", "--out", str(out4), "--applications", "5") == 0
    env_wins = (out4 / "applications.jsonl").read_text()
    assert env_wins not in (flag_wins, config_wins)

    monkeypatch.delenv("EVAL_SEED")
    out5 = tmp_path / "o5"
    assert run_cli("synth", "--out", str(out5), "--applications", "5") == 0
    assert (out5 / "applications.jsonl").read_text() != env_wins  # default seed 0


def test_unknown_config_key_is_usage_error(tmp_path):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("sample = 10\n")
    assert run_cli("ingest", "--corpus", "x", "--config", str(cfgfile)) == 2


def test_bad_config_value_is_usage_error(tmp_path):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("seed = lots\n")
    assert run_cli("ingest", "--corpus", "x", "--config", str(cfgfile)) == 2


def test_missing_corpus_flag_is_usage_error(tmp_path):
    assert run_cli("indicators", "--out", str(tmp_path)) == 2


def test_missing_corpus_directory_is_validation_error(tmp_path):
    assert run_cli("indicators", "--corpus", str(tmp_path / "nope"),
                   "--out", str(tmp_path / "o")) == 1


def test_argparse_usage_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_config_digest_ignores_paths():
    a = RunConfig(corpus="/x", out="/tmp/a", seed=1)
    b = RunConfig(corpus="/y", out="/tmp/b", seed=1)
    c = RunConfig(corpus="/x", out="/tmp/a", seed=2)
    assert a.digest() == b.digest()
    assert a.digest() != c.digest()


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "qualex.cli", "--help"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "ingest" in proc.stdout and "synth" in proc.stdout


# ---------------------------------------------------------------------------
# subcommand outputs

def test_ingest_outputs_and_exit_codes(tmp_path, corpus200_path):
    out = tmp_path / "ing"
    assert run_cli("ingest", "--corpus", str(corpus200_path), "--out", str(out)) == 0
    quality = json.loads((out / "data_quality.json").read_text())
    assert quality["applications"] == 200
    assert quality["rejects"] == 0
    assert quality["applicants_after_dedupe"] < quality["applicant_records"]
    assert read_meta_line(out / "rejects.csv").startswith("# config=")


def test_ingest_with_rejects_returns_one(tmp_path, corpus200_path):
    broken = tmp_path / "broken"
    broken.mkdir()
    for name in ("applicants.jsonl", "applications.jsonl", "meta.json"):
        (broken / name).write_text((corpus200_path / name).read_text())
    with open(broken / "applications.jsonl", "a") as fh:
        fh.write(json.dumps({"serial_id": -1}) + "\n")
    out = tmp_path / "ing"
    assert run_cli("ingest", "--corpus", str(broken), "--out", str(out)) == 1
    with open(out / "rejects.csv") as fh:
        fh.readline()
        rows = list(csv.DictReader(fh))
    assert len(rows) == 1
    assert rows[0]["field"] == "serial_id"


def test_indicators_with_thresholds(tmp_path, corpus200_path, thresholds200_path):
    out = tmp_path / "ind"
    assert run_cli(
        "indicators", "--corpus", str(corpus200_path),
        "--thresholds", str(thresholds200_path), "--out", str(out),
    ) == 0
    with open(out / "indicators.csv") as fh:
        fh.readline()
        rows = list(csv.DictReader(fh))
    assert len(rows) == 200
    assert set(rows[0]) == {
        "serial_id", "first_name", "last_name", "birth_date", "discipline",
        "role", "kind", "sa", "v1", "v2", "v3", "exceeded", "eligible",
    }
    assert all(r["eligible"] in ("0", "1") for r in rows)


def test_reports_outputs(tmp_path, corpus200_path):
    out = tmp_path / "rep"
    assert run_cli("reports", "--corpus", str(corpus200_path), "--out", str(out),
                   "--sample-size", "30") == 0
    with open(out / "report_metrics.csv") as fh:
        fh.readline()
        rows = list(csv.DictReader(fh))
    assert rows
    for row in rows:
        assert row["quadrant"] in (
            "long_distinct", "long_similar", "short_distinct", "short_similar"
        )
        assert 0.0 <= float(row["median_distance"]) <= 1.0
    assert (out / "flagged.csv").exists()
    assert (out / "reports_skipped.csv").exists()


def test_reports_dump_pairs(tmp_path, corpus200_path):
    out = tmp_path / "rep"
    assert run_cli("reports", "--corpus", str(corpus200_path), "--out", str(out),
                   "--sample-size", "8", "--dump-pairs") == 0
    with open(out / "pair_distances.csv") as fh:
        fh.readline()
        rows = list(csv.DictReader(fh))
    assert rows
    counts = {}
    for row in rows:
        counts[(row["discipline"], row["role"])] = counts.get(
            (row["discipline"], row["role"]), 0) + 1
    assert all(n <= 8 * 7 // 2 for n in counts.values())


def test_graph_outputs(tmp_path, corpus200_path):
    out = tmp_path / "gr"
    assert run_cli("graph", "--corpus", str(corpus200_path), "--out", str(out)) == 0
    for name in ("coqualification_matrix.csv", "graph.graphml", "graph.dot",
                 "edges.csv", "hubs.csv", "cliques.csv", "clique_histogram.csv"):
        assert (out / name).exists(), name
    with open(out / "hubs.csv") as fh:
        fh.readline()
        hubs = list(csv.DictReader(fh))
    degrees = [int(r["degree"]) for r in hubs]
    assert degrees == sorted(degrees, reverse=True)


def test_stats_output(tmp_path, corpus500_path):
    out = tmp_path / "st"
    assert run_cli("stats", "--corpus", str(corpus500_path), "--out", str(out),
                   "--bootstrap", "200") == 0
    payload = json.loads((out / "stats.json").read_text())
    tank = payload["german_tank"]
    assert tank["k"] == 500
    assert tank["m"] >= 500
    assert tank["ci_low"] <= tank["ci_high"]
    sp = payload["spearman_length_vs_applications"]
    for role in ("associate", "full"):
        assert sp[role] is None or -1.0 <= sp[role]["rho"] <= 1.0
    assert payload["probit_age_qualification"]


def test_tabulate_outputs(tmp_path, corpus200_path):
    out = tmp_path / "tab"
    assert run_cli("tabulate", "--corpus", str(corpus200_path), "--out", str(out)) == 0
    with open(out / "publication_types.csv") as fh:
        fh.readline()
        rows = list(csv.DictReader(fh))
    assert sum(float(r["percent"]) for r in rows) == pytest.approx(100.0)
    for name in ("top_pubtypes.csv", "titles_associate.csv", "titles_full.csv",
                 "ages.csv", "multiplicity.csv"):
        assert (out / name).exists(), name


def test_observation_year_flag_changes_indicators(tmp_path, corpus200_path):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    assert run_cli("indicators", "--corpus", str(corpus200_path), "--out", str(out_a)) == 0
    assert run_cli("indicators", "--corpus", str(corpus200_path), "--out", str(out_b),
                   "--observation-year", "2020") == 0
    a = (out_a / "indicators.csv").read_text()
    b = (out_b / "indicators.csv").read_text()
    assert a != b


def test_all_writes_sidecar_and_everything_else(tmp_path, corpus200_path):
    out = tmp_path / "all"
    assert run_cli("all", "--corpus", str(corpus200_path), "--out", str(out),
                   "--sample-size", "20") == 0
    meta = json.loads((out / "run_metadata.json").read_text())
    assert meta["config"]["seed"] == 0
    assert "started_utc" in meta
    expected = {
        "data_quality.json", "rejects.csv", "indicators.csv",
        "indicator_problems.csv", "report_metrics.csv", "reports_skipped.csv",
        "flagged.csv", "coqualification_matrix.csv", "graph.graphml",
        "graph.dot", "edges.csv", "hubs.csv", "cliques.csv",
        "clique_histogram.csv", "stats.json", "publication_types.csv",
        "top_pubtypes.csv", "titles_associate.csv", "titles_full.csv",
        "ages.csv", "multiplicity.csv", "run_metadata.json",
    }
    assert {p.name for p in out.iterdir()} == expected
