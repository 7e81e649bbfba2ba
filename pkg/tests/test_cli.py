import json
import logging

import jsonschema
from click.testing import CliRunner

from path_betti.cli import cli
from path_betti.types import MAX_SUBSET_BITS_ENV, OutputRecord, load_schema


def _runner() -> CliRunner:
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        # newer click keeps stderr apart on its own
        return CliRunner()


def invoke(*args, env=None):
    runner = _runner()
    return runner.invoke(cli, list(args), env=env)


def test_betti_both_methods_agree():
    result = invoke("betti", "--kind", "cycle", "--n", "5", "--t", "2")
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)
    jsonschema.validate(payload, load_schema())
    assert [(e["i"], e["j"], e["beta"]) for e in payload["entries"]] == [(1, 2, 5), (2, 3, 5), (3, 5, 1)]
    assert (payload["p"], payload["d"], payload["pd"], payload["reg"]) == (1, 2, 3, 2)
    assert payload["method"] == "both"
    assert payload["diff"] == []
    OutputRecord.load_from_payload(payload)


def test_betti_closed_tags_entries():
    result = invoke("betti", "--n", "6", "--t", "2", "--method", "closed")
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    methods = {(e["i"], e["j"]): e["method"] for e in payload["entries"]}
    assert methods[(4, 6)] == "closed_form"
    assert methods[(2, 4)] == "eligible_count"
    assert "diff" not in payload


def test_betti_rejects_t_above_n():
    result = invoke("betti", "--n", "5", "--t", "6")
    assert result.exit_code == 2
    assert "exceeds" in result.stderr


def test_betti_rejects_bad_characteristic():
    result = invoke("betti", "--n", "5", "--t", "2", "--char", "4")
    assert result.exit_code == 2


def test_betti_oracle_resource_limit():
    result = invoke("betti", "--n", "30", "--t", "3", "--method", "oracle")
    assert result.exit_code == 3
    assert "Resource limit" in result.stderr


def test_betti_closed_form_has_no_cap():
    result = invoke("betti", "--n", "23", "--t", "3", "--method", "closed")
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert (payload["p"], payload["d"]) == (5, 3)
    assert (payload["pd"], payload["reg"]) == (11, 12)


def test_betti_cap_from_environment():
    result = invoke("betti", "--n", "7", "--t", "2", "--method", "oracle", env={MAX_SUBSET_BITS_ENV: "6"})
    assert result.exit_code == 3


def test_betti_csv():
    result = invoke("betti", "--n", "5", "--t", "2", "--format", "csv")
    assert result.exit_code == 0
    assert result.stdout.splitlines() == [
        "kind,n,t,i,j,beta,method",
        "cycle,5,2,1,2,5,oracle",
        "cycle,5,2,2,3,5,oracle",
        "cycle,5,2,3,5,1,oracle",
    ]


def test_betti_pretty():
    result = invoke("betti", "--kind", "line", "--n", "4", "--t", "2", "--method", "closed", "--format", "pretty")
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "line(n=4, t=2) p=1 d=1 char=0 method=closed"
    assert lines[1] == "I = (x1*x2, x2*x3, x3*x4)"
    assert "total: 1 3 2" in lines
    assert "pd = 2, reg = 1" in lines


def test_betti_vertices():
    result = invoke("betti", "--n", "8", "--t", "2", "--vertices", "1,2,3,5,6,7")
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)
    assert payload["vertices"] == [1, 2, 3, 5, 6, 7]
    assert payload["diff"] == []


def test_betti_vertices_on_a_line_is_a_usage_error():
    result = invoke("betti", "--kind", "line", "--n", "5", "--t", "2", "--method", "closed", "--vertices", "1,2")
    assert result.exit_code == 2


def test_homology_runs():
    result = invoke("homology", "--t", "2", "--runs", "4", "--explicit")
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["closed_form"] == {"degree": 1, "dimension": 1}
    assert report["explicit"] == {"1": 1}
    assert report["agree"] is True


def test_homology_ineligible_runs_are_acyclic():
    result = invoke("homology", "--t", "3", "--runs", "4,1")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["closed_form"] == {"degree": None, "dimension": 0}


def test_homology_full_cycle():
    result = invoke("homology", "--n", "6", "--t", "2", "--explicit", "--char", "2")
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert (report["p"], report["d"]) == (2, 0)
    assert report["closed_form"] == {"degree": 2, "dimension": 2}
    assert report["agree"] is True


def test_homology_needs_runs_or_n():
    assert invoke("homology", "--t", "2").exit_code == 2


def test_homology_explicit_cap():
    result = invoke("homology", "--n", "9", "--t", "2", "--explicit", "--max-subset-bits", "8")
    assert result.exit_code == 3


def test_verify_small_matrix():
    result = invoke("verify", "--max-n", "5", "--t-range", "2..3", "--char-list", "0,2")
    assert result.exit_code == 0, result.stdout
    lines = result.stdout.splitlines()
    assert lines[-1].endswith(", 0 failed")
    assert any(line.startswith("PASS oracle-vs-closed cycle n=3 t=2") for line in lines)
    assert not any(line.startswith("FAIL") for line in lines)


def test_verify_json():
    result = invoke("verify", "--max-n", "4", "--t-range", "2", "--char-list", "0", "--format", "json")
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["failed"] == 0
    assert payload["total"] == len(payload["cells"])
    checks = {cell["check"] for cell in payload["cells"]}
    assert {"oracle-vs-closed", "top-degree", "vanishing", "pd-reg", "complement-homology", "run-homology"} <= checks


def test_verify_empty_range(caplog):
    with caplog.at_level(logging.WARNING):
        result = invoke("verify", "--max-n", "4", "--t-range", "6..7")
    assert result.exit_code == 0
    assert result.stdout.strip() == "0 cells, 0 failed"
    assert "no cells" in caplog.text


def test_version():
    result = invoke("--version")
    assert result.exit_code == 0


def test_homology_run_of_three_is_acyclic():
    result = invoke("homology", "--runs", "3", "--t", "2", "--explicit")
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["closed_form"]["degree"] is None
    assert report["explicit"] == {}


def test_verify_reports_the_triangle():
    result = invoke("verify", "--max-n", "3", "--t-range", "2..2", "--char-list", "0")
    assert result.exit_code == 0
    assert "PASS oracle-vs-closed cycle n=3 t=2 char=0 (boundary case)" in result.stdout.splitlines()


def test_verify_stops_at_the_oracle_cap():
    result = invoke("verify", "--max-n", "5", "--t-range", "2..2", "--char-list", "0",
                    env={MAX_SUBSET_BITS_ENV: "4"})
    assert result.exit_code == 3
    assert result.stderr.startswith("Resource limit: 5 vertices exceed the oracle cap of 4")


def test_verify_cap_flag():
    result = invoke("verify", "--max-n", "6", "--t-range", "3..3", "--char-list", "0",
                    "--max-subset-bits", "5")
    assert result.exit_code == 3
    assert "Resource limit" in result.stderr


def test_verify_without_run_sequences():
    result = invoke("verify", "--max-n", "4", "--t-range", "2..2", "--char-list", "0",
                    "--max-run-vertices", "0", "--format", "json")
    assert result.exit_code == 0
    checks = {cell["check"] for cell in json.loads(result.stdout)["cells"]}
    assert "run-homology" not in checks
    assert "oracle-vs-closed" in checks
