"""The suite runner and report formats."""

import json

import pytest

from polycoh.cli import build_parser, config_from_args, main
from polycoh.report import (SuiteConfig, emit_report, parse_report,
                            run_suite)


@pytest.fixture(scope="module")
def default_report():
    cfg = SuiteConfig(ns=(3,), seeds=(0, 1, 2, 3, 4))
    return run_suite(cfg)


def test_default_suite_all_pass(default_report):
    assert default_report.all_pass
    names = {c.name for c in default_report.checks}
    assert names == {"relation", "ranks", "cocycle4", "cocycle5",
                     "dethad", "bockstein"}
    [table] = default_report.rank_tables
    assert table["dims"] == [21, 42, 21]
    assert (table["rank_low"], table["rank_high"]) == (20, 21)
    assert table["middle_cohomology_dim"] == 1


def test_ranks_only_other_polygons():
    cfg = SuiteConfig(ns=(2, 4, 5), seeds=(0,), bound=5,
                      checks=("ranks",))
    report = run_suite(cfg)
    assert report.all_pass
    got = {t["n"]: (t["rank_low"], t["rank_high"],
                    t["middle_cohomology_dim"])
           for t in report.rank_tables}
    assert got == {2: (9, 6, 0), 4: (35, 55, 0), 5: (54, 111, 0)}


def test_tampered_relation_fails_with_witness():
    cfg = SuiteConfig(ns=(3,), seeds=(0,), checks=("relation",), tamper=True)
    report = run_suite(cfg)
    assert not report.all_pass
    [check] = report.checks
    assert check.verdict == "fails"
    witness = check.details["witness"]
    assert witness["lhs"] != witness["rhs"]


def test_json_round_trip(default_report):
    text = emit_report(default_report, "json")
    back = parse_report(text)
    assert back.meta == default_report.meta
    assert back.checks == default_report.checks
    assert back.rank_tables == default_report.rank_tables


def test_json_deterministic():
    cfg = SuiteConfig(ns=(3,), seeds=(0,), checks=("relation", "cocycle4"))
    a = emit_report(run_suite(cfg), "json")
    b = emit_report(run_suite(cfg), "json")
    assert a == b  # timings excluded by default


def test_markdown_rank_row(default_report):
    text = emit_report(default_report, "markdown")
    assert "| 3 | Q | 21 → 42 → 21 | 20/21 | H = 1 |" in text
    assert "overall: PASS" in text


def test_prime_field_ranks_reported_exploratory():
    cfg = SuiteConfig(ns=(2,), field_names=("Fq:101",), seeds=(0,),
                      checks=("ranks",))
    report = run_suite(cfg)
    [check] = report.checks
    assert check.verdict == "exploratory"
    assert report.all_pass  # exploratory results never fail the run


def test_explicit_params_file(tmp_path, hepta):
    path = tmp_path / "params.json"
    path.write_text(hepta.to_json())
    rc = main(["verify-relation", "--params", str(path), "--seeds", "0",
               "--out", str(tmp_path / "report.json")])
    assert rc == 0
    data = json.loads((tmp_path / "report.json").read_text())
    assert data["checks"][0]["verdict"] == "holds"


def test_cli_exit_codes(tmp_path):
    out = tmp_path / "r.json"
    ok = main(["verify-relation", "--n", "2", "--seeds", "0,1",
               "--out", str(out)])
    assert ok == 0
    bad = main(["verify-relation", "--n", "2", "--seeds", "0", "--tamper",
                "--out", str(out)])
    assert bad == 1


def test_cli_seed_range_parsing():
    args = build_parser().parse_args(["verify-relation", "--seeds", "0..19"])
    cfg = config_from_args(args)
    assert cfg.seeds == tuple(range(20))


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(checks=()).validate()
    with pytest.raises(ValueError):
        SuiteConfig(checks=("no-such-check",)).validate()
    with pytest.raises(ValueError):
        SuiteConfig(field_names=("Fq:2",)).validate()


def test_parallel_jobs_match_serial():
    cfg1 = SuiteConfig(ns=(2,), seeds=(0, 1), checks=("relation", "ranks"))
    cfg2 = SuiteConfig(ns=(2,), seeds=(0, 1), checks=("relation", "ranks"),
                       jobs=2)
    assert emit_report(run_suite(cfg1), "json") == \
        emit_report(run_suite(cfg2), "json")
