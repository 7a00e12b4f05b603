import json
from fractions import Fraction
from pathlib import Path

import pytest

from bvmetric.cli import RunConfig, main, run
from bvmetric.jsonio import SchemaError, dumps, parse_input, parse_map, parse_space, space_to_dict

GOLDEN = Path(__file__).parent / "golden"

# command line -> golden report file; regenerate with tests/make_golden.py
GOLDEN_CASES = {
    "verify_reciprocal.json": ["verify", "--gallery", "reciprocal_space", "--n", "10", "--v", "3", "--s", "3"],
    "verify_union.json": ["verify", "--gallery", "union_space", "--n", "12"],
    "contractive_naturals.json": ["contractive", "--gallery", "naturals_space", "--n", "40"],
    "iterate_reciprocal.json": ["iterate", "--gallery", "reciprocal_space", "--n", "10", "--x0", "1/2"],
    "condition_b_naturals.json": ["condition-b", "--gallery", "naturals_space", "--x0", "5", "--epsilon", "3/2", "--horizon", "6"],
    "min_s_random.json": ["min-s", "--gallery", "random_space", "--n", "5", "--seed", "1", "--v", "2"],
}


def cli(argv, capsys):
    status = main(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return status, (json.loads(out) if out else None)


def test_verify_reciprocal(capsys):
    status, rep = cli(["verify", "--gallery", "reciprocal_space", "--n", "10", "--v", "3", "--s", "3"], capsys)
    assert status == 0 and rep["result"]["verdict"] == "certified"
    assert rep["truncation_size"] == 10 and rep["tuple_budget"] == 10**9


def test_contractive_naturals(capsys):
    status, rep = cli(["contractive", "--gallery", "naturals_space", "--n", "40"], capsys)
    assert status == 1
    first = rep["result"]["violations"][0]
    assert {first["x"], first["y"]} == {"10", "11"}
    assert (first["before"], first["after"]) == ("1/10", "2")


def test_iterate_reciprocal(capsys):
    status, rep = cli(["iterate", "--gallery", "reciprocal_space", "--n", "10", "--x0", "1/2"], capsys)
    assert status == 0
    res = rep["result"]
    assert res["trace"]["fixed_point"] == "1/4"
    assert res["first_index"] == 1 and res["converged"]


def test_adjudicate_naturals(capsys):
    status, rep = cli(["adjudicate", "--gallery", "naturals_space"], capsys)
    assert status == 1
    res = rep["result"]
    assert res["certification"]["verdict"] == "certified"
    assert res["errata"] == ["claimed contractivity refuted"]
    assert res["fixed_points"] == []
    assert res["orbits"]["5"]["trace"]["cycle"] == {"entry": 2, "period": 2}


def test_adjudicate_reciprocal_clean(capsys):
    status, rep = cli(["adjudicate", "--gallery", "reciprocal_space"], capsys)
    assert status == 0 and rep["result"]["errata"] == []
    assert rep["result"]["fixed_points"] == ["1/4"]


def test_adjudicate_unit_sequence_partial(capsys):
    status, rep = cli(["adjudicate", "--gallery", "unit_sequence_space"], capsys)
    assert status == 0
    e1 = rep["result"]["orbits"]["e1"]
    assert e1["trace"]["escaped"] and "skipped" in e1["condition_B"]


def test_orbit_bound_claim(capsys):
    argv = ["orbit-bound", "--gallery", "unit_sequence_space", "--x0", "e1", "--v", "2", "--horizon", "13"]
    assert cli(argv + ["--max-bound", "200"], capsys)[0] == 0
    assert cli(argv + ["--max-bound", "1"], capsys)[0] == 1


def test_budget_exceeded(capsys):
    status = main(["verify", "--gallery", "naturals_space", "--budget", "1000", "--format", "json"])
    rep = json.loads(capsys.readouterr().out)
    assert status == 2 and rep["required_budget"] == 40**4


@pytest.mark.parametrize(
    "argv",
    [
        ["verify"],
        ["verify", "--gallery", "halving_space", "--space", "x.json"],
        ["contractive", "--gallery", "union_space"],
        ["iterate", "--gallery", "reciprocal_space"],
        ["iterate", "--gallery", "reciprocal_space", "--x0", "7"],
        ["verify", "--gallery", "halving_space", "--budget", "0"],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == 2


def test_bad_flag_value_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--gallery", "halving_space", "--s", "1/0"])
    assert info.value.code == 2


def test_space_and_map_files(tmp_path, capsys):
    space = tmp_path / "space.json"
    space.write_text(json.dumps({"labels": ["a", "b", "c"], "dist": [["0", "1", "2"], ["1", "0", "1"], ["2", "1", "0"]]}))
    tmap = tmp_path / "map.json"
    tmap.write_text(json.dumps({"map": {"a": "b", "b": "b", "c": "b"}}))
    status, rep = cli(["iterate", "--space", str(space), "--map", str(tmap), "--x0", "a"], capsys)
    assert status == 0 and rep["result"]["trace"]["fixed_point"] == "b"
    status, rep = cli(["verify", "--space", str(space), "--v", "1", "--s", "1"], capsys)
    assert status == 0
    assert main(["contractive", "--space", str(space)]) == 2


def test_bad_rational_location(tmp_path, capsys):
    space = tmp_path / "space.json"
    space.write_text(json.dumps({"labels": ["a", "b"], "dist": [["0", "1/0"], ["1", "0"]]}))
    status, rep = cli(["verify", "--space", str(space), "--v", "1", "--s", "1"], capsys)
    assert status == 2 and rep["location"] == "/dist/0/1"


def test_output_and_csv(tmp_path, capsys):
    out, csv_path = tmp_path / "r.json", tmp_path / "d.csv"
    status = main([
        "iterate", "--gallery", "halving_space", "--n", "6", "--x0", "1",
        "--format", "json", "--output", str(out), "--csv", str(csv_path),
    ])
    assert status == 0
    assert json.loads(out.read_text())["result"]["trace"]["fixed_point"] == "0"
    rows = csv_path.read_text().splitlines()
    assert rows[0] == "n,x_n,gap1,gap1_float,to_fixed,to_fixed_float"
    assert rows[1].startswith("0,1,1/2,0.5,1,1.0")


def test_text_report_mentions_scope(capsys):
    main(["verify", "--gallery", "reciprocal_space"])
    text = capsys.readouterr().out
    assert "truncation size: 10" in text and "tuple budget: 1000000000" in text


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_reports(name):
    status, report = run(RunConfig(**_namespace(GOLDEN_CASES[name])))
    assert dumps(report) == (GOLDEN / name).read_text()


def _namespace(argv):
    from bvmetric.cli import build_parser

    return vars(build_parser().parse_args(argv + ["--format", "json"]))


def test_parse_space_examples():
    sp = parse_space({"labels": ["a", "b"], "dist": [["0", "1"], ["1", "0"]]})
    assert sp.n == 2
    sp = parse_space('{"gallery": "halving_space", "n": 4}')
    assert sp.labels == ("1", "1/2", "1/4", "1/8", "1/16", "0")


@pytest.mark.parametrize(
    "doc, pointer",
    [
        ({"labels": ["a", "b"], "dist": [["0", "1/0"], ["1", "0"]]}, "/dist/0/1"),
        ({"labels": ["a", "b"], "dist": [["0", 0.5], ["0.5", "0"]]}, "/dist/0/1"),
        ({"labels": ["a", "b"], "dist": [["0", "1"], ["2", "0"]]}, "/dist/0/1"),
        ({"labels": ["a", "b"], "dist": [["0", "1"]]}, "/dist"),
        ({"labels": "ab", "dist": []}, "/labels"),
        ({"gallery": "naturals_space", "n": 3}, "/gallery"),
        ([1, 2], "/"),
    ],
)
def test_parse_errors_carry_pointer(doc, pointer):
    with pytest.raises(SchemaError) as info:
        parse_space(doc)
    assert info.value.pointer == pointer


def test_parse_map_forms():
    sp = parse_space({"labels": ["a", "b"], "dist": [["0", "1"], ["1", "0"]]})
    assert parse_map({"image": ["b", None]}, sp).image == (1, None)
    assert parse_map({"map": {"a": "a"}}, sp).image == (0, None)
    with pytest.raises(SchemaError) as info:
        parse_map({"image": ["b", "z"]}, sp)
    assert info.value.pointer == "/image/1"


def test_space_json_round_trip():
    inst_space, _, _ = parse_input({"gallery": "union_space", "n": 6})
    doc = json.loads(json.dumps(space_to_dict(inst_space)))
    assert parse_space(doc) == inst_space


def test_unconstrained_delta_serialization(capsys):
    status, rep = cli(["condition-a", "--gallery", "reciprocal_space", "--epsilon", "1"], capsys)
    assert status == 0
    assert rep["result"]["grid"] == [{"epsilon": "1", "delta": None, "unconstrained": True}]
