"""Job-file parsing, serialization round trips, and CLI behavior."""

from __future__ import annotations

import json

import pytest

from rmroot.cli import EXIT_ERROR, EXIT_INVALID, EXIT_OK, main
from rmroot.jobs import JobParseError, load_job, parse_job, serialize_job
from rmroot.oracle import SweepResult
from rmroot.places import Good, PotentiallyGood, PotentiallyToric, ToricSubtype

FULL_JOB = {
    "dimension": 1,
    "infinite_places": 1,
    "places": [
        {
            "label": "v7",
            "p": 7,
            "f": 1,
            "reduction": {"kind": "potentially_good", "e": 6},
        },
        {"label": "v11", "p": 11, "f": 1, "reduction": {"kind": "good"}},
        {
            "label": "v13",
            "p": 13,
            "f": 1,
            "reduction": {"kind": "potentially_toric", "subtype": "split"},
        },
    ],
}


def write_job(tmp_path, obj, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj) if isinstance(obj, dict) else obj, encoding="utf-8")
    return str(path)


# -- parsing ------------------------------------------------------------------


def test_parse_job_full():
    data = parse_job(FULL_JOB)
    assert data.dimension == 1
    assert data.infinite_places == 1
    assert [p.label for p in data.places] == ["v7", "v11", "v13"]
    assert data.places[0].reduction == PotentiallyGood(e=6)
    assert data.places[1].reduction == Good()
    assert data.places[2].reduction == PotentiallyToric(ToricSubtype.SPLIT)
    assert data.places[0].pp.q == 7


def test_parse_serialize_round_trip_is_stable():
    once = serialize_job(parse_job(FULL_JOB))
    twice = serialize_job(parse_job(once))
    assert once == twice
    # defaults are materialized in the canonical form
    assert once["places"][0]["reduction"]["galois_abelian"] is True
    assert once["places"][0]["reduction"]["artin_conductor"] == 0


def error_path(obj) -> str:
    with pytest.raises(JobParseError) as info:
        parse_job(obj)
    return info.value.path


def test_parse_errors_carry_json_paths():
    assert error_path({"dimension": 1, "places": [], "bogus": 0}) == "$.bogus"
    assert error_path({"places": []}) == "$"
    assert error_path({"dimension": True, "places": []}) == "$.dimension"
    assert error_path({"dimension": 1, "places": {}}) == "$.places"
    assert error_path({"dimension": 0, "places": []}) == "$"

    def with_place(place):
        return {"dimension": 1, "places": [place]}

    assert error_path(with_place({"label": "v", "p": 7, "f": 1})) == "$.places[0]"
    assert (
        error_path(with_place({"label": "v", "p": 7, "f": 1, "reduction": {}, "x": 0}))
        == "$.places[0].x"
    )
    assert error_path(with_place({"label": 3, "p": 7, "f": 1, "reduction": {"kind": "good"}})) == (
        "$.places[0].label"
    )
    assert error_path(with_place({"label": "v", "p": 6, "f": 1, "reduction": {"kind": "good"}})) == (
        "$.places[0]"
    )
    assert error_path(
        with_place({"label": "v", "p": 7, "f": 1, "reduction": {"kind": "mystery"}})
    ) == "$.places[0].reduction.kind"
    assert error_path(
        with_place(
            {"label": "v", "p": 7, "f": 1,
             "reduction": {"kind": "potentially_toric", "subtype": "weird"}}
        )
    ) == "$.places[0].reduction.subtype"
    assert error_path(
        with_place(
            {"label": "v", "p": 7, "f": 1,
             "reduction": {"kind": "potentially_good", "e": 6, "extra": 1}}
        )
    ) == "$.places[0].reduction.extra"
    assert error_path(
        with_place({"label": "v", "p": 7, "f": 1, "reduction": {"kind": "good", "e": 2}})
    ) == "$.places[0].reduction.e"
    # structural rejection surfaces at the reduction object
    assert error_path(
        with_place(
            {"label": "v", "p": 7, "f": 1, "reduction": {"kind": "potentially_good", "e": 0}}
        )
    ) == "$.places[0].reduction"
    # booleans are not integers
    assert error_path(
        with_place(
            {"label": "v", "p": 7, "f": 1,
             "reduction": {"kind": "potentially_good", "e": True}}
        )
    ) == "$.places[0].reduction.e"


def test_load_job_errors(tmp_path):
    with pytest.raises(JobParseError) as info:
        load_job(write_job(tmp_path, "{not json"))
    assert info.value.path == "$"
    with pytest.raises(OSError):
        load_job(str(tmp_path / "does-not-exist.json"))


# -- CLI: eval ----------------------------------------------------------------


def test_eval_table(tmp_path, capsys):
    assert main(["eval", write_job(tmp_path, FULL_JOB)]) == EXIT_OK
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0].split() == ["place", "case", "w_iota", "w"]
    assert lines[1].split() == ["v7", "pot_good_abelian", "-1", "-1"]
    assert lines[2].split() == ["v11", "good", "+1", "+1"]
    assert lines[3].split() == ["v13", "split_mult", "-1", "-1"]
    assert lines[4].startswith("global w = -1")
    assert len(lines) == 5  # a clean validation report prints nothing


def test_eval_json(tmp_path, capsys):
    assert main(["eval", write_job(tmp_path, FULL_JOB), "--format", "json"]) == EXIT_OK
    obj = json.loads(capsys.readouterr().out)
    assert obj["global_w"] == -1
    assert obj["global_w_iota"] == -1
    assert obj["validation"] == {"ok": True, "violations": [], "warnings": []}
    assert [p["case"] for p in obj["places"]] == ["pot_good_abelian", "good", "split_mult"]
    assert [p["w"] for p in obj["places"]] == [-1, 1, -1]


def test_eval_parse_and_io_errors(tmp_path, capsys):
    assert main(["eval", str(tmp_path / "missing.json")]) == EXIT_ERROR
    assert main(["eval", write_job(tmp_path, "{broken")]) == EXIT_ERROR
    assert main(["eval", write_job(tmp_path, {"dimension": 1})]) == EXIT_ERROR
    err = capsys.readouterr().err
    assert err.count("error:") == 3


def test_eval_validation_failure(tmp_path, capsys):
    job = {
        "dimension": 1,
        "places": [
            {
                "label": "bad5",
                "p": 5,
                "f": 1,
                "reduction": {"kind": "potentially_good", "e": 4, "r": 1},
            }
        ],
    }
    path = write_job(tmp_path, job)
    assert main(["eval", path]) == EXIT_INVALID
    captured = capsys.readouterr()
    assert "wild_totient_2g" in captured.out
    assert "wild_prime_mod4" in captured.out
    assert "error:" in captured.err

    assert main(["eval", path, "--format", "json"]) == EXIT_INVALID
    obj = json.loads(capsys.readouterr().out)
    codes = {v["code"] for v in obj["validation"]["violations"]}
    assert {"wild_totient_2g", "wild_prime_mod4"} <= codes
    assert obj["validation"]["ok"] is False


def test_eval_p2_multiplicative_opt_in(tmp_path, capsys):
    job = {
        "dimension": 1,
        "places": [
            {
                "label": "v2",
                "p": 2,
                "f": 1,
                "reduction": {"kind": "potentially_toric", "subtype": "split"},
            }
        ],
    }
    path = write_job(tmp_path, job)
    assert main(["eval", path]) == EXIT_INVALID
    capsys.readouterr()
    assert main(["eval", path, "--allow-p2-multiplicative", "--format", "json"]) == EXIT_OK
    obj = json.loads(capsys.readouterr().out)
    assert obj["global_w"] == -1
    assert [w["code"] for w in obj["validation"]["warnings"]] == [
        "p2_multiplicative_outside_hypotheses"
    ]
    assert main(["eval", path, "--allow-p2-multiplicative"]) == EXIT_OK
    assert "(warning)" in capsys.readouterr().out


# -- CLI: verify --------------------------------------------------------------


def test_verify_induced_small(capsys):
    assert main(["verify", "--suite", "induced", "--qmax", "5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "suite=induced checked=8 mismatches=0"


def test_verify_sp2_default_bound(capsys):
    assert main(["verify", "--suite", "sp2"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "suite=sp2 checked=87 mismatches=0"


def test_verify_abelian_small(capsys):
    assert main(["verify", "--suite", "abelian", "--pmax", "7", "--seed", "3"]) == EXIT_OK
    line = capsys.readouterr().out.splitlines()[0]
    assert line.startswith("suite=abelian") and line.endswith("mismatches=0")


def test_verify_bound_exceeded(capsys):
    assert main(["verify", "--suite", "gauss", "--qmax", "1001"]) == EXIT_ERROR
    assert "error:" in capsys.readouterr().err


def test_verify_reports_mismatches(capsys, monkeypatch):
    import rmroot.cli as cli

    fake = SweepResult("induced", checked=5)
    fake.record(q=3, index=2, oracle=1, formula=-1)
    monkeypatch.setitem(cli._SUITES, "induced", lambda args: fake)
    assert main(["verify", "--suite", "induced"]) == EXIT_ERROR
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "suite=induced checked=5 mismatches=1"
    assert 'MISMATCH {"formula": -1, "index": 2, "oracle": 1, "q": 3}' in out


# -- CLI: sweep ---------------------------------------------------------------


def test_sweep_abelian_csv(capsys):
    assert main(["sweep", "--case", "abelian", "--dimension", "1", "--q", "7"]) == EXIT_OK
    assert capsys.readouterr().out == (
        "q,e,r,case,w_iota,w\n"
        "7,1,0,abelian,1,1\n"
        "7,2,0,abelian,-1,-1\n"
        "7,3,0,abelian,1,1\n"
        "7,6,0,abelian,-1,-1\n"
    )


def test_sweep_induced_csv(capsys):
    args = ["sweep", "--case", "induced", "--dimension", "1", "--q", "5", "--conductor", "2"]
    assert main(args) == EXIT_OK
    assert capsys.readouterr().out == (
        "q,e,r,case,w_iota,w\n"
        "5,1,0,induced,-1,-1\n"
        "5,2,0,induced,1,1\n"
        "5,3,0,induced,-1,-1\n"
        "5,6,0,induced,1,1\n"
    )


def test_sweep_toric_and_good_rows(capsys):
    assert main(["sweep", "--case", "split", "--q", "5,9"]) == EXIT_OK
    assert capsys.readouterr().out == (
        "q,e,r,case,w_iota,w\n"
        "5,,,split,-1,-1\n"
        "9,,,split,-1,-1\n"
    )
    assert main(["sweep", "--case", "good", "--q", "9", "--dimension", "2"]) == EXIT_OK
    assert capsys.readouterr().out == "q,e,r,case,w_iota,w\n9,,,good,1,1\n"


def test_sweep_inadmissible_e_skipped(capsys):
    assert main(["sweep", "--case", "abelian", "--q", "7", "--e", "4,5"]) == EXIT_OK
    assert capsys.readouterr().out == "q,e,r,case,w_iota,w\n"


def test_sweep_argument_errors(capsys):
    assert main(["sweep", "--case", "good", "--q", "6"]) == EXIT_ERROR
    assert main(["sweep", "--case", "good", "--q", "7", "--dimension", "0"]) == EXIT_ERROR
    assert main(["sweep", "--case", "abelian", "--q", "7", "--e", "4,x"]) == EXIT_ERROR
    assert main(["sweep", "--case", "good", "--q", "7,nope"]) == EXIT_ERROR
    assert capsys.readouterr().err.count("error:") == 4


def test_sweep_even_dimension_all_plus_one(capsys):
    assert main(["sweep", "--case", "abelian", "--dimension", "2", "--qmax", "30"]) == EXIT_OK
    rows = capsys.readouterr().out.splitlines()[1:]
    assert rows
    for row in rows:
        assert row.split(",")[5] == "1"
