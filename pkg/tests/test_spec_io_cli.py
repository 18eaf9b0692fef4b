import csv
import io
import json
from fractions import Fraction

import pytest

from ncurv import spec_io
from ncurv.cli import EXIT_FAILED, EXIT_INVALID, EXIT_OK, EXIT_PARSE, EXIT_RESOURCE, main
from ncurv.config import RunConfig
from ncurv.cpmap import defect_sequence
from ncurv.operators import Compression, DecayingAtomic, DenseTuple, LeftRegular, ValidationError
from ncurv.report import SCHEMA_VERSION, Report

F = Fraction

SPECS = {
    "lr": {"type": "left_regular", "n": 2, "alpha": 1},
    "dense": {"type": "dense", "n": 2, "payload": {"matrices": [[["3/5", 0], [0, 0]], [["4/5", 0], [0, "1/2"]]]}},
    "atomic": {"type": "atomic", "n": 2, "payload": {"u": "1", "r": ["1/4"]}},
    "comp": {
        "type": "compression",
        "n": 2,
        "payload": {"orientation": "complement", "generators": [{"kind": "finite", "data": {"e": 1}}]},
    },
    "geom": {
        "type": "compression",
        "n": 2,
        "payload": {
            "generators": [{"kind": "geometric", "data": {"stem": "1", "letter": 1, "coef": "3/4", "ratio": "1/2", "head": {"e": "-1/2"}}}]
        },
    },
    "sum": {"type": "direct_sum", "payload": {"first": {"type": "left_regular", "n": 2}, "second": {"type": "atomic", "n": 2, "payload": {"u": "1", "lambda": ["1/2"]}}}},
    "mix": {"type": "unitary_mix", "payload": {"base": {"type": "atomic", "n": 2, "payload": {"u": "1", "r": ["1/4"]}}, "U": [["3/5", "4/5"], ["-4/5", "3/5"]]}},
    "cat": {"type": "catalog", "payload": {"name": "binary_expansion", "params": {"bits": "101"}}},
}


def write(tmp_path, spec, name="spec.json"):
    p = tmp_path / name
    p.write_text(spec if isinstance(spec, str) else json.dumps(spec))
    return p


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_each_type():
    kinds = {"lr": LeftRegular, "dense": DenseTuple, "atomic": DecayingAtomic, "comp": Compression, "geom": Compression}
    for key, cls in kinds.items():
        assert isinstance(spec_io.build(SPECS[key]), cls)
    s = defect_sequence(spec_io.build(SPECS["sum"]), 3)
    assert s.traces[0] == 1 + F(3, 4)
    mixed = defect_sequence(spec_io.build(SPECS["mix"]), 3)
    assert mixed.records == defect_sequence(spec_io.build(SPECS["atomic"]), 3).records
    assert spec_io.build(SPECS["cat"]).n == 2


def test_geometric_generator_is_eigenvector_complement():
    # -1/2 xi_e + 3/4 sum_{t>=1} (1/2)^(t-1) xi_{1^t} has norm 1/4 + (9/16)(4/3) = 1
    A = spec_io.build(SPECS["geom"])
    assert defect_sequence(A, 4).traces == defect_sequence(spec_io.build(SPECS["atomic"]), 4).traces


def test_copy_prefixed_words():
    spec = {"type": "compression", "n": 2, "alpha": 2, "payload": {"generators": [{"kind": "finite", "data": {"1:e": 1}}]}}
    A = spec_io.build(spec)
    assert defect_sequence(A, 2).traces == [1, 3]


@pytest.mark.parametrize(
    "spec,match",
    [
        ({"n": 2}, "missing field 'type'"),
        ({"type": "banana", "n": 2}, "unknown type"),
        ({"type": "left_regular", "n": "2"}, "integer"),
        ({"type": "dense", "n": 2, "payload": {"matrices": [[[1]]]}}, "needs 2 matrices"),
        ({"type": "dense", "n": 1, "payload": {"matrices": [[[1, 2], [3]]]}}, "different lengths"),
        ({"type": "dense", "n": 1, "payload": {"matrices": [[["x"]]]}}, "A_1"),
        ({"type": "atomic", "n": 2, "payload": {"u": "1"}}, "lambda or r"),
        ({"type": "compression", "n": 2, "payload": {"generators": [{"kind": "finite", "data": {"3": 1}}]}}, "outside"),
        ({"type": "compression", "n": 2, "payload": {"generators": [{"kind": "cloud", "data": {}}]}}, "unknown generator kind"),
        ({"type": "compression", "n": 2, "payload": {"orientation": "sideways", "generators": []}}, "orientation"),
        ({"type": "catalog", "payload": {"name": "nope"}}, "unknown"),
        ({"type": "catalog", "payload": {"name": "cyclic_range"}}, "subspace"),
    ],
)
def test_malformed_specs(spec, match):
    with pytest.raises(spec_io.SpecError, match=match):
        spec_io.build(spec)


def test_invalid_operators_raise_validation_error():
    with pytest.raises(ValidationError):
        spec_io.build({"type": "dense", "n": 2, "payload": {"matrices": [[[1]], [[1]]]}})
    with pytest.raises(ValidationError):
        spec_io.build({"type": "compression", "n": 2, "payload": {"generators": [{"kind": "finite", "data": {"e": 2}}]}})
    with pytest.raises(ValidationError):
        spec_io.build({"type": "unitary_mix", "payload": {"base": SPECS["lr"], "U": [[1, 1], [0, 1]]}})


def test_compute_json_report(tmp_path, capsys):
    code, out, _ = run(["compute", write(tmp_path, SPECS["lr"]), "--kmax", 10], capsys)
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["schema_version"] == SCHEMA_VERSION and "timing" not in d
    assert d["invariants"]["curvature"]["value"] == "1023/1024"
    assert d["invariants"]["freeness"]["verdict"] == "free-consistent"
    assert [r["trace"] for r in d["sequence"]][:3] == ["1", "3", "7"]


def test_compute_is_deterministic_and_round_trips(tmp_path, capsys):
    p = write(tmp_path, SPECS["sum"])
    _, a, _ = run(["compute", p, "--kmax", 8], capsys)
    _, b, _ = run(["compute", p, "--kmax", 8], capsys)
    assert a == b
    rep = Report.from_json(a)
    assert rep.to_json() + "\n" == a
    with pytest.raises(ValueError):
        Report.from_dict({**json.loads(a), "schema_version": "other/0"})


def test_timing_flag(tmp_path, capsys):
    _, out, _ = run(["compute", write(tmp_path, SPECS["lr"]), "--kmax", 3, "--timing"], capsys)
    assert json.loads(out)["timing"]["seconds"] >= 0


def test_compute_csv(tmp_path, capsys):
    code, out, _ = run(["compute", write(tmp_path, SPECS["atomic"]), "--kmax", 4, "--format", "csv"], capsys)
    assert code == EXIT_OK and out.endswith("\r\n")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["trace"] for r in rows] == ["3/4", "27/16", "219/64", "1755/256"]
    assert rows[0]["normalized_trace"] == "3/8"


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(["compute", write(tmp_path, SPECS["dense"]), "--kmax", 3, "--out", target], capsys)
    assert code == EXIT_OK and out == ""
    assert json.loads(target.read_text())["command"] == "compute"


def test_exit_codes(tmp_path, capsys):
    bad_json = write(tmp_path, "{not json", "bad.json")
    assert run(["compute", bad_json], capsys)[0] == EXIT_PARSE
    assert run(["compute", tmp_path / "missing.json"], capsys)[0] == EXIT_PARSE
    not_contraction = write(tmp_path, {"type": "dense", "n": 2, "payload": {"matrices": [[[1]], [[1]]]}}, "nc.json")
    code, _, err = run(["compute", not_contraction], capsys)
    assert code == EXIT_INVALID and "largest eigenvalue" in err
    big = write(tmp_path, SPECS["comp"], "big.json")
    assert run(["compute", big, "--kmax", 8, "--cap", 50], capsys)[0] == EXIT_RESOURCE
    assert run(["sweep", "binary_expansion", "--param", "colour", "--values", "1"], capsys)[0] == EXIT_PARSE
    assert run(["sweep", "binary_expansion", "--param", "bits"], capsys)[0] == EXIT_PARSE
    assert run(["sweep", "curvature_range", "--param", "r", "--values", "3/4"], capsys)[0] == EXIT_INVALID


def test_cap_from_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("NCURV_BASIS_CAP", "50")
    assert run(["compute", write(tmp_path, SPECS["comp"]), "--kmax", 8], capsys)[0] == EXIT_RESOURCE
    assert run(["compute", write(tmp_path, SPECS["comp"]), "--kmax", 8, "--cap", 1000], capsys)[0] == EXIT_OK


def test_verify_exit_and_csv(capsys):
    code, out, _ = run(["verify", "hierarchy", "--samples", 5, "--format", "csv", "--kmax", 4], capsys)
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 5 and all(r["passed"] == "True" for r in rows)


def test_verify_reports_failure(capsys, monkeypatch):
    from ncurv import cli, verify

    def broken(name, cfg):
        return [verify.Check("paper", "x", "y", 1, 2, 1.0, 0.0, False, "")]

    monkeypatch.setattr(cli, "run_suite", broken)
    code, _, err = run(["verify", "paper"], capsys)
    assert code == EXIT_FAILED and "1 check(s) failed" in err


def test_sweep_rows(capsys):
    code, out, _ = run(["sweep", "binary_expansion", "--param", "bits", "--values", "1", "11", "101", "--kmax", 12], capsys)
    assert code == EXIT_OK
    rows = json.loads(out)["rows"]
    assert [r["K_expected"] for r in rows] == ["1/2", "3/4", "5/8"]
    code, out, _ = run(["sweep", "decaying_lambda", "--param", "lam", "--grid", "0:1:3", "--backend", "float", "--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_OK and len(rows) == 3 and rows[0]["value"] == "0.0"
    code, out, _ = run(["sweep", "cyclic_range", "--param", "r", "--values", "1/8", "1/4", "--set", "n=3", "--kmax", 9], capsys)
    rows = json.loads(out)["rows"]
    assert code == EXIT_OK and abs(rows[1]["K_approx"] - 0.25) < 1e-4


def test_catalog_commands(capsys):
    code, out, _ = run(["catalog", "list"], capsys)
    assert code == EXIT_OK and "truncation_family" in out
    code, out, _ = run(["catalog", "show", "truncation_family", "--set", "l=3"], capsys)
    d = json.loads(out)
    assert d["expected"]["stable_rank"] == "7" and d["parameter_schema"] == {"l": "int", "n": "int"}
    assert run(["catalog", "show", "left_regular", "--set", "n"], capsys)[0] == EXIT_PARSE


def test_argparse_rejects_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "everything"])
    assert exc.value.code == 2


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(k_max=0)
    with pytest.raises(ValueError):
        RunConfig(backend="quad")
    with pytest.raises(ValueError):
        RunConfig(output_format="xml")
    assert RunConfig(basis_cap=7).to_dict()["basis_cap"] == 7
