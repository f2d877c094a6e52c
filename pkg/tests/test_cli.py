import csv
import io
import json

import pytest
from mpmath import mpf

from fracident import cli
from fracident.config import RunConfig, config_from_mapping, env_overrides
from fracident.errors import ConfigurationError, InputFormatError
from fracident.fileio import (
    params_from_mapping,
    params_to_mapping,
    tf_from_mapping,
    tf_to_mapping,
)
from fracident.gl_model import model_tf

EXAMPLE = {"r_inf": "0.01", "r1": "0.2", "c1": "3", "alpha1": "0.8", "c2": "400",
         "alpha2": "0.5", "ts": "5e-4"}


@pytest.fixture
def params_file(tmp_path):
    path = tmp_path / "params.json"
    path.write_text(json.dumps(EXAMPLE))
    return path


def run(argv, capsys):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def rows_of(text):
    return list(csv.reader(io.StringIO(text)))


def test_analyze_params_file(params_file, capsys):
    code, out, _ = run(["analyze", "--params", params_file], capsys)
    doc = json.loads(out)
    assert code == cli.EXIT_OK
    assert doc["verdict"] == "GloballyIdentifiable"
    statuses = sorted(c["status"] for c in doc["candidates"])
    assert statuses == sorted(["RejectedRange", "Accepted", "RejectedInterval", "RejectedInterval",
                               "RejectedVerification", "RejectedRange", "RejectedComplex",
                               "RejectedComplex"])
    lo, hi = (float(x) for x in doc["exclusion_interval"])
    assert round(lo, 5) == 0.52024 and round(hi, 5) == 0.77595


def test_analyze_coefficients_file(circuit_params, tmp_path, capsys):
    path = tmp_path / "tf.json"
    path.write_text(json.dumps(tf_to_mapping(model_tf(circuit_params))))
    code, out, _ = run(["analyze", "--coeffs", path, "--ts", "5e-4", "--out", tmp_path / "r.json"], capsys)
    assert code == 0
    doc = json.loads((tmp_path / "r.json").read_text())
    (acc,) = [c for c in doc["candidates"] if c["status"] == "Accepted"]
    assert abs(mpf(acc["recovered"]["c2"]) - 400) < 1e-40


def test_analyze_rejects_invalid_alpha(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({**EXAMPLE, "alpha2": "1.2"}))
    code, _, err = run(["analyze", "--params", path], capsys)
    assert code == cli.EXIT_INPUT
    assert "alpha2" in err


def test_analyze_malformed_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"r_inf": "0.01",\n "r1": }')
    code, _, err = run(["analyze", "--params", path], capsys)
    assert code == cli.EXIT_INPUT
    assert "line 2" in err


def test_analyze_needs_one_input(params_file, tmp_path):
    with pytest.raises(SystemExit):
        cli.main(["analyze"])
    with pytest.raises(SystemExit):
        cli.main(["analyze", "--params", str(params_file), "--coeffs", str(params_file)])


def test_roundtrip_example(params_file, capsys):
    code, out, _ = run(["roundtrip", "--params", params_file], capsys)
    doc = json.loads(out)
    assert code == 0
    assert all(float(v) < 1e-8 for v in doc["relative_errors"].values())


def test_roundtrip_deterministic(params_file, capsys):
    docs = []
    for _ in range(2):
        _, out, _ = run(["roundtrip", "--params", params_file], capsys)
        doc = json.loads(out)
        doc.pop("timings")
        docs.append(json.dumps(doc, sort_keys=True))
    assert docs[0] == docs[1]


def test_roundtrip_equal_exponents(tmp_path, capsys):
    path = tmp_path / "eq.json"
    path.write_text(json.dumps({**EXAMPLE, "alpha1": "0.5"}))
    code, out, _ = run(["roundtrip", "--params", path], capsys)
    doc = json.loads(out)
    assert doc["verdict"]
    assert code in cli.VERDICT_EXIT.values()


def test_sweep_small(tmp_path, capsys):
    code, out, err = run(["sweep", "--samples", 3, "--seed", 11], capsys)
    rows = rows_of(out)
    assert code == 0
    assert rows[0][:2] == ["index", "r_inf"]
    assert len(rows) == 4
    assert all(r[7] == "GloballyIdentifiable" for r in rows[1:])
    assert "GloballyIdentifiable: 3" in err
    _, again, _ = run(["sweep", "--samples", 1, "--seed", 11], capsys)
    assert rows_of(again)[1] == rows[1]


def test_sweep_point_ranges(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    point = {k: [v, v] for k, v in
             {"r_inf": 0.05, "r1": 1.0, "c1": 5.0, "c2": 200.0, "alpha1": 0.7, "alpha2": 0.3}.items()}
    cfg.write_text(json.dumps({"ranges": point, "samples": 3, "T": 20}))
    code, out, _ = run(["sweep", "--config", cfg], capsys)
    rows = rows_of(out)[1:]
    assert code == 0
    assert len({tuple(r[1:]) for r in rows}) == 1


def test_sweep_parallel_matches_serial(capsys):
    _, serial, _ = run(["sweep", "--samples", 2, "--seed", 5, "--T", 10], capsys)
    _, parallel, _ = run(["sweep", "--samples", 2, "--seed", 5, "--T", 10, "--workers", 2], capsys)
    assert serial == parallel


def test_spectra(params_file, tmp_path, capsys):
    code, out, _ = run(["spectra", "--params", params_file], capsys)
    rows = rows_of(out)
    assert code == 0
    assert rows[0] == ["omega", "z_re", "z_im"]
    assert len(rows) == 201
    grid = tmp_path / "grid.csv"
    grid.write_text("omega\n0.1\n1\n10\n")
    _, out, _ = run(["spectra", "--params", params_file, "--grid", grid], capsys)
    assert len(rows_of(out)) == 4
    grid.write_text("omega\n0\n1\n")
    code, _, err = run(["spectra", "--params", params_file, "--grid", grid], capsys)
    assert code != 0 and "positive" in err


def test_legacy(params_file, capsys):
    code, out, _ = run(["legacy", "--params", params_file], capsys)
    rows = rows_of(out)[1:]
    assert code == 0
    g0 = [float(r[1]) for r in rows]
    assert [int(r[0]) for r in rows] == [10, 20, 50, 100]
    assert all(a > b for a, b in zip(g0, g0[1:]))
    assert all(float(r[6]) < 1e-30 and float(r[7]) < 1e-30 for r in rows)
    _, out, _ = run(["legacy", "--example", "--T-list", "30"], capsys)
    assert len(rows_of(out)) == 2


def test_legacy_rejects_small_T(params_file, capsys):
    code, _, err = run(["legacy", "--params", params_file, "--T-list", "5"], capsys)
    assert code == cli.EXIT_USAGE


def test_env_and_flag_precedence(monkeypatch, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"digits": 40, "seed": 3}))
    monkeypatch.setenv("FRACIDENT_DIGITS", "50")
    args = cli.build_parser().parse_args(["sweep", "--config", str(cfg)])
    resolved = cli.resolve_config(args)
    assert resolved.digits == 50 and resolved.seed == 3
    args = cli.build_parser().parse_args(["sweep", "--config", str(cfg), "--digits", "45"])
    assert cli.resolve_config(args).digits == 45


def test_config_validation():
    with pytest.raises(ConfigurationError):
        config_from_mapping({"ranges": {"r1": [2, 1]}})
    with pytest.raises(ConfigurationError):
        config_from_mapping({"ranges": {"bogus": [1, 2]}})
    with pytest.raises(ConfigurationError):
        config_from_mapping({"nonsense": 1})
    with pytest.raises(ConfigurationError):
        RunConfig(digits=10)
    with pytest.raises(ConfigurationError):
        env_overrides({"FRACIDENT_SEED": "x"})


def test_params_document_roundtrip():
    p = params_from_mapping(EXAMPLE)
    again = params_from_mapping(params_to_mapping(p))
    assert again == p
    with pytest.raises(InputFormatError, match="c2"):
        params_from_mapping({k: v for k, v in EXAMPLE.items() if k != "c2"})
    with pytest.raises(InputFormatError, match="r1"):
        params_from_mapping({**EXAMPLE, "r1": [1]})


def test_tf_document_roundtrip(circuit_params):
    tf = model_tf(circuit_params.replace(horizon_T=8))
    doc = json.loads(json.dumps(tf_to_mapping(tf)))
    back = tf_from_mapping(doc)
    assert back.T == 8
    assert all(abs(a - b) <= 1e-58 * max(abs(a), 1e-30) for a, b in zip(back.g, tf.g))
    with pytest.raises(InputFormatError):
        tf_from_mapping({"f": [1, 2], "g": [1, 2]})
    with pytest.raises(InputFormatError):
        tf_from_mapping({"f": doc["f"], "g": doc["g"], "T": 9})
