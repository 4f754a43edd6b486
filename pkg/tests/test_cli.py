import csv
import io
import json
import math

import click
import numpy as np
import pytest
from click.testing import CliRunner

from corrweave import (DensityState, NumericError, make_bell_product,
                       make_classical, make_ghz, tensor_product)
from corrweave.cli import (_handle_errors, _round12, load_state_file, main,
                           save_state_file)


runner = CliRunner()


def run(*args, **kwargs):
    result = runner.invoke(main, list(args), **kwargs)
    return result


def errtext(result):
    return result.output + getattr(result, "stderr", "")


def rows_from_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


# -- table ----------------------------------------------------------------


def test_table_n4_all_rows_agree():
    result = run("table", "--n", "4")
    assert result.exit_code == 0, errtext(result)
    rows = json.loads(result.output)
    assert len(rows) == 8
    by_family = {r["family"]: r for r in rows}
    assert all(r["agree"] is True for r in rows)
    assert all(r["matrix_max_dev"] <= 1e-8 for r in rows)
    assert all(r["units"] == "bits" for r in rows)
    ghz = by_family["ghz"]
    assert ghz["dist"] == [4.0, 2.0, 2.0, 0.0]
    assert ghz["genuine"] == [2.0, 0.0, 2.0]
    assert ghz["weaving"] == 8.0
    assert ghz["total"] == 4.0
    cls = by_family["classical"]
    assert cls["dist"] == [3.0, 1.0, 1.0, 0.0]
    assert by_family["bell-product"]["dist"] == [4.0, 0.0, 0.0, 0.0]
    assert by_family["classical-pair-product"]["total"] == 2.0


def test_table_n2_bell_equals_ghz():
    result = run("table", "--n", "2")
    assert result.exit_code == 0, errtext(result)
    by_family = {r["family"]: r for r in json.loads(result.output)}
    # a Bell pair is the two-party instance of both families
    assert by_family["bell-product"]["total"] == 2.0
    assert by_family["ghz"]["total"] == 2.0
    assert by_family["bell-product"]["dist"] == by_family["ghz"]["dist"]


def test_table_qudit_rows_scale_with_log_d():
    result = run("table", "--n", "6", "--d", "3", "--closed-form-only")
    assert result.exit_code == 0, errtext(result)
    by_family = {r["family"]: r for r in json.loads(result.output)}
    ratio = math.log2(3)
    for qudit, base in (("qudit-classical", "classical"),
                        ("qudit-bell-product", "bell-product")):
        got = by_family[qudit]["dist"]
        want = [_round12(v * ratio) for v in by_family[base]["dist"]]
        assert got == pytest.approx(want, abs=1e-12)
    assert all(r["mode"] == "closed-form" for r in by_family.values())


def test_table_large_n_needs_closed_form_flag():
    result = run("table", "--n", "12")
    assert result.exit_code == 3
    assert "closed-form-only" in errtext(result)

    result = run("table", "--n", "12", "--closed-form-only")
    assert result.exit_code == 0, errtext(result)
    by_family = {r["family"]: r for r in json.loads(result.output)}
    assert by_family["ghz"]["dist"][0] == 12.0
    assert by_family["ghz"]["matrix_max_dev"] is None


def test_table_odd_n_skips_pair_families():
    result = run("table", "--n", "5", "--closed-form-only")
    assert result.exit_code == 0, errtext(result)
    families = [r["family"] for r in json.loads(result.output)]
    assert families == ["classical", "ghz", "dicke-1", "qudit-classical"]


def test_table_csv_round_trips_json_values():
    as_json = run("table", "--n", "4")
    as_csv = run("table", "--n", "4", "--output", "csv")
    assert as_json.exit_code == 0 and as_csv.exit_code == 0
    jrows = json.loads(as_json.output)
    crows = rows_from_csv(as_csv.output)
    assert len(crows) == len(jrows)
    for j, c in zip(jrows, crows):
        assert c["family"] == j["family"]
        assert [float(v) for v in c["dist"].split(";")] == j["dist"]
        assert float(c["weaving"]) == j["weaving"]
        assert c["agree"] == "true"
        assert c["units"] == "bits"


def test_table_rejects_tiny_n():
    result = run("table", "--n", "1")
    assert result.exit_code == 2


# -- profile --------------------------------------------------------------


def test_profile_classical_family():
    result = run("profile", "--state", "classical:5")
    assert result.exit_code == 0, errtext(result)
    doc = json.loads(result.output)
    assert doc["family"] == "classical:5"
    assert doc["N"] == 5 and doc["d"] == 2
    assert doc["dist"] == [4.0, 2.0, 1.0, 1.0, 0.0]
    assert doc["genuine"] == [2.0, 1.0, 0.0, 1.0]
    assert doc["total"] == 4.0
    assert doc["neural_complexity"] == 2.0
    assert doc["mode"] == "symmetric-fast"
    assert doc["units"] == "bits"


def test_profile_brute_reports_minimizing_partitions():
    result = run("profile", "--state", "classical:5", "--mode", "brute")
    assert result.exit_code == 0, errtext(result)
    doc = json.loads(result.output)
    assert doc["mode"] == "brute"
    assert doc["argmin"][1] == [[0, 1], [2, 3], [4]]
    assert doc["argmin"][4] == [[0, 1, 2, 3, 4]]


def test_profile_weights_change_weaving_only():
    base = json.loads(run("profile", "--state", "ghz:4").output)
    uni = json.loads(run("profile", "--state", "ghz:4",
                         "--weights", "uniform").output)
    delta = json.loads(run("profile", "--state", "ghz:4",
                           "--weights", "delta:4").output)
    assert base["weaving"] == 8.0 and base["weights"] == "k-1"
    assert uni["weaving"] == 4.0
    assert delta["weaving"] == 2.0
    assert base["dist"] == uni["dist"] == delta["dist"]


def test_profile_weights_file(tmp_path):
    path = tmp_path / "w.json"
    path.write_text(json.dumps({"omega": [1, 2, 3]}), encoding="utf-8")
    result = run("profile", "--state", "ghz:4", "--weights", f"file:{path}")
    assert result.exit_code == 0, errtext(result)
    assert json.loads(result.output)["weaving"] == 8.0

    path.write_text(json.dumps({"omega": [1, 2]}), encoding="utf-8")
    result = run("profile", "--state", "ghz:4", "--weights", f"file:{path}")
    assert result.exit_code == 2
    assert "need 3" in errtext(result)

    path.write_text(json.dumps({"omega": [1], "big-omega": [1]}))
    result = run("profile", "--state", "ghz:2", "--weights", f"file:{path}")
    assert result.exit_code == 2


def test_profile_state_file_product_is_uncorrelated(tmp_path):
    rng = np.random.default_rng(7)
    amps = []
    for _ in range(3):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        amps.append(v / np.linalg.norm(v))
    product = DensityState.from_amplitudes(
        np.kron(np.kron(amps[0], amps[1]), amps[2]), (2, 2, 2))
    path = tmp_path / "product.json"
    save_state_file(product, str(path))
    result = run("profile", "--state", str(path))
    assert result.exit_code == 0, errtext(result)
    doc = json.loads(result.output)
    assert doc["file"] == str(path)
    assert doc["dims"] == [2, 2, 2]
    assert all(abs(v) <= 1e-9 for v in doc["dist"])
    assert doc["weaving"] <= 1e-9


def test_profile_state_file_round_trip_all_kinds(tmp_path):
    states = {
        "pure.json": make_ghz(3),
        "classical.json": make_classical(3),
        "mixed.json": tensor_product(
            DensityState.from_matrix(np.eye(2) / 2, (2,)), make_ghz(2)),
    }
    for name, state in states.items():
        path = tmp_path / name
        save_state_file(state, str(path))
        loaded = load_state_file(str(path))
        assert loaded.dims == state.dims
        dev = np.abs(loaded.to_matrix() - state.to_matrix()).max()
        assert dev == 0.0, name


def test_profile_malformed_state_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(
        {"dims": [2, 2], "kind": "pure", "payload": [[1.0, 0.0]]}))
    result = run("profile", "--state", str(path))
    assert result.exit_code == 2
    assert "payload" in errtext(result) and "4" in errtext(result)

    path.write_text("{not json")
    result = run("profile", "--state", str(path))
    assert result.exit_code == 2
    assert "invalid JSON" in errtext(result)

    path.write_text(json.dumps({"dims": [2], "kind": "thermal", "payload": []}))
    result = run("profile", "--state", str(path))
    assert result.exit_code == 2
    assert "thermal" in errtext(result)


def test_profile_unnormalized_state_file_is_an_argument_error(tmp_path):
    path = tmp_path / "unnorm.json"
    path.write_text(json.dumps(
        {"dims": [2], "kind": "pure", "payload": [[2.0, 0.0], [0.0, 0.0]]}))
    result = run("profile", "--state", str(path))
    assert result.exit_code == 2
    assert "payload" in errtext(result)


def test_profile_parallel_output_is_deterministic():
    serial = run("profile", "--state", "dicke:4:2", "--mode", "brute")
    threaded = run("profile", "--state", "dicke:4:2", "--mode", "brute",
                   "--parallel", "4")
    assert serial.exit_code == 0 and threaded.exit_code == 0
    assert serial.output == threaded.output
    doc = json.loads(serial.output)
    assert doc["dist"][1] == 2.50325833478


def test_profile_csv_matches_json():
    as_json = json.loads(run("profile", "--state", "ghz:4").output)
    as_csv = rows_from_csv(run("profile", "--state", "ghz:4",
                               "--output", "csv").output)
    assert len(as_csv) == 1
    row = as_csv[0]
    assert [float(v) for v in row["dist"].split(";")] == as_json["dist"]
    assert float(row["weaving"]) == as_json["weaving"]
    # partitions join with ";", blocks with "|", sites with ","
    assert row["argmin"].split(";")[0] == "0|1|2|3"


def test_profile_unknown_family_is_an_argument_error():
    result = run("profile", "--state", "nosuch:4")
    assert result.exit_code == 2
    assert "nosuch" in errtext(result)


def test_profile_single_party_state(tmp_path):
    path = tmp_path / "one.json"
    save_state_file(DensityState.from_amplitudes([1.0, 0.0], (2,)), str(path))
    result = run("profile", "--state", str(path))
    assert result.exit_code == 0, errtext(result)
    doc = json.loads(result.output)
    assert doc["N"] == 1
    assert doc["dist"] == [0.0]
    assert doc["genuine"] == []
    assert doc["weaving"] == 0.0


# -- scaling --------------------------------------------------------------


def test_scaling_bell_product_coefficient_is_one():
    result = run("scaling", "--family", "bell-product",
                 "--n-min", "8", "--n-max", "64")
    assert result.exit_code == 0, errtext(result)
    rows = json.loads(result.output)
    assert [r["N"] for r in rows] == [8, 16, 32, 64]
    for r in rows:
        assert r["normalization"] == "n"
        assert r["coefficient"] == 1.0
        assert r["weaving"] == float(r["N"])


def test_scaling_classical_tracks_ghz_identity():
    ghz = json.loads(run("scaling", "--family", "ghz",
                         "--n-min", "8", "--n-max", "32").output)
    cls = json.loads(run("scaling", "--family", "classical",
                         "--n-min", "8", "--n-max", "32").output)
    # both normalized by n*log2(n); the raw indices differ by exactly n-1
    for g, c in zip(ghz, cls):
        assert g["normalization"] == c["normalization"] == "n*log2(n)"
        assert abs(g["weaving"] - c["weaving"] - (g["N"] - 1)) < 1e-6


def test_scaling_a_family_needs_amplitude():
    result = run("scaling", "--family", "a-family",
                 "--n-min", "4", "--n-max", "8")
    assert result.exit_code == 2
    result = run("scaling", "--family", "a-family",
                 "--n-min", "4", "--n-max", "8", "--a", "0.6")
    assert result.exit_code == 0, errtext(result)
    rows = json.loads(result.output)
    assert all(r["weaving"] > 0 for r in rows)


def test_scaling_rejects_bad_ranges_and_file_weights():
    assert run("scaling", "--family", "ghz",
               "--n-min", "16", "--n-max", "8").exit_code == 2
    assert run("scaling", "--family", "ghz", "--n-min", "4", "--n-max", "8",
               "--weights", "file:w.json").exit_code == 2
    assert run("scaling", "--family", "nosuch").exit_code == 2


def test_scaling_csv_fields():
    result = run("scaling", "--family", "ghz", "--n-min", "4",
                 "--n-max", "8", "--output", "csv")
    assert result.exit_code == 0
    rows = rows_from_csv(result.output)
    assert [r["N"] for r in rows] == ["4", "8"]
    assert all(r["units"] == "bits" for r in rows)


# -- check ----------------------------------------------------------------


def test_check_small_run_passes_and_is_deterministic():
    first = run("check", "--seed", "5", "--trials", "3")
    second = run("check", "--seed", "5", "--trials", "3")
    assert first.exit_code == 0, errtext(first)
    assert first.output == second.output
    doc = json.loads(first.output)
    assert doc["passed"] is True
    assert doc["seed"] == 5 and doc["trials"] == 3
    assert len(doc["properties"]) == 8
    assert all(p["trials"] == 3 for p in doc["properties"])
    other = run("check", "--seed", "6", "--trials", "3")
    assert other.output != first.output


def test_check_failure_exits_five(monkeypatch):
    import corrweave.cli as cli_mod
    from corrweave.properties import run_property_suite as real_suite

    def broken_suite(seed, trials):
        return real_suite(seed, trials, perturb_dist=lambda v: v - 1e-3)

    monkeypatch.setattr(cli_mod, "run_property_suite", broken_suite)
    result = run("check", "--seed", "5", "--trials", "3")
    assert result.exit_code == 5
    doc = json.loads(result.output)
    assert doc["passed"] is False
    assert any(not p["passed"] for p in doc["properties"])


def test_check_rejects_zero_trials():
    assert run("check", "--trials", "0").exit_code == 2


def test_check_csv_output():
    result = run("check", "--seed", "5", "--trials", "2", "--output", "csv")
    assert result.exit_code == 0
    rows = rows_from_csv(result.output)
    assert len(rows) == 8
    assert all(r["passed"] == "true" for r in rows)


# -- plumbing -------------------------------------------------------------


def test_handle_errors_maps_numeric_to_exit_four():
    @click.command()
    @_handle_errors
    def boom():
        raise NumericError("inconsistent value")

    result = runner.invoke(boom, [])
    assert result.exit_code == 4
    assert "inconsistent value" in errtext(result)


def test_version_flag():
    result = run("--version")
    assert result.exit_code == 0
    assert "corrweave" in result.output


def test_round12_is_idempotent_through_text():
    values = [math.pi, 2.503258334776, 1e-17, 0.1 + 0.2, -3.5e12]
    for v in values:
        r = _round12(v)
        assert float(format(r, ".12g")) == r
        assert json.loads(json.dumps(r)) == r
