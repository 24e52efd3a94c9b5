"""Report formats, CLI behavior, exit statuses, sharding, and checkpoints."""

import json
import re

import pytest

from salemcensus.census import (
    CSV_COLUMNS,
    CheckpointStore,
    parse_record_line,
    record_line,
    rows_from_csv,
    rows_to_csv,
    run_count,
    run_sweep,
)
from salemcensus.cli import main
from salemcensus.config import RunConfig
from salemcensus.salem import Kind, classify, enumerate_salem


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def strip_wall_seconds(report_text):
    """Mask the run-dependent report cells (timing and worker count)."""
    out = []
    for line in report_text.splitlines():
        cells = line.split(",")
        if len(cells) == len(CSV_COLUMNS):
            cells[CSV_COLUMNS.index("wall_seconds")] = "_"
            cells[CSV_COLUMNS.index("shard_count")] = "_"
        out.append(",".join(cells))
    return "\n".join(out)


class TestRecordFormat:
    def test_round_trip(self, cfg):
        record = enumerate_salem(1, 10, cfg)[0]
        lam, m, poly = parse_record_line(record_line(record))
        assert m == 1
        assert poly == record.min_poly.inner
        assert lam == pytest.approx(record.approx_lambda(), abs=1e-10)

    def test_twelve_significant_digits(self, cfg):
        line = record_line(enumerate_salem(1, 10, cfg)[0])
        assert line.startswith("2.61803398875, 1, 1,-3,1")


class TestCensusRows:
    def test_count_row_values(self, cfg):
        result = run_count(1, 10, True, cfg)
        row = result.row
        assert (row.count_all, row.count_sq) == (8, 8)
        assert row.theory_all == pytest.approx(10.0)
        assert row.ratio_all == pytest.approx(0.8)

    def test_csv_round_trip_recomputes_ratios(self, cfg):
        row = run_count(1, 10, True, cfg).row
        text = rows_to_csv([row])
        loaded = rows_from_csv(text)[0]
        assert loaded.ratio_all == pytest.approx(row.ratio_all)
        # ratios are derived, so tampering with the count moves them on load
        loaded.count_all = 9
        assert loaded.ratio_all == pytest.approx(0.9)

    def test_header_fixed(self):
        assert (
            rows_to_csv([]).strip()
            == "m,Q,count_all,count_sq,theory_all,theory_sq_lower,theory_sq_upper,"
            "ratio_all,ratio_sq,wall_seconds,shard_count"
        )

    def test_count_sq_never_exceeds_count_all(self, cfg):
        for m, q in ((1, 25), (2, 8)):
            row = run_count(m, q, True, cfg).row
            assert row.count_sq <= row.count_all


class TestCheckCommand:
    def test_salem(self, capsys):
        code, out, _ = run_cli(capsys, "check", "x^2-3x+1")
        assert code == 0
        assert out.startswith("Salem: lambda ~ 2.61803398875, m = 1")

    def test_cyclotomic(self, capsys):
        code, out, _ = run_cli(capsys, "check", "x^2+x+1")
        assert code == 0 and "Cyclotomic (order 3)" in out

    def test_other(self, capsys):
        code, out, _ = run_cli(capsys, "check", "x^3-2")
        assert code == 0 and "ReducibleOrOther" in out

    def test_parse_error_exit_two(self, capsys):
        code, _, err = run_cli(capsys, "check", "x^2 + $")
        assert code == 2 and "parse error" in err

    def test_coefficient_list_accepted(self, capsys):
        code, out, _ = run_cli(capsys, "check", "1,-3,1")
        assert code == 0 and out.startswith("Salem")


class TestSqrootCommand:
    def test_four_preimage(self, capsys):
        code, out, _ = run_cli(
            capsys, "sqroot", "x^8-56x^7-157x^6-228x^5-247x^4-228x^3-157x^2-56x+1"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 4
        assert [int(ln.split(";")[0]) for ln in lines] == [2, 6, 26, 78]
        assert all(ln.endswith("verified") for ln in lines)

    def test_golden(self, capsys):
        code, out, _ = run_cli(capsys, "sqroot", "x^2-3x+1")
        assert code == 0
        assert out.startswith("5; 1,1; -1; 2.61803398875; verified")

    def test_not_square_rootable_exit_one(self, capsys):
        code, out, _ = run_cli(capsys, "sqroot", "x^6-x^4-x^3-x^2+1")
        assert code == 1 and "not square-rootable" in out

    def test_non_salem_exit_two(self, capsys):
        code, _, err = run_cli(capsys, "sqroot", "x^2+x+1")
        assert code == 2


class TestCountCommand:
    def test_csv_output(self, capsys):
        code, out, _ = run_cli(capsys, "count", "--m", "1", "--max", "10", "--sq", "--shards", "1")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[-2].startswith("m,Q,")
        cells = lines[-1].split(",")
        assert cells[:4] == ["1", "10", "8", "8"]
        record_lines = [ln for ln in lines if re.match(r"^\d+\.", ln) and ";" not in ln]
        assert len(record_lines) == 8

    def test_json_output(self, capsys):
        code, out, _ = run_cli(
            capsys, "count", "--m", "1", "--max", "10", "--format", "json", "--shards", "1"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["row"]["count_all"] == 8
        assert payload["row"]["count_sq"] is None
        assert len(payload["records"]) == 8

    def test_budget_exit_three(self, capsys):
        code, _, err = run_cli(
            capsys, "count", "--m", "3", "--max", "2000", "--budget", "1000", "--shards", "1"
        )
        assert code == 3 and "budget" in err.lower()

    def test_records_reclassify_via_check(self, capsys, cfg):
        code, out, _ = run_cli(capsys, "count", "--m", "2", "--max", "4", "--shards", "1")
        assert code == 0
        record_lines = [ln for ln in out.strip().splitlines() if re.match(r"^\d+\.", ln)]
        assert record_lines
        for line in record_lines:
            _, m, poly = parse_record_line(line)
            result = classify(poly)
            assert result.kind is Kind.SALEM and result.record.m == m
            # the coefficient tail of a record line feeds straight back into check
            coeff_text = ",".join(part.strip() for part in line.split(",")[2:])
            code, check_out, _ = run_cli(capsys, "check", coeff_text)
            assert code == 0 and check_out.startswith("Salem")

    def test_shard_count_independence(self, capsys):
        outputs = []
        for shards in ("1", "4"):
            code, out, _ = run_cli(
                capsys, "count", "--m", "1", "--max", "30", "--sq", "--shards", shards
            )
            assert code == 0
            outputs.append(strip_wall_seconds(out))
        assert outputs[0] == outputs[1]


class TestSweepCommand:
    def test_slope_for_degree_two(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "sweep", "--m", "1", "--max", "10,100,1000", "--format", "json", "--shards", "1",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["expected_exponent"] == 1.0
        assert abs(payload["fitted_slope"] - 1.0) < 0.05
        assert [row["Q"] for row in payload["rows"]] == [10.0, 100.0, 1000.0]

    def test_csv_footer(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--m", "1", "--max", "10,20", "--shards", "1")
        assert code == 0
        assert "# fitted_slope=" in out


class TestTheoryCommand:
    def test_census_payload(self, capsys):
        code, out, _ = run_cli(capsys, "theory", "--m", "3", "--max", "100")
        payload = json.loads(out)
        assert code == 0
        assert payload["m"] == 3 and payload["Q"] == 100.0
        assert payload["sq_lower"] == payload["sq_upper"]

    def test_bound_payload(self, capsys):
        code, out, _ = run_cli(capsys, "theory", "--dim", "5", "--length", "3")
        payload = json.loads(out)
        assert code == 0
        assert payload["delta57"] == 1
        assert payload["mean_mult_lower"] == pytest.approx(
            payload["gamma_h"] / payload["distinct_lengths_bound"]
        )

    def test_dimension_four_constant(self, capsys):
        code, out, _ = run_cli(capsys, "theory", "--dim", "4", "--length", "3")
        assert json.loads(out)["c_prime"] == pytest.approx(1 / 6)

    def test_missing_arguments(self, capsys):
        code, _, err = run_cli(capsys, "theory", "--m", "3")
        assert code == 2


class TestCheckpointing:
    def test_resume_reuses_shards(self, tmp_path, cfg):
        first = run_count(2, 6, True, cfg, tmp_path)
        store_dir = tmp_path / "sq_m2"
        manifest = json.loads((store_dir / "manifest.json").read_text())
        assert manifest["completed"]
        # drop one shard and resume; the rerun must reproduce the same rows
        dropped = manifest["completed"].pop()
        (store_dir / "manifest.json").write_text(json.dumps(manifest))
        second = run_count(2, 6, True, cfg, tmp_path)
        assert [r.min_poly.inner.coeffs for r in first.records] == [
            r.min_poly.inner.coeffs for r in second.records
        ]
        assert first.row.count_sq == second.row.count_sq
        restored = json.loads((store_dir / "manifest.json").read_text())
        assert dropped in restored["completed"]

    def test_fingerprint_mismatch_rejected(self, tmp_path):
        CheckpointStore(tmp_path, {"kind": "salem", "m": 1})
        with pytest.raises(ValueError):
            CheckpointStore(tmp_path, {"kind": "salem", "m": 2})

    def test_cli_resume_flag(self, capsys, tmp_path):
        code, out1, _ = run_cli(
            capsys, "count", "--m", "1", "--max", "15", "--sq", "--shards", "1",
            "--resume", str(tmp_path),
        )
        assert code == 0
        code, out2, _ = run_cli(
            capsys, "count", "--m", "1", "--max", "15", "--sq", "--shards", "1",
            "--resume", str(tmp_path),
        )
        assert code == 0
        assert strip_wall_seconds(out1) == strip_wall_seconds(out2)

    def test_resume_env_fallback(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("SALEM_CENSUS_DIR", str(tmp_path))
        code, _, _ = run_cli(
            capsys, "count", "--m", "1", "--max", "10", "--shards", "1", "--resume"
        )
        assert code == 0
        assert (tmp_path / "all_m1" / "manifest.json").exists()

    def test_resume_without_dir_or_env_fails(self, capsys, monkeypatch):
        monkeypatch.delenv("SALEM_CENSUS_DIR", raising=False)
        code, _, err = run_cli(capsys, "count", "--m", "1", "--max", "10", "--resume")
        assert code == 2


def test_run_sweep_collects_per_point_errors(cfg):
    tight = RunConfig(shards=1, budget=10**5)
    result = run_sweep(3, [5, 2000], False, tight)
    assert result.errors and "2000" in result.errors[0]
    assert len(result.rows) == 1


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(precision_bits=32)
    with pytest.raises(ValueError):
        RunConfig(budget=10)
    with pytest.raises(ValueError):
        RunConfig(output_format="yaml")
    with pytest.raises(ValueError):
        RunConfig(shards=0)
