import json
import os

import pytest

from planepart.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSample:
    def test_unique_partition_of_one(self, capsys):
        code, out, err = run_cli(capsys, "sample", "--n", "1", "--seed", "0")
        assert code == 0
        assert out == "1\n"
        assert "seed = 0" in err

    def test_json_record_window_and_tuning(self, capsys):
        code, out, _ = run_cli(
            capsys, "sample", "--n", "20000", "--epsilon", "0.05",
            "--seed", "42", "--format", "json",
        )
        assert code == 0
        rec = json.loads(out)
        assert 19000 <= rec["size"] <= 21000
        assert rec["seed"] == 42 and rec["schema"] == "planepart/1"
        from planepart import tune_unconstrained
        assert rec["x_used"] == pytest.approx(tune_unconstrained(20000))

    def test_seed_determinism_bytes(self, capsys):
        a = run_cli(capsys, "sample", "--n", "60", "--seed", "5", "--format", "json")
        b = run_cli(capsys, "sample", "--n", "60", "--seed", "5", "--format", "json")
        assert a == b

    def test_env_seed_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("PLANEPART_SEED", "777")
        code, out, err = run_cli(capsys, "sample", "--n", "10", "--format", "json")
        assert code == 0 and json.loads(out)["seed"] == 777

    def test_count_streams(self, capsys):
        code, out, _ = run_cli(
            capsys, "sample", "--n", "30", "--count", "3", "--seed", "1",
            "--format", "json",
        )
        assert code == 0
        recs = [json.loads(line) for line in out.splitlines()]
        assert [r["stream"] for r in recs] == [0, 1, 2]
        assert all(r["size"] == 30 for r in recs)

    def test_jobs_matches_serial(self, capsys):
        serial = run_cli(capsys, "sample", "--n", "25", "--count", "4",
                         "--seed", "9", "--format", "json")
        parallel = run_cli(capsys, "sample", "--n", "25", "--count", "4",
                           "--seed", "9", "--format", "json", "--jobs", "2")
        assert serial == parallel

    def test_boxed_fits_box(self, capsys):
        code, out, _ = run_cli(
            capsys, "sample-boxed", "--a", "2", "--b", "3", "--n", "12",
            "--seed", "8", "--format", "json",
        )
        rec = json.loads(out)
        rows = rec["payload"]["rows"]
        assert code == 0 and rec["size"] == 12
        assert len(rows) <= 3 and all(len(r) <= 2 for r in rows)

    def test_skew_record(self, capsys):
        code, out, _ = run_cli(
            capsys, "sample-skew", "--domain", "3x3-1x1", "--n", "9",
            "--seed", "8", "--format", "json",
        )
        rec = json.loads(out)
        assert code == 0 and rec["domain"] == "3x3-1x1" and rec["size"] == 9

    def test_image_formats_single_sample_only(self, capsys):
        code, _, err = run_cli(capsys, "sample", "--n", "5", "--count", "2",
                               "--format", "svg", "--seed", "1")
        assert code == 1 and "single sample" in err

    def test_expert_x_override(self, capsys):
        code, out, _ = run_cli(capsys, "sample", "--n", "6", "--seed", "3",
                               "--format", "json", "--x", "0.4")
        assert code == 0 and json.loads(out)["x_used"] == 0.4

    def test_max_attempts_cap_errors(self, capsys):
        code, _, err = run_cli(capsys, "sample", "--n", "5000", "--seed", "3",
                               "--max-attempts", "1")
        assert code == 1 and "attempts" in err

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "rec.json"
        code, out, _ = run_cli(capsys, "sample", "--n", "15", "--seed", "2",
                               "--format", "json", "--out", str(path))
        assert code == 0 and out == ""
        rec = json.loads(path.read_text())
        assert rec["size"] == 15


class TestCount:
    def test_unconstrained_golden(self, capsys):
        code, out, _ = run_cli(capsys, "count", "--upto", "6")
        assert code == 0
        assert out == "1\n1\n3\n6\n13\n24\n48\n"

    def test_one_cell_box(self, capsys):
        code, out, _ = run_cli(capsys, "count", "--a", "1", "--b", "1", "--upto", "5")
        assert code == 0 and out == "1\n" * 6

    def test_boxed(self, capsys):
        code, out, _ = run_cli(capsys, "count", "--a", "2", "--b", "1", "--upto", "4")
        assert code == 0 and out == "1\n1\n2\n2\n3\n"

    def test_domain(self, capsys):
        code, out, _ = run_cli(capsys, "count", "--domain", "3x3-1x1", "--upto", "3")
        assert code == 0 and out == "1\n2\n5\n9\n"

    def test_conflicting_kinds(self, capsys):
        code, _, err = run_cli(capsys, "count", "--a", "2", "--b", "2",
                               "--domain", "2x2", "--upto", "3")
        assert code == 1 and "choose one" in err

    def test_cap(self, capsys):
        code, _, err = run_cli(capsys, "count", "--upto", "2000000")
        assert code == 1 and "capped" in err


class TestRender:
    def test_roundtrip_svg_and_ppm(self, capsys, tmp_path):
        rec_path = tmp_path / "r.json"
        run_cli(capsys, "sample", "--n", "25", "--seed", "4", "--format", "json",
                "--out", str(rec_path))
        svg_path = tmp_path / "r.svg"
        code, _, _ = run_cli(capsys, "render", "--in", str(rec_path),
                             "--format", "svg", "--out", str(svg_path))
        assert code == 0 and svg_path.read_text().startswith("<svg")
        ppm_path = tmp_path / "r.ppm"
        code, _, _ = run_cli(capsys, "render", "--in", str(rec_path),
                             "--format", "ppm", "--out", str(ppm_path))
        assert code == 0 and ppm_path.read_bytes().startswith(b"P5\n")

    def test_rejects_tampered_record(self, capsys, tmp_path):
        rec_path = tmp_path / "r.json"
        run_cli(capsys, "sample", "--n", "12", "--seed", "4", "--format", "json",
                "--out", str(rec_path))
        rec = json.loads(rec_path.read_text())
        rec["size"] += 3
        rec_path.write_text(json.dumps(rec))
        code, _, err = run_cli(capsys, "render", "--in", str(rec_path))
        assert code == 1 and "size" in err


class TestVerifyAndBench:
    def test_verify_small_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "small")
        assert code == 0
        assert out.count("[pass]") == 3

    def test_bench_single_size(self, capsys):
        code, out, _ = run_cli(capsys, "bench", "--sizes", "200", "--mode",
                               "approx", "--runs", "2", "--seed", "1")
        assert code == 0
        assert "fitted time exponent" not in out
        assert "median_s" in out

    def test_bench_fit(self, capsys):
        code, out, _ = run_cli(capsys, "bench", "--sizes", "100,800", "--mode",
                               "approx", "--runs", "2", "--seed", "1")
        assert code == 0 and "fitted time exponent" in out


class TestUsageErrors:
    def test_unknown_command_exits_two(self):
        with pytest.raises(SystemExit) as err:
            main(["bogus"])
        assert err.value.code == 2

    def test_missing_required_flag(self):
        with pytest.raises(SystemExit) as err:
            main(["sample"])
        assert err.value.code == 2

    def test_bad_epsilon(self, capsys):
        code, _, err = run_cli(capsys, "sample", "--n", "5", "--epsilon", "1.5")
        assert code == 1 and "epsilon" in err

    def test_bad_domain_message(self, capsys):
        code, _, err = run_cli(capsys, "sample-skew", "--domain", "3x3-4x2",
                               "--n", "5")
        assert code == 1 and "does not fit" in err
