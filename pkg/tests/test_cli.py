import json

import pytest

from gseries import cli
from gseries.cache import ENV_CACHE_DIR, default_cache_dir


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_CACHE_DIR, str(tmp_path / "cache"))
    return tmp_path / "cache"


class TestExpand:
    def test_pretty_k1(self, capsys, cache_dir):
        code, out, _ = run(capsys, "expand", "--k", "1", "--order", "9")
        assert code == 0
        assert "1*q^1 + 4*q^3 + 6*q^5 + 8*q^7 + 13*q^9" in out

    def test_order_zero(self, capsys, cache_dir):
        code, out, _ = run(capsys, "expand", "--k", "2", "--order", "0")
        assert code == 0
        assert "G_4(q) = 0 + O(q^1)" in out

    def test_csv_format(self, capsys, cache_dir):
        code, out, _ = run(capsys, "expand", "--k", "1", "--order", "3", "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "exponent,numerator,denominator"
        assert lines[1] == "0,0,1"
        assert lines[2] == "1,1,1"
        assert lines[4] == "3,4,1"

    def test_json_format_round_trips(self, capsys, cache_dir):
        code, out, _ = run(
            capsys, "expand", "--k", "3", "--order", "60", "--format", "json", "--no-timestamp"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["series"]["schema"] == "gseries.qseries/1"
        assert doc["series"]["order"] == 60
        assert doc["series"]["leading_exponent"] == "0/24"
        assert "generated_at" not in doc
        from gseries.exact_core import QSeries
        from gseries.qseries import goswami_series

        assert QSeries.from_json_dict(doc["series"]) == goswami_series(3, 60)

    def test_timestamp_present_by_default(self, capsys, cache_dir):
        code, out, _ = run(capsys, "expand", "--k", "1", "--order", "2", "--format", "json")
        assert json.loads(out)["generated_at"]

    def test_bad_k(self, capsys, cache_dir):
        code, _, err = run(capsys, "expand", "--k", "17", "--order", "5")
        assert code == 2

    def test_bad_order(self, capsys, cache_dir):
        code, _, _ = run(capsys, "expand", "--k", "1", "--order", "2001")
        assert code == 2

    def test_unknown_argument(self, capsys, cache_dir):
        code, _, _ = run(capsys, "expand", "--k", "1", "--order", "5", "--bogus")
        assert code == 2

    def test_byte_identical_runs(self, capsys, cache_dir):
        _, out1, _ = run(
            capsys, "expand", "--k", "2", "--order", "20", "--format", "json", "--no-timestamp"
        )
        _, out2, _ = run(
            capsys, "expand", "--k", "2", "--order", "20", "--format", "json", "--no-timestamp"
        )
        assert out1 == out2


class TestCache:
    def test_cache_file_created_and_reused(self, capsys, cache_dir):
        run(capsys, "expand", "--k", "1", "--order", "12", "--format", "csv")
        files = list(cache_dir.glob("goswami-k1-N12-*.json"))
        assert len(files) == 1
        before = files[0].read_bytes()
        _, out, _ = run(capsys, "expand", "--k", "1", "--order", "12", "--format", "csv")
        assert files[0].read_bytes() == before
        lines = out.strip().splitlines()
        assert len(lines) == 14  # header + exponents 0..12
        assert lines[-1] == "12,0,1"

    def test_corrupted_cache_recomputed(self, capsys, cache_dir):
        _, good, _ = run(capsys, "expand", "--k", "1", "--order", "9", "--format", "csv")
        files = list(cache_dir.glob("goswami-k1-N9-*.json"))
        doc = json.loads(files[0].read_text())
        doc["payload"]["coefficients"][1] = "999/1"  # tamper without fixing the checksum
        files[0].write_text(json.dumps(doc))
        _, out, _ = run(capsys, "expand", "--k", "1", "--order", "9", "--format", "csv")
        assert out == good
        # entry was rewritten and is valid again
        redone = json.loads(files[0].read_text())
        assert redone["payload"]["coefficients"][1] == "1/1"

    def test_no_cache_flag(self, capsys, cache_dir):
        run(capsys, "expand", "--k", "1", "--order", "9", "--no-cache")
        assert not cache_dir.exists() or not list(cache_dir.glob("*.json"))

    def test_cache_dir_flag_overrides_env(self, capsys, cache_dir, tmp_path):
        other = tmp_path / "other"
        run(capsys, "expand", "--k", "1", "--order", "5", "--cache-dir", str(other))
        assert list(other.glob("goswami-k1-N5-*.json"))
        assert not cache_dir.exists() or not list(cache_dir.glob("goswami-k1-N5-*.json"))

    def test_env_var_respected(self, cache_dir, monkeypatch):
        assert default_cache_dir() == cache_dir


class TestAlphas:
    def test_k3(self, capsys, cache_dir):
        code, out, _ = run(capsys, "alphas", "--k", "3")
        assert code == 0
        assert "1, -16" in out
        assert "= 256" in out
        assert "disagree by a factor 3" in out

    def test_k4(self, capsys, cache_dir):
        code, out, _ = run(capsys, "alphas", "--k", "4")
        assert code == 0
        assert "0, 128, -2048" in out

    def test_k1_empty(self, capsys, cache_dir):
        code, out, _ = run(capsys, "alphas", "--k", "1")
        assert code == 0
        assert "(empty)" in out
        assert "= 1" in out

    def test_json(self, capsys, cache_dir):
        code, out, _ = run(capsys, "alphas", "--k", "3", "--format", "json", "--no-timestamp")
        doc = json.loads(out)
        assert doc["alphas"] == ["1/1", "-16/1"]
        assert doc["zeta_bernoulli_form"] == "256/1"
        assert doc["zeta_zeta_form"] == "768/1"
        assert doc["zeta_from_decomposition"] == "256/1"
        assert doc["zeta_forms_mismatch"] is True

    def test_bad_k(self, capsys, cache_dir):
        code, _, _ = run(capsys, "alphas", "--k", "0")
        assert code == 2


class TestEval:
    def test_k3_at_half_i(self, capsys, cache_dir):
        code, out, _ = run(capsys, "eval", "--k", "3", "--tau", "i/2", "--prec", "64")
        assert code == 0
        assert "0.0633804556" in out
        assert "closed form: MATCH" in out

    def test_k4_at_i(self, capsys, cache_dir):
        code, out, _ = run(capsys, "eval", "--k", "4", "--tau", "i", "--prec", "64")
        assert code == 0
        assert "0.0004465790" in out
        assert "closed form: MATCH" in out

    def test_k1_recognition(self, capsys, cache_dir):
        code, out, _ = run(capsys, "eval", "--k", "1", "--tau", "i/2", "--prec", "64")
        assert code == 0
        assert "recognized" in out

    def test_explicit_coordinates(self, capsys, cache_dir):
        code, out, _ = run(capsys, "eval", "--k", "1", "--tau", "0,1/4", "--prec", "48")
        assert code == 0
        assert "0 + 1/4*sqrt(-4)" in out

    def test_bad_discriminant(self, capsys, cache_dir):
        code, _, err = run(capsys, "eval", "--k", "1", "--tau", "i", "--D", "-12")
        assert code == 3

    def test_bad_tau_label(self, capsys, cache_dir):
        code, _, _ = run(capsys, "eval", "--k", "1", "--tau", "3i")
        assert code == 4

    def test_lower_half_plane(self, capsys, cache_dir):
        code, _, _ = run(capsys, "eval", "--k", "1", "--tau", "0,-1/2")
        assert code == 4

    def test_json_report(self, capsys, cache_dir):
        code, out, _ = run(
            capsys, "eval", "--k", "3", "--tau", "i/2", "--prec", "64",
            "--format", "json", "--no-timestamp",
        )
        doc = json.loads(out)
        assert doc["report"]["closed_form_match"] is True
        assert doc["report"]["recognized"] == [-3, 0, 1024]
        assert doc["report"]["recognized_ratio"] == {"rational_part": "3/1024", "sqrt2_part": "0"}


class TestVerify:
    def test_sun_suite(self, capsys, cache_dir):
        code, out, _ = run(capsys, "verify", "--suite", "sun")
        assert code == 0
        assert "PASS sun-limit-1" in out
        assert "PASS sun-limit-2" in out

    def test_modular_suite_json_lines(self, capsys, cache_dir):
        code, out, _ = run(capsys, "verify", "--suite", "modular", "--format", "json")
        assert code == 0
        lines = [json.loads(line) for line in out.strip().splitlines()]
        assert all(line["passed"] for line in lines)
        names = {line["name"] for line in lines}
        assert "zeta-forms" in names
        assert any(line["informational"] for line in lines)

    def test_series_suite(self, capsys, cache_dir):
        code, out, _ = run(capsys, "verify", "--suite", "series", "--order", "60")
        assert code == 0
        assert "FAIL" not in out

    def test_cm_suite(self, capsys, cache_dir):
        code, out, _ = run(capsys, "verify", "--suite", "cm")
        assert code == 0
        assert "PASS eta-value-table" in out
        assert "PASS cm-ten-digit-values" in out
