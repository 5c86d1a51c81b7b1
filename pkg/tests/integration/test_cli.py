"""
Integration tests for the `verify` command line.

These tests verify:
1. `run` emits a versioned JSON or text report with the right exit code
2. Reports are byte-stable for a fixed seed
3. `list`, `explain`, `models` and `constants` print the catalogue
4. Usage errors exit 2 with a JSON error line on stderr
"""

import json

import pytest


# =============================================================================
# Run Command Tests
# =============================================================================

class TestRunCommand:
    """verify run."""

    def test_json_report(self, cli):
        result = cli("run", "--check", "S2.structure-sigma", "--format", "json")

        assert result.code == 0
        payload = json.loads(result.out)
        assert payload["schema_version"] == "1.0"
        assert payload["seed"] == 42
        assert payload["summary"] == {"pass": 1, "fail": 0, "domain-skip": 0}
        assert payload["results"][0]["id"] == "S2.structure-sigma"
        assert payload["results"][0]["verdict"] == "pass"
        assert "riemann" in payload["conventions"]

    def test_text_report(self, cli):
        result = cli("run", "--check", "S2.structure-sigma", "--format", "text")

        assert result.code == 0
        assert "PASS  S2.structure-sigma" in result.out
        assert result.out.endswith("1 passed, 0 failed, 0 skipped\n")

    def test_report_is_deterministic(self, cli):
        argv = ("run", "--check", "S2.structure-sigma", "--check", "S2.surface-element", "--seed", "7")
        first = cli(*argv)
        second = cli(*argv)

        assert first.code == second.code == 0
        assert first.out == second.out

    def test_timings_are_opt_in(self, cli):
        plain = json.loads(cli("run", "--check", "S2.structure-sigma").out)
        timed = json.loads(cli("run", "--check", "S2.structure-sigma", "--timings").out)

        assert "elapsed_seconds" not in plain["results"][0]
        assert timed["results"][0]["elapsed_seconds"] >= 0

    def test_guard_locus_is_domain_skip(self, cli):
        result = cli("run", "--check", "S2.structure-equations", "--alpha", "1")

        assert result.code == 0
        verdict = json.loads(result.out)["results"][0]
        assert verdict["id"] == "S2.structure-equations[alpha=1]"
        assert verdict["verdict"] == "domain-skip"

    def test_negative_rational_alpha(self, cli):
        result = cli("run", "--check", "S2.gauss-curvature", "--alpha", "-1/3", "--points", "5")

        assert result.code == 0
        assert json.loads(result.out)["results"][0]["id"] == "S2.gauss-curvature[alpha=-1/3]"

    def test_alpha_preset(self, cli):
        result = cli("run", "--check", "S2.gauss-curvature", "--alpha", "maximal", "--points", "5")

        assert result.code == 0
        ids = [r["id"] for r in json.loads(result.out)["results"]]
        assert ids == [f"S2.gauss-curvature[alpha={a}]" for a in ("3", "-3", "1/3", "-1/3")]

    def test_metrics_file(self, cli, tmp_path):
        path = tmp_path / "verify.prom"
        result = cli("run", "--check", "S2.structure-sigma", "--metrics-file", str(path))

        assert result.code == 0
        assert "verify_checks_total" in path.read_text()

    @pytest.mark.slow
    def test_rolling_growth_over_alphas(self, cli):
        result = cli("run", "--check", "S2.rolling-235", "--alpha", "3", "--alpha", "1/3")

        assert result.code == 0
        ids = [r["id"] for r in json.loads(result.out)["results"]]
        assert ids == ["S2.rolling-235[alpha=3]", "S2.rolling-235[alpha=1/3]"]


# =============================================================================
# Usage Error Tests
# =============================================================================

class TestUsageErrors:
    """Exit code 2 and a JSON error line on stderr."""

    def test_unknown_check(self, cli):
        result = cli("run", "--check", "nope")

        assert result.code == 2
        assert json.loads(result.err)["error"] == "UNKNOWN_CHECK"
        assert result.out == ""

    def test_malformed_alpha(self, cli):
        result = cli("run", "--check", "S2.structure-sigma", "--alpha", "x")

        assert result.code == 2
        assert json.loads(result.err)["error"] == "MALFORMED_PARAMETER"

    def test_invalid_points(self, cli):
        result = cli("run", "--points", "0")

        assert result.code == 2
        assert json.loads(result.err)["error"] == "INVALID_REQUEST"

    def test_missing_command(self, cli):
        assert cli().code == 2

    def test_unknown_option(self, cli):
        assert cli("run", "--bogus").code == 2


# =============================================================================
# Catalogue Command Tests
# =============================================================================

class TestCatalogueCommands:
    """list, explain, models and constants."""

    def test_list_text(self, cli):
        result = cli("list")

        assert result.code == 0
        assert "S4.proposition-235" in result.out
        assert len(result.out.splitlines()) == 36

    def test_list_json(self, cli):
        entries = json.loads(cli("list", "--format", "json").out)

        assert len(entries) == 36
        assert {"id", "anchor", "severity", "parameters", "slow"} <= set(entries[0])

    def test_explain_quotes_anchor(self, cli):
        result = cli("explain", "S4.proposition-235", "--beta", "3", "--gamma", "3")

        assert result.code == 0
        assert "bracket-generating $(2,3,5)$-distribution whenever" in result.out
        assert "[gen1]" in result.out

    def test_explain_unknown_check(self, cli):
        result = cli("explain", "nope")

        assert result.code == 2
        assert json.loads(result.err)["error"] == "UNKNOWN_CHECK"

    def test_models_list(self, cli):
        result = cli("models", "list")

        assert result.code == 0
        names = [line.split()[0] for line in result.out.splitlines()]
        assert "monge" in names
        assert "sigma" in names

    def test_models_dump(self, cli):
        result = cli("models", "dump", "sigma")

        assert result.code == 0
        assert result.out.startswith("sigma1 = ")

    def test_models_dump_unknown(self, cli):
        assert cli("models", "dump", "nope").code == 2

    def test_constant_tables(self, cli):
        assert cli("constants").out.split() == ["section2", "section4", "section5"]

    def test_sl2_pair_constants(self, cli):
        result = cli("constants", "section4", "--beta", "3", "--gamma", "3")

        assert result.code == 0
        table = dict(
            (key.strip(), value.strip()) for key, value in (line.split(" = ", 1) for line in result.out.splitlines())
        )
        assert table["K"] == "9/16"
        assert table["discriminant"] == "36"

    def test_constants_at_negative_alpha(self, cli):
        result = cli("constants", "section2", "--alpha", "-3")

        assert result.code == 0
        assert "K = 1/8" in result.out

    def test_constants_off_guard_locus(self, cli):
        result = cli("constants", "section2", "--alpha", "1")

        assert result.code == 1
        assert json.loads(result.err)["error"] == "GUARD_VIOLATION"
