import json

import pytest

from gmp_pooling.cli.main import main
from gmp_pooling.cli.verify import LAMBDA_FAULT, VERIFY_SEED, format_report, run_checks
from gmp_pooling.errors import ConfigError

CHECK_NAMES = [
    "bov_gmp_equals_max_pool",
    "orthonormal_codebook_theorem",
    "primal_dual_agreement",
    "block_equals_dense",
    "cg_equals_direct",
    "sum_pooling_limit",
    "kde_flatness",
    "ppk_proportional_to_gmk",
]


@pytest.fixture(scope="module")
def clean_results():
    return run_checks(VERIFY_SEED)


class TestChecks:

    def test_all_checks_pass(self, clean_results):
        assert [r.name for r in clean_results] == CHECK_NAMES
        failed = [(r.name, r.observed) for r in clean_results if not r.passed]
        assert failed == []

    def test_observed_within_tolerance(self, clean_results):
        for result in clean_results:
            assert 0.0 <= result.observed <= result.tolerance

    def test_lambda_fault_breaks_primal_dual_only(self):
        results = {r.name: r for r in run_checks(VERIFY_SEED, LAMBDA_FAULT)}
        assert not results["primal_dual_agreement"].passed
        assert results["primal_dual_agreement"].observed > 1e-6
        assert all(r.passed for name, r in results.items() if name != "primal_dual_agreement")

    def test_unknown_fault(self):
        with pytest.raises(ConfigError):
            run_checks(VERIFY_SEED, "solver")

    def test_report_fields(self, clean_results):
        report = json.loads(format_report(clean_results))
        assert report["passed"] == report["total"] == 8
        assert set(report["checks"][0]) == {"name", "tolerance", "observed", "passed", "detail"}


class TestVerifyVerb:

    def test_exit_zero_when_all_pass(self, tmp_path):
        output = tmp_path / "verify.json"
        assert main(["verify", "--output", str(output)]) == 0
        assert json.loads(output.read_text())["passed"] == 8

    def test_injected_fault_exits_one(self, tmp_path, capsys):
        output = tmp_path / "verify.json"
        assert main(["verify", "--output", str(output), "--inject-fault", LAMBDA_FAULT]) == 1
        report = json.loads(output.read_text())
        assert report["passed"] == 7
        assert "FAILED primal_dual_agreement" in capsys.readouterr().err

    def test_unknown_fault_exits_two(self, tmp_path):
        assert main(["verify", "--output", str(tmp_path / "v.json"), "--inject-fault", "solver"]) == 2
