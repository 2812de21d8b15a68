"""Cross-module oracle suite.

Each check builds seeded random instances, compares two independent routes
to the same quantity and reports the worst deviation against its tolerance.
"""
import json
import logging
import sys
from dataclasses import asdict, dataclass
from typing import Callable, List, Optional

import numpy as np

from ..encoders import DescriptorSet, EncodingMatrix, encode_bov_hard, encode_fv_hard, encode_vlad
from ..encoders.synthetic import (
    encode_orthonormal,
    random_codebook,
    random_gmm,
    random_orthonormal_codebook,
)
from ..errors import ConfigError
from ..kde import Kde, count_local_maxima, equalization_weights, flatness_profile, gmk, ppk
from ..pooling import GmpConfig, gmp_dual, gmp_primal, gmp_primal_block, max_pool
from ..pooling.pooling_types import CG_SOLVER, DENSE_DIRECT
from .io import write_text
from .kde_demo import DEMO_LAMBDA, DEMO_SAMPLES, DEMO_SIGMA, build_kde_demo

logger = logging.getLogger(__name__)

VERIFY_SEED = 1729

LAMBDA_FAULT = "lambda"
FAULTS = [
    LAMBDA_FAULT,
]
# relative λ perturbation applied on the dual side by the lambda fault
FAULT_SCALE = 1e-3


@dataclass(frozen=True)
class CheckResult:
    name: str
    tolerance: float
    observed: float
    passed: bool
    detail: str = ""

    def to_dict(self):
        return asdict(self)


def _rng(seed: int, check: int, instance: int) -> np.random.Generator:
    return np.random.default_rng([seed, check, instance])


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    scale = np.linalg.norm(b)
    return float(np.linalg.norm(a - b) / scale) if scale > 0 else float(np.linalg.norm(a))


def check_bov_gmp_equals_max_pool(seed: int, fault: Optional[str] = None) -> CheckResult:
    """Unregularized GMP of hard BOV is the 0/1 presence vector, i.e. max pooling."""
    worst = 0.0
    for i in range(100):
        rng = _rng(seed, 1, i)
        n, n_centroids, dim = rng.integers(1, 51), rng.integers(2, 17), rng.integers(2, 9)
        X = DescriptorSet(rng.normal(size=(n, dim)))
        encoding = encode_bov_hard(X, random_codebook(int(rng.integers(2 ** 31)), n_centroids, dim))
        gmp, _ = gmp_primal(encoding)
        worst = max(worst, float(np.max(np.abs(gmp.values - max_pool(encoding).values))))
    return _result("bov_gmp_equals_max_pool", 1e-10, worst)


def check_orthonormal_codebook(seed: int, fault: Optional[str] = None) -> CheckResult:
    """With orthonormal atoms GMP is the sum of the distinct atoms present, whatever their multiplicities."""
    worst = 0.0
    for i in range(20):
        rng = _rng(seed, 2, i)
        dim = int(rng.integers(2, 65))
        n_atoms = int(rng.integers(1, dim + 1))
        Q = random_orthonormal_codebook(int(rng.integers(2 ** 31)), dim, n_atoms)
        assignments = rng.integers(0, n_atoms, size=int(rng.integers(1, 3 * n_atoms + 1)))
        expected = Q[:, np.unique(assignments)].sum(axis=1)
        duplicated = np.concatenate([assignments, assignments[: int(rng.integers(1, len(assignments) + 1))]])
        for columns in (assignments, duplicated):
            gmp, _ = gmp_primal(encode_orthonormal(Q, columns))
            worst = max(worst, float(np.max(np.abs(gmp.values - expected))))
    return _result("orthonormal_codebook_theorem", 1e-9, worst)


def check_primal_dual_agreement(seed: int, fault: Optional[str] = None) -> CheckResult:
    """Ridge primal (ΦΦᵀ + λI)⁻¹Φ1 against the dual Φ(K + λI)⁻¹1."""
    worst = 0.0
    for i in range(50):
        rng = _rng(seed, 3, i)
        encoding = EncodingMatrix(rng.normal(size=(int(rng.integers(2, 101)), int(rng.integers(1, 101)))))
        for lam in (1e1, 1e3, 1e5):
            dual_lam = lam * (1.0 + FAULT_SCALE) if fault == LAMBDA_FAULT else lam
            primal, _ = gmp_primal(encoding, GmpConfig(lam=lam, solver=DENSE_DIRECT))
            worst = max(worst, _relative(gmp_dual(encoding, dual_lam).values, primal.values))
    return _result("primal_dual_agreement", 1e-8, worst)


def check_block_equals_dense(seed: int, fault: Optional[str] = None) -> CheckResult:
    """Block-by-block solves of VLAD and hard-FV encodings against the full dense system."""
    worst = 0.0
    instance = 0
    for n_blocks in (2, 4, 8):
        for encoder in ("vlad", "fv_hard"):
            for lam in (1e1, 1e3):
                rng = _rng(seed, 4, instance)
                instance += 1
                dim = int(rng.integers(2, 7))
                X = DescriptorSet(rng.normal(size=(int(rng.integers(10, 61)), dim)))
                model_seed = int(rng.integers(2 ** 31))
                if encoder == "vlad":
                    encoding = encode_vlad(X, random_codebook(model_seed, n_blocks, dim))
                else:
                    encoding = encode_fv_hard(X, random_gmm(model_seed, n_blocks, dim))
                dense, _ = gmp_primal(encoding, GmpConfig(lam=lam, solver=DENSE_DIRECT))
                worst = max(worst, _relative(gmp_primal_block(encoding, lam).values, dense.values))
    return _result("block_equals_dense", 1e-10, worst)


def check_cg_equals_direct(seed: int, fault: Optional[str] = None) -> CheckResult:
    worst = 0.0
    for i in range(20):
        rng = _rng(seed, 5, i)
        encoding = EncodingMatrix(rng.normal(size=(int(rng.integers(16, 513)), int(rng.integers(5, 61)))))
        direct, _ = gmp_primal(encoding, GmpConfig(lam=10.0, solver=DENSE_DIRECT))
        iterative, _ = gmp_primal(encoding, GmpConfig(lam=10.0, solver=CG_SOLVER, cg_tol=1e-10))
        worst = max(worst, _relative(iterative.values, direct.values))
    return _result("cg_equals_direct", 1e-6, worst)


def check_sum_pooling_limit(seed: int, fault: Optional[str] = None) -> CheckResult:
    """λφ_λ → Φ1 as λ grows past the spectrum of ΦΦᵀ."""
    worst = 0.0
    for i in range(20):
        rng = _rng(seed, 6, i)
        phi = rng.normal(size=(int(rng.integers(2, 101)), int(rng.integers(1, 101))))
        lam = 1e12 * np.linalg.norm(phi, 2) ** 2
        gmp, _ = gmp_primal(EncodingMatrix(phi), GmpConfig(lam=lam, solver=DENSE_DIRECT))
        worst = max(worst, _relative(lam * gmp.values, phi.sum(axis=1)))
    return _result("sum_pooling_limit", 1e-3, worst)


def check_kde_flatness(seed: int, fault: Optional[str] = None) -> CheckResult:
    """Equalized KDE is 1 at every sample; the plain KDE of the same samples is bimodal."""
    X = DescriptorSet.from_points(DEMO_SAMPLES)
    weights = equalization_weights(X, DEMO_SIGMA, DEMO_LAMBDA)
    profile = np.asarray(flatness_profile(X, weights, DEMO_SIGMA, DEMO_SAMPLES))
    worst = float(np.max(np.abs(profile - 1.0)))
    maxima = count_local_maxima(build_kde_demo()["kde"])
    result = _result("kde_flatness", 1e-8, worst, extra_ok=maxima == 2)
    return CheckResult(result.name, result.tolerance, result.observed, result.passed,
                       f"uniform kde has {maxima} local maxima (expected 2)")


def check_ppk_proportional_to_gmk(seed: int, fault: Optional[str] = None) -> CheckResult:
    """PPK at ρ = 1 of KDEs with bandwidth σ/√2 over GMK at σ is one constant for every set pair."""
    sigma = 1.0
    ratios = []
    for i in range(5):
        rng = _rng(seed, 8, i)
        X = DescriptorSet.from_points(rng.normal(0.0, 2.0, size=int(rng.integers(3, 13))))
        Y = DescriptorSet.from_points(rng.normal(0.5, 2.0, size=int(rng.integers(3, 13))))
        bandwidth = sigma / np.sqrt(2.0)
        value = ppk(Kde(X.descriptors, bandwidth), Kde(Y.descriptors, bandwidth), rho=1.0)
        ratios.append(value / gmk(X, Y, sigma))
    ratios = np.asarray(ratios)
    spread = float((ratios.max() - ratios.min()) / ratios.mean())
    return _result("ppk_proportional_to_gmk", 1e-4, spread)


def _result(name: str, tolerance: float, observed: float, extra_ok: bool = True) -> CheckResult:
    passed = bool(np.isfinite(observed) and observed <= tolerance and extra_ok)
    return CheckResult(name, tolerance, observed, passed)


CHECKS: List[Callable[..., CheckResult]] = [
    check_bov_gmp_equals_max_pool,
    check_orthonormal_codebook,
    check_primal_dual_agreement,
    check_block_equals_dense,
    check_cg_equals_direct,
    check_sum_pooling_limit,
    check_kde_flatness,
    check_ppk_proportional_to_gmk,
]


def run_checks(seed: int = VERIFY_SEED, fault: Optional[str] = None) -> List[CheckResult]:
    if fault is not None and fault not in FAULTS:
        raise ConfigError("--inject-fault", f"unknown fault {fault!r}, expected one of {FAULTS}")
    results = []
    for check in CHECKS:
        result = check(seed, fault)
        if result.passed:
            logger.info("verify: %s ok (%.3g <= %.0e)", result.name, result.observed, result.tolerance)
        else:
            logger.error("verify: %s FAILED, observed %.3g > tolerance %.0e %s",
                         result.name, result.observed, result.tolerance, result.detail)
        results.append(result)
    return results


def format_report(results: List[CheckResult]) -> str:
    report = {
        "checks": [result.to_dict() for result in results],
        "passed": sum(result.passed for result in results),
        "total": len(results),
    }
    return json.dumps(report, indent=2) + "\n"


def cmd_verify(report_file, seed: Optional[int] = None, fault: Optional[str] = None) -> int:
    """Run every check and write the JSON report; exit 0 iff all pass."""
    results = run_checks(VERIFY_SEED if seed is None else seed, fault)
    write_text(report_file, format_report(results))
    failed = [result for result in results if not result.passed]
    for result in failed:
        print(f"FAILED {result.name}: observed {result.observed:.3g}, tolerance {result.tolerance:.0e}", file=sys.stderr)
    return 1 if failed else 0
