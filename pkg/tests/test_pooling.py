import numpy as np
import pytest

from gmp_pooling.encoders import (
    BlockStructure,
    DescriptorSet,
    EncodingMatrix,
    encode_bov_hard,
    encode_fv_hard,
    encode_vlad,
)
from gmp_pooling.encoders.synthetic import random_codebook, random_gmm
from gmp_pooling.errors import MissingBlockStructureError, SingularKernelError
from gmp_pooling.kde import equalization_weights
from gmp_pooling.linalg.solver_types import CG, SVD
from gmp_pooling.pooling import (
    DEFAULT_LAMBDA_GRID,
    GmpConfig,
    PatchWeights,
    PooledVector,
    average_pool,
    gmp_dual,
    gmp_dual_weights,
    gmp_dual_weights_block,
    gmp_path,
    gmp_primal,
    gmp_primal_block,
    gram_matrix,
    l2_normalize,
    max_pool,
    postprocess,
    power_normalize,
    select_solver,
    sum_pool,
    weighted_pool,
)
from gmp_pooling.pooling.pooling_types import (
    AUTO,
    BLOCK_SOLVER,
    CG_SOLVER,
    DENSE_DIRECT,
    GMP_DUAL,
    GMP_PRIMAL,
    L2,
    MAX,
    POWER,
    SUM,
    WEIGHTED,
)

COUNTS_PHI = np.array([
    [1.0, 1.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, 0.0, 0.0],
])


def _relative(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)


class TestSumAndMaxPool:

    def test_bov_counts(self):
        pooled = sum_pool(EncodingMatrix(COUNTS_PHI))
        np.testing.assert_array_equal(pooled.values, [3.0, 1.0, 0.0])
        assert pooled.provenance == SUM

    def test_bov_presence(self):
        pooled = max_pool(EncodingMatrix(COUNTS_PHI))
        np.testing.assert_array_equal(pooled.values, [1.0, 1.0, 0.0])
        assert pooled.provenance == MAX

    def test_single_column(self):
        v = np.array([[0.5], [-2.0]])
        np.testing.assert_array_equal(sum_pool(EncodingMatrix(v)).values, v[:, 0])
        np.testing.assert_array_equal(max_pool(EncodingMatrix(v)).values, v[:, 0])

    def test_opposite_columns_cancel(self):
        v = np.array([1.0, -3.0, 2.0])
        np.testing.assert_array_equal(sum_pool(EncodingMatrix(np.column_stack([v, -v]))).values, 0.0)

    def test_max_of_two_columns(self):
        np.testing.assert_array_equal(max_pool(EncodingMatrix([[1.0, 0.0], [0.0, 2.0]])).values, [1.0, 2.0])

    def test_average_is_scaled_sum(self, dense_encoding):
        np.testing.assert_allclose(average_pool(dense_encoding).values * dense_encoding.n,
                                   sum_pool(dense_encoding).values)


class TestGmpPrimal:

    def test_bov_equals_max_pool_for_any_multiplicities(self, rng):
        for _ in range(10):
            X = DescriptorSet(rng.normal(size=(int(rng.integers(1, 40)), 3)))
            encoding = encode_bov_hard(X, random_codebook(int(rng.integers(1000)), 8, 3))
            gmp, report = gmp_primal(encoding)
            np.testing.assert_allclose(gmp.values, max_pool(encoding).values, atol=1e-10)
            assert report.method == SVD

    def test_single_column(self):
        v = np.array([3.0, 4.0])
        gmp, _ = gmp_primal(EncodingMatrix(v[:, None]))
        np.testing.assert_allclose(gmp.values, v / 25.0)
        assert gmp.values @ v == pytest.approx(1.0)

    def test_every_patch_matches_one(self, rng):
        encoding = EncodingMatrix(rng.normal(size=(20, 6)))
        gmp, _ = gmp_primal(encoding)
        np.testing.assert_allclose(encoding.phi.T @ gmp.values, 1.0, atol=1e-10)
        assert gmp.provenance == GMP_PRIMAL

    def test_vlad_block_equals_dense(self, descriptor_set):
        encoding = encode_vlad(descriptor_set, random_codebook(7, 3, 3))
        dense, _ = gmp_primal(encoding, GmpConfig(lam=10.0, solver=DENSE_DIRECT))
        assert _relative(gmp_primal_block(encoding, 10.0).values, dense.values) <= 1e-10

    def test_fv_block_equals_dense(self, descriptor_set):
        encoding = encode_fv_hard(descriptor_set, random_gmm(8, 4, 3))
        dense, _ = gmp_primal(encoding, GmpConfig(lam=10.0, solver=DENSE_DIRECT))
        blocked, report = gmp_primal(encoding, GmpConfig(lam=10.0))
        assert report.method == BLOCK_SOLVER
        assert _relative(blocked.values, dense.values) <= 1e-10

    def test_single_block_is_dense(self, rng):
        phi = rng.normal(size=(5, 9))
        encoding = EncodingMatrix(phi, BlockStructure(5, np.zeros(9, dtype=int)))
        dense, _ = gmp_primal(EncodingMatrix(phi), GmpConfig(lam=3.0))
        np.testing.assert_allclose(gmp_primal_block(encoding, 3.0).values, dense.values, rtol=1e-12)

    def test_block_needs_structure(self, dense_encoding):
        with pytest.raises(MissingBlockStructureError):
            gmp_primal_block(dense_encoding, 1.0)
        with pytest.raises(MissingBlockStructureError):
            gmp_primal(dense_encoding, GmpConfig(lam=1.0, solver=BLOCK_SOLVER))

    def test_cg_matches_direct(self, rng):
        encoding = EncodingMatrix(rng.normal(size=(300, 40)))
        direct, _ = gmp_primal(encoding, GmpConfig(lam=10.0, solver=DENSE_DIRECT))
        iterative, report = gmp_primal(encoding, GmpConfig(lam=10.0, solver=CG_SOLVER))
        assert report.method == CG
        assert report.converged
        assert _relative(iterative.values, direct.values) <= 1e-6

    def test_lambda_continuum_approaches_sum_pooling(self, rng):
        encoding = EncodingMatrix(rng.normal(size=(15, 25)) + 0.3)
        total = sum_pool(encoding).values
        angles = []
        for lam in 10.0 ** np.arange(-2, 8):
            gmp, _ = gmp_primal(encoding, GmpConfig(lam=lam, solver=DENSE_DIRECT))
            cosine = gmp.values @ total / (np.linalg.norm(gmp.values) * np.linalg.norm(total))
            angles.append(np.arccos(np.clip(cosine, -1.0, 1.0)))
        assert all(b <= a + 1e-7 for a, b in zip(angles, angles[1:]))
        assert angles[-1] < 1e-3


class TestSelectSolver:

    def test_zero_lambda_uses_svd(self, dense_encoding):
        assert select_solver(dense_encoding, GmpConfig()) == SVD

    def test_auto_prefers_block_structure(self, descriptor_set):
        encoding = encode_vlad(descriptor_set, random_codebook(1, 3, 3))
        assert select_solver(encoding, GmpConfig(lam=1.0)) == BLOCK_SOLVER

    def test_auto_large_dense_uses_cg(self):
        assert select_solver(EncodingMatrix(np.ones((5000, 2))), GmpConfig(lam=1.0, solver=AUTO)) == CG_SOLVER

    def test_auto_small_dense_is_direct(self, dense_encoding):
        assert select_solver(dense_encoding, GmpConfig(lam=1.0)) == DENSE_DIRECT

    def test_rejects_negative_lambda(self):
        with pytest.raises(ValueError):
            GmpConfig(lam=-1.0)


class TestGmpDual:

    def test_identity_kernel(self):
        weights = gmp_dual_weights(np.eye(4), 0.0)
        np.testing.assert_allclose(weights.alpha, 1.0)
        assert weights.origin == GMP_DUAL

    def test_duplicate_patches(self):
        weights = gmp_dual_weights([[1.0, 1.0], [1.0, 1.0]], 1.0)
        np.testing.assert_allclose(weights.alpha, [1 / 3, 1 / 3])

    def test_singular_kernel_without_regularization(self):
        with pytest.raises(SingularKernelError) as excinfo:
            gmp_dual_weights([[1.0, 1.0], [1.0, 1.0]], 0.0)
        assert "lambda > 0" in str(excinfo.value)

    def test_kde_samples_are_equalized(self):
        X = DescriptorSet.from_points([-11, -10, 7, 8, 9])
        K = np.exp(-(X.descriptors - X.descriptors.T) ** 2 / (2 * 9.0))
        weights = gmp_dual_weights(K, 0.0)
        np.testing.assert_allclose(K @ weights.alpha, 1.0, atol=1e-8)
        np.testing.assert_allclose(weights.alpha, equalization_weights(X, 3.0).alpha, rtol=1e-12)

    def test_dual_matches_primal(self, rng):
        encoding = EncodingMatrix(rng.normal(size=(30, 18)))
        primal, _ = gmp_primal(encoding, GmpConfig(lam=10.0))
        weights = gmp_dual_weights(gram_matrix(encoding), 10.0)
        dual = weighted_pool(encoding, weights)
        assert dual.provenance == GMP_DUAL
        assert _relative(dual.values, primal.values) <= 1e-8
        assert _relative(gmp_dual(encoding, 10.0).values, primal.values) <= 1e-8

    def test_inverted_file_matches_full_kernel(self, descriptor_set):
        encoding = encode_vlad(descriptor_set, random_codebook(5, 4, 3))
        blocked = gmp_dual_weights_block(encoding, 10.0)
        full = gmp_dual_weights(gram_matrix(encoding), 10.0)
        np.testing.assert_allclose(blocked.alpha, full.alpha, rtol=1e-10, atol=1e-14)

    def test_block_dual_matches_primal(self, descriptor_set):
        encoding = encode_fv_hard(descriptor_set, random_gmm(6, 3, 3))
        primal, _ = gmp_primal(encoding, GmpConfig(lam=100.0))
        assert _relative(gmp_dual(encoding, 100.0).values, primal.values) <= 1e-8


class TestWeightedPool:

    def test_unit_weights_are_sum_pooling(self, dense_encoding):
        pooled = weighted_pool(dense_encoding, PatchWeights(np.ones(dense_encoding.n)))
        np.testing.assert_allclose(pooled.values, sum_pool(dense_encoding).values)
        assert pooled.provenance == WEIGHTED

    def test_basis_weight_picks_column(self, dense_encoding):
        alpha = np.zeros(dense_encoding.n)
        alpha[0] = 1.0
        np.testing.assert_array_equal(weighted_pool(dense_encoding, PatchWeights(alpha)).values,
                                      dense_encoding.phi[:, 0])

    def test_linear_in_weights(self, dense_encoding, rng):
        a = PatchWeights(rng.normal(size=dense_encoding.n))
        b = PatchWeights(rng.normal(size=dense_encoding.n))
        combined = weighted_pool(dense_encoding, 2.0 * a + b).values
        expected = 2.0 * weighted_pool(dense_encoding, a).values + weighted_pool(dense_encoding, b).values
        np.testing.assert_allclose(combined, expected, rtol=1e-12, atol=1e-12)


class TestGmpPath:

    @pytest.mark.parametrize("shape", [(40, 12), (6, 30)])
    def test_matches_primal_for_every_lambda(self, rng, shape):
        encoding = EncodingMatrix(rng.normal(size=shape))
        path = gmp_path(encoding, DEFAULT_LAMBDA_GRID)
        for lam, pooled in zip(DEFAULT_LAMBDA_GRID, path):
            direct, _ = gmp_primal(encoding, GmpConfig(lam=lam, solver=DENSE_DIRECT))
            assert _relative(pooled.values, direct.values) <= 1e-9

    def test_needs_positive_lambdas(self, dense_encoding):
        with pytest.raises(ValueError):
            gmp_path(dense_encoding, [0.0, 1.0])


class TestNormalization:

    def test_square_root(self):
        v = power_normalize(PooledVector([4.0, -9.0, 0.0], SUM), 0.5)
        np.testing.assert_allclose(v.values, [2.0, -3.0, 0.0])
        assert v.steps == ("power(0.5)",)

    def test_rho_one_is_identity(self, rng):
        values = rng.normal(size=5)
        np.testing.assert_allclose(power_normalize(PooledVector(values, SUM), 1.0).values, values)

    def test_rho_zero_only_touches_nonzero_entries(self):
        np.testing.assert_array_equal(power_normalize(PooledVector([4.0, -9.0, 0.0], SUM), 0.0).values,
                                      [1.0, -1.0, 0.0])

    def test_rho_out_of_range(self):
        with pytest.raises(ValueError):
            power_normalize(PooledVector([1.0], SUM), 1.5)

    def test_l2(self):
        v = l2_normalize(PooledVector([3.0, 4.0], SUM))
        np.testing.assert_allclose(v.values, [0.6, 0.8])
        assert v.normalization == L2
        assert not v.degenerate

    @pytest.mark.parametrize("scale", [1e-6, 0.3, 7.0, 1e8])
    def test_l2_ignores_positive_scale(self, rng, scale):
        values = rng.normal(size=9)
        np.testing.assert_allclose(l2_normalize(PooledVector(scale * values, SUM)).values,
                                   l2_normalize(PooledVector(values, SUM)).values, rtol=1e-12)

    def test_l2_unit_vector_unchanged(self):
        np.testing.assert_array_equal(l2_normalize(PooledVector([0.0, 1.0], SUM)).values, [0.0, 1.0])

    def test_l2_zero_vector_is_flagged(self):
        v = l2_normalize(PooledVector([0.0, 0.0], SUM))
        np.testing.assert_array_equal(v.values, [0.0, 0.0])
        assert v.degenerate

    def test_postprocess_keeps_order(self):
        v = postprocess(PooledVector([4.0, -9.0, 0.0], SUM), [(POWER, 0.5), (L2, None)])
        assert v.steps == ("power(0.5)", "l2")
        np.testing.assert_allclose(v.values, np.array([2.0, -3.0, 0.0]) / np.sqrt(13.0))
