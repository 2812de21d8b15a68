import numpy as np
import pytest

from gmp_pooling.encoders import (
    BlockStructure,
    Codebook,
    DescriptorSet,
    EmkParams,
    EncodingMatrix,
    GmmModel,
    encode_bov_hard,
    encode_emk,
    encode_fv_hard,
    encode_vlad,
    gaussian_kernel,
    gaussian_kernel_matrix,
    histogram,
    nearest_centroids,
)
from gmp_pooling.encoders.synthetic import (
    encode_orthonormal,
    random_codebook,
    random_gmm,
    random_orthonormal_codebook,
)
from gmp_pooling.errors import DimensionMismatchError, EmptyInputError, NonFiniteInputError

CENTROIDS = np.array([[0.0, 0.0], [10.0, 0.0], [0.0, 10.0]])


def _only_one_block_per_column(encoding: EncodingMatrix):
    size = encoding.block_structure.block_size
    for n, block in enumerate(encoding.block_structure.block_ids):
        column = encoding.phi[:, n].copy()
        column[block * size:(block + 1) * size] = 0.0
        assert not np.any(column)


class TestDescriptorSet:

    def test_from_points_makes_column(self):
        X = DescriptorSet.from_points([-11, -10, 7])
        assert (X.n, X.dim) == (3, 1)

    def test_rejects_nan(self):
        with pytest.raises(NonFiniteInputError):
            DescriptorSet(np.array([[0.0, np.inf]]))

    def test_rejects_empty(self):
        with pytest.raises(EmptyInputError):
            DescriptorSet(np.zeros((0, 3)))

    def test_geometry_shape(self):
        with pytest.raises(DimensionMismatchError):
            DescriptorSet(np.zeros((2, 3)), geometry=np.zeros((3, 4)))

    def test_negative_patch_size(self):
        with pytest.raises(ValueError):
            DescriptorSet(np.zeros((1, 3)), geometry=[[0, 0, -1, 2]])


class TestCodebook:

    def test_duplicate_centroids_rejected(self):
        with pytest.raises(ValueError):
            Codebook([[1.0, 2.0], [1.0, 2.0]])

    def test_empty_codebook_rejected(self):
        with pytest.raises(EmptyInputError):
            Codebook(np.zeros((0, 2)))


class TestGaussianKernel:

    def test_self_similarity_is_one(self):
        assert gaussian_kernel([1.0, 2.0], [1.0, 2.0], 0.3) == 1.0

    def test_closed_form(self):
        assert gaussian_kernel([0.0], [1.0], 1.0) == pytest.approx(np.exp(-0.5))

    def test_matrix_matches_pairwise(self, rng):
        X, Y = rng.normal(size=(4, 3)), rng.normal(size=(5, 3))
        K = gaussian_kernel_matrix(X, Y, 0.7)
        expected = [[gaussian_kernel(x, y, 0.7) for y in Y] for x in X]
        np.testing.assert_allclose(K, expected, rtol=1e-12)


class TestBovHard:

    def test_descriptor_on_centroid(self):
        encoding = encode_bov_hard(DescriptorSet(CENTROIDS[1:2]), Codebook(CENTROIDS))
        np.testing.assert_array_equal(encoding.phi[:, 0], [0.0, 1.0, 0.0])

    def test_row_sums_are_counts(self):
        X = DescriptorSet(np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [9.0, 0.0]]))
        encoding = encode_bov_hard(X, Codebook(CENTROIDS))
        np.testing.assert_array_equal(encoding.phi.sum(axis=1), [3.0, 1.0, 0.0])
        np.testing.assert_array_equal(histogram(X, Codebook(CENTROIDS)).counts, [3, 1, 0])

    def test_tie_goes_to_lowest_index(self):
        X = DescriptorSet(np.array([[5.0, 0.0]]))
        assert nearest_centroids(X, Codebook(CENTROIDS))[0] == 0

    def test_block_structure(self, descriptor_set):
        cb = random_codebook(1, 5, 3)
        encoding = encode_bov_hard(descriptor_set, cb)
        assert encoding.block_structure.block_size == 1
        np.testing.assert_array_equal(encoding.block_structure.block_ids, nearest_centroids(descriptor_set, cb))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            encode_bov_hard(DescriptorSet(np.zeros((2, 3))), Codebook(CENTROIDS))


class TestOccurrenceHistogram:

    def test_all_on_first_centroid(self):
        X = DescriptorSet(np.zeros((6, 2)))
        counts = histogram(X, Codebook(CENTROIDS))
        np.testing.assert_array_equal(counts.counts, [6, 0, 0])
        assert counts.total == 6
        np.testing.assert_allclose(counts.proportions(), [1.0, 0.0, 0.0])


class TestVlad:

    def test_descriptor_on_centroid_gives_zero_column(self):
        encoding = encode_vlad(DescriptorSet(CENTROIDS[2:3]), Codebook(CENTROIDS))
        np.testing.assert_array_equal(encoding.phi[:, 0], 0.0)

    def test_one_dimensional_residual(self):
        encoding = encode_vlad(DescriptorSet(np.array([[2.0]])), Codebook([[0.0], [10.0]]))
        np.testing.assert_array_equal(encoding.phi[:, 0], [2.0, 0.0])

    def test_sum_pool_equals_residual_sums(self, descriptor_set):
        cb = random_codebook(3, 4, 3)
        encoding = encode_vlad(descriptor_set, cb)
        assignments = nearest_centroids(descriptor_set, cb)
        expected = np.concatenate([
            (descriptor_set.descriptors[assignments == k] - cb.centroids[k]).sum(axis=0) for k in range(4)])
        np.testing.assert_allclose(encoding.phi.sum(axis=1), expected, atol=1e-12)
        _only_one_block_per_column(encoding)


class TestFisherHard:

    def test_plug_in_value(self):
        gmm = GmmModel(means=[[0.0]], variances=[[1.0]], mixture_weights=[1.0])
        encoding = encode_fv_hard(DescriptorSet(np.array([[2.0]])), gmm)
        np.testing.assert_allclose(encoding.phi[:, 0], [2.0, 3.0 / np.sqrt(2.0)])

    def test_descriptor_on_mean(self):
        gmm = GmmModel(
            means=[[0.0, 0.0], [10.0, 10.0], [-10.0, 10.0]],
            variances=np.ones((3, 2)),
            mixture_weights=[0.2, 0.5, 0.3])
        k = 1
        X = DescriptorSet(gmm.means[k:k + 1])
        encoding = encode_fv_hard(X, gmm)
        assert encoding.block_structure.block_ids[0] == k
        block = encoding.phi[k * 4:(k + 1) * 4, 0]
        np.testing.assert_allclose(block[:2], 0.0, atol=1e-15)
        np.testing.assert_allclose(block[2:], -1.0 / np.sqrt(2.0) / np.sqrt(gmm.mixture_weights[k]))

    def test_columns_live_in_one_block(self, descriptor_set):
        encoding = encode_fv_hard(descriptor_set, random_gmm(5, 4, 3))
        assert encoding.dim == 4 * 2 * 3
        _only_one_block_per_column(encoding)

    def test_mixture_weights_must_sum_to_one(self):
        with pytest.raises(ValueError):
            GmmModel(means=[[0.0]], variances=[[1.0]], mixture_weights=[0.5])


class TestEmk:

    def test_same_seed_is_bit_identical(self, descriptor_set):
        a = encode_emk(descriptor_set, EmkParams.draw(9, 3, 256, 1.0))
        b = encode_emk(descriptor_set, EmkParams.draw(9, 3, 256, 1.0))
        np.testing.assert_array_equal(a.phi, b.phi)

    def test_self_similarity_close_to_one(self, rng):
        params = EmkParams.draw(0, 4, 4096, 1.0)
        encoding = encode_emk(DescriptorSet(rng.normal(size=(20, 4))), params)
        np.testing.assert_allclose(np.sum(encoding.phi ** 2, axis=0), 1.0, atol=0.05)

    def test_kernel_fidelity(self):
        rng = np.random.default_rng(2024)
        sigma = 1.0
        params = EmkParams.draw(11, 3, 4096, sigma)
        X = rng.normal(0.0, 0.7, size=(200, 3))
        Y = rng.normal(0.0, 0.7, size=(200, 3))
        phi_x = encode_emk(DescriptorSet(X), params).phi
        phi_y = encode_emk(DescriptorSet(Y), params).phi
        approx = np.sum(phi_x * phi_y, axis=0)
        exact = np.array([gaussian_kernel(x, y, sigma) for x, y in zip(X, Y)])
        assert np.mean(np.abs(approx - exact)) <= 0.05

    def test_unbiased_over_seeds(self):
        sigma = 1.0
        pairs = DescriptorSet(np.array([[0.0, 0.0, 0.0], [0.6, -0.4, 0.3], [1.5, 0.5, -1.0]]))
        estimates = []
        for seed in range(200):
            phi = encode_emk(pairs, EmkParams.draw(seed, 3, 512, sigma)).phi
            estimates.append([phi[:, 0] @ phi[:, 1], phi[:, 0] @ phi[:, 2]])
        exact = [gaussian_kernel(pairs.descriptors[0], pairs.descriptors[i], sigma) for i in (1, 2)]
        np.testing.assert_allclose(np.mean(estimates, axis=0), exact, rtol=0, atol=0.01)

    def test_odd_dimension_rejected(self):
        with pytest.raises(ValueError):
            EmkParams.draw(0, 2, 7, 1.0)

    def test_truncated_draw(self, descriptor_set):
        params = EmkParams.draw(1, 3, 64, 1.0)
        assert encode_emk(descriptor_set, params, D=32).dim == 32


class TestEncodingMatrix:

    def test_support_outside_block_rejected(self):
        phi = np.array([[1.0, 0.0], [1.0, 1.0]])
        with pytest.raises(ValueError):
            EncodingMatrix(phi, BlockStructure(1, [0, 1]))

    def test_with_columns_keeps_block_ids(self, descriptor_set):
        encoding = encode_vlad(descriptor_set, random_codebook(2, 3, 3))
        sub = encoding.with_columns([0, 2, 5])
        np.testing.assert_array_equal(sub.block_structure.block_ids, encoding.block_structure.block_ids[[0, 2, 5]])

    def test_no_columns(self):
        with pytest.raises(EmptyInputError):
            EncodingMatrix(np.zeros((3, 0)))


class TestOrthonormalFixtures:

    def test_columns_are_orthonormal(self):
        Q = random_orthonormal_codebook(3, 10, 6)
        np.testing.assert_allclose(Q.T @ Q, np.eye(6), atol=1e-12)

    def test_encoding_picks_atoms(self):
        Q = random_orthonormal_codebook(3, 10, 6)
        np.testing.assert_array_equal(encode_orthonormal(Q, [2, 2, 5]).phi, Q[:, [2, 2, 5]])
