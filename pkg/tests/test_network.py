"""
name: test_network.py
Description: Unit tests for parameter initialization, the forward and backward passes and the embedding model.
Author: Connor Kasarda
Date: 2025-05-08

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import unittest
import numpy as np
from common.errors import CacheMismatch, DimensionMismatch, EmptyLayerList, NonFiniteInput, ShapeMismatch, ZeroWidthLayer
from embedding.embedding_model import EmbeddingModel
from embedding.network import Activation, backward, forward, grad_check
from embedding.param_set import ParamSet, init_params, make_rng

class TestInitParams(unittest.TestCase):
    """
    Test case for init_params.
    """

    def test_shapes_and_bounds(self) -> None:
        """
        Test shapes, zero biases and the uniform bounds.
        """

        params = init_params([4, 6, 3], seed=2)
        self.assertEqual(params.layer_dims, (4, 6, 3))
        self.assertEqual(params.weights[0].shape, (6, 4))
        self.assertEqual(params.weights[1].shape, (3, 6))
        self.assertTrue(all(np.all(bias == 0) for bias in params.biases))
        self.assertTrue(np.all(np.abs(params.weights[0]) <= np.sqrt(6 / 10)))
        self.assertTrue(np.all(np.abs(params.beta) <= np.sqrt(6 / 4)))
        self.assertEqual(params.n_params, 6 * 4 + 6 + 3 * 6 + 3 + 3)

    def test_same_seed_same_parameters(self) -> None:
        """
        Test that initialization is a function of the seed.
        """

        first, second = init_params([5, 4, 2], 9), init_params([5, 4, 2], 9)
        for left, right in zip(first.arrays(), second.arrays()):
            np.testing.assert_array_equal(left, right)

    def test_invalid_layer_dims(self) -> None:
        """
        Test that degenerate dimension chains are rejected.
        """

        with self.assertRaises(EmptyLayerList):
            init_params([5], 0)
        with self.assertRaises(ZeroWidthLayer):
            init_params([3, 0, 1], 0)

class TestForwardBackward(unittest.TestCase):
    """
    Test case for forward, backward and grad_check.

    Attributes:
        params (ParamSet): A two hidden layer network.
    """

    def setUp(self) -> None:
        """
        Set up a small network for testing.
        """

        self.params = init_params([3, 5, 4, 2], seed=1)

    def test_batch_matches_single(self) -> None:
        """
        Test that batch rows score like single vectors.
        """

        x = make_rng(3).standard_normal((6, 3))
        batch = forward(self.params, x)
        for row in range(6):
            single = forward(self.params, x[row])
            self.assertAlmostEqual(float(single.score), float(batch.score[row]), places=12)
            np.testing.assert_allclose(single.embedding, batch.embedding[row], atol=1e-12)

    def test_score_is_head_of_embedding(self) -> None:
        """
        Test that the score is beta . F(x) with an identity last layer.
        """

        x = np.array([0.3, -1.2, 0.8])
        result = forward(self.params, x)
        self.assertAlmostEqual(float(result.score), float(self.params.beta @ result.embedding), places=12)
        hidden = np.tanh(self.params.weights[1] @ np.tanh(self.params.weights[0] @ x + self.params.biases[0])
                         + self.params.biases[1])
        np.testing.assert_allclose(result.embedding, self.params.weights[2] @ hidden + self.params.biases[2], atol=1e-12)

    def test_dimension_mismatch(self) -> None:
        """
        Test that a wrong input width is rejected.
        """

        with self.assertRaises(DimensionMismatch):
            forward(self.params, np.zeros(4))

    def test_cache_mismatch(self) -> None:
        """
        Test that a cache from another architecture is rejected.
        """

        cache = forward(init_params([3, 2], 0), np.zeros(3)).cache
        with self.assertRaises(CacheMismatch):
            backward(self.params, cache, 1.0)

    def test_batch_backward_sums_rows(self) -> None:
        """
        Test that per-row upstream values sum the single-row gradients.
        """

        x = make_rng(5).standard_normal((3, 3))
        upstream = np.array([0.5, -1.0, 2.0])
        total = backward(self.params, forward(self.params, x).cache, upstream)
        expected = None
        for row in range(3):
            grads = backward(self.params, forward(self.params, x[row]).cache, upstream[row])
            expected = grads if expected is None else expected.plus(grads)
        for left, right in zip(total.arrays(), expected.arrays()):
            np.testing.assert_allclose(left, right, atol=1e-12)

    def test_grad_check_random_tanh_architectures(self) -> None:
        """
        Test backward against finite differences on 100 random tanh networks.
        """

        rng = make_rng(2025)
        for trial in range(100):
            hidden = rng.integers(1, 17, size=rng.integers(0, 4)).tolist()
            layer_dims = [int(rng.integers(1, 9)), *hidden, int(rng.integers(1, 9))]
            with self.subTest(layer_dims=layer_dims):
                self.assertLess(grad_check(layer_dims, seed=trial, activation=Activation.TANH), 1e-4)

    def test_grad_check_relu(self) -> None:
        """
        Test backward against finite differences on relu networks away from the kinks.
        """

        for seed in range(5):
            self.assertLess(grad_check([4, 8, 6, 3], seed=seed, activation=Activation.RELU), 1e-4)

class TestEmbeddingModel(unittest.TestCase):
    """
    Test case for the EmbeddingModel class.
    """

    def setUp(self) -> None:
        """
        Set up a model with a feature normalization.
        """

        self.model = EmbeddingModel((2, 3, 2), init_params([2, 3, 2], 7), Activation.TANH,
                                    np.array([1.0, -1.0]), np.array([2.0, 0.5]))

    def test_normalization_is_applied(self) -> None:
        """
        Test that scoring raw features equals the network on normalized ones.
        """

        x = np.array([3.0, 0.0])
        expected = forward(self.model.params, np.array([1.0, 2.0])).score
        self.assertAlmostEqual(float(self.model.score(x)), float(expected), places=12)

    def test_non_finite_input(self) -> None:
        """
        Test that NaN features are rejected.
        """

        with self.assertRaises(NonFiniteInput):
            self.model.score(np.array([np.nan, 0.0]))

    def test_invalid_normalization(self) -> None:
        """
        Test that a zero standard deviation is rejected.
        """

        with self.assertRaises(ShapeMismatch):
            EmbeddingModel((2, 2), init_params([2, 2], 0), 'tanh', np.zeros(2), np.array([1.0, 0.0]))

    def test_params_must_match_layers(self) -> None:
        """
        Test that parameters of another architecture are rejected.
        """

        with self.assertRaises(ShapeMismatch):
            EmbeddingModel((2, 4, 2), init_params([2, 3, 2], 0))

if __name__ == '__main__':
    unittest.main()
