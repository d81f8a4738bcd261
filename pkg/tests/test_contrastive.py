"""
name: test_contrastive.py
Description: Unit tests for pair probabilities, pair losses, their gradients and pairwise accuracy.
Author: Connor Kasarda
Date: 2025-05-14

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import math
import unittest
import numpy as np
from common.errors import DimensionMismatch, EmptyPairList
from alignment.labeled_pair import PairMode, PairPolicy
from alignment.pair_sampler import sample_pair_arrays, sample_pairs
from dataset.sequence_dataset import build_sequence_dataset
from embedding.embedding_model import EmbeddingModel
from embedding.param_set import ParamSet, make_rng
from estimation.contrastive import (LossKind, accuracy_from_scores, logit_pair_loss, loss_grad_check, ordered_pair_loss,
                                    pair_loss, pair_probability, pairwise_accuracy, score, survival_risk)

class TestPairProbability(unittest.TestCase):
    """
    Test case for pair_probability and score.

    Attributes:
        model (EmbeddingModel): An untrained model on 3 features.
        rng (np.random.Generator): Source of random feature vectors.
    """

    def setUp(self) -> None:
        """
        Set up a model and a random generator for testing.
        """

        self.model = EmbeddingModel.initial([3, 6, 2], seed=0)
        self.rng = make_rng(42)

    def test_identical_inputs(self) -> None:
        """
        Test that a sample compared with itself is a coin flip.
        """

        x = self.rng.standard_normal(3)
        self.assertEqual(pair_probability(self.model, x, x), 0.5)

    def test_antisymmetry(self) -> None:
        """
        Test that p(u, v) + p(v, u) = 1 on 1000 random pairs.
        """

        for _ in range(1000):
            x_u, x_v = self.rng.standard_normal(3) * 3, self.rng.standard_normal(3) * 3
            total = pair_probability(self.model, x_u, x_v) + pair_probability(self.model, x_v, x_u)
            self.assertAlmostEqual(total, 1.0, places=12)

    def test_score_matches_model(self) -> None:
        """
        Test that list scoring agrees with scoring one vector at a time.
        """

        samples = [self.rng.standard_normal(3) for _ in range(8)]
        expected = [float(self.model.score(x)) for x in samples]
        np.testing.assert_allclose(score(self.model, samples), expected, atol=1e-12)
        self.assertEqual(score(self.model, []).shape, (0,))

    def test_dimension_mismatch(self) -> None:
        """
        Test that vectors of the wrong width are rejected.
        """

        with self.assertRaises(DimensionMismatch):
            pair_probability(self.model, np.zeros(3), np.zeros(4))
        with self.assertRaises(DimensionMismatch):
            score(self.model, [np.zeros(3), np.zeros(2)])

    def test_survival_risk(self) -> None:
        """
        Test that risks are negated scores.
        """

        np.testing.assert_array_equal(survival_risk(np.array([1.0, -2.0])), [-1.0, 2.0])

class TestPairLoss(unittest.TestCase):
    """
    Test case for the pair losses and their gradients.
    """

    def test_coin_flip_losses(self) -> None:
        """
        Test the losses of p = 0.5 for either label.
        """

        for label in (0, 1):
            self.assertAlmostEqual(pair_loss(0.5, label, LossKind.BCE), math.log(2), places=12)
            self.assertAlmostEqual(pair_loss(0.5, label, LossKind.L1), 0.5, places=12)

    def test_losses_are_clamped(self) -> None:
        """
        Test that certain wrong predictions give a finite loss.
        """

        self.assertAlmostEqual(pair_loss(0.0, 1, 'bce'), -math.log(1e-12), places=6)
        self.assertTrue(np.all(np.isfinite(pair_loss(np.array([0.0, 1.0]), np.array([1, 0])))))

    def test_one_sided_sum(self) -> None:
        """
        Test that the one-sided loss over both orderings equals the two-term loss.
        """

        for p in np.linspace(0.01, 0.99, 25):
            for label in (0, 1):
                total = ordered_pair_loss(p, label) + ordered_pair_loss(1 - p, 1 - label)
                self.assertAlmostEqual(total, pair_loss(p, label), places=12)

    def test_logit_form_agrees(self) -> None:
        """
        Test that the logit form equals the probability form away from the clamp.
        """

        logits = np.linspace(-8, 8, 33)
        probabilities = 1 / (1 + np.exp(-logits))
        for label in (0, 1):
            labels = np.full(33, label)
            for kind in LossKind:
                np.testing.assert_allclose(logit_pair_loss(logits, labels, kind), pair_loss(probabilities, labels, kind),
                                           rtol=1e-9, atol=1e-12)

    def test_orientation_invariance(self) -> None:
        """
        Test that (z, C) and (-z, 1 - C) give bit-identical losses.
        """

        logits = make_rng(3).standard_normal(500) * 5
        labels = make_rng(4).integers(0, 2, 500)
        for kind in LossKind:
            np.testing.assert_array_equal(logit_pair_loss(logits, labels, kind), logit_pair_loss(-logits, 1 - labels, kind))

    def test_gradient_check(self) -> None:
        """
        Test the analytic loss gradient against finite differences for both losses.
        """

        rng = make_rng(8)
        for seed in range(5):
            model = EmbeddingModel((3, 5, 2), EmbeddingModel.initial([3, 5, 2], seed).params, 'tanh',
                                   rng.standard_normal(3), rng.uniform(0.5, 2.0, 3))
            x_u, x_v = rng.standard_normal(3), rng.standard_normal(3)
            for kind in LossKind:
                for label in (0, 1):
                    with self.subTest(seed=seed, kind=kind.value, label=label):
                        self.assertLess(loss_grad_check(model, x_u, x_v, label, kind), 1e-4)

class TestPairwiseAccuracy(unittest.TestCase):
    """
    Test case for pairwise_accuracy and accuracy_from_scores.

    Attributes:
        dataset (SequenceDataset): Random sequences.
        model (EmbeddingModel): An untrained model.
    """

    def setUp(self) -> None:
        """
        Set up random sequences and a model.
        """

        rng = make_rng(6)
        self.dataset = build_sequence_dataset({f's{k}': rng.standard_normal((8, 3)) for k in range(5)})
        self.model = EmbeddingModel.initial([3, 4, 2], seed=1)

    def test_matches_brute_force(self) -> None:
        """
        Test the accuracy against a direct recount.
        """

        pairs = sample_pairs(self.dataset, PairPolicy(1, PairMode.ALL_PAIRS, 0))
        correct = 0
        for pair in pairs:
            p = pair_probability(self.model, self.dataset.features_of(pair.u), self.dataset.features_of(pair.v))
            correct += (p > 0.5) == (pair.label == 1)
        self.assertAlmostEqual(pairwise_accuracy(self.model, pairs, self.dataset), correct / len(pairs), places=12)
        self.assertAlmostEqual(pairwise_accuracy(self.model, pairs, self.dataset.features_of), correct / len(pairs),
                               places=12)

    def test_zero_head_is_chance(self) -> None:
        """
        Test that a zero linear head scores every pair at exactly one half.
        """

        params = self.model.params
        model = self.model.with_params(ParamSet(params.weights, params.biases, np.zeros_like(params.beta)))
        pairs = sample_pairs(self.dataset, PairPolicy(1, PairMode.ALL_PAIRS, 0))
        self.assertEqual(pairwise_accuracy(model, pairs, self.dataset), 0.5)

    def test_reversed_scores(self) -> None:
        """
        Test that negating the scores turns accuracy a into 1 - a.
        """

        pairs = sample_pairs(self.dataset, PairPolicy(1, PairMode.ALL_PAIRS, 0))
        arrays = sample_pair_arrays(self.dataset, PairPolicy(1, PairMode.ALL_PAIRS, 0))
        scores = make_rng(2).standard_normal(self.dataset.n_samples)
        self.assertEqual(len(pairs), len(arrays))
        self.assertAlmostEqual(accuracy_from_scores(scores, arrays) + accuracy_from_scores(-scores, arrays), 1.0,
                               places=12)

    def test_monotone_score_transform(self) -> None:
        """
        Test that an increasing transform of the scores keeps the accuracy unchanged.
        """

        arrays = sample_pair_arrays(self.dataset, PairPolicy(1, PairMode.ALL_PAIRS, 0))
        scores = make_rng(4).standard_normal(self.dataset.n_samples)
        self.assertEqual(accuracy_from_scores(np.exp(scores), arrays), accuracy_from_scores(scores, arrays))

    def test_empty_pairs(self) -> None:
        """
        Test that accuracy over no pairs is an error.
        """

        with self.assertRaises(EmptyPairList):
            pairwise_accuracy(self.model, [], self.dataset)

if __name__ == '__main__':
    unittest.main()
