"""
name: test_correlation.py
Description: Unit tests for Spearman and Pearson correlation.
Author: Connor Kasarda
Date: 2025-05-20

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import unittest
import numpy as np
from scipy.stats import pearsonr, spearmanr
from common.errors import ConstantVector, LengthMismatch
from embedding.param_set import make_rng
from evaluation.correlation import CorrelationKind, per_sequence_correlation, rank_correlation

class TestRankCorrelation(unittest.TestCase):
    """
    Test case for the rank_correlation function.
    """

    def test_affine_map(self) -> None:
        """
        Test that an increasing affine map correlates perfectly.
        """

        a = make_rng(0).standard_normal(30)
        self.assertAlmostEqual(rank_correlation(a, 3 * a + 2, CorrelationKind.PEARSON), 1.0, places=12)
        self.assertEqual(rank_correlation(a, 3 * a + 2), 1.0)
        self.assertEqual(rank_correlation(a, -a), -1.0)

    def test_monotone_map(self) -> None:
        """
        Test that Spearman ignores a monotone distortion and Pearson does not.
        """

        a = np.linspace(0, 5, 40)
        self.assertEqual(rank_correlation(a, np.exp(a), 'spearman'), 1.0)
        self.assertLess(rank_correlation(a, np.exp(a), 'pearson'), 1.0)

    def test_matches_scipy(self) -> None:
        """
        Test both kinds against scipy on random data with ties.
        """

        rng = make_rng(5)
        for _ in range(50):
            a = rng.integers(0, 6, 15).astype(float)
            b = rng.integers(0, 6, 15).astype(float)
            if np.all(a == a[0]) or np.all(b == b[0]):
                continue
            self.assertAlmostEqual(rank_correlation(a, b), spearmanr(a, b)[0], places=10)
            self.assertAlmostEqual(rank_correlation(a, b, 'pearson'), pearsonr(a, b)[0], places=10)

    def test_invalid_input(self) -> None:
        """
        Test length mismatches and constant vectors.
        """

        with self.assertRaises(LengthMismatch):
            rank_correlation([1, 2, 3], [1, 2])
        with self.assertRaises(LengthMismatch):
            rank_correlation([1], [2])
        with self.assertRaises(ConstantVector):
            rank_correlation([1, 1, 1], [1, 2, 3])

class TestPerSequenceCorrelation(unittest.TestCase):
    """
    Test case for the per_sequence_correlation function.
    """

    def test_absolute_mean(self) -> None:
        """
        Test that reversed sequences count as perfectly correlated.
        """

        truth = {'a': np.arange(5.0), 'b': np.arange(5.0)}
        scores = {'a': np.arange(5.0), 'b': -np.arange(5.0)}
        mean, std = per_sequence_correlation(scores, truth)
        self.assertEqual(mean, 1.0)
        self.assertEqual(std, 0.0)

    def test_constant_sequences_are_skipped(self) -> None:
        """
        Test that constant scores are left out, and that all-constant input is an error.
        """

        truth = {'a': np.arange(4.0), 'b': np.arange(4.0)}
        mean, _ = per_sequence_correlation({'a': np.zeros(4), 'b': np.arange(4.0)}, truth)
        self.assertEqual(mean, 1.0)
        with self.assertRaises(ConstantVector):
            per_sequence_correlation({'a': np.zeros(4), 'b': np.ones(4)}, truth)

if __name__ == '__main__':
    unittest.main()
