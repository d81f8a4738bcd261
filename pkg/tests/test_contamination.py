"""
name: test_contamination.py
Description: Unit tests for window-shuffle contamination.
Author: Connor Kasarda
Date: 2025-05-27

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import unittest
import numpy as np
from common.errors import ConfigError, EmptyDataset, WindowTooLarge
from dataset.sequence_dataset import SequenceDataset, build_sequence_dataset
from embedding.param_set import make_rng
from synthesis.contamination import ContaminationParams, contaminate, label_flip_fraction

class TestContamination(unittest.TestCase):
    """
    Test case for contaminate and label_flip_fraction.

    Attributes:
        dataset (SequenceDataset): Clean sequences of 10 samples with trend truth.
    """

    def setUp(self) -> None:
        """
        Set up clean sequences for testing.
        """

        rng = make_rng(0)
        self.dataset = build_sequence_dataset({f's{k}': rng.standard_normal((10, 2)) for k in range(40)},
                                              trend_truth={f's{k}': np.arange(10) / 9 for k in range(40)})

    def test_zero_prevalence(self) -> None:
        """
        Test that eta = 0 and unit windows leave the data untouched.
        """

        self.assertEqual(contaminate(self.dataset, ContaminationParams(0.0, 4)), self.dataset)
        self.assertEqual(contaminate(self.dataset, ContaminationParams(1.0, 1)), self.dataset)
        self.assertEqual(label_flip_fraction(self.dataset), 0.0)

    def test_samples_are_preserved(self) -> None:
        """
        Test that each sequence keeps its samples and only their order changes.
        """

        noisy = contaminate(self.dataset, ContaminationParams(0.5, 4, seed=1))
        for seq_id in self.dataset.seq_ids:
            np.testing.assert_array_equal(noisy.time_indices(seq_id), self.dataset.time_indices(seq_id))
            np.testing.assert_array_equal(np.sort(noisy.clean_indices(seq_id)), np.arange(10))
            for sample in noisy.sequences[seq_id]:
                np.testing.assert_array_equal(sample.features, self.dataset.sequences[seq_id][sample.clean_t].features)
            np.testing.assert_allclose(noisy.clean_trend(seq_id), noisy.clean_indices(seq_id) / 9)

    def test_flip_fraction(self) -> None:
        """
        Test the flip fraction against a direct recount.
        """

        noisy = contaminate(self.dataset, ContaminationParams(0.2, 2, seed=3))
        flipped = total = 0
        for samples in noisy.sequences.values():
            for i in range(len(samples)):
                for j in range(i + 1, len(samples)):
                    total += 1
                    flipped += (samples[i].t < samples[j].t) != (samples[i].clean_t < samples[j].clean_t)
        fraction = label_flip_fraction(noisy)
        self.assertAlmostEqual(fraction, flipped / total, places=12)
        self.assertGreater(fraction, 0.0)
        self.assertLess(fraction, 0.1)

    def test_determinism(self) -> None:
        """
        Test that the seed fixes the contamination.
        """

        params = ContaminationParams(0.5, 5, seed=4)
        self.assertEqual(contaminate(self.dataset, params), contaminate(self.dataset, params))

    def test_invalid_params(self) -> None:
        """
        Test oversized windows and out-of-range parameters.
        """

        with self.assertRaises(WindowTooLarge):
            contaminate(self.dataset, ContaminationParams(0.2, 11))
        with self.assertRaises(ConfigError):
            ContaminationParams(1.5, 2)
        with self.assertRaises(ConfigError):
            ContaminationParams(0.2, 0)

    def test_empty_dataset(self) -> None:
        """
        Test that a dataset without sequences cannot be contaminated.
        """

        with self.assertRaises(EmptyDataset):
            contaminate(SequenceDataset({}, 1), ContaminationParams(0.2, 2))

if __name__ == '__main__':
    unittest.main()
