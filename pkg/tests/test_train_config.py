"""
name: test_train_config.py
Description: Unit tests for training configs and their file format.
Author: Connor Kasarda
Date: 2025-05-16

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import unittest
from pathlib import Path
from common.errors import ConfigError, ZeroWidthLayer
from alignment.labeled_pair import PairMode
from embedding.network import Activation
from estimation.contrastive import LossKind
from estimation.train_config import TrainConfig, TrainHistory, TrainMode, read_train_config

class TestTrainConfig(unittest.TestCase):
    """
    Test case for the TrainConfig class.
    """

    def test_defaults(self) -> None:
        """
        Test the default hyperparameters.
        """

        config = TrainConfig()
        self.assertEqual(config.mode, TrainMode.SEQUENCE)
        self.assertEqual(config.layer_dims(10), (10, 64, 32, 8))
        self.assertEqual(config.learning_rate, 1e-3)
        self.assertIs(config.pair_mode, PairMode.SAMPLED)

    def test_from_mapping(self) -> None:
        """
        Test that text values are parsed into typed fields.
        """

        config = TrainConfig.from_mapping({'hidden_dims': '16, 8', 'activation': 'relu', 'loss': 'l1', 'epochs': '4',
                                           'learning_rate': '0.05', 'validation_fraction': '0'})
        self.assertEqual(config.hidden_dims, (16, 8))
        self.assertIs(config.activation, Activation.RELU)
        self.assertIs(config.loss, LossKind.L1)
        self.assertEqual(config.epochs, 4)
        self.assertEqual(config.learning_rate, 0.05)
        self.assertEqual(config.validation_fraction, 0.0)

    def test_linear_embedding(self) -> None:
        """
        Test that an empty hidden_dims gives a single affine layer.
        """

        config = TrainConfig.from_mapping({'hidden_dims': '', 'embedding_dim': '1'})
        self.assertEqual(config.layer_dims(3), (3, 1))

    def test_invalid_values(self) -> None:
        """
        Test that unknown keys and out-of-range values are config errors.
        """

        with self.assertRaises(ConfigError):
            TrainConfig.from_mapping({'epoch': '3'})
        with self.assertRaises(ConfigError):
            TrainConfig.from_mapping({'epochs': 'three'})
        with self.assertRaises(ConfigError):
            TrainConfig(epochs=0)
        with self.assertRaises(ConfigError):
            TrainConfig(validation_fraction=1.0)
        with self.assertRaises(ConfigError):
            TrainConfig(loss='hinge')
        with self.assertRaises(ZeroWidthLayer):
            TrainConfig(hidden_dims=(8, 0))

    def test_with_overrides(self) -> None:
        """
        Test that overrides replace fields and None leaves them alone.
        """

        config = TrainConfig().with_overrides(epochs=7, seed=None)
        self.assertEqual(config.epochs, 7)
        self.assertEqual(config.seed, 0)

    def test_read_corpus_config(self) -> None:
        """
        Test reading the corpus config file.
        """

        path = Path(__file__).parent.parent / 'corpus' / 'train.cfg'
        if not path.exists():
            self.fail(f'Missing corpus file: {path}')
        config = read_train_config(str(path))
        self.assertEqual(config.hidden_dims, (4,))
        self.assertEqual(config.embedding_dim, 2)
        self.assertEqual(config.epochs, 3)
        self.assertEqual(config.seed, 3)
        self.assertEqual(config.to_mapping()['mode'], 'sequence')

class TestTrainHistory(unittest.TestCase):
    """
    Test case for the TrainHistory class.
    """

    def test_mapping(self) -> None:
        """
        Test the mapping written into run reports.
        """

        history = TrainHistory([0.7, 0.6], [0.55, 0.6], 1, False)
        mapping = history.to_mapping()
        self.assertEqual(mapping['epochs_completed'], 2)
        self.assertEqual(mapping['best_epoch'], 1)

if __name__ == '__main__':
    unittest.main()
