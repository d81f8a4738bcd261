"""
name: test_ball_springs.py
Description: Unit tests for the ball-springs degradation simulator.
Author: Connor Kasarda
Date: 2025-05-24

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import os
import unittest
from unittest import mock
import numpy as np
from common.errors import ConfigError, IsolatedBallAfterRetries, NumericBlowup
from embedding.param_set import make_rng
from synthesis.ball_springs import (BallSpringsSimulator, SpringsConfig, integrate, random_adjacency,
                                    simulate_ball_springs)
from synthesis.seeding import THREADS_VARIABLE

class TestBallSprings(unittest.TestCase):
    """
    Test case for the ball-springs simulator.

    Attributes:
        config (SpringsConfig): A small simulator configuration.
    """

    def setUp(self) -> None:
        """
        Set up a small configuration for testing.
        """

        self.config = SpringsConfig(n_balls=4, space_dim=2, sim_steps=5, samples_per_sequence=6, n_sequences=3,
                                    alpha_range=(0.8, 0.9), seed=4)

    def test_shapes_and_truth(self) -> None:
        """
        Test dataset shape and the closed-form degradation exponent.
        """

        run = BallSpringsSimulator(self.config).run()
        self.assertEqual(len(run.dataset), 3)
        self.assertEqual(run.dataset.feature_dim, 40)
        for seq_id in run.dataset.seq_ids:
            alpha = run.alphas[seq_id]
            self.assertTrue(0.8 <= alpha <= 0.9)
            steps = np.arange(1, 7)
            np.testing.assert_allclose(run.dataset.clean_trend(seq_id), np.log(1 / alpha) * steps * (steps - 1) / 2)
            np.testing.assert_array_equal(run.dataset.time_indices(seq_id), steps)
        self.assertEqual(run.metadata()['springs00000']['alpha'], run.alphas['springs00000'])

    def test_rigidity_decays(self) -> None:
        """
        Test that rigidities never grow and stay above the fully decayed bound.
        """

        run = BallSpringsSimulator(self.config).run()
        for seq_id, history in run.rigidity_histories.items():
            self.assertEqual(history.shape[0], 6)
            self.assertTrue(np.all(np.diff(history, axis=0) <= 0))
            bound = self.config.base_rigidity * run.alphas[seq_id] ** (6 * 5 / 2) * (1 - 1e-12)
            self.assertTrue(np.all(history >= bound))

    def test_motion_tracks_rigidity(self) -> None:
        """
        Test that balls travel visibly at first and far less once the springs have decayed.
        """

        config = SpringsConfig(n_balls=5, sim_steps=30, samples_per_sequence=30, n_sequences=5, alpha_range=(0.9, 0.9),
                               seed=2)
        dataset = simulate_ball_springs(config)
        early, late = [], []
        for seq_id in dataset.seq_ids:
            frames = dataset.sequence_matrix(seq_id).reshape(30, 30, 5, 2)
            travel = np.linalg.norm(frames[:, -1] - frames[:, 0], axis=-1).mean(axis=1)
            early.extend(travel[:5])
            late.extend(travel[-5:])
        self.assertGreater(np.mean(early[::5]), 0.1)
        self.assertLess(np.mean(late), 0.2 * np.mean(early))

    def test_no_ageing(self) -> None:
        """
        Test that alpha = 1 keeps every spring intact and the truth at zero.
        """

        run = BallSpringsSimulator(SpringsConfig(n_balls=3, sim_steps=2, samples_per_sequence=4, n_sequences=2,
                                                 alpha_range=(1.0, 1.0))).run()
        for seq_id, history in run.rigidity_histories.items():
            np.testing.assert_array_equal(history, np.full(history.shape, 1.0))
            np.testing.assert_array_equal(run.dataset.clean_trend(seq_id), np.zeros(4))

    def test_momentum_is_conserved(self) -> None:
        """
        Test that internal spring forces leave the total momentum at zero.
        """

        rng = make_rng(3)
        adjacency = random_adjacency(rng, 6, 0.5)
        rigidity = np.where(adjacency, rng.uniform(0.5, 1.5, (6, 6)), 0.0)
        rigidity = np.triu(rigidity, 1) + np.triu(rigidity, 1).T
        _, velocities = integrate(rng.standard_normal((6, 2)), np.zeros((6, 2)), rigidity, 1.0, 0.01, 200)
        np.testing.assert_allclose(velocities.sum(axis=0), 0.0, atol=1e-9)

    def test_blowup(self) -> None:
        """
        Test that a divergent integration is reported.
        """

        rigidity = np.array([[0.0, 1e8], [1e8, 0.0]])
        with self.assertRaises(NumericBlowup):
            integrate(np.array([[0.0], [3.0]]), np.zeros((2, 1)), rigidity, 1.0, 1.0, 50)

    def test_determinism(self) -> None:
        """
        Test that runs repeat exactly, with or without worker threads.
        """

        first = simulate_ball_springs(self.config)
        with mock.patch.dict(os.environ, {THREADS_VARIABLE: '3'}):
            second = simulate_ball_springs(self.config)
        self.assertEqual(first, second)

    def test_invalid_config(self) -> None:
        """
        Test that isolated balls and bad parameters are reported.
        """

        with self.assertRaises(IsolatedBallAfterRetries):
            random_adjacency(make_rng(0), 50, 1e-6)
        with self.assertRaises(ConfigError):
            SpringsConfig(alpha_range=(0.5, 1.2))
        with self.assertRaises(ConfigError):
            SpringsConfig(n_balls=1)

if __name__ == '__main__':
    unittest.main()
