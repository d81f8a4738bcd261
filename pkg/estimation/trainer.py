"""
Name: trainer.py
Description: Trains an embedding model by minimizing the pair loss over within-sequence or comparable survival pairs.
Author: Connor Kasarda
Date: 2025-05-16

Notes:
    Every random draw of a run comes from the config seed through a fixed stream key, so equal seeds and data give
    identical models and histories.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import numpy as np
from common.errors import ConfigError, DivergedLoss, EmptyDataset, NoComparablePairs
from common.log import get_logger
from dataset.sequence_dataset import SequenceDataset
from dataset.survival_dataset import SurvivalDataset
from alignment.labeled_pair import PairArrays, PairMode, PairPolicy, MAX_ALL_PAIRS
from alignment.pair_sampler import comparable_pair_arrays, orient, sample_pair_arrays
from embedding.adam import AdamState, adam_step
from embedding.embedding_model import EmbeddingModel
from embedding.network import forward
from embedding.param_set import init_params, make_rng
from estimation.contrastive import accuracy_from_scores, batch_loss_and_gradient
from estimation.train_config import TrainConfig, TrainHistory, TrainMode

logger = get_logger(__name__)

STD_FLOOR = 1e-8
MAX_VALIDATION_PAIRS = 50_000

SPLIT_STREAM = 1
SHUFFLE_STREAM = 2
VALIDATION_STREAM = 3
SURVIVAL_STREAM = 4

class ContrastiveTrainer:
    """
    Class for fitting an EmbeddingModel to ordered pairs.

    Attributes:
        config (TrainConfig): Hyperparameters of the run.

    Methods:
        fit(data: SequenceDataset | SurvivalDataset) -> tuple[EmbeddingModel, TrainHistory]:
            Trains a model and returns the best one seen with the run's history.
    """

    def __init__(self, config: TrainConfig) -> None:
        self.config = config

    def fit(self, data: object) -> tuple[EmbeddingModel, TrainHistory]:
        """
        Trains a model on sequences or survival records.

        Args:
            data (SequenceDataset | SurvivalDataset): Training data; the dataset type selects the pair kind.

        Returns:
            tuple[EmbeddingModel, TrainHistory]: The model with the best validation accuracy and the run's history.

        Raises:
            EmptyDataset: If there are fewer than 2 sequences or records.
            NoComparablePairs: If the survival training records have no comparable pair.
            DivergedLoss: If the loss becomes NaN or Inf.
        """

        if isinstance(data, SurvivalDataset):
            return self._fit_survival(data)
        return self._fit_sequences(data)

    def _split(self, ids: list[str]) -> tuple[list[str], list[str]]:
        """
        Splits ids into (train, validation), keeping at least one id on each side when validation is requested.
        """

        n_ids = len(ids)
        fraction = self.config.validation_fraction
        if fraction == 0:
            return list(ids), []
        n_validation = min(max(1, int(round(fraction * n_ids))), n_ids - 1)
        order = make_rng(self.config.seed, SPLIT_STREAM, 0).permutation(n_ids)
        held_out = set(order[:n_validation].tolist())
        train = [item for k, item in enumerate(ids) if k not in held_out]
        validation = [item for k, item in enumerate(ids) if k in held_out]
        return train, validation

    def _fit_sequences(self, dataset: SequenceDataset) -> tuple[EmbeddingModel, TrainHistory]:
        if len(dataset) < 2:
            raise EmptyDataset(f'training needs at least 2 sequences, got {len(dataset)}')
        train_ids, validation_ids = self._split(dataset.seq_ids)
        train_set = dataset.subset(train_ids)
        policy = self.config.pair_policy()
        logger.info('train sequences=%d samples=%d validation_sequences=%d', len(train_ids),
                    train_set.n_samples, len(validation_ids))

        validation = None
        if validation_ids:
            validation_set = dataset.subset(validation_ids)
            total = sum(len(samples) * (len(samples) - 1) // 2 for samples in validation_set.sequences.values())
            mode = PairMode.ALL_PAIRS if total <= min(MAX_VALIDATION_PAIRS, MAX_ALL_PAIRS) else PairMode.SAMPLED
            validation_policy = PairPolicy(self.config.pairs_per_sequence, mode,
                                           int(make_rng(self.config.seed, VALIDATION_STREAM, 0).integers(2 ** 31)))
            validation = (validation_set.feature_matrix(), sample_pair_arrays(validation_set, validation_policy))

        return self._optimize(train_set.feature_matrix(), lambda epoch: sample_pair_arrays(train_set, policy, epoch),
                              validation)

    def _fit_survival(self, dataset: SurvivalDataset) -> tuple[EmbeddingModel, TrainHistory]:
        if len(dataset) < 2:
            raise EmptyDataset(f'training needs at least 2 records, got {len(dataset)}')
        train_ids, validation_ids = self._split(dataset.ids)
        train_set = dataset.subset(train_ids)
        candidates = comparable_pair_arrays(train_set.times(), train_set.events(), self.config.seed)
        if len(candidates) == 0:
            raise NoComparablePairs('the training records have no comparable pair')
        per_epoch = min(len(candidates), self.config.pairs_per_sequence * len(train_set))
        times = train_set.times()
        logger.info('train records=%d comparable_pairs=%d pairs_per_epoch=%d validation_records=%d', len(train_set),
                    len(candidates), per_epoch, len(validation_ids))

        def draw(epoch: int) -> PairArrays:
            rng = make_rng(self.config.seed, SURVIVAL_STREAM, epoch)
            chosen = candidates.take(rng.choice(len(candidates), size=per_epoch, replace=False))
            u, v = orient(rng, chosen.u, chosen.v)
            return PairArrays(u, v, (times[u] < times[v]).astype(int))

        validation = None
        if validation_ids:
            validation_set = dataset.subset(validation_ids)
            pairs = comparable_pair_arrays(validation_set.times(), validation_set.events(), self.config.seed)
            if len(pairs) > MAX_VALIDATION_PAIRS:
                rng = make_rng(self.config.seed, VALIDATION_STREAM, 0)
                pairs = pairs.take(rng.choice(len(pairs), size=MAX_VALIDATION_PAIRS, replace=False))
            if len(pairs) > 0:
                validation = (validation_set.feature_matrix(), pairs)
            else:
                logger.warning('validation records have no comparable pair; using training pairs for early stopping')
        return self._optimize(train_set.feature_matrix(), draw, validation)

    def _optimize(self, train_features: np.ndarray, draw_pairs, validation: tuple) -> tuple[EmbeddingModel, TrainHistory]:
        """
        Runs the epoch loop shared by both modes.

        Args:
            train_features (np.ndarray): Raw training feature matrix that pairs index into.
            draw_pairs (Callable[[int], PairArrays]): Pairs of a given epoch.
            validation (tuple[np.ndarray, PairArrays] | None): Raw validation features and their fixed pairs.

        Returns:
            tuple[EmbeddingModel, TrainHistory]: The best model and the history.
        """

        config = self.config
        norm_mean = train_features.mean(axis=0)
        norm_std = np.maximum(train_features.std(axis=0), STD_FLOOR)
        layer_dims = config.layer_dims(train_features.shape[1])
        model = EmbeddingModel(layer_dims, init_params(layer_dims, config.seed), config.activation, norm_mean, norm_std)
        train_normalized = model.normalize(train_features)
        validation_normalized = model.normalize(validation[0]) if validation is not None else None

        params = model.params
        state = AdamState.initial(params, config.learning_rate, config.beta1, config.beta2, config.eps)
        history = TrainHistory()
        best_accuracy, best_params, waited = -1.0, params, 0

        for epoch in range(config.epochs):
            pairs = draw_pairs(epoch)
            pairs = pairs.take(make_rng(config.seed, SHUFFLE_STREAM, epoch).permutation(len(pairs)))
            total_loss = 0.0
            for start in range(0, len(pairs), config.batch_size):
                batch = pairs.take(np.arange(start, min(start + config.batch_size, len(pairs))))
                loss, grads = batch_loss_and_gradient(params, config.activation, train_normalized[batch.u],
                                                      train_normalized[batch.v], batch.label, config.loss)
                if not np.isfinite(loss) or not grads.is_finite():
                    raise DivergedLoss(f'epoch {epoch}, pair {start}: loss became {loss}; '
                                       f'try a smaller learning_rate than {config.learning_rate}')
                params, state = adam_step(state, params, grads)
                total_loss += loss * len(batch)
            history.train_loss.append(total_loss / len(pairs))

            if validation is None:
                accuracy = accuracy_from_scores(forward(params, train_normalized, config.activation).score, pairs)
            else:
                accuracy = accuracy_from_scores(forward(params, validation_normalized, config.activation).score,
                                                validation[1])
            history.validation_accuracy.append(accuracy)
            logger.info('epoch=%d loss=%.6f val_accuracy=%.4f', epoch, history.train_loss[-1], accuracy)

            if accuracy > best_accuracy:
                best_accuracy, best_params, waited = accuracy, params, 0
                history.best_epoch = epoch
            else:
                waited += 1
                if waited >= config.early_stop_patience:
                    history.stopped_early = epoch < config.epochs - 1
                    logger.info('early_stop waited=%d epoch=%d', waited, epoch)
                    break

        return model.with_params(best_params), history

def train(data: object, config: TrainConfig) -> tuple[EmbeddingModel, TrainHistory]:
    """
    Trains an embedding model.

    Args:
        data (SequenceDataset | SurvivalDataset): Training data.
        config (TrainConfig): Hyperparameters; config.mode must agree with the data type.

    Returns:
        tuple[EmbeddingModel, TrainHistory]: The best model and the run's history.

    Raises:
        ConfigError: If config.mode does not match the data.
    """

    expected = TrainMode.SURVIVAL if isinstance(data, SurvivalDataset) else TrainMode.SEQUENCE
    if config.mode is not expected:
        raise ConfigError(f'config mode {config.mode.value!r} does not match {type(data).__name__}')
    return ContrastiveTrainer(config).fit(data)
