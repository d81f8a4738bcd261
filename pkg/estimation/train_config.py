"""
Name: train_config.py
Description: Training hyperparameters, their 'key = value' file form, and the per-epoch training history.
Author: Connor Kasarda
Date: 2025-05-15

Notes:
    Example config file:
        mode = sequence
        hidden_dims = 64 32
        embedding_dim = 8
        loss = bce
        epochs = 30
    Keys left out keep their defaults; CLI options override file values.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass, field, fields, replace
from enum import Enum
from common.errors import ConfigError
from embedding.network import Activation
from embedding.param_set import check_layer_dims
from alignment.labeled_pair import PairMode, PairPolicy
from estimation.contrastive import LossKind
from parsing.key_value_reader import KeyValueReader

class TrainMode(str, Enum):
    SEQUENCE = 'sequence'
    SURVIVAL = 'survival'

@dataclass(frozen=True)
class TrainConfig:
    """
    Everything a training run depends on besides the data.

    Attributes:
        mode (TrainMode): sequence (time-order pairs) or survival (comparable pairs).
        hidden_dims (tuple[int, ...]): Hidden layer widths; empty for a linear embedding.
        embedding_dim (int): Embedding width d_e.
        activation (Activation): Hidden activation.
        loss (LossKind): Pair loss.
        epochs (int): Maximum number of epochs, at least 1.
        batch_size (int): Pairs per Adam step.
        pairs_per_sequence (int): Pairs P drawn per sequence and epoch (sequence mode), or per training record
            (survival mode).
        pair_mode (PairMode): sampled or all_pairs.
        learning_rate (float): Adam step size.
        beta1 (float): Adam first-moment decay.
        beta2 (float): Adam second-moment decay.
        eps (float): Adam denominator offset.
        validation_fraction (float): Share of sequences (or records) held out for early stopping, in [0, 1).
        early_stop_patience (int): Epochs without a better validation accuracy before stopping.
        seed (int): Seed of every random draw in the run.
    """

    mode: TrainMode = TrainMode.SEQUENCE
    hidden_dims: tuple = (64, 32)
    embedding_dim: int = 8
    activation: Activation = Activation.TANH
    loss: LossKind = LossKind.BCE
    epochs: int = 30
    batch_size: int = 256
    pairs_per_sequence: int = 32
    pair_mode: PairMode = PairMode.SAMPLED
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    validation_fraction: float = 0.2
    early_stop_patience: int = 5
    seed: int = 0

    def __post_init__(self) -> None:
        """
        Normalizes enum fields and checks ranges.

        Raises:
            ConfigError: If a value is out of range or an enum value is unknown.
        """

        for name, enum in (('mode', TrainMode), ('activation', Activation), ('loss', LossKind),
                           ('pair_mode', PairMode)):
            try:
                object.__setattr__(self, name, enum(getattr(self, name)))
            except ValueError:
                raise ConfigError(f'unknown {name} {getattr(self, name)!r}') from None
        object.__setattr__(self, 'hidden_dims', tuple(int(width) for width in self.hidden_dims))
        checks = (
            (self.epochs >= 1, f'epochs must be >= 1, got {self.epochs}'),
            (self.batch_size >= 1, f'batch_size must be >= 1, got {self.batch_size}'),
            (self.embedding_dim >= 1, f'embedding_dim must be >= 1, got {self.embedding_dim}'),
            (self.pairs_per_sequence >= 1, f'pairs_per_sequence must be >= 1, got {self.pairs_per_sequence}'),
            (self.learning_rate > 0, f'learning_rate must be positive, got {self.learning_rate}'),
            (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1, 'beta1 and beta2 must lie in [0, 1)'),
            (self.eps > 0, f'eps must be positive, got {self.eps}'),
            (0 <= self.validation_fraction < 1, f'validation_fraction must lie in [0, 1), got {self.validation_fraction}'),
            (self.early_stop_patience >= 1, f'early_stop_patience must be >= 1, got {self.early_stop_patience}'),
        )
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)
        check_layer_dims([1, *self.hidden_dims, self.embedding_dim])

    def layer_dims(self, input_dim: int) -> tuple[int, ...]:
        """
        Returns the dimension chain [d, h1, ..., d_e] for features of width input_dim.
        """

        return check_layer_dims([input_dim, *self.hidden_dims, self.embedding_dim])

    def pair_policy(self, seed: int = None) -> PairPolicy:
        return PairPolicy(self.pairs_per_sequence, self.pair_mode, self.seed if seed is None else seed)

    def with_overrides(self, **overrides: object) -> 'TrainConfig':
        """
        Returns a copy with the given fields replaced; None values are ignored.
        """

        return replace(self, **{name: value for name, value in overrides.items() if value is not None})

    def to_mapping(self) -> dict:
        mapping = {}
        for item in fields(self):
            value = getattr(self, item.name)
            mapping[item.name] = value.value if isinstance(value, Enum) else list(value) if isinstance(value, tuple) else value
        return mapping

    @classmethod
    def from_mapping(cls, mapping: dict) -> 'TrainConfig':
        """
        Builds a config from string values, as read from a config file.

        Args:
            mapping (dict[str, str]): Field name to text value.

        Returns:
            TrainConfig: The parsed config.

        Raises:
            ConfigError: If a key is unknown or a value does not parse.
        """

        types = {item.name: type(item.default) for item in fields(cls)}
        values = {}
        for key, text in mapping.items():
            if key not in types:
                raise ConfigError(f'unknown config key {key!r}')
            text = str(text).strip()
            try:
                if key == 'hidden_dims':
                    values[key] = tuple(int(item) for item in text.replace(',', ' ').split())
                elif types[key] in (int, float):
                    values[key] = types[key](text)
                else:
                    values[key] = text
            except ValueError:
                raise ConfigError(f'config key {key!r} has an invalid value {text!r}') from None
        return cls(**values)

def read_train_config(path: str) -> TrainConfig:
    """
    Reads a 'key = value' training config file.

    Args:
        path (str): The path to the config file.

    Returns:
        TrainConfig: The parsed config.
    """

    return TrainConfig.from_mapping(KeyValueReader().read(path))

@dataclass
class TrainHistory:
    """
    Per-epoch record of a training run.

    Attributes:
        train_loss (list[float]): Mean training pair loss of each completed epoch.
        validation_accuracy (list[float]): Validation pairwise accuracy after each completed epoch.
        best_epoch (int): Zero-based epoch whose parameters were returned.
        stopped_early (bool): True if patience ran out before the last epoch.
    """

    train_loss: list = field(default_factory=list)
    validation_accuracy: list = field(default_factory=list)
    best_epoch: int = 0
    stopped_early: bool = False

    @property
    def epochs_completed(self) -> int:
        return len(self.train_loss)

    def to_mapping(self) -> dict:
        return {
            'train_loss': list(self.train_loss),
            'validation_accuracy': list(self.validation_accuracy),
            'best_epoch': self.best_epoch,
            'stopped_early': self.stopped_early,
            'epochs_completed': self.epochs_completed,
        }
