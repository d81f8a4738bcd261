"""
Name: embedding_model.py
Description: The trained trend extractor: feature normalization, embedding network and linear head.
Author: Connor Kasarda
Date: 2025-05-09

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass
import numpy as np
from common.errors import DimensionMismatch, NonFiniteInput, ShapeMismatch
from embedding.network import Activation, forward
from embedding.param_set import ParamSet, check_layer_dims, init_params

MODEL_FORMAT_VERSION = 1

@dataclass(frozen=True, eq=False)
class EmbeddingModel:
    """
    Trend extractor x -> beta . F((x - norm_mean) / norm_std).

    Attributes:
        layer_dims (tuple[int, ...]): Dimension chain [d, h1, ..., d_e].
        params (ParamSet): Weights, biases and beta.
        activation (Activation): Hidden activation.
        norm_mean (np.ndarray): Training-set feature means, length d.
        norm_std (np.ndarray): Training-set feature standard deviations, length d, all > 0.
        format_version (int): Serialization format version.

    Methods:
        initial(layer_dims, seed, activation) -> EmbeddingModel: Untrained model with identity normalization.
        with_params(params: ParamSet) -> EmbeddingModel: Same model with other parameters.
        normalize(x: np.ndarray) -> np.ndarray: Applies the feature normalization.
        score(x: np.ndarray) -> np.ndarray: Trend score of raw features.
    """

    layer_dims: tuple
    params: ParamSet
    activation: Activation = Activation.TANH
    norm_mean: np.ndarray = None
    norm_std: np.ndarray = None
    format_version: int = MODEL_FORMAT_VERSION

    def __post_init__(self) -> None:
        """
        Checks that the parameters, head and normalization agree with layer_dims.

        Raises:
            ShapeMismatch: If any array disagrees with layer_dims or norm_std has a non-positive entry.
        """

        layer_dims = check_layer_dims(self.layer_dims)
        if self.params.layer_dims != layer_dims:
            raise ShapeMismatch(f'parameters have layers {self.params.layer_dims}, model declares {layer_dims}')
        norm_mean = np.zeros(layer_dims[0]) if self.norm_mean is None else np.array(self.norm_mean, dtype=float)
        norm_std = np.ones(layer_dims[0]) if self.norm_std is None else np.array(self.norm_std, dtype=float)
        if norm_mean.shape != (layer_dims[0],) or norm_std.shape != (layer_dims[0],):
            raise ShapeMismatch(f'normalization vectors must have length {layer_dims[0]}')
        if not np.all(norm_std > 0):
            raise ShapeMismatch('normalization standard deviations must be positive')
        object.__setattr__(self, 'layer_dims', layer_dims)
        object.__setattr__(self, 'activation', Activation(self.activation))
        object.__setattr__(self, 'norm_mean', norm_mean)
        object.__setattr__(self, 'norm_std', norm_std)

    @classmethod
    def initial(cls, layer_dims: list[int], seed: int, activation: Activation = Activation.TANH) -> 'EmbeddingModel':
        return cls(tuple(layer_dims), init_params(layer_dims, seed), activation)

    def with_params(self, params: ParamSet) -> 'EmbeddingModel':
        return EmbeddingModel(self.layer_dims, params, self.activation, self.norm_mean, self.norm_std, self.format_version)

    @property
    def weights(self) -> tuple:
        return self.params.weights

    @property
    def biases(self) -> tuple:
        return self.params.biases

    @property
    def beta(self) -> np.ndarray:
        return self.params.beta

    def normalize(self, x: np.ndarray) -> np.ndarray:
        """
        Applies the training-set z-normalization.

        Args:
            x (np.ndarray): Raw features, shape (d,) or (n, d).

        Returns:
            np.ndarray: Normalized features, same shape.

        Raises:
            DimensionMismatch: If the feature width is not d.
            NonFiniteInput: If a feature is NaN or Inf.
        """

        x = np.asarray(x, dtype=float)
        if x.ndim not in (1, 2) or x.shape[-1] != self.layer_dims[0]:
            raise DimensionMismatch(f'features have shape {x.shape}, model expects width {self.layer_dims[0]}')
        if not np.all(np.isfinite(x)):
            raise NonFiniteInput('features contain NaN or Inf')
        return (x - self.norm_mean) / self.norm_std

    def score(self, x: np.ndarray) -> np.ndarray:
        """
        Returns beta . F(normalize(x)) for one vector (scalar) or for every row of a matrix.
        """

        return forward(self.params, self.normalize(x), self.activation).score
