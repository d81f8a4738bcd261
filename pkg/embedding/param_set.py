"""
Name: param_set.py
Description: Parameter container of the trend embedding network and its Glorot-style initialization.
Author: Connor Kasarda
Date: 2025-05-07

Notes:
    Layer k maps fan_in = layer_dims[k] to fan_out = layer_dims[k + 1]; W_k has shape (fan_out, fan_in).
    beta is the linear head that turns the last embedding into a scalar score.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass
from typing import Callable
import numpy as np
from common.errors import EmptyLayerList, ZeroWidthLayer, ShapeMismatch

SEED_MASK = (1 << 64) - 1

def make_rng(seed: int, *spawn_key: int) -> np.random.Generator:
    """
    Returns a generator fully determined by a 64-bit seed and an optional counter key.

    Args:
        seed (int): Any integer; reduced modulo 2**64.
        spawn_key (int): Counters that derive independent child streams (e.g. a sequence index).

    Returns:
        np.random.Generator: The seeded generator.
    """

    return np.random.default_rng(np.random.SeedSequence(int(seed) & SEED_MASK, spawn_key=tuple(spawn_key)))

def check_layer_dims(layer_dims: list[int]) -> tuple[int, ...]:
    """
    Validates a layer dimension chain [d, h1, ..., d_e].

    Raises:
        EmptyLayerList: If the chain defines no layer.
        ZeroWidthLayer: If a width is not positive.
    """

    layer_dims = tuple(int(width) for width in layer_dims)
    if len(layer_dims) < 2:
        raise EmptyLayerList(f'layer_dims needs an input width and at least one layer, got {list(layer_dims)}')
    if any(width < 1 for width in layer_dims):
        raise ZeroWidthLayer(f'every layer width must be positive, got {list(layer_dims)}')
    return layer_dims

@dataclass(frozen=True, eq=False)
class ParamSet:
    """
    Weights, biases and linear head of the network. Also used for gradients and Adam moments.

    Attributes:
        weights (tuple[np.ndarray, ...]): W_k of shape (fan_out, fan_in).
        biases (tuple[np.ndarray, ...]): b_k of shape (fan_out,).
        beta (np.ndarray): Linear head of shape (d_e,).

    Methods:
        layer_dims -> tuple[int, ...]: The dimension chain implied by the weights.
        arrays() -> list[np.ndarray]: All arrays in the order W1, b1, ..., WL, bL, beta.
        from_arrays(arrays: list[np.ndarray]) -> ParamSet: Inverse of arrays().
        map(function: Callable) -> ParamSet: Applies a function to every array.
        plus(other: ParamSet) -> ParamSet: Elementwise sum with another ParamSet.
        astype(dtype) -> ParamSet: Copy with another floating type.
        n_params -> int: Total number of scalars.
    """

    weights: tuple
    biases: tuple
    beta: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, 'weights', tuple(self.weights))
        object.__setattr__(self, 'biases', tuple(self.biases))
        if len(self.weights) != len(self.biases) or not self.weights:
            raise ShapeMismatch('weights and biases must describe the same non-empty list of layers')
        for k, (weight, bias) in enumerate(zip(self.weights, self.biases)):
            if weight.ndim != 2 or bias.shape != (weight.shape[0],):
                raise ShapeMismatch(f'layer {k + 1}: weight {weight.shape} and bias {bias.shape} do not match')
            if k > 0 and weight.shape[1] != self.weights[k - 1].shape[0]:
                raise ShapeMismatch(f'layer {k + 1}: fan_in {weight.shape[1]} != previous width {self.weights[k - 1].shape[0]}')
        if self.beta.shape != (self.weights[-1].shape[0],):
            raise ShapeMismatch(f'beta has shape {self.beta.shape}, expected ({self.weights[-1].shape[0]},)')

    @property
    def layer_dims(self) -> tuple[int, ...]:
        return (self.weights[0].shape[1],) + tuple(weight.shape[0] for weight in self.weights)

    @property
    def n_params(self) -> int:
        return sum(array.size for array in self.arrays())

    def arrays(self) -> list[np.ndarray]:
        arrays = []
        for weight, bias in zip(self.weights, self.biases):
            arrays.extend([weight, bias])
        return arrays + [self.beta]

    @classmethod
    def from_arrays(cls, arrays: list[np.ndarray]) -> 'ParamSet':
        return cls(tuple(arrays[0:-1:2]), tuple(arrays[1:-1:2]), arrays[-1])

    def map(self, function: Callable[[np.ndarray], np.ndarray]) -> 'ParamSet':
        return ParamSet.from_arrays([function(array) for array in self.arrays()])

    def plus(self, other: 'ParamSet') -> 'ParamSet':
        return ParamSet.from_arrays([left + right for left, right in zip(self.arrays(), other.arrays())])

    def astype(self, dtype: type) -> 'ParamSet':
        return self.map(lambda array: array.astype(dtype))

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(array)) for array in self.arrays())

def init_params(layer_dims: list[int], seed: int) -> ParamSet:
    """
    Draws network parameters: W ~ U[-a, a] with a = sqrt(6 / (fan_in + fan_out)), zero biases,
    beta ~ U[-a, a] with a = sqrt(6 / (d_e + 1)).

    Args:
        layer_dims (list[int]): Dimension chain [d, h1, ..., d_e].
        seed (int): Any 64-bit integer; the same seed always gives the same parameters.

    Returns:
        ParamSet: The initialized parameters.

    Raises:
        EmptyLayerList: If layer_dims defines no layer.
        ZeroWidthLayer: If a width is not positive.
    """

    layer_dims = check_layer_dims(layer_dims)
    rng = make_rng(seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(layer_dims[:-1], layer_dims[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    bound = np.sqrt(6.0 / (layer_dims[-1] + 1))
    beta = rng.uniform(-bound, bound, size=layer_dims[-1])
    return ParamSet(tuple(weights), tuple(biases), beta)
