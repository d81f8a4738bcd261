"""
Name: network.py
Description: Dense embedding network: forward pass, exact analytic backward pass and a finite-difference gradient check.
Author: Connor Kasarda
Date: 2025-05-08

Notes:
    Hidden layers are affine + activation, the last layer is affine only. The score is beta . F(x).
    forward and backward accept one vector or a batch of row vectors; a batch backward sums the per-row gradients,
    each row weighted by its own upstream value.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass
from enum import Enum
import numpy as np
from common.errors import DimensionMismatch, CacheMismatch
from embedding.param_set import ParamSet, init_params, make_rng

class Activation(str, Enum):
    """
    Hidden layer activation.
    """

    TANH = 'tanh'
    RELU = 'relu'

    def apply(self, pre_activation: np.ndarray) -> np.ndarray:
        if self is Activation.TANH:
            return np.tanh(pre_activation)
        return np.maximum(pre_activation, 0)

    def derivative(self, pre_activation: np.ndarray, post_activation: np.ndarray) -> np.ndarray:
        if self is Activation.TANH:
            return 1 - post_activation * post_activation
        return (pre_activation > 0).astype(pre_activation.dtype)

@dataclass(frozen=True, eq=False)
class ForwardCache:
    """
    Everything backward needs from a forward pass.

    Attributes:
        inputs (tuple[np.ndarray, ...]): Input of each layer, batch-shaped (n, fan_in).
        pre_activations (tuple[np.ndarray, ...]): Affine output of each layer, batch-shaped (n, fan_out).
        embedding (np.ndarray): Network output, batch-shaped (n, d_e).
        activation (Activation): Hidden activation used.
        layer_dims (tuple[int, ...]): Dimension chain of the parameters used.
        single (bool): Whether forward was called with one vector.
    """

    inputs: tuple
    pre_activations: tuple
    embedding: np.ndarray
    activation: Activation
    layer_dims: tuple
    single: bool

@dataclass(frozen=True, eq=False)
class ForwardResult:
    """
    Output of a forward pass.

    Attributes:
        embedding (np.ndarray): F(x), shape (d_e,) or (n, d_e).
        score (np.ndarray | float): beta . F(x), scalar or shape (n,).
        cache (ForwardCache): Intermediate values for backward.
    """

    embedding: np.ndarray
    score: object
    cache: ForwardCache

def forward(params: ParamSet, x: np.ndarray, activation: Activation = Activation.TANH) -> ForwardResult:
    """
    Runs the network on one normalized feature vector or a batch of them.

    Args:
        params (ParamSet): Network parameters.
        x (np.ndarray): Shape (d,) or (n, d).
        activation (Activation): Hidden activation. Defaults to tanh.

    Returns:
        ForwardResult: Embedding, score and cache.

    Raises:
        DimensionMismatch: If x does not have the network's input width.
    """

    activation = Activation(activation)
    x = np.asarray(x)
    single = x.ndim == 1
    batch = x[np.newaxis, :] if single else x
    if batch.ndim != 2 or batch.shape[1] != params.layer_dims[0]:
        raise DimensionMismatch(f'input has shape {x.shape}, network expects width {params.layer_dims[0]}')

    inputs, pre_activations = [], []
    hidden = batch
    last = len(params.weights) - 1
    for k, (weight, bias) in enumerate(zip(params.weights, params.biases)):
        inputs.append(hidden)
        pre_activation = hidden @ weight.T + bias
        pre_activations.append(pre_activation)
        hidden = pre_activation if k == last else activation.apply(pre_activation)
    score = hidden @ params.beta

    cache = ForwardCache(tuple(inputs), tuple(pre_activations), hidden, activation, params.layer_dims, single)
    if single:
        return ForwardResult(hidden[0], score[0], cache)
    return ForwardResult(hidden, score, cache)

def backward(params: ParamSet, cache: ForwardCache, upstream: object) -> ParamSet:
    """
    Returns exact gradients of upstream * score with respect to every parameter.

    Args:
        params (ParamSet): The parameters forward was run with.
        cache (ForwardCache): The cache of that forward pass.
        upstream (float | np.ndarray): d loss / d score, one value or one value per batch row.

    Returns:
        ParamSet: Gradients shaped like params.

    Raises:
        CacheMismatch: If the cache was produced with differently shaped parameters.
        DimensionMismatch: If upstream does not match the batch size.
    """

    if cache.layer_dims != params.layer_dims:
        raise CacheMismatch(f'cache built for layers {cache.layer_dims}, parameters have {params.layer_dims}')
    n_rows = cache.embedding.shape[0]
    upstream = np.asarray(upstream, dtype=cache.embedding.dtype)
    if upstream.ndim > 1 or (upstream.ndim == 1 and upstream.shape[0] != n_rows):
        raise DimensionMismatch(f'upstream has shape {upstream.shape} for a batch of {n_rows}')
    upstream = np.broadcast_to(upstream, (n_rows,))

    grad_beta = upstream @ cache.embedding
    delta = upstream[:, np.newaxis] * params.beta[np.newaxis, :]
    grad_weights = [None] * len(params.weights)
    grad_biases = [None] * len(params.weights)
    for k in reversed(range(len(params.weights))):
        grad_weights[k] = delta.T @ cache.inputs[k]
        grad_biases[k] = delta.sum(axis=0)
        if k > 0:
            # inputs[k] is the activation of pre_activations[k - 1]
            delta = (delta @ params.weights[k]) * cache.activation.derivative(cache.pre_activations[k - 1], cache.inputs[k])
    return ParamSet(tuple(grad_weights), tuple(grad_biases), grad_beta)

def finite_difference(function, params: ParamSet, step: float) -> ParamSet:
    """
    Numeric gradient of a scalar function of the parameters, using the fourth-order central stencil
    (-f(p + 2h) + 8 f(p + h) - 8 f(p - h) + f(p - 2h)) / 12h in extended precision.

    Args:
        function (Callable[[ParamSet], float]): Scalar function to differentiate.
        params (ParamSet): Evaluation point.
        step (float): Step h.

    Returns:
        ParamSet: Numeric gradient, in float64.
    """

    wide = params.astype(np.longdouble)
    arrays = wide.arrays()
    step = np.longdouble(step)
    gradients = []
    for array in arrays:
        gradient = np.zeros(array.shape, dtype=np.longdouble)
        for index in np.ndindex(array.shape):
            original = array[index]
            values = []
            for offset in (2, 1, -1, -2):
                array[index] = original + offset * step
                values.append(function(wide))
            array[index] = original
            gradient[index] = (-values[0] + 8 * values[1] - 8 * values[2] + values[3]) / (12 * step)
        gradients.append(gradient.astype(float))
    return ParamSet.from_arrays(gradients)

def relative_error(analytic: ParamSet, numeric: ParamSet) -> float:
    """
    Returns max |analytic - numeric| / max(1e-8, |analytic| + |numeric|) over all parameters.
    """

    worst = 0.0
    for exact, approximate in zip(analytic.arrays(), numeric.arrays()):
        denominator = np.maximum(1e-8, np.abs(exact) + np.abs(approximate))
        worst = max(worst, float(np.max(np.abs(exact - approximate) / denominator)))
    return worst

def grad_check(layer_dims: list[int], seed: int, activation: Activation = Activation.TANH, step: float = None) -> float:
    """
    Compares backward against finite differences of the score at a random point.

    Args:
        layer_dims (list[int]): Dimension chain; keep it small (up to about 10^4 parameters).
        seed (int): Seed for the parameters and the input point.
        activation (Activation): Hidden activation. Defaults to tanh.
        step (float, optional): Finite-difference step. Defaults to 1e-4 for tanh and 1e-6 for relu.

    Returns:
        float: The maximum relative error over all parameters.
    """

    activation = Activation(activation)
    if step is None:
        step = 1e-4 if activation is Activation.TANH else 1e-6
    params = init_params(layer_dims, seed)
    rng = make_rng(seed, 1)
    x = rng.standard_normal(params.layer_dims[0])
    if activation is Activation.RELU:
        # Stay away from the kinks so the numeric derivative is defined
        for _ in range(100):
            pre_activations = forward(params, x, activation).cache.pre_activations[:-1]
            if all(np.min(np.abs(z)) >= 1e-3 for z in pre_activations):
                break
            x = rng.standard_normal(params.layer_dims[0])

    analytic = backward(params, forward(params, x, activation).cache, 1.0)
    wide_x = x.astype(np.longdouble)
    numeric = finite_difference(lambda wide: forward(wide, wide_x, activation).score, params, step)
    return relative_error(analytic, numeric)
