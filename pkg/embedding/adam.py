"""
Name: adam.py
Description: Adam optimizer with bias correction over ParamSet-shaped parameters.
Author: Connor Kasarda
Date: 2025-05-09

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass
import numpy as np
from common.errors import ConfigError, ShapeMismatch
from embedding.param_set import ParamSet

@dataclass(frozen=True, eq=False)
class AdamState:
    """
    Moments and step counter of the Adam optimizer.

    Attributes:
        m (ParamSet): First moment estimate.
        v (ParamSet): Second moment estimate, entries >= 0.
        k (int): Number of steps taken.
        lr (float): Learning rate. Defaults to 1e-3.
        beta1 (float): First moment decay. Defaults to 0.9.
        beta2 (float): Second moment decay. Defaults to 0.999.
        eps (float): Denominator offset. Defaults to 1e-8.
    """

    m: ParamSet
    v: ParamSet
    k: int = 0
    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    def __post_init__(self) -> None:
        if self.lr <= 0 or not 0 <= self.beta1 < 1 or not 0 <= self.beta2 < 1 or self.eps <= 0 or self.k < 0:
            raise ConfigError(
                f'invalid Adam settings lr={self.lr} beta1={self.beta1} beta2={self.beta2} eps={self.eps} k={self.k}')

    @classmethod
    def initial(cls, params: ParamSet, lr: float = 1e-3, beta1: float = 0.9, beta2: float = 0.999,
                eps: float = 1e-8) -> 'AdamState':
        """
        Returns a fresh state with zero moments shaped like params.
        """

        zeros = params.map(np.zeros_like)
        return cls(zeros, zeros, 0, lr, beta1, beta2, eps)

def adam_step(state: AdamState, params: ParamSet, grads: ParamSet) -> tuple[ParamSet, AdamState]:
    """
    Applies one Adam update:
    m <- b1 m + (1 - b1) g, v <- b2 v + (1 - b2) g^2, theta <- theta - lr m_hat / (sqrt(v_hat) + eps).

    Args:
        state (AdamState): Current optimizer state.
        params (ParamSet): Current parameters.
        grads (ParamSet): Gradients of the loss.

    Returns:
        tuple[ParamSet, AdamState]: Updated parameters and state; the inputs are left untouched.

    Raises:
        ShapeMismatch: If params, grads and moments are not shaped alike.
    """

    shapes = [array.shape for array in params.arrays()]
    for name, other in (('grads', grads), ('m', state.m), ('v', state.v)):
        if [array.shape for array in other.arrays()] != shapes:
            raise ShapeMismatch(f'{name} is not shaped like the parameters')

    k = state.k + 1
    first_correction = 1 - state.beta1 ** k
    second_correction = 1 - state.beta2 ** k
    new_params, new_m, new_v = [], [], []
    for theta, g, m, v in zip(params.arrays(), grads.arrays(), state.m.arrays(), state.v.arrays()):
        m = state.beta1 * m + (1 - state.beta1) * g
        v = state.beta2 * v + (1 - state.beta2) * g * g
        m_hat = m / first_correction
        v_hat = v / second_correction
        new_params.append(theta - state.lr * m_hat / (np.sqrt(v_hat) + state.eps))
        new_m.append(m)
        new_v.append(v)
    new_state = AdamState(ParamSet.from_arrays(new_m), ParamSet.from_arrays(new_v), k,
                          state.lr, state.beta1, state.beta2, state.eps)
    return ParamSet.from_arrays(new_params), new_state
