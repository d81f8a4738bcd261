"""
Name: mann_kendall.py
Description: Mann-Kendall test for a monotone trend in a univariate series.
Author: Connor Kasarda
Date: 2025-05-20

Notes:
    S = sum over i < j of sign(x_j - x_i), so a positive S means an increasing series.
    Var(S) = N(N - 1)(2N + 5) / 18 without tie correction; z carries a continuity correction.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass
import numpy as np
from scipy.stats import norm
from common.errors import ConfigError, NonFiniteValue, SeriesTooShort

INCREASING = 'increasing'
DECREASING = 'decreasing'
NO_TREND = 'no trend'

@dataclass(frozen=True)
class MKResult:
    """
    Outcome of a Mann-Kendall test.

    Attributes:
        S (int): Sum of pairwise signs, |S| <= N(N - 1)/2.
        normalized (float): 2S / (N(N - 1)), in [-1, 1].
        z (float): Continuity-corrected z-score, 0 when S is 0.
        p_two_sided (float): Two-sided normal tail probability of z.
        n (int): Series length.
        alpha (float): Significance level of the decision.
        significant (bool): True if |z| exceeds the two-sided critical value at alpha.
        trend (str): 'increasing', 'decreasing' or 'no trend'.
    """

    S: int
    normalized: float
    z: float
    p_two_sided: float
    n: int
    alpha: float = 0.05
    significant: bool = False
    trend: str = NO_TREND

def mann_kendall(series: object, alpha: float = 0.05) -> MKResult:
    """
    Runs the Mann-Kendall test.

    Args:
        series (Sequence[float]): The series in time order.
        alpha (float): Significance level of the trend decision. Defaults to 0.05.

    Returns:
        MKResult: The statistic, its normalization, z, p-value and the trend decision.

    Raises:
        SeriesTooShort: If the series has fewer than 3 values.
        NonFiniteValue: If a value is NaN or Inf.
        ConfigError: If alpha is not in (0, 1).
    """

    if not 0 < alpha < 1:
        raise ConfigError(f'alpha must lie in (0, 1), got {alpha}')
    values = np.asarray(series, dtype=float).ravel()
    n = values.shape[0]
    if n < 3:
        raise SeriesTooShort(f'Mann-Kendall needs at least 3 values, got {n}')
    if not np.all(np.isfinite(values)):
        position = int(np.flatnonzero(~np.isfinite(values))[0])
        raise NonFiniteValue('<series>', position + 1, 'value is NaN or Inf')

    s = 0
    for i in range(n - 1):
        s += int(np.sign(values[i + 1:] - values[i]).sum())
    variance = n * (n - 1) * (2 * n + 5) / 18.0
    z = 0.0 if s == 0 else (s - np.sign(s)) / np.sqrt(variance)
    p_two_sided = float(min(1.0, 2.0 * norm.sf(abs(z))))
    significant = bool(abs(z) > norm.ppf(1.0 - alpha / 2.0))
    trend = NO_TREND if not significant else INCREASING if z > 0 else DECREASING
    return MKResult(s, 2.0 * s / (n * (n - 1)), float(z), p_two_sided, n, alpha, significant, trend)
