"""
Name: survival_generator.py
Description: Synthetic right-censored survival data with a known linear risk.
Author: Connor Kasarda
Date: 2025-05-27

Notes:
    Features are standard normal and the true risk is r = w . x with |w| = risk_scale. Event times are exponential
    with rate exp(r); censoring times are exponential with one rate lambda_c, solved so that the expected censored
    share mean(lambda_c / (lambda_c + exp(r))) equals censor_rate.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass
import numpy as np
from scipy.optimize import brentq
from common.errors import ConfigError
from common.log import get_logger
from dataset.survival_dataset import SurvivalDataset, SurvivalRecord
from embedding.param_set import make_rng

logger = get_logger(__name__)

@dataclass(frozen=True)
class SurvivalConfig:
    """
    Parameters of the survival generator.

    Attributes:
        n (int): Number of records.
        feature_dim (int): Feature width.
        censor_rate (float): Expected censored share, in [0, 1).
        risk_scale (float): Norm of the true risk weights.
        seed (int): Seed.
    """

    n: int = 2000
    feature_dim: int = 10
    censor_rate: float = 0.3
    risk_scale: float = 2.0
    seed: int = 0

    def __post_init__(self) -> None:
        checks = (
            (self.n >= 2, f'n must be >= 2, got {self.n}'),
            (self.feature_dim >= 1, f'feature_dim must be >= 1, got {self.feature_dim}'),
            (0 <= self.censor_rate < 1, f'censor_rate must lie in [0, 1), got {self.censor_rate}'),
            (self.risk_scale >= 0, f'risk_scale must be >= 0, got {self.risk_scale}'),
        )
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)

def censoring_rate_for(hazards: np.ndarray, censor_rate: float) -> float:
    """
    Solves mean(lambda / (lambda + hazard)) = censor_rate for the censoring rate lambda.

    Args:
        hazards (np.ndarray): Event rate of every record.
        censor_rate (float): Target censored share, in (0, 1).

    Returns:
        float: The censoring rate.
    """

    def excess(rate: float) -> float:
        return float(np.mean(rate / (rate + hazards))) - censor_rate

    high = float(np.max(hazards))
    while excess(high) < 0:
        high *= 2.0
    return brentq(excess, 0.0, high, xtol=1e-12)

def generate_survival(config: SurvivalConfig) -> SurvivalDataset:
    """
    Generates censored survival records and their true risks.

    Args:
        config (SurvivalConfig): Generator parameters.

    Returns:
        SurvivalDataset: Records 'r00000', ... with true_risk set.
    """

    rng = make_rng(config.seed)
    features = rng.standard_normal((config.n, config.feature_dim))
    direction = rng.standard_normal(config.feature_dim)
    weights = direction / np.linalg.norm(direction) * config.risk_scale
    risk = features @ weights
    hazards = np.exp(risk)
    event_times = rng.exponential(1.0 / hazards)
    if config.censor_rate > 0:
        censor_times = rng.exponential(1.0 / censoring_rate_for(hazards, config.censor_rate), config.n)
    else:
        censor_times = np.full(config.n, np.inf)
    times = np.minimum(event_times, censor_times)
    events = (event_times <= censor_times).astype(int)

    ids = [f'r{k:05d}' for k in range(config.n)]
    records = tuple(SurvivalRecord(record_id, float(time), int(event), row)
                    for record_id, time, event, row in zip(ids, times, events, features))
    dataset = SurvivalDataset(records, config.feature_dim, dict(zip(ids, risk.tolist())))
    logger.info('data_gen kind=survival n=%d censored=%.3f target=%.3f seed=%d', config.n, dataset.censoring_rate,
                config.censor_rate, config.seed)
    return dataset
