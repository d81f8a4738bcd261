"""
Name: survival_dataset.py
Description: Right-censored survival records and the dataset that holds them.
Author: Connor Kasarda
Date: 2025-05-03

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator
import math
import numpy as np
from common.errors import InvalidDataset

@dataclass(frozen=True, eq=False)
class SurvivalRecord:
    """
    One individual of a survival study.

    Attributes:
        id (str): Record identifier.
        time (float): Observed follow-up time, strictly positive.
        event (int): 1 if the event was observed, 0 if right-censored.
        features (np.ndarray): Feature vector, read-only.
    """

    id: str
    time: float
    event: int
    features: np.ndarray

    def __post_init__(self) -> None:
        """
        Checks the record invariants and freezes the features.

        Raises:
            InvalidDataset: If time is not positive, event is not 0/1 or features are not finite.
        """

        time = float(self.time)
        if not math.isfinite(time) or time <= 0:
            raise InvalidDataset(f'record {self.id!r}: time must be positive and finite, got {self.time}')
        if self.event not in (0, 1):
            raise InvalidDataset(f'record {self.id!r}: event must be 0 or 1, got {self.event!r}')
        features = np.array(self.features, dtype=float)
        if features.ndim != 1 or not np.all(np.isfinite(features)):
            raise InvalidDataset(f'record {self.id!r}: features must be a finite vector')
        features.flags.writeable = False
        object.__setattr__(self, 'time', time)
        object.__setattr__(self, 'event', int(self.event))
        object.__setattr__(self, 'features', features)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SurvivalRecord):
            return NotImplemented
        return (self.id == other.id and self.time == other.time and self.event == other.event
                and np.array_equal(self.features, other.features))

    def __hash__(self) -> int:
        return hash((self.id, self.time, self.event))

@dataclass(frozen=True, eq=False)
class SurvivalDataset:
    """
    Records of a survival study, one sample per individual.

    Attributes:
        records (tuple[SurvivalRecord, ...]): The records in file order.
        feature_dim (int): Feature dimension d.
        true_risk (dict[str, float] | None): Known risk per record id (synthetic data only).

    Methods:
        ids -> list[str]: Record identifiers.
        censoring_rate -> float: Fraction of censored records.
        times() -> np.ndarray: Observed times.
        events() -> np.ndarray: Event indicators.
        feature_matrix() -> np.ndarray: Features stacked in record order.
        features_of(ref: str) -> np.ndarray: Features of one record.
        subset(ids: Iterable[str]) -> SurvivalDataset: Dataset restricted to some records.
    """

    records: tuple
    feature_dim: int
    true_risk: dict = None

    def __post_init__(self) -> None:
        """
        Checks dimensions, identifier uniqueness and the optional risk sidecar.

        Raises:
            InvalidDataset: If any invariant is violated.
        """

        records = tuple(self.records)
        if int(self.feature_dim) < 1:
            raise InvalidDataset(f'feature dimension must be positive, got {self.feature_dim}')
        ids = [record.id for record in records]
        if len(set(ids)) != len(ids):
            raise InvalidDataset('record identifiers repeat')
        for record in records:
            if record.features.shape[0] != self.feature_dim:
                raise InvalidDataset(
                    f'record {record.id!r}: {record.features.shape[0]} features, expected {self.feature_dim}')
        if self.true_risk is not None:
            risk = {record_id: float(self.true_risk[record_id]) for record_id in ids if record_id in self.true_risk}
            if len(risk) != len(ids):
                raise InvalidDataset('true risk missing for some records')
            object.__setattr__(self, 'true_risk', risk)
        object.__setattr__(self, 'records', records)
        object.__setattr__(self, 'feature_dim', int(self.feature_dim))
        object.__setattr__(self, '_index', {record_id: index for index, record_id in enumerate(ids)})

    @property
    def ids(self) -> list[str]:
        return [record.id for record in self.records]

    @property
    def censoring_rate(self) -> float:
        if not self.records:
            return 0.0
        return 1.0 - float(np.mean(self.events()))

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[SurvivalRecord]:
        return iter(self.records)

    def times(self) -> np.ndarray:
        return np.array([record.time for record in self.records], dtype=float)

    def events(self) -> np.ndarray:
        return np.array([record.event for record in self.records], dtype=int)

    def feature_matrix(self) -> np.ndarray:
        return np.vstack([record.features for record in self.records])

    def features_of(self, ref: str) -> np.ndarray:
        return self.records[self._index[ref]].features

    def risk_vector(self) -> np.ndarray:
        """
        Returns the known true risk in record order.

        Raises:
            InvalidDataset: If the dataset carries no true risk.
        """

        if self.true_risk is None:
            raise InvalidDataset('dataset has no true risk')
        return np.array([self.true_risk[record.id] for record in self.records], dtype=float)

    def subset(self, ids: Iterable[str]) -> 'SurvivalDataset':
        records = tuple(self.records[self._index[record_id]] for record_id in ids)
        risk = None if self.true_risk is None else {record.id: self.true_risk[record.id] for record in records}
        return SurvivalDataset(records, self.feature_dim, risk)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SurvivalDataset):
            return NotImplemented
        return (self.feature_dim == other.feature_dim and self.records == other.records
                and self.true_risk == other.true_risk)

    __hash__ = None
