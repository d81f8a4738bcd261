"""
Name: concordance.py
Description: Harrell's concordance index of a risk score against right-censored survival times.
Author: Connor Kasarda
Date: 2025-05-21

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import numpy as np
from common.errors import LengthMismatch, NoComparablePairs, InvalidDataset

def concordance_index(risk: object, time: object, event: object) -> float:
    """
    Fraction of comparable pairs ordered correctly by risk.

    A pair is comparable when the times differ and the shorter one ends in an observed event. It is concordant when
    the record with the shorter time has the strictly higher risk; tied risks earn half credit.

    Args:
        risk (Sequence[float]): Risk of each record; higher means earlier failure.
        time (Sequence[float]): Observed times, all positive.
        event (Sequence[int]): 1 for an observed event, 0 for censoring.

    Returns:
        float: The concordance index in [0, 1].

    Raises:
        LengthMismatch: If the three inputs differ in length.
        InvalidDataset: If a time is not positive.
        NoComparablePairs: If no pair is comparable.
    """

    risk = np.asarray(risk, dtype=float).ravel()
    time = np.asarray(time, dtype=float).ravel()
    event = np.asarray(event).ravel().astype(int)
    if not risk.shape == time.shape == event.shape:
        raise LengthMismatch(f'risk, time and event have lengths {risk.shape[0]}, {time.shape[0]}, {event.shape[0]}')
    if np.any(time <= 0):
        raise InvalidDataset('survival times must be positive')

    comparable, credit = 0, 0.0
    for i in np.flatnonzero(event == 1):
        # records that outlived record i, whatever their event flag
        later = time > time[i]
        comparable += int(later.sum())
        credit += float((risk[i] > risk[later]).sum()) + 0.5 * float((risk[i] == risk[later]).sum())
    if comparable == 0:
        raise NoComparablePairs('no comparable pair: every shorter time is censored or all times are tied')
    return credit / comparable
