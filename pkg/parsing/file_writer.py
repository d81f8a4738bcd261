"""
Name: file_writer.py
Description: Writers for every trendlab text format: sequence CSV, survival CSV, sidecar metadata and 'key = value' files.
Author: Connor Kasarda
Date: 2025-05-05

Notes:
    Reals are written with 17 significant digits, enough to read back the exact same double.
    Files are UTF-8 with LF line endings.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from typing import Iterable
import numpy as np
from common.errors import UnwritableFile
from common.log import get_logger
from dataset.sequence_dataset import SequenceDataset
from dataset.survival_dataset import SurvivalDataset

logger = get_logger(__name__)

def format_real(value: float) -> str:
    """
    Formats a real so that float(format_real(x)) == x.

    Args:
        value (float): The value to format.

    Returns:
        str: Decimal literal with 17 significant digits.
    """

    return f'{float(value):.17g}'

def write_lines(path: str, lines: Iterable[str]) -> None:
    """
    Writes lines to a UTF-8 file, each followed by LF.

    Raises:
        UnwritableFile: If the file cannot be created or written.
    """

    try:
        with open(path, 'w', encoding='utf-8', newline='\n') as file:
            for line in lines:
                file.write(line)
                file.write('\n')
    except OSError as error:
        raise UnwritableFile(f'{path}: cannot write ({error.strerror or error})') from None

def sequence_lines(dataset: SequenceDataset) -> Iterable[str]:
    """
    Yields the CSV lines of a sequence dataset, header first.

    Args:
        dataset (SequenceDataset): The dataset to format.

    Returns:
        Iterable[str]: Lines without line endings.
    """

    has_clean = any(sample.clean_t != sample.t for sample in dataset)
    has_tau = dataset.trend_truth is not None
    header = ['seq_id', 't'] + [f'f{column}' for column in range(dataset.feature_dim)]
    header += ['clean_t'] if has_clean else []
    header += ['tau'] if has_tau else []
    yield ','.join(header)
    for seq_id, samples in dataset.sequences.items():
        truth = dataset.clean_trend(seq_id) if has_tau else None
        for position, sample in enumerate(samples):
            fields = [seq_id, str(sample.t)] + [format_real(value) for value in sample.features]
            fields += [str(sample.clean_t)] if has_clean else []
            fields += [format_real(truth[position])] if has_tau else []
            yield ','.join(fields)

def write_sequence_dataset(dataset: SequenceDataset, path: str) -> None:
    """
    Writes a sequence dataset as CSV: seq_id,t,f0..f{d-1}[,clean_t][,tau].

    Args:
        dataset (SequenceDataset): The dataset to write.
        path (str): Destination file.
    """

    write_lines(path, sequence_lines(dataset))
    logger.debug('wrote %d sequences to %s', len(dataset), path)

def write_survival_dataset(dataset: SurvivalDataset, path: str) -> None:
    """
    Writes a survival dataset as CSV: id,time,event,f0..f{d-1}.

    Args:
        dataset (SurvivalDataset): The dataset to write.
        path (str): Destination file.
    """

    header = ['id', 'time', 'event'] + [f'f{column}' for column in range(dataset.feature_dim)]
    lines = [','.join(header)]
    for record in dataset:
        fields = [record.id, format_real(record.time), str(record.event)]
        lines.append(','.join(fields + [format_real(value) for value in record.features]))
    write_lines(path, lines)
    logger.debug('wrote %d survival records to %s', len(dataset), path)

def write_metadata(path: str, key_name: str, metadata: dict) -> None:
    """
    Writes a sidecar metadata file.

    Args:
        path (str): Destination file, conventionally '<name>.meta.csv'.
        key_name (str): Name of the identifier column (e.g. 'seq_id').
        metadata (dict[str, dict[str, float]]): Map from identifier to {column: value}; columns must agree.
    """

    columns = list(next(iter(metadata.values()))) if metadata else []
    lines = [','.join([key_name] + columns)]
    for key, values in metadata.items():
        lines.append(','.join([key] + [format_real(values[column]) for column in columns]))
    write_lines(path, lines)

def format_value(value: object) -> str:
    """
    Formats a config or model value: reals to 17 digits, sequences space separated.
    """

    if isinstance(value, np.ndarray):
        return ' '.join(format_value(item) for item in value.ravel())
    if isinstance(value, (list, tuple)):
        return ' '.join(format_value(item) for item in value)
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_real(value)
    return str(value)

def write_key_values(path: str, entries: dict) -> None:
    """
    Writes a 'key = value' file.

    Args:
        path (str): Destination file.
        entries (dict[str, object]): Values in the order they should appear.
    """

    write_lines(path, [f'{key} = {format_value(value)}' for key, value in entries.items()])
