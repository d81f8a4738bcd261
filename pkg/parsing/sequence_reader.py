"""
Name: sequence_reader.py
Description: This module contains the SequenceReader class for reading sequence datasets from CSV files.
Author: Connor Kasarda
Date: 2025-05-04

Notes:
    Header: seq_id,t,f0,...,f{d-1}[,clean_t][,tau]
    Rows are grouped by seq_id in order of first appearance and sorted by t inside each sequence.
    tau is the trend truth of the sample on the same row; it is stored in clean_t order on the dataset.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import numpy as np
from common.errors import DuplicateTimeIndex, EmptyDataset, MissingHeader
from common.log import get_logger
from dataset.sequence_dataset import Sample, SequenceDataset
from parsing.csv_table_reader import CsvTableReader

logger = get_logger(__name__)

class SequenceReader(CsvTableReader):
    """
    Class for reading sequence datasets.
    Inherits from the CsvTableReader class.

    Methods:
        read(path: str) -> SequenceDataset:
            Reads and validates a sequence dataset.
    """

    def read(self, path: str) -> SequenceDataset:
        """
        Reads and validates a sequence dataset.

        Args:
            path (str): The path to the CSV file.

        Returns:
            SequenceDataset: The validated dataset.

        Raises:
            MissingHeader: If the header is not seq_id,t,f0,... with optional clean_t and tau.
            RaggedRow: If a row has the wrong number of fields.
            DuplicateTimeIndex: If a (seq_id, t) pair appears twice.
            NonFiniteValue: If a value is NaN or Inf.
            EmptyDataset: If the file has a header but no rows.
            InvalidDataset: If the result violates a dataset invariant.
        """

        header, rows = self.read_table(path)
        if header[:2] != ['seq_id', 't']:
            raise MissingHeader(path, 1, 'header must start with seq_id,t')
        feature_dim = self.feature_columns(path, header, 2)
        extra = header[2 + feature_dim:]
        if extra not in ([], ['tau'], ['clean_t'], ['clean_t', 'tau']):
            raise MissingHeader(path, 1, f'unexpected trailing columns {extra}')
        has_clean = 'clean_t' in extra
        has_tau = 'tau' in extra

        rows_by_sequence = {}
        seen = {}
        for line_number, fields in rows:
            seq_id = fields[0]
            t = self.parse_integer(path, line_number, 't', fields[1])
            if (seq_id, t) in seen:
                raise DuplicateTimeIndex(
                    path, line_number, f'sequence {seq_id!r} already has t={t} (line {seen[(seq_id, t)]})')
            seen[(seq_id, t)] = line_number
            features = np.array([
                self.parse_real(path, line_number, header[2 + column], fields[2 + column])
                for column in range(feature_dim)
            ])
            position = 2 + feature_dim
            clean_t = t
            if has_clean:
                clean_t = self.parse_integer(path, line_number, 'clean_t', fields[position])
                position += 1
            tau = self.parse_real(path, line_number, 'tau', fields[position]) if has_tau else None
            rows_by_sequence.setdefault(seq_id, []).append((t, clean_t, features, tau))

        if not rows_by_sequence:
            raise EmptyDataset(f'{path}: no rows after the header')
        sequences = {}
        truth = {} if has_tau else None
        for seq_id, entries in rows_by_sequence.items():
            entries.sort(key=lambda entry: entry[0])
            sequences[seq_id] = [Sample(seq_id, t, features, clean_t) for t, clean_t, features, _ in entries]
            if has_tau:
                truth[seq_id] = [tau for _, _, _, tau in sorted(entries, key=lambda entry: entry[1])]
        logger.debug('read %d sequences from %s', len(sequences), path)
        return SequenceDataset(sequences, feature_dim, truth)

def read_sequence_dataset(path: str) -> SequenceDataset:
    """
    Reads a sequence dataset CSV file.

    Args:
        path (str): The path to the CSV file.

    Returns:
        SequenceDataset: The validated dataset.
    """

    return SequenceReader().read(path)
