"""
Name: survival_reader.py
Description: This module contains the SurvivalReader class for reading right-censored survival datasets from CSV files.
Author: Connor Kasarda
Date: 2025-05-04

Notes:
    Header: id,time,event,f0,...,f{d-1}

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import numpy as np
from common.errors import BadEventFlag, EmptyDataset, MalformedLine, MissingHeader, NonPositiveTime
from common.log import get_logger
from dataset.survival_dataset import SurvivalRecord, SurvivalDataset
from parsing.csv_table_reader import CsvTableReader

logger = get_logger(__name__)

class SurvivalReader(CsvTableReader):
    """
    Class for reading survival datasets.
    Inherits from the CsvTableReader class.

    Methods:
        read(path: str) -> SurvivalDataset:
            Reads and validates a survival dataset.
    """

    def read(self, path: str) -> SurvivalDataset:
        """
        Reads and validates a survival dataset.

        Args:
            path (str): The path to the CSV file.

        Returns:
            SurvivalDataset: The validated dataset.

        Raises:
            MissingHeader: If the header is not id,time,event,f0,...
            RaggedRow: If a row has the wrong number of fields.
            NonPositiveTime: If a time is zero or negative.
            BadEventFlag: If an event flag is not 0 or 1.
            NonFiniteValue: If a value is NaN or Inf.
            EmptyDataset: If the file has a header but no rows.
        """

        header, rows = self.read_table(path)
        if header[:3] != ['id', 'time', 'event']:
            raise MissingHeader(path, 1, 'header must start with id,time,event')
        feature_dim = self.feature_columns(path, header, 3)
        if len(header) != 3 + feature_dim:
            raise MissingHeader(path, 1, f'unexpected trailing columns {header[3 + feature_dim:]}')

        records = []
        seen = {}
        for line_number, fields in rows:
            record_id = fields[0]
            if record_id in seen:
                raise MalformedLine(path, line_number, f'id {record_id!r} already used on line {seen[record_id]}')
            seen[record_id] = line_number
            time = self.parse_real(path, line_number, 'time', fields[1])
            if time <= 0:
                raise NonPositiveTime(path, line_number, f'time must be positive, got {fields[1]}')
            if fields[2] not in ('0', '1'):
                raise BadEventFlag(path, line_number, f'event must be 0 or 1, got {fields[2]!r}')
            features = np.array([
                self.parse_real(path, line_number, header[3 + column], fields[3 + column])
                for column in range(feature_dim)
            ])
            records.append(SurvivalRecord(record_id, time, int(fields[2]), features))
        if not records:
            raise EmptyDataset(f'{path}: no rows after the header')
        logger.debug('read %d survival records from %s', len(records), path)
        return SurvivalDataset(tuple(records), feature_dim)

def read_survival_dataset(path: str) -> SurvivalDataset:
    """
    Reads a survival dataset CSV file.

    Args:
        path (str): The path to the CSV file.

    Returns:
        SurvivalDataset: The validated dataset.
    """

    return SurvivalReader().read(path)
