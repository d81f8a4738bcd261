"""
Name: metadata_reader.py
Description: This module contains the MetadataReader class for '<name>.meta.csv' sidecar files.
Author: Connor Kasarda
Date: 2025-05-12

Notes:
    A sidecar holds one row per sequence or record: the identifier first, then named real columns
    (e.g. seq_id,alpha for ball-springs data or id,true_risk for survival data).

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from pathlib import Path
from common.errors import MalformedLine
from parsing.csv_table_reader import CsvTableReader

def metadata_path(data_path: str) -> Path:
    """
    Returns the sidecar path of a data file: 'runs/d.csv' -> 'runs/d.meta.csv'.
    """

    path = Path(data_path)
    return path.with_name(f'{path.stem}.meta.csv')

class MetadataReader(CsvTableReader):
    """
    Class for reading sidecar metadata files.
    Inherits from the CsvTableReader class.

    Methods:
        read(path: str) -> dict[str, dict[str, float]]:
            Returns the columns of every identifier.
    """

    def read(self, path: str) -> dict[str, dict[str, float]]:
        """
        Returns the sidecar values of every identifier.

        Args:
            path (str): The path to the sidecar file.

        Returns:
            dict[str, dict[str, float]]: Map from identifier to {column: value}.
        """

        header, rows = self.read_table(path)
        metadata = {}
        for line_number, fields in rows:
            if fields[0] in metadata:
                raise MalformedLine(path, line_number, f'identifier {fields[0]!r} repeats')
            metadata[fields[0]] = {
                column: self.parse_real(path, line_number, column, text)
                for column, text in zip(header[1:], fields[1:])
            }
        return metadata

def read_metadata(path: str) -> dict[str, dict[str, float]]:
    return MetadataReader().read(path)
