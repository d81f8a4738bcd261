"""
Name: csv_table_reader.py
Description: This module contains the CsvTableReader class, the shared row-splitting logic behind every trendlab CSV format.
Author: Connor Kasarda
Date: 2025-04-17

Notes:
    Fields are separated by commas and never quoted, decimals use '.', and lines end with LF.
    Empty lines are skipped. Every row must have exactly as many fields as the header.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import math
from typing import Iterator
from common.errors import MissingHeader, RaggedRow, NonFiniteValue, MalformedLine
from parsing.file_reader import FileReader

class CsvTableReader(FileReader):
    """
    Class for reading comma separated tables with a header line.
    Inherits from the FileReader class.

    Methods:
        read_table(path: str) -> tuple[list[str], Iterator[tuple[int, list[str]]]]:
            Returns the header and an iterator of (line_number, fields) rows.
        parse_real(path: str, line_number: int, column: str, text: str) -> float:
            Parses a finite real value or raises a line error.
        parse_integer(path: str, line_number: int, column: str, text: str) -> int:
            Parses an integer value or raises a line error.
        feature_columns(path: str, header: list[str], start: int) -> int:
            Counts the f0..f{d-1} columns starting at a given header position.
    """

    def read_table(self, path: str) -> tuple[list[str], Iterator[tuple[int, list[str]]]]:
        """
        Returns the header and an iterator over the data rows.

        Args:
            path (str): The path to the CSV file.

        Returns:
            tuple[list[str], Iterator[tuple[int, list[str]]]]: Header fields and numbered rows.

        Raises:
            MissingHeader: If the file is empty.
            RaggedRow: If a row has a different number of fields than the header.
        """

        lines = self.read_lines(path)
        header = None
        for line_number, line in lines:
            header = [field.strip() for field in line.split(',')]
            break
        if header is None or header == ['']:
            lines.close()
            raise MissingHeader(path, 1, 'file has no header line')
        return header, self._rows(path, header, lines)

    @staticmethod
    def _rows(path: str, header: list[str], lines: Iterator[tuple[int, str]]) -> Iterator[tuple[int, list[str]]]:
        for line_number, line in lines:
            if not line.strip():
                continue
            fields = [field.strip() for field in line.split(',')]
            if len(fields) != len(header):
                raise RaggedRow(path, line_number, f'{len(fields)} fields, header has {len(header)}')
            yield line_number, fields

    @staticmethod
    def parse_real(path: str, line_number: int, column: str, text: str) -> float:
        try:
            value = float(text)
        except ValueError:
            raise MalformedLine(path, line_number, f'column {column}: {text!r} is not a number') from None
        if not math.isfinite(value):
            raise NonFiniteValue(path, line_number, f'column {column}: {text!r} is not finite')
        return value

    @staticmethod
    def parse_integer(path: str, line_number: int, column: str, text: str) -> int:
        try:
            return int(text)
        except ValueError:
            raise MalformedLine(path, line_number, f'column {column}: {text!r} is not an integer') from None

    @staticmethod
    def feature_columns(path: str, header: list[str], start: int) -> int:
        """
        Counts the consecutive f0, f1, ... columns that start at a header position.

        Args:
            path (str): The path to the CSV file, for error messages.
            header (list[str]): The header fields.
            start (int): Position of the f0 column.

        Returns:
            int: The feature dimension d.

        Raises:
            MissingHeader: If there is no f0 column.
        """

        feature_dim = 0
        while start + feature_dim < len(header) and header[start + feature_dim] == f'f{feature_dim}':
            feature_dim += 1
        if feature_dim == 0:
            raise MissingHeader(path, 1, f'expected feature column f0 at position {start + 1}')
        return feature_dim
