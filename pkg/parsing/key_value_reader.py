"""
Name: key_value_reader.py
Description: This module contains the KeyValueReader class for plain-text 'key = value' files (model files and training configs).
Author: Connor Kasarda
Date: 2025-05-06

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from common.errors import MalformedLine
from parsing.file_reader import FileReader

class KeyValueReader(FileReader):
    """
    Class for reading 'key = value' files. Blank lines and lines starting with '#' are ignored.
    Inherits from the FileReader class.

    Methods:
        read(path: str) -> dict[str, str]:
            Returns the entries in file order.
        read_entries(path: str) -> list[tuple[int, str, str]]:
            Returns (line_number, key, value) triples in file order.
    """

    def read(self, path: str) -> dict[str, str]:
        """
        Returns the entries of the file in order.

        Args:
            path (str): The path to the file.

        Returns:
            dict[str, str]: Values keyed by name, whitespace stripped.
        """

        return {key: value for _, key, value in self.read_entries(path)}

    def read_entries(self, path: str) -> list[tuple[int, str, str]]:
        """
        Returns the numbered entries of the file in order.

        Args:
            path (str): The path to the file.

        Returns:
            list[tuple[int, str, str]]: (line_number, key, value) triples.

        Raises:
            MalformedLine: If a line has no '=' or an empty key, or a key repeats.
        """

        entries = []
        seen = {}
        for line_number, line in self.read_lines(path):
            stripped = line.strip()
            if not stripped or stripped.startswith('#'):
                continue
            key, separator, value = stripped.partition('=')
            key = key.strip()
            if not separator or not key:
                raise MalformedLine(path, line_number, 'expected "key = value"')
            if key in seen:
                raise MalformedLine(path, line_number, f'key {key!r} already set on line {seen[key]}')
            seen[key] = line_number
            entries.append((line_number, key, value.strip()))
        return entries
