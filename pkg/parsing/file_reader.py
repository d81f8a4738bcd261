"""
Name: file_reader.py
Description: This module contains the FileReader base class for reading trendlab files line by line.
Author: Connor Kasarda
Date: 2025-04-16

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from typing import Iterator
from common.errors import UndecodableLine, UnreadableFile
from common.log import get_logger

logger = get_logger(__name__)

class FileReader:
    """
    Interface for file readers that turn a file into a validated trendlab value.

    Attributes:
        encoding (str): Text encoding of the files read. Defaults to 'utf-8'.

    Methods:
        __init__(encoding: str = 'utf-8') -> None:
            Initializes the FileReader instance.
        read(path: str) -> object:
            Parses the whole file into a value.
        read_lines(path: str) -> Iterator[tuple[int, str]]:
            Yields (line_number, line) pairs with line endings removed, line numbers starting at 1.
    """

    def __init__(self, encoding: str = 'utf-8') -> None:
        """
        Initializes the FileReader instance.

        Args:
            encoding (str): The encoding of the files. Defaults to 'utf-8'.
        """

        self.encoding = encoding

    def read(self, path: str) -> object:
        """
        Parses the whole file into a value.

        Args:
            path (str): The path to the file.

        Returns:
            object: The parsed value.
        """

        raise NotImplementedError('Subclasses must implement this method.')

    def read_lines(self, path: str) -> Iterator[tuple[int, str]]:
        """
        Provides an iterator that yields numbered lines from the file one by one.

        Args:
            path (str): The path to the file.

        Returns:
            Iterator[tuple[int, str]]: (line_number, line) pairs, the first line being number 1.

        Raises:
            UnreadableFile: If the file cannot be opened or read.
            UndecodableLine: If a line is not valid text in the reader's encoding.
        """

        logger.debug('reading %s', path)
        try:
            file = open(path, 'rb')
        except OSError as error:
            raise UnreadableFile(f'{path}: cannot open ({error.strerror or error})') from None
        line_number = 0
        with file:
            try:
                for line_number, raw in enumerate(file, start=1):
                    yield line_number, raw.decode(self.encoding).rstrip('\r\n')
            except UnicodeDecodeError as error:
                raise UndecodableLine(path, line_number, f'not valid {self.encoding} text ({error.reason})') from None
            except OSError as error:
                raise UnreadableFile(f'{path}: read failed after line {line_number} '
                                     f'({error.strerror or error})') from None
