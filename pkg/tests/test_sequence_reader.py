"""
name: test_sequence_reader.py
Description: Unit tests for the SequenceReader class and the sequence dataset writers.
Author: Connor Kasarda
Date: 2025-05-06

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import unittest
from pathlib import Path
import tempfile
import numpy as np
from common.errors import (DuplicateTimeIndex, EmptyDataset, InvalidDataset, MissingHeader, NonFiniteValue, RaggedRow,
                           UndecodableLine, UnreadableFile, UnwritableFile)
from dataset.sequence_dataset import Sample, SequenceDataset
from parsing.file_writer import write_metadata, write_sequence_dataset
from parsing.metadata_reader import metadata_path, read_metadata
from parsing.sequence_reader import SequenceReader

class TestSequenceReader(unittest.TestCase):
    """
    Test case for the SequenceReader class.

    Attributes:
        reader (SequenceReader): An instance of the SequenceReader class.
        corpus_file (Path): The sequence fixture in corpus/.
        directory (Path): Scratch directory for written files.
    """

    def setUp(self) -> None:
        """
        Set up a SequenceReader instance and a scratch directory for testing.
        """

        self.corpus_file = Path(__file__).parent.parent / 'corpus' / 'sequences.csv'
        if not self.corpus_file.exists():
            self.fail(f'Test file {self.corpus_file} does not exist.')
        self.reader = SequenceReader()
        scratch = tempfile.TemporaryDirectory()
        self.addCleanup(scratch.cleanup)
        self.directory = Path(scratch.name)

    def write(self, name: str, text: str) -> str:
        path = self.directory / name
        path.write_text(text, encoding='utf-8')
        return str(path)

    def test_read_corpus(self) -> None:
        """
        Test that rows are grouped by sequence and sorted by time index.
        """

        dataset = self.reader.read(str(self.corpus_file))
        self.assertEqual(dataset.seq_ids, ['a', 'b'])
        self.assertEqual(dataset.feature_dim, 2)
        self.assertEqual(dataset.n_samples, 6)
        np.testing.assert_array_equal(dataset.time_indices('a'), [1, 2, 3])
        np.testing.assert_array_equal(dataset.sequence_matrix('a')[0], [0.1, 0.9])
        self.assertEqual(dataset.trend_truth['a'], (0.1, 0.2, 0.3))
        np.testing.assert_array_equal(dataset.clean_trend('b'), [0.0, 0.5, 1.0])

    def test_duplicate_time_index(self) -> None:
        """
        Test that a repeated (seq_id, t) names both lines.
        """

        path = self.write('dup.csv', 'seq_id,t,f0\na,1,0.5\na,2,0.7\na,1,0.9\n')
        with self.assertRaises(DuplicateTimeIndex) as context:
            self.reader.read(path)
        self.assertEqual(context.exception.line_number, 4)
        self.assertIn('line 2', str(context.exception))

    def test_ragged_row(self) -> None:
        """
        Test that a row with a missing field is reported with its line number.
        """

        path = self.write('ragged.csv', 'seq_id,t,f0,f1\na,1,0.5,0.1\na,2,0.7\n')
        with self.assertRaises(RaggedRow) as context:
            self.reader.read(path)
        self.assertEqual(context.exception.line_number, 3)

    def test_empty_file(self) -> None:
        """
        Test that an empty file has no header.
        """

        with self.assertRaises(MissingHeader):
            self.reader.read(self.write('empty.csv', ''))

    def test_wrong_header(self) -> None:
        """
        Test that a header without seq_id,t is rejected.
        """

        with self.assertRaises(MissingHeader):
            self.reader.read(self.write('header.csv', 'id,time,f0\na,1,0.5\n'))

    def test_non_finite_value(self) -> None:
        """
        Test that NaN features are rejected on their line.
        """

        path = self.write('nan.csv', 'seq_id,t,f0\na,1,0.5\na,2,nan\n')
        with self.assertRaises(NonFiniteValue) as context:
            self.reader.read(path)
        self.assertEqual(context.exception.line_number, 3)

    def test_header_without_rows(self) -> None:
        """
        Test that a file holding only the header is an empty dataset.
        """

        with self.assertRaises(EmptyDataset):
            self.reader.read(self.write('header_only.csv', 'seq_id,t,f0\n'))

    def test_missing_file(self) -> None:
        """
        Test that a path that does not exist is a data error, not an OS error.
        """

        with self.assertRaises(UnreadableFile):
            self.reader.read(str(self.directory / 'absent.csv'))
        with self.assertRaises(UnreadableFile):
            self.reader.read(str(self.directory))

    def test_undecodable_line(self) -> None:
        """
        Test that bytes that are not UTF-8 are reported on their own line.
        """

        path = self.directory / 'binary.csv'
        path.write_bytes(b'seq_id,t,f0\na,1,0.5\na,2,\xff\xfe\n')
        with self.assertRaises(UndecodableLine) as context:
            self.reader.read(str(path))
        self.assertEqual(context.exception.line_number, 3)

    def test_unwritable_destination(self) -> None:
        """
        Test that writing into a missing directory is a data error.
        """

        dataset = SequenceDataset({'s': (Sample('s', 1, np.zeros(1)), Sample('s', 2, np.ones(1)))}, 1)
        with self.assertRaises(UnwritableFile):
            write_sequence_dataset(dataset, str(self.directory / 'missing' / 'out.csv'))

    def test_single_sample_sequence(self) -> None:
        """
        Test that a sequence with one sample violates the dataset invariants.
        """

        with self.assertRaises(InvalidDataset):
            self.reader.read(self.write('short.csv', 'seq_id,t,f0\na,1,0.5\na,2,0.6\nb,1,0.1\n'))

    def test_write_and_read_back(self) -> None:
        """
        Test that a written dataset reads back equal, clean_t column included.
        """

        samples = (Sample('s', 1, np.array([0.1 / 3]), 2), Sample('s', 2, np.array([2.0 / 7]), 1),
                   Sample('s', 3, np.array([1e-300]), 3))
        dataset = SequenceDataset({'s': samples}, 1, {'s': [0.25, 0.5, 0.75]})
        path = str(self.directory / 'out.csv')
        write_sequence_dataset(dataset, path)
        header = Path(path).read_text(encoding='utf-8').splitlines()[0]
        self.assertEqual(header, 'seq_id,t,f0,clean_t,tau')
        self.assertEqual(self.reader.read(path), dataset)

    def test_metadata_round_trip(self) -> None:
        """
        Test writing and reading a sidecar next to a data file.
        """

        sidecar = metadata_path(str(self.directory / 'springs.csv'))
        self.assertEqual(sidecar.name, 'springs.meta.csv')
        write_metadata(str(sidecar), 'seq_id', {'a': {'alpha': 0.93}, 'b': {'alpha': 1.0}})
        self.assertEqual(read_metadata(str(sidecar)), {'a': {'alpha': 0.93}, 'b': {'alpha': 1.0}})

if __name__ == '__main__':
    unittest.main()
