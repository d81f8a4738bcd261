"""
Name: model_file.py
Description: Reads and writes EmbeddingModel files as 'key = value' text.
Author: Connor Kasarda
Date: 2025-05-10

Notes:
    Keys: format_version, layer_dims, activation, W1..WL, b1..bL, beta, norm_mean, norm_std.
    Arrays are space separated, weight matrices flattened row by row (shape fan_out x fan_in).
    Every real is written with 17 significant digits, so a reloaded model scores bit-identically.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import numpy as np
from common.errors import ShapeMismatch, VersionMismatch, MalformedLine, ConfigError
from common.log import get_logger
from embedding.embedding_model import EmbeddingModel, MODEL_FORMAT_VERSION
from embedding.network import Activation
from embedding.param_set import ParamSet, check_layer_dims
from parsing.file_writer import write_key_values
from parsing.key_value_reader import KeyValueReader

logger = get_logger(__name__)

def serialize_model(model: EmbeddingModel, path: str) -> None:
    """
    Writes a model file.

    Args:
        model (EmbeddingModel): The model to write.
        path (str): Destination file.
    """

    entries = {
        'format_version': model.format_version,
        'layer_dims': list(model.layer_dims),
        'activation': model.activation.value,
    }
    for k, (weight, bias) in enumerate(zip(model.weights, model.biases), start=1):
        entries[f'W{k}'] = weight
        entries[f'b{k}'] = bias
    entries['beta'] = model.beta
    entries['norm_mean'] = model.norm_mean
    entries['norm_std'] = model.norm_std
    write_key_values(path, entries)
    logger.debug('wrote model %s to %s', list(model.layer_dims), path)

class ModelReader(KeyValueReader):
    """
    Class for reading model files.
    Inherits from the KeyValueReader class.

    Methods:
        read(path: str) -> EmbeddingModel:
            Reads and validates a model file.
    """

    def read(self, path: str) -> EmbeddingModel:
        """
        Reads and validates a model file.

        Args:
            path (str): The path to the model file.

        Returns:
            EmbeddingModel: The stored model.

        Raises:
            VersionMismatch: If format_version is missing or unknown.
            ShapeMismatch: If a stored array does not fit layer_dims or a key is missing.
        """

        entries = {key: (line_number, value) for line_number, key, value in self.read_entries(path)}
        version = entries.get('format_version', (0, ''))[1]
        if version != str(MODEL_FORMAT_VERSION):
            raise VersionMismatch(f'{path}: unsupported model format_version {version!r}, expected {MODEL_FORMAT_VERSION}')

        def array(key: str, size: int) -> np.ndarray:
            if key not in entries:
                raise ShapeMismatch(f'{path}: missing key {key}')
            line_number, text = entries[key]
            try:
                values = np.array([float(item) for item in text.split()], dtype=float)
            except ValueError:
                raise MalformedLine(path, line_number, f'{key} holds a non-numeric value') from None
            if values.size != size:
                raise ShapeMismatch(f'{path}, line {line_number}: {key} has {values.size} values, expected {size}')
            return values

        try:
            layer_dims = check_layer_dims([int(item) for item in entries.get('layer_dims', (0, ''))[1].split()])
        except (ValueError, ConfigError):
            raise ShapeMismatch(f'{path}: layer_dims is missing or invalid') from None
        if 'activation' not in entries:
            raise ShapeMismatch(f'{path}: missing key activation')
        line_number, text = entries['activation']
        try:
            activation = Activation(text)
        except ValueError:
            raise ShapeMismatch(f'{path}, line {line_number}: unknown activation {text!r}') from None

        weights, biases = [], []
        for k, (fan_in, fan_out) in enumerate(zip(layer_dims[:-1], layer_dims[1:]), start=1):
            weights.append(array(f'W{k}', fan_in * fan_out).reshape(fan_out, fan_in))
            biases.append(array(f'b{k}', fan_out))
        params = ParamSet(tuple(weights), tuple(biases), array('beta', layer_dims[-1]))
        norm_mean = array('norm_mean', layer_dims[0])
        norm_std = array('norm_std', layer_dims[0])
        return EmbeddingModel(layer_dims, params, activation, norm_mean, norm_std, MODEL_FORMAT_VERSION)

def deserialize_model(path: str) -> EmbeddingModel:
    """
    Reads a model file written by serialize_model.

    Args:
        path (str): The path to the model file.

    Returns:
        EmbeddingModel: The stored model.
    """

    return ModelReader().read(path)
