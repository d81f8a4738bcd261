"""
Name: contrastive.py
Description: The pairwise logistic model behind contrastive trend estimation: pair probabilities, pair losses,
             their gradients and the pairwise accuracy metric.
Author: Connor Kasarda
Date: 2025-05-14

Notes:
    The probability that u precedes v is p = sigmoid(s(v) - s(u)), where s(x) = beta . F(norm(x)) is the trend score.
    Training works on the logit z = s(v) - s(u) directly: the loss of (z, C) equals the loss of (-z, 1 - C) bit for bit,
    so flipping the orientation of a pair never changes the objective.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from enum import Enum
from typing import Callable, Hashable
import numpy as np
from scipy.special import expit
from common.errors import DimensionMismatch, EmptyPairList
from embedding.embedding_model import EmbeddingModel
from embedding.network import Activation, backward, finite_difference, forward, relative_error
from embedding.param_set import ParamSet
from alignment.labeled_pair import LabeledPair, PairArrays

PROBABILITY_FLOOR = 1e-12

class LossKind(str, Enum):
    BCE = 'bce'
    L1 = 'l1'

def _feature_vector(model: EmbeddingModel, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (model.layer_dims[0],):
        raise DimensionMismatch(f'feature vector has shape {x.shape}, model expects ({model.layer_dims[0]},)')
    return x

def pair_probability(model: EmbeddingModel, x_u: np.ndarray, x_v: np.ndarray) -> float:
    """
    Returns the modeled probability that u comes before v.

    Args:
        model (EmbeddingModel): The trend extractor.
        x_u (np.ndarray): Raw features of u, shape (d,).
        x_v (np.ndarray): Raw features of v, shape (d,).

    Returns:
        float: sigmoid(score(x_v) - score(x_u)), 0.5 exactly when x_u equals x_v.

    Raises:
        DimensionMismatch: If a vector does not have width d.
        NonFiniteInput: If a feature is NaN or Inf.
    """

    score_u = model.score(_feature_vector(model, x_u))
    score_v = model.score(_feature_vector(model, x_v))
    return float(expit(score_v - score_u))

def score(model: EmbeddingModel, samples: list) -> np.ndarray:
    """
    Scores a list of raw feature vectors.

    Args:
        model (EmbeddingModel): The trend extractor.
        samples (list[np.ndarray]): Feature vectors of width d.

    Returns:
        np.ndarray: One trend score per sample.

    Raises:
        DimensionMismatch: If a vector does not have width d.
    """

    if len(samples) == 0:
        return np.zeros(0)
    try:
        matrix = np.asarray(samples, dtype=float)
    except ValueError:
        raise DimensionMismatch('samples have differing widths') from None
    if matrix.ndim != 2:
        raise DimensionMismatch(f'samples must stack into a matrix, got shape {np.shape(matrix)}')
    return np.asarray(model.score(matrix), dtype=float)

def survival_risk(scores: np.ndarray) -> np.ndarray:
    """
    Converts trend scores of survival records into risks.

    Comparable pairs are labeled 1 when u fails first, so a trained model scores long-lived records high and the
    risk is the negated score.
    """

    return -np.asarray(scores, dtype=float)

def pair_loss(p: object, label: object, kind: LossKind = LossKind.BCE) -> object:
    """
    Loss of a pair probability against its label.

    Args:
        p (float | np.ndarray): Probability that u comes before v, clamped to [1e-12, 1 - 1e-12].
        label (int | np.ndarray): Label C.
        kind (LossKind): bce for -[C log p + (1 - C) log(1 - p)], l1 for |C - p|. Defaults to bce.

    Returns:
        float | np.ndarray: Non-negative loss, elementwise for arrays.
    """

    kind = LossKind(kind)
    p = np.clip(np.asarray(p, dtype=float), PROBABILITY_FLOOR, 1.0 - PROBABILITY_FLOOR)
    label = np.asarray(label, dtype=float)
    if kind is LossKind.BCE:
        loss = -(label * np.log(p) + (1.0 - label) * np.log1p(-p))
    else:
        loss = np.abs(label - p)
    return float(loss) if loss.ndim == 0 else loss

def ordered_pair_loss(p: object, label: object) -> object:
    """
    One-sided cross entropy -C log p of an ordered pair. Summed over (u, v) and (v, u) it equals the two-term bce.
    """

    p = np.clip(np.asarray(p, dtype=float), PROBABILITY_FLOOR, 1.0 - PROBABILITY_FLOOR)
    loss = -np.asarray(label, dtype=float) * np.log(p)
    return float(loss) if loss.ndim == 0 else loss

def logit_pair_loss(logit: np.ndarray, label: np.ndarray, kind: LossKind = LossKind.BCE) -> np.ndarray:
    """
    Pair loss evaluated from the logit z = s(v) - s(u), elementwise.

    Args:
        logit (np.ndarray): Score differences.
        label (np.ndarray): Labels C.
        kind (LossKind): Loss kind. Defaults to bce.

    Returns:
        np.ndarray: Loss per pair, equal to pair_loss(sigmoid(z), C) up to rounding.
    """

    kind = LossKind(kind)
    logit = np.asarray(logit, dtype=float)
    # z for C = 0 and -z for C = 1, so (z, C) and (-z, 1 - C) evaluate the same expression
    signed = np.where(np.asarray(label) == 1, -logit, logit)
    if kind is LossKind.BCE:
        return np.clip(np.logaddexp(0.0, signed), -np.log1p(-PROBABILITY_FLOOR), -np.log(PROBABILITY_FLOOR))
    return expit(signed)

def logit_gradient(p: object, label: object, kind: LossKind = LossKind.BCE) -> object:
    """
    Returns d loss / d logit: p - C for bce, sign(p - C) p (1 - p) for l1.
    """

    kind = LossKind(kind)
    p = np.asarray(p, dtype=float)
    residual = p - np.asarray(label, dtype=float)
    gradient = residual if kind is LossKind.BCE else np.sign(residual) * p * (1.0 - p)
    return float(gradient) if gradient.ndim == 0 else gradient

def batch_loss_and_gradient(params: ParamSet, activation: Activation, x_u: np.ndarray, x_v: np.ndarray,
                            label: np.ndarray, kind: LossKind = LossKind.BCE) -> tuple[float, ParamSet]:
    """
    Mean pair loss over a batch of normalized pairs and its gradient with respect to the parameters.

    Args:
        params (ParamSet): Network parameters.
        activation (Activation): Hidden activation.
        x_u (np.ndarray): Normalized features of the first samples, shape (B, d).
        x_v (np.ndarray): Normalized features of the second samples, shape (B, d).
        label (np.ndarray): Labels C, shape (B,).
        kind (LossKind): Loss kind. Defaults to bce.

    Returns:
        tuple[float, ParamSet]: The mean loss and its gradient.
    """

    result_u = forward(params, x_u, activation)
    result_v = forward(params, x_v, activation)
    logit = result_v.score - result_u.score
    loss = float(np.mean(logit_pair_loss(logit, label, kind)))
    upstream = logit_gradient(expit(logit), label, kind) / label.shape[0]
    # the logit is s(v) - s(u): u's branch receives the negated upstream
    grads = backward(params, result_v.cache, upstream).plus(backward(params, result_u.cache, -upstream))
    return loss, grads

def pair_loss_gradient(model: EmbeddingModel, x_u: np.ndarray, x_v: np.ndarray, label: int,
                       kind: LossKind = LossKind.BCE) -> ParamSet:
    """
    Gradient of the loss of a single pair with respect to the model parameters.

    Args:
        model (EmbeddingModel): The trend extractor.
        x_u (np.ndarray): Raw features of u.
        x_v (np.ndarray): Raw features of v.
        label (int): Label C.
        kind (LossKind): Loss kind. Defaults to bce.

    Returns:
        ParamSet: Gradients shaped like model.params.
    """

    x_u = model.normalize(_feature_vector(model, x_u))[np.newaxis, :]
    x_v = model.normalize(_feature_vector(model, x_v))[np.newaxis, :]
    return batch_loss_and_gradient(model.params, model.activation, x_u, x_v, np.array([label]), kind)[1]

def loss_grad_check(model: EmbeddingModel, x_u: np.ndarray, x_v: np.ndarray, label: int,
                    kind: LossKind = LossKind.BCE, step: float = 1e-4) -> float:
    """
    Compares pair_loss_gradient against finite differences of the pair loss.

    Args:
        model (EmbeddingModel): The trend extractor.
        x_u (np.ndarray): Raw features of u.
        x_v (np.ndarray): Raw features of v.
        label (int): Label C.
        kind (LossKind): Loss kind. Defaults to bce.
        step (float): Finite-difference step. Defaults to 1e-4.

    Returns:
        float: The maximum relative error over all parameters.
    """

    kind = LossKind(kind)
    analytic = pair_loss_gradient(model, x_u, x_v, label, kind)
    wide_u = model.normalize(_feature_vector(model, x_u)).astype(np.longdouble)
    wide_v = model.normalize(_feature_vector(model, x_v)).astype(np.longdouble)

    def loss(wide: ParamSet) -> np.longdouble:
        logit = forward(wide, wide_v, model.activation).score - forward(wide, wide_u, model.activation).score
        p = 1 / (1 + np.exp(-logit))
        if kind is LossKind.BCE:
            return -(label * np.log(p) + (1 - label) * np.log(1 - p))
        return np.abs(label - p)

    return relative_error(analytic, finite_difference(loss, model.params, step))

def accuracy_from_scores(scores: np.ndarray, pairs: PairArrays) -> float:
    """
    Pairwise accuracy of precomputed scores on pairs given as row indices.

    Args:
        scores (np.ndarray): Trend score of every row.
        pairs (PairArrays): Pairs indexing into scores.

    Returns:
        float: Fraction of pairs predicted in the labeled order; a probability of exactly 0.5 earns half credit.

    Raises:
        EmptyPairList: If there are no pairs.
    """

    if len(pairs) == 0:
        raise EmptyPairList('pairwise accuracy needs at least one pair')
    p = expit(scores[pairs.v] - scores[pairs.u])
    credit = np.where(p == 0.5, 0.5, ((p > 0.5) == (pairs.label == 1)).astype(float))
    return float(np.mean(credit))

def pairwise_accuracy(model: EmbeddingModel, pairs: list[LabeledPair], features: object) -> float:
    """
    Fraction of pairs whose predicted order matches the label.

    Args:
        model (EmbeddingModel): The trend extractor.
        pairs (list[LabeledPair]): Labeled pairs.
        features (Callable | dataset): Maps a pair reference to its raw feature vector; a dataset's features_of
            is used when it has one.

    Returns:
        float: Accuracy in [0, 1]; a probability of exactly 0.5 earns half credit.

    Raises:
        EmptyPairList: If pairs is empty.
    """

    if not pairs:
        raise EmptyPairList('pairwise accuracy needs at least one pair')
    lookup: Callable[[Hashable], np.ndarray] = getattr(features, 'features_of', features)
    rows: dict = {}
    for pair in pairs:
        rows.setdefault(pair.u, len(rows))
        rows.setdefault(pair.v, len(rows))
    scores = score(model, [lookup(ref) for ref in rows])
    arrays = PairArrays(np.array([rows[pair.u] for pair in pairs]), np.array([rows[pair.v] for pair in pairs]),
                        np.array([pair.label for pair in pairs]))
    return accuracy_from_scores(scores, arrays)
