"""Order-K transition counting, backoff conditionals and inverse-CDF sampling."""
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from market_recon.config import get_custom_logger
from market_recon.exceptions import (TransitionModelException, InsufficientDataException,
                                     DomainException, INSUFFICIENT_DATA, NO_DISTRIBUTION,
                                     SYMBOL_OUT_OF_ALPHABET)
from market_recon.helpers.coder import SymbolSequence

logger = get_custom_logger("market_recon.markov")

Context = Tuple[int, ...]
TransitionCounts = Dict[int, Dict[Context, np.ndarray]]


@dataclass(frozen=True, eq=False)
class ConditionalDistribution:
    """Successor probabilities over -beta ... beta and the context length that produced them."""
    probabilities: np.ndarray
    source_context_length: int

    @property
    def beta(self) -> int:
        return (self.probabilities.size - 1) // 2


def count_transitions(train: SymbolSequence, k) -> TransitionCounts:
    """
    Count every window of k + 1 symbols as (context = first k, successor = last),
    and do the same for every shorter context length z = 0 ... k - 1.
    Level 0 holds the marginal symbol counts.
    """
    if k < 0:
        raise DomainException("k", f"chain order must not be negative, got {k}", value=k)
    if len(train) < k + 1:
        raise InsufficientDataException(
            "train", f"{INSUFFICIENT_DATA} for an order {k} chain",
            required=k + 1, available=len(train))

    symbols = train.tolist()
    alphabet_size = train.scheme.alphabet_size_n
    beta = train.scheme.beta
    counts = {}
    for z in range(k + 1):
        windows = Counter(zip(*(symbols[i:] for i in range(z + 1))))
        level = {}
        for window, count in windows.items():
            context, successor = window[:-1], window[-1]
            if context not in level:
                level[context] = np.zeros(alphabet_size, dtype=np.int64)
            level[context][successor + beta] += count
        counts[z] = level
    return counts


class TransitionModel:
    """
    Count tensors for context lengths 0 ... K, stored sparsely by context
    (oldest symbol first). Read-only once built.
    """

    def __init__(self, order_k, alphabet_size_n, counts: TransitionCounts):
        self.order_k = order_k
        self.alphabet_size_n = alphabet_size_n
        self._counts = {}
        self._totals = {}
        for z, level in counts.items():
            frozen = {}
            for context, successors in level.items():
                successors = np.array(successors, dtype=np.int64)
                successors.setflags(write=False)
                frozen[tuple(int(s) for s in context)] = successors
            self._counts[z] = frozen
            self._totals[z] = {c: int(v.sum()) for c, v in frozen.items()}

    @property
    def beta(self) -> int:
        return (self.alphabet_size_n - 1) // 2

    @property
    def counts(self) -> TransitionCounts:
        return self._counts

    @property
    def context_totals(self) -> Dict[int, Dict[Context, int]]:
        return self._totals

    def contexts(self, z) -> List[Context]:
        return sorted(self._counts.get(z, {}))

    def successor_counts(self, context) -> np.ndarray:
        context = tuple(int(s) for s in context)
        level = self._counts.get(len(context), {})
        if context in level:
            return level[context]
        return np.zeros(self.alphabet_size_n, dtype=np.int64)

    def total(self, context) -> int:
        context = tuple(int(s) for s in context)
        return self._totals.get(len(context), {}).get(context, 0)


def build_model(train: SymbolSequence, k) -> TransitionModel:
    """Estimate the order-k model; probabilities are successor counts over the context total."""
    counts = count_transitions(train, k)
    model = TransitionModel(k, train.scheme.alphabet_size_n, counts)
    logger.info("Built order %s model from %s symbols: %s full-length contexts seen",
                k, len(train), len(counts[k]))
    return model


def conditional_distribution(model: TransitionModel, context) -> ConditionalDistribution:
    """
    Successor distribution for a context, backing off by dropping the oldest
    symbol until a context with observations is found. The empty context
    gives the marginal distribution of the training symbols.
    """
    context = tuple(int(s) for s in context)
    if len(context) > model.order_k:
        raise TransitionModelException(
            "context", f"context of length {len(context)} exceeds order {model.order_k}",
            context=context)
    if any(abs(s) > model.beta for s in context):
        raise TransitionModelException(
            "context", f"{SYMBOL_OUT_OF_ALPHABET} in context {context}", context=context)

    for z in range(len(context), -1, -1):
        suffix = context[len(context) - z:]
        total = model.total(suffix)
        if total > 0:
            return ConditionalDistribution(model.successor_counts(suffix) / total, z)
    raise TransitionModelException("model", NO_DISTRIBUTION, context=context)


def inverse_cdf_indices(probabilities, epsilons) -> np.ndarray:
    """
    Row-wise inverse CDF: the first index with positive probability whose
    cumulative probability reaches epsilon; when rounding leaves epsilon
    above the last cumulative value, the last index with positive probability.
    """
    probabilities = np.atleast_2d(np.asarray(probabilities, dtype=float))
    epsilons = np.atleast_1d(np.asarray(epsilons, dtype=float))[:, None]
    positive = probabilities > 0
    hit = (epsilons <= np.cumsum(probabilities, axis=1)) & positive
    indices = hit.argmax(axis=1)
    missed = ~hit.any(axis=1)
    if missed.any():
        last_positive = probabilities.shape[1] - 1 - positive[:, ::-1].argmax(axis=1)
        indices[missed] = last_positive[missed]
    return indices


def sample_next(dist: ConditionalDistribution, epsilon) -> int:
    """Smallest symbol x with epsilon <= P(symbols <= x)."""
    if not 0.0 <= epsilon <= 1.0:
        raise DomainException("epsilon", f"epsilon must lie in [0, 1], got {epsilon}",
                              value=epsilon)
    return int(inverse_cdf_indices(dist.probabilities, epsilon)[0]) - dist.beta


def transition_matrix(model: TransitionModel) -> np.ndarray:
    """
    N x N column-stochastic matrix from the length-1 contexts: entry [i, j] is
    P(symbol i | previous symbol j). Unseen previous symbols give zero columns.
    """
    if model.order_k < 1:
        raise TransitionModelException("model", "an order 0 model has no transition matrix")
    size, beta = model.alphabet_size_n, model.beta
    matrix = np.zeros((size, size))
    for (previous,), successors in model.counts[1].items():
        total = successors.sum()
        if total > 0:
            matrix[:, previous + beta] = successors / total
    return matrix


def export_rows(model: TransitionModel) -> List[dict]:
    """(context, successor, count, probability) rows sorted by context then successor."""
    rows = []
    contexts = sorted(c for level in model.counts.values() for c in level)
    symbols = range(-model.beta, model.beta + 1)
    for context in contexts:
        successors = model.successor_counts(context)
        total = int(successors.sum())
        for symbol, count in zip(symbols, successors):
            rows.append({
                "context": list(context),
                "successor": symbol,
                "count": int(count),
                "probability": float(count) / total if total else 0.0,
            })
    return rows
