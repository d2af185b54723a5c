"""Skip-gram with negative sampling, trained from scratch in numpy.

Single-threaded training is bit-reproducible for a fixed seed. Sentence
boundaries are input lines; context windows never cross them. Negative
samples are drawn from the unigram distribution raised to the 3/4 power.
"""

from __future__ import annotations

from dataclasses import dataclass
from threading import Thread

import numpy as np

from .corpus import build_vocab
from .embedding_store import EmbeddingSpace
from .errors import ConfigurationError, InsufficientDataError

_LR_FLOOR_FACTOR = 1e-4


@dataclass(frozen=True)
class SgnsConfig:
    dim: int = 100
    window: int = 5
    negatives: int = 5
    epochs: int = 5
    learning_rate: float = 0.025
    min_count: int = 5
    subsample_t: float = 1e-4
    rng_seed: int = 1
    workers: int = 1

    def validate(self):
        if self.dim < 2:
            raise ConfigurationError("dim must be >= 2")
        if self.window < 1:
            raise ConfigurationError("window must be >= 1")
        if self.negatives < 1:
            raise ConfigurationError("negatives must be >= 1")
        if self.epochs < 1:
            raise ConfigurationError("epochs must be >= 1")
        if self.learning_rate <= 0:
            raise ConfigurationError("learning_rate must be positive")
        if self.min_count < 1:
            raise ConfigurationError("min_count must be >= 1")
        if self.subsample_t < 0:
            raise ConfigurationError("subsample_t must be >= 0")


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


def subsample(sentence_ids, keep_prob, rng):
    """Randomly discard frequent tokens; a zero threshold keeps everything."""
    if keep_prob is None:
        return sentence_ids
    return [i for i in sentence_ids if rng.random() < keep_prob[i]]


def _train_sentences(sentences, w_in, w_out, noise_cdf, cfg, keep_prob, rng,
                     progress, total_tokens):
    """Run one pass of SGD over id-encoded sentences, updating in place.

    ``progress`` is a one-element list holding the number of center tokens
    consumed so far, shared across epochs for the linear LR decay.
    """
    lr0 = cfg.learning_rate
    lr_floor = lr0 * _LR_FLOOR_FACTOR
    for sent in sentences:
        ids = subsample(sent, keep_prob, rng)
        n = len(ids)
        for pos in range(n):
            progress[0] += 1
            center = ids[pos]
            lr = max(lr0 * (1.0 - progress[0] / total_tokens), lr_floor)
            win = int(rng.integers(1, cfg.window + 1))
            ctx = ids[max(0, pos - win):pos] + ids[pos + 1:pos + 1 + win]
            ctx = [c for c in ctx if c != center]
            if not ctx:
                continue
            negs = np.searchsorted(
                noise_cdf, rng.random(len(ctx) * cfg.negatives)
            )
            targets = np.concatenate([np.array(ctx, dtype=np.int64), negs])
            labels = np.zeros(len(targets), dtype=np.float32)
            labels[: len(ctx)] = 1.0
            v = w_in[center]
            u = w_out[targets]
            g = (labels - _sigmoid(u @ v)) * lr
            grad_v = g @ u
            np.add.at(w_out, targets, g[:, None] * v[None, :])
            w_in[center] += grad_v


def train_sgns(corpus, cfg):
    """Train word vectors on a corpus of token lists.

    Returns an EmbeddingSpace over the min_count-filtered vocabulary,
    ordered by descending frequency (ties alphabetical). With workers=1
    the result is bit-reproducible for a fixed rng_seed; more workers
    trade determinism for throughput via lock-free shared updates.
    """
    cfg.validate()
    corpus = [list(doc) for doc in corpus]
    if not corpus:
        raise InsufficientDataError("empty corpus")
    vocab = build_vocab(corpus, cfg.min_count)
    if len(vocab) < 2:
        raise InsufficientDataError(
            f"vocabulary after min_count filtering has {len(vocab)} words; need >= 2"
        )
    words = sorted(vocab, key=lambda w: (-vocab[w], w))
    index = {w: i for i, w in enumerate(words)}
    counts = np.array([vocab[w] for w in words], dtype=np.float64)

    sentences = []
    for doc in corpus:
        ids = [index[t] for t in doc if t in index]
        if ids:
            sentences.append(ids)

    noise = counts ** 0.75
    noise_cdf = np.cumsum(noise / noise.sum())
    noise_cdf[-1] = 1.0

    keep_prob = None
    if cfg.subsample_t > 0:
        freq = counts / counts.sum()
        keep_prob = np.minimum(1.0, np.sqrt(cfg.subsample_t / freq))

    rng = np.random.default_rng(cfg.rng_seed)
    nvocab = len(words)
    w_in = ((rng.random((nvocab, cfg.dim)) - 0.5) / cfg.dim).astype(np.float32)
    w_out = np.zeros((nvocab, cfg.dim), dtype=np.float32)

    total_tokens = cfg.epochs * sum(len(s) for s in sentences)
    progress = [0]
    if cfg.workers <= 1:
        for _ in range(cfg.epochs):
            _train_sentences(sentences, w_in, w_out, noise_cdf, cfg,
                             keep_prob, rng, progress, total_tokens)
    else:
        shards = [sentences[i::cfg.workers] for i in range(cfg.workers)]
        for _ in range(cfg.epochs):
            threads = [
                Thread(target=_train_sentences,
                       args=(shard, w_in, w_out, noise_cdf, cfg, keep_prob,
                             np.random.default_rng(cfg.rng_seed + 1 + k),
                             progress, total_tokens))
                for k, shard in enumerate(shards)
            ]
            for t in threads:
                t.start()
            for t in threads:
                t.join()

    return EmbeddingSpace(language="", words=words, vectors=w_in)
