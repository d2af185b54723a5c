"""Monolingual embedding spaces: word2vec-text parsing, persistence, cosine."""

from __future__ import annotations

import os

import numpy as np

from .errors import DimensionError, DomainError, FormatError, InsufficientDataError


class EmbeddingSpace:
    """One language's vocabulary mapped to dense vectors of fixed dimension.

    Immutable after construction; safe for concurrent reads. Vectors are
    stored as float32, one row per word.
    """

    def __init__(self, language, words, vectors):
        vectors = np.asarray(vectors, dtype=np.float32)
        if vectors.ndim != 2:
            raise DimensionError("vectors must be a 2-d matrix")
        if len(words) != vectors.shape[0]:
            raise DimensionError(
                f"{len(words)} words but {vectors.shape[0]} vector rows"
            )
        if vectors.shape[1] < 1:
            raise DimensionError("embedding dimension must be >= 1")
        if len(set(words)) != len(words):
            raise FormatError("duplicate words in vocabulary")
        self.language = language
        self.words = list(words)
        self.vectors = vectors
        self.vocab = {w: i for i, w in enumerate(self.words)}
        self.duplicates_dropped = 0

    @property
    def dim(self):
        return int(self.vectors.shape[1])

    def __len__(self):
        return len(self.words)

    def __contains__(self, word):
        return word in self.vocab

    def vector(self, word):
        return self.vectors[self.vocab[word]]

    def normalized(self):
        """Return a copy with every row scaled to unit Euclidean norm."""
        norms = np.linalg.norm(self.vectors, axis=1, keepdims=True)
        if np.any(norms == 0):
            raise DomainError("cannot normalize a space containing zero vectors")
        return EmbeddingSpace(self.language, self.words, self.vectors / norms)


def load_embeddings(path, language):
    """Parse a word2vec text file into an EmbeddingSpace.

    First line is "<vocab_count> <dim>"; each following line is a word and
    its components, space separated. Duplicate words keep the first
    occurrence; the count of dropped rows is recorded on the returned
    space as ``duplicates_dropped``.
    """
    words = []
    rows = []
    seen = {}
    duplicates = 0
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        parts = header.split()
        if len(parts) != 2:
            raise FormatError("expected header '<vocab_count> <dim>'", 1)
        try:
            count, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError("non-integer header fields", 1) from None
        if count < 1:
            raise InsufficientDataError("empty vocabulary in embedding file")
        if dim < 1:
            raise FormatError("embedding dimension must be >= 1", 1)
        lineno = 1
        for line in fh:
            lineno += 1
            if not line.strip():
                continue
            fields = line.rstrip("\n").split(" ")
            fields = [f for f in fields if f != ""]
            if len(fields) != dim + 1:
                raise FormatError(
                    f"expected {dim + 1} fields, found {len(fields)}", lineno
                )
            word = fields[0]
            try:
                vec = np.array(fields[1:], dtype=np.float32)
            except ValueError:
                raise FormatError("non-numeric vector component", lineno) from None
            if not np.linalg.norm(vec) > 0:
                raise FormatError(f"all-zero vector for word {word!r}", lineno)
            if word in seen:
                duplicates += 1
                continue
            seen[word] = True
            words.append(word)
            rows.append(vec)
    if len(words) + duplicates != count:
        raise FormatError(
            f"header promised {count} rows, found {len(words) + duplicates}",
            lineno + 1,
        )
    space = EmbeddingSpace(language, words, np.vstack(rows))
    space.duplicates_dropped = duplicates
    return space


def save_embeddings(space, path):
    """Write a space in word2vec text format with 6 decimal digits."""
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(f"{len(space)} {space.dim}\n")
        for word, row in zip(space.words, space.vectors):
            comps = " ".join(f"{x:.6f}" for x in row)
            fh.write(f"{word} {comps}\n")
    os.replace(tmp, path)


def cosine(u, v):
    """Cosine similarity of two nonzero vectors of equal dimension."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise DimensionError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0 or nv == 0:
        raise DomainError("cosine undefined for zero vectors")
    return float(np.dot(u, v) / (nu * nv))
