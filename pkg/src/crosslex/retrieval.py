"""Cross-lingual nearest-neighbor retrieval and precision@k evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .alignment import project, project_space
from .errors import ConfigurationError, InsufficientDataError, NotFoundError


@dataclass
class NeighborList:
    query_word: str
    query_lang: str
    target_lang: str
    neighbors: list = field(default_factory=list)  # (word, language, score) desc
    truncated: bool = False


@dataclass
class BliResult:
    precision: float
    k: int
    evaluated: int  # distinct source words scored
    excluded: int  # source words with no in-vocabulary gold target


def _unit_rows(mat):
    norms = np.linalg.norm(mat, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return mat / norms


def _rank(query_vec, target_unit, words, exclude=None, k=None):
    """Exact cosine ranking; ties broken by ascending word order."""
    qn = np.linalg.norm(query_vec)
    scores = target_unit @ (query_vec / qn if qn > 0 else query_vec)
    order = sorted(range(len(words)), key=lambda i: (-scores[i], words[i]))
    out = []
    for i in order:
        if exclude is not None and words[i] == exclude:
            continue
        out.append((words[i], float(scores[i])))
        if k is not None and len(out) == k:
            break
    return out


def knn(model, spaces, query_word, query_lang, target_lang, k):
    """Exact top-k cosine neighbors of a word in a target language.

    The query itself is excluded only when query and target language
    coincide. Asking for more neighbors than the target vocabulary holds
    returns the full ranking with the truncation flag set.
    """
    if k < 1:
        raise ConfigurationError("k must be >= 1")
    qvec = project(model, query_word, query_lang, spaces)
    target_space = spaces[target_lang]
    target_unit = _unit_rows(project_space(model, target_lang, spaces))
    exclude = query_word if query_lang == target_lang else None
    avail = len(target_space.words) - (1 if exclude in target_space.vocab else 0)
    ranked = _rank(qvec, target_unit, target_space.words, exclude, min(k, avail))
    return NeighborList(
        query_word=query_word,
        query_lang=query_lang,
        target_lang=target_lang,
        neighbors=[(w, target_lang, s) for w, s in ranked],
        truncated=k > avail,
    )


def bli_precision_at_k(model, spaces, validation, k):
    """Fraction of validation source words whose top-k neighbors contain
    any of their gold translations.

    One-to-many source words count once. Source words that are OOV, or
    whose gold targets are all OOV, are excluded from the denominator and
    counted in ``excluded``.
    """
    src_lang, tgt_lang = validation.src_lang, validation.tgt_lang
    gold = {}
    for s, t in validation.pairs:
        gold.setdefault(s, set()).add(t)

    target_space = spaces[tgt_lang]
    target_unit = _unit_rows(project_space(model, tgt_lang, spaces))
    exclude_self = src_lang == tgt_lang

    hits = 0
    evaluated = 0
    excluded = 0
    for src_word, targets in gold.items():
        in_vocab_targets = {t for t in targets if t in target_space.vocab}
        if src_word not in spaces[src_lang].vocab or not in_vocab_targets:
            excluded += 1
            continue
        try:
            qvec = project(model, src_word, src_lang, spaces)
        except NotFoundError:
            excluded += 1
            continue
        top = _rank(
            qvec,
            target_unit,
            target_space.words,
            src_word if exclude_self else None,
            k,
        )
        evaluated += 1
        if in_vocab_targets.intersection(w for w, _ in top):
            hits += 1
    if evaluated == 0:
        raise InsufficientDataError(
            "no validation pair survives vocabulary restriction"
        )
    return BliResult(
        precision=hits / evaluated, k=k, evaluated=evaluated, excluded=excluded
    )
