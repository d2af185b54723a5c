"""Context-based cross-lingual word similarity.

Combines cosine similarity in the shared embedding space with agreement
of association-rule support/confidence metrics, then aggregates over two
words' rule contexts with a symmetric mean-of-max scheme.

Two metric-agreement variants ship. The "literal" variant is
    1 - |d_supp|/2 + |d_conf|/2
and can exceed 1; the "bounded" variant,
    1 - (|d_supp| + |d_conf|)/2,
stays in [0, 1]. Reports always record which variant produced them.
"""

from __future__ import annotations

from .embedding_store import cosine
from .errors import DomainError, InsufficientDataError, NotFoundError
from .rules import build_context, mine_rules

LITERAL = "literal"
BOUNDED = "bounded"
VARIANTS = (LITERAL, BOUNDED)


def _check_metric(value, name):
    if not 0 <= value <= 1:
        raise DomainError(f"{name} must be in [0, 1], got {value}")


def met_sim(entry_u, entry_v, variant=LITERAL):
    """Agreement of two (support, confidence) pairs. Symmetric."""
    if variant not in VARIANTS:
        raise DomainError(f"unknown variant {variant!r}")
    supp_u, conf_u = entry_u
    supp_v, conf_v = entry_v
    for value, name in ((supp_u, "support"), (conf_u, "confidence"),
                        (supp_v, "support"), (conf_v, "confidence")):
        _check_metric(value, name)
    d_supp = abs(supp_u - supp_v)
    d_conf = abs(conf_u - conf_v)
    if variant == LITERAL:
        return 1.0 - d_supp / 2.0 + d_conf / 2.0
    return 1.0 - (d_supp + d_conf) / 2.0


def word_sim(entry_u, entry_v, vec_u, vec_v, variant=LITERAL):
    """Mean of shared-space cosine and metric agreement."""
    if vec_u is None or vec_v is None:
        raise NotFoundError("missing shared-space vector for word similarity")
    return (cosine(vec_u, vec_v) + met_sim(entry_u, entry_v, variant)) / 2.0


def context_sim(context_x, context_y, vectors_x, vectors_y, variant=LITERAL):
    """Symmetric mean-of-max similarity between two word contexts.

    vectors_x / vectors_y map context words to shared-space vectors; pairs
    where either vector is missing are skipped. Returns (similarity,
    skipped pair count).
    """
    if not context_x.entries:
        raise InsufficientDataError(f"word {context_x.word!r} has an empty context")
    if not context_y.entries:
        raise InsufficientDataError(f"word {context_y.word!r} has an empty context")

    skipped = 0
    table = {}  # (u, v) -> sim
    for u, entry_u in context_x.entries.items():
        for v, entry_v in context_y.entries.items():
            vec_u = vectors_x.get(u)
            vec_v = vectors_y.get(v)
            if vec_u is None or vec_v is None:
                skipped += 1
                continue
            table[(u, v)] = word_sim(entry_u, entry_v, vec_u, vec_v, variant)
    if not table:
        raise InsufficientDataError(
            f"no context pair of {context_x.word!r} and {context_y.word!r} "
            "has shared-space vectors"
        )

    forward = []
    for u in context_x.entries:
        sims = [table[(u, v)] for v in context_y.entries if (u, v) in table]
        if sims:
            forward.append(max(sims))
    backward = []
    for v in context_y.entries:
        sims = [table[(u, v)] for u in context_x.entries if (u, v) in table]
        if sims:
            backward.append(max(sims))
    value = (sum(forward) / len(forward) + sum(backward) / len(backward)) / 2.0
    return value, skipped


def _shared_vectors_for(words, lang, model, spaces):
    from .alignment import project

    out = {}
    for w in words:
        try:
            out[w] = project(model, w, lang, spaces)
        except NotFoundError:
            continue
    return out


def cross_lingual_report(seed_terms, source_lang, datasets, class_filter,
                         model, spaces, mining, top_m=3, variant=LITERAL):
    """Most context-similar terms for each seed, per other language.

    ``mining`` is a dict of mine_rules keyword arguments (top_n_antecedents,
    min_support, min_confidence, optionally per-language stopwords under
    key "stopwords" as language -> set). Contexts are mined over the
    class-filtered partition of each dataset. Returns a list of records,
    one per (seed, target language), ordered by seed then language.
    """
    stopword_map = mining.get("stopwords", {})

    def mine_for(lang):
        docs = datasets[lang].partition(class_filter)
        kwargs = {k: v for k, v in mining.items() if k != "stopwords"}
        kwargs["stopwords"] = stopword_map.get(lang, frozenset())
        return mine_rules(docs, **kwargs)

    mined = {lang: mine_for(lang) for lang in datasets}
    records = []
    for seed in seed_terms:
        seed_ctx = build_context(mined[source_lang], seed)
        for lang in sorted(datasets):
            if lang == source_lang:
                continue
            record = {
                "seed": seed,
                "source_lang": source_lang,
                "target_lang": lang,
                "class": class_filter,
                "variant": variant,
                "results": [],
                "skipped_pairs": 0,
                "no_context": False,
            }
            if not seed_ctx.entries:
                record["no_context"] = True
                records.append(record)
                continue
            seed_vecs = _shared_vectors_for(
                seed_ctx.entries, source_lang, model, spaces
            )
            candidates = sorted({r.antecedent for r in mined[lang]})
            scored = []
            skipped_total = 0
            for cand in candidates:
                cand_ctx = build_context(mined[lang], cand)
                cand_vecs = _shared_vectors_for(cand_ctx.entries, lang, model, spaces)
                try:
                    value, skipped = context_sim(
                        seed_ctx, cand_ctx, seed_vecs, cand_vecs, variant
                    )
                except InsufficientDataError:
                    continue
                skipped_total += skipped
                scored.append((cand, value))
            scored.sort(key=lambda t: (-t[1], t[0]))
            record["results"] = [
                {"word": w, "score": s} for w, s in scored[:top_m]
            ]
            record["skipped_pairs"] = skipped_total
            records.append(record)
    return records
