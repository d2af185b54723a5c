"""Command-line entry point for the crosslex pipeline.

Exit codes: 0 success, 1 usage/configuration error, 2 data or format error.
Every subcommand that writes outputs also writes a run manifest with the
resolved config, input checksums, and seeds.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .alignment import fit_hub_alignment, load_alignment, save_alignment
from .classify import ClassifyConfig, split_dataset, zero_shot_eval
from .config import default_config, load_config
from .contextsim import cross_lingual_report
from .corpus import TokenizerConfig, filter_corpus, load_seed_terms, read_lines
from .embedding_store import load_embeddings, save_embeddings
from .errors import ConfigurationError, CrosslexError, ProtocolError
from .lexicon import load_lexicon, restrict_to_vocab, split_lexicon
from .manifest import write_manifest
from .retrieval import bli_precision_at_k, knn
from .rules import (
    HATE,
    NON_HATE,
    load_labeled_dataset,
    load_stopwords,
    mine_rules,
)
from .sgns import SgnsConfig, train_sgns

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _lang_path_pair(value):
    if "=" not in value:
        raise argparse.ArgumentTypeError(f"expected LANG=PATH, got {value!r}")
    lang, path = value.split("=", 1)
    return lang, path


def _load_run_config(args):
    cfg = load_config(args.config) if args.config else default_config()
    for section, key, value in getattr(args, "overrides", []):
        cfg.set(section, key, value)
    return cfg


def _tokenizer_config(cfg):
    return TokenizerConfig(**cfg.section("tokenizer"))


def _load_spaces(pairs):
    return {lang: load_embeddings(path, lang) for lang, path in pairs}


def _write_jsonl(path_or_stdout, records):
    if path_or_stdout is None:
        for rec in records:
            print(json.dumps(rec, sort_keys=True))
    else:
        with open(path_or_stdout, "w", encoding="utf-8") as fh:
            for rec in records:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")


def _cmd_filter_corpus(args):
    cfg = _load_run_config(args)
    tok = _tokenizer_config(cfg)
    seeds = load_seed_terms(args.seeds)
    lines = read_lines(args.input)
    kept = list(filter_corpus(lines, seeds, tok))
    os.makedirs(os.path.dirname(os.path.abspath(args.output)), exist_ok=True)
    with open(args.output, "w", encoding="utf-8") as fh:
        for line in kept:
            fh.write(line + "\n")
    write_manifest(
        os.path.dirname(os.path.abspath(args.output)),
        "filter-corpus",
        {"tokenizer": cfg.section("tokenizer"),
         "kept": len(kept), "total": len(lines)},
        [args.input, args.seeds],
        name=os.path.basename(args.output) + ".manifest.json",
    )
    print(f"kept {len(kept)} of {len(lines)} lines")
    return EXIT_OK


def _cmd_train_embeddings(args):
    cfg = _load_run_config(args)
    tok = _tokenizer_config(cfg)
    sgns_cfg = SgnsConfig(**cfg.section("sgns"))
    from .corpus import tokenize

    corpus = [tokenize(line, tok) for line in read_lines(args.corpus)]
    space = train_sgns(corpus, sgns_cfg)
    space.language = args.language
    os.makedirs(os.path.dirname(os.path.abspath(args.output)), exist_ok=True)
    save_embeddings(space, args.output)
    write_manifest(
        os.path.dirname(os.path.abspath(args.output)),
        "train-embeddings",
        {"tokenizer": cfg.section("tokenizer"), "sgns": cfg.section("sgns"),
         "language": args.language},
        [args.corpus],
        seeds={"rng_seed": sgns_cfg.rng_seed},
        name=os.path.basename(args.output) + ".manifest.json",
    )
    print(f"trained {len(space)} x {space.dim} vectors for {args.language}")
    return EXIT_OK


def _cmd_align(args):
    cfg = _load_run_config(args)
    acfg = cfg.section("alignment")
    pivot = args.pivot or acfg["pivot"]
    spaces = _load_spaces(args.embeddings)
    if acfg["normalize"]:
        spaces = {lang: s.normalized() for lang, s in spaces.items()}
    lexicons = []
    heldout = {}
    for lang, path in args.lexicon:
        lex = load_lexicon(path, pivot, lang)
        lex, dropped = restrict_to_vocab(lex, spaces[pivot], spaces[lang])
        if args.holdout:
            train, val = split_lexicon(
                lex, acfg["train_fraction"], acfg["split_seed"]
            )
            heldout[lang] = val
            lex = train
        lexicons.append(lex)
        print(f"{pivot}-{lang}: {len(lex)} alignment pairs ({dropped} dropped)")
    model = fit_hub_alignment(
        spaces, lexicons, pivot,
        lam=acfg["lambda"], kept_ratio=acfg["kept_ratio"],
        normalize=False,  # spaces already normalized above when requested
    )
    save_alignment(model, args.output)
    for lang, val in heldout.items():
        with open(os.path.join(args.output, f"validation_{lang}.tsv"), "w",
                  encoding="utf-8") as fh:
            for s, t in val.pairs:
                fh.write(f"{s}\t{t}\n")
    write_manifest(
        args.output,
        "align",
        {"alignment": acfg, "pivot": pivot},
        [p for _, p in args.embeddings] + [p for _, p in args.lexicon],
        seeds={"split_seed": acfg["split_seed"]},
    )
    return EXIT_OK


def _load_model_and_spaces(args, cfg):
    model = load_alignment(args.model)
    spaces = _load_spaces(args.embeddings)
    if cfg.section("alignment")["normalize"]:
        spaces = {lang: s.normalized() for lang, s in spaces.items()}
    return model, spaces


def _cmd_knn(args):
    cfg = _load_run_config(args)
    model, spaces = _load_model_and_spaces(args, cfg)
    result = knn(model, spaces, args.word, args.lang, args.target, args.k)
    records = [
        {"query": result.query_word, "query_lang": result.query_lang,
         "rank": i + 1, "word": w, "language": lang, "score": round(s, 6)}
        for i, (w, lang, s) in enumerate(result.neighbors)
    ]
    if result.truncated:
        records.append({"query": result.query_word, "truncated": True})
    _write_jsonl(args.output, records)
    return EXIT_OK


def _cmd_bli(args):
    cfg = _load_run_config(args)
    model, spaces = _load_model_and_spaces(args, cfg)
    records = []
    for lang, path in args.validation:
        lex = load_lexicon(path, model.pivot_lang, lang)
        if args.detailed:
            for src_word in lex.source_words():
                if src_word not in spaces[lex.src_lang].vocab:
                    continue
                result = knn(model, spaces, src_word, lex.src_lang, lang, args.k)
                records.append({
                    "query": src_word, "query_lang": lex.src_lang,
                    "target_lang": lang,
                    "neighbors": [
                        {"word": w, "score": round(s, 6)}
                        for w, _, s in result.neighbors
                    ],
                })
        res = bli_precision_at_k(model, spaces, lex, args.k)
        records.append({
            "source_lang": lex.src_lang, "target_lang": lang,
            "k": args.k, "precision": round(res.precision, 6),
            "evaluated": res.evaluated, "excluded": res.excluded,
        })
    _write_jsonl(args.output, records)
    if args.output:
        write_manifest(
            os.path.dirname(os.path.abspath(args.output)),
            "bli",
            {"k": args.k},
            [p for _, p in args.validation] + [p for _, p in args.embeddings],
            name=os.path.basename(args.output) + ".manifest.json",
        )
    return EXIT_OK


def _class_filter(name):
    return {"hate": HATE, "non-hate": NON_HATE}[name]


def _cmd_mine_rules(args):
    cfg = _load_run_config(args)
    tok = _tokenizer_config(cfg)
    mcfg = cfg.section("mining")
    ds = load_labeled_dataset(args.dataset, args.language, tok)
    docs = (
        ds.partition(_class_filter(args.class_filter))
        if args.class_filter != "all"
        else ds.token_lists()
    )
    stop = load_stopwords(args.language) if mcfg["use_stopwords"] else frozenset()
    rules = mine_rules(
        docs,
        top_n_antecedents=mcfg["top_n"],
        min_support=mcfg["min_support"],
        min_confidence=mcfg["min_confidence"],
        stopwords=stop,
    )
    records = [
        {"antecedent": r.antecedent, "consequent": r.consequent,
         "support": round(r.support, 6), "confidence": round(r.confidence, 6)}
        for r in rules
    ]
    _write_jsonl(args.output, records)
    counts = ds.class_counts()
    print(f"classes: hate={counts.get(HATE, 0)} non-hate={counts.get(NON_HATE, 0)}; "
          f"{len(rules)} rules", file=sys.stderr)
    return EXIT_OK


def _cmd_context_sim(args):
    cfg = _load_run_config(args)
    tok = _tokenizer_config(cfg)
    mcfg = cfg.section("mining")
    scfg = cfg.section("similarity")
    model, spaces = _load_model_and_spaces(args, cfg)
    datasets = {
        lang: load_labeled_dataset(path, lang, tok)
        for lang, path in args.dataset
    }
    seeds = args.seed_terms.split(",")
    stopword_map = (
        {lang: load_stopwords(lang) for lang in datasets}
        if mcfg["use_stopwords"] else {}
    )
    mining = {
        "top_n_antecedents": mcfg["top_n"],
        "min_support": mcfg["min_support"],
        "min_confidence": mcfg["min_confidence"],
        "stopwords": stopword_map,
    }
    records = cross_lingual_report(
        seeds, args.source_lang, datasets, _class_filter(args.class_filter),
        model, spaces, mining, top_m=scfg["top_m"], variant=scfg["variant"],
    )
    for rec in records:
        rec["results"] = [
            {"word": r["word"], "score": round(r["score"], 6)}
            for r in rec["results"]
        ]
    _write_jsonl(args.output, records)
    return EXIT_OK


def _cmd_classify(args):
    cfg = _load_run_config(args)
    tok = _tokenizer_config(cfg)
    ccfg = cfg.section("classify")
    model, spaces = _load_model_and_spaces(args, cfg)
    train_lang, train_path = args.train
    test_lang, test_path = args.test
    train_ds = load_labeled_dataset(train_path, train_lang, tok)
    test_ds = load_labeled_dataset(test_path, test_lang, tok)
    hyper = ClassifyConfig(
        epochs=ccfg["epochs"], learning_rate=ccfg["learning_rate"],
        l2=ccfg["l2"], threshold=ccfg["threshold"], seed=ccfg["seed"],
    )
    if args.monolingual:
        if train_lang != test_lang:
            raise ProtocolError("--monolingual requires matching languages")
        if train_path == test_path:
            train_ds, _, test_ds = split_dataset(
                train_ds, seed=ccfg["split_seed"]
            )
    metrics = zero_shot_eval(
        train_ds, test_ds, model, spaces, hyper,
        allow_same_language=args.monolingual,
    )
    record = {"train_lang": train_lang, "test_lang": test_lang,
              "monolingual": args.monolingual}
    record.update(
        {k: (round(v, 6) if isinstance(v, float) else v)
         for k, v in metrics.as_dict().items()}
    )
    _write_jsonl(args.output, [record])
    tsv = (f"{train_lang}\t{test_lang}\t{metrics.f1:.4f}\t"
           f"{metrics.precision:.4f}\t{metrics.recall:.4f}\t{metrics.accuracy:.4f}")
    print(tsv, file=sys.stderr)
    if args.output:
        write_manifest(
            os.path.dirname(os.path.abspath(args.output)),
            "classify",
            {"classify": ccfg, "train": train_lang, "test": test_lang},
            [train_path, test_path],
            seeds={"seed": ccfg["seed"], "split_seed": ccfg["split_seed"]},
            name=os.path.basename(args.output) + ".manifest.json",
        )
    return EXIT_OK


def _cmd_report(args):
    """Flatten a context-sim JSON-lines report into a TSV table:
    rows = seed terms, columns = target languages."""
    with open(args.input, encoding="utf-8") as fh:
        records = [json.loads(line) for line in fh if line.strip()]
    seeds = []
    langs = []
    cells = {}
    for rec in records:
        if "seed" not in rec:
            continue
        seed, lang = rec["seed"], rec["target_lang"]
        if seed not in seeds:
            seeds.append(seed)
        if lang not in langs:
            langs.append(lang)
        if rec.get("no_context"):
            cells[(seed, lang)] = "(no context)"
        else:
            cells[(seed, lang)] = "; ".join(
                f"{r['word']} ({r['score']:.2f})" for r in rec["results"]
            )
    lines = ["seed\t" + "\t".join(langs)]
    for seed in seeds:
        lines.append(
            seed + "\t" + "\t".join(cells.get((seed, lang), "") for lang in langs)
        )
    out = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def _add_common(parser):
    parser.add_argument("--config", help="sectioned key-value config file")
    parser.add_argument(
        "--set", dest="overrides", action="append", default=[],
        type=_override, metavar="SECTION.KEY=VALUE",
        help="override a single config value",
    )


def _override(value):
    try:
        dotted, val = value.split("=", 1)
        section, key = dotted.split(".", 1)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected SECTION.KEY=VALUE, got {value!r}"
        ) from None
    return section, key, val


def build_parser():
    parser = _Parser(prog="crosslex", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("filter-corpus", parents=[], help="keep lines containing seed terms")
    _add_common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--seeds", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_filter_corpus)

    p = sub.add_parser("train-embeddings", help="train SGNS vectors on a corpus")
    _add_common(p)
    p.add_argument("--corpus", required=True)
    p.add_argument("--language", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_train_embeddings)

    p = sub.add_parser("align", help="fit CCA hub alignment from lexicons")
    _add_common(p)
    p.add_argument("--embeddings", required=True, action="append",
                   type=_lang_path_pair, metavar="LANG=PATH")
    p.add_argument("--lexicon", required=True, action="append",
                   type=_lang_path_pair, metavar="LANG=PATH",
                   help="pivot-to-LANG lexicon TSV")
    p.add_argument("--pivot")
    p.add_argument("--holdout", action="store_true",
                   help="split off a validation lexicon per language")
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_align)

    p = sub.add_parser("knn", help="nearest neighbors in the shared space")
    _add_common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--embeddings", required=True, action="append",
                   type=_lang_path_pair, metavar="LANG=PATH")
    p.add_argument("--word", required=True)
    p.add_argument("--lang", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_knn)

    p = sub.add_parser("bli", help="precision@k against validation lexicons")
    _add_common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--embeddings", required=True, action="append",
                   type=_lang_path_pair, metavar="LANG=PATH")
    p.add_argument("--validation", required=True, action="append",
                   type=_lang_path_pair, metavar="LANG=PATH")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--detailed", action="store_true",
                   help="emit per-word neighbor records before the summary")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_bli)

    p = sub.add_parser("mine-rules", help="mine association rules from a dataset")
    _add_common(p)
    p.add_argument("--dataset", required=True)
    p.add_argument("--language", required=True)
    p.add_argument("--class", dest="class_filter", default="all",
                   choices=["hate", "non-hate", "all"])
    p.add_argument("--output")
    p.set_defaults(func=_cmd_mine_rules)

    p = sub.add_parser("context-sim", help="cross-lingual context similarity report")
    _add_common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--embeddings", required=True, action="append",
                   type=_lang_path_pair, metavar="LANG=PATH")
    p.add_argument("--dataset", required=True, action="append",
                   type=_lang_path_pair, metavar="LANG=PATH")
    p.add_argument("--seed-terms", required=True,
                   help="comma-separated seed words")
    p.add_argument("--source-lang", required=True)
    p.add_argument("--class", dest="class_filter", default="hate",
                   choices=["hate", "non-hate"])
    p.add_argument("--output")
    p.set_defaults(func=_cmd_context_sim)

    p = sub.add_parser("classify", help="zero-shot cross-lingual classification")
    _add_common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--embeddings", required=True, action="append",
                   type=_lang_path_pair, metavar="LANG=PATH")
    p.add_argument("--train", required=True, type=_lang_path_pair,
                   metavar="LANG=PATH")
    p.add_argument("--test", required=True, type=_lang_path_pair,
                   metavar="LANG=PATH")
    p.add_argument("--monolingual", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("report", help="flatten a JSON-lines report into TSV")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on usage errors and --version
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if not getattr(args, "func", None):
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ConfigurationError as err:
        print(f"crosslex: configuration error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except CrosslexError as err:
        print(f"crosslex: error: {err}", file=sys.stderr)
        return EXIT_DATA
    except OSError as err:
        print(f"crosslex: i/o error: {err}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
