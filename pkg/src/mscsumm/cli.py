"""Command-line entry point: ``mscsumm summarize | benchmark | demo | convert-lexicon | convert-embeddings``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import pipeline
from .evaluation.rouge import score_all
from .pipeline import DEMO_DIR, SYSTEMS, PipelineConfig, PipelineError

log = logging.getLogger("mscsumm")

# flag dest -> PipelineConfig field
_FIELDS = {
    "n": "n", "z": "z", "lam": "lam", "r": "r", "budget": "budget", "k_paths": "K", "window": "window",
    "lsa_dims": "lsa_dims", "k_final": "k_final", "sim_threshold": "sim_threshold", "seed": "seed",
    "embeddings": "embeddings", "lm": "lm", "lexicon": "lexicon", "stopwords": "stopwords",
    "fillers": "fillers", "tagger": "tagger", "format": "format", "resources": "resources",
}
# spellings accepted in JSON config files
_ALIASES = {"lambda": "lam", "k_paths": "K", "k": "K", "preset": None}


def _pipeline_flags(p: argparse.ArgumentParser) -> None:
    # defaults stay None so config files can fill the gaps and flags still win
    p.add_argument("--preset", choices=sorted(pipeline.PRESETS), default=None, help="parameter preset (default: ami)")
    p.add_argument("--config", help="JSON file with the same keys as the flags")
    p.add_argument("--n", type=int, help="number of utterance communities")
    p.add_argument("--z", type=int, help="minimum words in a compression")
    p.add_argument("--lambda", dest="lam", type=float, help="weight of the cluster coverage term")
    p.add_argument("--r", type=float, help="cost scaling exponent in greedy selection")
    p.add_argument("--budget", type=int, help="summary size in words")
    p.add_argument("--k-paths", type=int, help="shortest paths enumerated per community")
    p.add_argument("--window", type=int, help="co-occurrence window of the word graph")
    p.add_argument("--lsa-dims", type=int)
    p.add_argument("--k-final", type=int, help="embedding clusters for the selection objective")
    p.add_argument("--sim-threshold", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--embeddings", help="word vectors (.txt text format, .bin word2vec binary)")
    p.add_argument("--lm", help="ARPA language model")
    p.add_argument("--lexicon", help="lexicon dump (see convert-lexicon)")
    p.add_argument("--stopwords", help="stopword list, one per line")
    p.add_argument("--fillers", help="filler list, one per line")
    p.add_argument("--tagger", help="'lexicon' (bundled), 'pretagged', or a word<TAB>TAGS file")
    p.add_argument("--format", choices=("plain", "json"))
    p.add_argument("--resources", help="default resource directory (overrides $MSCG_RESOURCES)")
    p.add_argument("--debug", action="store_true", help="write diagnostics JSON")


def build_config(args: argparse.Namespace) -> PipelineConfig:
    file_values: dict = {}
    preset = args.preset
    if args.config:
        raw = pipeline.load_config_file(args.config)
        preset = preset or raw.get("preset")
        for key, value in raw.items():
            key = _ALIASES.get(key, key) if key in _ALIASES else key
            if key is not None:
                file_values[key] = value
    config = PipelineConfig.preset(preset or "ami")
    try:
        config = config.update(file_values)
    except (TypeError, ValueError) as exc:
        raise PipelineError("cli", "-", str(exc)) from exc
    flags = {field: getattr(args, dest) for dest, field in _FIELDS.items() if getattr(args, dest, None) is not None}
    config = config.update(flags)
    try:
        config.validate()
    except ValueError as exc:
        raise PipelineError("cli", "-", str(exc)) from exc
    return config


def cmd_summarize(args) -> int:
    config = build_config(args)
    result = pipeline.summarize(config, args.transcript, debug=args.debug)
    if args.debug:
        out = Path(args.debug_out or f"{result.meeting_id}.diagnostics.json")
        out.write_text(json.dumps(result.diagnostics, indent=2, default=str), encoding="utf-8")
        log.info("diagnostics written to %s", out)
    if not result.sentences:
        print(f"error [select] {result.meeting_id}: no summary produced", file=sys.stderr)
        return 1
    print(result.text)
    return 0


def cmd_demo(args) -> int:
    if args.preset is None:
        args.preset = "demo"
    config = build_config(args)
    result = pipeline.summarize(config, DEMO_DIR / "meeting.txt", debug=args.debug)
    if not result.sentences:
        return 1
    print(result.text)
    ref = (DEMO_DIR / "meeting.ref0").read_text(encoding="utf-8")
    scores = score_all(result.text, [ref])
    print()
    for name, s in scores.items():
        print(f"{name}\tR={s.recall:.4f}\tP={s.precision:.4f}\tF1={s.f1:.4f}")
    return 0


def cmd_benchmark(args) -> int:
    config = build_config(args)
    systems = [s.strip() for s in args.systems.split(",") if s.strip()] if args.systems else list(SYSTEMS)
    report = pipeline.benchmark(config, args.corpus, args.references, systems, jobs=args.jobs)
    if args.out:
        tsv, js = report.write(args.out)
        log.info("wrote %s and %s", tsv, js)
    print(report.to_tsv(), end="")
    return 0 if report.systems else 1


def cmd_convert_lexicon(args) -> int:
    from .resources.lexicon import convert_wordnet

    lex = convert_wordnet(args.wordnet_dir, args.out)
    print(f"wrote {len(lex.synsets)} synsets to {args.out}")
    return 0


def cmd_convert_embeddings(args) -> int:
    from .resources.embeddings import load_embeddings, save_embeddings

    store = load_embeddings(args.src, args.src_format)
    save_embeddings(store, args.dst, args.dst_format)
    print(f"wrote {len(store)} vectors to {args.dst}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mscsumm", description="Abstractive meeting summarization")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summarize", help="summarize one transcript")
    p.add_argument("transcript")
    _pipeline_flags(p)
    p.add_argument("--debug-out", help="diagnostics path (default: <meeting>.diagnostics.json)")
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("demo", help="summarize the bundled synthetic meeting and score it")
    _pipeline_flags(p)
    p.add_argument("--debug-out")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("benchmark", help="score our system and the baselines on a corpus")
    p.add_argument("corpus", help="directory of transcripts (<meeting>.txt or .json)")
    p.add_argument("references", help="directory of <meeting>.refN reference summaries")
    _pipeline_flags(p)
    p.add_argument("--systems", help=f"comma separated subset of {','.join(SYSTEMS)}")
    p.add_argument("--out", help="output prefix for the .tsv and .json reports")
    p.add_argument("--jobs", type=int, default=1, help="meetings processed in parallel")
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("convert-lexicon", help="convert a WordNet dict/ directory to a lexicon dump")
    p.add_argument("wordnet_dir")
    p.add_argument("out")
    p.set_defaults(func=cmd_convert_lexicon)

    p = sub.add_parser("convert-embeddings", help="convert embeddings between text and binary formats")
    p.add_argument("src")
    p.add_argument("dst")
    p.add_argument("--src-format", choices=("text", "binary"), default="binary")
    p.add_argument("--dst-format", choices=("text", "binary"), default="text")
    p.set_defaults(func=cmd_convert_embeddings)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except PipelineError as exc:
        print(f"error {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error [{args.command}] -: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
