"""Command-line interface: ``lexcontrast <subcommand> ...``.

Exit status: 0 success, 1 analysis or input error, 2 usage error.  Any long
option may also come from a ``key = value`` config file (``--config`` or
``$LEXCONTRAST_CONFIG``); the command line wins.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import data_path
from .contrast import (
    KeynessResult,
    contrast_table,
    event_profile,
    load_field_map,
    load_lexicon,
)
from .corpus import Corpus, CorpusFormatError, corpus_summary, read_vertical
from .index import FrequencyIndex, build_index, load_index, save_index, word_freq
from .kwic import DEFAULT_MAX_LINES, DEFAULT_WIDTH, concordance, render_kwic, render_kwic_tsv
from .report import (
    contrast_dict,
    cross_corpus_report,
    keyness_dict,
    profile_dict,
    record_dict,
    render_json,
    render_text,
    report_dict,
    table,
)
from .sketch import GrammarError, load_grammar, word_sketch
from .stats import log_likelihood

CONFIG_ENV = "LEXCONTRAST_CONFIG"
SAMPLE = {"corpus_a": "sample_cna.vert", "corpus_b": "sample_xin.vert", "name_a": "CNA", "name_b": "XIN",
          "node_a": "谈判", "node_b": "协商", "field_map": "fields.tsv"}


class AnalysisError(Exception):
    """Domain failure reported with exit status 1."""


# -- parser ---------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "machine"), default="text",
                   help="output layout: human-readable text or JSON (default: text)")
    p.add_argument("-o", "--output", metavar="PATH", help="write output to PATH instead of stdout")
    p.add_argument("--config", metavar="PATH", help=f"key = value defaults file (also ${CONFIG_ENV})")
    return p


def _corpus_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("corpus", help="vertical corpus file (surface<TAB>pos per line)")
    p.add_argument("--name", help="corpus name (default: file stem)")
    p.add_argument("--index", metavar="PATH", help="index cache; rebuilt when missing or stale")
    p.add_argument("--workers", type=int, default=1, help="threads for index building (default: 1)")


def _grammar_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grammar", metavar="PATH", help="sketch grammar file (default: bundled grammar)")


def _lexicon_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lexicon", metavar="PATH", help="marker lexicon TSV (default: bundled lexicon)")
    p.add_argument("--strong-threshold", type=float, default=10.0, help="NF for a strong level (default: 10)")
    p.add_argument("--weak-threshold", type=float, default=0.5, help="NF for a weak level (default: 0.5)")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="lexcontrast", description="Compare two near-synonyms across two tagged corpora."
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("index", parents=[common], help="summarise a corpus and persist its index")
    _corpus_args(p)

    p = sub.add_parser("keyness", parents=[common], help="log-likelihood keyness of words across two corpora")
    p.add_argument("words", nargs="*", help="words to compare")
    p.add_argument("--corpus-a", metavar="PATH", help="first corpus")
    p.add_argument("--corpus-b", metavar="PATH", help="second corpus")
    p.add_argument("--name-a", help="name of the first corpus (default: file stem, or A)")
    p.add_argument("--name-b", help="name of the second corpus (default: file stem, or B)")
    p.add_argument("--manual", nargs=4, type=int, metavar=("A", "B", "N1", "N2"),
                   help="use raw counts: frequency in A, in B, and the two corpus sizes")
    p.add_argument("--word", default="(manual)", help="row label for --manual (default: (manual))")

    p = sub.add_parser("sketch", parents=[common], help="word sketch (relation collocates) for one node")
    _corpus_args(p)
    p.add_argument("node", help="node word (surface form)")
    _grammar_arg(p)
    p.add_argument("--relation", action="append", help="only this relation (repeatable)")
    p.add_argument("--top", type=int, default=0, help="at most N collocates per relation (0 = all)")

    p = sub.add_parser("diff", parents=[common], help="common/only patterns of two nodes in one corpus")
    _corpus_args(p)
    p.add_argument("node_a", help="first node word")
    p.add_argument("node_b", help="second node word")
    _grammar_arg(p)
    p.add_argument("--relation", action="append", help="only this relation (repeatable)")
    p.add_argument("--exclusivity-max", type=int, default=0,
                   help="max joint frequency with the other node still counted as 'only' (default: 0)")

    p = sub.add_parser("profile", parents=[common], help="event-structure profile of a node")
    _corpus_args(p)
    p.add_argument("node", help="node word")
    _lexicon_args(p)

    p = sub.add_parser("kwic", parents=[common], help="keyword-in-context concordance")
    _corpus_args(p)
    p.add_argument("node", help="node word")
    p.add_argument("--width", type=int, default=DEFAULT_WIDTH, help=f"tokens per side (default: {DEFAULT_WIDTH})")
    p.add_argument("--max-lines", type=int, default=DEFAULT_MAX_LINES,
                   help=f"maximum lines (default: {DEFAULT_MAX_LINES})")
    p.add_argument("--pos", help="only node occurrences with this tag; shows node as surface/pos")
    p.add_argument("--cross-sentence", action="store_true", help="borrow context from adjacent sentences")
    p.add_argument("--tsv", action="store_true", help="tab-separated left/node/right/location lines")
    p.add_argument("--gutter", type=int, default=40, help="display columns before the node (default: 40)")
    p.add_argument("--sep", default=" ", help="token separator in context (default: space)")

    p = sub.add_parser("report", parents=[common], help="full two-corpus, two-node report")
    p.add_argument("--sample", action="store_true", help="use the bundled sample corpora, nodes and field map")
    p.add_argument("--corpus-a", metavar="PATH", help="first corpus")
    p.add_argument("--corpus-b", metavar="PATH", help="second corpus")
    p.add_argument("--name-a", help="name of the first corpus (default: file stem)")
    p.add_argument("--name-b", help="name of the second corpus (default: file stem)")
    p.add_argument("--node-a", help="first node word")
    p.add_argument("--node-b", help="second node word")
    _grammar_arg(p)
    _lexicon_args(p)
    p.add_argument("--field-map", metavar="PATH", help="collocate<TAB>field file; adds a field section")
    p.add_argument("--exclusivity-max", type=int, default=0, help="only-pattern threshold (default: 0)")
    p.add_argument("--figures", metavar="DIR", help="also render PNG figures into DIR")
    p.add_argument("--workers", type=int, default=1, help="threads for index building (default: 1)")
    return parser


# -- config -------------------------------------------------------------------


def read_config(path: str | Path) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.lstrip("-").replace("-", "_")] = value
    return out


def _apply_config(parser: argparse.ArgumentParser, config: dict[str, str]) -> None:
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for sp in subparsers.choices.values():
        defaults = {}
        for action in sp._actions:
            if action.dest not in config or not action.option_strings:
                continue
            value = config[action.dest]
            if isinstance(action, argparse._StoreTrueAction):
                defaults[action.dest] = value.lower() in ("1", "true", "yes", "on")
            elif isinstance(action, argparse._AppendAction):
                defaults[action.dest] = [v.strip() for v in value.split(",") if v.strip()]
            elif action.nargs not in (None, "?"):
                defaults[action.dest] = [action.type(v) if action.type else v for v in value.split()]
            else:
                defaults[action.dest] = value  # argparse applies `type` to string defaults
        sp.set_defaults(**defaults)


# -- helpers ------------------------------------------------------------------


def _load_corpus(path: str, name: str | None) -> Corpus:
    return read_vertical(path, name or Path(path).stem)


def _load_indexed(args) -> tuple[Corpus, FrequencyIndex]:
    corpus = _load_corpus(args.corpus, args.name)
    if args.index:
        index, _ = load_index(args.index, corpus, args.workers)
    else:
        index = build_index(corpus, args.workers)
    return corpus, index


def _require(index: FrequencyIndex, node: str) -> None:
    if word_freq(index, node) == 0:
        raise AnalysisError(f"node {node!r} not found in corpus {index.corpus_name!r}")


def _grammar(args):
    return load_grammar(args.grammar or data_path("sketch.grammar"))


def _lexicon(args):
    return load_lexicon(args.lexicon or data_path("markers.tsv"))


def _emit(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- subcommands --------------------------------------------------------------


def cmd_index(args) -> str:
    corpus = _load_corpus(args.corpus, args.name)
    index = build_index(corpus, args.workers)
    if args.index:
        save_index(index, args.index)
    s = corpus_summary(corpus)
    doc = {
        "name": s.name,
        "tokens": s.token_count,
        "sentences": s.sentence_count,
        "documents": s.document_count,
        "distinct_surfaces": s.distinct_surfaces,
        "digest": index.digest,
        "tags": [{"tag": t, "count": c} for t, c in s.tag_inventory],
    }
    if args.format == "machine":
        return render_json(doc)
    lines = [f"corpus {s.name}: {s.token_count:,} tokens, {s.sentence_count:,} sentences, "
             f"{s.document_count:,} documents, {s.distinct_surfaces:,} distinct surfaces",
             f"digest {index.digest}"]
    if args.index:
        lines.append(f"index written to {args.index}")
    lines += table(["tag", "count"], [[t, c] for t, c in s.tag_inventory])
    return "\n".join(lines) + "\n"


def cmd_keyness(args, parser) -> str:
    if args.manual:
        a, b, n1, n2 = args.manual
        name_a, name_b = args.name_a or "A", args.name_b or "B"
        rows = [keyness_dict_row(args.word, log_likelihood(a, b, n1, n2))]
    else:
        if not (args.corpus_a and args.corpus_b and args.words):
            parser.error("keyness needs --manual A B N1 N2, or --corpus-a, --corpus-b and words")
        ca = _load_corpus(args.corpus_a, args.name_a)
        cb = _load_corpus(args.corpus_b, args.name_b)
        ia, ib = build_index(ca), build_index(cb)
        name_a, name_b = ca.name, cb.name
        if ia.total_tokens == 0 or ib.total_tokens == 0:
            raise AnalysisError("both corpora must contain tokens")
        rows = [keyness_dict_row(w, log_likelihood(word_freq(ia, w), word_freq(ib, w), ia.total_tokens,
                                                   ib.total_tokens)) for w in args.words]
    if args.format == "machine":
        return render_json({"corpus_a": name_a, "corpus_b": name_b, "rows": rows})
    return "\n".join(
        table(
            ["word", f"freq {name_a}", f"freq {name_b}", f"expected {name_a}", f"expected {name_b}", "LL", "sig."],
            [[r["word"], f"{r['freq_a']:,}", f"{r['freq_b']:,}", r["expected_a"], r["expected_b"],
              r["log_likelihood"], f"{r['significance']} {r['direction']}"] for r in rows],
            indent="",
        )
    ) + "\n"


def keyness_dict_row(word, score) -> dict:
    return keyness_dict(KeynessResult(word, score, "A", "B"))


def cmd_sketch(args) -> str:
    corpus, index = _load_indexed(args)
    _require(index, args.node)
    sk = word_sketch(index, corpus, args.node, _grammar(args))
    rels = args.relation or list(sk.relations)
    for r in rels:
        if r not in sk.relations:
            raise AnalysisError(f"relation {r!r} not in grammar")
    top = args.top or None
    doc = {
        "corpus": sk.corpus_name,
        "node": sk.node,
        "node_total": sk.node_total,
        "relations": {r: [record_dict(x) for x in sk.relations[r][:top]] for r in rels},
    }
    if args.format == "machine":
        return render_json(doc)
    lines = [f"[{sk.corpus_name}] word sketch of {sk.node} (node total {sk.node_total:,})"]
    for r, recs in doc["relations"].items():
        lines.append(f"{r}:")
        if recs:
            lines += table(["collocate", "F", "NF", "MI", "T"],
                           [[x["collocate"], x["f"], x["nf"], x["mi"], x["t"]] for x in recs])
        else:
            lines.append("  (none)")
    return "\n".join(lines) + "\n"


def cmd_diff(args) -> str:
    corpus, index = _load_indexed(args)
    _require(index, args.node_a)
    _require(index, args.node_b)
    grammar = _grammar(args)
    sk_a = word_sketch(index, corpus, args.node_a, grammar)
    sk_b = word_sketch(index, corpus, args.node_b, grammar)
    rels = args.relation or grammar.relation_names
    for r in rels:
        if r not in grammar.relation_names:
            raise AnalysisError(f"relation {r!r} not in grammar")
    tables = [contrast_dict(index.corpus_name, contrast_table(sk_a, sk_b, r, args.exclusivity_max)) for r in rels]
    if args.format == "machine":
        return render_json({"contrasts": tables})
    doc = {"corpora": [{"name": index.corpus_name, "tokens": index.total_tokens}] * 2,
           "nodes": [args.node_a, args.node_b], "keyness": [], "event_profiles": [], "contrasts": tables}
    text = render_text(doc)
    return text[text.index("== Contrast tables =="):]


def cmd_profile(args) -> str:
    corpus, index = _load_indexed(args)
    _require(index, args.node)
    prof = event_profile(index, corpus, args.node, _lexicon(args), args.strong_threshold, args.weak_threshold)
    doc = profile_dict(prof)
    if args.format == "machine":
        return render_json(doc)
    full = {"corpora": [{"name": index.corpus_name, "tokens": index.total_tokens}] * 2, "nodes": [args.node] * 2,
            "keyness": [], "event_profiles": [doc], "contrasts": []}
    text = render_text(full)
    return text[text.index("[", text.index("== Event profiles ==")):text.index("== Contrast tables ==")]


def cmd_kwic(args) -> str:
    corpus, index = _load_indexed(args)
    _require(index, args.node)
    lines = concordance(index, corpus, args.node, args.width, args.max_lines, args.pos, args.cross_sentence)
    if args.format == "machine":
        return render_json({
            "corpus": index.corpus_name,
            "node": args.node,
            "lines": [
                {"left": [t.surface for t in ln.left], "node": ln.node.surface, "pos": ln.node.pos,
                 "right": [t.surface for t in ln.right], "location": list(ln.location)}
                for ln in lines
            ],
        })
    if args.tsv:
        return render_kwic_tsv(lines, args.sep)
    return render_kwic(lines, args.gutter, args.sep)


def cmd_report(args, parser) -> tuple[str, str | None]:
    if args.sample:
        for key, value in SAMPLE.items():
            if getattr(args, key) is None:
                setattr(args, key, value if key.startswith(("name", "node")) else str(data_path(value)))
    missing = [f"--{k.replace('_', '-')}" for k in ("corpus_a", "corpus_b", "node_a", "node_b")
               if not getattr(args, k)]
    if missing:
        parser.error("report needs " + ", ".join(missing) + " (or --sample)")
    ca = _load_corpus(args.corpus_a, args.name_a)
    cb = _load_corpus(args.corpus_b, args.name_b)
    ia, ib = build_index(ca, args.workers), build_index(cb, args.workers)
    if ia.total_tokens == 0 or ib.total_tokens == 0:
        raise AnalysisError("both corpora must contain tokens")
    for node in (args.node_a, args.node_b):
        if word_freq(ia, node) == 0 and word_freq(ib, node) == 0:
            raise AnalysisError(f"node {node!r} not found in either corpus")
    field_map = load_field_map(args.field_map) if args.field_map else None
    rep = cross_corpus_report(ca, ia, cb, ib, args.node_a, args.node_b, _grammar(args), _lexicon(args),
                              field_map, args.strong_threshold, args.weak_threshold, args.exclusivity_max)
    doc = report_dict(rep)
    if args.figures:
        from .figures import render_figures

        for path in render_figures(doc, args.figures):
            print(f"figure: {path}", file=sys.stderr)
    text, machine = render_text(doc), render_json(doc)
    return (machine, text) if args.format == "machine" else (text, machine)


# -- entry point --------------------------------------------------------------


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if not argv:
        parser.print_usage(sys.stderr)
        print("lexcontrast: error: a subcommand is required", file=sys.stderr)
        return 2
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    config_path = known.config or os.environ.get(CONFIG_ENV)
    try:
        if config_path:
            _apply_config(parser, read_config(config_path))
    except (OSError, ValueError) as e:
        print(f"lexcontrast: cannot read config {config_path}: {e}", file=sys.stderr)
        return 1
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    sub = parser._subparsers._group_actions[0].choices[args.command]
    try:
        if args.command == "report":
            primary, sibling = cmd_report(args, sub)
            _emit(args, primary)
            if args.output:
                out = Path(args.output)
                other = ".txt" if args.format == "machine" else ".json"
                if out.suffix != other:
                    out.with_suffix(other).write_text(sibling, encoding="utf-8")
            return 0
        handler = {
            "index": cmd_index,
            "sketch": cmd_sketch,
            "diff": cmd_diff,
            "profile": cmd_profile,
            "kwic": cmd_kwic,
        }.get(args.command)
        text = handler(args) if handler else cmd_keyness(args, sub)
        _emit(args, text)
        return 0
    except SystemExit as e:
        return int(e.code or 0)
    except CorpusFormatError as e:
        print(f"lexcontrast: {e}", file=sys.stderr)
        return 1
    except GrammarError as e:
        print(f"lexcontrast: grammar error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"lexcontrast: cannot read {e.filename or ''}: {e.strerror or e}", file=sys.stderr)
        return 1
    except (AnalysisError, ValueError) as e:
        print(f"lexcontrast: {e}", file=sys.stderr)
        return 1


def main(argv: list[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
