"""The full two-corpus, two-word comparison as one deterministic report.

Sections, in order: keyness of both words, event profiles per corpus,
common/only contrast tables per corpus and relation, and (with a field map)
semantic-field counts of the only-pattern collocates.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping

from .contrast import (
    ContrastTable,
    EventMarkerLexicon,
    EventProfile,
    KeynessResult,
    contrast_table,
    event_profile,
    field_aggregation,
    keyness_table,
)
from .corpus import Corpus
from .index import FrequencyIndex
from .kwic import display_width
from .sketch import SketchGrammar, word_sketch
from .stats import CollocationRecord, round_half_up

REPORT_FORMAT = "lexcontrast-report/1"


@dataclass(frozen=True)
class CrossCorpusReport:
    corpus_a: str
    corpus_b: str
    tokens_a: int
    tokens_b: int
    node_a: str
    node_b: str
    keyness: tuple[KeynessResult, ...]
    profiles: tuple[EventProfile, ...]
    contrasts: tuple[tuple[str, ContrastTable], ...]
    fields: tuple[tuple[str, str, tuple], ...] | None
    settings: Mapping[str, Any]


def cross_corpus_report(
    corpus_a: Corpus,
    index_a: FrequencyIndex,
    corpus_b: Corpus,
    index_b: FrequencyIndex,
    node_a: str,
    node_b: str,
    grammar: SketchGrammar,
    lexicon: EventMarkerLexicon,
    field_map: Mapping[str, str] | None = None,
    strong_threshold: float = 10.0,
    weak_threshold: float = 0.5,
    exclusivity_max: int = 0,
) -> CrossCorpusReport:
    keyness = tuple(keyness_table(index_a, index_b, [node_a, node_b]))
    profiles = tuple(
        event_profile(index, corpus, node, lexicon, strong_threshold, weak_threshold)
        for corpus, index in ((corpus_a, index_a), (corpus_b, index_b))
        for node in (node_a, node_b)
    )
    contrasts = []
    fields = [] if field_map else None
    for corpus, index in ((corpus_a, index_a), (corpus_b, index_b)):
        sk_a = word_sketch(index, corpus, node_a, grammar)
        sk_b = word_sketch(index, corpus, node_b, grammar)
        tables = [contrast_table(sk_a, sk_b, rel, exclusivity_max) for rel in grammar.relation_names]
        contrasts.extend((index.corpus_name, t) for t in tables)
        if field_map:
            for node, attr in ((node_a, "only_a"), (node_b, "only_b")):
                records = [r for t in tables for r in getattr(t, attr)]
                fields.append((index.corpus_name, node, field_aggregation(records, field_map)))
    settings = {
        "strong_threshold": strong_threshold,
        "weak_threshold": weak_threshold,
        "exclusivity_max": exclusivity_max,
        "relations": grammar.relation_names,
    }
    return CrossCorpusReport(
        index_a.corpus_name,
        index_b.corpus_name,
        index_a.total_tokens,
        index_b.total_tokens,
        node_a,
        node_b,
        keyness,
        profiles,
        tuple(contrasts),
        tuple(fields) if fields is not None else None,
        settings,
    )


# -- structured form ----------------------------------------------------------


def _num(x: float | None) -> float | None:
    return None if x is None else float(round_half_up(x))


def keyness_dict(k: KeynessResult) -> dict:
    s = k.score
    return {
        "word": k.word,
        "freq_a": s.a,
        "freq_b": s.b,
        "tokens_a": s.n1,
        "tokens_b": s.n2,
        "expected_a": _num(s.e1),
        "expected_b": _num(s.e2),
        "log_likelihood": _num(s.ll),
        "significance": s.significance,
        "direction": s.direction.value,
    }


def record_dict(r: CollocationRecord) -> dict:
    return {"collocate": r.collocate, "f": r.f, "nf": _num(r.nf), "mi": _num(r.mi), "t": _num(r.t)}


def profile_dict(p: EventProfile) -> dict:
    return {
        "corpus": p.corpus_name,
        "node": p.node,
        "node_total": p.node_total,
        "categories": [
            {
                "category": cat.value,
                "level": p.levels[cat].value,
                "total_f": ev.total_f,
                "total_nf": _num(ev.total_nf),
                "markers": [{"marker": m.marker, "f": m.f, "nf": _num(m.nf)} for m in ev.per_marker],
            }
            for cat, ev in p.evidence.items()
        ],
        "disposal": p.disposal,
        "signature": p.signature,
        "endpoint": p.endpoint_note,
    }


def contrast_dict(corpus: str, t: ContrastTable) -> dict:
    return {
        "corpus": corpus,
        "relation": t.relation,
        "node_a": t.node_a,
        "node_b": t.node_b,
        "common": [
            {
                "collocate": row.collocate,
                "f_a": row.a.f,
                "nf_a": _num(row.a.nf),
                "mi_a": _num(row.a.mi),
                "f_b": row.b.f,
                "nf_b": _num(row.b.nf),
                "mi_b": _num(row.b.mi),
            }
            for row in t.common
        ],
        "only_a": [record_dict(r) for r in t.only_a],
        "only_b": [record_dict(r) for r in t.only_b],
    }


def report_dict(rep: CrossCorpusReport) -> dict:
    doc = {
        "format": REPORT_FORMAT,
        "corpora": [
            {"name": rep.corpus_a, "tokens": rep.tokens_a},
            {"name": rep.corpus_b, "tokens": rep.tokens_b},
        ],
        "nodes": [rep.node_a, rep.node_b],
        "settings": dict(rep.settings),
        "keyness": [keyness_dict(k) for k in rep.keyness],
        "event_profiles": [profile_dict(p) for p in rep.profiles],
        "contrasts": [contrast_dict(c, t) for c, t in rep.contrasts],
    }
    if rep.fields is not None:
        doc["semantic_fields"] = [
            {
                "corpus": corpus,
                "node": node,
                "fields": [{"field": f.field, "collocates": f.collocates, "total_f": f.total_f} for f in counts],
            }
            for corpus, node, counts in rep.fields
        ]
    return doc


def render_json(doc: Mapping) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


# -- text form ---------------------------------------------------------------


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.2f}"
    return str(v)


def table(header: list[str], rows: list[list], indent: str = "  ") -> list[str]:
    """Left-aligned columns, padded by display width so CJK text lines up."""
    cells = [header] + [[_cell(v) for v in row] for row in rows]
    widths = [max(display_width(r[i]) for r in cells) for i in range(len(header))]
    out = []
    for r in cells:
        padded = [c + " " * (w - display_width(c)) for c, w in zip(r, widths)]
        out.append((indent + "  ".join(padded)).rstrip())
    return out


def render_text(doc: Mapping) -> str:
    a, b = doc["corpora"]
    lines = [
        f"Cross-corpus contrast: {doc['nodes'][0]} vs {doc['nodes'][1]}",
        f"Corpora: {a['name']} ({a['tokens']:,} tokens) / {b['name']} ({b['tokens']:,} tokens)",
        "",
        f"== Keyness ({a['name']} vs {b['name']}) ==",
    ]
    lines += table(
        ["word", f"freq {a['name']}", f"freq {b['name']}", f"expected {a['name']}", f"expected {b['name']}", "LL",
         "sig."],
        [
            [
                k["word"],
                f"{k['freq_a']:,}",
                f"{k['freq_b']:,}",
                k["expected_a"],
                k["expected_b"],
                k["log_likelihood"],
                f"{k['significance']} {k['direction']}",
            ]
            for k in doc["keyness"]
        ],
    )
    lines += ["", "== Event profiles =="]
    for p in doc["event_profiles"]:
        lines.append(f"[{p['corpus']}] {p['node']} (node total {p['node_total']:,})")
        rows = []
        for c in p["categories"]:
            markers = ", ".join(f"{m['marker']} {m['f']} ({m['nf']:.2f})" for m in c["markers"])
            rows.append([c["category"], c["level"], c["total_f"], c["total_nf"], markers or "-"])
        lines += table(["category", "level", "F", "NF", "markers (F, NF)"], rows)
        lines.append(f"  disposal: {'yes' if p['disposal'] else 'no'}")
        lines.append(f"  signature: {p['signature']}  [{p['endpoint']}]")
        lines.append("")
    lines.append("== Contrast tables ==")
    for c in doc["contrasts"]:
        na, nb = c["node_a"], c["node_b"]
        lines.append(f"[{c['corpus']}] {c['relation']}")
        lines.append("  common:")
        if c["common"]:
            lines += table(
                ["collocate", f"F {na}", f"NF {na}", f"MI {na}", f"F {nb}", f"NF {nb}", f"MI {nb}"],
                [[r["collocate"], r["f_a"], r["nf_a"], r["mi_a"], r["f_b"], r["nf_b"], r["mi_b"]] for r in c["common"]],
                indent="    ",
            )
        else:
            lines.append("    (none)")
        for label, key in ((na, "only_a"), (nb, "only_b")):
            lines.append(f"  only {label}:")
            if c[key]:
                lines += table(
                    ["collocate", "F", "NF", "MI", "T"],
                    [[r["collocate"], r["f"], r["nf"], r["mi"], r["t"]] for r in c[key]],
                    indent="    ",
                )
            else:
                lines.append("    (none)")
        lines.append("")
    if "semantic_fields" in doc:
        lines.append("== Semantic fields of only-pattern collocates ==")
        for s in doc["semantic_fields"]:
            lines.append(f"[{s['corpus']}] {s['node']}")
            lines += table(
                ["field", "collocates", "F"], [[f["field"], f["collocates"], f["total_f"]] for f in s["fields"]]
            )
        lines.append("")
    return "\n".join(lines).rstrip("\n") + "\n"
