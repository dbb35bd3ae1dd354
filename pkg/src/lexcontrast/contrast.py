"""Cross-corpus and cross-word comparisons.

* keyness tables for a word list over two indexes,
* common/only collocate partitions between two word sketches,
* event-structure profiles built from aspectual marker co-occurrence.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus import Corpus
from .index import FrequencyIndex, positions, word_freq
from .sketch import WordSketch
from .stats import CollocationRecord, KeynessScore, log_likelihood, normalized_frequency

# -- keyness ----------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class KeynessResult:
    word: str
    score: KeynessScore
    corpus_a_name: str
    corpus_b_name: str


def keyness_table(index_a: FrequencyIndex, index_b: FrequencyIndex, words: Sequence[str]) -> list[KeynessResult]:
    if index_a.total_tokens <= 0 or index_b.total_tokens <= 0:
        raise ValueError("both corpora must be non-empty")
    return [
        KeynessResult(
            w,
            log_likelihood(word_freq(index_a, w), word_freq(index_b, w), index_a.total_tokens, index_b.total_tokens),
            index_a.corpus_name,
            index_b.corpus_name,
        )
        for w in words
    ]


# -- common / only patterns -------------------------------------------------


@dataclass(frozen=True, slots=True)
class CommonRow:
    collocate: str
    a: CollocationRecord
    b: CollocationRecord


@dataclass(frozen=True)
class ContrastTable:
    node_a: str
    node_b: str
    relation: str
    common: tuple[CommonRow, ...]
    only_a: tuple[CollocationRecord, ...]
    only_b: tuple[CollocationRecord, ...]


def _exclusive(f_mine: int, f_other: int, exclusivity_max: int) -> bool:
    # f_other == 0 is always exclusive; below that, the other side must be at
    # or under the threshold while this side clears it (ties go to common).
    if f_mine == 0:
        return False
    return f_other == 0 or f_other <= exclusivity_max < f_mine


def _by_collocate(sketch: WordSketch, relation: str) -> dict[str, CollocationRecord]:
    return {r.collocate: r for r in sketch.records(relation)}


def common_patterns(
    sketch_a: WordSketch, sketch_b: WordSketch, relation: str, exclusivity_max: int = 0
) -> tuple[CommonRow, ...]:
    if relation not in sketch_a.relations or relation not in sketch_b.relations:
        return ()
    ra, rb = _by_collocate(sketch_a, relation), _by_collocate(sketch_b, relation)
    rows = [
        CommonRow(c, ra[c], rb[c])
        for c in ra.keys() & rb.keys()
        if not _exclusive(ra[c].f, rb[c].f, exclusivity_max) and not _exclusive(rb[c].f, ra[c].f, exclusivity_max)
    ]
    rows.sort(key=lambda r: (-min(r.a.nf, r.b.nf), r.collocate))
    return tuple(rows)


def only_patterns(
    sketch_a: WordSketch, sketch_b: WordSketch, relation: str, exclusivity_max: int = 0
) -> tuple[tuple[CollocationRecord, ...], tuple[CollocationRecord, ...]]:
    ra, rb = _by_collocate(sketch_a, relation), _by_collocate(sketch_b, relation)

    def side(mine, other):
        rows = [r for c, r in mine.items() if _exclusive(r.f, other[c].f if c in other else 0, exclusivity_max)]
        return tuple(sorted(rows, key=lambda r: (-r.nf, r.collocate)))

    return side(ra, rb), side(rb, ra)


def contrast_table(sketch_a: WordSketch, sketch_b: WordSketch, relation: str, exclusivity_max: int = 0) -> ContrastTable:
    only_a, only_b = only_patterns(sketch_a, sketch_b, relation, exclusivity_max)
    return ContrastTable(
        sketch_a.node,
        sketch_b.node,
        relation,
        common_patterns(sketch_a, sketch_b, relation, exclusivity_max),
        only_a,
        only_b,
    )


# -- event profiles ---------------------------------------------------------


class EventCategory(str, Enum):
    BOUNDARY_START = "boundary_start"
    ENDPOINT_REF = "endpoint_ref"
    PROCESS = "process"
    STATE = "state"
    STAGE = "stage"
    PUNCTUALITY = "punctuality"
    DISPOSAL = "disposal"


class Level(str, Enum):
    STRONG = "strong"
    WEAK = "weak"
    ABSENT = "absent"


SIDES = ("pre", "post", "either")


@dataclass(frozen=True, slots=True)
class MarkerEntry:
    marker: str
    category: EventCategory
    side: str
    max_distance: int

    def __post_init__(self) -> None:
        if self.side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}, got {self.side!r}")
        if self.max_distance < 1:
            raise ValueError("max_distance must be positive")


@dataclass(frozen=True)
class EventMarkerLexicon:
    entries: tuple[MarkerEntry, ...]

    def __post_init__(self) -> None:
        seen = set()
        for e in self.entries:
            if (e.marker, e.category) in seen:
                raise ValueError(f"duplicate lexicon entry {e.marker} / {e.category.value}")
            seen.add((e.marker, e.category))


def parse_lexicon(text: str) -> EventMarkerLexicon:
    """Parse ``marker<TAB>category<TAB>side<TAB>max_distance`` lines."""
    entries = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise ValueError(f"lexicon line {lineno}: expected 4 tab-separated fields")
        marker, cat, side, dist = (f.strip() for f in fields)
        try:
            entries.append(MarkerEntry(marker, EventCategory(cat), side, int(dist)))
        except ValueError as e:
            raise ValueError(f"lexicon line {lineno}: {e}") from None
    return EventMarkerLexicon(tuple(entries))


def load_lexicon(path: str | Path) -> EventMarkerLexicon:
    return parse_lexicon(Path(path).read_text(encoding="utf-8"))


def parse_field_map(text: str) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ValueError(f"field map line {lineno}: expected collocate<TAB>field")
        out[fields[0].strip()] = fields[1].strip()
    return out


def load_field_map(path: str | Path) -> dict[str, str]:
    return parse_field_map(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True, slots=True)
class MarkerEvidence:
    marker: str
    f: int
    nf: float


@dataclass(frozen=True)
class CategoryEvidence:
    total_f: int
    total_nf: float
    per_marker: tuple[MarkerEvidence, ...]


@dataclass(frozen=True)
class EventProfile:
    node: str
    corpus_name: str
    node_total: int
    evidence: dict[EventCategory, CategoryEvidence]
    levels: dict[EventCategory, Level]
    disposal: bool
    signature: str

    @property
    def endpoint_note(self) -> str:
        level = self.levels.get(EventCategory.ENDPOINT_REF, Level.ABSENT)
        return {
            Level.STRONG: "end point referenced",
            Level.WEAK: "end point unclear (weak evidence)",
            Level.ABSENT: "no end point evidence",
        }[level]


# glyphs per category; weak evidence is parenthesised, endpoint never drawn
_GLYPHS = (
    (EventCategory.BOUNDARY_START, "•"),
    (EventCategory.PUNCTUALITY, "/"),
    (EventCategory.PROCESS, "////"),
    (EventCategory.STATE, "____"),
    (EventCategory.STAGE, "^^^^"),
)


def classify(total_nf: float, strong_threshold: float, weak_threshold: float) -> Level:
    if total_nf >= strong_threshold:
        return Level.STRONG
    if total_nf >= weak_threshold:
        return Level.WEAK
    return Level.ABSENT


def render_signature(levels: Mapping[EventCategory, Level]) -> str:
    parts = []
    for cat, glyph in _GLYPHS:
        level = levels.get(cat, Level.ABSENT)
        if level is Level.STRONG:
            parts.append(glyph)
        elif level is Level.WEAK:
            parts.append(f"({glyph})")
    return " ".join(parts) if parts else "undetermined"


def profile_from_evidence(
    node: str,
    corpus_name: str,
    node_total: int,
    marker_counts: Mapping[EventCategory, Iterable[MarkerEvidence]],
    strong_threshold: float = 10.0,
    weak_threshold: float = 0.5,
) -> EventProfile:
    """Classify precomputed marker evidence (e.g. a published collocation table)."""
    if not 0 < weak_threshold < strong_threshold:
        raise ValueError("need 0 < weak_threshold < strong_threshold")
    evidence, levels = {}, {}
    for cat in EventCategory:
        items = tuple(marker_counts.get(cat, ()))
        total_nf = sum(m.nf for m in items)
        evidence[cat] = CategoryEvidence(sum(m.f for m in items), total_nf, items)
        levels[cat] = classify(total_nf, strong_threshold, weak_threshold)
    return EventProfile(
        node,
        corpus_name,
        node_total,
        evidence,
        levels,
        levels[EventCategory.DISPOSAL] is not Level.ABSENT,
        render_signature(levels),
    )


def _marker_hit(tokens, off: int, entry: MarkerEntry) -> bool:
    lo, hi = off - entry.max_distance, off + entry.max_distance
    if entry.side == "pre":
        hi = off - 1
    elif entry.side == "post":
        lo = off + 1
    return any(
        tokens[j].surface == entry.marker for j in range(max(lo, 0), min(hi, len(tokens) - 1) + 1) if j != off
    )


def event_profile(
    index: FrequencyIndex,
    corpus: Corpus,
    node: str,
    lexicon: EventMarkerLexicon,
    strong_threshold: float = 10.0,
    weak_threshold: float = 0.5,
) -> EventProfile:
    """Count, per marker, the node occurrences that have the marker nearby.

    A marker counts once per node occurrence when it sits on its permitted
    side within ``max_distance`` tokens in the same sentence.
    """
    node_total = word_freq(index, node)
    if node_total == 0:
        return profile_from_evidence(node, index.corpus_name, 0, {}, strong_threshold, weak_threshold)
    hits = [0] * len(lexicon.entries)
    for d, s, off in positions(index, node):
        tokens = corpus.sentence_at(d, s).tokens
        for i, entry in enumerate(lexicon.entries):
            if _marker_hit(tokens, off, entry):
                hits[i] += 1
    grouped: dict[EventCategory, list[MarkerEvidence]] = {}
    for entry, f in zip(lexicon.entries, hits):
        if f:
            grouped.setdefault(entry.category, []).append(
                MarkerEvidence(entry.marker, f, normalized_frequency(f, node_total))
            )
    return profile_from_evidence(node, index.corpus_name, node_total, grouped, strong_threshold, weak_threshold)


# -- semantic fields ---------------------------------------------------------


@dataclass(frozen=True, slots=True)
class FieldCount:
    field: str
    collocates: int
    total_f: int


UNMAPPED = "(unmapped)"


def field_aggregation(records: Iterable[CollocationRecord], field_map: Mapping[str, str]) -> tuple[FieldCount, ...]:
    """Group collocates by the analyst-supplied field label.

    ``collocates`` counts distinct words; ``total_f`` sums every record, so a
    collocate seen under two relations contributes both frequencies.
    """
    words: dict[str, set[str]] = {}
    freq: dict[str, int] = {}
    for r in records:
        field = field_map.get(r.collocate, UNMAPPED)
        words.setdefault(field, set()).add(r.collocate)
        freq[field] = freq.get(field, 0) + r.f
    rows = [FieldCount(k, len(words[k]), freq[k]) for k in words]
    rows.sort(key=lambda r: (r.field == UNMAPPED, -r.total_f, r.field))
    return tuple(rows)
