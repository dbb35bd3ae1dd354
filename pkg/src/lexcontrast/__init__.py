"""Two-corpus near-synonym contrast toolkit.

Ingest PoS-tagged vertical corpora, compare word frequencies with
log-likelihood keyness, extract relation collocates with a sketch grammar,
split them into common/only patterns, and profile event structure from
aspectual markers.
"""
from importlib import resources
from pathlib import Path

from .contrast import (
    EventMarkerLexicon,
    EventProfile,
    KeynessResult,
    common_patterns,
    contrast_table,
    event_profile,
    keyness_table,
    load_field_map,
    load_lexicon,
    only_patterns,
    profile_from_evidence,
)
from .corpus import Corpus, Sentence, Token, corpus_summary, parse_vertical, read_vertical, write_vertical
from .index import FrequencyIndex, build_index, positions, tagged_freq, window_collocates, word_freq
from .kwic import concordance, render_kwic
from .report import cross_corpus_report
from .sketch import SketchGrammar, load_grammar, match_relations, parse_grammar, word_sketch
from .stats import (
    expected_frequencies,
    log_likelihood,
    mutual_information,
    normalized_frequency,
    significance_level,
    t_score,
)

__version__ = "0.1.0"


def data_path(name: str) -> Path:
    """Path of a bundled data file (sample corpora, grammar, lexicon, field map)."""
    return Path(str(resources.files(__name__).joinpath("data", name)))


__all__ = [
    "Corpus", "Sentence", "Token", "FrequencyIndex", "SketchGrammar", "EventMarkerLexicon",
    "EventProfile", "KeynessResult",
    "parse_vertical", "read_vertical", "write_vertical", "corpus_summary",
    "build_index", "word_freq", "tagged_freq", "positions", "window_collocates",
    "expected_frequencies", "log_likelihood", "significance_level", "normalized_frequency",
    "mutual_information", "t_score",
    "parse_grammar", "load_grammar", "match_relations", "word_sketch",
    "keyness_table", "common_patterns", "only_patterns", "contrast_table", "event_profile",
    "profile_from_evidence", "load_lexicon", "load_field_map",
    "concordance", "render_kwic", "cross_corpus_report", "data_path",
]
