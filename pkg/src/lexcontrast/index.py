"""Frequency and positional index over a :class:`~lexcontrast.corpus.Corpus`."""
from __future__ import annotations

import hashlib
import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .corpus import Corpus, Document, write_vertical
from .tags import TagPattern

Position = tuple[int, int, int]  # (document, sentence, offset)

INDEX_FORMAT = "lexcontrast-index/1"


@dataclass(frozen=True)
class FrequencyIndex:
    corpus_name: str
    word_freq: Mapping[str, int]
    tagged_freq: Mapping[tuple[str, str], int]
    postings: Mapping[str, tuple[Position, ...]]
    total_tokens: int
    metadata_only: bool = False
    digest: str = field(default="", compare=False)

    @classmethod
    def from_counts(cls, corpus_name: str, counts: Mapping[str, int], total_tokens: int) -> FrequencyIndex:
        """Index backed only by published counts (no text, no postings)."""
        if total_tokens < 0 or any(c < 0 for c in counts.values()):
            raise ValueError("counts must be non-negative")
        return cls(corpus_name, dict(counts), {}, {}, total_tokens, metadata_only=True)


def word_freq(index: FrequencyIndex, word: str) -> int:
    return index.word_freq.get(word, 0)


def tagged_freq(index: FrequencyIndex, word: str, pos: str) -> int:
    return index.tagged_freq.get((word, pos), 0)


def positions(index: FrequencyIndex, word: str) -> tuple[Position, ...]:
    """Occurrences of ``word``; text-level analyses all start here."""
    if index.metadata_only:
        raise ValueError(f"index {index.corpus_name!r} holds counts only; this analysis needs the corpus text")
    return index.postings.get(word, ())


def _scan_document(doc: Document):
    wf: Counter[str] = Counter()
    tf: Counter[tuple[str, str]] = Counter()
    post: dict[str, list[Position]] = {}
    for sent in doc.sentences:
        for tok in sent.tokens:
            wf[tok.surface] += 1
            tf[tok.surface, tok.pos] += 1
            post.setdefault(tok.surface, []).append((doc.index, sent.index, tok.offset))
    return wf, tf, post


def build_index(corpus: Corpus, workers: int = 1) -> FrequencyIndex:
    """Count words, (word, tag) pairs and postings.

    With ``workers > 1`` documents are scanned on a thread pool; partial
    results are merged in document order, so the output does not depend on
    the worker count.
    """
    if corpus.metadata_only:
        raise ValueError(f"corpus {corpus.name!r} is metadata-only; use FrequencyIndex.from_counts")
    docs = corpus.documents
    if workers > 1 and len(docs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_document, docs))
    else:
        parts = [_scan_document(d) for d in docs]

    wf: Counter[str] = Counter()
    tf: Counter[tuple[str, str]] = Counter()
    post: dict[str, list[Position]] = {}
    for pwf, ptf, ppost in parts:
        wf.update(pwf)
        tf.update(ptf)
        for w, ps in ppost.items():
            post.setdefault(w, []).extend(ps)
    return FrequencyIndex(
        corpus.name,
        dict(sorted(wf.items())),
        dict(sorted(tf.items())),
        {w: tuple(post[w]) for w in sorted(post)},
        corpus.token_count,
        digest=corpus_digest(corpus),
    )


def window_collocates(
    index: FrequencyIndex,
    corpus: Corpus,
    node: str,
    left: int,
    right: int,
    pos_filter: str | TagPattern | None = None,
) -> dict[str, int]:
    """Joint frequencies of tokens within ``left``/``right`` of each node occurrence.

    Windows stop at sentence boundaries; every token in a window counts once
    per node occurrence.
    """
    if left < 0 or right < 0 or left + right < 1:
        raise ValueError(f"bad window ({left}, {right})")
    if isinstance(pos_filter, str):
        pos_filter = TagPattern.parse(pos_filter)
    counts: Counter[str] = Counter()
    for d, s, off in positions(index, node):
        toks = corpus.sentence_at(d, s).tokens
        for j in range(max(0, off - left), min(len(toks), off + right + 1)):
            if j == off:
                continue
            if pos_filter is None or pos_filter.matches(toks[j].pos):
                counts[toks[j].surface] += 1
    return dict(sorted(counts.items()))


def corpus_digest(corpus: Corpus) -> str:
    h = hashlib.sha256()
    h.update(corpus.name.encode("utf-8") + b"\0")
    h.update(write_vertical(corpus).encode("utf-8"))
    return h.hexdigest()


def save_index(index: FrequencyIndex, path: str | Path) -> None:
    payload = {
        "format": INDEX_FORMAT,
        "digest": index.digest,
        "corpus_name": index.corpus_name,
        "total_tokens": index.total_tokens,
        "word_freq": index.word_freq,
        "tagged_freq": [[w, p, c] for (w, p), c in index.tagged_freq.items()],
        "postings": {w: [list(p) for p in ps] for w, ps in index.postings.items()},
    }
    Path(path).write_text(json.dumps(payload, ensure_ascii=False, separators=(",", ":")), encoding="utf-8")


def load_index(path: str | Path, corpus: Corpus, workers: int = 1) -> tuple[FrequencyIndex, bool]:
    """Load a cached index for ``corpus``; rebuild it when missing or stale.

    Returns ``(index, from_cache)``.  A rebuilt index is written back to ``path``.
    """
    path = Path(path)
    digest = corpus_digest(corpus)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
        if payload.get("format") != INDEX_FORMAT or payload.get("digest") != digest:
            raise ValueError("stale index")
        index = FrequencyIndex(
            payload["corpus_name"],
            payload["word_freq"],
            {(w, p): c for w, p, c in payload["tagged_freq"]},
            {w: tuple(tuple(p) for p in ps) for w, ps in payload["postings"].items()},
            payload["total_tokens"],
            digest=digest,
        )
        return index, True
    except (OSError, ValueError, KeyError, TypeError):
        index = build_index(corpus, workers)
        save_index(index, path)
        return index, False
