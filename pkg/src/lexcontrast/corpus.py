"""Corpus data model and the vertical (one token per line) interchange format.

A vertical file holds ``surface<TAB>pos[<TAB>extra...]`` lines.  A blank line
closes a sentence, ``#`` starts a comment, and ``# doc: <id>`` opens a new
document.  Columns past the second are kept on the token but never used by
the statistics.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

DOC_COMMENT = re.compile(r"^#\s*doc:\s*(.*?)\s*$")


@dataclass(frozen=True, slots=True)
class Token:
    surface: str
    pos: str
    offset: int = 0
    extra: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.surface.strip():
            raise ValueError("token surface is empty")
        if not self.pos.strip():
            raise ValueError("token pos is empty")
        if self.offset < 0:
            raise ValueError(f"negative token offset {self.offset}")


@dataclass(frozen=True, slots=True)
class Sentence:
    tokens: tuple[Token, ...]
    index: int = 0

    def __post_init__(self) -> None:
        for i, tok in enumerate(self.tokens):
            if tok.offset != i:
                raise ValueError(f"token offset {tok.offset} at position {i}")

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]], index: int = 0) -> Sentence:
        return cls(tuple(Token(s, p, i) for i, (s, p) in enumerate(pairs)), index)


@dataclass(frozen=True, slots=True)
class Document:
    sentences: tuple[Sentence, ...]
    index: int = 0
    id: str | None = None

    def __len__(self) -> int:
        return len(self.sentences)


@dataclass(frozen=True)
class Corpus:
    """A named, immutable token stream.

    ``metadata_only`` corpora carry a name and token count but no text; they
    exist so published frequency tables can be compared without the source.
    """

    name: str
    documents: tuple[Document, ...] = ()
    token_count: int = -1
    metadata_only: bool = False

    def __post_init__(self) -> None:
        counted = sum(len(s) for d in self.documents for s in d.sentences)
        if self.metadata_only:
            if self.documents:
                raise ValueError("metadata-only corpus cannot hold documents")
            if self.token_count < 0:
                raise ValueError("metadata-only corpus needs a token_count")
        elif self.token_count < 0:
            object.__setattr__(self, "token_count", counted)
        elif self.token_count != counted:
            raise ValueError(f"token_count {self.token_count} != {counted} tokens present")

    @classmethod
    def stub(cls, name: str, token_count: int) -> Corpus:
        return cls(name, (), token_count, metadata_only=True)

    @classmethod
    def from_sentences(cls, name: str, sentences: Iterable[Iterable[tuple[str, str]]]) -> Corpus:
        """Single-document corpus from ``(surface, pos)`` sequences; handy for tests."""
        sents = tuple(Sentence.from_pairs(s, i) for i, s in enumerate(sentences))
        return cls(name, (Document(sents, 0),) if sents else ())

    def sentences(self) -> Iterator[tuple[int, Sentence]]:
        for doc in self.documents:
            for sent in doc.sentences:
                yield doc.index, sent

    def sentence_at(self, doc: int, sent: int) -> Sentence:
        return self.documents[doc].sentences[sent]

    def tokens(self) -> Iterator[Token]:
        for _, sent in self.sentences():
            yield from sent.tokens


@dataclass(frozen=True, slots=True)
class Diagnostic:
    line: int
    message: str
    column: int = 0

    def __str__(self) -> str:
        if self.column:
            return f"line {self.line}, column {self.column}: {self.message}"
        return f"line {self.line}: {self.message}"


@dataclass(frozen=True)
class ParseResult:
    corpus: Corpus
    diagnostics: tuple[Diagnostic, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.diagnostics


class CorpusFormatError(ValueError):
    def __init__(self, diagnostics: Iterable[Diagnostic], source: str = "<stream>"):
        self.diagnostics = tuple(diagnostics)
        lines = "\n".join(f"  {d}" for d in self.diagnostics[:20])
        more = len(self.diagnostics) - 20
        if more > 0:
            lines += f"\n  ... {more} more"
        super().__init__(f"{source}: malformed vertical corpus\n{lines}")


def _iter_lines(source: str | Iterable[str]) -> Iterator[str]:
    # Re-split arbitrary chunks on newlines so results do not depend on chunking.
    if isinstance(source, str):
        source = (source,)
    pending = ""
    for chunk in source:
        pending += chunk
        *complete, pending = pending.split("\n")
        yield from complete
    if pending:
        yield pending


class _Builder:
    def __init__(self) -> None:
        self.docs: list[Document] = []
        self.doc_id: str | None = None
        self.doc_open = False
        self.sents: list[Sentence] = []
        self.toks: list[Token] = []

    def close_sentence(self) -> None:
        if self.toks:
            self.sents.append(Sentence(tuple(self.toks), len(self.sents)))
            self.toks = []

    def close_document(self) -> None:
        self.close_sentence()
        if self.doc_open:
            self.docs.append(Document(tuple(self.sents), len(self.docs), self.doc_id))
        self.sents = []
        self.doc_open = False

    def open_document(self, doc_id: str | None) -> None:
        self.close_document()
        self.doc_id = doc_id
        self.doc_open = True

    def add(self, surface: str, pos: str, extra: tuple[str, ...]) -> None:
        if not self.doc_open:
            self.open_document(None)
        self.toks.append(Token(surface, pos, len(self.toks), extra))


def parse_vertical(source: str | Iterable[str], name: str = "corpus") -> ParseResult:
    """Parse vertical text into a :class:`Corpus`, collecting per-line diagnostics.

    Malformed lines are skipped and reported; parsing never raises on bad
    input.  ``source`` may be a whole string or any iterable of text chunks
    (an open file works).
    """
    b = _Builder()
    diags: list[Diagnostic] = []
    for lineno, raw in enumerate(_iter_lines(source), 1):
        line = raw[:-1] if raw.endswith("\r") else raw
        if not line.strip():
            b.close_sentence()
            continue
        if line.startswith("#"):
            m = DOC_COMMENT.match(line)
            if m:
                b.open_document(m.group(1))
            continue
        fields = line.split("\t")
        if len(fields) < 2:
            diags.append(Diagnostic(lineno, "expected at least 2 tab-separated fields"))
            continue
        surface, pos, *extra = fields
        if not surface or not pos:
            which = "surface" if not surface else "pos"
            diags.append(Diagnostic(lineno, f"empty {which} field"))
            continue
        bad = next((c for c in (surface, pos) if any(ch.isspace() for ch in c)), None)
        if bad is not None:
            diags.append(Diagnostic(lineno, f"whitespace inside field {bad!r}"))
            continue
        b.add(surface, pos, tuple(extra))
    b.close_document()
    return ParseResult(Corpus(name, tuple(b.docs)), tuple(diags))


def read_vertical(path: str | Path, name: str | None = None, strict: bool = True) -> Corpus:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        result = parse_vertical(fh, name or path.stem)
    if strict and result.diagnostics:
        raise CorpusFormatError(result.diagnostics, str(path))
    return result.corpus


def write_vertical(corpus: Corpus) -> str:
    """Serialize back to vertical text; ``parse_vertical`` inverts this exactly."""
    out: list[str] = []
    for doc in corpus.documents:
        if doc.id is not None or doc.index > 0:
            out.append(f"# doc: {doc.id or ''}")
        for sent in doc.sentences:
            for tok in sent.tokens:
                out.append("\t".join((tok.surface, tok.pos) + tok.extra))
            out.append("")
    return "\n".join(out) + ("\n" if out else "")


@dataclass(frozen=True)
class CorpusSummary:
    name: str
    token_count: int
    sentence_count: int
    document_count: int
    distinct_surfaces: int
    tag_inventory: tuple[tuple[str, int], ...] = field(default=())


def corpus_summary(corpus: Corpus) -> CorpusSummary:
    tags: Counter[str] = Counter()
    surfaces: set[str] = set()
    n_sents = 0
    for _, sent in corpus.sentences():
        n_sents += 1
        for tok in sent.tokens:
            tags[tok.pos] += 1
            surfaces.add(tok.surface)
    inventory = tuple(sorted(tags.items(), key=lambda kv: (-kv[1], kv[0])))
    return CorpusSummary(
        corpus.name, corpus.token_count, n_sents, len(corpus.documents), len(surfaces), inventory
    )
