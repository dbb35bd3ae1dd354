"""Keyword-in-context concordances."""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass

from .corpus import Corpus, Token
from .index import FrequencyIndex, Position, positions

DEFAULT_WIDTH = 8
DEFAULT_MAX_LINES = 25


@dataclass(frozen=True, slots=True)
class KWICLine:
    left: tuple[Token, ...]
    node: Token
    right: tuple[Token, ...]
    location: Position
    filtered: bool = False


def concordance(
    index: FrequencyIndex,
    corpus: Corpus,
    node: str,
    width: int = DEFAULT_WIDTH,
    max_lines: int | None = DEFAULT_MAX_LINES,
    pos_filter: str | None = None,
    cross_sentence: bool = False,
) -> list[KWICLine]:
    """Concordance lines for ``node`` in corpus order.

    Context stays inside the node's sentence unless ``cross_sentence`` is
    set, in which case it may borrow from neighbouring sentences of the same
    document.  ``max_lines=None`` returns every occurrence.
    """
    if width < 0:
        raise ValueError("width must be >= 0")
    if max_lines is not None and max_lines < 1:
        raise ValueError("max_lines must be >= 1")
    lines: list[KWICLine] = []
    for d, s, off in positions(index, node):
        if max_lines is not None and len(lines) >= max_lines:
            break
        sent = corpus.sentence_at(d, s)
        tok = sent.tokens[off]
        if pos_filter is not None and tok.pos != pos_filter:
            continue
        left = sent.tokens[max(0, off - width) : off]
        right = sent.tokens[off + 1 : off + 1 + width]
        if cross_sentence:
            left, right = _extend(corpus, d, s, left, right, width)
        lines.append(KWICLine(tuple(left), tok, tuple(right), (d, s, off), pos_filter is not None))
    return lines


def _extend(corpus: Corpus, d: int, s: int, left, right, width: int):
    sents = corpus.documents[d].sentences
    left, right = list(left), list(right)
    i = s - 1
    while len(left) < width and i >= 0:
        need = width - len(left)
        left = list(sents[i].tokens[-need:]) + left
        i -= 1
    i = s + 1
    while len(right) < width and i < len(sents):
        right += sents[i].tokens[: width - len(right)]
        i += 1
    return left, right


def display_width(text: str) -> int:
    return sum(2 if unicodedata.east_asian_width(ch) in "WF" else 1 for ch in text)


def _clip_left(text: str, cols: int) -> str:
    while display_width(text) > cols:
        text = text[1:]
    return text


def _node_text(line: KWICLine) -> str:
    return f"{line.node.surface}/{line.node.pos}" if line.filtered else line.node.surface


def render_kwic(lines: list[KWICLine], gutter: int = 40, sep: str = " ") -> str:
    """Plain-text concordance with the node column aligned at ``gutter`` display columns."""
    out = []
    for line in lines:
        left = _clip_left(sep.join(t.surface for t in line.left), gutter)
        pad = " " * (gutter - display_width(left))
        right = sep.join(t.surface for t in line.right)
        out.append(f"{pad}{left} {_node_text(line)} {right}".rstrip())
    return "".join(s + "\n" for s in out)


def render_kwic_tsv(lines: list[KWICLine], sep: str = " ") -> str:
    out = []
    for line in lines:
        d, s, o = line.location
        out.append(
            "\t".join(
                (
                    sep.join(t.surface for t in line.left),
                    _node_text(line),
                    sep.join(t.surface for t in line.right),
                    f"{d}:{s}:{o}",
                )
            )
        )
    return "".join(s + "\n" for s in out)
