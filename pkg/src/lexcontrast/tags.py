"""Tag matchers shared by window filters and the sketch grammar.

A matcher is a literal tag (``VE2``), a prefix (``N*`` matches Na, Nb, ...),
a quoted surface form (``"把"``), or an alternation of these (``(Na|VC*)``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass

TAG_RE = re.compile(r'[^\s()|{}@"*#]+')


@dataclass(frozen=True, slots=True)
class TagMatcher:
    text: str
    prefix: bool = False
    surface: bool = False

    def matches(self, pos: str, word: str = "") -> bool:
        if self.surface:
            return word == self.text
        if self.prefix:
            return pos.startswith(self.text)
        return pos == self.text

    def render(self) -> str:
        if self.surface:
            return '"' + self.text + '"'
        return self.text + ("*" if self.prefix else "")


@dataclass(frozen=True, slots=True)
class TagPattern:
    alternatives: tuple[TagMatcher, ...]

    def matches(self, pos: str, word: str = "") -> bool:
        return any(m.matches(pos, word) for m in self.alternatives)

    def render(self) -> str:
        body = "|".join(m.render() for m in self.alternatives)
        return body if len(self.alternatives) == 1 else f"({body})"

    @classmethod
    def parse(cls, text: str) -> TagPattern:
        """Parse a standalone pattern such as ``D`` or ``(Na|VC*)``."""
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        alts = []
        for part in body.split("|"):
            alts.append(parse_matcher(part.strip()))
        return cls(tuple(alts))


def parse_matcher(text: str) -> TagMatcher:
    if len(text) >= 3 and text[0] == '"' and text[-1] == '"':
        return TagMatcher(text[1:-1], surface=True)
    prefix = text.endswith("*")
    core = text[:-1] if prefix else text
    if not TAG_RE.fullmatch(core):
        raise ValueError(f"bad tag matcher {text!r}")
    return TagMatcher(core, prefix=prefix)
