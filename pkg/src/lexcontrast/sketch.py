"""Sketch grammar: declarative relation patterns over tag sequences.

Grammar files are line oriented::

    # comment
    relation Object := NODE @N*
    relation Subject := @N* (D*|T){0,2} NODE
    relation BaObject := "把" @N* _{0,2} NODE

An atom is ``NODE``, the wildcard ``_``, a tag literal, a ``Tag*`` prefix,
a quoted surface form, or a parenthesised alternation of those.  ``{m,n}``
repeats an atom (``n <= 5``); ``@`` marks the single captured collocate.
Patterns are anchored on the node: the atoms must cover a contiguous run of
tokens with ``NODE`` on the node occurrence.
"""
from __future__ import annotations

import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .corpus import Sentence
from .index import FrequencyIndex, Position, positions, word_freq
from .stats import CollocationRecord, mutual_information, normalized_frequency, t_score
from .tags import TAG_RE, TagMatcher, TagPattern

MAX_REPEAT = 5

NODE, ANY, TAGS = "node", "any", "tags"

_RULE_RE = re.compile(r"\s*relation\s+(?P<name>[^\W\d]\w*)\s*:=(?P<body>.*)$")
_QUANT_RE = re.compile(r"\{\s*(\d+)\s*,\s*(\d+)\s*\}")


@dataclass(frozen=True, slots=True)
class Atom:
    kind: str
    pattern: TagPattern | None = None
    quant: tuple[int, int] | None = None
    capture: bool = False

    def accepts(self, pos: str, word: str) -> bool:
        if self.kind == ANY:
            return True
        return self.pattern.matches(pos, word)

    def render(self) -> str:
        core = {NODE: "NODE", ANY: "_"}.get(self.kind) or self.pattern.render()
        q = f"{{{self.quant[0]},{self.quant[1]}}}" if self.quant else ""
        return ("@" if self.capture else "") + core + q

    @property
    def bounds(self) -> tuple[int, int]:
        return self.quant or (1, 1)


@dataclass(frozen=True, slots=True)
class RelationRule:
    name: str
    pattern: tuple[Atom, ...]

    @property
    def node_index(self) -> int:
        return next(i for i, a in enumerate(self.pattern) if a.kind == NODE)

    def render(self) -> str:
        return f"relation {self.name} := " + " ".join(a.render() for a in self.pattern)


@dataclass(frozen=True)
class SketchGrammar:
    rules: tuple[RelationRule, ...]
    source_name: str = field(default="<grammar>", compare=False)

    @property
    def relation_names(self) -> list[str]:
        return [r.name for r in self.rules]

    def render(self) -> str:
        return "".join(r.render() + "\n" for r in self.rules)


@dataclass(frozen=True, slots=True)
class GrammarDiagnostic:
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}: {self.message}"


class GrammarError(ValueError):
    def __init__(self, diagnostics: Sequence[GrammarDiagnostic], source: str = "<grammar>"):
        self.diagnostics = tuple(diagnostics)
        super().__init__(f"{source}: " + "; ".join(str(d) for d in self.diagnostics))


class _SyntaxError(Exception):
    def __init__(self, col: int, msg: str):
        self.col, self.msg = col, msg


def _strip_comment(line: str) -> str:
    in_quote = False
    for i, ch in enumerate(line):
        if ch == '"':
            in_quote = not in_quote
        elif ch == "#" and not in_quote:
            return line[:i]
    return line


def _scan_matcher(text: str, i: int) -> tuple[str, int]:
    """Return the raw text of one simple matcher starting at ``i``."""
    if text[i] == '"':
        j = text.find('"', i + 1)
        if j < 0:
            raise _SyntaxError(i, "unterminated quoted surface form")
        if j == i + 1:
            raise _SyntaxError(i, "empty quoted surface form")
        return text[i : j + 1], j + 1
    m = TAG_RE.match(text, i)
    if not m:
        raise _SyntaxError(i, f"unexpected character {text[i]!r}")
    j = m.end()
    if j < len(text) and text[j] == "*":
        j += 1
    return text[i:j], j


def _parse_atoms(body: str, base_col: int) -> list[tuple[int, Atom]]:
    atoms: list[tuple[int, Atom]] = []
    i, n = 0, len(body)
    while i < n:
        if body[i].isspace():
            i += 1
            continue
        start = i
        capture = body[i] == "@"
        if capture:
            i += 1
            if i >= n or body[i].isspace():
                raise _SyntaxError(base_col + start, "'@' must prefix an atom")
        if body[i] == "(":
            close = body.find(")", i)
            if close < 0:
                raise _SyntaxError(base_col + i, "unterminated alternation")
            alts, j = [], i + 1
            while True:
                while j < close and body[j].isspace():
                    j += 1
                try:
                    raw, j = _scan_matcher(body, j)
                except _SyntaxError as e:
                    raise _SyntaxError(base_col + e.col, e.msg) from None
                if raw in ("NODE", "_"):
                    raise _SyntaxError(base_col + j - len(raw), f"{raw} cannot appear inside an alternation")
                alts.append(_matcher(raw, base_col + j - len(raw)))
                while j < close and body[j].isspace():
                    j += 1
                if j == close:
                    break
                if body[j] != "|":
                    raise _SyntaxError(base_col + j, f"expected '|' or ')', got {body[j]!r}")
                j += 1
            atom = Atom(TAGS, TagPattern(tuple(alts)), capture=capture)
            i = close + 1
        else:
            try:
                raw, i = _scan_matcher(body, i)
            except _SyntaxError as e:
                raise _SyntaxError(base_col + e.col, e.msg) from None
            if raw == "NODE":
                atom = Atom(NODE, capture=capture)
            elif raw == "_":
                atom = Atom(ANY, capture=capture)
            else:
                atom = Atom(TAGS, TagPattern((_matcher(raw, base_col + i - len(raw)),)), capture=capture)
        if i < n and body[i] == "{":
            m = _QUANT_RE.match(body, i)
            if not m:
                raise _SyntaxError(base_col + i, "malformed quantifier, expected {m,n}")
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi or hi > MAX_REPEAT:
                raise _SyntaxError(
                    base_col + i, f"bad quantifier bounds {{{lo},{hi}}}: need m <= n <= {MAX_REPEAT}"
                )
            atom = Atom(atom.kind, atom.pattern, (lo, hi), atom.capture)
            i = m.end()
        if i < n and not body[i].isspace():
            raise _SyntaxError(base_col + i, f"unexpected character {body[i]!r}")
        atoms.append((base_col + start, atom))
    return atoms


def _matcher(raw: str, col: int) -> TagMatcher:
    if raw.startswith('"'):
        return TagMatcher(raw[1:-1], surface=True)
    if raw.endswith("*"):
        return TagMatcher(raw[:-1], prefix=True)
    return TagMatcher(raw)


def _validate(name: str, atoms: list[tuple[int, Atom]], lineno: int, col: int) -> list[GrammarDiagnostic]:
    diags = []
    if not atoms:
        return [GrammarDiagnostic(lineno, col, "empty pattern")]
    nodes = [c for c, a in atoms if a.kind == NODE]
    caps = [c for c, a in atoms if a.capture]
    if len(nodes) != 1:
        at = nodes[1] if len(nodes) > 1 else col
        diags.append(GrammarDiagnostic(lineno, at, "pattern must contain NODE exactly once"))
    if len(caps) != 1:
        at = caps[1] if len(caps) > 1 else col
        diags.append(GrammarDiagnostic(lineno, at, "pattern must contain exactly one '@' capture"))
    for c, a in atoms:
        if a.kind == NODE and a.capture:
            diags.append(GrammarDiagnostic(lineno, c, "NODE cannot be the capture atom"))
        if a.quant and (a.kind == NODE or a.capture):
            diags.append(GrammarDiagnostic(lineno, c, "quantifier not allowed on NODE or the capture atom"))
    return diags


def parse_grammar(text: str, source_name: str = "<grammar>") -> SketchGrammar:
    """Parse grammar source; raise :class:`GrammarError` listing every problem found."""
    rules: list[RelationRule] = []
    seen: dict[str, int] = {}
    diags: list[GrammarDiagnostic] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        m = _RULE_RE.match(line)
        if not m:
            col = len(line) - len(line.lstrip()) + 1
            diags.append(GrammarDiagnostic(lineno, col, "expected 'relation <Name> := <atoms>'"))
            continue
        name = m.group("name")
        name_col = m.start("name") + 1
        try:
            atoms = _parse_atoms(m.group("body"), m.start("body") + 1)
        except _SyntaxError as e:
            diags.append(GrammarDiagnostic(lineno, e.col, e.msg))
            continue
        problems = _validate(name, atoms, lineno, m.start("body") + 1)
        if name in seen:
            problems.append(
                GrammarDiagnostic(lineno, name_col, f"duplicate rule name {name!r} (first on line {seen[name]})")
            )
        else:
            seen[name] = lineno
        diags.extend(problems)
        if not problems:
            rules.append(RelationRule(name, tuple(a for _, a in atoms)))
    if diags:
        raise GrammarError(diags, source_name)
    return SketchGrammar(tuple(rules), source_name)


def load_grammar(path: str | Path) -> SketchGrammar:
    path = Path(path)
    return parse_grammar(path.read_text(encoding="utf-8"), str(path))


# -- matching ---------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class PatternMatch:
    relation: str
    node_position: Position
    collocate_position: Position
    collocate_surface: str


def _spread(atoms: Sequence[Atom], tokens, pos: int, step: int) -> Iterator[tuple[int, tuple[int, ...], int | None]]:
    """Yield every way ``atoms`` can consume tokens starting next to ``pos``.

    ``step`` is +1 to walk right of the node, -1 to walk left (atoms are then
    consumed from last to first).  Yields ``(edge, counts, capture)`` where
    ``edge`` is the last consumed offset and counts are in walking order.
    """
    if not atoms:
        yield pos, (), None
        return
    atom = atoms[0] if step > 0 else atoms[-1]
    rest = atoms[1:] if step > 0 else atoms[:-1]
    lo, hi = atom.bounds
    p = pos
    for k in range(hi + 1):
        if k >= lo:
            for edge, counts, cap in _spread(rest, tokens, p, step):
                mine = p if atom.capture else None
                yield edge, (k,) + counts, cap if mine is None else mine
        nxt = p + step
        if not 0 <= nxt < len(tokens) or not atom.accepts(tokens[nxt].pos, tokens[nxt].surface):
            break
        p = nxt


def match_rule(rule: RelationRule, tokens, offset: int) -> int | None:
    """Offset captured by ``rule`` anchored at ``offset``, or None.

    Among all assignments choose the leftmost start, then the rightmost end,
    then the greediest quantifier counts in pattern order.
    """
    ni = rule.node_index
    left, right = rule.pattern[:ni], rule.pattern[ni + 1 :]
    best_left = None
    for edge, counts, cap in _spread(left, tokens, offset, -1):
        # counts are right-to-left; greedy order is pattern (left-to-right) order
        key = (-edge, tuple(reversed(counts)))
        if best_left is None or key > best_left[0]:
            best_left = (key, cap)
    if best_left is None:
        return None
    best_right = None
    for edge, counts, cap in _spread(right, tokens, offset, 1):
        key = (edge, counts)
        if best_right is None or key > best_right[0]:
            best_right = (key, cap)
    if best_right is None:
        return None
    return best_left[1] if best_left[1] is not None else best_right[1]


def match_relations(
    grammar: SketchGrammar, sentence: Sentence, node_offsets: Iterable[int], doc: int = 0
) -> list[PatternMatch]:
    tokens = sentence.tokens
    out = []
    for off in sorted(set(node_offsets)):
        for rule in grammar.rules:
            cap = match_rule(rule, tokens, off)
            if cap is not None:
                out.append(
                    PatternMatch(
                        rule.name,
                        (doc, sentence.index, off),
                        (doc, sentence.index, cap),
                        tokens[cap].surface,
                    )
                )
    return out


# -- word sketches ----------------------------------------------------------


@dataclass(frozen=True)
class WordSketch:
    node: str
    corpus_name: str
    node_total: int
    relations: dict[str, tuple[CollocationRecord, ...]]

    def records(self, relation: str) -> tuple[CollocationRecord, ...]:
        return self.relations.get(relation, ())


def sort_records(records: Iterable[CollocationRecord]) -> tuple[CollocationRecord, ...]:
    def key(r: CollocationRecord):
        mi = r.mi if r.mi is not None else float("-inf")
        return (-r.f, -mi, r.collocate)

    return tuple(sorted(records, key=key))


def collocation_record(
    index: FrequencyIndex, node: str, collocate: str, f: int, relation: str | None = None
) -> CollocationRecord:
    """Build a record with whole-corpus marginals for MI and T."""
    node_total = word_freq(index, node)
    f_y = word_freq(index, collocate)
    n = index.total_tokens
    return CollocationRecord(
        node,
        collocate,
        f,
        node_total,
        normalized_frequency(f, node_total),
        mutual_information(f, node_total, f_y, n),
        t_score(f, node_total, f_y, n),
        relation,
    )


def word_sketch(index: FrequencyIndex, corpus, node: str, grammar: SketchGrammar) -> WordSketch:
    node_total = word_freq(index, node)
    if node_total == 0:
        return WordSketch(node, index.corpus_name, 0, {})
    by_sentence: dict[tuple[int, int], list[int]] = defaultdict(list)
    for d, s, off in positions(index, node):
        by_sentence[d, s].append(off)
    counts: dict[str, Counter[str]] = {name: Counter() for name in grammar.relation_names}
    for (d, s), offs in by_sentence.items():
        for m in match_relations(grammar, corpus.sentence_at(d, s), offs, d):
            counts[m.relation][m.collocate_surface] += 1
    relations = {
        name: sort_records(collocation_record(index, node, c, f, name) for c, f in counts[name].items())
        for name in grammar.relation_names
    }
    return WordSketch(node, index.corpus_name, node_total, relations)
