"""Fixtures and brute-force oracles shared by the test modules.

The oracles deliberately avoid the package's index and matcher: windows are
found by a quadratic scan over every token pair, and sketch patterns are
compiled to Python regular expressions over an encoded token string.
"""
from __future__ import annotations

import math
import random
import re
from collections import Counter

from lexcontrast.corpus import Corpus, Document, Sentence, Token
from lexcontrast.sketch import ANY, NODE, SketchGrammar

# 2 sentences, 9 tokens; tags Na:4, D:3, VE2:2; 協商 once as VE2 and once as Na
FIXTURE9 = """\
政黨\tNa
已\tD
正在\tD
協商\tVE2
制度\tNa

協商\tNa
仍\tD
解決\tVE2
問題\tNa
"""

# 3 sentences, 12 tokens; 協商 x3 with Object 制度 twice
FIXTURE12 = """\
政治\tNa
協商\tVE2
制度\tNa
。\tPERIODCATEGORY

完善\tVC
協商\tVE2
制度\tNa
。\tPERIODCATEGORY

雙方\tNh
將\tD
協商\tVE2
。\tPERIODCATEGORY
"""

TEST_GRAMMAR = """\
relation Subject := @N* (D*|Nd){0,2} NODE
relation Object := NODE @N*
"""

# -- random corpora --------------------------------------------------------------

WORDS = ["谈判", "协商", "开始", "正在", "中", "双方", "制度", "把", "问题", "的"]
TAGS = ["Na", "Nb", "Nc", "Nh", "D", "Dfa", "VE2", "VC2", "P", "DE", "VH11", "A"]


def random_corpus(rng: random.Random, max_tokens: int = 1000, name: str = "R") -> Corpus:
    budget = rng.randint(1, max_tokens)
    docs, used = [], 0
    while used < budget:
        sents = []
        for si in range(rng.randint(1, 5)):
            n = min(rng.randint(1, 14), budget - used)
            if n <= 0:
                break
            toks = tuple(Token(rng.choice(WORDS), rng.choice(TAGS), i) for i in range(n))
            sents.append(Sentence(toks, si))
            used += n
        docs.append(Document(tuple(sents), len(docs), f"d{len(docs)}"))
    return Corpus(name, tuple(docs))


def random_rule_text(rng: random.Random, name: str) -> str:
    simple = ["Na", "N*", "D*", "VE2", "V*", "_", '"把"', '"的"', "(Na|Nh)", "(D*|P)", "DE", "A"]
    left = [rng.choice(simple) for _ in range(rng.randint(0, 3))]
    right = [rng.choice(simple) for _ in range(rng.randint(0, 3))]
    if not left and not right:
        right = [rng.choice(simple)]
    atoms = left + ["NODE"] + right
    slots = [i for i, a in enumerate(atoms) if a != "NODE"]
    cap = rng.choice(slots)
    out = []
    for i, a in enumerate(atoms):
        if i == cap:
            out.append("@" + a)
        elif a != "NODE" and rng.random() < 0.4:
            lo = rng.randint(0, 2)
            out.append(f"{a}{{{lo},{rng.randint(lo, 3)}}}")
        else:
            out.append(a)
    return f"relation {name} := " + " ".join(out)


# -- oracles ---------------------------------------------------------------------


def brute_window(corpus: Corpus, node: str, left: int, right: int, pos_ok=lambda pos: True) -> dict[str, int]:
    counts: Counter[str] = Counter()
    for _, sent in corpus.sentences():
        toks = sent.tokens
        for i in range(len(toks)):
            if toks[i].surface != node:
                continue
            for j in range(len(toks)):
                if j != i and -left <= j - i <= right and pos_ok(toks[j].pos):
                    counts[toks[j].surface] += 1
    return dict(sorted(counts.items()))


_FIELD = "[^\x01\x02\x03\x04]*"


def _atom_regex(atom) -> str:
    if atom.kind == NODE:
        body = f"\x04\x01{_FIELD}\x02{_FIELD}\x03"
    elif atom.kind == ANY:
        body = f"\x04?\x01{_FIELD}\x02{_FIELD}\x03"
    else:
        alts = []
        for m in atom.pattern.alternatives:
            if m.surface:
                alts.append(f"\x04?\x01{re.escape(m.text)}\x02{_FIELD}\x03")
            elif m.prefix:
                alts.append(f"\x04?\x01{_FIELD}\x02{re.escape(m.text)}{_FIELD}\x03")
            else:
                alts.append(f"\x04?\x01{_FIELD}\x02{re.escape(m.text)}\x03")
        body = "(?:" + "|".join(alts) + ")"
    if atom.capture:
        body = f"(?P<cap>{body})"
    if atom.quant:
        body = f"(?:{body}){{{atom.quant[0]},{atom.quant[1]}}}"
    return body


def regex_capture(rule, tokens, k: int) -> int | None:
    """Enumerate spans (leftmost start, then longest) and let ``re`` pick the greedy assignment."""
    rx = re.compile("".join(_atom_regex(a) for a in rule.pattern))
    enc = [("\x04" if i == k else "") + f"\x01{t.surface}\x02{t.pos}\x03" for i, t in enumerate(tokens)]
    for start in range(0, k + 1):
        for end in range(len(tokens) - 1, k - 1, -1):
            text = "".join(enc[start : end + 1])
            m = rx.fullmatch(text)
            if m:
                return start + text[: m.start("cap")].count("\x01")
    return None


def brute_sketch_counts(corpus: Corpus, node: str, grammar: SketchGrammar) -> dict[str, dict[str, int]]:
    out = {r.name: Counter() for r in grammar.rules}
    for _, sent in corpus.sentences():
        for k, tok in enumerate(sent.tokens):
            if tok.surface != node:
                continue
            for rule in grammar.rules:
                cap = regex_capture(rule, sent.tokens, k)
                if cap is not None:
                    out[rule.name][sent.tokens[cap].surface] += 1
    return {r: dict(c) for r, c in out.items()}


def plain_mi(f_xy, f_x, f_y, n) -> float:
    return math.log2(f_xy * n / (f_x * f_y))


def plain_t(f_xy, f_x, f_y, n) -> float:
    return (f_xy - f_x * f_y / n) / math.sqrt(f_xy)
