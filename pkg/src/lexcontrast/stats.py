"""Keyness and collocation statistics.

Log-likelihood follows the usual two-corpus G2 (natural log, zero observed
counts contribute nothing); MI is pointwise and base 2; T-score is
``(O - E) / sqrt(O)``.  Ratios are formed with exact fractions first, so
proportional counts give exactly ``ll == 0`` and MI is exactly invariant
under common scaling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from fractions import Fraction

# chi-square, 1 d.f.: p < .05, .01, .001
SIGNIFICANCE_THRESHOLDS = ((10.83, "***"), (6.63, "**"), (3.84, "*"))


class Direction(str, Enum):
    OVERUSE = "+"
    UNDERUSE = "-"
    BALANCED = "="


@dataclass(frozen=True, slots=True)
class KeynessScore:
    a: int
    b: int
    n1: int
    n2: int
    e1: float
    e2: float
    ll: float
    direction: Direction
    significance: str

    @property
    def label(self) -> str:
        """Stars plus direction, e.g. ``*** -``."""
        return f"{self.significance} {self.direction.value}"


@dataclass(frozen=True, slots=True)
class CollocationRecord:
    node: str
    collocate: str
    f: int
    node_total: int
    nf: float
    mi: float | None
    t: float | None
    relation: str | None = None


def _check_sizes(a: int, b: int, n1: int, n2: int) -> None:
    if n1 <= 0 or n2 <= 0:
        raise ValueError(f"corpus sizes must be positive, got n1={n1}, n2={n2}")
    if a < 0 or b < 0:
        raise ValueError("frequencies must be non-negative")
    if a > n1 or b > n2:
        raise ValueError(f"frequency exceeds corpus size ({a}/{n1}, {b}/{n2})")


def expected_frequencies(a: int, b: int, n1: int, n2: int) -> tuple[float, float]:
    _check_sizes(a, b, n1, n2)
    total = n1 + n2
    return n1 * (a + b) / total, n2 * (a + b) / total


def _g2_term(observed: int, expected: Fraction) -> float:
    # O ln(O/E) - O + E; every term is >= 0 and the extra -O + E parts cancel
    # across cells, so the sum equals the textbook G2 without its cancellation error.
    if observed == 0:
        return float(expected)
    d = float(Fraction(observed) / expected - 1)
    if d == 0.0:
        return 0.0
    if abs(d) < 1e-4:
        # (1+d)ln(1+d) - d = d^2/2 - d^3/6 + d^4/12 - d^5/20 ...
        h = d * d * (0.5 - d * (1 / 6 - d * (1 / 12 - d / 20)))
    else:
        h = (1 + d) * math.log1p(d) - d
    return float(expected) * h


def log_likelihood(a: int, b: int, n1: int, n2: int) -> KeynessScore:
    """Two-corpus log-likelihood keyness of a word seen ``a`` times in A and ``b`` in B."""
    e1, e2 = expected_frequencies(a, b, n1, n2)
    if a + b == 0:
        ll = 0.0
    else:
        ex1 = Fraction(n1 * (a + b), n1 + n2)
        ex2 = Fraction(n2 * (a + b), n1 + n2)
        ll = 2.0 * (_g2_term(a, ex1) + _g2_term(b, ex2))
    ra, rb = Fraction(a, n1), Fraction(b, n2)
    if ra > rb:
        direction = Direction.OVERUSE
    elif ra < rb:
        direction = Direction.UNDERUSE
    else:
        direction = Direction.BALANCED
    return KeynessScore(a, b, n1, n2, e1, e2, ll, direction, significance_level(ll))


def significance_level(ll: float) -> str:
    if ll < 0 or math.isnan(ll):
        raise ValueError(f"log-likelihood must be >= 0, got {ll}")
    for threshold, stars in SIGNIFICANCE_THRESHOLDS:
        if ll >= threshold:
            return stars
    return "ns"


def normalized_frequency(f: int, node_total: int) -> float:
    """Occurrences per 10,000 node occurrences."""
    if node_total <= 0:
        raise ValueError("node_total must be positive")
    return 10000 * f / node_total


def mutual_information(f_xy: int, f_x: int, f_y: int, n: int) -> float | None:
    """Pointwise MI in bits; ``None`` when the pair never co-occurs."""
    if f_xy == 0:
        return None
    if f_xy < 0 or f_x <= 0 or f_y <= 0 or n < max(f_x, f_y):
        raise ValueError(f"bad MI arguments ({f_xy}, {f_x}, {f_y}, {n})")
    return math.log2(Fraction(f_xy * n, f_x * f_y))


def t_score(f_xy: int, f_x: int, f_y: int, n: int) -> float | None:
    if f_xy == 0:
        return None
    if f_xy < 0 or n <= 0:
        raise ValueError(f"bad T-score arguments ({f_xy}, {f_x}, {f_y}, {n})")
    return float(f_xy - Fraction(f_x * f_y, n)) / math.sqrt(f_xy)


def round_half_up(x: float, places: int = 2) -> Decimal:
    """Round as published tables do: 21.9497 -> 21.95, 2.675 -> 2.68."""
    q = Decimal(repr(x)).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)
    return abs(q) if q == 0 else q


def fmt(x: float | None, places: int = 2) -> str:
    if x is None:
        return "-"
    return str(round_half_up(x, places))
