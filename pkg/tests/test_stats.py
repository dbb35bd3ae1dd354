import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lexcontrast.stats import (
    Direction,
    expected_frequencies,
    fmt,
    log_likelihood,
    mutual_information,
    normalized_frequency,
    round_half_up,
    significance_level,
    t_score,
)

CNA, XIN = 735_499_000, 382_881_000


def textbook_ll(a, b, n1, n2):
    """Plain G2 evaluation, independent of the package's cancellation-free form."""
    e1 = n1 * (a + b) / (n1 + n2)
    e2 = n2 * (a + b) / (n1 + n2)
    return 2 * ((a * math.log(a / e1) if a else 0) + (b * math.log(b / e2) if b else 0))


# expected values frozen from direct evaluation of n*(a+b)/(n1+n2)
@pytest.mark.parametrize(
    "a, b, e1, e2",
    [
        (111_619, 67_301, 117_666.16094708418, 61_253.83905291583),
        (91_998, 20_215, 73_796.51754054973, 38_416.48245945028),
    ],
)
def test_expected_frequencies(a, b, e1, e2):
    got = expected_frequencies(a, b, CNA, XIN)
    assert got == pytest.approx((e1, e2), rel=1e-12)


def test_expected_symmetric():
    assert expected_frequencies(7, 7, 100, 100) == (7.0, 7.0)


def test_expected_rejects_empty_corpus():
    with pytest.raises(ValueError):
        expected_frequencies(1, 1, 0, 10)
    with pytest.raises(ValueError):
        expected_frequencies(11, 1, 10, 10)


@pytest.mark.parametrize(
    "a, b, ll, published, direction",
    [
        (111_619, 67_301, 894.5077960162726, 894.52, Direction.UNDERUSE),
        (91_998, 20_215, 14_604.338122562189, 14_604.35, Direction.OVERUSE),
    ],
)
def test_log_likelihood_published_rows(a, b, ll, published, direction):
    s = log_likelihood(a, b, CNA, XIN)
    assert s.ll == pytest.approx(ll, rel=1e-9)
    assert s.ll == pytest.approx(textbook_ll(a, b, CNA, XIN), rel=1e-9)
    assert abs(s.ll - published) / published < 0.005
    assert s.direction is direction
    assert s.significance == "***"


def test_log_likelihood_proportional_is_zero():
    s = log_likelihood(10, 20, 1000, 2000)
    assert s.ll == 0.0
    assert s.direction is Direction.BALANCED
    assert s.significance == "ns"


def test_log_likelihood_zero_counts():
    s = log_likelihood(0, 0, 10, 10)
    assert (s.ll, s.direction, s.significance) == (0.0, Direction.BALANCED, "ns")
    one_sided = log_likelihood(5, 0, 100, 100)
    assert one_sided.ll == pytest.approx(2 * 5 * math.log(2))
    assert one_sided.direction is Direction.OVERUSE


def test_label():
    assert log_likelihood(111_619, 67_301, CNA, XIN).label == "*** -"


@pytest.mark.parametrize(
    "ll, stars",
    [(0.0, "ns"), (3.83, "ns"), (3.84, "*"), (6.62, "*"), (6.63, "**"), (7.0, "**"), (10.83, "***"), (894.52, "***")],
)
def test_significance_level(ll, stars):
    assert significance_level(ll) == stars


def test_significance_rejects_negative():
    with pytest.raises(ValueError):
        significance_level(-0.1)


@pytest.mark.parametrize(
    "f, total, shown",
    [(245, 111_619, "21.95"), (0, 91_998, "0.00"), (475, 67_301, "70.58"), (582, 91_998, "63.26")],
)
def test_normalized_frequency(f, total, shown):
    assert fmt(normalized_frequency(f, total)) == shown


def test_normalized_frequency_domain():
    with pytest.raises(ValueError):
        normalized_frequency(1, 0)
    assert normalized_frequency(12345, 12345) == 10000.0


def test_mutual_information_values():
    assert mutual_information(2, 4, 5, 10) == 0.0
    assert mutual_information(5, 10, 20, 1000) == pytest.approx(4.643856189774724, abs=1e-12)
    assert mutual_information(1, 1, 1, 2) == 1.0
    assert mutual_information(0, 5, 5, 10) is None


def test_t_score_values():
    assert t_score(2, 4, 5, 10) == 0.0
    assert t_score(5, 10, 20, 1000) == pytest.approx(4.8 / math.sqrt(5), abs=1e-12)
    assert t_score(100, 1000, 1000, 1_000_000) == pytest.approx(9.9, abs=1e-12)
    assert t_score(0, 1, 1, 1) is None


@pytest.mark.parametrize(
    "x, shown", [(21.949668, "21.95"), (2.675, "2.68"), (0.005, "0.01"), (-0.001, "0.00"), (28.2, "28.20")]
)
def test_half_up(x, shown):
    assert str(round_half_up(x)) == shown


def test_fmt_none():
    assert fmt(None) == "-"


# -- properties -----------------------------------------------------------------

counts = st.integers(0, 10**6)
sizes = st.integers(1, 10**9)


@st.composite
def keyness_args(draw):
    n1, n2 = draw(sizes), draw(sizes)
    a = draw(st.integers(0, min(n1, 10**6)))
    b = draw(st.integers(0, min(n2, 10**6)))
    return a, b, n1, n2


@settings(max_examples=500)
@given(keyness_args())
def test_swap_antisymmetry(args):
    a, b, n1, n2 = args
    s, r = log_likelihood(a, b, n1, n2), log_likelihood(b, a, n2, n1)
    assert s.ll == r.ll
    flip = {Direction.OVERUSE: Direction.UNDERUSE, Direction.UNDERUSE: Direction.OVERUSE,
            Direction.BALANCED: Direction.BALANCED}
    assert r.direction is flip[s.direction]


@settings(max_examples=500)
@given(keyness_args())
def test_zero_iff_proportional(args):
    a, b, n1, n2 = args
    s = log_likelihood(a, b, n1, n2)
    proportional = Fraction(a, n1) == Fraction(b, n2)
    assert (s.ll == 0.0) == proportional
    assert s.ll >= 0
    assert (s.direction is Direction.BALANCED) == proportional


@settings(max_examples=200)
@given(keyness_args())
def test_expected_sum(args):
    a, b, n1, n2 = args
    e1, e2 = expected_frequencies(a, b, n1, n2)
    assert e1 + e2 == pytest.approx(a + b, rel=1e-9, abs=1e-9)


@settings(max_examples=200)
@given(st.integers(2, 400), st.integers(400, 10_000), st.integers(400, 10_000))
def test_ll_grows_away_from_expectation(total, n1, n2):
    # a + b, n1, n2 fixed: moving a further from e1 on either side raises ll
    e1 = Fraction(n1 * total, n1 + n2)
    lls = {a: log_likelihood(a, total - a, n1, n2).ll for a in range(total + 1)}
    up = [a for a in lls if a >= e1]
    down = [a for a in lls if a <= e1][::-1]
    for side in (up, down):
        for x, y in zip(side, side[1:]):
            assert lls[y] > lls[x]


@settings(max_examples=300)
@given(st.integers(1, 500), st.integers(1, 500), st.integers(1, 500), st.integers(1, 50))
def test_mi_scale_invariance(f_xy, f_x, f_y, c):
    n = max(f_x, f_y) + 1000
    assert mutual_information(f_xy, f_x, f_y, n) == mutual_information(c * f_xy, c * f_x, c * f_y, c * n)


@settings(max_examples=300)
@given(st.integers(1, 500), st.integers(1, 500), st.integers(1, 500), st.integers(1, 10**6))
def test_t_sign_law(f_xy, f_x, f_y, n):
    t = t_score(f_xy, f_x, f_y, n)
    diff = Fraction(f_xy) - Fraction(f_x * f_y, n)
    assert (t > 0) == (diff > 0) and (t < 0) == (diff < 0) and (t == 0) == (diff == 0)


@settings(max_examples=300)
@given(st.integers(0, 10**5), st.integers(0, 10**5), st.integers(1, 10**6))
def test_nf_linear(f1, f2, total):
    assert normalized_frequency(f1 + f2, total) == pytest.approx(
        normalized_frequency(f1, total) + normalized_frequency(f2, total), rel=1e-12, abs=1e-12
    )


def test_pure_functions_bitwise_stable():
    a = [log_likelihood(91_998, 20_215, CNA, XIN) for _ in range(3)]
    assert a[0] == a[1] == a[2]
