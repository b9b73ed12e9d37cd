"""Shared hypothesis strategies for exact-arithmetic value types."""

from fractions import Fraction

from hypothesis import strategies as st

from chancelab.measures import GeometricTail, PartitionMeasure
from chancelab.scales import SequenceFunction

DYADIC_RATIOS = [Fraction(1, 2), Fraction(1, 4), Fraction(3, 4), Fraction(3, 8)]


@st.composite
def partition_measures(draw, deficient: bool | None = None):
    """Valid measures: head length <= 8, up to 3 dyadic-ratio tails, total
    mass rescaled to an exact dyadic target."""
    head_len = draw(st.integers(0, 8))
    head = [
        Fraction(draw(st.integers(0, 4)), 2 ** draw(st.integers(2, 6)))
        for _ in range(head_len)
    ]
    n_tails = draw(st.integers(0, 3))
    tails = []
    for _ in range(n_tails):
        coefficient = Fraction(draw(st.integers(1, 8)), 2 ** draw(st.integers(1, 5)))
        ratio = draw(st.sampled_from(DYADIC_RATIOS))
        start = head_len + draw(st.integers(1, 3))
        tails.append(GeometricTail(coefficient, ratio, start))
    raw_total = sum(head, Fraction(0)) + sum((t.total for t in tails), Fraction(0))
    if raw_total == 0:
        head = [Fraction(1, 4)] + head[1:] if head else [Fraction(1, 4)]
        raw_total = sum(head, Fraction(0))
    if deficient is None:
        eps = Fraction(draw(st.integers(0, 7)), 8)
    elif deficient:
        eps = Fraction(draw(st.integers(1, 7)), 8)
    else:
        eps = Fraction(0)
    scale = (1 - eps) / raw_total
    head = tuple(h * scale for h in head)
    tails = tuple(GeometricTail(t.coefficient * scale, t.ratio, t.start) for t in tails)
    return PartitionMeasure(head, tails, label="generated")


@st.composite
def sequence_functions(draw):
    """Prefix length <= 4 with small values, integer tail of degree <= 3."""
    prefix = tuple(draw(st.integers(1, 20)) for _ in range(draw(st.integers(0, 4))))
    degree = draw(st.integers(0, 3))
    coeffs = [Fraction(draw(st.integers(0, 5))) for _ in range(degree)]
    coeffs.append(Fraction(draw(st.integers(1, 5))))
    if degree == 0 and coeffs[0] < 1:
        coeffs[0] = Fraction(1)
    return SequenceFunction(prefix, tuple(coeffs))
