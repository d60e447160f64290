"""Shared builders and hypothesis strategies for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import hypothesis.strategies as st

from tracerange import (
    GeometricTail,
    MixedRadixTail,
    RadixWord,
    SequenceModel,
    ZeroTail,
)

HALF = Fraction(1, 2)


def dyadic() -> SequenceModel:
    """1/2, 1/4, 1/8, ... as a geometric tail."""
    return SequenceModel((), GeometricTail(HALF, HALF))


def all_threes() -> SequenceModel:
    """1/3, 1/3, 1/9, 1/9, 1/27, ... as a radix tail."""
    return SequenceModel((), MixedRadixTail(Fraction(1), RadixWord((), (3,))))


def cantor_like() -> SequenceModel:
    """2/3, 2/9, 2/27, ...: every term overshoots what follows it."""
    return SequenceModel((), GeometricTail(Fraction(2, 3), Fraction(1, 3)))


def scale_model(model: SequenceModel, factor: Fraction) -> SequenceModel:
    """Multiply every term by a positive factor."""
    tail = model.tail
    if isinstance(tail, GeometricTail):
        tail = GeometricTail(tail.first * factor, tail.ratio)
    elif isinstance(tail, MixedRadixTail):
        tail = MixedRadixTail(tail.scale * factor, tail.radices)
    return SequenceModel(tuple(x * factor for x in model.prefix), tail)


def random_fraction(rng: random.Random, lo: Fraction, hi: Fraction, grain: int = 16) -> Fraction:
    """A rational between lo and hi on a grid of ``grain`` steps."""
    return lo + (hi - lo) * Fraction(rng.randint(0, grain), grain)


def random_complete_model(rng: random.Random, max_prepend: int = 4) -> SequenceModel:
    """A model satisfying the completeness condition, built backwards.

    Start from a tail that satisfies the condition on its own (geometric with
    ratio at least 1/2, or any radix pattern), then repeatedly prepend a term
    between the current first term and the current total. Each prepend keeps
    the condition: the new term is at most the sum of everything after it.
    """
    kind = rng.randrange(3)
    if kind == 0:
        ratio = rng.choice([HALF, Fraction(2, 3), Fraction(3, 4), Fraction(3, 5)])
        first = Fraction(1, rng.randint(1, 6))
        model = SequenceModel((), GeometricTail(first, ratio))
    elif kind == 1:
        word = random_word(rng)
        scale = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        model = SequenceModel((), MixedRadixTail(scale, word))
    else:
        model = SequenceModel((), GeometricTail(HALF, HALF))
    for _ in range(rng.randrange(max_prepend + 1)):
        first = model.first_terms(1)[0]
        term = random_fraction(rng, first, model.total, grain=8)
        model = SequenceModel((term,) + model.prefix, model.tail)
    return model


def random_unit_admissible_model(rng: random.Random) -> SequenceModel:
    """A model with total exactly 1 in which every term fits under what
    remains of 1: a complete model rescaled to total 1."""
    model = random_complete_model(rng)
    return scale_model(model, 1 / model.total)


def random_word(rng: random.Random, max_pre: int = 3, max_period: int = 3, max_entry: int = 5) -> RadixWord:
    pre = tuple(rng.randint(2, max_entry) for _ in range(rng.randrange(max_pre + 1)))
    period = tuple(rng.randint(2, max_entry) for _ in range(rng.randint(1, max_period)))
    return RadixWord(pre, period)


def random_finite_model(rng: random.Random, min_terms: int = 1, max_terms: int = 8) -> SequenceModel:
    count = rng.randint(min_terms, max_terms)
    terms = sorted(
        (Fraction(rng.randint(1, 12), rng.randint(1, 12)) for _ in range(count)),
        reverse=True,
    )
    return SequenceModel(tuple(terms), ZeroTail())


fractions_positive = st.builds(
    Fraction, st.integers(min_value=1, max_value=12), st.integers(min_value=1, max_value=9)
)

fractions_nonnegative = st.builds(
    Fraction, st.integers(min_value=0, max_value=12), st.integers(min_value=1, max_value=9)
)

radix_words = st.builds(
    RadixWord,
    st.lists(st.integers(min_value=2, max_value=5), max_size=3).map(tuple),
    st.lists(st.integers(min_value=2, max_value=5), min_size=1, max_size=3).map(tuple),
)

geometric_ratios = st.sampled_from(
    [Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4), Fraction(3, 4), Fraction(2, 5)]
)

tails = st.one_of(
    st.just(ZeroTail()),
    st.builds(GeometricTail, fractions_positive, geometric_ratios),
    st.builds(MixedRadixTail, fractions_positive, radix_words),
)


@st.composite
def models(draw) -> SequenceModel:
    """Arbitrary valid models: tail first, then a prefix lifted above the
    tail's first term so the junction always holds."""
    tail = draw(tails)
    if isinstance(tail, ZeroTail):
        floor = Fraction(0)
    elif isinstance(tail, GeometricTail):
        floor = tail.first
    else:
        floor = tail.term(1)
    raw = draw(st.lists(fractions_nonnegative, max_size=4))
    prefix = tuple(sorted((x + floor for x in raw), reverse=True))
    if isinstance(tail, ZeroTail):
        prefix = tuple(x for x in prefix if x > 0)
    return SequenceModel(prefix, tail)


@st.composite
def finite_models(draw) -> SequenceModel:
    raw = draw(st.lists(fractions_positive, min_size=1, max_size=8))
    return SequenceModel(tuple(sorted(raw, reverse=True)), ZeroTail())
