"""Positive non-increasing sequences with exactly computable tails.

A :class:`SequenceModel` is a finite explicit prefix followed by a closed-form
tail. Three tail families cover everything the package works with:

* ``ZeroTail``: nothing after the prefix (finite sequences);
* ``GeometricTail(first, ratio)``: first, first*ratio, first*ratio^2, ...;
* ``MixedRadixTail(scale, radices)``: for a word (k_1, k_2, ...) of integer
  radices (each at least 2), block j consists of k_j - 1 copies of
  scale / (k_1 * ... * k_j). Partial sums telescope: after block j the tail
  still holds exactly scale / (k_1 * ... * k_j).

These closed forms make every term, partial sum, and tail sum an exact
rational, so downstream decisions (condition checks, expansions, range
approximations) are never numeric estimates.

The module also models a finite atomic von Neumann algebra with a faithful
normal tracial state as an :class:`AlgebraSpec`: matrix factors contribute
equal atoms weight/dim, an optional abelian tail contributes one atom per
term, and :func:`from_algebra` merges everything into a single non-increasing
sequence model.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Optional, Sequence, Union

from .core import ONE, ZERO
from .errors import (
    DomainError,
    OutOfSupportError,
    UnsupportedSpecError,
    ValidationError,
)

# from_algebra walks tail terms until they drop below the smallest finite
# atom; the geometric and radix families always get there, this just bounds
# the walk against absurd inputs.
_REANCHOR_LIMIT = 1_000_000


def _check_index(n, minimum: int, label: str = "index") -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"{label} must be an integer, got {n!r}")
    if n < minimum:
        raise DomainError(f"{label} must be at least {minimum}, got {n}")
    return n


def _primitive_period(period: tuple[int, ...]) -> tuple[int, ...]:
    """Shortest word whose repetition reproduces ``period``."""
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period == period[:d] * (n // d):
            return period[:d]
    return period


@dataclass(frozen=True)
class RadixWord:
    """An eventually periodic word of integer radices, all at least 2.

    ``pre`` is the aperiodic head, ``period`` repeats forever afterwards.
    An empty period means the word is finite. Construction canonicalizes:
    the period is reduced to its primitive root, and any pre suffix that
    merely restates the period is absorbed into a rotation, so two words
    denoting the same radix stream compare equal.
    """

    pre: tuple[int, ...] = ()
    period: tuple[int, ...] = ()

    def __post_init__(self):
        pre = tuple(self.pre)
        period = tuple(self.period)
        for k in pre + period:
            if isinstance(k, bool) or not isinstance(k, int):
                raise ValidationError(f"radix entries must be integers, got {k!r}")
            if k < 2:
                raise ValidationError(f"radix entries must be at least 2, got {k}")
        if period:
            period = _primitive_period(period)
            while pre and pre[-1] == period[-1]:
                pre = pre[:-1]
                period = (period[-1],) + period[:-1]
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "period", period)

    @property
    def finite(self) -> bool:
        return not self.period

    def entry(self, n: int) -> int:
        """1-based access into the radix stream."""
        _check_index(n, 1)
        if n <= len(self.pre):
            return self.pre[n - 1]
        if self.finite:
            raise OutOfSupportError(n, len(self.pre))
        return self.period[(n - len(self.pre) - 1) % len(self.period)]

    def entries(self, count: int) -> tuple[int, ...]:
        _check_index(count, 0, "count")
        return tuple(self.entry(n) for n in range(1, count + 1))

    def iter_entries(self) -> Iterator[int]:
        yield from self.pre
        if self.period:
            while True:
                yield from self.period

    def shift(self, count: int) -> "RadixWord":
        """Drop the first ``count`` entries."""
        _check_index(count, 0, "count")
        if count <= len(self.pre):
            return RadixWord(self.pre[count:], self.period)
        if self.finite:
            raise OutOfSupportError(count, len(self.pre))
        offset = (count - len(self.pre)) % len(self.period)
        return RadixWord((), self.period[offset:] + self.period[:offset])


@dataclass(frozen=True)
class ZeroTail:
    """No terms after the prefix."""

    @property
    def total(self) -> Fraction:
        return ZERO


@dataclass(frozen=True)
class GeometricTail:
    first: Fraction
    ratio: Fraction

    def __post_init__(self):
        object.__setattr__(self, "first", Fraction(self.first))
        object.__setattr__(self, "ratio", Fraction(self.ratio))
        if self.first <= 0:
            raise ValidationError(f"geometric first term must be positive, got {self.first}")
        if not (0 < self.ratio < 1):
            raise ValidationError(f"geometric ratio outside (0, 1): {self.ratio}")

    @property
    def total(self) -> Fraction:
        return self.first / (1 - self.ratio)

    def term(self, j: int) -> Fraction:
        return self.first * self.ratio ** (j - 1)

    def sum_first(self, j: int) -> Fraction:
        return self.first * (1 - self.ratio**j) / (1 - self.ratio)

    def shifted(self, count: int) -> "GeometricTail":
        return GeometricTail(self.first * self.ratio**count, self.ratio)


@dataclass(frozen=True)
class MixedRadixTail:
    scale: Fraction
    radices: RadixWord

    def __post_init__(self):
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale <= 0:
            raise ValidationError(f"radix tail scale must be positive, got {self.scale}")
        if not isinstance(self.radices, RadixWord):
            raise ValidationError("radices must be a RadixWord")
        if self.radices.finite:
            raise ValidationError("a radix tail needs an infinite word (nonempty period)")

    @property
    def total(self) -> Fraction:
        return self.scale

    def blocks(self) -> Iterator[tuple[Fraction, int]]:
        """Yield (value, multiplicity) per block, forever."""
        prod = 1
        for k in self.radices.iter_entries():
            prod *= k
            yield self.scale / prod, k - 1

    def locate(self, j: int) -> tuple[int, int, Fraction]:
        """Position of local index j: (full blocks before it, offset inside
        the next block, tail remaining after those full blocks).

        offset == 0 means j sits exactly on a block boundary.
        """
        consumed = 0
        blocks_done = 0
        remaining = self.scale
        for value, size in self.blocks():
            if consumed + size >= j:
                offset = j - consumed
                if offset == size:
                    return blocks_done + 1, 0, value
                return blocks_done, offset, remaining
            consumed += size
            blocks_done += 1
            remaining = value
        raise AssertionError("unreachable: radix words are infinite here")

    def term(self, j: int) -> Fraction:
        consumed = 0
        for value, size in self.blocks():
            if j <= consumed + size:
                return value
            consumed += size

    def sum_first(self, j: int) -> Fraction:
        acc = ZERO
        consumed = 0
        for value, size in self.blocks():
            if j <= consumed + size:
                return acc + (j - consumed) * value
            acc += size * value
            consumed += size


TailModel = Union[ZeroTail, GeometricTail, MixedRadixTail]


def _tail_first_term(tail: TailModel) -> Optional[Fraction]:
    if isinstance(tail, ZeroTail):
        return None
    if isinstance(tail, GeometricTail):
        return tail.first
    return tail.term(1)


def _iter_tail_terms(tail: TailModel) -> Iterator[Fraction]:
    if isinstance(tail, ZeroTail):
        return
    if isinstance(tail, GeometricTail):
        value = tail.first
        while True:
            yield value
            value *= tail.ratio
    else:
        for value, size in tail.blocks():
            for _ in range(size):
                yield value


def _scale_tail(tail: TailModel, factor: Fraction) -> TailModel:
    if isinstance(tail, ZeroTail):
        return tail
    if isinstance(tail, GeometricTail):
        return GeometricTail(tail.first * factor, tail.ratio)
    return MixedRadixTail(tail.scale * factor, tail.radices)


@dataclass(frozen=True)
class SequenceModel:
    """Explicit prefix plus closed-form tail, validated on construction."""

    prefix: tuple[Fraction, ...] = ()
    tail: TailModel = ZeroTail()

    def __post_init__(self):
        prefix = tuple(Fraction(x) for x in self.prefix)
        for x in prefix:
            if x <= 0:
                raise ValidationError(f"sequence entries must be positive, got {x}")
        for a, b in zip(prefix, prefix[1:]):
            if a < b:
                raise ValidationError(f"prefix is not non-increasing: {a} before {b}")
        if not isinstance(self.tail, (ZeroTail, GeometricTail, MixedRadixTail)):
            raise ValidationError("tail must be a ZeroTail, GeometricTail, or MixedRadixTail")
        first = _tail_first_term(self.tail)
        if prefix and first is not None and prefix[-1] < first:
            raise ValidationError(
                f"junction violation: last prefix entry {prefix[-1]} is below "
                f"the first tail term {first}"
            )
        object.__setattr__(self, "prefix", prefix)

    @cached_property
    def total(self) -> Fraction:
        return sum(self.prefix, ZERO) + self.tail.total

    @property
    def finite(self) -> bool:
        return isinstance(self.tail, ZeroTail)

    @property
    def support(self) -> Optional[int]:
        """Number of terms, or None when the sequence is infinite."""
        return len(self.prefix) if self.finite else None

    @cached_property
    def _prefix_suffix_sums(self) -> tuple[Fraction, ...]:
        sums = [ZERO]
        for x in reversed(self.prefix):
            sums.append(sums[-1] + x)
        return tuple(reversed(sums))

    def term(self, n: int) -> Fraction:
        """1-based term access; finite models raise past their support."""
        _check_index(n, 1)
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        if self.finite:
            raise OutOfSupportError(n, len(self.prefix))
        return self.tail.term(n - len(self.prefix))

    def iter_terms(self) -> Iterator[Fraction]:
        yield from self.prefix
        yield from _iter_tail_terms(self.tail)

    def first_terms(self, count: int) -> tuple[Fraction, ...]:
        _check_index(count, 0, "count")
        terms = tuple(itertools.islice(self.iter_terms(), count))
        if len(terms) < count:
            raise OutOfSupportError(count, len(self.prefix))
        return terms

    def tail_sum(self, n: int) -> Fraction:
        """Exact sum of all terms with index strictly greater than n."""
        _check_index(n, 0)
        if n <= len(self.prefix):
            return self._prefix_suffix_sums[n] + self.tail.total
        if self.finite:
            return ZERO
        return self.tail.total - self.tail.sum_first(n - len(self.prefix))

    def partial_sum(self, n: int) -> Fraction:
        """Exact sum of the first n terms."""
        return self.total - self.tail_sum(n)


def make_model(prefix: Sequence, tail: Optional[TailModel] = None) -> SequenceModel:
    """Validated constructor; ``tail`` defaults to a ZeroTail."""
    return SequenceModel(tuple(prefix), tail if tail is not None else ZeroTail())


def split_leading(model: SequenceModel, count: int) -> tuple[tuple[Fraction, ...], SequenceModel]:
    """First ``count`` terms plus a model of everything after them.

    The remainder re-anchors the tail: geometric tails advance, radix tails
    re-emerge at the next block boundary with the leftover block slots made
    explicit. Concatenating the two pieces reproduces the original sequence
    term for term.
    """
    _check_index(count, 0, "count")
    prefix = model.prefix
    if count <= len(prefix):
        return prefix[:count], SequenceModel(prefix[count:], model.tail)
    taken = model.first_terms(count)  # raises OutOfSupportError on finite models
    j = count - len(prefix)
    tail = model.tail
    if isinstance(tail, GeometricTail):
        return taken, SequenceModel((), tail.shifted(j))
    assert isinstance(tail, MixedRadixTail)
    blocks_done, offset, _ = tail.locate(j)
    if offset == 0:
        prod = 1
        for i in range(blocks_done):
            prod *= tail.radices.entry(i + 1)
        rest = MixedRadixTail(tail.scale / prod, tail.radices.shift(blocks_done))
        return taken, SequenceModel((), rest)
    prod = 1
    for i in range(blocks_done + 1):
        prod *= tail.radices.entry(i + 1)
    value = tail.scale / prod
    size = tail.radices.entry(blocks_done + 1) - 1
    extra = (value,) * (size - offset)
    rest_tail = MixedRadixTail(value, tail.radices.shift(blocks_done + 1))
    return taken, SequenceModel(extra, rest_tail)


def _term_or_none(model: SequenceModel, n: int) -> Optional[Fraction]:
    try:
        return model.term(n)
    except OutOfSupportError:
        return None


def _suffix_signature(model: SequenceModel, start: int):
    """Canonical description of the terms past position ``start``.

    Only meaningful for start >= len(prefix). Geometric tails with ratio 1/2
    are folded into their radix-word form (the all-2 word), and radix tails
    cut mid-block are folded back to a block boundary, so two models with the
    same term stream get identical signatures.
    """
    if model.finite:
        return ("end",)
    j = start - len(model.prefix)
    tail = model.tail
    if isinstance(tail, GeometricTail):
        first = tail.first * tail.ratio**j
        if tail.ratio == Fraction(1, 2):
            return ("radix", 2 * first, RadixWord((), (2,)))
        return ("geometric", first, tail.ratio)
    assert isinstance(tail, MixedRadixTail)
    blocks_done, offset, _ = tail.locate(j) if j > 0 else (0, 0, tail.scale)
    if offset == 0:
        prod = 1
        for i in range(blocks_done):
            prod *= tail.radices.entry(i + 1)
        return ("radix", tail.scale / prod, tail.radices.shift(blocks_done))
    prod = 1
    for i in range(blocks_done + 1):
        prod *= tail.radices.entry(i + 1)
    value = tail.scale / prod
    size = tail.radices.entry(blocks_done + 1) - 1
    remaining = size - offset
    shifted = tail.radices.shift(blocks_done + 1)
    folded = RadixWord((remaining + 1,) + shifted.pre, shifted.period)
    return ("radix", (remaining + 1) * value, folded)


def same_sequence(a: SequenceModel, b: SequenceModel) -> bool:
    """Exact equality of the term streams, regardless of representation.

    Decidable because tails are closed forms: compare terms through both
    explicit prefixes, then compare canonical signatures of the suffixes.
    """
    head = max(len(a.prefix), len(b.prefix))
    for n in range(1, head + 1):
        if _term_or_none(a, n) != _term_or_none(b, n):
            return False
    return _suffix_signature(a, head) == _suffix_signature(b, head)


@dataclass(frozen=True)
class MatrixFactor:
    """A dim x dim matrix block carrying ``weight`` of the trace."""

    dim: int
    weight: Fraction

    def __post_init__(self):
        if isinstance(self.dim, bool) or not isinstance(self.dim, int) or self.dim < 1:
            raise ValidationError(f"factor dimension must be an integer >= 1, got {self.dim!r}")
        object.__setattr__(self, "weight", Fraction(self.weight))
        if self.weight <= 0:
            raise ValidationError(f"factor weight must be positive, got {self.weight}")


@dataclass(frozen=True)
class AlgebraSpec:
    """Finite atomic tracial algebra: matrix factors plus an optional abelian tail.

    The trace is a state, so factor weights and the tail total must sum to 1
    exactly.
    """

    factors: tuple[MatrixFactor, ...] = ()
    abelian_tail: Optional[TailModel] = None

    def __post_init__(self):
        factors = tuple(self.factors)
        for f in factors:
            if not isinstance(f, MatrixFactor):
                raise ValidationError("factors must be MatrixFactor instances")
        tail_total = self.abelian_tail.total if self.abelian_tail is not None else ZERO
        total = sum((f.weight for f in factors), ZERO) + tail_total
        if total != 1:
            raise ValidationError(f"factor weights and tail must sum to 1, got {total}")
        object.__setattr__(self, "factors", factors)


def from_algebra(spec: AlgebraSpec) -> SequenceModel:
    """Atom traces of the algebra, merged into one non-increasing model.

    Each factor (dim, weight) contributes dim atoms of weight/dim; the
    abelian tail contributes one atom per term. Tail terms at least as large
    as the smallest finite atom move into the explicit prefix so the merged
    sequence stays monotone, and the tail is re-anchored after them.
    """
    atoms: list[Fraction] = []
    for f in spec.factors:
        atoms.extend([f.weight / f.dim] * f.dim)
    tail = spec.abelian_tail if spec.abelian_tail is not None else ZeroTail()
    if not atoms:
        return SequenceModel((), tail)
    if isinstance(tail, ZeroTail):
        return SequenceModel(tuple(sorted(atoms, reverse=True)), ZeroTail())
    a_min = min(atoms)
    moved = 0
    if isinstance(tail, GeometricTail):
        value = tail.first
        while value >= a_min:
            moved += 1
            value *= tail.ratio
            if moved > _REANCHOR_LIMIT:
                raise UnsupportedSpecError(
                    "cannot re-anchor: tail terms stay above the smallest atom too long"
                )
    else:
        for value, size in tail.blocks():
            if value < a_min:
                break
            moved += size
            if moved > _REANCHOR_LIMIT:
                raise UnsupportedSpecError(
                    "cannot re-anchor: tail terms stay above the smallest atom too long"
                )
    taken, rest = split_leading(SequenceModel((), tail), moved)
    merged = tuple(sorted(atoms + list(taken), reverse=True))
    # ``rest`` has an empty prefix here: geometric splits always do, and the
    # radix walk above only ever stops on a block boundary.
    assert not rest.prefix
    return SequenceModel(merged, rest.tail)
