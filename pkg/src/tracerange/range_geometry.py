"""Achievable subset-sum ranges as exact interval unions.

Truncating an infinite sequence after N terms brackets its achievable set:
every reachable value lies within tail_N of some subset sum of the first N
terms, so the union of [s, s + tail_N] over those sums is an outer
approximation. It is exact precisely when the sequence remaining after the
cut satisfies the completeness condition on its own, because then each
bracket is filled entirely.

Subset sums are enumerated by an iterated sorted merge that deduplicates as
it goes, so colliding sums (dyadic-style grids) never blow up to 2^n entries.
A separate hash-based oracle recomputes representability with witnesses by a
different route, deliberately sharing no code with the sorted merge or the
greedy expansion so the two can cross-check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import Interval, IntervalUnion, ZERO
from .errors import ResourceLimitError, ValidationError
from .representability import ConditionVerdict, kakeya_check
from .sequences import (
    AlgebraSpec,
    SequenceModel,
    _check_index,
    _suffix_signature,
    from_algebra,
    split_leading,
)

DEFAULT_TERM_BOUND = 24


def _effective_bound(bound: Optional[int]) -> int:
    if bound is None:
        return DEFAULT_TERM_BOUND
    _check_index(bound, 0, "bound")
    return bound


def _check_term_count(count: int, bound: Optional[int]) -> None:
    limit = _effective_bound(bound)
    if count > limit:
        raise ResourceLimitError(
            f"{count} terms exceed the subset-sum bound of {limit}"
        )


def _merge_dedup(xs: list[Fraction], ys: list[Fraction]) -> list[Fraction]:
    out: list[Fraction] = []
    i = j = 0
    while i < len(xs) and j < len(ys):
        a, b = xs[i], ys[j]
        if a < b:
            pick = a
            i += 1
        elif b < a:
            pick = b
            j += 1
        else:
            pick = a
            i += 1
            j += 1
        if not out or out[-1] != pick:
            out.append(pick)
    rest = xs[i:] or ys[j:]
    for pick in rest:
        if not out or out[-1] != pick:
            out.append(pick)
    return out


def subset_sums(terms: Sequence, bound: Optional[int] = None) -> list[Fraction]:
    """All distinct subset sums, ascending, by iterated sorted merge."""
    values = [Fraction(t) for t in terms]
    _check_term_count(len(values), bound)
    sums = [ZERO]
    for a in values:
        sums = _merge_dedup(sums, [s + a for s in sums])
    return sums


class SubsetSumOracle:
    """Hash-based representability table with witnesses.

    Builds the full sum -> chosen-indices map for short term lists and a
    meet-in-the-middle pair of half tables for longer ones. Either way the
    enumeration route is disjoint from both ``subset_sums`` and the greedy
    expansion, which is the point: it serves as the independent referee.
    """

    _FULL_TABLE_MAX = 16

    def __init__(self, terms: Sequence, bound: Optional[int] = None):
        self._terms = tuple(Fraction(t) for t in terms)
        _check_term_count(len(self._terms), bound)
        if len(self._terms) <= self._FULL_TABLE_MAX:
            self._table = self._enumerate(self._terms, 0)
            self._left = self._right = None
        else:
            half = len(self._terms) // 2
            self._table = None
            self._left = self._enumerate(self._terms[:half], 0)
            self._right = self._enumerate(self._terms[half:], half)

    @staticmethod
    def _enumerate(terms: tuple[Fraction, ...], base: int) -> dict:
        table: dict[Fraction, tuple[int, ...]] = {ZERO: ()}
        for offset, a in enumerate(terms):
            additions = {}
            for value, chosen in table.items():
                candidate = value + a
                if candidate not in table and candidate not in additions:
                    additions[candidate] = chosen + (base + offset,)
            table.update(additions)
        return table

    def _find(self, target: Fraction) -> Optional[tuple[int, ...]]:
        if self._table is not None:
            return self._table.get(target)
        for value, chosen in self._left.items():
            match = self._right.get(target - value)
            if match is not None:
                return chosen + match
        return None

    def representable(self, target) -> bool:
        return self._find(Fraction(target)) is not None

    def witness(self, target) -> Optional[tuple[int, ...]]:
        """A bit vector over the term list reaching ``target``, or None."""
        chosen = self._find(Fraction(target))
        if chosen is None:
            return None
        bits = [0] * len(self._terms)
        for index in chosen:
            bits[index] = 1
        return tuple(bits)


def brute_force_representable(terms: Sequence, target, bound: Optional[int] = None) -> bool:
    """Exhaustive check that ``target`` is a subset sum of ``terms``."""
    return SubsetSumOracle(terms, bound).representable(target)


def brute_force_witness(terms: Sequence, target, bound: Optional[int] = None) -> Optional[tuple[int, ...]]:
    """Bit vector reaching ``target``, found exhaustively; None if impossible."""
    return SubsetSumOracle(terms, bound).witness(target)


def _remainder_condition_holds(model: SequenceModel, cut: int) -> bool:
    """Whether the sequence left after the first ``cut`` terms satisfies the
    completeness condition on its own.

    Stays in closed form past the prefix: radix suffixes always satisfy it,
    geometric ones do exactly when the ratio is at least 1/2. This avoids
    materializing leftover block slots, which a huge radix entry could make
    arbitrarily many of.
    """
    if cut < len(model.prefix):
        _, remainder = split_leading(model, cut)
        return kakeya_check(remainder).holds
    signature = _suffix_signature(model, cut)
    if signature[0] == "geometric":
        return signature[2] >= Fraction(1, 2)
    return True


@dataclass(frozen=True)
class RangeApproximation:
    """Finite-depth outer approximation of the achievable set.

    ``exact`` records whether the union equals the full achievable set, which
    happens exactly when the sequence remaining past the cut satisfies the
    completeness condition by itself.
    """

    depth: int
    union: IntervalUnion
    exact: bool


def achievable_outer(model: SequenceModel, depth: int, bound: Optional[int] = None) -> RangeApproximation:
    """Union of [s, s + tail] over subset sums s of the first ``depth`` terms.

    Finite models clamp the cut to their support (the tail is then 0 and the
    union degenerates to the exact finite set of sums). Abutting brackets
    coalesce, so a condition-satisfying model collapses to a single interval.
    """
    _check_index(depth, 0, "depth")
    cut = depth
    if model.finite:
        cut = min(depth, len(model.prefix))
    terms = model.first_terms(cut)
    slack = model.tail_sum(cut)
    sums = subset_sums(terms, bound)
    union = IntervalUnion.from_intervals(Interval(s, s + slack) for s in sums)
    exact = _remainder_condition_holds(model, cut)
    return RangeApproximation(depth, union, exact)


@dataclass(frozen=True)
class ConvexityVerdict:
    """Whether the trace range of an algebra is convex (a full interval)."""

    convex: bool
    certificate: ConditionVerdict

    def __post_init__(self):
        if self.convex != self.certificate.holds:
            raise ValidationError("convexity must match its certificate")


def convexity_verdict(spec: AlgebraSpec) -> ConvexityVerdict:
    """Convexity of the algebra's trace range.

    The range is the set of subset sums of the atom traces; it fills [0, 1]
    exactly when the merged atom sequence passes the completeness check, and
    any violation certifies a gap. Specs with no infinite tail always fail:
    their last atom has nothing after it.
    """
    certificate = kakeya_check(from_algebra(spec))
    return ConvexityVerdict(certificate.holds, certificate)
