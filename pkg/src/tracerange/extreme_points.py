"""Extreme sequences of the unit-anchored body and their radix words.

The admissible body consists of the non-increasing sequences that never
overshoot: each term must fit under what remains of 1 after the running
total. Its extreme points are exactly the unit-scale mixed-radix patterns,
one per infinite radix word, so extremality questions reduce to decoding:
does this sequence equal the pattern of some word?

Decoding peels runs. The leading term forces everything: if the rescaled
value is 1/k, the word must start with radix k and the value must repeat
exactly k - 1 times. Any deviation pins a concrete witness index where no
pattern can match. Once the cursor leaves the explicit prefix the remaining
tail is a closed form, so the decoder can recognize the pattern's own tail
outright instead of peeling forever.

The face embedding sends the whole body into itself: prepend radix - 1
copies of 1/radix and shrink everything by that factor. Extraction inverts
it and doubles as a shape test for membership in the face.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import ONE, ZERO
from .errors import DomainError, UnsupportedSpecError, ValidationError
from .representability import ConditionVerdict
from .sequences import (
    GeometricTail,
    MixedRadixTail,
    RadixWord,
    SequenceModel,
    ZeroTail,
    _check_index,
    _suffix_signature,
    _tail_first_term,
    _term_or_none,
    split_leading,
)

__all__ = [
    "ExtremalityReport",
    "RadixWord",
    "admissibility_check",
    "bits_to_digits",
    "digits_to_bits",
    "face_embed",
    "face_extract",
    "face_membership",
    "mixed_radix_digits",
    "radix_to_sequence",
    "sequence_to_radix",
]

DEFAULT_DECODE_DEPTH = 64

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ExtremalityReport:
    """Outcome of decoding a sequence against the mixed-radix patterns.

    ``status`` is one of ``"extreme"`` (with the recovered word),
    ``"non_extreme"`` (with the first index where every candidate pattern
    breaks), or ``"undecided"`` (the peel budget ran out first).
    """

    status: str
    word: Optional[RadixWord] = None
    witness_index: Optional[int] = None
    depth: Optional[int] = None

    def __post_init__(self):
        expected = {
            "extreme": (True, False, False),
            "non_extreme": (False, True, False),
            "undecided": (False, False, True),
        }
        if self.status not in expected:
            raise ValidationError(f"unknown extremality status {self.status!r}")
        has = (self.word is not None, self.witness_index is not None, self.depth is not None)
        if has != expected[self.status]:
            raise ValidationError(f"fields do not match status {self.status!r}")

    @classmethod
    def extreme(cls, word: RadixWord) -> "ExtremalityReport":
        return cls("extreme", word=word)

    @classmethod
    def non_extreme(cls, witness_index: int) -> "ExtremalityReport":
        return cls("non_extreme", witness_index=witness_index)

    @classmethod
    def undecided(cls, depth: int) -> "ExtremalityReport":
        return cls("undecided", depth=depth)


def admissibility_check(model: SequenceModel) -> ConditionVerdict:
    """Membership test for the unit-anchored body.

    Every term must satisfy term(n) <= 1 - partial_sum(n). A violation is
    reported at its first index with the gap (1 - partial_sum(n), term(n)).
    Prefix indices are scanned directly; tail families are settled in closed
    form, so sequences whose total exceeds 1 still get a finite witness.
    """
    sigma = ONE - model.total
    for n in range(1, len(model.prefix) + 1):
        a = model.prefix[n - 1]
        room = sigma + model.tail_sum(n)
        if a > room:
            return ConditionVerdict(False, n, (room, a))
    tail = model.tail
    if isinstance(tail, ZeroTail):
        return ConditionVerdict(True)
    offset = len(model.prefix)
    if isinstance(tail, GeometricTail):
        j = _geometric_first_excess(tail, sigma)
    else:
        j = _radix_first_excess(tail, sigma)
    if j is None:
        return ConditionVerdict(True)
    n = offset + j
    return ConditionVerdict(False, n, (sigma + model.tail_sum(n), model.term(n)))


def _geometric_first_excess(tail: GeometricTail, sigma: Fraction) -> Optional[int]:
    """Least tail index whose term exceeds sigma plus the sum after it.

    For term f*r^(j-1) the excess condition reads d * r^(j-1) > sigma with
    d = f*(1-2r)/(1-r). The sign of d and the monotonicity of r^(j-1) settle
    every case without scanning.
    """
    ratio = tail.ratio
    d = tail.first * (1 - 2 * ratio) / (1 - ratio)
    if sigma >= 0:
        if ratio >= _HALF or d <= sigma:
            return None
        return 1
    if ratio <= _HALF:
        return 1
    # d < 0 > sigma and d * r^(j-1) increases toward 0, so the condition
    # holds from some j on; find the first by doubling then bisecting.
    def excess(j: int) -> bool:
        return d * ratio ** (j - 1) > sigma

    if excess(1):
        return 1
    hi = 2
    while not excess(hi):
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if excess(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _radix_first_excess(tail: MixedRadixTail, sigma: Fraction) -> Optional[int]:
    """Least tail index of a mixed-radix tail violating the sigma-shifted
    condition, or None.

    The pattern satisfies term <= sum-after on its own with equality at block
    ends, so sigma >= 0 means no violation and sigma < 0 forces one inside
    the first block, at the first offset i with (k - i - 1) * value < -sigma.
    """
    if sigma >= 0:
        return None
    k = tail.radices.entry(1)
    value = tail.scale / k
    i = math.floor(k - 1 + sigma / value) + 1
    return max(1, i)


def radix_to_sequence(word: RadixWord, scale=1) -> SequenceModel:
    """The mixed-radix pattern of ``word``: k_j - 1 copies of
    scale / (k_1 * ... * k_j) for each j."""
    if not isinstance(word, RadixWord):
        raise ValidationError("expected a RadixWord")
    if word.finite:
        raise UnsupportedSpecError(
            "a finite radix word does not define an infinite sequence"
        )
    return SequenceModel((), MixedRadixTail(Fraction(scale), word))


def _first_deviation(
    model: SequenceModel, start: int, count: int, value: Fraction
) -> Optional[int]:
    """Least index in [start, start + count) whose term differs from
    ``value``, or None when all of them match.

    Indices past a finite support count as deviations. Tail stretches are
    resolved without stepping term by term: geometric terms never repeat, and
    a radix block either matches wholesale or pins the break at its edge.
    """
    end = start + count
    n = start
    length = len(model.prefix)
    while n < end and n <= length:
        if model.prefix[n - 1] != value:
            return n
        n += 1
    if n >= end:
        return None
    tail = model.tail
    if isinstance(tail, ZeroTail):
        return n
    j = n - length
    if isinstance(tail, GeometricTail):
        if tail.term(j) != value:
            return n
        following = n + 1
        return following if following < end else None
    blocks_done, offset, remaining = tail.locate(j)
    if offset == 0:
        block_value = remaining
        block_last = j
    else:
        k = tail.radices.entry(blocks_done + 1)
        block_value = remaining / k
        block_last = j - offset + (k - 1)
    if block_value != value:
        return n
    following = length + block_last + 1
    return following if following < end else None


def sequence_to_radix(
    model: SequenceModel, depth: int = DEFAULT_DECODE_DEPTH
) -> ExtremalityReport:
    """Decode a sequence against the unit-scale mixed-radix patterns.

    Maintains the product of radices peeled so far; at each cursor position
    the rescaled term must be a unit fraction 1/k repeated exactly k - 1
    times, or no pattern matches and the position is a witness. Once the
    cursor sits in the closed-form tail, a remainder worth exactly 1 after
    rescaling closes the word; otherwise peeling continues until a witness
    or the peel budget (``depth`` emitted radices) runs out.
    """
    _check_index(depth, 1, "depth")
    emitted: list[int] = []
    mult = Fraction(1)
    position = 1
    while True:
        if not model.finite and position > len(model.prefix):
            signature = _suffix_signature(model, position - 1)
            if signature[0] == "radix":
                scale, word = signature[1], signature[2]
                if mult * scale == 1:
                    closed = RadixWord(tuple(emitted) + word.pre, word.period)
                    return ExtremalityReport.extreme(closed)
            # a geometric remainder with ratio != 1/2 can never close; the
            # forced pattern breaks within the next two peels
        if len(emitted) >= depth:
            return ExtremalityReport.undecided(depth)
        a = _term_or_none(model, position)
        if a is None:
            # every pattern needs a positive term here; the sequence ended
            return ExtremalityReport.non_extreme(position)
        v = mult * a
        if v.numerator != 1 or v.denominator < 2:
            return ExtremalityReport.non_extreme(position)
        k = v.denominator
        deviation = _first_deviation(model, position, k - 1, a)
        if deviation is not None:
            return ExtremalityReport.non_extreme(deviation)
        emitted.append(k)
        mult *= k
        position += k - 1


def face_embed(model: SequenceModel, radix: int) -> SequenceModel:
    """Send a sequence into the face of the given radix: prepend radix - 1
    copies of 1/radix, then shrink everything by that factor."""
    _check_index(radix, 2, "radix")
    lead = model.prefix[0] if model.prefix else _tail_first_term(model.tail)
    if lead is not None and lead > 1:
        raise DomainError(f"cannot embed: leading term {lead} exceeds 1")
    unit = Fraction(1, radix)
    prefix = (unit,) * (radix - 1) + tuple(x * unit for x in model.prefix)
    tail = model.tail
    if isinstance(tail, GeometricTail):
        tail = GeometricTail(tail.first * unit, tail.ratio)
    elif isinstance(tail, MixedRadixTail):
        tail = MixedRadixTail(tail.scale * unit, tail.radices)
    return SequenceModel(prefix, tail)


def face_extract(model: SequenceModel, radix: Optional[int] = None) -> SequenceModel:
    """Invert the face embedding.

    The sequence must open with a run of exactly radix - 1 copies of
    1/radix and then drop below it; those are removed and the remainder is
    scaled back up. With ``radix`` omitted it is read off the leading term.
    Raises DomainError when the shape does not match.
    """
    first = _term_or_none(model, 1)
    if first is None:
        raise DomainError("cannot extract from an empty sequence")
    if radix is None:
        if first.numerator != 1 or first.denominator < 2:
            raise DomainError(f"leading term {first} is not a unit fraction below 1")
        radix = first.denominator
    else:
        _check_index(radix, 2, "radix")
        if first != Fraction(1, radix):
            raise DomainError(f"leading term {first} is not 1/{radix}")
    deviation = _first_deviation(model, 1, radix - 1, first)
    if deviation is not None:
        raise DomainError(
            f"leading run stops at index {deviation}, expected {radix - 1} copies of {first}"
        )
    past = _term_or_none(model, radix)
    if past == first:
        raise DomainError(f"leading run of {first} extends past {radix - 1} copies")
    _, rest = split_leading(model, radix - 1)
    prefix = tuple(x * radix for x in rest.prefix)
    tail = rest.tail
    if isinstance(tail, GeometricTail):
        tail = GeometricTail(tail.first * radix, tail.ratio)
    elif isinstance(tail, MixedRadixTail):
        tail = MixedRadixTail(tail.scale * radix, tail.radices)
    return SequenceModel(prefix, tail)


def face_membership(model: SequenceModel, radix: Optional[int] = None) -> bool:
    """Whether the sequence is the face image of an admissible sequence."""
    try:
        inner = face_extract(model, radix)
    except DomainError:
        return False
    return admissibility_check(inner).holds


def mixed_radix_digits(word: RadixWord, target, count: int) -> tuple[int, ...]:
    """First ``count`` digits of ``target`` in the mixed-radix system of
    ``word``: digit n has place value 1 / (k_1 * ... * k_n).

    Digits are chosen greedily (largest digit that still fits), which matches
    the bit expansion of the word's pattern grouped block by block. Exact
    place-value boundaries round toward the terminating expansion, and 1
    itself comes out as all k - 1 digits.
    """
    _check_index(count, 0, "count")
    if not isinstance(word, RadixWord):
        raise ValidationError("expected a RadixWord")
    residual = Fraction(target)
    if not ZERO <= residual <= ONE:
        raise DomainError(f"target {residual} outside [0, 1]")
    digits = []
    prod = 1
    for n in range(1, count + 1):
        k = word.entry(n)
        prod *= k
        d = min(math.floor(residual * prod), k - 1)
        digits.append(d)
        residual -= Fraction(d, prod)
    return tuple(digits)


def bits_to_digits(bits, word: RadixWord) -> tuple[int, ...]:
    """Group a bit expansion of the word's pattern into digits.

    Block n of the pattern holds k_n - 1 equal terms, so the digit is simply
    how many of them the bits take. A trailing partial block still yields a
    digit.
    """
    cleaned = []
    for i, bit in enumerate(bits, start=1):
        if bit not in (0, 1):
            raise ValidationError(f"bit {i} must be 0 or 1, got {bit!r}")
        cleaned.append(int(bit))
    digits = []
    index = 0
    n = 1
    while index < len(cleaned):
        size = word.entry(n) - 1
        digits.append(sum(cleaned[index : index + size]))
        index += size
        n += 1
    return tuple(digits)


def digits_to_bits(digits, word: RadixWord) -> tuple[int, ...]:
    """Expand digits back into pattern bits, ones first inside each block,
    matching what the greedy expansion produces."""
    bits: list[int] = []
    for n, d in enumerate(digits, start=1):
        k = word.entry(n)
        if isinstance(d, bool) or not isinstance(d, int) or not 0 <= d <= k - 1:
            raise ValidationError(f"digit {d!r} out of range for radix {k}")
        bits.extend([1] * d)
        bits.extend([0] * (k - 1 - d))
    return tuple(bits)
