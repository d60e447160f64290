"""Condition checks, greedy expansions, and gap certificates."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from tracerange import (
    DomainError,
    GeometricTail,
    MixedRadixTail,
    OutOfSupportError,
    RadixWord,
    SequenceModel,
    ValidationError,
    gap_certificate,
    greedy_expand,
    kakeya_check,
    list_violations,
    make_model,
    verify_expansion,
)

from support import all_threes, cantor_like, dyadic, models, random_complete_model

F = Fraction


class TestConditionCheck:
    def test_halving_sequence_holds(self):
        verdict = kakeya_check(dyadic())
        assert verdict.holds
        assert verdict.first_violation is None
        assert verdict.gap is None

    def test_radix_patterns_hold(self):
        assert kakeya_check(all_threes()).holds
        mixed = SequenceModel((), MixedRadixTail(F(1), RadixWord((4, 2), (3, 5))))
        assert kakeya_check(mixed).holds

    def test_fast_decay_fails_at_first_index(self):
        verdict = kakeya_check(cantor_like())
        assert not verdict.holds
        assert verdict.first_violation == 1
        assert verdict.gap == (F(1, 3), F(2, 3))

    def test_finite_model_fails_at_last_index(self):
        verdict = kakeya_check(make_model([F(3, 5), F(2, 5)]))
        assert not verdict.holds
        assert verdict.first_violation == 1
        assert verdict.gap == (F(2, 5), F(3, 5))

    def test_prefix_violation_before_sound_tail(self):
        model = SequenceModel((F(1, 2), F(1, 8)), GeometricTail(F(1, 16), F(1, 2)))
        verdict = kakeya_check(model)
        assert verdict.first_violation == 1
        assert verdict.gap == (F(1, 4), F(1, 2))

    def test_violation_bound_is_tight(self):
        # equality is allowed: each term may equal the sum after it
        model = SequenceModel((F(1, 2), F(1, 4)), GeometricTail(F(1, 8), F(1, 2)))
        assert kakeya_check(model).holds

    @given(models())
    def test_verdict_matches_direct_scan(self, model):
        verdict = kakeya_check(model)
        depth = len(model.prefix) + 2
        first = None
        for n in range(1, depth + 1):
            if model.finite and n > len(model.prefix):
                break
            if model.term(n) > model.tail_sum(n):
                first = n
                break
        if first is not None:
            assert not verdict.holds
            assert verdict.first_violation == first
        elif verdict.first_violation is not None:
            assert verdict.first_violation > depth


class TestGreedyExpansion:
    def test_halving_third(self):
        expansion = greedy_expand(dyadic(), F(1, 3), 4)
        assert expansion.bits == (0, 1, 0, 1)
        assert expansion.achieved == F(5, 16)
        assert expansion.residual == F(1, 48)
        assert expansion.residual_bound == F(1, 16)

    def test_radix_pattern_half(self):
        expansion = greedy_expand(all_threes(), F(1, 2), 6)
        assert expansion.bits == (1, 0, 1, 0, 1, 0)

    def test_target_equal_to_total(self):
        expansion = greedy_expand(dyadic(), F(1), 5)
        assert expansion.bits == (1, 1, 1, 1, 1)
        assert expansion.residual == F(1, 32)

    def test_target_zero(self):
        expansion = greedy_expand(dyadic(), F(0), 5)
        assert expansion.bits == (0,) * 5
        assert expansion.achieved == 0

    def test_target_outside_range(self):
        with pytest.raises(DomainError):
            greedy_expand(dyadic(), F(3, 2), 4)
        with pytest.raises(DomainError):
            greedy_expand(dyadic(), F(-1, 2), 4)

    def test_finite_model_clamps_steps(self):
        expansion = greedy_expand(make_model([F(1, 2), F(1, 4), F(1, 4)]), F(3, 4), 10)
        assert expansion.bits == (1, 1, 0)
        assert expansion.residual == 0

    @given(st.integers(min_value=0, max_value=200), st.integers(min_value=1, max_value=200))
    def test_dyadic_expansion_matches_binary_digits(self, num, den):
        # on the halving sequence the greedy bits are the binary expansion
        target = F(min(num, den), den)
        bits = greedy_expand(dyadic(), target, 16).bits
        acc = sum(F(b, 2**i) for i, b in enumerate(bits, start=1))
        assert target - acc <= F(1, 2**16)
        assert acc <= target

    def test_greedy_residual_within_tail_bound(self):
        import random

        rng = random.Random(411)
        for _ in range(25):
            model = random_complete_model(rng)
            target = model.total * F(rng.randint(0, 16), 16)
            expansion = greedy_expand(model, target, 20)
            assert 0 <= expansion.residual <= expansion.residual_bound
            assert expansion.residual_bound == model.tail_sum(20)


class TestVerifyExpansion:
    def test_replays_selected_terms(self):
        model = dyadic()
        assert verify_expansion(model, (0, 1, 0, 1), F(1, 3)) == F(1, 48)
        assert verify_expansion(model, (1, 1), F(3, 4)) == 0

    def test_rejects_non_bits(self):
        with pytest.raises(ValidationError):
            verify_expansion(dyadic(), (0, 2), F(1, 2))

    def test_set_bit_past_support(self):
        with pytest.raises(OutOfSupportError):
            verify_expansion(make_model([F(1, 2)]), (1, 1), F(1, 2))

    def test_clear_bits_past_support_are_fine(self):
        assert verify_expansion(make_model([F(1, 2)]), (1, 0, 0), F(1, 2)) == 0

    @given(models(), st.lists(st.integers(min_value=0, max_value=1), max_size=10))
    def test_matches_manual_sum(self, model, bits):
        if model.finite and len(bits) > len(model.prefix):
            bits = bits[: len(model.prefix)]
        terms = list(itertools.islice(model.iter_terms(), len(bits)))
        expected = abs(F(1, 7) - sum((t for b, t in zip(bits, terms) if b), F(0)))
        assert verify_expansion(model, tuple(bits), F(1, 7)) == expected


class TestGapCertificates:
    def test_fast_decay_gap(self):
        assert gap_certificate(cantor_like(), 2) == (F(1, 9), F(2, 9))

    def test_finite_end_gap(self):
        assert gap_certificate(make_model([F(3, 5), F(2, 5)]), 2) == (F(0), F(2, 5))

    def test_non_violating_index_rejected(self):
        with pytest.raises(DomainError):
            gap_certificate(dyadic(), 3)

    def test_list_violations_scans_in_order(self):
        found = list_violations(make_model([F(3, 5), F(2, 5)]), 4)
        assert found == [(1, (F(2, 5), F(3, 5))), (2, (F(0), F(2, 5)))]

    def test_list_violations_geometric(self):
        found = list_violations(cantor_like(), 3)
        assert [n for n, _ in found] == [1, 2, 3]
        assert found[0][1] == (F(1, 3), F(2, 3))

    @given(models(), st.integers(min_value=1, max_value=8))
    def test_listed_gaps_match_certificates(self, model, depth):
        for n, gap in list_violations(model, depth):
            assert gap_certificate(model, n) == gap
            lo, hi = gap
            assert lo < hi
