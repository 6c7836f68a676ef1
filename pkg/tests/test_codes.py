"""Parameter derivation, validity conditions, polynomials, codewords."""

import random
from math import gcd

import pytest
from hypothesis import given, strategies as st

from cyclotome.codes import (
    CodeSpec,
    build_polynomials,
    codeword,
    codeword_weight_from_periods,
    derive_params,
    independent_power_rows,
    validate_assumptions,
)
from cyclotome.cyclotomy import gaussian_periods
from cyclotome.errors import AssumptionViolated, EDoesNotDivide
from helpers import tower, tower_for

S1 = CodeSpec(3, 1, 3, 2, 2, 1, (0, 1), (1, 2, 0, 1))
S6 = CodeSpec(7, 1, 2, 3, 2, 2, (0, 1), (3, 6, 1))
S5 = CodeSpec(2, 1, 6, 7, 7, 1, tuple(range(7)), (1, 1, 0, 1, 1, 0, 1))


def setup_for(spec):
    tw = tower_for(spec)
    return tw, derive_params(tw, spec)


class TestDeriveParams:
    def test_known_examples(self):
        _, d1 = setup_for(S1)
        assert (d1.a_list, d1.delta, d1.n, d1.N) == ((1, 14), 1, 26, 1)
        _, d6 = setup_for(S6)
        assert (d6.a_list, d6.delta, d6.n, d6.N) == ((2, 18), 2, 24, 2)
        _, d5 = setup_for(S5)
        assert d5.a_list == (1, 10, 19, 28, 37, 46, 55)
        assert (d5.delta, d5.n, d5.N) == (1, 63, 7)

    def test_e_must_divide(self):
        sp = CodeSpec(3, 1, 3, 4, 2, 1, (0, 1))
        with pytest.raises(EDoesNotDivide):
            derive_params(tower_for(sp), sp)

    def test_divisibility_relation(self):
        # e * delta divides N * (q - 1) for every valid spec
        for spec in (S1, S6, S5, CodeSpec(5, 1, 3, 4, 3, 1, (0, 1, 2))):
            tw, d = setup_for(spec)
            assert (d.N * (tw.q - 1)) % (spec.e * d.delta) == 0

    def test_spec_shape_validation(self):
        with pytest.raises(ValueError):
            CodeSpec(3, 1, 3, 2, 2, 1, (0,))
        with pytest.raises(ValueError):
            CodeSpec(3, 1, 3, 2, 1, 1, (0,))


class TestValidateAssumptions:
    def test_all_hold_with_sqrt_shortcut(self):
        tw, d = setup_for(S1)
        rep = validate_assumptions(tw, S1, d)
        assert rep.all_hold and rep.iii_method == "sqrt-bound"

    def test_a_zero_fails_i(self):
        sp = CodeSpec(3, 1, 3, 2, 2, 26, (0, 1))
        rep = validate_assumptions(tower_for(sp), sp)
        assert not rep.cond_i

    def test_repeated_offsets_fail_ii(self):
        sp = CodeSpec(3, 1, 3, 2, 2, 1, (0, 0))
        rep = validate_assumptions(tower_for(sp), sp)
        assert not rep.cond_ii and "repeated" in rep.witnesses["ii"]

    def test_offset_gcd_fails_ii(self):
        sp = CodeSpec(5, 1, 2, 4, 2, 1, (0, 2))
        rep = validate_assumptions(tower_for(sp), sp)
        assert not rep.cond_ii

    def test_shared_coset_fails_iii(self):
        sp = CodeSpec(2, 1, 4, 5, 2, 3, (0, 1))
        rep = validate_assumptions(tower_for(sp), sp)
        assert rep.cond_i and rep.cond_ii and not rep.cond_iii
        assert rep.iii_method == "direct-only"


class TestIndependence:
    def test_consecutive_columns_independent(self):
        sp = CodeSpec(5, 1, 3, 4, 3, 1, (0, 1, 2), (3, 3, 0, 1))
        tw, d = setup_for(sp)
        assert independent_power_rows(tw, d)

    def test_square_case_is_vandermonde(self):
        tw, d = setup_for(S1)
        assert independent_power_rows(tw, d)

    def test_coincident_rows_detected(self):
        sp = CodeSpec(5, 1, 2, 4, 2, 1, (0, 2))
        tw, d = setup_for(sp)
        assert not independent_power_rows(tw, d)

    def test_sparse_offsets_can_fail(self):
        # valid conditions, yet three rows of the 7 x 3 matrix are dependent
        sp = CodeSpec(2, 3, 2, 7, 3, 1, (0, 1, 3))
        tw, d = setup_for(sp)
        assert validate_assumptions(tw, sp, d).all_hold
        assert not independent_power_rows(tw, d)


class TestPolynomials:
    def test_example_factors_and_product(self):
        tw, d = setup_for(S1)
        polys = build_polynomials(tw, S1, d)
        assert [f.gfp_coeffs() for f in polys.factors] == \
            [(1, 0, 2, 1), (2, 0, 1, 1)]
        assert polys.h.gfp_coeffs() == (2, 0, 2, 0, 2, 0, 1)

    def test_h_times_g_is_xn_minus_1(self):
        for spec in (S1, S6, CodeSpec(5, 1, 3, 4, 3, 1, (0, 1, 2))):
            tw, d = setup_for(spec)
            polys = build_polynomials(tw, spec, d)
            prod = [0] * (d.n + 1)
            for i, a in enumerate(polys.h.coeffs):
                if a:
                    for j, b in enumerate(polys.g.coeffs):
                        prod[i + j] = tw.add(prod[i + j], tw.mul(a, b))
            expected = [tw.neg(1)] + [0] * (d.n - 1) + [1]
            assert prod == expected

    def test_degree_is_tm_under_condition_iii(self):
        tw, d = setup_for(S5)
        polys = build_polynomials(tw, S5, d)
        assert polys.h.degree == S5.t * S5.m
        assert polys.h.gfp_coeffs() == (1,) + (0,) * 20 + (1,) + (0,) * 20 + (1,)

    def test_assumption_violation_raises(self):
        sp = CodeSpec(2, 1, 4, 5, 2, 3, (0, 1))
        tw, d = setup_for(sp)
        with pytest.raises(AssumptionViolated):
            build_polynomials(tw, sp, d)


class TestCodewords:
    def test_zero_input(self):
        tw, d = setup_for(S1)
        assert codeword(tw, d, (0, 0)) == (0,) * 26

    def test_single_generator_weight(self):
        # symbols run over Tr(gamma^i): the kernel of the trace meets
        # GF(27)* in 8 points, so 26 - 8 symbols are nonzero
        tw, d = setup_for(S1)
        w = sum(1 for c in codeword(tw, d, (1, 0)) if c)
        kernel_nonzero = sum(
            1 for x in range(1, 27) if tw.trace_to_q(x) == 0)
        assert w == 26 - kernel_nonzero == 18

    def test_cyclic_shift_is_a_codeword(self):
        tw, d = setup_for(S6)
        rng = random.Random(7)
        for _ in range(5):
            x = tuple(rng.randrange(tw.r) for _ in range(d.t))
            cw = codeword(tw, d, x)
            shifted = (cw[-1],) + cw[:-1]
            x2 = tuple(tw.mul(xj, tw.gamma_pow(-aj))
                       for xj, aj in zip(x, d.a_list))
            assert codeword(tw, d, x2) == shifted

    def test_map_is_linear(self):
        tw, d = setup_for(S1)
        rng = random.Random(3)
        for _ in range(5):
            x = tuple(rng.randrange(27) for _ in range(2))
            y = tuple(rng.randrange(27) for _ in range(2))
            s = tuple(tw.add(a, b) for a, b in zip(x, y))
            cx, cy, cs = (codeword(tw, d, v) for v in (x, y, s))
            assert cs == tuple(tw.add(a, b) for a, b in zip(cx, cy))

    def test_injective_iff_condition_iii(self):
        # valid spec: all r^t inputs give distinct codewords
        sp = CodeSpec(2, 2, 2, 3, 2, 1, (0, 1))
        tw, d = setup_for(sp)
        assert validate_assumptions(tw, sp, d).all_hold
        words = {codeword(tw, d, (x1, x2))
                 for x1 in range(16) for x2 in range(16)}
        assert len(words) == 16 ** 2
        # condition iii broken: the map collapses
        sp2 = CodeSpec(2, 1, 4, 5, 2, 3, (0, 1))
        tw2, d2 = setup_for(sp2)
        words2 = {codeword(tw2, d2, (x1, x2))
                  for x1 in range(16) for x2 in range(16)}
        assert len(words2) < 16 ** 2


class TestWeightFromPeriods:
    def test_zero_input(self):
        tw, d = setup_for(S1)
        ps = gaussian_periods(tw, d.N)
        assert codeword_weight_from_periods(tw, d, ps, (0, 0)) == 0

    def test_matches_symbol_count_exhaustively(self):
        for spec in (S1, S6, CodeSpec(3, 1, 2, 2, 2, 1, (0, 1))):
            tw, d = setup_for(spec)
            ps = gaussian_periods(tw, d.N)
            for x1 in range(tw.r):
                for x2 in range(0, tw.r, 3):
                    x = (x1, x2)
                    wa = codeword_weight_from_periods(tw, d, ps, x)
                    wb = sum(1 for c in codeword(tw, d, x) if c)
                    assert wa == wb

    def test_matches_symbol_count_random_large(self):
        tw, d = setup_for(S5)
        ps = gaussian_periods(tw, 7)
        rng = random.Random(11)
        for _ in range(25):
            x = tuple(rng.randrange(64) for _ in range(7))
            assert codeword_weight_from_periods(tw, d, ps, x) == \
                sum(1 for c in codeword(tw, d, x) if c)

    def test_wrong_period_order_rejected(self):
        tw, d = setup_for(S1)
        with pytest.raises(ValueError):
            codeword_weight_from_periods(tw, d, gaussian_periods(tw, 2),
                                         (1, 0))

    def test_first_moment_identity_exhaustive(self):
        # summing weights over all inputs counts each coordinate's nonzero
        # fraction: n * r^t * (q-1)/q
        sp = CodeSpec(3, 1, 2, 2, 2, 1, (0, 1))
        tw, d = setup_for(sp)
        total = sum(
            sum(1 for c in codeword(tw, d, (x1, x2)) if c)
            for x1 in range(9) for x2 in range(9))
        assert total == d.n * 9 ** 2 * 2 // 3

    def test_repeated_long_word_weight(self):
        # the length-(r-1) word repeats the codeword delta times
        tw, d = setup_for(S6)
        x = (3, 11)
        cw = codeword(tw, d, x)
        powers = [tw.gamma_pow(ai) for ai in d.a_list]
        cur = list(x)
        long_w = 0
        for _ in range(tw.r - 1):
            acc = 0
            for xj in cur:
                acc = tw.add(acc, xj)
            if tw.trace_to_q(acc):
                long_w += 1
            cur = [tw.mul(xj, w) for xj, w in zip(cur, powers)]
        assert long_w == d.delta * sum(1 for c in cw if c)
