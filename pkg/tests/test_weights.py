"""Classification, the three distribution methods, and cross-verification."""

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st
from math import comb

from cyclotome._engine import decode_profile, sample_weights
from cyclotome.codes import (
    CodeSpec,
    DerivedParams,
    codeword_weight_from_periods,
    derive_params,
)
from cyclotome.cyclotomy import gaussian_periods
from cyclotome.errors import (
    CapExceeded,
    IndependenceFails,
    NonIntegralWeight,
    UnsupportedCase,
)
from cyclotome.weights import (
    Caps,
    TAG_E3T2N2,
    TAG_TE_N1,
    TAG_TE_N2,
    TAG_TLT_N1,
    TAG_UNSUPPORTED,
    TProfile,
    WeightDistribution,
    classify,
    count_vanishing_patterns,
    cross_verify,
    profile_weight,
    wd_closed,
    wd_naive,
    wd_tsum,
)
from helpers import criterion_grid, tower, tower_for

S1 = CodeSpec(3, 1, 3, 2, 2, 1, (0, 1), (1, 2, 0, 1))
S3 = CodeSpec(5, 1, 2, 3, 3, 1, (0, 1, 2), (2, 4, 1))
S6 = CodeSpec(7, 1, 2, 3, 2, 2, (0, 1), (3, 6, 1))
STHM3 = CodeSpec(5, 1, 3, 4, 3, 1, (0, 1, 2), (3, 3, 0, 1))
S5 = CodeSpec(2, 1, 6, 7, 7, 1, tuple(range(7)), (1, 1, 0, 1, 1, 0, 1))


def setup_for(spec):
    tw = tower_for(spec)
    return tw, derive_params(tw, spec)


class TestClassify:
    def test_corpus_tags(self):
        expected = {
            S1: (TAG_TE_N1, None),
            CodeSpec(7, 1, 2, 2, 2, 1, (0, 1), (3, 6, 1)):
                (TAG_TE_N2, "order2"),
            S3: (TAG_TE_N2, "semiprimitive"),
            CodeSpec(7, 1, 3, 3, 3, 1, (0, 1, 2), (4, 0, 6, 1)):
                (TAG_TE_N2, "order3"),
            S5: (TAG_TE_N2, "index2"),
            S6: (TAG_E3T2N2, None),
            STHM3: (TAG_TLT_N1, None),
        }
        for sp, (tag, source) in expected.items():
            tw, d = setup_for(sp)
            cl = classify(tw, sp, d)
            assert (cl.tag, cl.period_source) == (tag, source), sp

    def test_exact_fallback(self):
        sp = CodeSpec(3, 1, 4, 2, 2, 4, (0, 1))  # N = 8, no special shape
        tw, d = setup_for(sp)
        cl = classify(tw, sp, d)
        assert d.N == 8 and (cl.tag, cl.period_source) == (TAG_TE_N2, "exact")

    def test_unsupported_cases(self):
        # t < e with N >= 2 outside the six-weight case
        sp = CodeSpec(11, 1, 2, 10, 2, 1, (0, 1))
        tw, d = setup_for(sp)
        assert d.N == 2
        cl = classify(tw, sp, d)
        assert cl.tag == TAG_UNSUPPORTED
        # invalid conditions
        bad = CodeSpec(2, 1, 4, 5, 2, 3, (0, 1))
        tw, d = setup_for(bad)
        assert classify(tw, bad, d).tag == TAG_UNSUPPORTED

    def test_singular_minor_unsupported(self):
        sp = CodeSpec(2, 3, 2, 7, 3, 1, (0, 1, 3))
        tw, d = setup_for(sp)
        cl = classify(tw, sp, d)
        assert cl.tag == TAG_UNSUPPORTED and "minor" in cl.reason
        with pytest.raises(IndependenceFails):
            wd_closed(tw, sp, d, cl)


class TestNaive:
    def test_example_1(self):
        tw, d = setup_for(S1)
        dist = wd_naive(tw, d)
        assert dist.entries == ((0, 1), (9, 52), (18, 676))
        assert dist.enumerator_str() == "1 + 52z^9 + 676z^18"
        assert (dist.n, dist.kappa, dist.d) == (26, 6, 9)

    def test_cap(self):
        tw, d = setup_for(S1)
        with pytest.raises(CapExceeded):
            wd_naive(tw, d, cap=100)


class TestTsum:
    def test_agrees_with_naive(self):
        for sp in (S1, S3, S6, STHM3):
            tw, d = setup_for(sp)
            assert wd_tsum(tw, d).entries == wd_naive(tw, d).entries

    def test_total_partitions_input_space(self):
        tw, d = setup_for(S6)
        assert wd_tsum(tw, d).total == 49 ** 2

    def test_cap(self):
        tw, d = setup_for(S5)
        with pytest.raises(CapExceeded):
            wd_tsum(tw, d, cap=10 ** 6)

    def test_profile_route_matches_fast_route(self, monkeypatch):
        # force the profile-decoding branch (normally reserved for
        # irrational periods) and check it reproduces the direct tally
        from cyclotome.cyclotomy import GaussianPeriodSet
        tw, d = setup_for(S6)
        fast = wd_tsum(tw, d)
        monkeypatch.setattr(
            GaussianPeriodSet, "rational_values",
            property(lambda self: (None,) * self.L))
        slow = wd_tsum(tw, d)
        assert slow.entries == fast.entries

    def test_agrees_with_naive_outside_validity(self):
        # the period-sum identity never used the distinctness or degree
        # conditions, so both enumerations agree even where they fail
        for sp in (CodeSpec(2, 1, 4, 5, 2, 3, (0, 1)),    # iii fails
                   CodeSpec(3, 1, 3, 2, 2, 26, (0, 1))):  # a = 0 mod r-1
            tw, d = setup_for(sp)
            assert wd_tsum(tw, d).entries == wd_naive(tw, d).entries

    def test_distribution_invariant_under_primitive_change(self):
        # same parameters over a different primitive modulus: class labels
        # permute but the weight distribution cannot move
        alt = CodeSpec(3, 1, 3, 2, 2, 1, (0, 1))  # auto modulus
        tw_alt, d_alt = setup_for(alt)
        tw, d = setup_for(S1)
        assert tw_alt.modulus != tw.modulus
        assert wd_tsum(tw_alt, d_alt).entries == wd_tsum(tw, d).entries


class TestProfiles:
    def test_decode_roundtrip(self):
        # e = 4 digits over base N+1 = 4
        code = 3 + 4 * 0 + 16 * 2 + 64 * 3
        u0, counts = decode_profile(code, 3, 4)
        assert u0 == 2 and counts == (1, 0, 1)

    def test_profile_weight_matches_scalar_route(self):
        tw, d = setup_for(S6)
        ps = gaussian_periods(tw, d.N)
        x = (5, 29)
        parts = []
        for h in range(d.e):
            v = 0
            for xj, b in zip(x, d.betas):
                v = tw.add(v, tw.mul(xj, tw.pow(b, h)))
            parts.append(tw.mul(tw.pow(d.g, h), v))
        u0 = sum(1 for v in parts if v == 0)
        counts = [0] * d.N
        for v in parts:
            if v:
                counts[tw.dlog_of(v) % d.N] += 1
        prof = TProfile(u0, tuple(counts))
        assert profile_weight(tw, d, ps, prof) == \
            codeword_weight_from_periods(tw, d, ps, x)

    def test_irrational_period_arithmetic(self):
        # order-16 periods of GF(81) are not all rational; the profile
        # machinery must still produce exact integers for balanced profiles
        # and refuse unbalanced ones
        tw = tower(3, 1, 4)
        ps = gaussian_periods(tw, 16)
        assert any(v is None for v in ps.rational_values)
        fake = DerivedParams(e=16, t=2, a=1, a_list=(1, 6), delta=1, n=80,
                             N=16, g=tw.gamma, betas=(1, tw.gamma))
        balanced = TProfile(0, (1,) * 16)  # sum of all periods is -1
        w = profile_weight(tw, fake, ps, balanced)
        assert w == (tw.q - 1) * (16 * 80 + 16) // (tw.q * 16)
        lopsided = TProfile(15, (1,) + (0,) * 15)
        with pytest.raises(NonIntegralWeight):
            profile_weight(tw, fake, ps, lopsided)


class TestClosed:
    def test_full_column_table(self):
        tw, d = setup_for(S1)
        assert wd_closed(tw, S1, d).entries == ((0, 1), (9, 52), (18, 676))

    def test_order2_table(self):
        sp = CodeSpec(7, 1, 2, 2, 2, 1, (0, 1), (3, 6, 1))
        tw, d = setup_for(sp)
        assert wd_closed(tw, sp, d).entries == (
            (0, 1), (18, 48), (24, 48), (36, 576), (42, 1152), (48, 576))

    def test_semiprimitive_aggregation_detail(self):
        # weight 8 merges the compositions (u0,u1,u2) = (1,2,0) and (2,0,1):
        # multinomial * ((r-1)/N)^(u1+u2) * (N-1)^(u2) gives 192 + 48
        tw, d = setup_for(S3)
        dist = wd_closed(tw, S3, d)
        at8 = dict(dist.entries)[8]
        term_120 = 3 * 8 ** 2
        term_201 = 3 * 8 * 2
        assert at8 == term_120 + term_201 == 240

    def test_sparse_column_table(self):
        tw, d = setup_for(STHM3)
        dist = wd_closed(tw, STHM3, d)
        assert dist.entries == ((0, 1), (50, 744), (75, 61008),
                                (100, 1891372))
        assert dist.d == 50 == (tw.q - 1) * tw.r * (d.e - d.t + 1) \
            // (d.delta * d.e * tw.q)

    def test_six_weight_table(self):
        tw, d = setup_for(S6)
        assert wd_closed(tw, S6, d).entries == (
            (0, 1), (12, 72), (16, 72), (18, 264), (20, 864), (22, 864),
            (24, 264))

    def test_unsupported_raises(self):
        sp = CodeSpec(11, 1, 2, 10, 2, 1, (0, 1))
        tw, d = setup_for(sp)
        with pytest.raises(UnsupportedCase):
            wd_closed(tw, sp, d)

    def test_any_offset_pair_in_six_weight_case(self):
        # the six-weight table holds for offsets other than (0, 1)
        for deltas in ((0, 2), (1, 2)):
            sp = CodeSpec(7, 1, 2, 3, 2, 2, deltas, (3, 6, 1))
            tw, d = setup_for(sp)
            cl = classify(tw, sp, d)
            assert cl.tag == TAG_E3T2N2
            assert wd_closed(tw, sp, d, cl).entries == \
                wd_naive(tw, d).entries


class TestVanishingPatterns:
    def test_full_pattern_empty(self):
        tw, d = setup_for(STHM3)
        assert count_vanishing_patterns(tw, d, {0, 1, 2}) == 0

    def test_sparse_inclusion_exclusion_value(self):
        tw, d = setup_for(STHM3)
        for h in range(4):
            assert count_vanishing_patterns(tw, d, {h}) == 15252
        # 15252 = (r^2 - 1) - 3 (r - 1) for r = 125
        assert 15252 == (125 ** 2 - 1) - 3 * (125 - 1)

    def test_partition_of_nonzero_inputs(self):
        tw, d = setup_for(S6)
        total = sum(count_vanishing_patterns(tw, d, E)
                    for E in ((), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2),
                              (0, 1, 2)))
        assert total == tw.r ** d.t - 1

    def test_cap_and_range_checks(self):
        tw, d = setup_for(S6)
        with pytest.raises(CapExceeded):
            count_vanishing_patterns(tw, d, {0}, cap=10)
        with pytest.raises(ValueError):
            count_vanishing_patterns(tw, d, {5})


class TestWeightDistributionType:
    def test_merging_and_sorting(self):
        dist = WeightDistribution.from_counts(10, 2, {3: 4, 1: 2, 3: 4})
        assert dist.entries == ((1, 2), (3, 4))
        dist2 = WeightDistribution.from_counts(10, 2, [0, 5, 0, 7])
        assert dist2.entries == ((1, 5), (3, 7))
        assert dist2.d == 1

    def test_json_counts_are_strings(self):
        dist = WeightDistribution.from_counts(5, 1, {2: 64 ** 7})
        assert dist.to_json_entries() == [{"w": 2, "count": str(64 ** 7)}]


class TestCrossVerify:
    def test_all_methods_agree_small(self):
        rep = cross_verify(S1)
        assert rep.passed and sorted(rep.distributions) == \
            ["closed", "naive", "tsum"]
        assert rep.sampling is None

    def test_unsupported_still_compares_enumerations(self):
        rep = cross_verify(CodeSpec(11, 1, 2, 10, 2, 1, (0, 1)))
        assert rep.classification.tag == TAG_UNSUPPORTED
        assert sorted(rep.distributions) == ["naive", "tsum"]
        assert rep.agreed and rep.passed

    def test_large_field_uses_sampling(self):
        rep = cross_verify(S5, Caps(sample_count=20000))
        assert list(rep.distributions) == ["closed"]
        assert rep.sampling is not None and rep.sampling["ok"]
        assert rep.passed

    def test_json_shape(self):
        obj = cross_verify(S1).to_json_dict()
        assert obj["methods_agreed"] is True
        assert obj["weights"][1] == {"w": 9, "count": "52"}

    def test_sampled_weights_match_scalar_route(self):
        tw, d = setup_for(S5)
        ps = gaussian_periods(tw, 7)
        nval = np.zeros(tw.r, dtype=np.int64)
        nval[0] = tw.r - 1
        vals = np.array(ps.rational_values, dtype=np.int64) * d.N
        nval[tw.exp] = vals[np.arange(tw.r - 1) % d.N]
        ws = sample_weights(tw, d, nval, (tw.q, d.delta, d.e), 50, seed=123)
        rng = np.random.default_rng(123)
        codes = rng.integers(0, tw.r, size=(50, 7))
        eoc = np.concatenate([[0], tw.exp])
        for row, w in zip(codes, ws):
            x = tuple(int(eoc[c]) for c in row)
            assert codeword_weight_from_periods(tw, d, ps, x) == int(w)


class TestFuzzAgreement:
    POOL = [(2, 1, 4), (3, 1, 2), (3, 1, 3), (5, 1, 2), (7, 1, 2),
            (2, 2, 2), (3, 2, 1), (13, 1, 1)]

    @settings(max_examples=25, deadline=None)
    @given(st.data())
    def test_naive_equals_tsum_on_random_specs(self, data):
        # the two enumerations must agree for arbitrary parameters with
        # e | r - 1, valid or not
        p, s, m = data.draw(st.sampled_from(self.POOL))
        tw = tower(p, s, m)
        divisors = [e for e in range(2, 9) if (tw.r - 1) % e == 0]
        assume(divisors)
        e = data.draw(st.sampled_from(divisors))
        t = data.draw(st.integers(2, e))
        assume(tw.r ** t <= 6561)
        a = data.draw(st.integers(1, tw.r - 2))
        offs = data.draw(st.permutations(range(e)))
        sp = CodeSpec(p, s, m, e, t, a, tuple(offs[:t]))
        d = derive_params(tw, sp)
        assert wd_naive(tw, d).entries == wd_tsum(tw, d).entries


class TestTableConsistency:
    def test_sparse_table_specializes_to_full_table(self):
        # at t = e the two frequency formulas coincide term by term
        for r in (9, 25, 27, 49):
            for e in range(2, 11):
                for u in range(1, e + 1):
                    lhs = comb(e, e - u) * sum(
                        (-1) ** k * comb(u, k) * (r ** (u - k) - 1)
                        for k in range(u))
                    assert lhs == comb(e, u) * (r - 1) ** u

    def test_six_weight_frequency_sum(self):
        for r in (9, 25, 49, 81, 121, 169, 625):
            total = (1 + 2 * (3 * (r - 1) // 2)
                     + 2 * ((r - 1) * (r - 5) // 8)
                     + 2 * (3 * (r - 1) ** 2 // 8))
            assert total == r ** 2

    def test_weight_count_bound(self):
        # distinct nonzero weights never exceed C(mu + e, e) - 1
        from cyclotome.cyclotomy import distinct_values
        for sp, d, cl in criterion_grid()[:20]:
            if cl.tag != TAG_TE_N2:
                continue
            tw = tower_for(sp)
            mu = distinct_values(gaussian_periods(tw, d.N)).mu
            dist = wd_closed(tw, sp, d, cl)
            nonzero = sum(1 for w, _ in dist.entries if w > 0)
            assert nonzero <= comb(mu + d.e, d.e) - 1
