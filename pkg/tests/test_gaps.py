"""Gap sequences: rect distances, MST vs oracle routes, components, scaling.

The grid MST is checked against two independent routes: the quadratic
union-find oracle and a pure-python Prim on tiny inputs.
"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import lgcarpet as lg
from lgcarpet import GapSequence, Rect, synth
from lgcarpet.errors import EmptyInput, OracleCapExceeded, TooFewGaps

coord = st.floats(0, 1, allow_nan=False, allow_infinity=False)
extent = st.floats(0, 0.5, allow_nan=False, allow_infinity=False)
rect_strategy = st.builds(Rect, coord, coord, extent, extent)


def prim_gap_values(rects):
    """Pure-python Prim over the full rect_distance matrix, positive edges."""
    n = len(rects)
    in_tree = [False] * n
    best = [math.inf] * n
    best[0] = 0.0
    weights = []
    for _ in range(n):
        u = min((k for k in range(n) if not in_tree[k]), key=lambda k: best[k])
        in_tree[u] = True
        if best[u] > 0.0:
            weights.append(best[u])
        for v in range(n):
            if not in_tree[v]:
                d = lg.rect_distance(rects[u], rects[v])
                if d < best[v]:
                    best[v] = d
    return sorted(weights, reverse=True)


class TestRectDistance:
    def test_separated_horizontally(self):
        assert lg.rect_distance(Rect(0, 0, 1, 1), Rect(3, 0, 1, 1)) == 2.0

    def test_separated_vertically(self):
        assert lg.rect_distance(Rect(0, 0, 1, 1), Rect(0, 5, 1, 1)) == 4.0

    def test_diagonal_is_hypot(self):
        d = lg.rect_distance(Rect(0, 0, 1, 1), Rect(4, 5, 1, 1))
        assert d == pytest.approx(math.hypot(3, 4))

    def test_touching_edges(self):
        assert lg.rect_distance(Rect(0, 0, 1, 1), Rect(1, 0, 1, 1)) == 0.0

    def test_overlapping(self):
        assert lg.rect_distance(Rect(0, 0, 2, 2), Rect(1, 1, 2, 2)) == 0.0

    def test_degenerate_points(self):
        a, b = Rect(0, 0, 0, 0), Rect(1, 1, 0, 0)
        assert lg.rect_distance(a, b) == pytest.approx(math.sqrt(2))

    @given(rect_strategy, rect_strategy)
    def test_symmetric_nonnegative(self, r1, r2):
        d = lg.rect_distance(r1, r2)
        assert d >= 0.0
        assert d == lg.rect_distance(r2, r1)

    @given(rect_strategy, rect_strategy, coord, coord)
    def test_translation_invariant(self, r1, r2, dx, dy):
        shift = lambda r: Rect(r.x0 + dx, r.y0 + dy, r.w, r.h)
        d0 = lg.rect_distance(r1, r2)
        d1 = lg.rect_distance(shift(r1), shift(r2))
        assert d1 == pytest.approx(d0, abs=1e-12)


class TestGapSequenceShape:
    def test_flat_expands_multiplicities(self):
        seq = GapSequence(entries=((0.5, 1), (0.25, 3)))
        assert seq.flat() == [0.5, 0.25, 0.25, 0.25]
        assert seq.flat(limit=2) == [0.5, 0.25]
        assert seq.total_multiplicity == 4

    def test_single_rect_has_no_gaps(self):
        seq = lg.gap_sequence_mst([Rect(0, 0, 1, 1)])
        assert seq.entries == ()

    def test_touching_rects_merge_silently(self):
        rects = [Rect(0, 0, 1, 1), Rect(1, 0, 1, 1), Rect(2, 0, 1, 1)]
        assert lg.gap_sequence_mst(rects).entries == ()

    def test_coincident_points_collapse(self):
        rects = [Rect(0.5, 0.5, 0, 0)] * 4
        assert lg.gap_sequence_mst(rects).entries == ()

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            lg.gap_sequence_mst([])
        with pytest.raises(EmptyInput):
            lg.gap_sequence_bruteforce([])

    def test_entries_descend(self):
        rects = synth.random_rects(60, seed=3)
        seq = lg.gap_sequence_mst(rects)
        values = [v for v, _ in seq.entries]
        assert values == sorted(values, reverse=True)
        assert all(v > 0.0 for v in values)
        assert all(m >= 1 for _, m in seq.entries)
        # n rects need at most n-1 tree edges
        assert seq.total_multiplicity <= len(rects) - 1


class TestMSTAgainstOracles:
    @pytest.mark.parametrize("seed", range(15))
    def test_matches_bruteforce(self, seed):
        rects = synth.random_rects(40 + 5 * seed, seed=seed)
        mst = lg.gap_sequence_mst(rects)
        oracle = lg.gap_sequence_bruteforce(rects)
        assert mst.entries == oracle.entries

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_prim_on_tiny_sets(self, seed):
        rects = synth.random_rects(12, seed=100 + seed)
        got = lg.gap_sequence_mst(rects).flat()
        want = prim_gap_values(rects)
        assert len(got) == len(want)
        for g, w in zip(got, want):
            assert g == pytest.approx(w, rel=1e-12)

    def test_oracle_cap(self):
        rects = synth.random_rects(11, seed=0)
        with pytest.raises(OracleCapExceeded):
            lg.gap_sequence_bruteforce(rects, cap=10)


class TestCantorIntervals:
    def test_level_8_gap_sequence(self):
        # 2^8 intervals; gap 3^-n appears 2^(n-1) times
        seq = lg.gap_sequence_mst(synth.cantor_intervals(8))
        assert len(seq.entries) == 8
        for n, (value, mult) in enumerate(seq.entries, start=1):
            assert mult == 2 ** (n - 1)
            assert value == pytest.approx(3.0 ** -n, rel=1e-12)
        assert seq.value_error == 0.0

    def test_level_8_routes_agree(self):
        rects = synth.cantor_intervals(8)
        assert lg.gap_sequence_mst(rects).entries == \
            lg.gap_sequence_bruteforce(rects).entries


class TestComponents:
    def test_thresholds_on_cantor_level_3(self):
        rects = synth.cantor_intervals(3)
        # gaps: 1/3 once, 1/9 twice, 1/27 four times
        assert lg.n_delta_components(rects, 0.02) == 8
        assert lg.n_delta_components(rects, 0.05) == 4
        assert lg.n_delta_components(rects, 0.12) == 2
        assert lg.n_delta_components(rects, 0.4) == 1

    def test_closed_threshold_joins_exact_distance(self):
        rects = [Rect(0, 0, 1, 1), Rect(2, 0, 1, 1)]
        assert lg.n_delta_components(rects, 1.0) == 1
        assert lg.n_delta_components(rects, 0.999) == 2

    def test_labels_partition(self):
        rects = [Rect(0, 0, 1, 1), Rect(1.5, 0, 1, 1), Rect(10, 0, 1, 1)]
        labels = lg.component_labels(rects, 0.6)
        assert labels[0] == labels[1] != labels[2]

    def test_single_rect(self):
        labels = lg.component_labels([Rect(0, 0, 1, 1)], 0.5)
        assert list(labels) == [0]

    def test_negative_delta(self):
        with pytest.raises(ValueError):
            lg.component_labels([Rect(0, 0, 1, 1)], -0.1)

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            lg.component_labels([], 0.1)

    def test_matches_bruteforce_count(self):
        rects = synth.random_rects(80, seed=7)
        seq = lg.gap_sequence_bruteforce(rects)
        for delta in (0.01, 0.05, 0.2):
            # components at delta = 1 + number of surviving gaps > delta
            survivors = sum(m for v, m in seq.entries if v > delta)
            assert lg.n_delta_components(rects, delta) == 1 + survivors


class TestCarpetGaps:
    def test_cantor_dust_pins(self, cd):
        # top-level x gap 1/2 (one edge), y gap 1/3 (two edges); the
        # 4 * delta_res cutoff drops everything from level 2 down
        seq = lg.gap_sequence_of_carpet(cd, 1 / 27)
        assert len(seq.entries) == 2
        (v1, m1), (v2, m2) = seq.entries
        assert (m1, m2) == (1, 2)
        assert v1 == pytest.approx(0.5, rel=1e-12)
        assert v2 == pytest.approx(1 / 3, rel=1e-12)
        assert seq.value_error == pytest.approx(2 / 27)

    def test_coarser_resolution_keeps_fewer(self, cd):
        seq = lg.gap_sequence_of_carpet(cd, 1 / 9)
        assert [m for _, m in seq.entries] == [1]

    def test_refinement_extends_prefix(self, cd):
        coarse = lg.gap_sequence_of_carpet(cd, 1 / 27)
        fine = lg.gap_sequence_of_carpet(cd, 1 / 81)
        assert len(fine.entries) > len(coarse.entries)
        for (vc, mc), (vf, mf) in zip(coarse.entries, fine.entries):
            assert mc == mf
            assert vf == pytest.approx(vc, rel=1e-12)


class TestScalingFit:
    def test_exact_power_law(self):
        s = 2.0
        seq = GapSequence(entries=tuple((k ** (-1.0 / s), 1)
                                        for k in range(1, 101)))
        fit = lg.scaling_fit(seq, s)
        assert fit.slope == pytest.approx(-1.0 / s, rel=1e-9)
        assert fit.r2 == pytest.approx(1.0)
        lo, hi = fit.ratio_band
        assert hi / lo == pytest.approx(1.0, rel=1e-12)

    def test_band_detects_wrong_exponent(self):
        seq = GapSequence(entries=tuple((k ** -1.0, 1) for k in range(1, 101)))
        fit = lg.scaling_fit(seq, 2.0)  # true exponent is 1
        lo, hi = fit.ratio_band
        assert hi / lo > 5.0

    def test_too_few_gaps(self):
        seq = GapSequence(entries=((0.5, 9),))
        with pytest.raises(TooFewGaps):
            lg.scaling_fit(seq, 2.0)

    def test_multiplicities_flatten_into_k(self):
        # one entry of multiplicity 10 is a constant sequence: slope 0
        seq = GapSequence(entries=((0.25, 10),))
        fit = lg.scaling_fit(seq, 2.0)
        assert fit.slope == pytest.approx(0.0, abs=1e-12)
        assert fit.r2 == 1.0
