import math

import numpy as np
import pytest
from conftest import S
from hypothesis import given, settings
from hypothesis import strategies as st

from kfeval import (
    DistanceMatrix,
    FeatureVector,
    InputError,
    Matching,
    MetricKind,
    Summary,
    Threshold,
    build_distance_matrix,
    frame_distance,
    validate_matching,
)


def indicator(b):
    v = [0.0] * 16
    v[b] = 1.0
    return v


histograms = st.lists(st.floats(0, 1), min_size=16, max_size=16).filter(
    lambda xs: sum(xs) > 1e-3).map(lambda xs: [x / sum(xs) for x in xs])


def summaries(max_frames=5):
    return st.lists(histograms, min_size=1, max_size=max_frames).map(
        lambda fs: Summary.from_features("s", fs))


class TestTypes:
    def test_feature_vector_rejects_wrong_length(self):
        with pytest.raises(InputError):
            FeatureVector(tuple([1.0] + [0.0] * 14))

    def test_feature_vector_rejects_unnormalised(self):
        with pytest.raises(InputError):
            FeatureVector(tuple([0.5] * 16))
        with pytest.raises(InputError):
            FeatureVector(tuple([0.0] * 16))

    def test_feature_vector_rejects_negative(self):
        with pytest.raises(InputError):
            FeatureVector(tuple([1.5, -0.5] + [0.0] * 14))

    def test_empty_summary_rejected(self):
        with pytest.raises(InputError, match="empty summary"):
            Summary("x", ())

    def test_summary_indices_strictly_increasing(self):
        s = Summary.from_features("x", [indicator(0), indicator(1)])
        with pytest.raises(InputError):
            Summary("y", (s.frames[1], s.frames[0]))

    @pytest.mark.parametrize("rows", [[[-1.0]], [[math.nan]], [[math.inf]], [], [[]]])
    def test_distance_matrix_rejects(self, rows):
        with pytest.raises(InputError):
            DistanceMatrix(rows)

    def test_distance_matrix_is_read_only(self, example):
        with pytest.raises(ValueError):
            example.d[0, 0] = 5.0

    @pytest.mark.parametrize("theta", [0, -1, math.nan])
    def test_threshold_positive(self, theta):
        with pytest.raises(InputError):
            Threshold(theta)


class TestBuildDistanceMatrix:
    def test_identity_single_frame(self):
        a = Summary.from_features("a", [indicator(3)])
        assert build_distance_matrix(a, a).d.tolist() == [[0.0]]

    def test_indicator_l1_is_two(self):
        a = Summary.from_features("a", [indicator(0)])
        b = Summary.from_features("b", [indicator(5)])
        assert build_distance_matrix(a, b, MetricKind.L1).d.tolist() == [[2.0]]
        assert build_distance_matrix(a, b, "l2").d[0, 0] == pytest.approx(math.sqrt(2))

    @pytest.mark.parametrize("metric", list(MetricKind))
    def test_entries_match_scalar_distance(self, metric):
        rng = np.random.default_rng(7)
        a = Summary.from_features("a", rng.dirichlet(np.ones(16), size=2))
        b = Summary.from_features("b", rng.dirichlet(np.ones(16), size=3))
        d = build_distance_matrix(a, b, metric)
        assert d.shape == (2, 3)
        for i, fa in enumerate(a):
            for j, fb in enumerate(b):
                assert d.d[i, j] == pytest.approx(
                    frame_distance(fa.features, fb.features, metric), abs=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(summaries(), summaries(), st.sampled_from(list(MetricKind)))
    def test_zero_diagonal_and_transpose_symmetry(self, a, b, metric):
        assert np.allclose(np.diag(build_distance_matrix(a, a, metric).d), 0.0, atol=1e-12)
        ab = build_distance_matrix(a, b, metric).d
        ba = build_distance_matrix(b, a, metric).d
        assert np.allclose(ab, ba.T, atol=1e-12)


class TestValidateMatching:
    def test_empty_matching_valid(self, example):
        assert validate_matching(Matching(), example, 0.5)

    def test_repeated_row_invalid(self, example):
        m = Matching(((0, 0, 1.0), (0, 1, 0.1)))
        assert not validate_matching(m, example, 200)

    def test_repeated_col_invalid(self, example):
        m = Matching(((0, 1, 0.1), (2, 1, 0.01)))
        assert not validate_matching(m, example, 200)

    def test_example_greedy_valid(self, example):
        m = Matching(((2, 1, 0.01), (0, 0, 1.0)))
        assert validate_matching(m, example, Threshold(200))

    def test_weight_must_equal_entry(self, example):
        assert not validate_matching(Matching(((0, 0, 2.0),)), example, 200)

    def test_threshold_is_strict(self, example):
        m = Matching(((0, 0, 1.0),))
        assert not validate_matching(m, example, 1.0)
        assert validate_matching(m, example, 1.0000001)

    def test_out_of_range(self, example):
        with pytest.raises(InputError, match="pair index out of range"):
            validate_matching(Matching(((3, 0, 1.0),)), example, 200)

    def test_sentinel_edge_ok_without_threshold(self, example):
        m = Matching.from_indices(example, [(0, 2)])
        assert m.pairs[0].weight == S
        assert validate_matching(m, example)
        assert not validate_matching(m, example, 200)
