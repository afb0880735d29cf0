import math

import numpy as np
import pytest
from conftest import EXAMPLE, S
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import (
    greedy_resimulate,
    kannappan_resimulate,
    mahmoud_resimulate,
    max_cardinality,
    min_complete_weight,
)

from kfeval import (
    DistanceMatrix,
    InputError,
    MatcherKind,
    greedy_match,
    hungarian_match,
    kannappan_match,
    mahmoud_match,
    maximal_match,
    run_matcher,
    validate_matching,
)
from kfeval.matchers import hopcroft_karp


@st.composite
def distinct_matrices(draw, max_side=7):
    n = draw(st.integers(1, max_side))
    m = draw(st.integers(1, max_side))
    perm = draw(st.permutations(range(n * m)))
    scale = draw(st.sampled_from([1.0, 0.013, 7.5]))
    return np.array(perm, float).reshape(n, m) * scale / (n * m) + scale * 0.01


thetas = st.floats(0.001, 2.0)


class TestExampleGraph:
    def test_greedy(self, example):
        m = greedy_match(example, 200)
        assert m.pairs == ((2, 1, 0.01), (0, 0, 1.0))

    def test_mahmoud_natural_order(self, example):
        assert mahmoud_match(example, 200).index_pairs() == {(0, 0), (1, 1), (2, 2)}

    def test_mahmoud_reversed_rows(self):
        rev = np.array(EXAMPLE)[::-1]
        m = mahmoud_match(rev, 200)
        # row f13 takes f22 (0.01), f12 then has nothing, f11 takes f21.
        assert m.index_pairs() == {(0, 1), (2, 0)}
        assert set(m.index_pairs()) == set(mahmoud_resimulate(rev, 200))

    def test_kannappan(self, example):
        assert kannappan_match(example, 200).pairs == ((2, 1, 0.01),)

    def test_maximal(self, example):
        m = maximal_match(example, 200)
        assert m.cardinality == 3
        assert sorted(p.weight for p in m) == [1.0, 10.0, 100.0]

    def test_hungarian(self, example):
        m = hungarian_match(example)
        assert m.index_pairs() == {(0, 0), (1, 1), (2, 2)}
        assert m.total_weight == 111.0

    @pytest.mark.parametrize("kind", [k for k in MatcherKind if k.uses_threshold])
    def test_tiny_threshold_gives_nothing(self, example, kind):
        assert run_matcher(kind, example, 0.005).cardinality == 0

    def test_sentinel_never_matched_by_thresholded(self, example):
        for kind in MatcherKind:
            if kind.uses_threshold:
                m = run_matcher(kind, example, 1e8)
                assert all(p.weight < S for p in m)


def test_unknown_matcher():
    with pytest.raises(InputError, match="valid choices"):
        MatcherKind.parse("blossom")


def test_single_entry():
    assert hungarian_match([[0.3]]).pairs == ((0, 0, 0.3),)


def test_kannappan_includes_global_min():
    rng = np.random.default_rng(11)
    for _ in range(50):
        d = rng.random((4, 6))
        i, j = np.unravel_index(np.argmin(d), d.shape)
        assert (i, j) in kannappan_match(d, d.min() + 1e-9).index_pairs()


def test_ties_resolved_lexicographically():
    d = np.zeros((3, 3))
    assert greedy_match(d, 1).index_pairs() == {(0, 0), (1, 1), (2, 2)}
    assert greedy_match(d, 1).pairs[0][:2] == (0, 0)
    assert kannappan_match(d, 1).index_pairs() == {(0, 0)}
    once = [run_matcher(k, d, 1).pairs for k in MatcherKind]
    again = [run_matcher(k, d, 1).pairs for k in MatcherKind]
    assert once == again


def test_hopcroft_karp_path_through_long_chain():
    # Chain graph where the first greedy choice must be undone repeatedly.
    n = 200
    adjacency = [[i, i + 1] if i + 1 < n else [i] for i in range(n)]
    adjacency = [sorted(a, reverse=True) for a in adjacency]
    match = hopcroft_karp(adjacency, n)
    assert sorted(match) == list(range(n))


def test_hungarian_rectangular_both_ways():
    rng = np.random.default_rng(2)
    for shape in [(2, 5), (5, 2), (1, 4), (4, 1)]:
        d = rng.random(shape)
        m = hungarian_match(d)
        assert m.cardinality == min(shape)
        assert m.total_weight == pytest.approx(min_complete_weight(d), abs=1e-9)


def test_hungarian_against_scipy():
    from scipy.optimize import linear_sum_assignment
    rng = np.random.default_rng(4)
    for _ in range(30):
        d = rng.random((rng.integers(1, 30), rng.integers(1, 30)))
        r, c = linear_sum_assignment(d)
        assert hungarian_match(d).total_weight == pytest.approx(d[r, c].sum(), abs=1e-9)


@settings(max_examples=150, deadline=None)
@given(distinct_matrices(), thetas)
def test_against_literal_loops(d, theta):
    g = greedy_match(d, theta)
    assert [tuple(p) for p in g] == greedy_resimulate(d, theta)
    assert [p[:2] for p in mahmoud_match(d, theta)] == mahmoud_resimulate(d, theta)
    assert kannappan_match(d, theta).index_pairs() == kannappan_resimulate(d, theta)
    weights = [p.weight for p in g]
    assert weights == sorted(weights) and len(set(weights)) == len(weights)


@settings(max_examples=150, deadline=None)
@given(distinct_matrices(), thetas)
def test_ordering_invariants(d, theta):
    g = greedy_match(d, theta)
    k = kannappan_match(d, theta)
    x = maximal_match(d, theta)
    mh = mahmoud_match(d, theta)
    for m in (g, k, x, mh):
        assert validate_matching(m, d, theta)
    assert validate_matching(hungarian_match(d), d, math.inf)
    assert k.index_pairs() <= g.index_pairs()
    assert len(k) <= len(g) <= len(x)
    assert len(g) >= math.ceil(len(x) / 2)
    assert len(mh) <= len(x)
    assert len(x) == max_cardinality(d, theta)


@settings(max_examples=80, deadline=None)
@given(distinct_matrices(max_side=6), thetas, thetas)
def test_greedy_monotone_in_theta(d, t1, t2):
    lo, hi = sorted((t1, t2))
    assert len(greedy_match(d, lo)) <= len(greedy_match(d, hi))


@settings(max_examples=100, deadline=None)
@given(distinct_matrices())
def test_hungarian_optimal(d):
    m = hungarian_match(DistanceMatrix(d))
    assert m.cardinality == min(d.shape)
    assert m.total_weight == pytest.approx(min_complete_weight(d), abs=1e-9)
