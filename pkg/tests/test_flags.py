from __future__ import annotations

import math

import numpy as np
import pytest

from citeheat.entropy import JournalMargins, TriangleCells, triangle_evaluation
from citeheat.errors import DataError
from citeheat.flags import (
    ThresholdSpec,
    build_flag_report,
    compute_threshold,
    flag_links,
    flag_monotonic,
    flag_revision,
    remove_outliers,
)

from helpers import make_tensor, oracle_triangle, random_active_grids


def _margins_of(values, direction="cited") -> JournalMargins:
    values = np.asarray(values, dtype=float)
    return JournalMargins(
        direction=direction, values=values, mean=float(values.mean()), sd=float(values.std())
    )


def _triangle_of(values) -> TriangleCells:
    values = np.asarray(values, dtype=float)
    n = len(values)
    return TriangleCells(
        citing=np.arange(n, dtype=np.int64),
        cited=np.arange(1, n + 1, dtype=np.int64) % n,
        values=values,
        mean=float(values.mean()),
        sd=float(values.std()),
        n_nodes=n,
    )


def _hub_fixture_tensor():
    """One wildly swinging hub cell (inflates the SD) plus a borderline
    cell that crosses the threshold only once the hub is removed."""
    grids = [np.zeros((5, 5), dtype=np.int64) for _ in range(3)]
    hub = (5, 30, 120)
    border = (40, 52, 70)
    for y in range(3):
        grids[y][4, 0] = hub[y]
        grids[y][0, 1] = border[y]
        grids[y][1, 2] = 500
        grids[y][2, 3] = 500
        grids[y][3, 0] = 500
        grids[y][0, 4] = 500
    return make_tensor(grids)


class TestComputeThreshold:
    def test_hand_computed_example(self):
        spec = compute_threshold(np.array([1.0, 2.0, 3.0, 4.0, 5.0]), k=1.0)
        assert spec.mean == pytest.approx(3.0)
        assert spec.sd == pytest.approx(math.sqrt(2), rel=1e-12)
        assert spec.upper == pytest.approx(4.414214, abs=5e-7)
        assert spec.lower == pytest.approx(1.585786, abs=5e-7)

    def test_constant_values(self):
        spec = compute_threshold(np.array([2.5, 2.5, 2.5]), k=1.0)
        assert spec.sd == 0.0
        assert spec.upper == spec.lower == spec.mean == 2.5

    def test_k_zero_collapses(self):
        spec = compute_threshold(np.array([1.0, 9.0]), k=0.0)
        assert spec.upper == spec.lower == spec.mean

    def test_empty_errors(self):
        with pytest.raises(DataError, match="empty"):
            compute_threshold(np.array([]), k=1.0)


class TestFlagMonotonic:
    def test_requires_both_intervals(self):
        m01 = _margins_of([0, 0, 0, 0, 0, 10])
        m12 = _margins_of([1, 1, 1, 1, 1, 1])
        up, down = flag_monotonic(m01, m12, k=1.0)
        assert up == frozenset()
        assert down == frozenset()

    def test_degenerate_equal_values_flag_nothing(self):
        m = _margins_of([3, 3, 3, 3])
        up, down = flag_monotonic(m, m, k=1.0)
        assert up == frozenset() and down == frozenset()

    def test_injected_climber_is_the_only_flag(self):
        m01 = _margins_of([0, 0, 0, 0, 0, 10])
        m12 = _margins_of([1, 0, 1, 0, 1, 12])
        up, down = flag_monotonic(m01, m12, k=1.0)
        assert up == frozenset({5})
        assert down == frozenset()

    def test_decliner(self):
        m01 = _margins_of([0, 0, 0, 0, 0, -10])
        m12 = _margins_of([0, 1, 0, 1, 0, -12])
        up, down = flag_monotonic(m01, m12, k=1.0)
        assert down == frozenset({5})
        assert up == frozenset()

    def test_direction_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            flag_monotonic(_margins_of([1], "cited"), _margins_of([1], "citing"), 1.0)


class TestFlagRevision:
    def test_all_zero_flags_nothing(self):
        vector = _margins_of([0.0] * 5)
        assert flag_revision(vector, k=1.0) == frozenset()

    def test_strongly_negative_node_flagged(self):
        values = [0.1, 0.2, 0.0, -0.1, 0.1, -5.0]
        assert flag_revision(_margins_of(values), k=1.0) == frozenset({5})

    def test_matches_brute_force_filter(self, rng):
        values = rng.normal(0, 1, size=10)
        vector = _margins_of(values)
        mean, sd = values.mean(), values.std()
        expected = frozenset(int(i) for i in range(10) if values[i] < mean - 1.0 * sd)
        assert flag_revision(vector, k=1.0) == expected


class TestFlagLinks:
    def test_worked_threshold_from_reported_dyad(self):
        cells = _triangle_of([(1.251 + 2.465 - 4.728) / 1000.0, 0.0, 0.0])
        explicit = ThresholdSpec(k=1.0, mean=0.0, sd=0.0, upper=0.0, lower=-0.935e-3)
        hot = flag_links(cells, threshold=explicit, drop_loops=False)
        assert [(c, d) for c, d, _ in hot] == [(0, 1)]

    def test_boundary_equal_not_flagged(self):
        cells = _triangle_of([-1.0, 1.0])  # mean 0, sd exactly 1
        assert flag_links(cells, k=1.0, drop_loops=False) == ()

    def test_injected_cell_found_by_oracle_and_flags(self, rng):
        grids = random_active_grids(rng, 8, density=0.9, high=50)
        for grid, count in zip(grids, (20, 45, 130)):  # inject a hot cell
            grid[2, 6] = count
        tensor = make_tensor(grids)
        cells = triangle_evaluation(tensor)
        oracle = oracle_triangle(grids)
        scores = oracle["scores"]
        lower = oracle["mean"] - oracle["sd"]
        expected = {
            (c, d)
            for c in range(8)
            for d in range(8)
            if c != d and not np.isnan(scores[c, d]) and scores[c, d] < lower
        }
        assert (2, 6) in expected
        assert {(c, d) for c, d, _ in flag_links(cells, k=1.0)} == expected

    def test_drop_loops_removes_diagonal(self):
        values = np.array([-5.0, -4.9, 1.0, 1.2, 0.8, 0.9])
        cells = TriangleCells(
            citing=np.array([0, 1, 2, 3, 4, 5]),
            cited=np.array([0, 2, 3, 4, 5, 1]),  # first cell is a loop
            values=values,
            mean=float(values.mean()),
            sd=float(values.std()),
            n_nodes=6,
        )
        with_loops = flag_links(cells, k=1.0, drop_loops=False)
        without = flag_links(cells, k=1.0, drop_loops=True)
        assert {(c, d) for c, d, _ in with_loops} == {(0, 0), (1, 2)}
        assert {(c, d) for c, d, _ in without} == {(1, 2)}


class TestRemoveOutliers:
    def test_remaining_counts_untouched(self):
        tensor = _hub_fixture_tensor()
        reduced = remove_outliers(tensor, ["J004"])
        kept = reduced.year_matrix(0).cells
        original = tensor.year_matrix(0).cells
        names, rnames = tensor.registry.names, reduced.registry.names
        for (c, d), count in kept.items():
            old = (names.index(rnames[c]), names.index(rnames[d]))
            assert original[old] == count

    def test_empty_list_is_identity(self, small_tensor):
        assert remove_outliers(small_tensor, []) is small_tensor

    def test_unknown_node_errors(self, small_tensor):
        with pytest.raises(DataError, match="unknown"):
            remove_outliers(small_tensor, ["Nope"])

    def test_borderline_cell_crosses_after_removal(self):
        tensor = _hub_fixture_tensor()
        hot_before = {(c, d) for c, d, _ in flag_links(triangle_evaluation(tensor), 1.0)}
        assert hot_before == {(4, 0)}  # only the hub cell

        reduced = remove_outliers(tensor, ["J004"])
        names = reduced.registry.names
        hot_after = {
            (names[c], names[d])
            for c, d, _ in flag_links(triangle_evaluation(reduced), 1.0)
        }
        assert hot_after == {("J000", "J001")}

    def test_commutes_with_prebuilt_restriction(self, rng):
        # Cascade-free by construction: every node keeps citing activity.
        grids = random_active_grids(rng, 6, density=0.9, high=30)
        tensor = make_tensor(grids)
        reduced = remove_outliers(tensor, ["J003"])

        trimmed = [np.delete(np.delete(g, 3, axis=0), 3, axis=1) for g in grids]
        rebuilt = make_tensor(trimmed)
        # make_tensor names nodes densely, so align via counts only
        assert np.array_equal(reduced.counts, rebuilt.counts)
        assert np.array_equal(reduced.citing, rebuilt.citing)
        assert np.array_equal(reduced.cited, rebuilt.cited)
        assert reduced.registry.names == ("J000", "J001", "J002", "J004", "J005")


class TestReportAndProperties:
    def test_flag_sets_antitone_in_k(self, rng):
        grids = random_active_grids(rng, 10, density=0.7, high=50)
        tensor = make_tensor(grids)
        previous = None
        for k in (0.0, 0.5, 1.0, 2.0):
            report = build_flag_report(tensor, k=k)
            current = {
                "links": set(report.hot_links),
                "rev_cited": set(report.revision_flagged["cited"]),
                "rev_citing": set(report.revision_flagged["citing"]),
                "up_cited": set(report.monotonic_up["cited"]),
                "down_citing": set(report.monotonic_down["citing"]),
                "tri_cited": set(report.triangle_flagged_nodes["cited"]),
            }
            if previous is not None:
                for key in current:
                    assert current[key] <= previous[key]
            previous = current

    def test_flag_sets_scale_invariant(self, rng):
        grids = random_active_grids(rng, 7, density=0.8, high=40)
        base = build_flag_report(make_tensor(grids))
        scaled = build_flag_report(make_tensor([grids[0], 7 * grids[1], grids[2]]))
        assert base.hot_links == scaled.hot_links
        for direction in ("cited", "citing"):
            assert base.monotonic_up[direction] == scaled.monotonic_up[direction]
            assert base.monotonic_down[direction] == scaled.monotonic_down[direction]
            assert base.revision_flagged[direction] == scaled.revision_flagged[direction]
            assert (
                base.triangle_flagged_nodes[direction]
                == scaled.triangle_flagged_nodes[direction]
            )

    def test_rerun_is_deterministic(self, small_tensor):
        a = build_flag_report(small_tensor)
        b = build_flag_report(small_tensor)
        assert a.hot_links == b.hot_links
        assert a.monotonic_up == b.monotonic_up
        assert a.thresholds == b.thresholds

    def test_monotonic_sets_disjoint_and_strict(self, rng):
        grids = random_active_grids(rng, 9, density=0.6, high=60)
        report = build_flag_report(make_tensor(grids))
        for direction in ("cited", "citing"):
            assert not (report.monotonic_up[direction] & report.monotonic_down[direction])

    def test_hot_links_within_tri_valid_and_loopless(self, rng):
        grids = random_active_grids(rng, 8, density=0.8, high=40)
        for g in grids:
            np.fill_diagonal(g, 5)  # live self-citation cells
        tensor = make_tensor(grids)
        report = build_flag_report(tensor, k=0.0)  # flag everything below the mean
        tri_cells = {
            (int(c), int(d))
            for c, d in zip(tensor.citing[tensor.tri_valid], tensor.cited[tensor.tri_valid])
        }
        for c, d, _ in report.hot_links:
            assert c != d
            assert (c, d) in tri_cells

    def test_outliers_recorded_and_registry_shrinks(self):
        tensor = _hub_fixture_tensor()
        report = build_flag_report(tensor, outliers=["J004"])
        assert report.outliers_removed == ("J004",)
        assert report.tensor.n_nodes == 4
