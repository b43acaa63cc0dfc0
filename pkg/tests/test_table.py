import numpy as np
import pytest

from dcsvm import (
    AllPredictionsTable,
    KernelSpec,
    ValidationError,
    balance_index,
    build_all_predictions_table,
    chi,
    compute_likelihoods,
    format_metrics,
    format_table,
    purity_index,
    score,
    separated_cell_count,
    separation_percentage,
    train_binary_svm,
    train_pair_classifiers,
    undecided_classes,
)
from dcsvm.data import LabeledDataset

from conftest import make_blobs
from fixtures import (
    SIX_LABELS,
    SIX_PB_AT_0,
    SIX_PB_LEFT_BRANCH,
    random_table,
    six_class_table,
)


class TestChi:
    def test_strictly_above_threshold(self):
        assert chi(0.05, 0.0500001) == 1
        assert chi(0.05, 0.05) == 0
        assert chi(0.0, 0.0) == 0
        assert chi(0.0, 1e-12) == 1

    def test_theta_range_enforced(self):
        with pytest.raises(ValidationError):
            chi(1.0, 0.5)
        with pytest.raises(ValidationError):
            chi(-0.01, 0.5)

    def test_value_range_enforced(self):
        with pytest.raises(ValidationError):
            chi(0.1, 1.5)


class TestComputeLikelihoods:
    def test_counts_positive_decisions(self):
        # a 1-d threshold model; three of four probes land on the i side
        m = train_binary_svm([[2.0]], [[-2.0]], kernel=KernelSpec("linear"))
        ti, tj = compute_likelihoods(m, [[1.0], [3.0], [0.5], [-4.0]])
        assert ti == pytest.approx(0.75)
        assert tj == pytest.approx(0.25)

    def test_complement_is_exact(self):
        m = train_binary_svm([[2.0]], [[-2.0]], kernel=KernelSpec("linear"))
        rng = np.random.default_rng(3)
        ti, tj = compute_likelihoods(m, rng.normal(0, 2, size=(37, 1)))
        assert ti + tj == 1.0

    def test_empty_samples_rejected(self):
        m = train_binary_svm([[2.0]], [[-2.0]], kernel=KernelSpec("linear"))
        with pytest.raises(ValidationError):
            compute_likelihoods(m, np.empty((0, 1)))


@pytest.fixture(scope="module")
def blob_table():
    rng = np.random.default_rng(17)
    X, y = make_blobs(
        rng,
        centers={1: [0.0, 0.0], 4: [6.0, 0.0], 9: [0.0, 6.0]},
        counts={1: 30, 4: 25, 9: 20},
        spread=0.6,
    )
    ds = LabeledDataset(X, y)
    models = train_pair_classifiers(ds)
    return build_all_predictions_table(models, ds.partitions()), models, ds


@pytest.fixture(scope="module")
def table():
    return six_class_table()


class TestBuildTable:
    def test_shape_and_labels(self, blob_table):
        table, _, _ = blob_table
        assert table.labels == (1, 4, 9)
        assert table.rows == ((1, 4), (1, 9), (4, 9))
        assert table.toward_i.shape == (3, 3)

    def test_own_classes_clean_on_separated_data(self, blob_table):
        table, _, _ = blob_table
        for (i, j) in table.rows:
            assert table.cell((i, j), i)[0] == pytest.approx(1.0)
            assert table.cell((i, j), j)[1] == pytest.approx(1.0)

    def test_cells_complement(self, blob_table):
        table, _, _ = blob_table
        for pair in table.rows:
            for l in table.labels:
                ti, tj = table.cell(pair, l)
                assert ti + tj == 1.0

    def test_extra_models_tolerated(self, blob_table):
        table, models, ds = blob_table
        extra = dict(models)
        extra[(1, 99)] = models[(1, 4)]
        again = build_all_predictions_table(extra, ds.partitions())
        np.testing.assert_array_equal(again.toward_i, table.toward_i)

    def test_missing_pair_rejected(self, blob_table):
        _, models, ds = blob_table
        trimmed = {k: v for k, v in models.items() if k != (1, 9)}
        with pytest.raises(ValidationError, match=r"\(1, 9\)"):
            build_all_predictions_table(trimmed, ds.partitions())

    def test_empty_partition_rejected(self, blob_table):
        _, models, ds = blob_table
        parts = ds.partitions()
        parts[4] = np.empty((0, 2))
        with pytest.raises(ValidationError, match="class 4"):
            build_all_predictions_table(models, parts)


class TestSixClassFixture:
    """Metrics on the hand-built six-class reference table."""

    def test_purity_and_balance_at_zero(self, table):
        for pair, (p, b) in SIX_PB_AT_0.items():
            assert purity_index(table, pair, 0.0) == p, f"P{pair}"
            assert balance_index(table, pair, 0.0) == b, f"B{pair}"

    def test_left_branch_metrics_after_restrict(self, table):
        sub = table.restrict((1, 2, 3, 5))
        assert sub.labels == (1, 2, 3, 5)
        assert sub.rows == tuple(SIX_PB_LEFT_BRANCH)
        for pair, (p, b) in SIX_PB_LEFT_BRANCH.items():
            assert purity_index(sub, pair, 0.0) == p, f"P{pair}"
            assert balance_index(sub, pair, 0.0) == b, f"B{pair}"

    def test_restrict_preserves_cells(self, table):
        sub = table.restrict((1, 2, 3, 5))
        for pair in sub.rows:
            for l in sub.labels:
                assert sub.cell(pair, l) == table.cell(pair, l)

    def test_quoted_row_metrics_at_five_percent(self, table):
        assert purity_index(table, (1, 6), 0.05) == 3
        assert undecided_classes(table, (1, 6), 0.05) == (2, 5, 7)
        assert balance_index(table, (1, 2), 0.05) == 1
        assert balance_index(table, (5, 6), 0.05) == 2

    def test_scores_are_perfect(self, table):
        for pair in table.rows:
            assert score(table, pair) == pytest.approx(1.0)

    def test_separated_cells(self, table):
        # 90 cells total; the undecided ones across all rows sum to 32
        assert separated_cell_count(table, 0.0) == 58
        assert separated_cell_count(table, 0.02) == 58
        assert separation_percentage(table, 0.02) == pytest.approx(58 / 90)

    def test_undecided_excludes_own_classes(self, table):
        for (i, j) in table.rows:
            und = undecided_classes(table, (i, j), 0.05)
            assert i not in und and j not in und


class TestMetricProperties:
    def test_bounds_on_random_tables(self):
        rng = np.random.default_rng(101)
        for _ in range(40):
            k = int(rng.integers(2, 9))
            t = random_table(rng, k)
            for pair in t.rows:
                p = purity_index(t, pair, 0.01)
                b = balance_index(t, pair, 0.01)
                s = score(t, pair)
                assert 0 <= p <= k
                assert 0 <= b <= k // 2 + k % 2
                assert 0.0 <= s <= 1.0
                assert p == len(undecided_classes(t, pair, 0.01))

    def test_theta_monotonicity(self):
        rng = np.random.default_rng(202)
        thetas = [0.0, 0.001, 0.01, 0.05, 0.2]
        for _ in range(25):
            t = random_table(rng, int(rng.integers(3, 8)))
            for lo, hi in zip(thetas, thetas[1:]):
                assert separated_cell_count(t, hi) >= separated_cell_count(t, lo)
                for pair in t.rows:
                    assert purity_index(t, pair, hi) <= purity_index(t, pair, lo)

    def test_balance_symmetric_in_sides(self):
        # swapping every cell's sides leaves B unchanged
        rng = np.random.default_rng(303)
        t = random_table(rng, 6)
        flipped = AllPredictionsTable(t.labels, t.rows, 1.0 - t.toward_i)
        for pair in t.rows:
            assert balance_index(t, pair, 0.01) == balance_index(flipped, pair, 0.01)


class TestTableValidation:
    def test_rows_must_cover_all_pairs(self):
        with pytest.raises(ValidationError):
            AllPredictionsTable((1, 2, 3), ((1, 2), (1, 3)), np.zeros((2, 3)))

    def test_values_must_be_in_unit_interval(self):
        with pytest.raises(ValidationError):
            AllPredictionsTable((1, 2), ((1, 2),), np.array([[1.2, 0.0]]))

    def test_shape_must_match(self):
        with pytest.raises(ValidationError):
            AllPredictionsTable((1, 2), ((1, 2),), np.zeros((2, 2)))

    def test_unknown_row_lookup(self):
        t = six_class_table()
        with pytest.raises(ValidationError):
            t.row_values((1, 4))

    def test_restrict_needs_two_labels(self):
        t = six_class_table()
        with pytest.raises(ValidationError):
            t.restrict((1,))


class TestFormatting:
    def test_table_rendering(self):
        t = six_class_table()
        text = format_table(t)
        lines = text.splitlines()
        assert len(lines) == 1 + 15
        assert "svm_{1,6}" in text
        assert "91.8/8.2" in text  # the (1,6) row's class-2 cell
        assert "100.0/0.0" in text

    def test_metrics_rendering(self):
        t = six_class_table()
        text = format_metrics(t, 0.0)
        assert text.splitlines()[0].split() == ["#", "svm", "P", "B", "S"]
        assert "svm_{5,6}" in text
        assert "100.0%" in text
