import numpy as np
import pytest

from dcsvm import (
    CardinalityError,
    DimensionError,
    LabeledDataset,
    ParseError,
    SplitError,
    SplitSpec,
    ValidationError,
    apply_feature_scale,
    fit_feature_scale,
    load_dataset,
    save_libsvm,
    stratified_split,
)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestLibsvmLoading:
    def test_sparse_line_materializes_densely(self, tmp_path):
        p = write(tmp_path, "t.libsvm", "3 1:0.5 4:2.0\n1 2:1.0\n")
        ds = load_dataset(p)
        assert ds.d == 4
        np.testing.assert_array_equal(ds.X[0], [0.5, 0.0, 0.0, 2.0])
        assert ds.y[0] == 3 and ds.y[1] == 1

    def test_labels_preserved_non_contiguous(self, glass_path):
        ds = load_dataset(glass_path)
        assert ds.k == 6
        assert ds.classes == (1, 2, 3, 5, 6, 7)
        assert ds.label_index == {1: 0, 2: 1, 3: 2, 5: 3, 6: 4, 7: 5}

    def test_malformed_token_names_line(self, tmp_path):
        p = write(tmp_path, "bad.libsvm", "1 1:1.0\n2 1:x\n")
        with pytest.raises(ParseError) as err:
            load_dataset(p)
        assert "bad.libsvm:2" in str(err.value)

    def test_non_integer_label_rejected(self, tmp_path):
        p = write(tmp_path, "bad.libsvm", "1.5 1:1.0\n")
        with pytest.raises(ParseError):
            load_dataset(p)

    def test_non_ascending_indices_rejected(self, tmp_path):
        p = write(tmp_path, "bad.libsvm", "1 3:1.0 2:1.0\n")
        with pytest.raises(ParseError) as err:
            load_dataset(p)
        assert "ascending" in str(err.value)

    def test_empty_file_is_cardinality_error(self, tmp_path):
        p = write(tmp_path, "empty.libsvm", "\n\n")
        with pytest.raises(CardinalityError):
            load_dataset(p)

    def test_single_class_rejected(self, tmp_path):
        p = write(tmp_path, "one.libsvm", "1 1:1.0\n1 1:2.0\n")
        with pytest.raises(CardinalityError):
            load_dataset(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_dataset(tmp_path / "nope.libsvm")

    def test_round_trip_is_exact(self, tmp_path):
        rng = np.random.default_rng(3)
        X = rng.normal(size=(20, 5))
        X[rng.random(X.shape) < 0.3] = 0.0  # exercise sparsity
        y = rng.integers(0, 3, 20)
        y[:3] = [0, 1, 2]
        ds = LabeledDataset(X, y)
        p = tmp_path / "rt.libsvm"
        save_libsvm(ds, p)
        back = load_dataset(p)
        np.testing.assert_array_equal(ds.X, back.X)
        np.testing.assert_array_equal(ds.y, back.y)


class TestCsvLoading:
    def test_header_and_default_last_label(self, tmp_path):
        p = write(tmp_path, "t.csv", "a,b,label\n1.0,2.0,1\n3.0,4.0,2\n")
        ds = load_dataset(p)
        assert ds.d == 2 and ds.classes == (1, 2)
        np.testing.assert_array_equal(ds.X[1], [3.0, 4.0])

    def test_explicit_label_column(self, tmp_path):
        p = write(tmp_path, "t.csv", "1,10.0,20.0\n2,30.0,40.0\n")
        ds = load_dataset(p, label_column=0)
        assert ds.classes == (1, 2)
        np.testing.assert_array_equal(ds.X[0], [10.0, 20.0])

    def test_ragged_row_is_dimension_error(self, tmp_path):
        p = write(tmp_path, "t.csv", "1.0,2.0,1\n3.0,2\n")
        with pytest.raises(DimensionError) as err:
            load_dataset(p)
        assert ":2" in str(err.value)

    def test_label_column_out_of_range(self, tmp_path):
        p = write(tmp_path, "t.csv", "1.0,2.0,1\n1.0,2.0,2\n")
        with pytest.raises(ValidationError):
            load_dataset(p, label_column=5)


class TestDataset:
    def test_partitions_are_per_class_views(self):
        ds = LabeledDataset([[0.0], [1.0], [2.0]], [5, 9, 5])
        parts = ds.partitions()
        np.testing.assert_array_equal(parts[5][:, 0], [0.0, 2.0])
        np.testing.assert_array_equal(parts[9][:, 0], [1.0])

    def test_features_must_be_finite(self):
        with pytest.raises(ValidationError):
            LabeledDataset([[np.nan], [1.0]], [0, 1])

    def test_subset_classes(self):
        ds = LabeledDataset([[0.0], [1.0], [2.0], [3.0]], [1, 2, 3, 2])
        sub = ds.subset_classes([2, 3])
        assert sub.classes == (2, 3)
        assert sub.n == 3


class TestSplit:
    def test_iris_80_20_is_40_10_per_class(self, iris_path):
        ds = load_dataset(iris_path)
        train, test = stratified_split(ds, SplitSpec(0.8, seed=0))
        assert train.n == 120 and test.n == 30
        assert train.class_counts() == {0: 40, 1: 40, 2: 40}
        assert test.class_counts() == {0: 10, 1: 10, 2: 10}

    def test_deterministic_and_seed_sensitive(self, iris_path):
        ds = load_dataset(iris_path)
        a1, b1 = stratified_split(ds, SplitSpec(0.8, seed=7))
        a2, b2 = stratified_split(ds, SplitSpec(0.8, seed=7))
        np.testing.assert_array_equal(a1.X, a2.X)
        np.testing.assert_array_equal(b1.y, b2.y)
        a3, _ = stratified_split(ds, SplitSpec(0.8, seed=8))
        assert not np.array_equal(a1.X, a3.X)

    def test_split_partitions_the_samples(self):
        rng = np.random.default_rng(0)
        ds = LabeledDataset(rng.normal(size=(37, 2)), rng.integers(0, 3, 37))
        train, test = stratified_split(ds, SplitSpec(0.7, seed=1))
        assert train.n + test.n == ds.n
        # every class appears on both sides
        assert set(train.classes) == set(ds.classes)
        assert set(test.classes) == set(ds.classes)

    def test_tiny_class_names_the_class(self):
        ds = LabeledDataset([[0.0], [1.0], [2.0]], [4, 4, 9])
        with pytest.raises(SplitError) as err:
            stratified_split(ds, SplitSpec(0.8, seed=0))
        assert "class 9" in str(err.value)

    def test_bad_fraction_rejected(self):
        with pytest.raises(ValidationError):
            SplitSpec(1.0, seed=0)

    def test_unstratified_split(self):
        rng = np.random.default_rng(0)
        ds = LabeledDataset(rng.normal(size=(50, 2)), rng.integers(0, 2, 50))
        train, test = stratified_split(ds, SplitSpec(0.8, seed=3, stratified=False))
        assert train.n == 40 and test.n == 10


class TestScaling:
    def test_train_bounds_applied_to_test(self):
        train = LabeledDataset([[0.0, 10.0], [2.0, 30.0]], [0, 1])
        scale = fit_feature_scale(train)
        scaled = apply_feature_scale(train, scale)
        np.testing.assert_allclose(scaled.X, [[0.0, 0.0], [1.0, 1.0]])
        test = LabeledDataset([[1.0, 40.0]], [0])
        np.testing.assert_allclose(apply_feature_scale(test, scale).X, [[0.5, 1.5]])

    def test_constant_feature_maps_to_zero(self):
        train = LabeledDataset([[5.0, 1.0], [5.0, 2.0]], [0, 1])
        scaled = apply_feature_scale(train, fit_feature_scale(train))
        np.testing.assert_allclose(scaled.X[:, 0], [0.0, 0.0])
