"""Multi-class SVM classification via a divide-and-conquer decision tree.

A binary soft-margin SVM (SMO solver) is trained for every class pair;
an all-predictions likelihood table measures how each pair classifier
treats every class, and a decision tree built from that table answers
multi-class queries in at most k-1 (often ~log2 k) binary evaluations.
One-vs-one voting, DAG elimination, and one-vs-rest baselines share
the same binary models, and a benchmark harness compares them all.
"""

from .baselines import (
    OvoModel,
    OvrModel,
    dag_predict,
    dag_visit,
    ovo_model_from,
    ovo_predict,
    ovr_predict,
    train_ovo,
    train_ovr,
)
from .bench import ReportRow, TrialConfig, format_report, report_csv, run_trials, threshold_sweep
from .data import (
    FeatureScale,
    LabeledDataset,
    SplitSpec,
    apply_feature_scale,
    fit_feature_scale,
    load_dataset,
    save_libsvm,
    stratified_split,
)
from .errors import (
    CardinalityError,
    DcsvmError,
    DimensionError,
    ModelFormatError,
    NumericError,
    ParseError,
    SplitError,
    ValidationError,
)
from .kernels import KernelSpec, gram, kernel_eval
from .persist import ModelBundle, load_model, save_model
from .svm import (
    BinarySvmModel,
    SvmHyperParams,
    decision_values,
    dual_objective,
    predict_binary,
    train_binary_svm,
    train_pair_classifiers,
)
from .table import (
    AllPredictionsTable,
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
    undecided_classes,
)
from .tree import (
    DcsvmModel,
    Inner,
    Leaf,
    build_dcsvm,
    build_tree,
    classify,
    leaf_labels,
    render_tree,
    select_optimal,
    split_classes,
    trace_path,
    train_dcsvm,
    tree_depth,
)

__version__ = "0.1.0"
