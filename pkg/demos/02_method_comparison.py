"""Benchmark the tree method against one-vs-one, DAG, and one-vs-rest.

All methods share the same train/test splits per trial; the tree, ovo,
and dag rows even share the same trained pair classifiers, so the
accuracy differences come from the decision procedure alone.

    python3 demos/02_method_comparison.py
"""

from pathlib import Path

from dcsvm import TrialConfig, format_report, run_trials

DATASETS = ["iris.libsvm", "wine.libsvm", "glass.libsvm"]
ROOT = Path(__file__).resolve().parent.parent / "datasets"

rows = []
for name in DATASETS:
    cfg = TrialConfig(
        data=str(ROOT / name),
        methods=("dcsvm", "ovo", "dag", "ovr"),
        thetas=(0.01,),
        trials=10,
        scale=True,
        seed=0,
    )
    rows.extend(run_trials(cfg))

print(format_report(rows))
print()
print("avg_steps is the number of binary classifiers evaluated per")
print("prediction: k(k-1)/2 for ovo, exactly k-1 for dag, k for ovr,")
print("and between 1 and k-1 for the tree depending on where samples land.")
