"""Deep-learning classifiers for mixed-signal AMCD datasets.

This package consumes the generator component only through its external
surfaces: AMCD dataset files, ``index,true,pred,snr_db`` prediction CSVs, and
accuracy-curve CSVs. Models follow the benchmark's layer tables; measured
parameter counts and the conventions behind them live in the complexity
report.
"""

from dlmodels.amcd_io import AmcdFile, read_amcd
from dlmodels.archs import ARCH_NAMES, build, input_layout, to_model_inputs
from dlmodels.complexity import complexity_report, estimate_flops
from dlmodels.hierarchical import HierarchicalClassifier, build_hierarchical
from dlmodels.training import TrainConfig, predict_to_csv, train

__all__ = [
    "ARCH_NAMES",
    "AmcdFile",
    "HierarchicalClassifier",
    "TrainConfig",
    "build",
    "build_hierarchical",
    "complexity_report",
    "estimate_flops",
    "input_layout",
    "predict_to_csv",
    "read_amcd",
    "to_model_inputs",
    "train",
]
