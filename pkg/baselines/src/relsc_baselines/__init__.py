"""Reference graph-regression harness for serialized program-graph corpora."""

from .data import Batch, GraphSample, collate, load_corpus, load_graphs, load_splits
from .layers import (
    GraphConvLayer,
    RelationalLayer,
    UnknownRelationError,
    aggregate,
    readout,
)
from .metrics import MetricReport, compute_metrics, spearman_rho
from .model import GraphRegressor, RelationalGraphRegressor, build_model
from .train import TrainConfig, TrainResult, evaluate, mean_predictor_mae, train

__version__ = "0.1.0"

__all__ = [
    "Batch", "GraphConvLayer", "GraphRegressor", "GraphSample", "MetricReport",
    "RelationalGraphRegressor", "RelationalLayer", "TrainConfig", "TrainResult",
    "UnknownRelationError", "aggregate", "build_model", "collate",
    "compute_metrics", "evaluate", "load_corpus", "load_graphs", "load_splits",
    "mean_predictor_mae", "readout", "spearman_rho", "train",
]
