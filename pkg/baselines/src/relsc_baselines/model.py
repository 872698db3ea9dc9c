"""Graph regressors: two conv layers (hidden 30), mean+max readout,
two fully connected layers, batch norm and dropout for regularization."""

from __future__ import annotations

import torch
from torch import nn

from .data import Batch, FEATURE_DIM
from .layers import HOMOGENEOUS_LAYERS, RelationalLayer, readout

HIDDEN_DIM = 30


class GraphRegressor(nn.Module):
    def __init__(
        self,
        conv: str = "graphconv",
        in_dim: int = FEATURE_DIM,
        hidden_dim: int = HIDDEN_DIM,
        dropout: float = 0.5,
    ):
        super().__init__()
        layer_cls = HOMOGENEOUS_LAYERS[conv]
        self.conv1 = layer_cls(in_dim, hidden_dim)
        self.conv2 = layer_cls(hidden_dim, hidden_dim)
        self.bn1 = nn.BatchNorm1d(hidden_dim)
        self.bn2 = nn.BatchNorm1d(hidden_dim)
        self.dropout = nn.Dropout(dropout)
        self.fc1 = nn.Linear(2 * hidden_dim, hidden_dim)
        self.fc2 = nn.Linear(hidden_dim, 1)

    def forward(self, batch: Batch) -> torch.Tensor:
        # dropout sits after the readout: dropout feeding a batch-norm
        # layer shifts its eval-time variance estimates
        x = torch.relu(self.bn1(self.conv1(batch.x, batch.edge_index)))
        x = torch.relu(self.bn2(self.conv2(x, batch.edge_index)))
        o = self.dropout(readout(x, batch.graph_index, batch.num_graphs))
        return self.fc2(torch.relu(self.fc1(o))).squeeze(-1)


class RelationalGraphRegressor(nn.Module):
    """Same head, but relation-typed message passing in the conv stack."""

    def __init__(
        self,
        relation_ids: list[int],
        in_dim: int = FEATURE_DIM,
        hidden_dim: int = HIDDEN_DIM,
        dropout: float = 0.5,
        norm: str = "degree",
    ):
        super().__init__()
        self.conv1 = RelationalLayer(in_dim, hidden_dim, relation_ids, norm=norm)
        self.conv2 = RelationalLayer(hidden_dim, hidden_dim, relation_ids, norm=norm)
        self.bn1 = nn.BatchNorm1d(hidden_dim)
        self.bn2 = nn.BatchNorm1d(hidden_dim)
        self.dropout = nn.Dropout(dropout)
        self.fc1 = nn.Linear(2 * hidden_dim, hidden_dim)
        self.fc2 = nn.Linear(hidden_dim, 1)

    def forward(self, batch: Batch) -> torch.Tensor:
        if batch.edge_relation is None:
            raise ValueError("relational model needs relation-typed edges (relsc_m)")
        x = self.bn1(self.conv1(batch.x, batch.edge_index, batch.edge_relation))
        x = self.bn2(self.conv2(x, batch.edge_index, batch.edge_relation))
        o = self.dropout(readout(x, batch.graph_index, batch.num_graphs))
        return self.fc2(torch.relu(self.fc1(o))).squeeze(-1)


def build_model(name: str, relation_ids: list[int] | None = None, dropout: float = 0.5, norm: str = "degree"):
    if name == "rgcn":
        if not relation_ids:
            raise ValueError("rgcn needs the relation ids present in training data")
        return RelationalGraphRegressor(relation_ids, dropout=dropout, norm=norm)
    if name in HOMOGENEOUS_LAYERS:
        return GraphRegressor(conv=name, dropout=dropout)
    raise ValueError(f"unknown model {name!r}")
