"""Message-passing layers.

Homogeneous layers follow the generic scheme
    x_v' = COMB(x_v, AGG({x_u : u -> v}))
with pluggable aggregation; the relational layer applies one weight
matrix per relation plus a self-loop matrix,
    x_v' = act( sum_r sum_{u in N_r(v)} W_r x_u / c_{r,v} + W_0 x_v ),
with c_{r,v} = |N_r(v)| by default.
"""

from __future__ import annotations

import torch
from torch import nn


def scatter_sum(messages: torch.Tensor, dst: torch.Tensor, num_nodes: int) -> torch.Tensor:
    out = torch.zeros(num_nodes, messages.shape[1], dtype=messages.dtype, device=messages.device)
    return out.index_add(0, dst, messages)


def scatter_mean(messages: torch.Tensor, dst: torch.Tensor, num_nodes: int) -> torch.Tensor:
    total = scatter_sum(messages, dst, num_nodes)
    counts = torch.zeros(num_nodes, dtype=messages.dtype, device=messages.device)
    counts = counts.index_add(0, dst, torch.ones_like(dst, dtype=messages.dtype))
    return total / counts.clamp(min=1).unsqueeze(1)


def scatter_max(messages: torch.Tensor, dst: torch.Tensor, num_nodes: int) -> torch.Tensor:
    out = torch.zeros(num_nodes, messages.shape[1], dtype=messages.dtype, device=messages.device)
    return out.index_reduce(0, dst, messages, "amax", include_self=False)


def scatter_min(messages: torch.Tensor, dst: torch.Tensor, num_nodes: int) -> torch.Tensor:
    out = torch.zeros(num_nodes, messages.shape[1], dtype=messages.dtype, device=messages.device)
    return out.index_reduce(0, dst, messages, "amin", include_self=False)


_AGGREGATORS = {"sum": scatter_sum, "mean": scatter_mean, "max": scatter_max, "min": scatter_min}


def aggregate(x: torch.Tensor, edge_index: torch.Tensor, agg: str) -> torch.Tensor:
    """AGG over in-neighbors: messages flow along src -> dst edges."""
    src, dst = edge_index
    return _AGGREGATORS[agg](x[src], dst, x.shape[0])


class GraphConvLayer(nn.Module):
    """x_v' = W_self x_v + W_neigh AGG(x_u); linear COMB, pluggable AGG."""

    def __init__(self, in_dim: int, out_dim: int, agg: str = "mean", bias: bool = True):
        super().__init__()
        self.agg = agg
        self.w_self = nn.Linear(in_dim, out_dim, bias=bias)
        self.w_neigh = nn.Linear(in_dim, out_dim, bias=False)

    def forward(self, x, edge_index):
        return self.w_self(x) + self.w_neigh(aggregate(x, edge_index, self.agg))


class SageLayer(nn.Module):
    """GraphSAGE: linear over [x_v || mean(x_u)]."""

    def __init__(self, in_dim: int, out_dim: int):
        super().__init__()
        self.lin = nn.Linear(2 * in_dim, out_dim)

    def forward(self, x, edge_index):
        return self.lin(torch.cat([x, aggregate(x, edge_index, "mean")], dim=1))


class GinLayer(nn.Module):
    """GIN: MLP((1 + eps) x_v + sum(x_u))."""

    def __init__(self, in_dim: int, out_dim: int):
        super().__init__()
        self.eps = nn.Parameter(torch.zeros(1))
        self.mlp = nn.Sequential(nn.Linear(in_dim, out_dim), nn.ReLU(), nn.Linear(out_dim, out_dim))

    def forward(self, x, edge_index):
        return self.mlp((1 + self.eps) * x + aggregate(x, edge_index, "sum"))


def _symmetrize(edge_index: torch.Tensor) -> torch.Tensor:
    return torch.cat([edge_index, edge_index.flip(0)], dim=1)


class GcnLayer(nn.Module):
    """GCN: symmetric-normalized sum with self loops (undirected view)."""

    def __init__(self, in_dim: int, out_dim: int):
        super().__init__()
        self.lin = nn.Linear(in_dim, out_dim)

    def forward(self, x, edge_index):
        n = x.shape[0]
        ei = _symmetrize(edge_index)
        loops = torch.arange(n, device=x.device)
        ei = torch.cat([ei, torch.stack([loops, loops])], dim=1)
        src, dst = ei
        deg = torch.zeros(n, dtype=x.dtype, device=x.device)
        deg = deg.index_add(0, dst, torch.ones_like(dst, dtype=x.dtype))
        norm = (deg[src] * deg[dst]).rsqrt()
        msg = x[src] * norm.unsqueeze(1)
        return self.lin(scatter_sum(msg, dst, n))


class ChebLayer(nn.Module):
    """Chebyshev filter, K = 2: W0 x + W1 (L_hat x), L_hat = -D^-1/2 A D^-1/2."""

    def __init__(self, in_dim: int, out_dim: int):
        super().__init__()
        self.w0 = nn.Linear(in_dim, out_dim)
        self.w1 = nn.Linear(in_dim, out_dim, bias=False)

    def forward(self, x, edge_index):
        n = x.shape[0]
        ei = _symmetrize(edge_index)
        src, dst = ei
        deg = torch.zeros(n, dtype=x.dtype, device=x.device)
        deg = deg.index_add(0, dst, torch.ones_like(dst, dtype=x.dtype))
        norm = (deg[src].clamp(min=1) * deg[dst].clamp(min=1)).rsqrt()
        t1 = -scatter_sum(x[src] * norm.unsqueeze(1), dst, n)
        return self.w0(x) + self.w1(t1)


class PnaLayer(nn.Module):
    """Principal-neighbourhood-style aggregation: {mean, max, min, std}
    crossed with degree scalers {1, log(d+1)/delta, delta/log(d+1)}."""

    def __init__(self, in_dim: int, out_dim: int, delta: float = 1.0):
        super().__init__()
        self.delta = delta
        self.w_self = nn.Linear(in_dim, out_dim)
        self.lin = nn.Linear(12 * in_dim, out_dim, bias=False)

    def forward(self, x, edge_index):
        n = x.shape[0]
        src, dst = edge_index
        mean = aggregate(x, edge_index, "mean")
        mx = aggregate(x, edge_index, "max")
        mn = aggregate(x, edge_index, "min")
        sq_mean = scatter_mean(x[src] ** 2, dst, n)
        std = (sq_mean - mean**2).clamp(min=0).sqrt()
        deg = torch.zeros(n, dtype=x.dtype, device=x.device)
        deg = deg.index_add(0, dst, torch.ones_like(dst, dtype=x.dtype))
        amp = (torch.log1p(deg) / self.delta).unsqueeze(1)
        att = (self.delta / torch.log1p(deg).clamp(min=1e-6)).unsqueeze(1)
        att = torch.where(deg.unsqueeze(1) > 0, att, torch.zeros_like(att))
        aggs = torch.cat([mean, mx, mn, std], dim=1)
        stacked = torch.cat([aggs, aggs * amp, aggs * att], dim=1)
        return self.w_self(x) + self.lin(stacked)


HOMOGENEOUS_LAYERS = {
    "graphconv": GraphConvLayer,
    "sage": SageLayer,
    "gin": GinLayer,
    "gcn": GcnLayer,
    "cheb": ChebLayer,
    "pna": PnaLayer,
}


class UnknownRelationError(ValueError):
    """An edge carries a relation the layer has no weights for."""


class RelationalLayer(nn.Module):
    """Per-relation weight matrices plus a self-loop matrix.

    `relation_ids` fixes which relations this layer covers (those seen
    in training data); `norm` is 1/|N_r(v)| by default ("degree") or 1
    ("none"). Activation is applied inside, matching the update rule.
    """

    def __init__(
        self,
        in_dim: int,
        out_dim: int,
        relation_ids: list[int],
        norm: str = "degree",
        activation=torch.relu,
    ):
        super().__init__()
        if norm not in ("degree", "none"):
            raise ValueError(f"unknown normalization {norm!r}")
        self.relation_ids = sorted(relation_ids)
        self.rel_pos = {rid: i for i, rid in enumerate(self.relation_ids)}
        self.norm = norm
        self.activation = activation
        stdv = (2.0 / (in_dim + out_dim)) ** 0.5
        self.w_rel = nn.Parameter(torch.randn(len(self.relation_ids), in_dim, out_dim) * stdv)
        self.w_self = nn.Linear(in_dim, out_dim, bias=False)

    def forward(self, x, edge_index, edge_relation):
        n = x.shape[0]
        out = self.w_self(x)
        if edge_index.shape[1]:
            unknown = set(edge_relation.tolist()) - set(self.relation_ids)
            if unknown:
                raise UnknownRelationError(
                    f"no weights for relation id(s) {sorted(unknown)}"
                )
            src, dst = edge_index
            pos = torch.tensor(
                [self.rel_pos[r] for r in edge_relation.tolist()], device=x.device
            )
            weights = self.w_rel[pos]  # [E, in, out]
            msg = torch.bmm(x[src].unsqueeze(1), weights).squeeze(1)
            if self.norm == "degree":
                # c_{r,v} = |N_r(v)|: in-degree per (node, relation)
                key = dst * len(self.relation_ids) + pos
                counts = torch.zeros(n * len(self.relation_ids), dtype=x.dtype, device=x.device)
                counts = counts.index_add(0, key, torch.ones_like(key, dtype=x.dtype))
                msg = msg / counts[key].unsqueeze(1)
            out = out + scatter_sum(msg, dst, n)
        return self.activation(out) if self.activation is not None else out


def readout(x: torch.Tensor, graph_index: torch.Tensor, num_graphs: int) -> torch.Tensor:
    """Graph-level vector: mean pooling concatenated with max pooling."""
    if x.shape[0] == 0:
        raise ValueError("readout over an empty graph")
    mean = scatter_mean(x, graph_index, num_graphs)
    mx = scatter_max(x, graph_index, num_graphs)
    return torch.cat([mean, mx], dim=1)
