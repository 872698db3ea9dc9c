"""Regression metric suite: MAE, RMSE, MAPE, Spearman's rho, MRE.

MAPE uses the absolute value (a signed version cancels errors); MAPE
and MRE skip entries with y = 0 and report how many were excluded.
Spearman uses the classic formula on average ranks, so ties are
handled deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def mae(y: np.ndarray, y_hat: np.ndarray) -> float:
    return float(np.mean(np.abs(y - y_hat)))


def rmse(y: np.ndarray, y_hat: np.ndarray) -> float:
    return float(np.sqrt(np.mean((y - y_hat) ** 2)))


def mape(y: np.ndarray, y_hat: np.ndarray) -> tuple[float, int]:
    """Mean |y - y_hat| / y over y > 0; returns (value, excluded count)."""
    mask = y > 0
    excluded = int((~mask).sum())
    if not mask.any():
        return float("nan"), excluded
    return float(np.mean(np.abs(y[mask] - y_hat[mask]) / y[mask])), excluded


def mre(y: np.ndarray, y_hat: np.ndarray) -> tuple[float, int]:
    """Maximum relative error over y > 0; returns (value, excluded count)."""
    mask = y > 0
    excluded = int((~mask).sum())
    if not mask.any():
        return float("nan"), excluded
    return float(np.max(np.abs(y[mask] - y_hat[mask]) / y[mask])), excluded


def average_ranks(values: np.ndarray) -> np.ndarray:
    """1-based ranks with ties averaged."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), dtype=float)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def spearman_rho(y: np.ndarray, y_hat: np.ndarray) -> float:
    """rho = 1 - 6 sum(d_i^2) / (n (n^2 - 1)) over average ranks."""
    n = len(y)
    if n < 2:
        return float("nan")
    d = average_ranks(y) - average_ranks(y_hat)
    return float(1 - 6 * np.sum(d**2) / (n * (n**2 - 1)))


@dataclass(frozen=True)
class MetricReport:
    mae: float
    rmse: float
    mape: float
    spearman_rho: float
    mre: float
    excluded_zero_targets: int
    n: int

    def as_dict(self) -> dict:
        return {
            "mae": self.mae,
            "rmse": self.rmse,
            "mape": self.mape,
            "spearman_rho": self.spearman_rho,
            "mre": self.mre,
            "excluded_zero_targets": self.excluded_zero_targets,
            "n": self.n,
        }


METRIC_NAMES = ("mae", "rmse", "mape", "spearman_rho", "mre")


def compute_metrics(y, y_hat) -> MetricReport:
    y = np.asarray(y, dtype=float)
    y_hat = np.asarray(y_hat, dtype=float)
    if y.shape != y_hat.shape:
        raise ValueError(f"shape mismatch: {y.shape} vs {y_hat.shape}")
    mape_v, excl = mape(y, y_hat)
    mre_v, _ = mre(y, y_hat)
    return MetricReport(
        mae=mae(y, y_hat),
        rmse=rmse(y, y_hat),
        mape=mape_v,
        spearman_rho=spearman_rho(y, y_hat),
        mre=mre_v,
        excluded_zero_targets=excl,
        n=len(y),
    )
