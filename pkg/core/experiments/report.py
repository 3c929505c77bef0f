"""
report：按 n 汇总结果行，对速率类实验拟合 -log p̂ 关于 n 的最小二乘斜率
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import pandas as pd
from scipy import stats

from core.distributions import WeightDistribution, corner_rate_theoretical
from core.exceptions import LPPError, SchemaMismatchError
from data_models import ResultRow
from .output import read_rows

logger = logging.getLogger(__name__)

RATE_FAMILIES = ("tail", "fekete", "midpoint", "endpoint", "corner", "left-tail", "uniform-walk")
TABLE_COLUMNS = ["n", "t", "r", "n_samples", "method", "p_hat", "ci_low", "ci_high", "fekete_bound",
                 "mean", "std_err", "p_point", "status"]


@dataclass
class SlopeFit:
    slope: float
    std_err: float
    intercept: float
    points: int


@dataclass
class ReportSummary:
    experiment: str
    distribution: str
    table: pd.DataFrame
    fit: Optional[SlopeFit] = None
    excluded: List[int] = field(default_factory=list)
    target: Optional[float] = None

    def render(self) -> str:
        lines = [f"experiment: {self.experiment}  distribution: {self.distribution}  rows: {len(self.table)}"]
        visible = [column for column in TABLE_COLUMNS if self.table[column].notna().any()]
        lines.append(self.table[visible].to_string(index=False))
        if self.fit is not None:
            lines.append(f"slope of -log(p_hat) vs n: {self.fit.slope:.6f} +- {self.fit.std_err:.6f} "
                         f"({self.fit.points} points)")
            if self.target is not None:
                lines.append(f"target rate: {self.target:.6f}")
        if self.excluded:
            lines.append(f"excluded from fit (zero hits): n={self.excluded}")
        return "\n".join(lines)


def target_rate(experiment: str, distribution: str) -> Optional[float]:
    if experiment == "uniform-walk":
        return 2.0 * math.log(2.0)
    if experiment == "corner":
        try:
            return corner_rate_theoretical(WeightDistribution.from_descriptor(distribution))
        except LPPError:
            return None
    return None


def fit_slope(frame: pd.DataFrame) -> Optional[SlopeFit]:
    """至少两个不同的 n 才拟合"""
    if len(frame) < 2 or frame["n"].nunique() < 2:
        return None
    fit = stats.linregress(frame["n"].astype(float), -np.log(frame["p_hat"].astype(float)))
    return SlopeFit(slope=float(fit.slope), std_err=float(fit.stderr), intercept=float(fit.intercept),
                    points=len(frame))


def summarize_rows(rows: List[ResultRow]) -> ReportSummary:
    if not rows:
        raise SchemaMismatchError("no result rows to report")
    families = sorted({row.experiment for row in rows})
    if len(families) != 1:
        raise SchemaMismatchError(f"rows mix experiment families: {families}")
    experiment = families[0]

    table = pd.DataFrame([row.model_dump() for row in rows])
    table = table.sort_values("n", kind="stable").reset_index(drop=True)
    summary = ReportSummary(experiment=experiment, distribution=rows[0].distribution, table=table)
    if experiment not in RATE_FAMILIES:
        return summary

    p_hat = pd.to_numeric(table["p_hat"], errors="coerce")
    usable = p_hat.notna() & (p_hat > 0) & (table["status"] != "zero-hit")
    summary.excluded = [int(n) for n in table.loc[~usable, "n"]]
    summary.fit = fit_slope(table.loc[usable])
    summary.target = target_rate(experiment, summary.distribution)
    if summary.fit is None:
        logger.info("Fewer than two usable rows: slope omitted")
    return summary


def report(path: str) -> ReportSummary:
    return summarize_rows(read_rows(path))
