"""Brute-force differential spectra: DDT rows, δ(f) and splitting-β witnesses."""
import csv
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from ..algebra.polyops import Poly, d_alpha, evaluate_all
from ..core.config import settings
from ..core.errors import InternalConsistencyError, PreconditionError, ResourceGuardError
from ..models.schemas import DeltaSummary, SpectrumRowReport

# Configure logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectrumRow:
    alpha: int
    d_degree: int
    counts: np.ndarray
    delta_alpha: int
    split_betas: tuple

    def nonzero_counts(self) -> dict:
        return {int(beta): int(self.counts[beta]) for beta in np.flatnonzero(self.counts)}

    def to_report(self, f: Poly, include_counts: bool = False) -> SpectrumRowReport:
        ctx = f.ctx
        counts = None
        if include_counts:
            counts = {ctx.format(beta): c for beta, c in self.nonzero_counts().items()}
        return SpectrumRowReport(
            alpha=ctx.format(self.alpha),
            d_degree=self.d_degree,
            delta_alpha=self.delta_alpha,
            distinct_values=int(np.count_nonzero(self.counts)),
            split_betas=[ctx.format(b) for b in self.split_betas],
            counts=counts,
        )


def _guard(n: int, limit: int, flag: str) -> None:
    if n > limit:
        logger.error(f"❌ GF(2^{n}) exceeds the guard {flag}={limit}")
        raise ResourceGuardError(
            f"GF(2^{n}) is above the limit n <= {limit}; pass {flag} to raise it", flag=flag
        )


def _row_counts(values: np.ndarray, xs: np.ndarray, alpha: int) -> np.ndarray:
    # values[x ^ alpha] ^ values[x] = D_alpha f(x)
    return np.bincount(values[xs ^ alpha] ^ values, minlength=values.shape[0])


def ddt_row(
    f: Poly,
    alpha: int,
    row_max_n: Optional[int] = None,
    values: Optional[np.ndarray] = None,
) -> SpectrumRow:
    """Histogram of D_α f over the whole field.

    split_betas are the values hit exactly deg(D_α f) times; counting x
    rather than roots makes the preimages automatically distinct.
    """
    ctx = f.ctx
    _guard(ctx.n, settings.ROW_MAX_N if row_max_n is None else row_max_n, "--row-max-n")
    if not 0 < alpha < ctx.order:
        raise PreconditionError(f"alpha must be a nonzero element of GF(2^{ctx.n})")
    d_poly = d_alpha(f, alpha)
    if d_poly.degree <= 0:
        counts = np.zeros(ctx.order, dtype=np.int64)
        counts[d_poly.coeff(0)] = ctx.order
        return SpectrumRow(alpha, max(d_poly.degree, 0), counts, ctx.order, ())

    if values is None:
        values = evaluate_all(f)
    counts = _row_counts(values, ctx.elements_array(), alpha)
    if (counts & 1).any():
        raise InternalConsistencyError(f"odd count in the row for alpha={alpha:x}")
    delta_alpha = int(counts.max())
    if delta_alpha > d_poly.degree:
        raise InternalConsistencyError(
            f"delta_alpha={delta_alpha} exceeds deg D_alpha f = {d_poly.degree}"
        )
    split = tuple(int(b) for b in np.flatnonzero(counts == d_poly.degree))
    return SpectrumRow(alpha, d_poly.degree, counts, delta_alpha, split)


def _best_in_range(values: np.ndarray, xs: np.ndarray, alphas: range) -> tuple:
    best = (-1, 0, 0)
    for alpha in alphas:
        counts = _row_counts(values, xs, alpha)
        beta = int(np.argmax(counts))
        if counts[beta] > best[0]:
            best = (int(counts[beta]), alpha, beta)
    return best


def delta_full(
    f: Poly,
    delta_max_n: Optional[int] = None,
    workers: Optional[int] = None,
) -> DeltaSummary:
    """δ(f) with the smallest maximizing alpha and, for it, the smallest beta."""
    ctx = f.ctx
    _guard(ctx.n, settings.DELTA_MAX_N if delta_max_n is None else delta_max_n, "--delta-max-n")
    workers = settings.WORKERS if workers is None else max(1, workers)
    logger.info(f"🚀 Computing delta over GF(2^{ctx.n}) with {workers} workers")
    start = time.perf_counter()

    values = evaluate_all(f)
    xs = ctx.elements_array()
    step = max(1, -(-(ctx.order - 1) // workers))
    chunks = [range(lo, min(lo + step, ctx.order)) for lo in range(1, ctx.order, step)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda r: _best_in_range(values, xs, r), chunks))

    # chunks come back in alpha order, so strict improvement keeps the smallest alpha
    best = (-1, 0, 0)
    for result in results:
        if result[0] > best[0]:
            best = result
    runtime_ms = (time.perf_counter() - start) * 1000.0
    summary = DeltaSummary(
        delta=best[0],
        alpha=ctx.format(best[1]),
        beta=ctx.format(best[2]),
        runtime_ms=round(runtime_ms, 3),
    )
    logger.info(
        f"✅ delta={summary.delta} at alpha={summary.alpha}, beta={summary.beta} ({summary.runtime_ms} ms)"
    )
    return summary


def export_spectrum_csv(
    f: Poly,
    path: str,
    alphas: Optional[Iterable[int]] = None,
    row_max_n: Optional[int] = None,
) -> int:
    """Write alpha_hex,beta_hex,count for every nonzero DDT entry; returns rows written."""
    ctx = f.ctx
    alphas = range(1, ctx.order) if alphas is None else alphas
    values = evaluate_all(f)
    written = 0
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["alpha_hex", "beta_hex", "count"])
        for alpha in alphas:
            row = ddt_row(f, alpha, row_max_n=row_max_n, values=values)
            for beta, count in row.nonzero_counts().items():
                writer.writerow([ctx.format(alpha), ctx.format(beta), count])
                written += 1
    logger.info(f"💾 Wrote {written} spectrum entries to {out}")
    return written
