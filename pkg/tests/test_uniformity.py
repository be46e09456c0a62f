import csv
import os
import sys

import numpy as np
import pytest

# Add the parent directory to the path so we can import from app
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from app.algebra.gf2n import make_field
from app.algebra.polyops import Poly, compose, d_alpha, evaluate
from app.core.errors import PreconditionError, ResourceGuardError
from app.tools.uniformity import ddt_row, delta_full, export_spectrum_csv


def monomial(ctx, k):
    return Poly.monomial(ctx, k)


def forward_counts(f, alpha):
    ctx = f.ctx
    counts = np.zeros(ctx.order, dtype=np.int64)
    for x in ctx.elements():
        counts[evaluate(f, x ^ alpha) ^ evaluate(f, x)] += 1
    return counts


def test_cube_over_f8_is_apn():
    f8 = make_field(3)
    summary = delta_full(monomial(f8, 3))
    assert summary.delta == 2
    assert summary.alpha == "1"


@pytest.mark.parametrize("n", [5, 7])
def test_gold_cube_is_apn_in_odd_degree(n):
    assert delta_full(monomial(make_field(n), 3)).delta == 2


def test_square_is_linear(f16):
    f = monomial(f16, 2)
    for alpha in range(1, 16):
        row = ddt_row(f, alpha)
        assert row.delta_alpha == 16
        assert row.counts[f16.sqr(alpha)] == 16


def test_affine_has_full_uniformity(f16):
    f = Poly(f16, (0x3, 0x5, 0x1))  # x^2 + 5x + 3
    assert delta_full(f).delta == 16


def test_row_against_forward_count(f16, poly_from):
    f = poly_from(f16, "1,0,0,0,0,0,0,1,0,0,0")
    for alpha in (1, 0x6, 0xa):
        row = ddt_row(f, alpha)
        assert np.array_equal(row.counts, forward_counts(f, alpha))
        assert row.counts.sum() == 16
        assert not (row.counts & 1).any()
        assert row.d_degree == d_alpha(f, alpha).degree


def test_split_betas_have_full_preimage(f16, poly_from):
    f = poly_from(f16, "1,0,0,0,0,0,0,1,0,0,0")
    alpha = f16.pow(2, 10)
    row = ddt_row(f, alpha)
    d_poly = d_alpha(f, alpha)
    for beta in row.split_betas:
        hits = [x for x in f16.elements() if evaluate(d_poly, x) == beta]
        assert len(hits) == d_poly.degree


def test_delta_invariant_under_affine_equivalence(f16, poly_from):
    f = poly_from(f16, "1,0,0,0,0,0,0,1,0,0,0")
    base = delta_full(f).delta
    inner = Poly(f16, (0x7, 0x3))  # 3x + 7
    shifted = compose(f, inner) * 0x9 + Poly(f16, (0x4, 0x2))
    assert delta_full(shifted).delta == base


@pytest.mark.parametrize("n", range(1, 7))
def test_delta_invariant_under_every_scalar(n):
    ctx = make_field(n)
    rng = np.random.default_rng(n)
    a = [int(v) for v in rng.integers(1, ctx.order, size=1)] + [int(v) for v in rng.integers(0, ctx.order, size=10)]
    f = Poly.from_leading_first(ctx, a)
    base = delta_full(f, workers=1).delta
    for s in range(1, ctx.order):
        assert delta_full(f * s, workers=1).delta == base
    for _ in range(5):
        c, c0, c1, c2, c3 = (int(v) for v in rng.integers(0, ctx.order, size=5))
        additive = Poly(ctx, (c, c0, c1, 0, c2, 0, 0, 0, c3))
        assert delta_full(f + additive, workers=1).delta == base


def test_smallest_maximizing_pair(f16):
    summary = delta_full(monomial(f16, 3), workers=3)
    single = delta_full(monomial(f16, 3), workers=1)
    assert (summary.delta, summary.alpha, summary.beta) == (single.delta, single.alpha, single.beta)


def test_row_guard():
    ctx = make_field(10)
    with pytest.raises(ResourceGuardError) as excinfo:
        ddt_row(monomial(ctx, 3), 1, row_max_n=8)
    assert excinfo.value.flag == "--row-max-n"


def test_delta_guard():
    ctx = make_field(10)
    with pytest.raises(ResourceGuardError) as excinfo:
        delta_full(monomial(ctx, 3), delta_max_n=8)
    assert excinfo.value.flag == "--delta-max-n"


def test_zero_alpha(f16):
    with pytest.raises(PreconditionError):
        ddt_row(monomial(f16, 3), 0)


def test_report_counts(f16):
    row = ddt_row(monomial(f16, 3), 1)
    report = row.to_report(monomial(f16, 3), include_counts=True)
    assert sum(report.counts.values()) == 16
    assert report.distinct_values == len(report.counts)
    assert row.to_report(monomial(f16, 3)).counts is None


def test_export_csv(tmp_path, f8):
    path = tmp_path / "spectrum" / "x3.csv"
    written = export_spectrum_csv(monomial(f8, 3), str(path))
    with path.open() as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["alpha_hex", "beta_hex", "count"]
    assert len(rows) - 1 == written
    # x^3 is APN on F_8: every row hits 4 values twice
    assert written == 7 * 4
    assert all(row[2] == "2" for row in rows[1:])
