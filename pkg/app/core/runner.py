import asyncio
import json
import logging
from pathlib import Path
from typing import Callable, Dict, Tuple

from pydantic import BaseModel

from ..algebra.gf2n import FieldContext, make_field, parse_hex
from ..algebra.polyops import Degree10Coeffs, Poly
from ..models.schemas import AnalyzeReport, RunConfig, RunResult
from ..tools.reproduce import reproduce
from ..tools.theorems import (
    chebotarev_threshold,
    field_info,
    monodromy_stats,
    thm2_check,
    thm_main_check,
)
from ..tools.uniformity import ddt_row, delta_full, export_spectrum_csv
from .errors import PreconditionError, ToolkitError

# Configure logging
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INAPPLICABLE = 2

Outcome = Tuple[int, BaseModel]


def dump(model: BaseModel) -> dict:
    return model.model_dump(mode="json", by_alias=True, exclude_none=True)


def render(result: RunResult) -> str:
    """Stable JSON text; identical configs give identical bytes unless ``timing`` is set."""
    return json.dumps(dump(result), indent=2)


class AnalysisRunner:
    def __init__(self):
        logger.info("🚀 Initializing AnalysisRunner")
        self.registry: Dict[str, Callable[[RunConfig], Outcome]] = {
            "check": self.check,
            "analyze": self.analyze,
            "stats": self.stats,
            "bounds": self.bounds,
            "reproduce": self.reproduce,
        }

    # -- inputs ----------------------------------------------------------------

    def _field(self, config: RunConfig) -> FieldContext:
        modulus = None if config.modulus is None else parse_hex(config.modulus)
        return make_field(config.n, modulus)

    def _poly(self, config: RunConfig, ctx: FieldContext) -> Poly:
        text = config.poly
        if text is None:
            text = Path(config.poly_file).read_text().strip()
        f = Poly.parse(ctx, text)
        if f.is_zero:
            raise PreconditionError("the zero polynomial has no differential spectrum")
        return f

    def _alpha(self, config: RunConfig, ctx: FieldContext):
        return None if config.alpha is None else ctx.parse(config.alpha)

    # -- commands --------------------------------------------------------------

    def check(self, config: RunConfig) -> Outcome:
        ctx = self._field(config)
        coeffs = Degree10Coeffs.from_poly(self._poly(config, ctx))
        monic = coeffs.monic()
        if monic[1] == 0 and monic[3] == 0:
            report = thm2_check(coeffs, ctx, alpha=self._alpha(config, ctx), sweep_cap=config.sweep_cap)
        else:
            report = thm_main_check(coeffs, ctx)
        code = EXIT_INAPPLICABLE if report.conclusion == "inapplicable" else EXIT_OK
        return code, report

    def analyze(self, config: RunConfig) -> Outcome:
        ctx = self._field(config)
        f = self._poly(config, ctx)
        alpha = self._alpha(config, ctx)
        report = AnalyzeReport(field=field_info(ctx), poly=f.to_text())
        if alpha is not None:
            row = ddt_row(f, alpha, row_max_n=config.row_max_n)
            report.rows.append(row.to_report(f, include_counts=config.include_counts))
        if alpha is None or config.full:
            summary = delta_full(f, delta_max_n=config.delta_max_n)
            if not config.timing:
                # wall-clock time stays in the log unless asked for
                summary = summary.model_copy(update={"runtime_ms": None})
            report.summary = summary
        if config.spectrum_csv:
            alphas = None if alpha is None or config.full else [alpha]
            export_spectrum_csv(f, config.spectrum_csv, alphas=alphas, row_max_n=config.row_max_n)
            report.spectrum_csv = config.spectrum_csv
        return EXIT_OK, report

    def stats(self, config: RunConfig) -> Outcome:
        ctx = self._field(config)
        coeffs = Degree10Coeffs.from_poly(self._poly(config, ctx))
        monic = coeffs.monic()
        mode = config.mode or ("quartic_klein" if monic[1] == 0 and monic[3] == 0 else "cubic_s3")
        alpha = self._alpha(config, ctx)
        if alpha is None and mode == "cubic_s3":
            alpha = monic[1]
        if alpha is None:
            found = thm2_check(coeffs, ctx, sweep_cap=config.sweep_cap).alpha
            if found is None:
                raise PreconditionError("no alpha satisfies the Klein conditions; pass --alpha")
            alpha = ctx.parse(found)
        histogram = monodromy_stats(coeffs, ctx, alpha, mode, samples=config.samples, seed=config.seed)
        return (EXIT_OK if histogram.within_tolerance else EXIT_INAPPLICABLE), histogram

    def bounds(self, config: RunConfig) -> Outcome:
        return EXIT_OK, chebotarev_threshold(config.d_omega, config.deg_d, n=config.n)

    def reproduce(self, config: RunConfig) -> Outcome:
        report = reproduce(config.scenario)
        return (EXIT_OK if report.passed else EXIT_ERROR), report

    # -- dispatch --------------------------------------------------------------

    def run(self, config: RunConfig) -> RunResult:
        logger.info(f"🚀 Running command: {config.command}")
        try:
            code, report = self.registry[config.command](config)
            result = RunResult(command=config.command, exit_code=code, report=dump(report))
            logger.info(f"✅ Command {config.command} finished with exit code {code}")
        except (ToolkitError, ValueError, ZeroDivisionError, OSError) as e:
            logger.error(f"❌ Command {config.command} failed: {e}")
            result = RunResult(
                command=config.command,
                exit_code=EXIT_ERROR,
                error=type(e).__name__,
                message=str(e),
            )
        if config.output:
            out = Path(config.output)
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(render(result) + "\n")
            logger.info(f"💾 Report written to {out}")
        return result

    async def process(self, config: RunConfig) -> RunResult:
        """Run a command off the event loop."""
        return await asyncio.to_thread(self.run, config)


# Create global instance
runner_instance = AnalysisRunner()
