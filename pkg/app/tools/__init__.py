from .theorems import chebotarev_threshold, monodromy_stats, thm2_check, thm_main_check
from .uniformity import ddt_row, delta_full, export_spectrum_csv
from .reproduce import reproduce

__all__ = [
    "chebotarev_threshold",
    "monodromy_stats",
    "thm2_check",
    "thm_main_check",
    "ddt_row",
    "delta_full",
    "export_spectrum_csv",
    "reproduce",
]
