"""Learning-curve data: types, split schedules, file formats and probes."""

from .models import CurveDataset, CurvePoint, Role, SplitSchedule, count_for_fraction
from .schedule import assign_roles, default_schedule
from .points import parse_points, write_points
from .probe import run_probe
from .report import FitReport, read_fit_report, write_fit_report

__all__ = [
    "CurveDataset",
    "CurvePoint",
    "FitReport",
    "Role",
    "SplitSchedule",
    "assign_roles",
    "count_for_fraction",
    "default_schedule",
    "parse_points",
    "read_fit_report",
    "run_probe",
    "write_fit_report",
    "write_points",
]
