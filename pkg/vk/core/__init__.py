"""Core algorithms of the vk toolkit."""

from .catalog import catalog, pipeline_xk_report, verify_report
from .vankampen import VanKampenSolver, obstruction

__all__ = ["catalog", "pipeline_xk_report", "verify_report", "VanKampenSolver", "obstruction"]
