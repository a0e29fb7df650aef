"""Standard figures from epifront CSV/JSON outputs."""

from .figures import FIGURE_KINDS, EmptyInput, FigureJob, SchemaMismatch, render

__version__ = "0.1.0"

__all__ = ["FIGURE_KINDS", "EmptyInput", "FigureJob", "SchemaMismatch", "render"]
