"""Figure rendering for fleet-simulator trace directories."""

from .errors import PlotError
from .figures import KINDS, FigureSpec, render
from .traces import TraceDir, load_trace_dir

__version__ = "0.1.0"

__all__ = [
    "FigureSpec",
    "KINDS",
    "PlotError",
    "TraceDir",
    "load_trace_dir",
    "render",
]
