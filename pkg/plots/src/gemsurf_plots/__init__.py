"""Figure generation from gemsurf stats CSV exports."""

from .figures import FIGURE_IDS, FigureError, FigureSpec, prepare, render
from .statsfile import SchemaError, read_stats

__version__ = "0.1.0"
