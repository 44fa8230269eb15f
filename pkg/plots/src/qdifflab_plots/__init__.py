"""Figure rendering for qdifflab CSV outputs."""

from .errors import PlotsError, RecipeError, SchemaError
from .render import (AXIS_MODES, FIGURE_IDS, FigureRecipe, build_figure,
                     read_table, render)

__version__ = "0.1.0"

__all__ = ["AXIS_MODES", "FIGURE_IDS", "FigureRecipe", "PlotsError",
           "RecipeError", "SchemaError", "build_figure", "read_table",
           "render", "__version__"]
