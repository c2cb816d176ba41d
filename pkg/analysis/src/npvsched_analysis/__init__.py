"""Growth-model fitting and figure generation for npvsched benchmark CSVs."""

from .data import read_results, max_series, max_surface, algorithms
from .glm import (
    FitError,
    FitResult,
    ModelSpec,
    fit_maxcost_model,
    fitted_peak,
    ortho_poly_apply,
    ortho_poly_fit,
    select_degree,
)
from .figures import render_figures

__version__ = "0.1.0"
