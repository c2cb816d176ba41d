"""Negative-binomial growth models for empirical maximum-cost curves.

Each model regresses the per-factor-value maxima of a counter metric on
orthogonal polynomials of the factor (log link, negative binomial family,
dispersion profiled by maximum likelihood).  Goodness of fit is reported as
the deviance explained D-squared, the GLM analogue of R-squared.

Degree selection walks the polynomial ladder upward and stops when the
leading coefficient loses significance.  The restart counter is the
exception: its growth is summarized by the plain linear model (its maxima
saturate, so curvature terms pick up the plateau rather than growth; the
slope of the linear fit is the figure of interest).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import statsmodels.api as sm

from .data import max_series, max_surface

MAX_DEGREE = 6
SIGNIFICANCE = 0.05


@dataclass
class ModelSpec:
    """What to fit: a metric, one or two factors, a degree per factor."""

    metric: str  # comp_cost | restarted
    factors: tuple  # ("vertices",) or ("vertices", "perc_neg_pct")
    degrees: tuple  # polynomial degree per factor, each >= 1
    perc_neg_cap: int = None

    def __post_init__(self):
        if len(self.factors) not in (1, 2) or len(self.factors) != len(self.degrees):
            raise ValueError("one or two factors, one degree each")
        if any(d < 1 for d in self.degrees):
            raise ValueError("degrees must be >= 1")


@dataclass
class FitResult:
    spec: ModelSpec
    algorithm: str
    terms: list  # (name, estimate, std_err, z, p)
    d_squared: float
    dispersion: float
    converged: bool
    x_values: list = field(repr=False, default=None)
    response: list = field(repr=False, default=None)
    _result: object = field(repr=False, default=None)

    def predict(self, grid):
        """Fitted mean on new values of the (single) factor."""
        if len(self.spec.factors) != 1:
            raise ValueError("predict supports one-factor models only")
        Z = ortho_poly_fit(np.asarray(self.x_values, float), self.spec.degrees[0])
        X = ortho_poly_apply(Z, np.asarray(grid, float))
        return self._result.predict(sm.add_constant(X, has_constant="add"))

    def top_p_value(self):
        return self.terms[-1][4]


class FitError(RuntimeError):
    """The model could not be fitted (reported with diagnostics)."""


def ortho_poly_fit(x, degree):
    """Orthonormal polynomial basis of a sample, R ``poly()`` style.

    Returns an object carrying the QR data so new points can be projected
    onto the same basis.
    """
    x = np.asarray(x, dtype=float)
    if len(np.unique(x)) <= degree:
        raise FitError(
            f"degree {degree} needs more than {degree} distinct factor values"
        )
    center = x.mean()
    V = np.vander(x - center, degree + 1, increasing=True)
    Q, R = np.linalg.qr(V)
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    Z = Q * signs
    norms = np.sqrt((Z**2).sum(axis=0))
    return {"center": center, "R": R * signs[:, None], "norms": norms,
            "degree": degree, "columns": (Z / norms)[:, 1:]}


def ortho_poly_apply(basis, x):
    """Project new points onto a fitted orthogonal basis."""
    V = np.vander(np.asarray(x, float) - basis["center"],
                  basis["degree"] + 1, increasing=True)
    Z = np.linalg.solve(basis["R"].T, V.T).T
    return (Z / basis["norms"])[:, 1:]


def _profile_nb(y, exog):
    """GLM fit with the NB dispersion profiled by golden-section ML."""
    def loglike(log_alpha):
        fam = sm.families.NegativeBinomial(alpha=10.0**log_alpha)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            try:
                res = sm.GLM(y, exog, family=fam).fit()
            except Exception:
                return -math.inf, None
        return res.llf, res

    lo, hi = -8.0, 1.0
    ratio = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - ratio * (hi - lo)
    d = lo + ratio * (hi - lo)
    fc, _ = loglike(c)
    fd, _ = loglike(d)
    for _ in range(60):
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - ratio * (hi - lo)
            fc, _ = loglike(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + ratio * (hi - lo)
            fd, _ = loglike(d)
    best = 0.5 * (lo + hi)
    ll, res = loglike(best)
    if res is None:
        raise FitError("negative binomial fit did not converge")
    return res, 10.0**best


def fit_maxcost_model(rows, spec: ModelSpec, algorithm: str) -> FitResult:
    """Fit one growth model on the empirical maxima of an algorithm."""
    sub = [r for r in rows if r["algorithm"] == algorithm]
    if not sub:
        raise FitError(f"no rows for algorithm {algorithm}")
    names = []
    if len(spec.factors) == 1:
        x, y = max_series(sub, spec.factors[0], spec.metric, spec.perc_neg_cap)
        bases = [ortho_poly_fit(np.asarray(x, float), spec.degrees[0])]
        X = bases[0]["columns"]
        names += [f"poly(x, {spec.degrees[0]}){i + 1}" for i in range(spec.degrees[0])]
        x_values = x
    else:
        xs, ys, y = max_surface(sub, spec.factors[0], spec.factors[1], spec.metric)
        bx = ortho_poly_fit(np.asarray(xs, float), spec.degrees[0])
        by = ortho_poly_fit(np.asarray(ys, float), spec.degrees[1])
        X = np.hstack([bx["columns"], by["columns"]])
        names += [f"poly(x, {spec.degrees[0]}){i + 1}" for i in range(spec.degrees[0])]
        names += [f"poly(y, {spec.degrees[1]}){i + 1}" for i in range(spec.degrees[1])]
        x_values = None
    y = np.asarray(y, dtype=float)
    exog = sm.add_constant(np.asarray(X, float), has_constant="add")
    res, alpha = _profile_nb(y, exog)
    if res.null_deviance > 1e-12:
        # deviance explained, clamped into [0, 1]
        d2 = min(1.0, max(0.0, 1.0 - res.deviance / res.null_deviance))
    else:
        d2 = 0.0  # constant response: nothing to explain
    terms = [("(Intercept)", *_term(res, 0))]
    for i, name in enumerate(names, start=1):
        terms.append((name, *_term(res, i)))
    return FitResult(
        spec=spec,
        algorithm=algorithm,
        terms=terms,
        d_squared=float(d2),
        dispersion=float(alpha),
        converged=bool(res.converged) if hasattr(res, "converged") else True,
        x_values=x_values,
        response=list(y),
        _result=res,
    )


def _term(res, i):
    return (
        float(res.params[i]),
        float(res.bse[i]),
        float(res.tvalues[i]),
        float(res.pvalues[i]),
    )


def select_degree(rows, metric, factor, algorithm, perc_neg_cap=None):
    """Pick the polynomial degree for a one-factor growth model.

    Computational cost walks degrees upward while the leading term stays
    significant at 0.05.  The restart counter is fitted linearly only (degree
    1 if the slope is significant, else 0); see the module docstring.

    Returns ``(degree, FitResult at that degree or None when degree == 0)``.
    """
    ladder_top = 1 if metric == "restarted" else MAX_DEGREE
    chosen, chosen_fit = 0, None
    for k in range(1, ladder_top + 1):
        spec = ModelSpec(metric=metric, factors=(factor,), degrees=(k,),
                         perc_neg_cap=perc_neg_cap)
        try:
            fit = fit_maxcost_model(rows, spec, algorithm)
        except FitError:
            break
        if fit.top_p_value() > SIGNIFICANCE:
            break
        chosen, chosen_fit = k, fit
    return chosen, chosen_fit


def fitted_peak(fit: FitResult, grid=None):
    """Argmax of the fitted mean of a one-factor model (fine grid)."""
    xs = np.asarray(fit.x_values, dtype=float)
    if grid is None:
        grid = np.linspace(xs.min(), xs.max(), 401)
    mean = fit.predict(grid)
    return float(grid[int(np.argmax(mean))])
