"""Ordinary least squares with full inferential statistics.

Fits log-price hedonic models of the form

    ln(price) = intercept + sum_k beta_k * z_k + sum_q delta_q * dummy_q + e

by Householder QR (the normal-equations matrix is never formed), and
reports standard errors, t statistics, two-sided Student-t p-values,
R^2, and the coefficient covariance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .domain import Dataset, SaleObservation
from .errors import ModelError, RankDeficientError

# columns whose smallest |R| diagonal falls below RANK_RTOL times the
# largest are treated as linearly dependent
RANK_RTOL = 1e-10

_BUILTIN_CHARACTERISTICS = ("area", "aspect_ratio", "log_area")


def characteristic_value(obs: SaleObservation, name: str) -> float:
    """Evaluate a named characteristic on one observation.

    Known names are the built-ins (area, aspect_ratio, log_area) plus any
    key of the observation's extra characteristics.
    """
    if name == "area":
        return obs.area
    if name == "aspect_ratio":
        return obs.aspect_ratio
    if name == "log_area":
        if not (obs.area > 0):
            raise ModelError(f"observation {obs.id!r}: log of non-positive area")
        return math.log(obs.area)
    try:
        return obs.extra_characteristics[name]
    except KeyError:
        raise ModelError(
            f"unknown characteristic {name!r}; available: "
            + ", ".join(_BUILTIN_CHARACTERISTICS)
            + (
                ", " + ", ".join(sorted(obs.extra_characteristics))
                if obs.extra_characteristics
                else ""
            )
        ) from None


def available_characteristics(ds: Dataset) -> tuple[str, ...]:
    """Names usable as regressors: built-ins plus extras present on all records."""
    extras: set[str] | None = None
    for obs in ds.observations:
        keys = set(obs.extra_characteristics)
        extras = keys if extras is None else extras & keys
    return _BUILTIN_CHARACTERISTICS + tuple(sorted(extras or ()))


@dataclass(frozen=True)
class ModelSpec:
    """Hedonic model specification.

    The response is always the natural log of price, less any pinned
    terms. ``regressors`` are free characteristics fitted by OLS;
    ``pinned`` fixes chosen characteristics at given coefficients by
    moving them onto the response (algebraically exact). Time dummies use
    ``reference_period`` as the omitted category.
    """

    regressors: tuple[str, ...] = ()
    time_dummies: bool = True
    reference_period: str | None = None
    include_intercept: bool = True
    pinned: tuple[tuple[str, float], ...] = ()

    def all_characteristics(self) -> tuple[str, ...]:
        return self.regressors + tuple(name for name, _ in self.pinned)


@dataclass(frozen=True, eq=False)
class DesignSystem:
    """Numeric least-squares problem: X, y, and column labels."""

    design_matrix: np.ndarray
    response_vector: np.ndarray
    column_names: tuple[str, ...]

    @property
    def n_observations(self) -> int:
        return self.design_matrix.shape[0]

    @property
    def n_columns(self) -> int:
        return self.design_matrix.shape[1]


@dataclass(frozen=True, eq=False)
class RegressionResult:
    """Coefficients with full inferential statistics."""

    column_names: tuple[str, ...]
    coefficients: np.ndarray
    standard_errors: np.ndarray
    t_statistics: np.ndarray
    p_values: np.ndarray
    residuals: np.ndarray
    sigma2: float
    covariance: np.ndarray
    r_squared: float
    adjusted_r_squared: float
    degrees_of_freedom: int

    def coefficient(self, name: str) -> float:
        """Coefficient looked up by column name."""
        try:
            return float(self.coefficients[self.column_names.index(name)])
        except ValueError:
            raise ModelError(
                f"no column {name!r} in fitted model; columns: "
                + ", ".join(self.column_names)
            ) from None

    @property
    def n_observations(self) -> int:
        return len(self.residuals)


def dummy_column_name(period: str) -> str:
    return f"dummy_{period}"


def build_design(ds: Dataset, spec: ModelSpec) -> DesignSystem:
    """Assemble the design matrix and log-price response for a model spec.

    Column order is intercept, then the free regressors in spec order,
    then one 0/1 dummy per non-reference period in dataset period order.
    """
    names = list(spec.all_characteristics())
    if len(set(names)) != len(names):
        raise ModelError(f"regressor names must be distinct, got {names}")
    if spec.time_dummies:
        if spec.reference_period is None:
            raise ModelError("time dummies require a reference period")
        if spec.reference_period not in ds.periods:
            raise ModelError(
                f"reference period {spec.reference_period!r} not in dataset "
                f"periods {list(ds.periods)}"
            )

    n = len(ds.observations)
    dummy_periods = (
        tuple(p for p in ds.periods if p != spec.reference_period)
        if spec.time_dummies
        else ()
    )
    column_names: list[str] = []
    if spec.include_intercept:
        column_names.append("intercept")
    column_names.extend(spec.regressors)
    column_names.extend(dummy_column_name(p) for p in dummy_periods)

    k = len(column_names)
    x = np.zeros((n, k))
    y = np.empty(n)
    dummy_index = {p: column_names.index(dummy_column_name(p)) for p in dummy_periods}

    for i, obs in enumerate(ds.observations):
        if not (obs.price > 0):
            raise ModelError(f"observation {obs.id!r}: log of non-positive price")
        response = math.log(obs.price)
        for name, coef in spec.pinned:
            response -= coef * characteristic_value(obs, name)
        y[i] = response
        col = 0
        if spec.include_intercept:
            x[i, 0] = 1.0
            col = 1
        for name in spec.regressors:
            x[i, col] = characteristic_value(obs, name)
            col += 1
        if obs.period in dummy_index:
            x[i, dummy_index[obs.period]] = 1.0

    x.setflags(write=False)
    y.setflags(write=False)
    return DesignSystem(design_matrix=x, response_vector=y, column_names=tuple(column_names))


def _factor(sys: DesignSystem) -> tuple[np.ndarray, np.ndarray]:
    x = np.ascontiguousarray(sys.design_matrix, dtype=np.float64)
    y = np.ascontiguousarray(sys.response_vector, dtype=np.float64)
    n, k = x.shape
    if k == 0:
        raise ModelError("design matrix has no columns")
    if n < k:
        raise ModelError(f"underdetermined system: {n} observations for {k} columns")
    r, qty = kernels.householder_factor(x, y)
    diag = np.abs(np.diag(r))
    largest = diag.max()
    smallest_idx = int(diag.argmin())
    if largest == 0.0 or diag[smallest_idx] < RANK_RTOL * largest:
        ratio = diag[smallest_idx] / largest if largest > 0 else 0.0
        raise RankDeficientError(sys.column_names[smallest_idx], float(ratio))
    return r, qty


def solve_least_squares(sys: DesignSystem) -> np.ndarray:
    """Least-squares coefficients via Householder QR."""
    r, qty = _factor(sys)
    coef = kernels.solve_upper_triangular(r, qty)
    coef.setflags(write=False)
    return coef


def regression_statistics(sys: DesignSystem, coef: np.ndarray) -> RegressionResult:
    """Inferential statistics for a solved system.

    sigma^2 is RSS / (N - K); the covariance comes from the triangular
    factor (sigma^2 * R^-1 R^-T); p-values are two-sided Student-t with
    N - K degrees of freedom; R^2 is measured against the mean-only model.
    """
    x = sys.design_matrix
    y = sys.response_vector
    n, k = x.shape
    df = n - k
    if df <= 0:
        raise ModelError(
            f"no residual degrees of freedom: {n} observations, {k} columns"
        )
    residuals = y - x @ coef
    rss = float(residuals @ residuals)
    sigma2 = rss / df

    r, _ = _factor(sys)
    r_inv = kernels.invert_upper_triangular(r)
    covariance = sigma2 * (r_inv @ r_inv.T)
    standard_errors = np.sqrt(np.diag(covariance))
    t_statistics = np.asarray(coef) / standard_errors
    p_values = np.array(
        [student_t_two_sided_p(float(t), df) for t in t_statistics]
    )

    tss = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - rss / tss if tss > 0 else 1.0
    adjusted = 1.0 - (1.0 - r_squared) * (n - 1) / df

    for arr in (residuals, covariance, standard_errors, t_statistics, p_values):
        arr.setflags(write=False)
    return RegressionResult(
        column_names=sys.column_names,
        coefficients=np.asarray(coef),
        standard_errors=standard_errors,
        t_statistics=t_statistics,
        p_values=p_values,
        residuals=residuals,
        sigma2=sigma2,
        covariance=covariance,
        r_squared=r_squared,
        adjusted_r_squared=adjusted,
        degrees_of_freedom=df,
    )


def fit(ds: Dataset, spec: ModelSpec) -> RegressionResult:
    """Build the design for ``spec``, solve it, and compute statistics."""
    sys = build_design(ds, spec)
    coef = solve_least_squares(sys)
    return regression_statistics(sys, coef)


def student_t_two_sided_p(t: float, df: int) -> float:
    """P(|T| >= |t|) for Student-t with ``df`` degrees of freedom.

    Computed as the regularized incomplete beta I_x(df/2, 1/2) with
    x = df / (df + t^2); accurate to well under 1e-10 absolute.
    """
    if not (isinstance(df, (int, np.integer)) and df >= 1):
        raise ModelError(f"degrees of freedom must be a positive integer, got {df!r}")
    if not math.isfinite(t):
        raise ModelError(f"t statistic must be finite, got {t!r}")
    x = df / (df + t * t)
    return float(kernels.regularized_incomplete_beta(df / 2.0, 0.5, x))
