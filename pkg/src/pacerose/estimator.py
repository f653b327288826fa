"""Ordinary least squares with inference statistics.

The solver augments the design with an intercept column, detects the
numerical rank, and then either solves by Householder QR (full rank) or by
the SVD pseudoinverse (rank deficient), depending on the rank policy.

The minimum-norm path exists because the Fourier histogram features of this
model family are structurally collinear: demand and network features that
share a harmonic degree k both span {cos(k*theta), sin(k*theta)}, so the
full design is never of full column rank when both histograms carry mass at
the same k. The deterministic minimum-norm solution is the conventional
resolution (it is what pseudoinverse-based OLS packages report); a strict
policy that refuses rank-deficient designs is available for callers that
want the hard error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientDataError, RankDeficiencyError
from .special import f_p_value, t_p_value

RANK_RCOND = 1e-10
_NULLSPACE_COMPONENT_TOL = 1e-6

__all__ = [
    "FitResult",
    "ols_fit",
    "report_rows",
    "significance_mask",
]


@dataclass(frozen=True)
class FitResult:
    """Coefficients and inference statistics of one least-squares fit.

    ``coefficients`` etc. cover the slope columns in design order; the
    intercept (gamma) is carried separately. ``dof_residual`` is
    n_samples - rank, which equals n_samples - parameter_count whenever the
    design has full column rank.
    """

    column_names: tuple
    gamma: float
    coefficients: np.ndarray = field(repr=False)
    std_errors: np.ndarray = field(repr=False)
    t_values: np.ndarray = field(repr=False)
    p_values: np.ndarray = field(repr=False)
    gamma_std_error: float
    gamma_t_value: float
    gamma_p_value: float
    r_squared: float
    f_statistic: float
    prob_f: float
    n_samples: int
    dof_residual: int
    rank: int
    dependent_columns: tuple = ()
    fitted_values: np.ndarray | None = field(default=None, repr=False)
    residuals: np.ndarray | None = field(default=None, repr=False)

    @property
    def parameter_count(self) -> int:
        return len(self.column_names) + 1

    @property
    def full_rank(self) -> bool:
        return self.rank == self.parameter_count

    def params(self) -> np.ndarray:
        """Intercept followed by the slope coefficients."""
        return np.concatenate([[self.gamma], self.coefficients])


def _dependent_column_names(vt_null: np.ndarray, names) -> tuple:
    """Columns with a nontrivial component in any null-space direction."""
    if vt_null.size == 0:
        return ()
    weight = np.max(np.abs(vt_null), axis=0)
    involved = weight > _NULLSPACE_COMPONENT_TOL * weight.max()
    labels = ("intercept",) + tuple(names)
    return tuple(label for label, hit in zip(labels, involved) if hit)


def ols_fit(X, y, column_names=None, rank_policy: str = "min_norm") -> FitResult:
    """Least-squares fit of y on [1 X] with standard inference statistics.

    Parameters
    ----------
    X : (N, m) array
        Regressor columns, without an intercept (added internally).
    y : (N,) array
        Response.
    column_names : sequence of str, optional
        Labels for the m columns; defaults to x1..xm.
    rank_policy : "min_norm" or "strict"
        What to do when [1 X] is rank deficient. "min_norm" returns the
        deterministic minimum-norm solution with pseudoinverse-based
        standard errors; "strict" raises RankDeficiencyError naming the
        dependent columns.

    Raises
    ------
    InsufficientDataError
        If N <= m + 1.
    RankDeficiencyError
        Under the strict policy on a rank-deficient design.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
        raise ValueError("X must be N x m and y length N")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
        raise ValueError("X and y must be finite")
    n, m = X.shape
    if column_names is None:
        column_names = tuple(f"x{j + 1}" for j in range(m))
    else:
        column_names = tuple(column_names)
        if len(column_names) != m:
            raise ValueError("column_names must match the number of columns")
    if rank_policy not in ("min_norm", "strict"):
        raise ValueError(f"unknown rank policy {rank_policy!r}")
    p = m + 1
    if n <= p:
        raise InsufficientDataError(
            f"need more than {p} samples for {p} parameters, got {n}"
        )

    A = np.column_stack([np.ones(n), X])
    u, s, vt = np.linalg.svd(A, full_matrices=False)
    rank = int(np.sum(s > RANK_RCOND * s[0]))

    dependent = ()
    if rank < p:
        dependent = _dependent_column_names(vt[rank:], column_names)
        if rank_policy == "strict":
            raise RankDeficiencyError(
                "design matrix is rank deficient "
                f"(rank {rank} of {p}); dependent columns: "
                + ", ".join(dependent),
                columns=dependent,
            )
        # minimum-norm solution and pseudoinverse covariance factor
        uty = u[:, :rank].T @ y
        params = vt[:rank].T @ (uty / s[:rank])
        cov_unscaled = (vt[:rank].T / s[:rank] ** 2) @ vt[:rank]
    else:
        # Householder QR; avoids squaring the condition number
        q, r = np.linalg.qr(A)
        params = np.linalg.solve(r, q.T @ y)
        r_inv = np.linalg.solve(r, np.eye(p))
        cov_unscaled = r_inv @ r_inv.T

    fitted = A @ params
    residuals = y - fitted
    rss = float(residuals @ residuals)
    ybar = float(y.mean())
    tss = float(((y - ybar) ** 2).sum())
    dof_residual = n - rank

    degenerate = tss == 0.0 or float(np.ptp(y)) == 0.0
    if degenerate:
        r_squared = 0.0
    else:
        r_squared = min(1.0, max(0.0, 1.0 - rss / tss))

    df_model = rank - 1
    if degenerate or df_model == 0:
        f_statistic = 0.0
        prob_f = 1.0
    elif rss == 0.0:
        f_statistic = math.inf
        prob_f = 0.0
    else:
        # computed from RSS directly so a near-perfect fit stays finite
        f_statistic = ((tss - rss) / df_model) / (rss / dof_residual)
        f_statistic = max(0.0, f_statistic)
        prob_f = f_p_value(f_statistic, df_model, dof_residual)

    sigma2 = rss / dof_residual
    se = np.sqrt(np.maximum(sigma2 * np.diag(cov_unscaled), 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        t_all = np.where(se > 0.0, params / np.where(se > 0.0, se, 1.0),
                         np.where(params == 0.0, 0.0, np.inf * np.sign(params)))
    p_all = np.array([t_p_value(float(abs(t)), dof_residual) for t in t_all])

    return FitResult(
        column_names=column_names,
        gamma=float(params[0]),
        coefficients=params[1:].copy(),
        std_errors=se[1:].copy(),
        t_values=t_all[1:].copy(),
        p_values=p_all[1:].copy(),
        gamma_std_error=float(se[0]),
        gamma_t_value=float(t_all[0]),
        gamma_p_value=float(p_all[0]),
        r_squared=float(r_squared),
        f_statistic=float(f_statistic),
        prob_f=float(prob_f),
        n_samples=n,
        dof_residual=dof_residual,
        rank=rank,
        dependent_columns=dependent,
        fitted_values=fitted,
        residuals=residuals,
    )


def significance_mask(fit: FitResult, level: float = 0.05) -> np.ndarray:
    """Boolean mask over slope coefficients with p-value below ``level``.

    The intercept is not part of the mask; it always enters prediction and
    is reported separately.
    """
    if not 0.0 < level < 1.0:
        raise ValueError("significance level must be in (0, 1)")
    return fit.p_values < level


def report_rows(fit: FitResult, level: float = 0.05):
    """Rows (name, coefficient, std_err, t_value, p_value, significant).

    The intercept row comes first, then slopes in design order.
    """
    rows = [(
        "gamma",
        fit.gamma,
        fit.gamma_std_error,
        fit.gamma_t_value,
        fit.gamma_p_value,
        fit.gamma_p_value < level,
    )]
    for j, name in enumerate(fit.column_names):
        rows.append((
            name,
            float(fit.coefficients[j]),
            float(fit.std_errors[j]),
            float(fit.t_values[j]),
            float(fit.p_values[j]),
            bool(fit.p_values[j] < level),
        ))
    return rows
