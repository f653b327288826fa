"""Influence-curve reconstruction, prediction, and sign diagnostics.

The fitted coefficients define two periodic influence curves: one giving the
weight of demand mass at a signed angular offset from the travel direction,
one giving the weight of network mass. Curves are Fourier sums over the
fitted harmonics; reconstruction can restrict itself to statistically
significant terms, prediction always uses every fitted coefficient.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .angles import AngularHistogram
from .errors import SpecMismatchError
from .estimator import FitResult
from .features import ModelSpec, demand_features, network_features
from .special import t_p_value

MODEL_FORMAT = "pacerose-model/1"

_COLUMN_RE = re.compile(r"^([ab])_([cs])(\d+)$")

__all__ = [
    "InfluenceCurve",
    "expected_sign_report",
    "load_model",
    "predict_pace",
    "reconstruct_curve",
    "save_model",
]


@dataclass(frozen=True)
class InfluenceCurve:
    """A reconstructed influence curve sampled on an offset grid.

    ``offsets`` are strictly increasing in [-pi, pi); for an even grid size
    the midpoint is exactly 0.0.
    """

    offsets: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    kind: str = "alpha"
    significance_filtered: bool = False

    def __post_init__(self):
        if self.kind not in ("alpha", "beta"):
            raise ValueError("kind must be 'alpha' or 'beta'")
        offsets = np.asarray(self.offsets, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if offsets.shape != values.shape or offsets.ndim != 1:
            raise ValueError("offsets and values must be 1-D and equally long")
        if not np.all(np.isfinite(values)):
            raise ValueError("curve values must be finite")
        if np.any(np.diff(offsets) <= 0.0):
            raise ValueError("offsets must be strictly increasing")
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "values", values)

    def value_at_zero(self) -> float:
        """Curve value at offset 0 (exact grid point for even grid sizes)."""
        i = int(np.argmin(np.abs(self.offsets)))
        return float(self.values[i])

    def argmax_offset(self) -> float:
        return float(self.offsets[int(np.argmax(self.values))])

    def argmin_offset(self) -> float:
        return float(self.offsets[int(np.argmin(self.values))])


def _curve_terms(column_names, coefficients, mask, kind):
    """(harmonic, cos_coeff, sin_coeff) triples for the requested curve."""
    prefix = "a" if kind == "alpha" else "b"
    terms = {}
    for j, name in enumerate(column_names):
        m = _COLUMN_RE.match(name)
        if m is None:
            raise ValueError(f"unrecognized column name {name!r}")
        if m.group(1) != prefix:
            continue
        if mask is not None and not mask[j]:
            continue
        k = int(m.group(3))
        part = m.group(2)
        c, s = terms.get(k, (0.0, 0.0))
        if part == "c":
            c = float(coefficients[j])
        else:
            s = float(coefficients[j])
        terms[k] = (c, s)
    return sorted(terms.items())


def reconstruct_curve(
    column_names,
    coefficients,
    mask=None,
    kind: str = "alpha",
    grid_size: int = 256,
) -> InfluenceCurve:
    """Fourier reconstruction of an influence curve on a uniform offset grid.

    ``mask`` (boolean, aligned with ``column_names``) keeps only masked-in
    terms; masked-out terms contribute zero. With no mask every coefficient
    of the requested kind enters.
    """
    if grid_size < 8:
        raise ValueError("grid_size must be >= 8")
    if kind not in ("alpha", "beta"):
        raise ValueError("kind must be 'alpha' or 'beta'")
    coefficients = np.asarray(coefficients, dtype=float)
    if len(column_names) != coefficients.size:
        raise ValueError("column_names and coefficients must align")
    offsets = -math.pi + np.arange(grid_size) * (2.0 * math.pi / grid_size)
    values = np.zeros(grid_size)
    for k, (c, s) in _curve_terms(column_names, coefficients, mask, kind):
        values += c * np.cos(k * offsets) + s * np.sin(k * offsets)
    return InfluenceCurve(
        offsets=offsets,
        values=values,
        kind=kind,
        significance_filtered=mask is not None,
    )


def predict_pace(
    theta: float,
    demand_hist: AngularHistogram,
    network_hist: AngularHistogram,
    fit: FitResult,
    spec: ModelSpec,
) -> float:
    """Predicted pace (s/km) for direction ``theta``.

    Uses every fitted coefficient; significance masking applies only to
    curve reconstruction.
    """
    if fit.column_names != spec.column_names:
        raise SpecMismatchError(
            "fit and spec disagree on the regression columns"
        )
    for hist, what in ((demand_hist, "demand"), (network_hist, "network")):
        if hist.bin_count != spec.bins:
            raise SpecMismatchError(
                f"{what} histogram has {hist.bin_count} bins, spec wants {spec.bins}"
            )
    row = np.concatenate([
        demand_features(theta, demand_hist, spec.k_max),
        network_features(
            theta, network_hist, spec.k_max, spec.network_point_symmetric
        ),
    ])
    return float(fit.gamma + row @ fit.coefficients)


def expected_sign_report(alpha: InfluenceCurve, beta: InfluenceCurve) -> str:
    """Plain-text diagnostic of curve signs at zero offset.

    More same-direction demand is expected to raise pace (alpha(0) > 0);
    more same-direction road supply is expected to lower it (beta(0) < 0).
    Informational only; never raises.
    """
    lines = []
    for curve, name, expect_positive in (
        (alpha, "alpha", True),
        (beta, "beta", False),
    ):
        v0 = curve.value_at_zero()
        if v0 == 0.0:
            verdict = "indeterminate (zero)"
        else:
            sign = "positive" if v0 > 0.0 else "negative"
            expected = "positive" if expect_positive else "negative"
            verdict = (
                f"{sign}; matches expectation ({expected})"
                if (v0 > 0.0) == expect_positive
                else f"{sign}; contrary to expectation ({expected})"
            )
        lines.append(f"{name}(0) = {v0:.4f} -> {verdict}")
        lines.append(
            f"  {name} argmax offset = {curve.argmax_offset():+.4f} rad, "
            f"argmin offset = {curve.argmin_offset():+.4f} rad"
        )
    return "\n".join(lines)


def save_model(
    path,
    fit: FitResult,
    spec: ModelSpec,
    demand_hist: AngularHistogram,
    network_hist: AngularHistogram,
):
    """Write a self-contained fitted model as versioned JSON."""
    payload = {
        "format": MODEL_FORMAT,
        "k_max": spec.k_max,
        "bins": spec.bins,
        "point_symmetric": spec.network_point_symmetric,
        "column_names": list(fit.column_names),
        "gamma": fit.gamma,
        "gamma_std_error": fit.gamma_std_error,
        "coefficients": [float(v) for v in fit.coefficients],
        "std_errors": [float(v) for v in fit.std_errors],
        "t_values": [float(v) for v in fit.t_values],
        "p_values": [float(v) for v in fit.p_values],
        "r_squared": fit.r_squared,
        "f_statistic": fit.f_statistic,
        "prob_f": fit.prob_f,
        "n_samples": fit.n_samples,
        "dof_residual": fit.dof_residual,
        "rank": fit.rank,
        "demand_hist": [float(v) for v in demand_hist.values],
        "network_hist": [float(v) for v in network_hist.values],
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=1)
        f.write("\n")


def load_model(path):
    """Load a model written by save_model.

    Returns (fit, spec, demand_hist, network_hist). The fit carries no
    fitted values or residuals (they are not persisted).
    """
    with open(path, encoding="utf-8") as f:
        payload = json.load(f)
    if payload.get("format") != MODEL_FORMAT:
        raise SpecMismatchError(
            f"unsupported model format {payload.get('format')!r}"
        )
    spec = ModelSpec(
        k_max=int(payload["k_max"]),
        bins=int(payload["bins"]),
        network_point_symmetric=bool(payload["point_symmetric"]),
    )
    column_names = tuple(payload["column_names"])
    if column_names != spec.column_names:
        raise SpecMismatchError("model column names do not match its spec")
    gamma = float(payload["gamma"])
    gamma_se = float(payload["gamma_std_error"])
    dof_residual = int(payload["dof_residual"])
    gamma_t = gamma / gamma_se if gamma_se > 0.0 else math.inf
    fit = FitResult(
        column_names=column_names,
        gamma=gamma,
        coefficients=np.asarray(payload["coefficients"], dtype=float),
        std_errors=np.asarray(payload["std_errors"], dtype=float),
        t_values=np.asarray(payload["t_values"], dtype=float),
        p_values=np.asarray(payload["p_values"], dtype=float),
        gamma_std_error=gamma_se,
        gamma_t_value=gamma_t,
        gamma_p_value=t_p_value(abs(gamma_t), dof_residual),
        r_squared=float(payload["r_squared"]),
        f_statistic=float(payload["f_statistic"]),
        prob_f=float(payload["prob_f"]),
        n_samples=int(payload["n_samples"]),
        dof_residual=dof_residual,
        rank=int(payload["rank"]),
    )
    demand_hist = AngularHistogram(spec.bins, payload["demand_hist"])
    network_hist = AngularHistogram(spec.bins, payload["network_hist"])
    return fit, spec, demand_hist, network_hist
