"""Fourier-weighted histogram features and the regression design matrix.

For a trip heading theta, the demand feature of harmonic k is the histogram
sum of cos/sin(k * offset), where offset is the signed angular difference
between each bin center and theta. Features therefore depend only on the
offsets, never on absolute direction: rotating the data and the histograms
together leaves every feature unchanged.

Column layout is fixed: demand columns a_c1, a_s1, ..., a_cK, a_sK, then
network columns in ascending harmonic, cos before sin. When the network
histogram is point symmetric, odd network harmonics vanish identically and
only even-k columns are emitted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .angles import TWO_PI, AngularHistogram
from .errors import InsufficientDataError, SpecMismatchError

POINT_SYMMETRY_TOL = 1e-9

__all__ = [
    "FeatureRow",
    "ModelSpec",
    "build_design_matrix",
    "demand_features",
    "feature_row",
    "network_features",
]


@dataclass(frozen=True)
class ModelSpec:
    """Shape of the regression: harmonic depth, bins, and symmetry handling."""

    k_max: int = 8
    bins: int = 32
    network_point_symmetric: bool = True
    include_intercept: bool = True

    def __post_init__(self):
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")
        if self.bins < 2:
            raise ValueError("bins must be >= 2")
        if self.network_point_symmetric and self.bins % 2 != 0:
            raise ValueError("point-symmetric network requires an even bin count")
        if not self.include_intercept:
            raise ValueError("the model always includes an intercept")

    @property
    def demand_harmonics(self) -> tuple:
        return tuple(range(1, self.k_max + 1))

    @property
    def network_harmonics(self) -> tuple:
        if self.network_point_symmetric:
            return tuple(k for k in range(2, self.k_max + 1, 2))
        return tuple(range(1, self.k_max + 1))

    @property
    def demand_column_names(self) -> tuple:
        return tuple(
            f"a_{part}{k}" for k in self.demand_harmonics for part in ("c", "s")
        )

    @property
    def network_column_names(self) -> tuple:
        return tuple(
            f"b_{part}{k}" for k in self.network_harmonics for part in ("c", "s")
        )

    @property
    def column_names(self) -> tuple:
        return self.demand_column_names + self.network_column_names

    @property
    def parameter_count(self) -> int:
        """Number of fitted parameters including the intercept."""
        return len(self.column_names) + 1


@dataclass(frozen=True)
class FeatureRow:
    """One regression row: target pace, regressors, and the trip direction."""

    target: float
    regressors: np.ndarray = field(repr=False)
    trip_direction: float = 0.0


def _signed_offsets(centers: np.ndarray, theta) -> np.ndarray:
    """Vectorized angular_difference(centers, theta), in [-pi, pi)."""
    d = np.fmod(centers - np.asarray(theta, dtype=float)[..., None], TWO_PI)
    d = np.where(d < -math.pi, d + TWO_PI, d)
    d = np.where(d >= math.pi, d - TWO_PI, d)
    return d


def _require_normalized(hist: AngularHistogram, what: str):
    if not hist.normalized:
        raise ValueError(f"{what} histogram must be normalized")


def _harmonic_sums(offsets: np.ndarray, values: np.ndarray, harmonics) -> np.ndarray:
    """Columns [hist . cos(k*offsets), hist . sin(k*offsets)] per harmonic."""
    cols = []
    for k in harmonics:
        arg = k * offsets
        cols.append(np.cos(arg) @ values)
        cols.append(np.sin(arg) @ values)
    return np.stack(cols, axis=-1)


def demand_features(theta: float, hist: AngularHistogram, k_max: int) -> np.ndarray:
    """Demand feature vector of length 2*k_max for one direction."""
    _require_normalized(hist, "demand")
    offsets = _signed_offsets(hist.bin_centers(), theta)
    return _harmonic_sums(offsets, hist.values, range(1, k_max + 1))


def network_features(
    theta: float,
    hist: AngularHistogram,
    k_max: int,
    point_symmetric: bool = True,
) -> np.ndarray:
    """Network feature vector for one direction.

    With ``point_symmetric`` the histogram is validated against
    value[i] == value[i + B/2] and only even harmonics are emitted (odd ones
    are identically zero for such histograms).
    """
    _require_normalized(hist, "network")
    if point_symmetric:
        _check_point_symmetry(hist)
        harmonics = range(2, k_max + 1, 2)
    else:
        harmonics = range(1, k_max + 1)
    offsets = _signed_offsets(hist.bin_centers(), theta)
    return _harmonic_sums(offsets, hist.values, harmonics)


def _check_point_symmetry(hist: AngularHistogram):
    if hist.bin_count % 2 != 0:
        raise SpecMismatchError(
            "point-symmetric network features need an even bin count"
        )
    half = hist.bin_count // 2
    defect = np.abs(hist.values - np.roll(hist.values, half))
    worst = int(np.argmax(defect))
    if defect[worst] > POINT_SYMMETRY_TOL:
        raise SpecMismatchError(
            "network histogram is not point symmetric: bins "
            f"{worst % half} and {worst % half + half} differ by "
            f"{defect[worst]:.3e}"
        )


def _design_block(thetas: np.ndarray, hist: AngularHistogram, harmonics) -> np.ndarray:
    offsets = _signed_offsets(hist.bin_centers(), thetas)
    return _harmonic_sums(offsets, hist.values, harmonics)


def build_design_matrix(
    paces,
    directions,
    demand_hist: AngularHistogram,
    network_hist: AngularHistogram,
    spec: ModelSpec,
):
    """Design matrix X (N x (p-1)) and target vector y for the regression.

    Row i concatenates the demand and network features of trip i's
    direction; y_i is its pace in seconds per kilometer. The intercept is
    appended later by the estimator.
    """
    y = np.asarray(paces, dtype=float)
    thetas = np.asarray(directions, dtype=float)
    if y.shape != thetas.shape or y.ndim != 1:
        raise ValueError("paces and directions must be 1-D and equally long")
    _require_normalized(demand_hist, "demand")
    _require_normalized(network_hist, "network")
    for hist, what in ((demand_hist, "demand"), (network_hist, "network")):
        if hist.bin_count != spec.bins:
            raise SpecMismatchError(
                f"{what} histogram has {hist.bin_count} bins, spec wants {spec.bins}"
            )
    if spec.network_point_symmetric:
        _check_point_symmetry(network_hist)
    n = y.size
    if n < spec.parameter_count:
        raise InsufficientDataError(
            f"underdetermined system: {n} trips for "
            f"{spec.parameter_count} parameters"
        )
    demand_block = _design_block(thetas, demand_hist, spec.demand_harmonics)
    network_block = _design_block(thetas, network_hist, spec.network_harmonics)
    return np.hstack([demand_block, network_block]), y.copy()


def feature_row(
    pace: float,
    theta: float,
    demand_hist: AngularHistogram,
    network_hist: AngularHistogram,
    spec: ModelSpec,
) -> FeatureRow:
    """Single regression row, mostly for diagnostics and debug dumps."""
    regressors = np.concatenate([
        demand_features(theta, demand_hist, spec.k_max),
        network_features(
            theta, network_hist, spec.k_max, spec.network_point_symmetric
        ),
    ])
    return FeatureRow(target=float(pace), regressors=regressors,
                      trip_direction=float(theta))
