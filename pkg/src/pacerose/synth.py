"""Synthetic trips with known ground truth for end-to-end testing.

A scenario fixes the model shape, the generating histograms, ground-truth
coefficients, trip count, noise level, and seed. Directions are drawn from
the demand histogram by inverse CDF with uniform jitter inside the chosen
bin; paces are the model signal plus Gaussian noise, clamped below at
1 s/km (the clamp count is reported so tests can insist on zero).

Ground-truth coefficients should be canonicalized first: demand and network
features sharing a harmonic are exactly collinear, so only the projection
of the coefficient vector onto the design's row space is recoverable by any
least-squares fit. ``identifiable_coefficients`` computes that projection;
scenarios built from it are recovered exactly by the minimum-norm fit on
noiseless data.

Randomness uses counter-based Philox streams split per purpose, so the same
seed reproduces the same trips regardless of how generation is batched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .angles import TWO_PI, AngularHistogram, bin_index, wrap_angle
from .errors import InputFormatError
from .features import ModelSpec, _design_block, build_design_matrix
from .ingest import TRIP_HEADER_PLANAR

PACE_FLOOR_S_PER_KM = 1.0

__all__ = [
    "PACE_FLOOR_S_PER_KM",
    "SyntheticScenario",
    "canonicalized",
    "generate_paces",
    "harmonic_histogram",
    "identifiable_coefficients",
    "make_rotated_grid_network",
    "sample_directions",
    "scenario_design",
    "scenario_from_dict",
    "scenario_manifest",
    "trip_csv_lines",
]


@dataclass(frozen=True)
class SyntheticScenario:
    """Ground truth for one synthetic dataset."""

    spec: ModelSpec
    gamma: float
    alpha: np.ndarray = field(repr=False)
    beta: np.ndarray = field(repr=False)
    demand_hist: AngularHistogram
    network_hist: AngularHistogram
    n_trips: int
    noise_std: float = 0.0
    seed: int = 0

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=float)
        beta = np.asarray(self.beta, dtype=float)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        if alpha.shape != (2 * self.spec.k_max,):
            raise ValueError("alpha must have 2*k_max entries")
        if beta.shape != (len(self.spec.network_column_names),):
            raise ValueError("beta length must match the network columns")
        for hist, what in ((self.demand_hist, "demand"),
                           (self.network_hist, "network")):
            if not hist.normalized or hist.bin_count != self.spec.bins:
                raise ValueError(f"{what} histogram must be normalized "
                                 f"with {self.spec.bins} bins")
        if self.spec.network_point_symmetric:
            if self.network_hist.point_symmetry_defect() > 1e-12:
                raise ValueError("network histogram must be point symmetric")
        if self.n_trips <= self.spec.parameter_count:
            raise ValueError("n_trips must exceed the parameter count")
        if self.noise_std < 0.0:
            raise ValueError("noise_std must be nonnegative")

    def coefficient_vector(self) -> np.ndarray:
        return np.concatenate([self.alpha, self.beta])


def _rng_streams(seed: int, n_streams: int):
    children = np.random.SeedSequence(seed).spawn(n_streams)
    return [np.random.Generator(np.random.Philox(c)) for c in children]


def harmonic_histogram(
    bins: int,
    cos_amplitudes,
    sin_amplitudes,
    point_symmetric: bool = False,
) -> AngularHistogram:
    """Histogram whose k-th trigonometric moments are amplitude/2.

    Bin j gets (1 + sum_k a_k cos(k c_j) + b_k sin(k c_j)) / B before
    normalization, which by discrete orthogonality plants the moments
    directly. Amplitudes must keep every bin positive. With
    ``point_symmetric`` the histogram is symmetrized exactly afterwards
    (only meaningful when odd amplitudes are zero).
    """
    cos_amplitudes = np.asarray(cos_amplitudes, dtype=float)
    sin_amplitudes = np.asarray(sin_amplitudes, dtype=float)
    if cos_amplitudes.shape != sin_amplitudes.shape:
        raise ValueError("amplitude vectors must have equal length")
    centers = (np.arange(bins) + 0.5) * (TWO_PI / bins)
    values = np.ones(bins)
    for k0, (a, b) in enumerate(zip(cos_amplitudes, sin_amplitudes)):
        k = k0 + 1
        values += a * np.cos(k * centers) + b * np.sin(k * centers)
    if np.any(values <= 0.0):
        raise ValueError("amplitudes too large: histogram would go nonpositive")
    if point_symmetric:
        if bins % 2 != 0:
            raise ValueError("point symmetry requires an even bin count")
        odd = [k0 + 1 for k0 in range(cos_amplitudes.size)
               if (k0 + 1) % 2 == 1
               and (cos_amplitudes[k0] != 0.0 or sin_amplitudes[k0] != 0.0)]
        if odd:
            raise ValueError(f"point symmetry forbids odd harmonics {odd}")
        values = 0.5 * (values + np.roll(values, bins // 2))
    values = values / values.sum()
    return AngularHistogram(bins, values, normalized=True)


def make_rotated_grid_network(rotation: float, bins: int) -> AngularHistogram:
    """Four-peak point-symmetric histogram mimicking a rotated grid network.

    Mass 0.25 lands in the bins containing rotation, rotation + pi/2, and
    their opposites. Exactly point symmetric by construction.
    """
    if bins % 2 != 0:
        raise ValueError("grid network histogram requires an even bin count")
    half = bins // 2
    values = np.zeros(bins)
    for base in (rotation, rotation + 0.5 * math.pi):
        j = bin_index(wrap_angle(base), bins)
        values[j] += 0.25
        values[(j + half) % bins] += 0.25
    return AngularHistogram(bins, values, normalized=True)


def scenario_design(scenario: SyntheticScenario, directions) -> np.ndarray:
    """Design matrix of the scenario's model at the given directions.

    Unlike build_design_matrix this accepts any number of directions; it is
    for evaluating the generating model, not for fitting.
    """
    thetas = np.asarray(directions, dtype=float)
    return np.hstack([
        _design_block(thetas, scenario.demand_hist,
                      scenario.spec.demand_harmonics),
        _design_block(thetas, scenario.network_hist,
                      scenario.spec.network_harmonics),
    ])


def identifiable_coefficients(
    spec: ModelSpec,
    demand_hist: AngularHistogram,
    network_hist: AngularHistogram,
    gamma: float,
    alpha,
    beta,
    grid_size: int = 512,
    rcond: float = 1e-10,
):
    """Project (gamma, alpha, beta) onto the recoverable coefficient subspace.

    The projection uses a dense direction grid, whose design row space
    equals that of any direction sample rich enough to span the model's
    harmonic function space. The intercept direction is orthogonal to the
    feature columns on a full uniform grid, so gamma passes through
    unchanged up to rounding.
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    thetas = (np.arange(grid_size) + 0.5) * (TWO_PI / grid_size)
    X, _ = build_design_matrix(
        np.ones(grid_size), thetas, demand_hist, network_hist, spec
    )
    A = np.column_stack([np.ones(grid_size), X])
    _, s, vt = np.linalg.svd(A, full_matrices=False)
    rank = int(np.sum(s > rcond * s[0]))
    basis = vt[:rank]
    full = np.concatenate([[gamma], alpha, beta])
    projected = basis.T @ (basis @ full)
    n_alpha = alpha.size
    return (
        float(projected[0]),
        projected[1:1 + n_alpha],
        projected[1 + n_alpha:],
    )


def canonicalized(scenario: SyntheticScenario) -> SyntheticScenario:
    """Scenario with coefficients replaced by their identifiable projection."""
    gamma, alpha, beta = identifiable_coefficients(
        scenario.spec,
        scenario.demand_hist,
        scenario.network_hist,
        scenario.gamma,
        scenario.alpha,
        scenario.beta,
    )
    return replace(scenario, gamma=gamma, alpha=alpha, beta=beta)


def sample_directions(scenario: SyntheticScenario) -> np.ndarray:
    """Trip directions drawn from the scenario's demand histogram."""
    rng, _ = _rng_streams(scenario.seed, 2)
    n = scenario.n_trips
    hist = scenario.demand_hist
    cdf = np.cumsum(hist.values)
    cdf[-1] = 1.0
    u = rng.random(n)
    bins = np.searchsorted(cdf, u, side="right")
    jitter = rng.random(n)
    return (bins + jitter) * hist.bin_width


def generate_paces(directions, scenario: SyntheticScenario):
    """Paces for the given directions: signal + seeded Gaussian noise.

    Returns (paces, n_clamped); paces below the 1 s/km floor are clamped
    and counted.
    """
    directions = np.asarray(directions, dtype=float)
    if directions.size == 0:
        raise ValueError("directions must be nonempty")
    X = scenario_design(scenario, directions)
    signal = scenario.gamma + X @ scenario.coefficient_vector()
    if scenario.noise_std > 0.0:
        _, noise_rng = _rng_streams(scenario.seed, 2)
        signal = signal + noise_rng.normal(0.0, scenario.noise_std,
                                           directions.size)
    clamped = signal < PACE_FLOOR_S_PER_KM
    n_clamped = int(clamped.sum())
    paces = np.where(clamped, PACE_FLOOR_S_PER_KM, signal)
    return paces, n_clamped


def trip_csv_lines(directions, paces):
    """Trip CSV lines in the ingest format, full float precision.

    Every synthetic trip starts at the origin and covers exactly 1 km, so
    the written duration equals the pace and the re-ingested bearing equals
    the direction to the last bit that atan2 allows.
    """
    yield ",".join(TRIP_HEADER_PLANAR)
    for theta, p in zip(directions, paces):
        dx = 1000.0 * math.cos(theta)
        dy = 1000.0 * math.sin(theta)
        yield f"0,0,{dx!r},{dy!r},{float(p)!r},1.0"


def scenario_manifest(scenario: SyntheticScenario, n_clamped: int) -> dict:
    """JSON-ready record of the scenario's shape, seed, and ground truth."""
    return {
        "format": "pacerose-scenario-manifest/1",
        "k_max": scenario.spec.k_max,
        "bins": scenario.spec.bins,
        "point_symmetric": scenario.spec.network_point_symmetric,
        "gamma": scenario.gamma,
        "alpha": [float(v) for v in scenario.alpha],
        "beta": [float(v) for v in scenario.beta],
        "alpha_columns": list(scenario.spec.demand_column_names),
        "beta_columns": list(scenario.spec.network_column_names),
        "demand_hist": [float(v) for v in scenario.demand_hist.values],
        "network_hist": [float(v) for v in scenario.network_hist.values],
        "n_trips": scenario.n_trips,
        "noise_std": scenario.noise_std,
        "seed": scenario.seed,
        "n_clamped": n_clamped,
    }


def _histogram_from_spec(entry, bins: int, point_symmetric: bool):
    if isinstance(entry, (list, tuple)):
        entry = {"kind": "values", "values": list(entry)}
    if not isinstance(entry, dict) or "kind" not in entry:
        raise InputFormatError("histogram spec must be a list or a kind object")
    kind = entry["kind"]
    if kind == "values":
        values = np.asarray(entry["values"], dtype=float)
        total = values.sum()
        if total <= 0.0:
            raise InputFormatError("histogram values must have positive total")
        return AngularHistogram(bins, values / total, normalized=True)
    if kind == "uniform":
        return AngularHistogram(bins, np.full(bins, 1.0 / bins))
    if kind == "harmonic":
        return harmonic_histogram(
            bins,
            entry.get("cos", []),
            entry.get("sin", []),
            point_symmetric=point_symmetric,
        )
    if kind == "rotated_grid":
        return make_rotated_grid_network(
            float(entry.get("rotation_rad", 0.0)), bins
        )
    raise InputFormatError(f"unknown histogram kind {kind!r}")


def scenario_from_dict(payload: dict) -> SyntheticScenario:
    """Build a scenario from a parsed scenario JSON object.

    Unless ``canonicalize_coefficients`` is set false, the supplied
    coefficients are projected onto the identifiable subspace; the manifest
    then records the projected ground truth.
    """
    try:
        spec = ModelSpec(
            k_max=int(payload.get("k_max", 8)),
            bins=int(payload.get("bins", 32)),
            network_point_symmetric=bool(payload.get("point_symmetric", True)),
        )
        scenario = SyntheticScenario(
            spec=spec,
            gamma=float(payload["gamma"]),
            alpha=np.asarray(payload["alpha"], dtype=float),
            beta=np.asarray(payload["beta"], dtype=float),
            demand_hist=_histogram_from_spec(
                payload["demand_hist"], spec.bins, point_symmetric=False
            ),
            network_hist=_histogram_from_spec(
                payload["network_hist"], spec.bins,
                point_symmetric=spec.network_point_symmetric,
            ),
            n_trips=int(payload["n_trips"]),
            noise_std=float(payload.get("noise_std", 0.0)),
            seed=int(payload.get("seed", 0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"invalid scenario: {exc}") from exc
    if payload.get("canonicalize_coefficients", True):
        scenario = canonicalized(scenario)
    return scenario
