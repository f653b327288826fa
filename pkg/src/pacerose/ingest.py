"""Trip-log and road-network ingestion plus derived per-record quantities.

File formats (UTF-8, comma separated, '.' decimal, blank lines and
'#'-prefixed lines ignored):

* trips:   header ``origin_x,origin_y,dest_x,dest_y,duration_s,distance_km``
           (planar meters) or, for lon/lat input in degrees,
           ``origin_lon,origin_lat,dest_lon,dest_lat,duration_s,distance_km``
* network: header ``ax,ay,bx,by,class[,length_m]``; class is one of
           motorway, trunk, primary, secondary, other (case-insensitive)

Rows with non-positive duration or distance are skipped with a row-numbered
warning; rows that do not parse at all raise InputFormatError.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass

from .angles import (
    AngularHistogram,
    bin_index,
    build_histogram,
    compass_to_math,
    wrap_angle,
)
from .errors import (
    DegenerateTripError,
    InputFormatError,
    InsufficientDataError,
    ZeroLengthSegmentError,
)

log = logging.getLogger(__name__)

ROAD_CLASSES = ("motorway", "trunk", "primary", "secondary", "other")

TRIP_HEADER_PLANAR = ("origin_x", "origin_y", "dest_x", "dest_y",
                      "duration_s", "distance_km")
TRIP_HEADER_LONLAT = ("origin_lon", "origin_lat", "dest_lon", "dest_lat",
                      "duration_s", "distance_km")
NETWORK_HEADER = ("ax", "ay", "bx", "by", "class")

EARTH_RADIUS_M = 6371000.0

__all__ = [
    "ROAD_CLASSES",
    "FilterPolicy",
    "RoadSegment",
    "TripRecord",
    "network_orientation_histogram",
    "pace",
    "parse_network",
    "parse_trips",
    "percentile_filter",
    "segment_orientations",
    "trip_direction",
]


@dataclass(frozen=True)
class TripRecord:
    """One trip: endpoints, duration in seconds, distance in kilometers."""

    origin_x: float
    origin_y: float
    dest_x: float
    dest_y: float
    duration_s: float
    distance_km: float
    lonlat: bool = False

    def __post_init__(self):
        for name in ("origin_x", "origin_y", "dest_x", "dest_y",
                     "duration_s", "distance_km"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.duration_s <= 0.0:
            raise ValueError("duration_s must be positive")
        if self.distance_km <= 0.0:
            raise ValueError("distance_km must be positive")


@dataclass(frozen=True)
class RoadSegment:
    """One network edge with its class label and length in meters."""

    ax: float
    ay: float
    bx: float
    by: float
    road_class: str
    length_m: float
    lonlat: bool = False

    def __post_init__(self):
        for name in ("ax", "ay", "bx", "by", "length_m"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.road_class not in ROAD_CLASSES:
            raise ValueError(f"unknown road class {self.road_class!r}")
        if self.length_m < 0.0:
            raise ValueError("length_m must be nonnegative")

    @property
    def zero_length(self) -> bool:
        return self.ax == self.bx and self.ay == self.by


@dataclass(frozen=True)
class FilterPolicy:
    """Fractions of the pace distribution to drop at either end."""

    lower_fraction: float = 0.05
    upper_fraction: float = 0.10

    def __post_init__(self):
        for name in ("lower_fraction", "upper_fraction"):
            v = getattr(self, name)
            if not 0.0 <= v < 1.0:
                raise ValueError(f"{name} must be in [0, 1)")
        if self.lower_fraction + self.upper_fraction >= 1.0:
            raise ValueError("lower and upper fractions must sum below 1")


def _content_rows(source):
    """Yield (line_number, fields) for non-blank, non-comment lines."""
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = next(csv.reader([line]))
        yield lineno, [f.strip() for f in fields]


def _parse_float(value: str, lineno: int, name: str) -> float:
    try:
        x = float(value)
    except ValueError:
        raise InputFormatError(
            f"row {lineno}: field '{name}' is not a number: {value!r}"
        ) from None
    if not math.isfinite(x):
        raise InputFormatError(
            f"row {lineno}: field '{name}' must be finite, got {value!r}"
        )
    return x


def parse_trips(source, lonlat: bool = False) -> list:
    """Parse a trip CSV into TripRecords.

    ``source`` is any iterable of lines (an open file works). Rows with
    non-positive duration or distance are skipped with a warning naming the
    row; anything else malformed raises InputFormatError.
    """
    expected = TRIP_HEADER_LONLAT if lonlat else TRIP_HEADER_PLANAR
    trips = []
    header_seen = False
    for lineno, fields in _content_rows(source):
        if not header_seen:
            got = tuple(f.lower() for f in fields)
            if got != expected:
                raise InputFormatError(
                    f"row {lineno}: expected header {','.join(expected)}, "
                    f"got {','.join(fields)}"
                )
            header_seen = True
            continue
        if len(fields) != 6:
            raise InputFormatError(
                f"row {lineno}: expected 6 fields, got {len(fields)}"
            )
        values = [
            _parse_float(field, lineno, name)
            for field, name in zip(fields, expected)
        ]
        duration, distance = values[4], values[5]
        if duration <= 0.0:
            log.warning("row %d: non-positive duration_s (%s); trip skipped",
                        lineno, fields[4])
            continue
        if distance <= 0.0:
            log.warning("row %d: non-positive distance_km (%s); trip skipped",
                        lineno, fields[5])
            continue
        trips.append(TripRecord(*values, lonlat=lonlat))
    if not header_seen:
        raise InputFormatError("trip file has no header row")
    return trips


def parse_network(source, class_filter=None, lonlat: bool = False) -> list:
    """Parse a network edge CSV into RoadSegments.

    Only segments whose class is in ``class_filter`` (default: all classes)
    are returned. Length comes from the optional ``length_m`` column and is
    otherwise computed from the endpoints. Zero-length segments are kept,
    flagged via ``RoadSegment.zero_length``; orientation code skips them.
    """
    if class_filter is None:
        class_filter = set(ROAD_CLASSES)
    else:
        class_filter = {c.lower() for c in class_filter}
        unknown = class_filter - set(ROAD_CLASSES)
        if unknown:
            raise ValueError(f"unknown road classes in filter: {sorted(unknown)}")
    segments = []
    header_seen = False
    has_length_col = False
    for lineno, fields in _content_rows(source):
        if not header_seen:
            got = tuple(f.lower() for f in fields)
            if got == NETWORK_HEADER:
                has_length_col = False
            elif got == NETWORK_HEADER + ("length_m",):
                has_length_col = True
            else:
                raise InputFormatError(
                    f"row {lineno}: expected header ax,ay,bx,by,class[,length_m], "
                    f"got {','.join(fields)}"
                )
            header_seen = True
            continue
        expected_n = 6 if has_length_col else 5
        if len(fields) != expected_n:
            raise InputFormatError(
                f"row {lineno}: expected {expected_n} fields, got {len(fields)}"
            )
        ax = _parse_float(fields[0], lineno, "ax")
        ay = _parse_float(fields[1], lineno, "ay")
        bx = _parse_float(fields[2], lineno, "bx")
        by = _parse_float(fields[3], lineno, "by")
        road_class = fields[4].lower()
        if road_class not in ROAD_CLASSES:
            raise InputFormatError(
                f"row {lineno}: unknown road class {fields[4]!r}"
            )
        if has_length_col:
            length = _parse_float(fields[5], lineno, "length_m")
            if length < 0.0:
                raise InputFormatError(f"row {lineno}: negative length_m")
            if length == 0.0 and (ax, ay) != (bx, by):
                raise InputFormatError(
                    f"row {lineno}: zero length_m but distinct endpoints"
                )
        else:
            length = _segment_length(ax, ay, bx, by, lonlat)
        if road_class not in class_filter:
            continue
        segments.append(
            RoadSegment(ax, ay, bx, by, road_class, length, lonlat=lonlat)
        )
    if not header_seen:
        raise InputFormatError("network file has no header row")
    return segments


def _segment_length(ax, ay, bx, by, lonlat):
    if not lonlat:
        return math.hypot(bx - ax, by - ay)
    mean_lat = math.radians(0.5 * (ay + by))
    dx = math.radians(bx - ax) * math.cos(mean_lat) * EARTH_RADIUS_M
    dy = math.radians(by - ay) * EARTH_RADIUS_M
    return math.hypot(dx, dy)


def _bearing(dx: float, dy: float, compass: bool) -> float:
    raw = math.atan2(dy, dx)
    if compass:
        # raw is a compass bearing (0 = north, clockwise): convert
        return compass_to_math(raw)
    return wrap_angle(raw)


def trip_direction(trip: TripRecord, compass: bool = False) -> float:
    """Bearing of the straight line origin -> destination, in [0, 2*pi).

    Planar input uses atan2 directly; lon/lat input is projected with a
    local equirectangular scaling before the atan2. ``compass`` reinterprets
    the raw bearing as a compass bearing (0 = north, clockwise) and converts
    it to the math convention, for inputs whose axes are swapped that way.
    """
    dx = trip.dest_x - trip.origin_x
    dy = trip.dest_y - trip.origin_y
    if trip.lonlat:
        mean_lat = math.radians(0.5 * (trip.origin_y + trip.dest_y))
        dx = dx * math.cos(mean_lat)
    if dx == 0.0 and dy == 0.0:
        raise DegenerateTripError("degenerate trip: origin equals destination")
    return _bearing(dx, dy, compass)


def pace(trip: TripRecord) -> float:
    """Pace in seconds per kilometer: duration / distance."""
    if trip.distance_km <= 0.0:
        raise ValueError("pace needs a positive distance")
    return trip.duration_s / trip.distance_km


def percentile_filter(paces, policy: FilterPolicy) -> list:
    """Indices retained after dropping the extreme pace fractions.

    Sorts by pace ascending (ties broken by original index, so the cut is
    deterministic), drops the lowest floor(lower*N) and highest
    floor(upper*N) entries, and returns the retained original indices in
    ascending order.
    """
    n = len(paces)
    if n == 0:
        raise InsufficientDataError("no samples to filter")
    order = sorted(range(n), key=lambda i: (paces[i], i))
    n_low = math.floor(policy.lower_fraction * n)
    n_high = math.floor(policy.upper_fraction * n)
    kept = order[n_low:n - n_high]
    if not kept:
        raise InsufficientDataError("filter removed all samples")
    return sorted(kept)


def segment_orientations(segment: RoadSegment, compass: bool = False) -> tuple:
    """Both orientations {theta, theta + pi} of a segment, equal weight.

    Aggregating both directions makes the network histogram point symmetric
    by construction.
    """
    if segment.zero_length or segment.length_m == 0.0:
        raise ZeroLengthSegmentError("zero-length segment has no orientation")
    dx = segment.bx - segment.ax
    dy = segment.by - segment.ay
    if segment.lonlat:
        mean_lat = math.radians(0.5 * (segment.ay + segment.by))
        dx = dx * math.cos(mean_lat)
    theta = _bearing(dx, dy, compass)
    return theta, wrap_angle(theta + math.pi)


def network_orientation_histogram(
    segments,
    bins: int = 32,
    length_weighted: bool = False,
    compass: bool = False,
) -> AngularHistogram:
    """Histogram of road orientations, aggregated in both directions.

    Weights are segment counts by default, or lengths in meters with
    ``length_weighted``. Zero-length segments are skipped with a warning.
    For even bin counts each segment's two opposite orientations are placed
    exactly half a cycle apart, so the result is point symmetric to the
    last bit.
    """
    angles = []
    weights = []
    skipped = 0
    for seg in segments:
        try:
            theta, opposite = segment_orientations(seg, compass=compass)
        except ZeroLengthSegmentError:
            skipped += 1
            continue
        w = seg.length_m if length_weighted else 1.0
        angles.extend((theta, opposite))
        weights.extend((w, w))
    if skipped:
        log.warning("skipped %d zero-length segment(s)", skipped)
    if not angles:
        raise InsufficientDataError("no usable segments for the network histogram")
    if bins % 2 == 0:
        # bin the primary orientation once and mirror it, so point symmetry
        # holds exactly even when theta + pi falls on a bin boundary
        half = bins // 2
        values = [0.0] * bins
        for theta, w in zip(angles[0::2], weights[0::2]):
            j = bin_index(theta, bins)
            values[j] += w
            values[(j + half) % bins] += w
        total = sum(weights)
        return AngularHistogram(
            bins, [v / total for v in values], normalized=True
        )
    return build_histogram(angles, weights=weights, bin_count=bins)
