"""Spherical-earth geodesy and velocity estimation for AIS position streams.

All distances are computed with the haversine formula on a sphere of radius
6,371,000 m.  Speeds are expressed in knots, headings in compass degrees
(0 = north, 90 = east, normalized to [0, 360)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

EARTH_RADIUS_M = 6_371_000.0

#: Metres per second in one knot.
KNOT_MS = 0.514444


class PositionedSample(Protocol):
    """Anything carrying a timestamped lon/lat position."""

    timestamp: int
    lon: float
    lat: float


@dataclass(frozen=True, slots=True)
class Velocity:
    """A speed/heading pair describing motion along one or more segments."""

    speed_knots: float
    heading_deg: float


def haversine_m(lon1: float, lat1: float, lon2: float, lat2: float) -> float:
    """Great-circle distance in metres between two lon/lat points.

    Args:
        lon1, lat1: first point in decimal degrees.
        lon2, lat2: second point in decimal degrees.

    Returns:
        Distance in metres along the sphere surface.
    """
    phi1 = math.radians(lat1)
    phi2 = math.radians(lat2)
    dphi = math.radians(lat2 - lat1)
    dlam = math.radians(lon2 - lon1)
    a = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_M * math.atan2(math.sqrt(a), math.sqrt(1.0 - a))


def haversine_m_vec(
    lon1: np.ndarray, lat1: np.ndarray, lon2: np.ndarray, lat2: np.ndarray
) -> np.ndarray:
    """Vectorized :func:`haversine_m` over numpy arrays of coordinates."""
    phi1 = np.radians(lat1)
    phi2 = np.radians(lat2)
    dphi = np.radians(lat2 - lat1)
    dlam = np.radians(lon2 - lon1)
    a = np.sin(dphi / 2.0) ** 2 + np.cos(phi1) * np.cos(phi2) * np.sin(dlam / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_M * np.arctan2(np.sqrt(a), np.sqrt(1.0 - a))


def bearing_deg(lon1: float, lat1: float, lon2: float, lat2: float) -> float:
    """Initial great-circle bearing from the first point to the second.

    Returns compass degrees in [0, 360): 0 points north, 90 east.  The value
    is undefined for coincident points and callers must guard that case.
    """
    phi1 = math.radians(lat1)
    phi2 = math.radians(lat2)
    dlam = math.radians(lon2 - lon1)
    y = math.sin(dlam) * math.cos(phi2)
    x = math.cos(phi1) * math.sin(phi2) - math.sin(phi1) * math.cos(phi2) * math.cos(dlam)
    return math.degrees(math.atan2(y, x)) % 360.0


def heading_difference_deg(a: float, b: float) -> float:
    """Signed circular difference a - b mapped into (-180, 180]."""
    d = (a - b + 180.0) % 360.0 - 180.0
    if d == -180.0:
        return 180.0
    return d


def segment_velocity(a: PositionedSample, b: PositionedSample) -> Velocity:
    """Instantaneous velocity implied by two consecutive reports.

    Speed is the haversine distance over the elapsed time, converted to
    knots.  For coincident positions the speed is 0 and the heading is
    reported as 0.0; consumers that need a heading must treat a zero-speed
    velocity as directionless.

    Raises:
        ValueError: if ``b`` does not strictly follow ``a`` in time.
    """
    dt = b.timestamp - a.timestamp
    if dt <= 0:
        raise ValueError(f"non-increasing timestamps: {a.timestamp} -> {b.timestamp}")
    dist_m = haversine_m(a.lon, a.lat, b.lon, b.lat)
    if dist_m == 0.0:
        return Velocity(0.0, 0.0)
    speed_knots = dist_m / dt / KNOT_MS
    return Velocity(speed_knots, bearing_deg(a.lon, a.lat, b.lon, b.lat))


def velocity_components(v: Velocity) -> tuple[float, float]:
    """Decompose a velocity into (east, north) speed components in knots."""
    h = math.radians(v.heading_deg)
    return v.speed_knots * math.sin(h), v.speed_knots * math.cos(h)


def mean_velocity(
    points: Sequence[PositionedSample], timespan_s: float, now_ts: int
) -> Velocity | None:
    """Mean velocity over the recent portion of a point buffer.

    Points older than ``now_ts - timespan_s`` are discarded; the velocities of
    the segments joining the surviving consecutive points are averaged as 2-D
    vectors, so opposing headings cancel rather than average arithmetically.

    Returns:
        The vector-mean velocity, or ``None`` when fewer than two points
        survive the time window (no segment to average).
    """
    cutoff = now_ts - timespan_s
    recent = [p for p in points if p.timestamp >= cutoff]
    if len(recent) < 2:
        return None
    east = 0.0
    north = 0.0
    n_segments = len(recent) - 1
    for prev, cur in zip(recent, recent[1:]):
        e, n = velocity_components(segment_velocity(prev, cur))
        east += e
        north += n
    east /= n_segments
    north /= n_segments
    speed = math.hypot(east, north)
    heading = math.degrees(math.atan2(east, north)) % 360.0 if speed > 0.0 else 0.0
    return Velocity(speed, heading)


def interpolate(p1: PositionedSample, p2: PositionedSample, tau: int | float) -> tuple[float, float]:
    """Time-linear lon/lat position between two retained points.

    Interpolation is planar in coordinate space (no great-circle blending),
    matching how downstream consumers reconstruct a compressed track.  The
    endpoints are returned exactly when ``tau`` coincides with them.

    Raises:
        ValueError: if the two points share a timestamp or ``tau`` lies
            outside ``[p1.timestamp, p2.timestamp]``.
    """
    t1, t2 = p1.timestamp, p2.timestamp
    if t2 <= t1:
        raise ValueError(f"interpolation pair must be time-ordered: {t1} >= {t2}")
    if tau < t1 or tau > t2:
        raise ValueError(f"tau {tau} outside segment [{t1}, {t2}]")
    if tau == t1:
        return p1.lon, p1.lat
    if tau == t2:
        return p2.lon, p2.lat
    f = (tau - t1) / (t2 - t1)
    return p1.lon + f * (p2.lon - p1.lon), p1.lat + f * (p2.lat - p1.lat)
