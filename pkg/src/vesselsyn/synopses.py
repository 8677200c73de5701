"""Online compression of vessel tracks into annotated critical points.

The engine consumes one clean position report at a time and decides, in a
single pass, whether the report (or its predecessor) marks a mobility event
worth keeping: a communication gap, a stop, slow motion, a change in heading
or a significant speed change.  Everything else is discarded.  The retained
points, called critical points, carry one or more annotations naming the
events they witness; together they form a synopsis from which the original
track can be approximately reconstructed by linear interpolation.

Detection relies on two velocity estimates: ``v_now``, the instantaneous
velocity implied by the latest pair of reports, and ``v_mean``, the vector
mean over a short buffer of recent reports.  The buffer holds at most
``buffer_size`` points and ignores anything older than
``historical_timespan_s`` seconds, so the reference motion adapts to the
vessel while staying robust to single-report noise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, fields
from typing import Iterable, Sequence, TextIO

from .geo import (
    Velocity,
    haversine_m,
    heading_difference_deg,
    segment_velocity,
    velocity_components,
)
from .ingest import AisRecord, VesselTrack

__all__ = [
    "Annotation",
    "SynopsisConfig",
    "CriticalPoint",
    "VesselState",
    "speed_change_exceeds",
    "ingest_point",
    "finalize_track",
    "compress_track",
    "write_synopsis_csv",
]

#: Below this mean speed (knots) a heading is considered undefined and the
#: turn rule stays quiet rather than comparing against directionless noise.
_MIN_HEADING_SPEED_KN = 1e-9


class Annotation(str, enum.Enum):
    """Event labels a critical point can carry (serialized verbatim)."""

    STOP_START = "stopStart"
    STOP_END = "stopEnd"
    SLOW_MOTION_START = "slowMotionStart"
    SLOW_MOTION_END = "slowMotionEnd"
    CHANGE_IN_HEADING = "changeInHeading"
    SPEED_CHANGE_START = "speedChangeStart"
    SPEED_CHANGE_END = "speedChangeEnd"
    GAP_START = "gapStart"
    GAP_END = "gapEnd"
    TRACK_START = "trackStart"
    TRACK_END = "trackEnd"

    def __str__(self) -> str:  # so "|".join(...) uses the wire label
        return self.value


@dataclass(frozen=True)
class SynopsisConfig:
    """The eight tunable detection parameters.

    Attributes:
        angle_threshold_deg: smallest heading deviation of ``v_now`` from the
            buffered mean heading that marks a change in heading.
        buffer_size: number of recent points kept for the mean velocity.
        gap_period_s: silence longer than this opens a communication gap.
        historical_timespan_s: buffered points older than this are ignored
            when estimating the mean velocity.
        no_speed_threshold_kn: speeds below this count as not moving (stop).
        low_speed_threshold_kn: speeds below this (but at or above the stop
            threshold) count as slow motion.
        speed_ratio: relative deviation of ``v_now`` from the mean speed that
            marks a speed change.
        distance_threshold_m: displacement from the stop anchor under which
            reports are absorbed as jitter.

    Note that a tuned configuration may legitimately place
    ``low_speed_threshold_kn`` at or below ``no_speed_threshold_kn``, which
    simply disables slow-motion detection.
    """

    angle_threshold_deg: float = 4.0
    buffer_size: int = 5
    gap_period_s: float = 1800.0
    historical_timespan_s: float = 3600.0
    no_speed_threshold_kn: float = 0.5
    low_speed_threshold_kn: float = 5.0
    speed_ratio: float = 0.25
    distance_threshold_m: float = 50.0

    def validate(self) -> None:
        """Reject configurations the engine cannot run with."""
        for f in fields(self):
            value = getattr(self, f.name)
            if not value > 0:
                raise ValueError(f"{f.name} must be positive, got {value!r}")
        if int(self.buffer_size) != self.buffer_size or self.buffer_size < 2:
            raise ValueError(f"buffer_size must be an integer >= 2, got {self.buffer_size!r}")

    def to_dict(self) -> dict[str, float | int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: dict[str, float | int]) -> "SynopsisConfig":
        """Build a config from a flat mapping, rejecting unknown keys.

        Missing keys keep their defaults; unknown keys raise so that a typoed
        parameter name cannot silently fall back to the default.
        """
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}; expected a subset of {sorted(known)}")
        kwargs: dict[str, float | int] = {}
        for key, value in data.items():
            kwargs[key] = int(value) if key == "buffer_size" else float(value)
        cfg = cls(**kwargs)
        cfg.validate()
        return cfg


@dataclass
class CriticalPoint:
    """A retained report plus the event annotations that justified keeping it."""

    mmsi: int
    timestamp: int
    lon: float
    lat: float
    annotations: set[Annotation]

    @classmethod
    def from_record(cls, rec: AisRecord, annotations: Iterable[Annotation]) -> "CriticalPoint":
        return cls(rec.mmsi, rec.timestamp, rec.lon, rec.lat, set(annotations))


@dataclass(slots=True)
class _BufferEntry:
    """A buffered report plus the cached velocity of the segment reaching it.

    ``east``/``north`` are the knot components of the velocity from the
    previous buffer entry; they are meaningless for the first entry and are
    never read there.
    """

    record: AisRecord
    east: float = 0.0
    north: float = 0.0


@dataclass
class VesselState:
    """Mutable per-vessel detector state threaded between ingest calls."""

    buffer: list[_BufferEntry] = field(default_factory=list)
    last_point: AisRecord | None = None
    last_emitted: CriticalPoint | None = None
    in_stop: bool = False
    stop_anchor: AisRecord | None = None
    in_slow_motion: bool = False
    in_speed_change: bool = False


def speed_change_exceeds(v_now_knots: float, v_mean_knots: float, ratio: float) -> bool:
    """Whether the instantaneous speed deviates too much from the mean speed.

    The deviation is relative to the instantaneous speed:
    ``|(v_now - v_mean) / v_now| > ratio``.  A zero ``v_now`` never triggers;
    motionless intervals are the stop rule's business.
    """
    if v_now_knots == 0.0:
        return False
    return abs((v_now_knots - v_mean_knots) / v_now_knots) > ratio


def _buffer_push(state: VesselState, rec: AisRecord, cap: int) -> None:
    if state.buffer:
        east, north = velocity_components(segment_velocity(state.buffer[-1].record, rec))
        state.buffer.append(_BufferEntry(rec, east, north))
    else:
        state.buffer.append(_BufferEntry(rec))
    while len(state.buffer) > cap:
        state.buffer.pop(0)


def _buffer_mean_velocity(state: VesselState, timespan_s: float, now_ts: int) -> Velocity | None:
    """Mean velocity over the buffered points still inside the time window.

    Equivalent to calling :func:`vesselsyn.geo.mean_velocity` on the buffered
    records, but reuses the velocity components cached at push time.
    """
    cutoff = now_ts - timespan_s
    start = 0
    while start < len(state.buffer) and state.buffer[start].record.timestamp < cutoff:
        start += 1
    survivors = len(state.buffer) - start
    if survivors < 2:
        return None
    east = 0.0
    north = 0.0
    for entry in state.buffer[start + 1 :]:
        east += entry.east
        north += entry.north
    n_segments = survivors - 1
    east /= n_segments
    north /= n_segments
    speed = math.hypot(east, north)
    heading = math.degrees(math.atan2(east, north)) % 360.0 if speed > 0.0 else 0.0
    return Velocity(speed, heading)


def ingest_point(state: VesselState, point: AisRecord, cfg: SynopsisConfig) -> list[CriticalPoint]:
    """Feed one clean report through the detector, mutating ``state``.

    Returns the critical points this report gives rise to, oldest first.  An
    emission may reference the *previous* report (several events are only
    recognizable one report late), and a location that was already emitted
    can reappear carrying additional annotations; consumers that build a
    synopsis merge annotation sets per timestamp, which is exactly what
    :func:`compress_track` does.

    Raises:
        ValueError: if ``point`` does not advance the clock.
    """
    # Annotations gathered this call, keyed by which report they attach to.
    prev_ann: set[Annotation] = set()
    cur_ann: set[Annotation] = set()

    if state.last_point is None:
        cur_ann.add(Annotation.TRACK_START)
        _buffer_push(state, point, cfg.buffer_size)
        state.last_point = point
        emitted = [CriticalPoint.from_record(point, cur_ann)]
        state.last_emitted = emitted[-1]
        return emitted

    prev = state.last_point
    if point.timestamp <= prev.timestamp:
        raise ValueError(
            f"timestamps must increase within a track: {prev.timestamp} -> {point.timestamp}"
        )

    # Rule 1: communication gap.  A gap invalidates the buffered history and
    # closes any interval left open, because whatever happened during the
    # silence is unknown.
    if point.timestamp - prev.timestamp > cfg.gap_period_s:
        prev_ann.add(Annotation.GAP_START)
        if state.in_stop:
            prev_ann.add(Annotation.STOP_END)
            state.in_stop = False
            state.stop_anchor = None
        if state.in_slow_motion:
            prev_ann.add(Annotation.SLOW_MOTION_END)
            state.in_slow_motion = False
        if state.in_speed_change:
            prev_ann.add(Annotation.SPEED_CHANGE_END)
            state.in_speed_change = False
        cur_ann.add(Annotation.GAP_END)
        state.buffer.clear()
        _buffer_push(state, point, cfg.buffer_size)
        state.last_point = point
        return _package(state, prev, prev_ann, point, cur_ann)

    v_now = segment_velocity(prev, point)
    v_mean = _buffer_mean_velocity(state, cfg.historical_timespan_s, point.timestamp)

    # Rule 2: stop.  While anchored, sub-threshold jitter is absorbed whole:
    # the report is neither emitted nor buffered, and no further rule sees it.
    if state.in_stop:
        anchor = state.stop_anchor
        assert anchor is not None
        displaced = haversine_m(anchor.lon, anchor.lat, point.lon, point.lat) >= cfg.distance_threshold_m
        if displaced or v_now.speed_knots >= cfg.no_speed_threshold_kn:
            prev_ann.add(Annotation.STOP_END)
            state.in_stop = False
            state.stop_anchor = None
        else:
            state.last_point = point
            return _package(state, prev, prev_ann, point, cur_ann)

    anchored_here = False
    if not state.in_stop and v_now.speed_knots < cfg.no_speed_threshold_kn:
        cur_ann.add(Annotation.STOP_START)
        state.in_stop = True
        state.stop_anchor = point
        anchored_here = True

    # Rules 3 to 5 are suppressed at the point that anchors a stop: around an
    # anchor, v_now's heading and speed are jitter, not motion.
    turn_fired = False
    if not anchored_here:
        # Rule 3: slow motion.
        if (
            not state.in_slow_motion
            and cfg.no_speed_threshold_kn <= v_now.speed_knots < cfg.low_speed_threshold_kn
        ):
            cur_ann.add(Annotation.SLOW_MOTION_START)
            state.in_slow_motion = True
        elif state.in_slow_motion and v_now.speed_knots >= cfg.low_speed_threshold_kn:
            prev_ann.add(Annotation.SLOW_MOTION_END)
            state.in_slow_motion = False

        # Rule 4: change in heading.  The deviation became visible with the
        # segment ending at `point`, so the vertex is the previous report.
        if (
            v_mean is not None
            and v_mean.speed_knots > _MIN_HEADING_SPEED_KN
            and v_now.speed_knots > _MIN_HEADING_SPEED_KN
            and abs(heading_difference_deg(v_now.heading_deg, v_mean.heading_deg))
            > cfg.angle_threshold_deg
        ):
            prev_ann.add(Annotation.CHANGE_IN_HEADING)
            turn_fired = True

        # Rule 5: speed change.
        if v_mean is not None and v_now.speed_knots > 0.0:
            exceeds = speed_change_exceeds(v_now.speed_knots, v_mean.speed_knots, cfg.speed_ratio)
            if exceeds and not state.in_speed_change:
                cur_ann.add(Annotation.SPEED_CHANGE_START)
                state.in_speed_change = True
            elif not exceeds and state.in_speed_change:
                cur_ann.add(Annotation.SPEED_CHANGE_END)
                state.in_speed_change = False

    if turn_fired:
        # Re-reference the mean velocity at the turn: the retained vertex
        # starts a new course, and keeping pre-turn segments in the buffer
        # would re-detect the same turn for the next buffer_size reports.
        state.buffer.clear()
        state.buffer.append(_BufferEntry(prev))

    _buffer_push(state, point, cfg.buffer_size)
    state.last_point = point
    return _package(state, prev, prev_ann, point, cur_ann)


def _package(
    state: VesselState,
    prev: AisRecord,
    prev_ann: set[Annotation],
    cur: AisRecord,
    cur_ann: set[Annotation],
) -> list[CriticalPoint]:
    emitted: list[CriticalPoint] = []
    if prev_ann:
        emitted.append(CriticalPoint.from_record(prev, prev_ann))
    if cur_ann:
        emitted.append(CriticalPoint.from_record(cur, cur_ann))
    if emitted:
        state.last_emitted = emitted[-1]
    return emitted


def finalize_track(state: VesselState) -> list[CriticalPoint]:
    """Close the stream: mark the last report and end any open interval."""
    if state.last_point is None:
        return []
    annotations = {Annotation.TRACK_END}
    if state.in_stop:
        annotations.add(Annotation.STOP_END)
        state.in_stop = False
        state.stop_anchor = None
    if state.in_slow_motion:
        annotations.add(Annotation.SLOW_MOTION_END)
        state.in_slow_motion = False
    if state.in_speed_change:
        annotations.add(Annotation.SPEED_CHANGE_END)
        state.in_speed_change = False
    emitted = [CriticalPoint.from_record(state.last_point, annotations)]
    state.last_emitted = emitted[-1]
    return emitted


def compress_track(track: VesselTrack, cfg: SynopsisConfig) -> list[CriticalPoint]:
    """Compress a clean track into its synopsis of critical points.

    Equivalent to folding :func:`ingest_point` over the track and then
    :func:`finalize_track`, with annotation sets merged per location so each
    retained report appears exactly once, in time order.
    """
    state = VesselState()
    merged: dict[int, CriticalPoint] = {}

    def absorb(points: list[CriticalPoint]) -> None:
        for cp in points:
            existing = merged.get(cp.timestamp)
            if existing is None:
                merged[cp.timestamp] = cp
            else:
                existing.annotations |= cp.annotations

    for point in track.points:
        absorb(ingest_point(state, point, cfg))
    absorb(finalize_track(state))
    return [merged[ts] for ts in sorted(merged)]


def write_synopsis_csv(points: Sequence[CriticalPoint], out: TextIO) -> None:
    """Serialize a synopsis as ``mmsi,timestamp,lon,lat,annotations`` rows.

    Annotations are joined with ``|`` in lexicographic order so output is
    byte-stable; coordinates use fixed 6-decimal formatting.
    """
    out.write("mmsi,timestamp,lon,lat,annotations\n")
    for cp in points:
        labels = "|".join(sorted(a.value for a in cp.annotations))
        out.write(f"{cp.mmsi},{cp.timestamp},{cp.lon:.6f},{cp.lat:.6f},{labels}\n")
