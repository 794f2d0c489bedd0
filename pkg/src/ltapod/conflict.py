"""Trajectory reconstruction and conflict metrics for accepted events.

The host path comes from its GPS fixes projected into a tangent plane
anchored at the first fix of the event; the target path comes from radar
returns placed with the host pose interpolated to each return's timestamp.
The conflict time is where the target's transversal crosses zero in the
platform direction; the metrics are evaluated at that moment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .frames import HostState, interpolate_host, radar_to_global, to_local_frame
from .frames import InterpolationRangeError
from .screening import LtapOdEvent, crossing_pairs


class SynchronizationError(ValueError):
    """Host record does not cover a radar timestamp."""


class ConsistencyError(ValueError):
    """Event violates an assumption screening should have guaranteed."""


class InvalidEventError(ValueError):
    """Event metrics cannot be formed (e.g. non-positive host speed)."""


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Time-ordered planar path with speeds, linearly interpolable."""

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    speed: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.t)
        if not (len(self.x) == len(self.y) == len(self.speed) == n) or n == 0:
            raise ValueError("trajectory arrays must be nonempty and equal length")
        if np.any(np.diff(self.t) <= 0):
            raise ValueError("trajectory timestamps must strictly increase")

    def position_at(self, t: float) -> tuple[float, float]:
        return float(np.interp(t, self.t, self.x)), float(np.interp(t, self.t, self.y))

    def speed_at(self, t: float) -> float:
        return float(np.interp(t, self.t, self.speed))

    @property
    def span(self) -> tuple[float, float]:
        return float(self.t[0]), float(self.t[-1])


@dataclass(frozen=True, eq=False)
class ReconstructedEvent:
    """Planar host/target paths for one event plus the conflict time."""

    event_id: str
    sdv: Trajectory
    tv: Trajectory
    t_x: float
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class ConflictRecord:
    """The per-event conflict variables, all evaluated at the conflict time."""

    event_id: str
    t_x: float
    d_cp: float
    t_cp: float
    v_sdv: float
    v_tv: float

    def __post_init__(self) -> None:
        if self.d_cp < 0:
            raise ValueError("d_cp must be non-negative")
        if self.v_sdv <= 0:
            raise ValueError("v_sdv must be positive")
        if self.v_tv < 0:
            raise ValueError("v_tv must be non-negative")
        if self.t_cp != self.d_cp / self.v_sdv:
            raise ValueError("t_cp must equal d_cp / v_sdv")


def _crossing_times(event: LtapOdEvent) -> list[float]:
    """Interpolated zero-crossing times of the transversal, platform direction."""
    pts = event.target_track.points
    tr = [p.transversal for p in pts]
    times = []
    for k in crossing_pairs(tr, event.platform):
        a, b = tr[k], tr[k + 1]
        frac = (0.0 - a) / (b - a)
        times.append(pts[k].t + frac * (pts[k + 1].t - pts[k].t))
    return times


def find_conflict_time(event: LtapOdEvent) -> float:
    """Time at which the target's transversal crosses zero.

    Linear interpolation between the bracketing returns.  With several
    platform-direction crossings the first one wins.
    """
    times = _crossing_times(event)
    if not times:
        raise ConsistencyError("no platform-direction transversal zero crossing")
    return times[0]


def reconstruct(
    event: LtapOdEvent,
    anchor: HostState | None = None,
    event_id: str | None = None,
) -> ReconstructedEvent:
    """Build planar host/target trajectories and locate the conflict time.

    ``anchor`` defaults to the first host fix; passing another anchor only
    translates the frame.  Target speed comes from central differences of
    the reconstructed path (one-sided at the ends).
    """
    host_states = event.host_states
    anchor = anchor or host_states[0]
    if event_id is None:
        event_id = f"{event.trip_id}/t{event.target_track.track_id}"

    sdv_pts = [to_local_frame(anchor, s.lat, s.lon) for s in host_states]
    sdv = Trajectory(
        t=np.array([s.t for s in host_states], dtype=float),
        x=np.array([p.x for p in sdv_pts], dtype=float),
        y=np.array([p.y for p in sdv_pts], dtype=float),
        speed=np.array([s.speed for s in host_states], dtype=float),
    )

    radar_pts = event.target_track.points
    tv_xy = np.empty((len(radar_pts), 2), dtype=float)
    for idx, pt in enumerate(radar_pts):
        try:
            host_at = interpolate_host(host_states, pt.t)
        except InterpolationRangeError as err:
            raise SynchronizationError(str(err)) from err
        p = radar_to_global(host_at, pt, anchor)
        tv_xy[idx] = (p.x, p.y)
    tv_t = np.array([p.t for p in radar_pts], dtype=float)
    tv_speed = _path_speeds(tv_t, tv_xy)
    tv = Trajectory(t=tv_t, x=tv_xy[:, 0], y=tv_xy[:, 1], speed=tv_speed)

    crossings = _crossing_times(event)
    if not crossings:
        raise ConsistencyError("no platform-direction transversal zero crossing")
    flags = ("multiple_crossings",) if len(crossings) > 1 else ()
    return ReconstructedEvent(
        event_id=event.trip_id, sdv=sdv, tv=tv, t_x=crossings[0], flags=flags
    )


def _path_speeds(t: np.ndarray, xy: np.ndarray) -> np.ndarray:
    """Finite-difference speed magnitudes: central inside, one-sided at ends."""
    n = len(t)
    if n == 1:
        return np.zeros(1)
    v = np.empty(n)
    v[0] = np.hypot(*(xy[1] - xy[0])) / (t[1] - t[0])
    v[-1] = np.hypot(*(xy[-1] - xy[-2])) / (t[-1] - t[-2])
    if n > 2:
        deltas = xy[2:] - xy[:-2]
        v[1:-1] = np.hypot(deltas[:, 0], deltas[:, 1]) / (t[2:] - t[:-2])
    return v


def compute_metrics(rec: ReconstructedEvent) -> ConflictRecord:
    """Evaluate the conflict variables at the conflict time."""
    for traj, name in ((rec.sdv, "host"), (rec.tv, "target")):
        lo, hi = traj.span
        if not lo <= rec.t_x <= hi:
            raise ConsistencyError(f"conflict time outside {name} path span")
    sx, sy = rec.sdv.position_at(rec.t_x)
    tx, ty = rec.tv.position_at(rec.t_x)
    d_cp = math.hypot(tx - sx, ty - sy)
    v_sdv = rec.sdv.speed_at(rec.t_x)
    if v_sdv <= 0:
        raise InvalidEventError("host speed non-positive at conflict time")
    v_tv = rec.tv.speed_at(rec.t_x)
    return ConflictRecord(
        event_id=rec.event_id,
        t_x=rec.t_x,
        d_cp=d_cp,
        t_cp=d_cp / v_sdv,
        v_sdv=v_sdv,
        v_tv=v_tv,
    )


def tcp_trace(rec: ReconstructedEvent) -> np.ndarray:
    """Per-sample time to the conflict point: dist(host, cp) / host speed.

    The conflict point is the target position at the conflict time.  Returns
    an (n, 2) array of (t, t_cp) rows over the host samples.  Useful for
    inspecting how the margin evolves while the target crosses.
    """
    cx, cy = rec.tv.position_at(rec.t_x)
    d = np.hypot(rec.sdv.x - cx, rec.sdv.y - cy)
    with np.errstate(divide="ignore"):
        tcp = d / rec.sdv.speed
    return np.column_stack([rec.sdv.t, tcp])
