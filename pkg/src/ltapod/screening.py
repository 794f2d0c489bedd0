"""Screens candidate (host trajectory, target track) pairs into LTAP/OD events.

A candidate is accepted only when the host is driving straight at speed,
the target closes in on the host and sweeps across its heading axis in the
direction the platform's radar convention demands, the track lasts long
enough, and no sampling gap is large enough to cast doubt on target
identity.  Rejections carry the first criterion that failed, in the order
listed above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .association import TargetTrack
from .frames import HostState, InvalidInputError, Platform, unwrap_headings


@dataclass(frozen=True)
class ScreeningConfig:
    """Eligibility thresholds for LTAP/OD event screening."""

    platform: Platform = Platform.HEAVY_TRUCK
    min_host_speed: float = 3.0  # m/s; host must exceed this at every sample
    max_heading_change: float = 10.0  # degrees; max-min of unwrapped heading
    max_target_longitudinal_speed: float = -0.5  # m/s; projection must stay below
    min_duration: float = 1.5  # s; track must last longer than this
    max_point_gap: float = 1.0  # s; largest allowed gap between track points

    def __post_init__(self) -> None:
        if self.min_host_speed <= 0:
            raise ValueError("min_host_speed must be positive")
        if self.min_duration <= 0:
            raise ValueError("min_duration must be positive")
        if self.max_point_gap <= 0:
            raise ValueError("max_point_gap must be positive")


class RejectionReason(Enum):
    """First failed screening criterion, in evaluation order."""

    HOST_SPEED = "host_speed"
    HOST_HEADING = "host_heading"
    TARGET_APPROACH = "target_approach"
    TARGET_CROSSING = "target_crossing"
    DURATION = "duration"
    POINT_GAP = "gap"


@dataclass(frozen=True)
class LtapOdEvent:
    """An accepted left-turn-across-path conflict candidate."""

    host_states: tuple[HostState, ...]
    target_track: TargetTrack
    trip_id: str
    platform: Platform


@dataclass(frozen=True)
class ScreeningResult:
    event: LtapOdEvent | None
    reason: RejectionReason | None

    @property
    def accepted(self) -> bool:
        return self.event is not None


def heading_excursion(states: Sequence[HostState]) -> float:
    """Total unwrapped heading excursion (max minus min) over the window."""
    unwrapped = unwrap_headings([s.heading for s in states])
    return max(unwrapped) - min(unwrapped)


def host_speed_ok(states: Sequence[HostState], cfg: ScreeningConfig) -> bool:
    return min(s.speed for s in states) > cfg.min_host_speed


def is_straight_driving(states: Sequence[HostState], cfg: ScreeningConfig) -> bool:
    """True when the host keeps speed above the floor and heading nearly fixed."""
    if len(states) < 2:
        raise InvalidInputError("need at least 2 host states")
    return host_speed_ok(states, cfg) and heading_excursion(states) < cfg.max_heading_change


def crossing_pairs(transversals: Sequence[float], platform: Platform) -> list[int]:
    """Indices k where (k, k+1) brackets a zero crossing in the platform direction.

    Heavy-truck data crosses negative to non-negative, light-vehicle data
    positive to non-positive.
    """
    out = []
    for k in range(len(transversals) - 1):
        a, b = transversals[k], transversals[k + 1]
        if platform is Platform.HEAVY_TRUCK:
            if a < 0.0 <= b:
                out.append(k)
        else:
            if a > 0.0 >= b:
                out.append(k)
    return out


def target_approach_ok(track: TargetTrack, cfg: ScreeningConfig) -> bool:
    """True when every return's longitudinal speed projection closes fast enough."""
    return all(
        p.range_rate * math.cos(math.radians(p.azimuth))
        < cfg.max_target_longitudinal_speed
        for p in track.points
    )


def is_crossing_target(track: TargetTrack, cfg: ScreeningConfig) -> bool:
    """True when the target closes on the host and sweeps across its axis."""
    if not track.points:
        raise InvalidInputError("empty track")
    return target_approach_ok(track, cfg) and bool(
        crossing_pairs(track.transversals, cfg.platform)
    )


def max_point_gap(track: TargetTrack) -> float:
    times = [p.t for p in track.points]
    return max(b - a for a, b in zip(times, times[1:]))


def screen_event(
    host_states: Sequence[HostState],
    track: TargetTrack,
    cfg: ScreeningConfig,
    trip_id: str = "",
) -> ScreeningResult:
    """Apply all screening criteria; reject with the first failure.

    Accepts only when every criterion passes.  ``host_states`` is the host
    record over the candidate window and must be time-sorted.
    """
    if len(host_states) < 2:
        raise InvalidInputError("need at least 2 host states")
    if not host_speed_ok(host_states, cfg):
        return ScreeningResult(None, RejectionReason.HOST_SPEED)
    if heading_excursion(host_states) >= cfg.max_heading_change:
        return ScreeningResult(None, RejectionReason.HOST_HEADING)
    if not target_approach_ok(track, cfg):
        return ScreeningResult(None, RejectionReason.TARGET_APPROACH)
    if not crossing_pairs(track.transversals, cfg.platform):
        return ScreeningResult(None, RejectionReason.TARGET_CROSSING)
    if not track.duration > cfg.min_duration:
        return ScreeningResult(None, RejectionReason.DURATION)
    if len(track.points) >= 2 and not max_point_gap(track) < cfg.max_point_gap:
        return ScreeningResult(None, RejectionReason.POINT_GAP)
    event = LtapOdEvent(
        host_states=tuple(host_states),
        target_track=track,
        trip_id=trip_id,
        platform=cfg.platform,
    )
    return ScreeningResult(event, None)
