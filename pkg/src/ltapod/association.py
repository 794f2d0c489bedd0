"""Groups forward-radar returns into per-target tracks for heavy-truck streams.

The heavy-truck platform logs raw radar returns with no target identity.
Returns that close in on the host inside a narrow forward cone are grouped
by region growing in time order: a return joins a cluster when it is
compatible with at least one earlier member, where compatibility requires a
consistent range/range-rate/time relationship and a bounded transversal
rate.  Clusters below a minimum size are reported as noise, as is every
ineligible return.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .frames import RadarPoint


@dataclass(frozen=True)
class AssociationConfig:
    """Thresholds for target association on raw heavy-truck radar data."""

    min_closing_speed: float = -0.3  # m/s; returns must close faster than this
    max_azimuth: float = 5.5  # degrees; forward cone half-angle
    time_window: float = 0.85  # s; how far ahead a cluster may reach
    correspondence_tol: float = 0.3  # relative tolerance of range/range-rate timing
    max_transversal_rate: float = 20.0  # m/s; lateral plausibility bound
    min_cluster_size: int = 5  # clusters smaller than this are noise

    def __post_init__(self) -> None:
        if self.min_closing_speed >= 0:
            raise ValueError("min_closing_speed must be negative")
        for name in ("max_azimuth", "time_window", "correspondence_tol",
                     "max_transversal_rate"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.min_cluster_size < 2:
            raise ValueError("min_cluster_size must be >= 2")


@dataclass(frozen=True)
class TargetTrack:
    """A time-ordered cluster of radar returns attributed to one target."""

    points: tuple[RadarPoint, ...]
    track_id: int

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("empty track")
        times = [p.t for p in self.points]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("track timestamps must strictly increase")

    @property
    def duration(self) -> float:
        return self.points[-1].t - self.points[0].t

    @property
    def transversals(self) -> list[float]:
        return [p.transversal for p in self.points]


def point_eligible(pt: RadarPoint, cfg: AssociationConfig) -> bool:
    """True when a return closes on the host inside the forward cone."""
    return pt.range_rate < cfg.min_closing_speed and abs(pt.azimuth) < cfg.max_azimuth


def neighbor_compatible(i: RadarPoint, j: RadarPoint, cfg: AssociationConfig) -> bool:
    """True when the later return ``j`` can extend a cluster containing ``i``.

    Requires: the pair lies inside the time window; the range step matches
    the mean range rate (the time implied by 2*(r_j - r_i)/(rr_j + rr_i)
    agrees with the actual gap within ``correspondence_tol``); and the
    absolute transversal rate stays below ``max_transversal_rate``.
    A vanishing range-rate sum makes the implied time undefined and the
    pair incompatible.
    """
    dt = j.t - i.t
    if dt <= 0:
        raise ValueError("neighbor_compatible requires t(j) > t(i)")
    if dt > cfg.time_window:
        return False
    rr_sum = i.range_rate + j.range_rate
    if rr_sum == 0.0:
        return False
    dt_pred = 2.0 * (j.range - i.range) / rr_sum
    if abs(1.0 - dt_pred / dt) >= cfg.correspondence_tol:
        return False
    if abs(j.transversal - i.transversal) / dt >= cfg.max_transversal_rate:
        return False
    return True


@dataclass
class _Cluster:
    cluster_id: int
    points: list[RadarPoint] = field(default_factory=list)
    times: set[float] = field(default_factory=set)


def associate_targets(
    points: Sequence[RadarPoint], cfg: AssociationConfig | None = None
) -> tuple[list[TargetTrack], list[RadarPoint]]:
    """Partition time-sorted returns into target tracks and noise.

    Single-pass region growing: each eligible return joins the cluster that
    holds its nearest-in-time compatible member (ties resolved toward the
    lower cluster id) or seeds a new cluster.  A cluster never holds two
    returns with the same timestamp.  Returns every input point in exactly
    one of the two outputs.
    """
    cfg = cfg or AssociationConfig()
    times = [p.t for p in points]
    if any(b < a for a, b in zip(times, times[1:])):
        raise ValueError("input points must be sorted by time")

    clusters: list[_Cluster] = []
    noise: list[RadarPoint] = []
    for pt in points:
        if not point_eligible(pt, cfg):
            noise.append(pt)
            continue
        best: _Cluster | None = None
        best_t = -float("inf")
        for cluster in clusters:
            if pt.t in cluster.times:
                continue
            # members are time-ordered; scan backwards while inside the window
            for member in reversed(cluster.points):
                if pt.t - member.t > cfg.time_window:
                    break
                if member.t >= pt.t:
                    continue
                if neighbor_compatible(member, pt, cfg):
                    if member.t > best_t:
                        best, best_t = cluster, member.t
                    break
        if best is None:
            clusters.append(_Cluster(len(clusters), [pt], {pt.t}))
        else:
            best.points.append(pt)
            best.times.add(pt.t)

    tracks: list[TargetTrack] = []
    for cluster in clusters:
        if len(cluster.points) >= cfg.min_cluster_size:
            tracks.append(TargetTrack(tuple(cluster.points), cluster.cluster_id))
        else:
            noise.extend(cluster.points)
    noise.sort(key=lambda p: p.t)
    return tracks, noise
