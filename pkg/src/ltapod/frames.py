"""Planar frames, host/radar sample types, and host-state interpolation.

All downstream trajectory math happens in a local tangent plane (x east,
y north, meters) anchored at a reference latitude/longitude.  Events span
well under a kilometre, so an equirectangular projection is accurate to
millimetres and trivially invertible.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

EARTH_RADIUS_M = 6_371_000.0


class Platform(Enum):
    """Recording platform; fixes the sign convention of the radar transversal.

    Light-vehicle radars report transversal positive to the left of the
    heading axis, heavy-truck radars positive to the right.  A target
    crossing left-to-right therefore runs + -> - on LV data and - -> + on
    HT data.
    """

    LIGHT_VEHICLE = "LV"
    HEAVY_TRUCK = "HT"


class InvalidInputError(ValueError):
    """Raised when a value violates a type invariant or argument contract."""


class InterpolationRangeError(ValueError):
    """Raised when a query time falls outside the record span."""


@dataclass(frozen=True)
class HostState:
    """One timestamped host fix: GPS position, speed and heading.

    heading is degrees clockwise from north in [0, 360); speed is m/s.
    """

    t: float
    lat: float
    lon: float
    speed: float
    heading: float

    def __post_init__(self) -> None:
        for name in ("t", "lat", "lon", "speed", "heading"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidInputError(f"non-finite host field {name!r}")
        if self.speed < 0:
            raise InvalidInputError(f"negative speed {self.speed}")
        if not -90.0 <= self.lat <= 90.0:
            raise InvalidInputError(f"latitude out of range: {self.lat}")
        if not -180.0 <= self.lon <= 180.0:
            raise InvalidInputError(f"longitude out of range: {self.lon}")
        if not 0.0 <= self.heading < 360.0:
            raise InvalidInputError(f"heading out of range: {self.heading}")


@dataclass(frozen=True)
class RadarPoint:
    """One forward-radar return in the host sensor frame.

    range_rate is radial speed, negative when closing.  transversal is the
    lateral offset channel; its sign convention depends on the platform.
    azimuth is the bearing of the return, degrees off the host axis.
    """

    t: float
    range: float
    range_rate: float
    transversal: float
    azimuth: float

    def __post_init__(self) -> None:
        for name in ("t", "range", "range_rate", "transversal", "azimuth"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidInputError(f"non-finite radar field {name!r}")
        if self.range <= 0:
            raise InvalidInputError(f"non-positive range {self.range}")
        if abs(self.azimuth) > 90.0:
            raise InvalidInputError(f"azimuth out of range: {self.azimuth}")


@dataclass(frozen=True)
class PlanarPoint:
    """Point in the local tangent frame: x meters east, y meters north."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidInputError("non-finite planar coordinates")

    def distance_to(self, other: "PlanarPoint") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


def to_local_frame(anchor: HostState, lat: float, lon: float) -> PlanarPoint:
    """Project a geodetic fix into the tangent plane anchored at ``anchor``.

    Equirectangular: x = R * dlon * cos(lat_anchor), y = R * dlat (radians).
    The anchor itself maps to (0, 0).
    """
    if not (math.isfinite(lat) and math.isfinite(lon)):
        raise InvalidInputError("non-finite coordinates")
    if not -90.0 <= lat <= 90.0:
        raise InvalidInputError(f"latitude out of range: {lat}")
    if not -180.0 <= lon <= 180.0:
        raise InvalidInputError(f"longitude out of range: {lon}")
    x = EARTH_RADIUS_M * math.radians(lon - anchor.lon) * math.cos(math.radians(anchor.lat))
    y = EARTH_RADIUS_M * math.radians(lat - anchor.lat)
    return PlanarPoint(x, y)


def from_local_frame(anchor: HostState, point: PlanarPoint) -> tuple[float, float]:
    """Inverse of :func:`to_local_frame`; returns (lat, lon)."""
    lat = anchor.lat + math.degrees(point.y / EARTH_RADIUS_M)
    lon = anchor.lon + math.degrees(
        point.x / (EARTH_RADIUS_M * math.cos(math.radians(anchor.lat)))
    )
    return lat, lon


def radar_to_global(host: HostState, pt: RadarPoint, anchor: HostState) -> PlanarPoint:
    """Place a radar return into the tangent plane of ``anchor``.

    Longitudinal offset is range * cos(azimuth); the lateral offset is taken
    from the transversal channel directly and interpreted as positive to the
    right of the heading axis.  On LV data (transversal positive to the
    left) this mirrors the target laterally, which leaves every distance-
    and speed-based metric unchanged.
    """
    base = to_local_frame(anchor, host.lat, host.lon)
    h = math.radians(host.heading)
    sin_h, cos_h = math.sin(h), math.cos(h)
    lon_off = pt.range * math.cos(math.radians(pt.azimuth))
    lat_off = pt.transversal
    # forward unit = (sin h, cos h); right unit = (cos h, -sin h)
    return PlanarPoint(
        base.x + lon_off * sin_h + lat_off * cos_h,
        base.y + lon_off * cos_h - lat_off * sin_h,
    )


def wrapped_heading_delta(h_from: float, h_to: float) -> float:
    """Signed shortest angular step from ``h_from`` to ``h_to``, in (-180, 180]."""
    d = (h_to - h_from + 180.0) % 360.0 - 180.0
    # map the -180 representative to +180 so the result is in (-180, 180]
    return d if d != -180.0 else 180.0


def unwrap_headings(headings: Sequence[float]) -> list[float]:
    """Unwrap a heading sequence so consecutive steps take the shortest path."""
    if not headings:
        return []
    out = [float(headings[0])]
    for prev, cur in zip(headings, headings[1:]):
        out.append(out[-1] + wrapped_heading_delta(prev, cur))
    return out


def headings_from_fixes(lats: Sequence[float], lons: Sequence[float]) -> list[float]:
    """Derive headings by finite-differencing consecutive fixes.

    Fallback for channel logs that lack a heading signal.  Returns one
    heading per fix in [0, 360); the last fix repeats the previous heading.
    """
    if len(lats) < 2:
        raise InvalidInputError("need at least 2 fixes to derive headings")
    out: list[float] = []
    mean_lat = math.radians(sum(lats) / len(lats))
    for i in range(len(lats) - 1):
        dx = math.radians(lons[i + 1] - lons[i]) * math.cos(mean_lat)
        dy = math.radians(lats[i + 1] - lats[i])
        out.append(math.degrees(math.atan2(dx, dy)) % 360.0)
    out.append(out[-1])
    return out


def interpolate_host(states: Sequence[HostState], t: float) -> HostState:
    """Linearly interpolate the host record at time ``t``.

    Position and speed interpolate linearly; heading interpolates along the
    shortest angular path.  Exact at sample points.
    """
    if not states:
        raise InvalidInputError("empty host record")
    times = [s.t for s in states]
    if t < times[0] or t > times[-1]:
        raise InterpolationRangeError(
            f"t={t} outside host record span [{times[0]}, {times[-1]}]"
        )
    i = bisect.bisect_left(times, t)
    if i < len(times) and times[i] == t:
        return states[i]
    lo, hi = states[i - 1], states[i]
    frac = (t - lo.t) / (hi.t - lo.t)
    heading = (lo.heading + frac * wrapped_heading_delta(lo.heading, hi.heading)) % 360.0
    return HostState(
        t=t,
        lat=lo.lat + frac * (hi.lat - lo.lat),
        lon=lo.lon + frac * (hi.lon - lo.lon),
        speed=lo.speed + frac * (hi.speed - lo.speed),
        heading=heading,
    )
