"""Geodesic math for geofences and the triangulation mechanic.

All distances are great-circle (haversine) on a sphere of radius
EARTH_RADIUS_M. Game geofences are tens to hundreds of meters across, so
the spherical approximation error is far below consumer GPS noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EARTH_RADIUS_M = 6_371_000.0

# Largest pairwise spread (meters) accepted by triangulate(); beyond this
# the local tangent-plane approximation is no longer honest.
MAX_TRIANGULATION_SPREAD_M = 100_000.0

# Default match tolerance for triangulation puzzles; game authors may
# override per puzzle.
DEFAULT_TRIANGULATION_TOLERANCE_M = 25.0


class SpreadTooLarge(ValueError):
    """Raised when triangulation points are more than 100 km apart."""

    code = "SPREAD_TOO_LARGE"


@dataclass(frozen=True)
class GeoPoint:
    """A position in signed decimal degrees.

    Latitude must lie in [-90, 90]; longitude is wrapped into [-180, 180)
    at construction. Values already in range are stored untouched so that
    construction is idempotent.
    """

    lat: float
    lon: float

    def __post_init__(self):
        lat = float(self.lat)
        lon = float(self.lon)
        if not (math.isfinite(lat) and math.isfinite(lon)):
            raise ValueError("coordinates must be finite")
        if not -90.0 <= lat <= 90.0:
            raise ValueError(f"latitude {lat!r} outside [-90, 90]")
        if not -180.0 <= lon < 180.0:
            lon = math.fmod(lon + 180.0, 360.0)
            if lon < 0.0:
                lon += 360.0
            lon -= 180.0
        object.__setattr__(self, "lat", lat)
        object.__setattr__(self, "lon", lon)


def geo_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in meters between two points.

    Symmetric, non-negative, zero iff the points are equal, and bounded
    by pi * EARTH_RADIUS_M.
    """
    if a == b:
        return 0.0
    phi1 = math.radians(a.lat)
    phi2 = math.radians(b.lat)
    dphi = math.radians(b.lat - a.lat)
    dlam = math.radians(b.lon - a.lon)
    h = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(h)))


def within_range(p: GeoPoint, loc) -> bool:
    """True iff p lies inside or exactly on loc's geofence boundary.

    loc is anything with .center (GeoPoint) and .radius_m attributes;
    the boundary itself counts as inside.
    """
    return geo_distance(p, loc.center) <= loc.radius_m


def triangulate(p1: GeoPoint, p2: GeoPoint, p3: GeoPoint) -> GeoPoint:
    """Centroid of three nearby points.

    The points are projected into a local equirectangular tangent plane
    centered on p1, averaged there, and mapped back to degrees. Because
    the projection is affine in (lat, lon), this equals the coordinate
    mean up to longitude wrapping, so the result is independent of
    argument order.

    Raises SpreadTooLarge if any pairwise distance is 100 km or more.
    """
    points = (p1, p2, p3)
    for i in range(3):
        for j in range(i + 1, 3):
            if geo_distance(points[i], points[j]) >= MAX_TRIANGULATION_SPREAD_M:
                raise SpreadTooLarge(
                    f"points {i} and {j} are >= {MAX_TRIANGULATION_SPREAD_M:.0f} m apart"
                )
    lat = p1.lat + ((p2.lat - p1.lat) + (p3.lat - p1.lat)) / 3.0
    lon = p1.lon + (_wrap_delta(p2.lon - p1.lon) + _wrap_delta(p3.lon - p1.lon)) / 3.0
    return GeoPoint(lat, lon)


def check_triangulation(
    points: tuple[GeoPoint, GeoPoint, GeoPoint],
    target: GeoPoint,
    tol_m: float = DEFAULT_TRIANGULATION_TOLERANCE_M,
) -> bool:
    """True iff the centroid of points lands within tol_m of target."""
    return geo_distance(triangulate(*points), target) <= tol_m


def _wrap_delta(dlon: float) -> float:
    """Longitude difference folded into [-180, 180)."""
    if -180.0 <= dlon < 180.0:
        return dlon
    dlon = math.fmod(dlon + 180.0, 360.0)
    if dlon < 0.0:
        dlon += 360.0
    return dlon - 180.0
