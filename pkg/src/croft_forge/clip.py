"""Half-plane clipping of closed arc-chain boundaries.

Areas are accumulated with the sector-minus-triangle closed form along
the kept boundary pieces; gaps where the boundary leaves the half-plane
are closed with straight chords.  Circle-line intersections are solved
per arc from the cosine equation in the arc's own angle parameter.
"""

from __future__ import annotations

import math

import numpy as np

from .body import ArcBody

TANGENCY_TOL = 1e-12


def _arc_piece_area(center, radius, a, b) -> float:
    # Green's theorem contribution of one arc piece plus its center chord term.
    ca, sa = math.cos(a), math.sin(a)
    cb, sb = math.cos(b), math.sin(b)
    cross = center[0] * (sb - sa) - center[1] * (cb - ca)
    return 0.5 * (radius * radius * (b - a) + radius * cross)


def _arc_point(center, radius, phi):
    return np.array(
        [center[0] + radius * math.cos(phi), center[1] + radius * math.sin(phi)]
    )


def arc_line_crossings(center, radius, a, b, n, c) -> list[float]:
    """Angles in (a, b) where the arc crosses the line n.x = c (n unit)."""
    if radius <= 0.0:
        return []
    t = (c - float(n[0] * center[0] + n[1] * center[1])) / radius
    if abs(t) >= 1.0 - TANGENCY_TOL:
        return []
    alpha = math.atan2(n[1], n[0])
    base = math.acos(t)
    out = []
    for branch in (alpha + base, alpha - base):
        # bring the solution into (a, b) modulo 2*pi
        k = math.floor((a - branch) / (2.0 * math.pi))
        for m in (k, k + 1, k + 2):
            phi = branch + 2.0 * math.pi * m
            if a + TANGENCY_TOL < phi < b - TANGENCY_TOL:
                out.append(phi)
    return sorted(out)


def halfplane_clip_area(body: ArcBody, n, c: float) -> float:
    """Area of body ∩ {x : n.x >= c} for a unit normal ``n``.

    Walks the arcs in boundary order, keeps the sub-arcs inside the
    half-plane, and closes every excursion outside with a chord.
    """
    n = np.asarray(n, dtype=float)
    pieces = []  # (area contribution, start point, end point)
    for i in range(body.n_arcs):
        center = body.centers[i]
        radius = body.radii[i]
        a, b = body.breaks[i], body.breaks[i + 1]
        if radius <= 0.0 or b - a <= 0.0:
            continue
        cuts = [a] + arc_line_crossings(center, radius, a, b, n, c) + [b]
        for lo, hi in zip(cuts, cuts[1:]):
            mid = 0.5 * (lo + hi)
            p_mid = _arc_point(center, radius, mid)
            if n[0] * p_mid[0] + n[1] * p_mid[1] >= c:
                pieces.append(
                    (
                        _arc_piece_area(center, radius, lo, hi),
                        _arc_point(center, radius, lo),
                        _arc_point(center, radius, hi),
                    )
                )
    if not pieces:
        return 0.0
    area = sum(p[0] for p in pieces)
    # chords from each piece end to the next piece start (cyclically);
    # contiguous pieces contribute zero because the points coincide.
    for j, piece in enumerate(pieces):
        end = piece[2]
        start = pieces[(j + 1) % len(pieces)][1]
        area += 0.5 * (end[0] * start[1] - end[1] * start[0])
    return float(area)


def boundary_line_crossings(body: ArcBody, n, c: float) -> list[np.ndarray]:
    """All boundary points where the body boundary meets the line n.x = c."""
    n = np.asarray(n, dtype=float)
    pts = []
    for i in range(body.n_arcs):
        center = body.centers[i]
        radius = body.radii[i]
        a, b = body.breaks[i], body.breaks[i + 1]
        if radius <= 0.0:
            continue
        for phi in arc_line_crossings(center, radius, a, b, n, c):
            pts.append(_arc_point(center, radius, phi))
    return pts
