"""Disc-cap areas, their second-order power series, and pair minimization.

A cap is the part of a disc of radius R = 1 + r beyond a cut line at
depth D = w_c + d; tilting the line by delta keeps it through the same
axis point.  The closed-form cap area, its series coefficients, and the
1-parameter (stripe shift s) and 2-parameter (shift + tilt) minimization
of two opposite caps with four independent radii all live here.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .body import croft_constants


class CapGeometryError(ValueError):
    """Cut line misses the disc (cap depth outside the valid range)."""


@dataclass(frozen=True)
class SeriesCoefficients:
    """Second-order expansion constants of the cap area.

    ``a0`` is the unperturbed cap area; b, c, d, e, f are the first and
    second derivatives in (depth, radius); h, j, k, l are the tilt
    derivatives.  All follow from the optimal half angle in closed form.
    """

    a0: float
    b: float
    c: float
    d: float
    e: float
    f: float
    h: float
    j: float
    k: float
    l: float


@lru_cache(maxsize=1)
def series_coefficients() -> SeriesCoefficients:
    phi = croft_constants().phi_c
    sin, cos = math.sin(phi), math.cos(phi)
    return SeriesCoefficients(
        a0=phi - cos * sin,
        b=2.0 * sin,
        c=2.0 * (phi - sin),
        d=2.0 * cos / sin,
        e=2.0 * (1.0 - cos) / sin,
        f=2.0 * (phi - 2.0 * (1.0 - cos) / sin),
        h=-sin * sin,
        j=-2.0 * cos,
        k=2.0 * (cos - 1.0),
        l=2.0 * cos * sin,
    )


@dataclass(frozen=True)
class PairCut:
    """Geometry of two opposite caps for one edge class.

    ``d_x``/``d_y`` are the summed horizontal/vertical displacements of
    the two cap points; the four radius perturbations are upper/lower on
    the left/right cap, each cap frame oriented with its own outward x.
    """

    d_x: float = 0.0
    d_y: float = 0.0
    r_lu: float = 0.0
    r_ll: float = 0.0
    r_ru: float = 0.0
    r_rl: float = 0.0

    @property
    def r_s(self) -> float:
        return self.r_lu + self.r_ll + self.r_ru + self.r_rl

    @property
    def r_s2(self) -> float:
        return self.r_lu**2 + self.r_ll**2 + self.r_ru**2 + self.r_rl**2

    @property
    def r_l(self) -> float:
        return self.r_lu + self.r_ll - self.r_ru - self.r_rl

    @property
    def r_c(self) -> float:
        return self.r_lu + self.r_rl - self.r_ll - self.r_ru

    @property
    def r_u(self) -> float:
        # upper-minus-lower combination with both caps in lattice sense
        return self.r_lu + self.r_ru - self.r_ll - self.r_rl

    def scaled(self, factor: float) -> "PairCut":
        return PairCut(*(factor * x for x in (
            self.d_x, self.d_y, self.r_lu, self.r_ll, self.r_ru, self.r_rl)))


# ---------------------------------------------------------------------------
# Exact cap areas


def segment_area_exact(d: float, r: float) -> float:
    """Exact cap area at depth perturbation ``d``, radius perturbation ``r``."""
    w_c = croft_constants().w_c
    R = 1.0 + r
    if R <= 0.0:
        raise CapGeometryError(f"non-positive disc radius {R}")
    D = w_c + d
    t = (R - D) / R
    if t > 1.0 + 1e-12 or t < -1.0 - 1e-12:
        raise CapGeometryError(f"cap depth {D} outside the disc of radius {R}")
    phi = math.acos(min(1.0, max(-1.0, t)))
    return R * R * phi - (R - D) * R * math.sin(phi)


def segment_area_exact_tilted(d: float, r: float, delta: float) -> float:
    """Exact doubled upper-half cap area when the cut line is tilted.

    The line pivots about the point at depth D on the cap axis; positive
    tilt leans the top of the line outward, shrinking the upper half.
    Reduces to :func:`segment_area_exact` at delta = 0.
    """
    if abs(delta) >= math.pi / 2:
        raise CapGeometryError(f"tilt {delta} out of range")
    w_c = croft_constants().w_c
    R = 1.0 + r
    if R <= 0.0:
        raise CapGeometryError(f"non-positive disc radius {R}")
    D = w_c + d
    t = (R - D) / R * math.cos(delta)
    if t > 1.0 + 1e-12 or t < -1.0 - 1e-12:
        raise CapGeometryError(f"tilted cut misses the disc (cos {t})")
    phi = math.acos(min(1.0, max(-1.0, t))) - delta
    return R * R * phi - (R - D) * R * math.sin(phi)


# ---------------------------------------------------------------------------
# Second-order series


def segment_area_series(d: float, r: float) -> float:
    """Second-order power series of the cap area in (d, r)."""
    sc = series_coefficients()
    return (
        sc.a0 + sc.b * d + sc.c * r
        + 0.5 * sc.d * d * d + sc.e * d * r + 0.5 * sc.f * r * r
    )


def segment_area_series_tilted(d: float, r: float, delta: float) -> float:
    """Second-order series including the tilt terms."""
    sc = series_coefficients()
    return (
        segment_area_series(d, r)
        + sc.h * delta + sc.j * d * delta + sc.k * r * delta
        + 0.5 * sc.l * delta * delta
    )


# ---------------------------------------------------------------------------
# Pair minimization: two opposite caps, stripe shifted by s (and tilted)


def _pair_objective_shift(cut: PairCut, s: float) -> float:
    half = 0.5 * cut.d_x
    return 0.5 * (
        segment_area_exact(half + s, cut.r_lu)
        + segment_area_exact(half - s, cut.r_ru)
        + segment_area_exact(half + s, cut.r_ll)
        + segment_area_exact(half - s, cut.r_rl)
    )


def pair_area_series_shift(cut: PairCut) -> float:
    """Closed-form minimized pair area, shift-only minimization."""
    sc = series_coefficients()
    return (
        2.0 * sc.a0 + sc.b * cut.d_x + 0.5 * sc.c * cut.r_s
        + 0.25 * sc.d * cut.d_x**2 + 0.25 * sc.e * cut.d_x * cut.r_s
        - sc.e**2 / (16.0 * sc.d) * cut.r_l**2 + 0.25 * sc.f * cut.r_s2
    )


def series_shift_minimizer(cut: PairCut) -> float:
    sc = series_coefficients()
    return -sc.e * cut.r_l / (4.0 * sc.d)


def minimize_pair_shift(
    cut: PairCut, mode: str = "exact", *, span: float = 0.02
) -> tuple[float, float]:
    """Minimize the two-cap area over the stripe shift s.

    Returns (s_min, area).  ``mode='series'`` uses the closed form;
    ``mode='exact'`` minimizes the exact objective numerically in a
    bracket of half-width ``span`` around the series minimizer.
    """
    s0 = series_shift_minimizer(cut)
    if mode == "series":
        return s0, pair_area_series_shift(cut)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    res = minimize_scalar(
        lambda s: _pair_objective_shift(cut, s),
        bounds=(s0 - span, s0 + span),
        method="bounded",
        options={"xatol": 1e-13},
    )
    if not res.success:
        raise RuntimeError(f"shift minimization failed: {res.message}")
    return float(res.x), float(res.fun)


def effective_depth_sum(cut: PairCut, delta: float, *, exact: bool = True) -> float:
    """Total depth perturbation of the pair once the stripe is tilted.

    The tilted stripe keeps perpendicular width 2, which widens its
    horizontal footprint, and the vertical cap displacements slide along
    the tilted lines.  ``exact=False`` keeps only second-order terms.
    """
    if exact:
        return cut.d_x + 2.0 * (1.0 / math.cos(delta) - 1.0) - math.tan(delta) * cut.d_y
    return cut.d_x + delta * delta - delta * cut.d_y


def _tilt_radius_combination(cut: PairCut, pairing: str) -> float:
    """Radius combination coupled to the tilt.

    ``pairing='upper'`` is the geometrically derived sign pattern (both
    upper half-caps tilt one way, both lower halves the other), coupling
    the tilt to r_u; ``pairing='cross'`` is the alternative diagonal
    pattern coupling it to r_c, kept for comparison because the two
    disagree and only 'upper' matches the exact clipped-area minimizer.
    """
    if pairing == "upper":
        return cut.r_u
    if pairing == "cross":
        return cut.r_c
    raise ValueError(f"pairing must be 'upper' or 'cross', got {pairing!r}")


def pair_objective_shift_tilt(
    cut: PairCut, s: float, delta: float, *, pairing: str = "upper"
) -> float:
    """Exact two-cap objective with tilt: four half-cap terms.

    With ``pairing='upper'`` the tilt enters the half caps with signs
    (lu: +delta, ru: +delta, ll: -delta, rl: -delta); 'cross' flips the
    right cap's pair.  The depth uses the exact tilted footprint.
    """
    sign_ru = +1.0 if pairing == "upper" else -1.0
    _tilt_radius_combination(cut, pairing)  # validate pairing
    half = 0.5 * effective_depth_sum(cut, delta, exact=True)
    return 0.5 * (
        segment_area_exact_tilted(half + s, cut.r_lu, +delta)
        + segment_area_exact_tilted(half - s, cut.r_ru, sign_ru * delta)
        + segment_area_exact_tilted(half + s, cut.r_ll, -delta)
        + segment_area_exact_tilted(half - s, cut.r_rl, -sign_ru * delta)
    )


def series_tilt_minimizer(cut: PairCut, *, pairing: str = "upper") -> tuple[float, float]:
    sc = series_coefficients()
    s0 = -sc.e * cut.r_l / (4.0 * sc.d)
    r_t = _tilt_radius_combination(cut, pairing)
    delta0 = -(sc.k * r_t - 2.0 * sc.b * cut.d_y) / (4.0 * (sc.l + sc.b))
    return s0, delta0


def pair_area_series_shift_tilt(cut: PairCut, *, pairing: str = "upper") -> float:
    """Closed-form minimized pair area with shift and tilt.

    The footprint correction is applied only in the linear depth term,
    so the result stays a clean second-order expression: the shift-only
    minimum lowered by (k*r_t - 2b*d_y)^2 / (16 (l + b)) with r_t the
    pairing-dependent radius combination.
    """
    sc = series_coefficients()
    r_t = _tilt_radius_combination(cut, pairing)
    extra = (sc.k * r_t - 2.0 * sc.b * cut.d_y) ** 2 / (16.0 * (sc.l + sc.b))
    return pair_area_series_shift(cut) - extra


def minimize_pair_shift_tilt(
    cut: PairCut,
    mode: str = "exact",
    *,
    pairing: str = "upper",
    full_footprint_series: bool = False,
) -> tuple[float, float, float]:
    """Minimize the two-cap area over stripe shift and tilt.

    Returns (s_min, delta_min, area).  ``mode='series'`` evaluates the
    closed forms; ``mode='exact'`` runs a simplex search on the exact
    objective seeded at the series minimizer.  With
    ``full_footprint_series`` the series objective keeps the footprint
    substitution in every term and is minimized numerically instead
    (sensitivity analysis only).
    """
    s0, delta0 = series_tilt_minimizer(cut, pairing=pairing)
    sign_ru = +1.0 if pairing == "upper" else -1.0
    if mode == "series":
        if not full_footprint_series:
            return s0, delta0, pair_area_series_shift_tilt(cut, pairing=pairing)

        def obj(x):
            s, delta = x
            dbar = effective_depth_sum(cut, delta, exact=False)
            half = 0.5 * dbar
            return 0.5 * (
                segment_area_series_tilted(half + s, cut.r_lu, +delta)
                + segment_area_series_tilted(half - s, cut.r_ru, sign_ru * delta)
                + segment_area_series_tilted(half + s, cut.r_ll, -delta)
                + segment_area_series_tilted(half - s, cut.r_rl, -sign_ru * delta)
            )

    elif mode == "exact":
        def obj(x):
            return pair_objective_shift_tilt(cut, x[0], x[1], pairing=pairing)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    res = minimize(
        obj,
        x0=[s0, delta0],
        method="Nelder-Mead",
        options={"xatol": 1e-11, "fatol": 1e-14, "maxiter": 4000},
    )
    if not res.success:
        raise RuntimeError(f"shift+tilt minimization failed: {res.message}")
    return float(res.x[0]), float(res.x[1]), float(res.fun)


# ---------------------------------------------------------------------------
# Difference grids


def difference_grid(
    d_range=(-0.01, 0.01), r_range=(-0.1, 0.1), n: int = 41, delta: float = 0.0
) -> list[dict]:
    """Exact-vs-series cap area rows over a (d, r) grid at fixed tilt."""
    rows = []
    for d in np.linspace(*d_range, n):
        for r in np.linspace(*r_range, n):
            if delta == 0.0:
                exact = segment_area_exact(d, r)
                series = segment_area_series(d, r)
            else:
                exact = segment_area_exact_tilted(d, r, delta)
                series = segment_area_series_tilted(d, r, delta)
            rows.append(
                {
                    "d": float(d), "r": float(r), "delta": delta,
                    "exact": exact, "series": series, "diff": series - exact,
                }
            )
    return rows


def write_difference_csv(rows: list[dict], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["d", "r", "delta", "exact", "series", "diff"])
        writer.writeheader()
        writer.writerows(rows)
