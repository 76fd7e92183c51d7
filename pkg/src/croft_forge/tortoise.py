"""Packing density of stripe-cut constant-diameter bodies on the lattice.

The remainder of one body after its three stripe pairs are cut off tiles
the plane with one copy per lattice cell; its area over the cell area is
the packing density.  Four evaluation modes are provided: second-order
series with shift-only or shift+tilt stripe minimization ("series1",
"series2"), and exact clipped-arc areas with the same two minimizations
("exact1", "exact2").
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .body import ArcBody, body_area, build_body, croft_constants, transform
from .clip import halfplane_clip_area
from .lattice import (
    LatticeConfig,
    _stripe_lines,
    cut_parameters,
    default_config,
    left_color_of_class,
    rotation_of_color,
)
from .segments import (
    PairCut,
    minimize_pair_shift,
    minimize_pair_shift_tilt,
    series_coefficients,
    series_shift_minimizer,
    series_tilt_minimizer,
)
from .stepfn import StepFunction, reference_step_function

MODES = ("series1", "series2", "exact1", "exact2")


@dataclass(frozen=True)
class EdgeCut:
    """Minimized stripe cut of one edge class."""

    k: int
    s: float
    delta: float
    area: float


@dataclass(frozen=True)
class DensityRecord:
    """One evaluation of the cut-body packing at a family parameter."""

    eps: float
    mode: str
    body_area: float
    cut_area: float
    tortoise_area: float
    density: float
    per_edge: tuple[EdgeCut, ...]

    def stripes(self) -> dict[int, tuple[float, float]]:
        """Per-class (shift, tilt) map as used by the avoidance checker."""
        return {e.k: (e.s, e.delta) for e in self.per_edge}


# ---------------------------------------------------------------------------
# Exact pair objective: clip the two placed bodies against the stripe lines


def _edge_pair_bodies(
    q: StepFunction, eps: float, k: int, config: LatticeConfig
) -> tuple[ArcBody, ArcBody]:
    """The two body copies across the representative class-k edge.

    The edge runs along +x from the left copy at the origin to the right
    copy at distance one lattice constant; each copy carries its color's
    rotation and (for rotated colors) the eps-scaled shift.
    """
    c_l = left_color_of_class(k)
    c_r = (c_l + 1) % 3
    anchor = (eps * config.shift[0], eps * config.shift[1])
    out = []
    for c, pos in ((c_l, (0.0, 0.0)), (c_r, (config.lattice_constant, 0.0))):
        out.append(transform(build_body(q, eps, anchor=anchor), rotation_of_color(c), pos))
    return out[0], out[1]


def pair_clip_area(
    left: ArcBody, right: ArcBody, s: float, delta: float, config: LatticeConfig
) -> float:
    """Exact area removed from both copies by the stripe at (s, delta)."""
    n, c_left, c_right = _stripe_lines((0.0, 0.0), 0.0, s, delta, 2.0)
    return halfplane_clip_area(left, n, c_left) + halfplane_clip_area(
        right, -np.asarray(n), -c_right
    )


def _minimize_pair_clip(
    q: StepFunction,
    eps: float,
    k: int,
    config: LatticeConfig,
    cut: PairCut,
    with_tilt: bool,
) -> EdgeCut:
    left, right = _edge_pair_bodies(q, eps, k, config)
    s0 = series_shift_minimizer(cut)
    if not with_tilt:
        res = minimize_scalar(
            lambda s: pair_clip_area(left, right, s, 0.0, config),
            bounds=(s0 - 0.05, s0 + 0.05),
            method="bounded",
            options={"xatol": 1e-12},
        )
        if not res.success:
            raise RuntimeError(f"stripe-shift minimization failed: {res.message}")
        return EdgeCut(k=k, s=float(res.x), delta=0.0, area=float(res.fun))

    _, delta0 = series_tilt_minimizer(cut)
    best = None
    for seed in ((s0, delta0), (s0, -delta0), (s0, 0.0)):
        res = minimize(
            lambda x: pair_clip_area(left, right, x[0], x[1], config),
            x0=list(seed),
            method="Nelder-Mead",
            options={"xatol": 1e-11, "fatol": 1e-15, "maxiter": 2000},
        )
        if best is None or res.fun < best.fun:
            best = res
    return EdgeCut(k=k, s=float(best.x[0]), delta=float(best.x[1]), area=float(best.fun))


# ---------------------------------------------------------------------------
# Density evaluation


def tortoise_area(
    eps: float,
    mode: str = "series2",
    *,
    q: StepFunction | None = None,
    config: LatticeConfig | None = None,
    include_shift: bool = True,
) -> DensityRecord:
    """Area and density of the cut body at family parameter ``eps``.

    The body area minus the three minimized stripe-pair areas; the cell
    is a rhombus of side one lattice constant.  ``include_shift=False``
    zeroes the pre-rotation shift of the rotated copies.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if q is None:
        q = reference_step_function()
    if config is None:
        config = default_config(include_shift)
    elif not include_shift:
        config = LatticeConfig(config.lattice_constant, (0.0, 0.0))

    body = build_body(q, eps)
    a_body = body_area(body)
    shift = config.shift if config.shift != (0.0, 0.0) else None

    per_edge = []
    for k in range(3):
        cut = cut_parameters(q, eps, k, shift, body=body)
        if mode == "series1":
            s, area = minimize_pair_shift(cut, mode="series")
            per_edge.append(EdgeCut(k=k, s=s, delta=0.0, area=area))
        elif mode == "series2":
            s, delta, area = minimize_pair_shift_tilt(cut, mode="series")
            per_edge.append(EdgeCut(k=k, s=s, delta=delta, area=area))
        else:
            per_edge.append(
                _minimize_pair_clip(q, eps, k, config, cut, with_tilt=(mode == "exact2"))
            )

    a_cut = sum(e.area for e in per_edge)
    a_t = a_body - a_cut
    cell = config.lattice_constant**2 * math.sqrt(3.0) / 2.0
    return DensityRecord(
        eps=eps,
        mode=mode,
        body_area=a_body,
        cut_area=a_cut,
        tortoise_area=a_t,
        density=a_t / cell,
        per_edge=tuple(per_edge),
    )


def scan(
    eps_values,
    mode: str = "series2",
    **kwargs,
) -> list[DensityRecord]:
    """Evaluate the density at each family parameter in ``eps_values``."""
    return [tortoise_area(float(e), mode, **kwargs) for e in eps_values]


# ---------------------------------------------------------------------------
# Closed-form second-order coefficients (series modes)


def _unit_cuts(
    q: StepFunction, include_shift: bool, config: LatticeConfig | None = None
) -> list[PairCut]:
    """Per-class cut geometry at unit eps (all entries are linear in eps)."""
    if config is None:
        config = default_config(include_shift)
    shift = config.shift if include_shift else None
    h = 0.125
    body = build_body(q, h)
    return [
        cut_parameters(q, h, k, shift, body=body).scaled(1.0 / h) for k in range(3)
    ]


def series_cut_coefficients(
    q: StepFunction | None = None,
    mode: str = "series2",
    include_shift: bool = True,
    config: LatticeConfig | None = None,
    pairing: str = "upper",
) -> tuple[float, float]:
    """(linear, quadratic) eps-coefficients of the minimized cut-area sum.

    The sum of the three minimized pair areas is
    6*a0 + linear*eps + quadratic*eps**2 in the series modes.
    """
    if q is None:
        q = reference_step_function()
    if mode not in ("series1", "series2"):
        raise ValueError(f"closed forms exist only for series modes, got {mode!r}")
    sc = series_coefficients()
    linear = 0.0
    quad = 0.0
    for cut in _unit_cuts(q, include_shift, config):
        linear += sc.b * cut.d_x + 0.5 * sc.c * cut.r_s
        quad += (
            0.25 * sc.d * cut.d_x**2
            + 0.25 * sc.e * cut.d_x * cut.r_s
            - sc.e**2 / (16.0 * sc.d) * cut.r_l**2
            + 0.25 * sc.f * cut.r_s2
        )
        if mode == "series2":
            r_t = cut.r_u if pairing == "upper" else cut.r_c
            quad -= (sc.k * r_t - 2.0 * sc.b * cut.d_y) ** 2 / (
                16.0 * (sc.l + sc.b)
            )
    return linear, quad


def body_area_coefficient(q: StepFunction | None = None) -> float:
    """c2 in area(eps) = pi + c2 * eps**2 (exact: the area is quadratic)."""
    if q is None:
        q = reference_step_function()
    h = 0.25
    a_plus = body_area(build_body(q, h))
    a_minus = body_area(build_body(q, -h))
    return (a_plus + a_minus - 2.0 * math.pi) / (2.0 * h * h)


def series_net_coefficient(
    q: StepFunction | None = None,
    mode: str = "series2",
    include_shift: bool = True,
    config: LatticeConfig | None = None,
) -> float:
    """Second-order coefficient of the cut-body area, series closed form.

    Positive means the family improves on the disc-based construction.
    """
    _, quad = series_cut_coefficients(q, mode, include_shift, config)
    return body_area_coefficient(q) - quad


# ---------------------------------------------------------------------------
# Even-polynomial fit of scanned areas


@dataclass(frozen=True)
class QuadraticFit:
    """Least-squares fit area(eps) ~ a0 + c2*eps^2 + c4*eps^4 (+ odd nuisance)."""

    a0: float
    c2: float
    c4: float
    max_residual: float


def fit_eps2_coefficient(eps_values, areas, *, odd_nuisance: bool = True) -> QuadraticFit:
    """Fit a0 + c2*eps^2 + c4*eps^4 to (eps, area) samples.

    The exactly-clipped areas are not even functions of eps (the series
    areas are), so by default cubic and quintic nuisance terms are
    included; on a symmetric sample grid they leave a0, c2, c4 unchanged
    and only keep genuine odd content out of the residual.
    """
    eps_arr = np.asarray(list(eps_values), dtype=float)
    y = np.asarray(list(areas), dtype=float)
    powers = [0, 2, 4] + ([3, 5] if odd_nuisance else [])
    if len(eps_arr) < len(powers):
        raise ValueError(f"need at least {len(powers)} samples for this fit")
    design = np.stack([eps_arr**p for p in powers], axis=-1)
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = float(np.max(np.abs(design @ coef - y)))
    return QuadraticFit(a0=float(coef[0]), c2=float(coef[1]), c4=float(coef[2]),
                        max_residual=resid)


DEFAULT_FIT_EPS = (-0.08, -0.04, -0.02, -0.01, 0.01, 0.02, 0.04, 0.08)


def fit_net_coefficient(
    mode: str = "exact2",
    eps_values=DEFAULT_FIT_EPS,
    **kwargs,
) -> QuadraticFit:
    """Fit the eps^2 coefficient of the cut-body area in any mode."""
    records = scan(eps_values, mode, **kwargs)
    return fit_eps2_coefficient(eps_values, [r.tortoise_area for r in records])


# ---------------------------------------------------------------------------
# Tabular output


SCAN_FIELDS = ("eps", "mode", "body_area", "cut_area", "tortoise_area", "density")


def record_row(r: DensityRecord) -> dict:
    row = {f: getattr(r, f) for f in SCAN_FIELDS}
    for e in r.per_edge:
        row[f"s_{e.k}"] = e.s
        row[f"delta_{e.k}"] = e.delta
        row[f"pair_area_{e.k}"] = e.area
    return row


def write_scan_csv(records: list[DensityRecord], path: str | Path) -> None:
    rows = [record_row(r) for r in records]
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)


def write_scan_json(records: list[DensityRecord], path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump([record_row(r) for r in records], fh, indent=2)
