"""Direct quadrature of the defining triple integral.

Serves as the ground truth the series arrangements are checked against:
G is computed straight from its definition as (1/pi^3) times the
integral of cos(lx)cos(my)cos(nz)/(t - omega) over [0, pi]^3 by
tensor-product Gauss-Legendre rules on subdivided cells.

The structure function attains its maximum 2+gamma at the two cube
corners (0,0,0) and (pi,pi,pi), so for t near the band edge the
integrand has a 1/|r|^2 spike at each.  The integrand is symmetric
under (x,y,z) -> (pi-x, pi-y, pi-z) whenever l+m+n is even (the only
case admitted by GreenParams), so the domain is folded to
x in [0, pi/2], doubled, leaving a single spiky corner at the origin.
That corner is covered by geometrically shrinking dyadic shells, each
smooth on its own scale.  Denominators are assembled from versines
(2 sin^2(x/2)) rather than 1-cos differences, which keeps the corner
cells free of subtractive cancellation; at t = 2+gamma the integrable
singularity never coincides with a quadrature node.

All cell contributions are reduced with math.fsum in a fixed order, so
a given QuadratureSpec reproduces results bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .params import GreenParams, SeriesEvaluation

PI3 = math.pi**3
_HALF = math.pi / 2.0


@dataclass(frozen=True)
class QuadratureSpec:
    """Resolution knobs; the defaults handle t >= 3.5 to ~1e-10."""

    nodes_per_axis: int = 24
    subdivisions_per_axis: int = 4
    corner_refinement_levels: int = 12
    target_tol: float = 1e-10

    def __post_init__(self) -> None:
        if self.nodes_per_axis < 4:
            raise ValueError("nodes_per_axis must be at least 4")
        if self.subdivisions_per_axis < 1:
            raise ValueError("subdivisions_per_axis must be at least 1")
        if self.corner_refinement_levels < 0:
            raise ValueError("corner_refinement_levels must be non-negative")
        if not (math.isfinite(self.target_tol) and self.target_tol > 0.0):
            raise ValueError("target_tol must be positive and finite")


def omega(x, y, z, gamma: float = 1.0):
    """Structure function gamma*cos x cos y + cos y cos z + cos z cos x.

    Accepts scalars or numpy arrays.  Range is [-(something below
    2+gamma), 2+gamma]; the maximum sits at (0,0,0) and (pi,pi,pi).
    """
    cx, cy, cz = np.cos(x), np.cos(y), np.cos(z)
    return gamma * cx * cy + cy * cz + cz * cx


@lru_cache(maxsize=32)
def _gl_nodes(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def _axis_rule(lo: float, hi: float, nodes: int, cells: int):
    """Composite Gauss-Legendre points and weights on [lo, hi]."""
    x, w = _gl_nodes(nodes)
    edges = np.linspace(lo, hi, cells + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return pts, wts


def _box_sum(params: GreenParams, lo, hi, nodes: int, cells: int):
    """Integral of the raw integrand over one box (no 1/pi^3 factor).

    t - omega is expanded in versines v = 2 sin^2(x/2):
    t - omega = (t-2-gamma) + gamma*q(x,y) + q(y,z) + q(z,x) with
    q(u,v) = vu + vv - vu*vv, every summand non-negative on the domain,
    so the denominator near the origin corner is built from positive
    pieces instead of differences of cosines.
    """
    t, gamma = params.t, params.gamma
    shift = t - 2.0 - gamma
    px, wx = _axis_rule(lo[0], hi[0], nodes, cells)
    py, wy = _axis_rule(lo[1], hi[1], nodes, cells)
    pz, wz = _axis_rule(lo[2], hi[2], nodes, cells)
    vx = 2.0 * np.sin(0.5 * px) ** 2
    vy = 2.0 * np.sin(0.5 * py) ** 2
    vz = 2.0 * np.sin(0.5 * pz) ** 2
    qxy = vx[:, None] + vy[None, :] - vx[:, None] * vy[None, :]
    qyz = vy[:, None] + vz[None, :] - vy[:, None] * vz[None, :]
    qzx = vz[:, None] + vx[None, :] - vz[:, None] * vx[None, :]
    denom = shift + gamma * qxy[:, :, None] + qyz[None, :, :] + qzx.T[:, None, :]
    num = (
        (np.cos(params.l * px) * wx)[:, None, None]
        * (np.cos(params.m * py) * wy)[None, :, None]
        * (np.cos(params.n * pz) * wz)[None, None, :]
    )
    return float(np.sum(num / denom)), px.size * py.size * pz.size


def _corner_boxes(levels: int):
    """Boxes tiling [0, pi/2] x [0, pi]^2, dyadically refined at the origin.

    Yields (lo, hi, is_bulk).  Three bulk boxes cover everything outside
    the corner cube [0, pi/2]^3; the corner cube splits into ``levels``
    shells of 7 boxes each plus one innermost cube.
    """
    s = _HALF
    yield (0.0, s, 0.0), (s, math.pi, s), True
    yield (0.0, 0.0, s), (s, s, math.pi), True
    yield (0.0, s, s), (s, math.pi, math.pi), True
    outer = s
    for _ in range(levels):
        inner = 0.5 * outer
        for bits in range(1, 8):
            bx, by, bz = bits & 1, (bits >> 1) & 1, (bits >> 2) & 1
            lo = (inner if bx else 0.0, inner if by else 0.0, inner if bz else 0.0)
            hi = (outer if bx else inner, outer if by else inner, outer if bz else inner)
            yield lo, hi, False
        outer = inner
    yield (0.0, 0.0, 0.0), (outer, outer, outer), False


def _use_corner(params: GreenParams, spec: QuadratureSpec) -> bool:
    return (params.t - params.band_edge) < 1.0 and spec.corner_refinement_levels >= 1


def _run(params: GreenParams, spec: QuadratureSpec):
    if _use_corner(params, spec):
        shell_cells = max(1, spec.subdivisions_per_axis // 2)
        pieces = []
        count = 0
        for lo, hi, is_bulk in _corner_boxes(spec.corner_refinement_levels):
            cells = spec.subdivisions_per_axis if is_bulk else shell_cells
            value, n = _box_sum(params, lo, hi, spec.nodes_per_axis, cells)
            pieces.append(value)
            count += n
        # half-domain fold: the x >= pi/2 half mirrors through
        # (pi-x, pi-y, pi-z), exact for even l+m+n
        return 2.0 * math.fsum(pieces) / PI3, count
    value, count = _box_sum(
        params,
        (0.0, 0.0, 0.0),
        (math.pi, math.pi, math.pi),
        spec.nodes_per_axis,
        spec.subdivisions_per_axis,
    )
    return value / PI3, count


def green_by_quadrature(
    params: GreenParams, spec: QuadratureSpec | None = None
) -> SeriesEvaluation:
    """Evaluate G by the defining integral.

    Valid for t > 2+gamma; t = 2+gamma is accepted when corner
    refinement is on (the singularity is integrable).  The error
    estimate is the difference against a companion run at half the
    resolution, so ``converged`` reflects self-consistency, not an
    a-priori bound.
    """
    if spec is None:
        spec = QuadratureSpec()
    edge = params.band_edge
    if params.t < edge:
        raise DomainError(
            f"quadrature needs t >= 2+gamma = {edge}; got t = {params.t}"
        )
    if params.t == edge and spec.corner_refinement_levels < 1:
        raise DomainError(
            "t at the band edge requires corner_refinement_levels >= 1"
        )
    fine, n_fine = _run(params, spec)
    coarse_spec = QuadratureSpec(
        nodes_per_axis=max(4, spec.nodes_per_axis // 2),
        subdivisions_per_axis=max(1, spec.subdivisions_per_axis // 2),
        corner_refinement_levels=(
            max(1, spec.corner_refinement_levels - 4)
            if _use_corner(params, spec)
            else spec.corner_refinement_levels
        ),
        target_tol=spec.target_tol,
    )
    coarse, _ = _run(params, coarse_spec)
    estimate = abs(fine - coarse)
    return SeriesEvaluation(
        value=fine,
        terms_used=n_fine,
        abs_error_estimate=estimate,
        method="quadrature",
        converged=estimate <= spec.target_tol,
    )
