"""Two-equal-steps walk on a conic and the isosceles apex reflector.

Starting from a point ``A`` on the curve, take two straight steps of the
same length ``delta``:

* ellipse: directly away from one focus, then directly toward the other;
* parabola: straight toward the directrix (parallel to the axis), then
  straight toward the focus;
* hyperbola: directly away from the near focus, then directly away from
  the far focus.

The landing point ``B`` misses the curve by O(delta^2), so the walk closes
up as the step shrinks.  The triangle A-D-B is isosceles with apex ``D``
(both legs have length exactly ``delta``), hence the line through ``D``
parallel to the chord ``A-B`` reflects the first leg into the second leg
exactly, at any step size.  As delta -> 0 that apex line converges to the
tangent, which is the discrete route to the reflective property of each
conic.

``orientation`` selects the direction of travel: "forward" as listed above,
"backward" with the focal roles swapped (for the parabola, both step senses
reversed).  Walks started exactly on an axis vertex retrace themselves
(B == A); such triangles are returned flagged ``degenerate`` and have no
apex reflector.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

from .config import DEFAULT, Tolerances
from .conics import Conic, Ellipse, Hyperbola, Parabola, Shape, as_conic
from .errors import (
    BracketError,
    ConicError,
    DegenerateTriangleError,
    OffCurveError,
    UnsupportedVariantError,
)
from .geometry import (
    Direction,
    Line,
    Point,
    angle_between,
    direction,
    reflect_direction,
    scalar_projection,
    translate,
)

__all__ = [
    "Orientation",
    "StepTriangle",
    "FocalChange",
    "ExactReturn",
    "two_step",
    "apex_reflector",
    "reflect_through_apex",
    "focal_change_error",
    "exact_return",
]

Orientation = Literal["forward", "backward"]


@dataclass(frozen=True)
class StepTriangle:
    """The two-step triangle, in scene coordinates.

    ``A`` is the on-curve start, ``D`` the apex after the first step,
    ``B`` the landing point after the second.  ``leg1_dir`` and
    ``leg2_dir`` are the unit step directions; both legs have length
    ``delta``.  ``residual_b`` is the curve residual at ``B`` and
    ``degenerate`` marks walks that retraced to their start (B == A).
    """

    A: Point
    D: Point
    B: Point
    delta: float
    leg1_dir: Direction
    leg2_dir: Direction
    residual_b: float
    orientation: Orientation
    degenerate: bool


@dataclass(frozen=True)
class FocalChange:
    """Bookkeeping of the two steps against the focal geometry.

    ``proj_gap`` compares the projection of each leg onto the other leg's
    direction; the legs share the apex angle and a common length, so it is
    zero up to roundoff at any step size.  ``parallelism_error`` is the
    angle at the second focus subtended by ``A`` and ``B``: the directions
    A -> F2 and B -> F2 agree only to O(delta).
    """

    proj_gap: float
    parallelism_error: float


@dataclass(frozen=True)
class ExactReturn:
    """A second step re-solved so the walk lands exactly on the curve.

    ``triangle`` has its ``B`` replaced by the exact-return landing point;
    ``t_star`` is the solved second-step length and ``gap`` is
    ``|t_star - delta|``, which shrinks like O(delta^2).
    """

    triangle: StepTriangle
    t_star: float
    gap: float


def _canonical_steps(
    shape: Shape, ac: Point, delta: float, orientation: Orientation
) -> tuple[Direction, Point, Direction, Point]:
    """Step directions and points in the canonical frame."""
    if isinstance(shape, Ellipse):
        f_from, f_to = shape.foci
        if orientation == "backward":
            f_from, f_to = f_to, f_from
        u1 = direction(f_from, ac)
        d = translate(ac, u1, delta)
        u2 = direction(d, f_to)
    elif isinstance(shape, Parabola):
        if orientation == "forward":
            u1 = Direction(0.0, -1.0)
            d = translate(ac, u1, delta)
            u2 = direction(d, shape.focus)
        else:
            u1 = Direction(0.0, 1.0)
            d = translate(ac, u1, delta)
            u2 = direction(shape.focus, d)
    else:
        near, far = shape.foci
        if orientation == "backward":
            near, far = far, near
        u1 = direction(near, ac)
        d = translate(ac, u1, delta)
        u2 = direction(far, d)
    b = translate(d, u2, delta)
    return u1, d, u2, b


def two_step(
    conic: Conic | Shape,
    A: Point,
    delta: float,
    orientation: Orientation = "forward",
    tolerances: Tolerances = DEFAULT,
) -> StepTriangle:
    """Walk two equal steps of length ``delta`` from the on-curve point ``A``.

    Raises OffCurveError if ``A`` is not on the curve within the on-curve
    tolerance, and ValueError for a non-positive or non-finite ``delta``.
    """
    conic = as_conic(conic)
    if not (math.isfinite(delta) and delta > 0.0):
        raise ValueError(f"step length must be positive and finite, got {delta}")
    if orientation not in ("forward", "backward"):
        raise ValueError(f"orientation must be 'forward' or 'backward', got {orientation!r}")
    res_a = conic.residual(A)
    if abs(res_a) > tolerances.on_curve * (1.0 + conic.scale):
        raise OffCurveError(
            f"start point ({A.x!r}, {A.y!r}) is off the curve: "
            f"residual {res_a!r}"
        )
    ac = conic.placement.to_canonical(A)
    u1c, dc, u2c, bc = _canonical_steps(conic.shape, ac, delta, orientation)

    d = conic.placement.to_scene(dc)
    b = conic.placement.to_scene(bc)
    chord = math.hypot(b.x - A.x, b.y - A.y)
    degenerate = chord <= tolerances.degenerate_step * (1.0 + delta)
    return StepTriangle(
        A=A,
        D=d,
        B=b,
        delta=delta,
        leg1_dir=conic.placement.dir_to_scene(u1c),
        leg2_dir=conic.placement.dir_to_scene(u2c),
        residual_b=conic.residual(b),
        orientation=orientation,
        degenerate=degenerate,
    )


def apex_reflector(tri: StepTriangle) -> Line:
    """The mirror line of the triangle: through the apex, parallel to A-B.

    Because the triangle is isosceles, this line reflects the first leg
    into the second exactly.  Raises DegenerateTriangleError for retraced
    walks, whose chord has no direction.

    The chord direction is computed as ``unit(leg1_dir + leg2_dir)``,
    which equals ``unit(B - A)`` for equal legs but does not lose the
    (possibly tiny) chord to round-off in the absolute coordinates.
    """
    if tri.degenerate:
        raise DegenerateTriangleError(
            "a retraced walk (B == A) has no chord and no apex reflector"
        )
    return Line(
        tri.D,
        Direction(
            tri.leg1_dir.x + tri.leg2_dir.x, tri.leg1_dir.y + tri.leg2_dir.y
        ),
    )


def reflect_through_apex(tri: StepTriangle, tolerances: Tolerances = DEFAULT) -> Direction:
    """Reflect the first leg across the apex reflector.

    The result must equal the second leg direction componentwise to the
    identity tolerance; this is the exact (step-size independent) mirror
    property of the isosceles apex.
    """
    reflected = reflect_direction(tri.leg1_dir, apex_reflector(tri))
    err = max(
        abs(reflected.x - tri.leg2_dir.x),
        abs(reflected.y - tri.leg2_dir.y),
    )
    if err > tolerances.identity:
        raise ConicError(
            f"apex reflection mismatch of {err!r} exceeds the identity "
            f"tolerance {tolerances.identity!r}"
        )
    return reflected


def focal_change_error(conic: Conic | Shape, tri: StepTriangle) -> FocalChange:
    """Projection and parallelism bookkeeping for a two-step triangle.

    Only defined for two-focus conics; raises UnsupportedVariantError for
    the parabola, whose second 'focus' is a directrix direction and has no
    subtended angle.
    """
    conic = as_conic(conic)
    if isinstance(conic.shape, Parabola):
        raise UnsupportedVariantError(
            "focal-change bookkeeping needs two foci; the parabola has one"
        )
    p1 = abs(scalar_projection(tri.D - tri.A, tri.leg2_dir))
    p2 = abs(scalar_projection(tri.B - tri.D, tri.leg1_dir))
    proj_gap = abs(p1 - p2)

    foci = conic.focus_points()
    target = foci[1] if tri.orientation == "forward" else foci[0]
    parallelism = angle_between(direction(tri.A, target), direction(tri.B, target))
    return FocalChange(proj_gap=proj_gap, parallelism_error=parallelism)


def _canonical_residual(shape: Shape, kernels_point: Point) -> float:
    """Residual helper in the canonical frame (no placement round-trip)."""
    return Conic(shape).residual(kernels_point)


def exact_return(
    conic: Conic | Shape,
    A: Point,
    delta: float,
    orientation: Orientation = "forward",
    tolerances: Tolerances = DEFAULT,
) -> ExactReturn:
    """Re-solve the second step length so the walk ends exactly on the curve.

    The second leg keeps its direction; its length ``t`` is solved from
    residual(D + t * leg2) = 0 by bisection on the bracket
    [delta/2, 2*delta].  Raises BracketError if the residual does not
    change sign there.  Degenerate (retraced) walks return with
    ``t_star == delta`` unchanged: the retraced second step already ends
    on the curve.
    """
    conic = as_conic(conic)
    tri = two_step(conic, A, delta, orientation, tolerances)
    if tri.degenerate:
        return ExactReturn(triangle=tri, t_star=delta, gap=0.0)

    shape = conic.shape
    dc = conic.placement.to_canonical(tri.D)
    u2c = conic.placement.dir_to_canonical(tri.leg2_dir)

    def f(t: float) -> float:
        return _canonical_residual(
            shape, Point(dc.x + t * u2c.x, dc.y + t * u2c.y)
        )

    lo, hi = 0.5 * delta, 2.0 * delta
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        t_star = lo
    elif fhi == 0.0:
        t_star = hi
    elif (flo > 0.0) == (fhi > 0.0):
        raise BracketError(
            f"curve residual does not change sign on [{lo!r}, {hi!r}]; "
            "cannot bracket the exact-return step"
        )
    else:
        for _ in range(tolerances.bisect_max_iter):
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:
                break
            fmid = f(mid)
            if fmid == 0.0:
                lo = hi = mid
                flo = fhi = fmid
                break
            if (fmid > 0.0) == (flo > 0.0):
                lo, flo = mid, fmid
            else:
                hi, fhi = mid, fmid
            if hi - lo <= tolerances.bisect_rel * max(abs(lo), abs(hi)):
                break
        t_star = lo if abs(flo) <= abs(fhi) else hi

    b_star_c = Point(dc.x + t_star * u2c.x, dc.y + t_star * u2c.y)
    b_star = conic.placement.to_scene(b_star_c)
    chord = math.hypot(b_star.x - A.x, b_star.y - A.y)
    tri_star = replace(
        tri,
        B=b_star,
        residual_b=conic.residual(b_star),
        degenerate=chord <= tolerances.degenerate_step * (1.0 + delta),
    )
    return ExactReturn(triangle=tri_star, t_star=t_star, gap=abs(t_star - delta))
