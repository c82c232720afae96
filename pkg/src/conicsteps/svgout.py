"""Deterministic SVG output: construction figures and traced scenes.

World coordinates are y-up; the y axis is negated only when elements are
serialized, so geometry code stays in math conventions and labels render
upright.  The viewBox is fitted to the drawn content with a 10% margin.
Output is plain SVG 1.1 geometry (no scripts, no CSS), and byte-identical
for identical inputs.

``figure_svg`` renders the six named construction figures;
``REQUIRED_ELEMENTS`` lists, per figure, the element ids a structural
check should find in the document.
"""
from __future__ import annotations

import math

from .conics import Conic, Ellipse, Hyperbola, Parabola, Placement
from .construction import StepTriangle, two_step
from .geometry import Direction, Point, direction, translate
from .optics import Ray, Scene, trace

__all__ = ["FIGURE_IDS", "REQUIRED_ELEMENTS", "figure_svg", "trace_svg"]

FIGURE_IDS = (
    "isosceles",
    "ellipse-two-step",
    "projection",
    "parabola",
    "hyperbola",
    "cassegrain",
)

REQUIRED_ELEMENTS: dict[str, frozenset[str]] = {
    "isosceles": frozenset({"triangle", "reflector", "beam-in", "beam-out"}),
    "ellipse-two-step": frozenset(
        {"curve", "focus-1", "focus-2", "triangle", "reflector", "beam-in", "beam-out"}
    ),
    "projection": frozenset(
        {"curve", "focus-1", "focus-2", "triangle", "proj-1", "proj-2"}
    ),
    "parabola": frozenset(
        {"curve", "directrix", "focus-1", "triangle", "reflector", "beam-in", "beam-out"}
    ),
    "hyperbola": frozenset(
        {"curve", "focus-1", "focus-2", "triangle", "reflector", "beam-in", "beam-out"}
    ),
    "cassegrain": frozenset({"curve", "curve-2", "focus-1", "focus-2", "ray-0", "ray-1"}),
}

_CURVE_SAMPLES = 512


def _f(v: float) -> str:
    return "%.8g" % v


class _SvgDoc:
    """Collects world-coordinate primitives; renders them y-flipped."""

    def __init__(self) -> None:
        self._items: list[tuple] = []
        self._xs: list[float] = []
        self._ys: list[float] = []

    def _track(self, pts: list[Point]) -> None:
        self._xs.extend(p.x for p in pts)
        self._ys.extend(p.y for p in pts)

    def polyline(
        self, elem_id: str, pts: list[Point], closed: bool = False, dashed: bool = False
    ) -> None:
        self._track(pts)
        self._items.append(("polyline", elem_id, list(pts), closed, dashed))

    def segment(self, elem_id: str, p1: Point, p2: Point, dashed: bool = False) -> None:
        self.polyline(elem_id, [p1, p2], dashed=dashed)

    def marker(self, elem_id: str, center: Point) -> None:
        self._track([center])
        self._items.append(("marker", elem_id, center))

    def label(self, text: str, anchor: Point) -> None:
        self._items.append(("label", text, anchor))

    def emit(self, width: int, height: int) -> str:
        if not self._xs:
            self._xs = [0.0, 1.0]
            self._ys = [0.0, 1.0]
        xmin, xmax = min(self._xs), max(self._xs)
        ymin, ymax = min(self._ys), max(self._ys)
        w = xmax - xmin
        h = ymax - ymin
        mx = 0.1 * w if w > 0.0 else 1.0
        my = 0.1 * h if h > 0.0 else 1.0
        vb = (xmin - mx, -ymax - my, w + 2.0 * mx, h + 2.0 * my)
        size = max(vb[2], vb[3])
        stroke = 0.004 * size
        radius = 0.011 * size
        font = 0.045 * size
        body: list[str] = []
        for item in self._items:
            if item[0] == "polyline":
                _, elem_id, pts, closed, dashed = item
                coords = " ".join(f"{_f(p.x)},{_f(-p.y)}" for p in pts)
                tag = "polygon" if closed else "polyline"
                dash = f' stroke-dasharray="{_f(3.0 * stroke)},{_f(2.0 * stroke)}"' if dashed else ""
                body.append(
                    f'<{tag} id="{elem_id}" points="{coords}" fill="none" '
                    f'stroke="black" stroke-width="{_f(stroke)}"{dash}/>'
                )
            elif item[0] == "marker":
                _, elem_id, c = item
                body.append(
                    f'<circle id="{elem_id}" cx="{_f(c.x)}" cy="{_f(-c.y)}" '
                    f'r="{_f(radius)}" fill="black"/>'
                )
            else:
                _, text, p = item
                body.append(
                    f'<text x="{_f(p.x + 1.2 * radius)}" y="{_f(-p.y - 1.2 * radius)}" '
                    f'font-family="serif" font-size="{_f(font)}">{text}</text>'
                )
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{width}" height="{height}" '
            f'viewBox="{_f(vb[0])} {_f(vb[1])} {_f(vb[2])} {_f(vb[3])}">'
        )
        return head + "\n" + "\n".join(body) + "\n</svg>\n"


def _sample(conic: Conic, t0: float, t1: float, elem_id: str, doc: _SvgDoc,
            closed: bool = False) -> None:
    n = _CURVE_SAMPLES
    pts = [conic.point_at(t0 + (t1 - t0) * i / n) for i in range(n + 1)]
    doc.polyline(elem_id, pts, closed=closed)


def _draw_triangle(doc: _SvgDoc, tri: StepTriangle, with_reflector: bool = True) -> None:
    doc.polyline("triangle", [tri.A, tri.D, tri.B], closed=True)
    if with_reflector:
        m = direction(tri.A, tri.B)
        half = 1.6 * tri.delta
        doc.segment("reflector", translate(tri.D, m, -half), translate(tri.D, m, half),
                    dashed=True)
    doc.label("A", tri.A)
    doc.label("D", tri.D)
    doc.label("B", tri.B)


def _figure_isosceles(doc: _SvgDoc) -> None:
    a, b, d = Point(-1.0, 0.0), Point(1.0, 0.0), Point(0.0, 1.0)
    doc.polyline("triangle", [a, d, b], closed=True)
    doc.segment("reflector", Point(-0.8, 1.0), Point(0.8, 1.0), dashed=True)
    doc.segment("beam-in", a, d)
    doc.segment("beam-out", d, b)
    doc.label("A", a)
    doc.label("D", d)
    doc.label("B", b)


def _figure_ellipse(doc: _SvgDoc, delta: float, anchor_param: float) -> None:
    conic = Conic(Ellipse(5.0, 3.0))
    _sample(conic, 0.0, 2.0 * math.pi, "curve", doc, closed=True)
    f1, f2 = conic.focus_points()
    doc.marker("focus-1", f1)
    doc.marker("focus-2", f2)
    doc.label("F1", f1)
    doc.label("F2", f2)
    tri = two_step(conic, conic.point_at(anchor_param), delta)
    doc.segment("beam-in", f1, tri.D)
    doc.segment("beam-out", tri.D, f2)
    _draw_triangle(doc, tri)


def _figure_projection(doc: _SvgDoc, delta: float, anchor_param: float) -> None:
    conic = Conic(Ellipse(5.0, 3.0))
    _sample(conic, 0.0, 2.0 * math.pi, "curve", doc, closed=True)
    f1, f2 = conic.focus_points()
    doc.marker("focus-1", f1)
    doc.marker("focus-2", f2)
    doc.label("F1", f1)
    doc.label("F2", f2)
    tri = two_step(conic, conic.point_at(anchor_param), delta)
    u1, u2 = tri.leg1_dir, tri.leg2_dir
    s1 = (tri.A.x - tri.D.x) * u2.x + (tri.A.y - tri.D.y) * u2.y
    foot1 = Point(tri.D.x + s1 * u2.x, tri.D.y + s1 * u2.y)
    s2 = (tri.B.x - tri.D.x) * u1.x + (tri.B.y - tri.D.y) * u1.y
    foot2 = Point(tri.D.x + s2 * u1.x, tri.D.y + s2 * u1.y)
    doc.segment("proj-1", tri.A, foot1, dashed=True)
    doc.segment("proj-2", tri.B, foot2, dashed=True)
    _draw_triangle(doc, tri, with_reflector=False)


def _figure_parabola(doc: _SvgDoc, delta: float, anchor_param: float) -> None:
    conic = Conic(Parabola(1.0))
    _sample(conic, -2.5, 2.5, "curve", doc)
    focus = conic.focus_points()[0]
    doc.marker("focus-1", focus)
    doc.label("F", focus)
    doc.segment("directrix", Point(-2.5, -1.0), Point(2.5, -1.0), dashed=True)
    tri = two_step(conic, conic.point_at(anchor_param), delta)
    top = max(tri.A.y + 1.0, 1.8)
    doc.segment("beam-in", Point(tri.A.x, top), tri.D)
    doc.segment("beam-out", tri.D, focus)
    _draw_triangle(doc, tri)


def _figure_hyperbola(doc: _SvgDoc, delta: float, anchor_param: float) -> None:
    conic = Conic(Hyperbola(3.0, 4.0, 1))
    _sample(conic, -1.6, 1.6, "curve", doc)
    other = Conic(Hyperbola(3.0, 4.0, -1))
    _sample(other, -1.6, 1.6, "curve-2", doc)
    near, far = conic.focus_points()
    doc.marker("focus-1", near)
    doc.marker("focus-2", far)
    doc.label("F1", near)
    doc.label("F2", far)
    tri = two_step(conic, conic.point_at(anchor_param), delta)
    doc.segment("beam-in", near, tri.D)
    doc.segment("beam-out", tri.D, translate(tri.B, tri.leg2_dir, 1.0))
    _draw_triangle(doc, tri)


def default_cassegrain_scene(n_rays: int = 0) -> Scene:
    """The stock confocal two-mirror layout used by figures and bundled data.

    Parabola p=1 opening upward as the primary; hyperbola a=0.5, b=0.6
    rotated to open downward, translated so its near focus sits exactly on
    the parabola's focus (0, 1); the far focus below the primary's vertex
    is the composition's aim point.  Optionally bundles ``n_rays``
    axis-parallel rays split over both sides of the aperture.
    """
    c_h = math.sqrt(0.61)
    primary = Conic(Parabola(1.0))
    secondary = Conic(
        Hyperbola(0.5, 0.6, -1),
        Placement(tx=0.0, ty=1.0 - c_h, rotate=-0.5 * math.pi),
    )
    rays: list[Ray] = []
    if n_rays:
        down = Direction(0.0, -1.0)
        n_side = n_rays // 2
        for i in range(n_side):
            x = 3.7 if n_side == 1 else 3.7 + (5.0 - 3.7) * i / (n_side - 1)
            rays.append(Ray(Point(x, 8.0), down))
        n_other = n_rays - n_side
        for i in range(n_other):
            x = 3.7 if n_other == 1 else 3.7 + (5.0 - 3.7) * i / (n_other - 1)
            rays.append(Ray(Point(-x, 8.0), down))
    return Scene(
        mirrors=(primary, secondary),
        roles=("primary", "secondary"),
        rays=tuple(rays),
        max_bounces=2,
    )


def _figure_cassegrain(doc: _SvgDoc) -> None:
    scene = default_cassegrain_scene()
    primary, secondary = scene.mirrors
    _sample(primary, -5.2, 5.2, "curve", doc)
    _sample(secondary, -2.6, 2.6, "curve-2", doc)
    shared = primary.focus_points()[0]
    target = secondary.focus_points()[1]
    doc.marker("focus-1", shared)
    doc.marker("focus-2", target)
    doc.label("F1", shared)
    doc.label("F2", target)
    down = Direction(0.0, -1.0)
    offsets = (3.8, 4.4, 5.0, -3.8, -4.4, -5.0)
    for i, x in enumerate(offsets):
        path = trace(scene, Ray(Point(x, 8.0), down))
        pts = [path.ray.origin] + [h.point for h in path.hits]
        pts.append(translate(path.final.origin, path.final.dir, 3.0))
        doc.polyline(f"ray-{i}", pts)


def figure_svg(
    figure_id: str,
    delta: float | None = None,
    anchor_param: float | None = None,
    width: int = 640,
    height: int = 480,
) -> str:
    """Render one of the named construction figures as an SVG document."""
    if figure_id not in FIGURE_IDS:
        raise ValueError(
            f"unknown figure id {figure_id!r}; valid ids: {', '.join(FIGURE_IDS)}"
        )
    doc = _SvgDoc()
    if figure_id == "isosceles":
        _figure_isosceles(doc)
    elif figure_id == "ellipse-two-step":
        _figure_ellipse(doc, 0.5 if delta is None else delta,
                        1.0 if anchor_param is None else anchor_param)
    elif figure_id == "projection":
        _figure_projection(doc, 0.8 if delta is None else delta,
                           1.0 if anchor_param is None else anchor_param)
    elif figure_id == "parabola":
        _figure_parabola(doc, 0.4 if delta is None else delta,
                         1.2 if anchor_param is None else anchor_param)
    elif figure_id == "hyperbola":
        _figure_hyperbola(doc, 0.4 if delta is None else delta,
                          0.5 if anchor_param is None else anchor_param)
    else:
        _figure_cassegrain(doc)
    return doc.emit(width, height)


def trace_svg(
    scene: Scene,
    width: int = 640,
    height: int = 480,
    max_bounces: int | None = None,
) -> str:
    """Draw a scene's mirrors and all its bundled rays."""
    doc = _SvgDoc()
    for i, mirror in enumerate(scene.mirrors):
        elem_id = "curve" if i == 0 else f"curve-{i + 1}"
        s = mirror.shape
        if isinstance(s, Ellipse):
            _sample(mirror, 0.0, 2.0 * math.pi, elem_id, doc, closed=True)
        elif isinstance(s, Parabola):
            w = 6.0 * s.p
            _sample(mirror, -w, w, elem_id, doc)
        else:
            _sample(mirror, -2.6, 2.6, elem_id, doc)
    pair = scene.telescope_pair()
    if pair is not None:
        doc.marker("focus-1", pair[0].focus_points()[0])
        doc.marker("focus-2", pair[1].focus_points()[1])
    for i, ray in enumerate(scene.rays):
        path = trace(scene, ray, max_bounces=max_bounces)
        pts = [path.ray.origin] + [h.point for h in path.hits]
        pts.append(translate(path.final.origin, path.final.dir, 3.0))
        doc.polyline(f"ray-{i}", pts)
    return doc.emit(width, height)
