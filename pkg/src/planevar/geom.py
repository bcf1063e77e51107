"""Exact-arithmetic plane primitives.

Points carry rational coordinates and every predicate (side-of-line,
orientation, in-triangle) is decided in exact integer/rational arithmetic.
Crossing counts downstream are discontinuous in the inputs, so floating-point
signs are not acceptable here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence


class GeomError(ValueError):
    pass


class CoincidentPoints(GeomError):
    pass


class DegenerateTriangle(GeomError):
    pass


class NotSimple(GeomError):
    pass


def to_fraction(value) -> Fraction:
    """Coerce int/str/float/Fraction to an exact Fraction.

    Floats are converted exactly (binary expansion), not via repr.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise GeomError(f"non-finite coordinate: {value}")
        return Fraction(value)
    raise GeomError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True, slots=True)
class Point2:
    x: Fraction
    y: Fraction

    def __iter__(self):
        return iter((self.x, self.y))

    def __repr__(self):
        return f"P({self.x}, {self.y})"


def P(x, y) -> Point2:
    """Shorthand constructor coercing coordinates to Fractions."""
    return Point2(to_fraction(x), to_fraction(y))


def cross(o: Point2, a: Point2, b: Point2) -> Fraction:
    """Signed parallelogram area of (a-o, b-o); >0 means left turn."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def dot(o: Point2, a: Point2, b: Point2) -> Fraction:
    return (a.x - o.x) * (b.x - o.x) + (a.y - o.y) * (b.y - o.y)


def dist_sq(a: Point2, b: Point2) -> Fraction:
    return (a.x - b.x) ** 2 + (a.y - b.y) ** 2


class Side(Enum):
    LEFT = -1
    ON = 0
    RIGHT = 1


@dataclass(frozen=True, slots=True)
class Line:
    """Line a*x + b*y = c in canonical form.

    Canonical: a, b, c are coprime integers and the first nonzero of (a, b)
    is positive, so equal lines compare equal.
    """

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a == 0 and self.b == 0:
            raise GeomError("degenerate line: a = b = 0")

    @staticmethod
    def from_coeffs(a, b, c) -> "Line":
        af, bf, cf = to_fraction(a), to_fraction(b), to_fraction(c)
        if af == 0 and bf == 0:
            raise GeomError("degenerate line: a = b = 0")
        scale = math.lcm(af.denominator, bf.denominator, cf.denominator)
        ai, bi, ci = int(af * scale), int(bf * scale), int(cf * scale)
        g = math.gcd(ai, bi, ci)
        ai, bi, ci = ai // g, bi // g, ci // g
        lead = ai if ai != 0 else bi
        if lead < 0:
            ai, bi, ci = -ai, -bi, -ci
        return Line(ai, bi, ci)

    def residual(self, p: Point2) -> Fraction:
        return self.a * p.x + self.b * p.y - self.c

    def contains(self, p: Point2) -> bool:
        return self.residual(p) == 0

    def __str__(self):
        return f"{self.a}x + {self.b}y = {self.c}"


def side_of(line: Line, p: Point2) -> Side:
    """Exact side of ``p`` relative to ``line``: negative residual is LEFT."""
    r = line.residual(p)
    if r == 0:
        return Side.ON
    return Side.RIGHT if r > 0 else Side.LEFT


def line_through(p: Point2, q: Point2) -> Line:
    if p == q:
        raise CoincidentPoints(f"need two distinct points, got {p} twice")
    a = q.y - p.y
    b = p.x - q.x
    c = a * p.x + b * p.y
    return Line.from_coeffs(a, b, c)


def transform_line(line: Line, phi: "AffineMap") -> Line:
    """Image of ``line`` (as a point set) under an invertible affine map."""
    inv = phi.inverse()
    # a'(x,y) = (a,b) . M^-1 applied to (x - t)
    a2 = line.a * inv.m00 + line.b * inv.m10
    b2 = line.a * inv.m01 + line.b * inv.m11
    c2 = line.c - (line.a * inv.t0 + line.b * inv.t1)
    return Line.from_coeffs(a2, b2, c2)


@dataclass(frozen=True, slots=True)
class AffineMap:
    """x |-> M x + t with exact rational entries."""

    m00: Fraction
    m01: Fraction
    m10: Fraction
    m11: Fraction
    t0: Fraction = Fraction(0)
    t1: Fraction = Fraction(0)

    @staticmethod
    def of(m00, m01, m10, m11, t0=0, t1=0) -> "AffineMap":
        return AffineMap(*(to_fraction(v) for v in (m00, m01, m10, m11, t0, t1)))

    @property
    def det(self) -> Fraction:
        return self.m00 * self.m11 - self.m01 * self.m10

    def apply(self, p: Point2) -> Point2:
        return Point2(self.m00 * p.x + self.m01 * p.y + self.t0,
                      self.m10 * p.x + self.m11 * p.y + self.t1)

    def inverse(self) -> "AffineMap":
        d = self.det
        if d == 0:
            raise GeomError("singular affine map")
        i00, i01 = self.m11 / d, -self.m01 / d
        i10, i11 = -self.m10 / d, self.m00 / d
        return AffineMap(i00, i01, i10, i11,
                         -(i00 * self.t0 + i01 * self.t1),
                         -(i10 * self.t0 + i11 * self.t1))


# ---------------------------------------------------------------------------
# square roots with certified rational bounds (inradius involves sqrt)

def sqrt_bounds(value: Fraction, bits: int = 48) -> tuple[Fraction, Fraction]:
    """Rational lo <= sqrt(value) <= hi with hi - lo <= sqrt(value)/2^bits + 2^-bits."""
    if value < 0:
        raise GeomError("sqrt of negative value")
    if value == 0:
        return Fraction(0), Fraction(0)
    num = value.numerator << (2 * bits)
    den = value.denominator
    # floor(sqrt(num/den)) scaled by 2^bits
    root = math.isqrt(num // den)
    lo = Fraction(root, 1 << bits)
    hi = Fraction(root + 2, 1 << bits)
    return lo, hi


def exact_sqrt(value: Fraction):
    """Fraction sqrt if ``value`` is a perfect rational square, else None."""
    if value < 0:
        return None
    rn = math.isqrt(value.numerator)
    rd = math.isqrt(value.denominator)
    if rn * rn == value.numerator and rd * rd == value.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True, slots=True)
class ScalarBounds:
    """A scalar known exactly, or enclosed in a certified rational interval."""

    lo: Fraction
    hi: Fraction
    exact: Fraction | None = None

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def __float__(self):
        if self.exact is not None:
            return float(self.exact)
        return float((self.lo + self.hi) / 2)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


# ---------------------------------------------------------------------------
# triangles

@dataclass(frozen=True, slots=True)
class Triangle:
    v0: Point2
    v1: Point2
    v2: Point2

    def __post_init__(self):
        if cross(self.v0, self.v1, self.v2) == 0:
            raise DegenerateTriangle(f"collinear vertices {self.v0}, {self.v1}, {self.v2}")

    @property
    def vertices(self) -> tuple[Point2, Point2, Point2]:
        return (self.v0, self.v1, self.v2)

    def area(self) -> Fraction:
        return abs(cross(self.v0, self.v1, self.v2)) / 2

    def diameter_sq(self) -> Fraction:
        return max(dist_sq(self.v0, self.v1), dist_sq(self.v1, self.v2),
                   dist_sq(self.v2, self.v0))

    def contains(self, p: Point2) -> bool:
        """Closed-triangle membership, exact."""
        s1 = cross(self.v0, self.v1, p)
        s2 = cross(self.v1, self.v2, p)
        s3 = cross(self.v2, self.v0, p)
        return (s1 >= 0 and s2 >= 0 and s3 >= 0) or (s1 <= 0 and s2 <= 0 and s3 <= 0)

    def contains_interior(self, p: Point2) -> bool:
        s1 = cross(self.v0, self.v1, p)
        s2 = cross(self.v1, self.v2, p)
        s3 = cross(self.v2, self.v0, p)
        return (s1 > 0 and s2 > 0 and s3 > 0) or (s1 < 0 and s2 < 0 and s3 < 0)


def inradius(t: Triangle, bits: int = 48) -> ScalarBounds:
    """Inscribed-circle radius, area/semiperimeter.

    Exact Fraction when all side lengths are rational, otherwise a certified
    interval of width < 1e-12 (the default 48 bits gives ~3e-15 at unit scale;
    widened automatically for large triangles). Downstream bounds should use
    ``lo`` (or ``hi`` when the radius appears in a denominator).
    """
    area = t.area()
    sides_sq = [dist_sq(t.v0, t.v1), dist_sq(t.v1, t.v2), dist_sq(t.v2, t.v0)]
    exact_sides = [exact_sqrt(s) for s in sides_sq]
    if all(e is not None for e in exact_sides):
        s = sum(exact_sides) / 2
        r = area / s
        return ScalarBounds(r, r, exact=r)
    while True:
        lo_sum = Fraction(0)
        hi_sum = Fraction(0)
        for s_sq in sides_sq:
            lo, hi = sqrt_bounds(s_sq, bits)
            lo_sum += lo
            hi_sum += hi
        r_lo = area / (hi_sum / 2)
        r_hi = area / (lo_sum / 2)
        if r_hi - r_lo < Fraction(1, 10**12):
            return ScalarBounds(r_lo, r_hi)
        bits += 16


# ---------------------------------------------------------------------------
# segments and polygons

def _on_segment(p: Point2, a: Point2, b: Point2) -> bool:
    """p lies on the closed segment [a, b] (collinearity assumed checked by caller)."""
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def segments_intersect(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool:
    """Closed segments share at least one point (exact)."""
    d1 = cross(q1, q2, p1)
    d2 = cross(q1, q2, p2)
    d3 = cross(p1, p2, q1)
    d4 = cross(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and \
       ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    if d1 == 0 and _on_segment(p1, q1, q2):
        return True
    if d2 == 0 and _on_segment(p2, q1, q2):
        return True
    if d3 == 0 and _on_segment(q1, p1, p2):
        return True
    if d4 == 0 and _on_segment(q2, p1, p2):
        return True
    return False


def shoelace_area(vertices: Sequence[Point2]) -> Fraction:
    """Signed area; positive for counter-clockwise order."""
    total = Fraction(0)
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        total += a.x * b.y - b.x * a.y
    return total / 2


@dataclass(frozen=True)
class Polygon:
    """Simple polygon; vertices normalized to counter-clockwise order."""

    vertices: tuple[Point2, ...]

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise GeomError("polygon needs at least 3 vertices")
        area = shoelace_area(self.vertices)
        if area == 0:
            raise GeomError("polygon has zero area")
        if area < 0:
            object.__setattr__(self, "vertices", tuple(reversed(self.vertices)))
        _check_simple(self.vertices)

    def area(self) -> Fraction:
        return shoelace_area(self.vertices)


def _check_simple(vertices: Sequence[Point2]) -> None:
    n = len(vertices)
    for i in range(n):
        a1, a2 = vertices[i], vertices[(i + 1) % n]
        if a1 == a2:
            raise NotSimple(f"repeated consecutive vertex {a1}")
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue  # adjacent edges share an endpoint by construction
            b1, b2 = vertices[j], vertices[(j + 1) % n]
            if segments_intersect(a1, a2, b1, b2):
                raise NotSimple(f"edges {i} and {j} intersect")


@dataclass(frozen=True, slots=True)
class Rectangle:
    x_min: Fraction
    x_max: Fraction
    y_min: Fraction
    y_max: Fraction

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise GeomError("rectangle needs x_min < x_max and y_min < y_max")

    @staticmethod
    def of(x_min, x_max, y_min, y_max) -> "Rectangle":
        return Rectangle(*(to_fraction(v) for v in (x_min, x_max, y_min, y_max)))

    def corners(self) -> tuple[Point2, Point2, Point2, Point2]:
        return (Point2(self.x_min, self.y_min), Point2(self.x_max, self.y_min),
                Point2(self.x_max, self.y_max), Point2(self.x_min, self.y_max))

    def contains(self, p: Point2) -> bool:
        return self.x_min <= p.x <= self.x_max and self.y_min <= p.y <= self.y_max

    def centre(self) -> Point2:
        return Point2((self.x_min + self.x_max) / 2, (self.y_min + self.y_max) / 2)

    def to_polygon(self) -> Polygon:
        return Polygon(self.corners())


# ---------------------------------------------------------------------------
# triangulations

@dataclass(frozen=True)
class Triangulation:
    """Vertex list plus triangles as index triples, with an edge adjacency table.

    Triangles are stored in construction order (for ear clipping this is the
    clip order, which the polygon-extension machinery relies on).
    """

    vertices: tuple[Point2, ...]
    triangles: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        adjacency: dict[tuple[int, int], list[int]] = {}
        for t_idx, (i, j, k) in enumerate(self.triangles):
            for e in ((i, j), (j, k), (k, i)):
                key = (min(e), max(e))
                adjacency.setdefault(key, []).append(t_idx)
        for edge, owners in adjacency.items():
            if len(owners) > 2:
                raise GeomError(f"edge {edge} shared by {len(owners)} triangles")
        object.__setattr__(self, "_adjacency", adjacency)

    @property
    def adjacency(self) -> dict[tuple[int, int], list[int]]:
        return self._adjacency  # type: ignore[attr-defined]

    def shared_edges(self) -> list[tuple[tuple[int, int], int, int]]:
        """(edge, triangle, triangle) for every edge owned by exactly two triangles."""
        out = []
        for edge, owners in self.adjacency.items():
            if len(owners) == 2:
                out.append((edge, owners[0], owners[1]))
        return out

    def boundary_edges(self) -> list[tuple[int, int]]:
        return [edge for edge, owners in self.adjacency.items() if len(owners) == 1]

    def triangle(self, idx: int) -> Triangle:
        i, j, k = self.triangles[idx]
        return Triangle(self.vertices[i], self.vertices[j], self.vertices[k])

    def total_area(self) -> Fraction:
        total = Fraction(0)
        for i, j, k in self.triangles:
            total += abs(cross(self.vertices[i], self.vertices[j], self.vertices[k])) / 2
        return total

    def triangles_containing(self, p: Point2) -> list[int]:
        return [idx for idx in range(len(self.triangles)) if self.triangle(idx).contains(p)]


def validate_triangulation(tri: Triangulation) -> None:
    """Assert pairwise interior-disjointness (exact, quadratic scan)."""
    tris = [tri.triangle(i) for i in range(len(tri.triangles))]
    boxes = []
    for t in tris:
        xs = [v.x for v in t.vertices]
        ys = [v.y for v in t.vertices]
        boxes.append((min(xs), max(xs), min(ys), max(ys)))
    for i in range(len(tris)):
        for j in range(i + 1, len(tris)):
            bi, bj = boxes[i], boxes[j]
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                continue
            if _triangles_overlap(tris[i], tris[j]):
                raise GeomError(f"triangles {i} and {j} have overlapping interiors")


def _triangles_overlap(t1: Triangle, t2: Triangle) -> bool:
    """Interiors intersect (exact). Shared edges/vertices do not count."""
    for p in t1.vertices:
        if t2.contains_interior(p):
            return True
    for p in t2.vertices:
        if t1.contains_interior(p):
            return True
    e1 = [(t1.v0, t1.v1), (t1.v1, t1.v2), (t1.v2, t1.v0)]
    e2 = [(t2.v0, t2.v1), (t2.v1, t2.v2), (t2.v2, t2.v0)]
    for a1, a2 in e1:
        for b1, b2 in e2:
            d1 = cross(b1, b2, a1)
            d2 = cross(b1, b2, a2)
            d3 = cross(a1, a2, b1)
            d4 = cross(a1, a2, b2)
            if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and \
               ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
                return True
    # identical triangles with no strict crossings
    if set(t1.vertices) == set(t2.vertices):
        return True
    return False


def ear_clip(polygon: Polygon) -> Triangulation:
    """Triangulate a simple polygon by ear clipping.

    Emits |vertices|-2 triangles in clip order: each clipped triangle adjoins,
    via its chord edge, the part of the polygon triangulated after it. Collinear
    boundary vertices are tolerated; a zero-area ear is skipped (its middle
    vertex dropped) only when no proper ear is available.
    """
    ring = list(range(len(polygon.vertices)))
    return _ear_clip_indices(list(polygon.vertices), ring)


def _ear_clip_indices(vertices: list[Point2], ring: list[int]) -> Triangulation:
    triangles: list[tuple[int, int, int]] = []
    ring = list(ring)
    guard = 0
    while len(ring) > 3:
        guard += 1
        if guard > 4 * len(vertices) ** 2:
            raise NotSimple("ear clipping failed to converge; polygon not simple?")
        clipped = False
        n = len(ring)
        for pos in range(n):
            i_prev, i_cur, i_next = ring[pos - 1], ring[pos], ring[(pos + 1) % n]
            a, b, c = vertices[i_prev], vertices[i_cur], vertices[i_next]
            if cross(a, b, c) <= 0:
                continue
            ear = Triangle(a, b, c)
            blocked = False
            for other in ring:
                if other in (i_prev, i_cur, i_next):
                    continue
                q = vertices[other]
                if q in (a, b, c):
                    continue
                if ear.contains(q):
                    blocked = True
                    break
            if not blocked:
                triangles.append((i_prev, i_cur, i_next))
                del ring[pos]
                clipped = True
                break
        if clipped:
            continue
        # no proper ear: drop a collinear middle vertex (zero-area ear)
        dropped = False
        for pos in range(len(ring)):
            i_prev, i_cur, i_next = ring[pos - 1], ring[pos], ring[(pos + 1) % len(ring)]
            a, b, c = vertices[i_prev], vertices[i_cur], vertices[i_next]
            if cross(a, b, c) == 0:
                del ring[pos]
                dropped = True
                break
        if not dropped:
            raise NotSimple("no ear found; polygon is not simple")
    if len(ring) == 3:
        a, b, c = (vertices[i] for i in ring)
        if cross(a, b, c) != 0:
            triangles.append((ring[0], ring[1], ring[2]))
    return Triangulation(tuple(vertices), tuple(triangles))


def grid_triangulation(rect: Rectangle, n: int) -> Triangulation:
    """2n^2 right triangles on an n x n cell grid, diagonals lower-left to upper-right."""
    if n < 1:
        raise GeomError("grid subdivision must be >= 1")
    w = (rect.x_max - rect.x_min) / n
    h = (rect.y_max - rect.y_min) / n
    vertices = []
    for j in range(n + 1):
        for i in range(n + 1):
            vertices.append(Point2(rect.x_min + i * w, rect.y_min + j * h))

    def vid(i: int, j: int) -> int:
        return j * (n + 1) + i

    triangles = []
    for j in range(n):
        for i in range(n):
            # diagonal from (i, j) to (i+1, j+1)
            triangles.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
            triangles.append((vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)))
    return Triangulation(tuple(vertices), tuple(triangles))


def convex_hull(points: Iterable[Point2]) -> list[Point2]:
    """Monotone-chain hull; collinear points on the hull are dropped."""
    pts = sorted(set(points), key=lambda p: (p.x, p.y))
    if len(pts) <= 2:
        return pts
    lower: list[Point2] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point2] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]
