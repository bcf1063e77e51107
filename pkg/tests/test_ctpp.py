"""Piecewise-planar validation, evaluation, interpolation, extension, bumps."""

import math
import random
from fractions import Fraction

import pytest

from planevar.geom import P, Polygon, Rectangle, Triangulation, inradius
from planevar.variation import (
    PlanarCoeffs,
    SampledFunction,
    SearchConfig,
    lipschitz_constant,
    var_exact_small,
    var_search,
)
from planevar.ctpp import (
    BadSpec,
    BumpSpec,
    CtppFunction,
    CtppSum,
    NotStarPlanar,
    PointOutsidePolygon,
    classify_point,
    eval_ctpp,
    extend_to_polygon,
    interpolate_grid,
    make_bumps,
    pyramid_bump,
    pyramid_ctpp,
    solve_plane,
    star_planar_bound,
    triangle_lipschitz_report,
    validate_ctpp,
)
from planevar.onedim import bv_norm_1d

RECT01 = Rectangle.of(0, 1, 0, 1)


class TestValidate:
    def test_planar_on_grid_valid(self):
        g = interpolate_grid(lambda v: 2 * v.x - 3 * v.y + 1, RECT01, 2)
        assert validate_ctpp(g) == []

    def test_shared_edge_on_kernel_line_valid(self):
        tri = Triangulation((P(0, 0), P(0, 1), P(-1, 0), P(1, 1)),
                            ((0, 1, 2), (0, 3, 1)))
        g = CtppFunction(tri, (PlanarCoeffs(Fraction(0), Fraction(0), Fraction(0)),
                               PlanarCoeffs(Fraction(1), Fraction(0), Fraction(0))))
        assert validate_ctpp(g) == []  # both pieces vanish on x = 0

    def test_shared_edge_off_kernel_violates(self):
        tri = Triangulation((P(0, 0), P(1, 0), P(1, 1), P(2, 0)),
                            ((0, 1, 2), (1, 3, 2)))
        g = CtppFunction(tri, (PlanarCoeffs(Fraction(1), Fraction(0), Fraction(0)),
                               PlanarCoeffs(Fraction(0), Fraction(0), Fraction(0))))
        violations = validate_ctpp(g)
        assert len(violations) == 1
        v = violations[0]
        assert v.values[0] != v.values[1] and v.values[2] != v.values[3]

    def test_float_tolerance(self):
        tri = Triangulation((P(0, 0), P(1, 0), P(1, 1), P(0, 1)),
                            ((0, 1, 2), (0, 2, 3)))
        g = CtppFunction(tri, (PlanarCoeffs(1.0, 0.0, 0.0),
                               PlanarCoeffs(1.0 + 1e-12, 0.0, 0.0)))
        assert validate_ctpp(g) == []


class TestEval:
    def test_planar(self):
        g = interpolate_grid(lambda v: v.x, RECT01, 1)
        assert eval_ctpp(g, P(Fraction(1, 2), Fraction(1, 3))) == Fraction(1, 2)

    def test_xy_interpolant_at_centre(self):
        g = interpolate_grid(lambda v: v.x * v.y, RECT01, 1)
        assert eval_ctpp(g, P(Fraction(1, 2), Fraction(1, 2))) == Fraction(1, 2)
        # lower triangle carries z = y, upper z = x
        assert (g.coeffs[0].a, g.coeffs[0].b) == (0, 1)
        assert (g.coeffs[1].a, g.coeffs[1].b) == (1, 0)

    def test_pyramid_values(self):
        assert pyramid_bump(P(0, 0)) == 1
        assert pyramid_bump(P(1, Fraction(2, 3))) == 0
        assert pyramid_bump(P(Fraction(1, 2), Fraction(1, 4))) == Fraction(1, 2)

    def test_outside_raises(self):
        g = interpolate_grid(lambda v: v.x, RECT01, 1)
        with pytest.raises(PointOutsidePolygon):
            eval_ctpp(g, P(2, 2))


class TestClassify:
    def test_tags(self):
        g = interpolate_grid(lambda v: v.x, RECT01, 2)
        assert classify_point(g, P(Fraction(1, 8), Fraction(1, 16))).tag == "planar"
        mid_edge = classify_point(g, P(Fraction(1, 4), Fraction(1, 4)))
        assert mid_edge.tag == "edge" and mid_edge.triangle_count == 2
        centre = classify_point(g, P(Fraction(1, 2), Fraction(1, 2)))
        assert centre.tag == "vertex" and centre.triangle_count == 6

    def test_edge_point_on_one_shared_edge(self):
        g = interpolate_grid(lambda v: v.x, RECT01, 2)
        p = P(Fraction(1, 4), Fraction(1, 4))
        on_shared = 0
        for (i, j), _, _ in g.tri.shared_edges():
            a, b = g.tri.vertices[i], g.tri.vertices[j]
            from planevar.geom import cross
            if cross(a, b, p) == 0 and min(a.x, b.x) <= p.x <= max(a.x, b.x) \
               and min(a.y, b.y) <= p.y <= max(a.y, b.y):
                on_shared += 1
        assert on_shared == 1


class TestInterpolateGrid:
    def test_reproduces_planar_exactly(self):
        coeffs = PlanarCoeffs(Fraction(2, 3), Fraction(-1, 5), Fraction(7))
        g = interpolate_grid(lambda v: coeffs.eval(v), RECT01, 3)
        rng = random.Random(5)
        for _ in range(20):
            p = P(Fraction(rng.randint(0, 12), 12), Fraction(rng.randint(0, 12), 12))
            assert eval_ctpp(g, p) == coeffs.eval(p)

    def test_projection_property(self):
        g = interpolate_grid(lambda v: v.x * v.y, RECT01, 3)
        again = interpolate_grid(lambda v: eval_ctpp(g, v), RECT01, 3)
        assert all((a.a, a.b, a.c) == (b.a, b.b, b.c)
                   for a, b in zip(g.coeffs, again.coeffs))

    def test_oracle_missing_vertex(self):
        from planevar.ctpp import OracleMissingVertex
        with pytest.raises(OracleMissingVertex):
            interpolate_grid({P(0, 0): Fraction(1)}, RECT01, 1)

    def test_c1_error_bound_small(self):
        # measured sup error within the modulus of f at the cell diameter scale
        n = 8
        g = interpolate_grid(lambda v: math.sin(float(v.x)) * math.cos(float(v.y)),
                             RECT01, n)
        rng = random.Random(9)
        worst = 0.0
        for _ in range(300):
            x = Fraction(rng.randint(0, 64), 64)
            y = Fraction(rng.randint(0, 64), 64)
            err = abs(float(eval_ctpp(g, P(x, y)))
                      - math.sin(float(x)) * math.cos(float(y)))
            worst = max(worst, err)
        diam = math.sqrt(2) / n
        assert worst <= diam  # coarse sanity; the acceptance suite is sharp


class TestExtend:
    def test_planar_extension_agrees_on_carrier(self):
        g = interpolate_grid(lambda v: v.x, RECT01, 1)
        ext = extend_to_polygon(g, Polygon((P(-1, -1), P(2, -1), P(2, 2), P(-1, 2))))
        assert validate_ctpp(ext) == []
        rng = random.Random(3)
        for _ in range(25):
            p = P(Fraction(rng.randint(0, 8), 8), Fraction(rng.randint(0, 8), 8))
            assert eval_ctpp(ext, p) == p.x
        assert ext.tri.total_area() == 9

    def test_xy_extension_valid(self):
        g = interpolate_grid(lambda v: v.x * v.y, RECT01, 1)
        ext = extend_to_polygon(g, Polygon((P(0, 0), P(2, 0), P(2, 1), P(0, 1))))
        assert validate_ctpp(ext) == []
        assert ext.tri.total_area() == 2

    def test_variation_witness_replay(self):
        g = interpolate_grid(lambda v: v.x * v.y, RECT01, 1)
        ext = extend_to_polygon(g, Polygon((P(-1, -1), P(2, -1), P(2, 2), P(-1, 2))))
        pts = tuple(P(Fraction(i, 2), Fraction(j, 2)) for i in range(3)
                    for j in range(3))
        on_g = g.sample(pts)
        on_ext = ext.sample(pts)
        assert on_g.values == on_ext.values
        assert var_exact_small(on_g.restrict(pts[:6]), 4).value == \
            var_exact_small(on_ext.restrict(pts[:6]), 4).value

    def test_nonconvex_target_rejected(self):
        from planevar.ctpp import NotContainable
        g = interpolate_grid(lambda v: v.x, RECT01, 1)
        hook = Polygon((P(-2, -2), P(3, -2), P(3, 3), P(2, 3), P(2, -1), P(-2, -1)))
        with pytest.raises(NotContainable):
            extend_to_polygon(g, hook)


class TestStarPlanar:
    def _abs_sample(self):
        pts = tuple(P(Fraction(i, 2) - 1, Fraction(j, 2) - 1)
                    for j in range(5) for i in range(5))
        return SampledFunction(pts, tuple(abs(p.x) for p in pts))

    def test_absolute_value_bound(self):
        f = self._abs_sample()
        bound = star_planar_bound(
            f, P(0, 0), [P(0, 1), P(0, -1)],
            [PlanarCoeffs(Fraction(-1), Fraction(0), Fraction(0)),
             PlanarCoeffs(Fraction(1), Fraction(0), Fraction(0))])
        assert bound == 4
        est = var_search(f, SearchConfig(iters=1500, restarts=4, seed=0))
        assert est.value <= bound
        assert est.value >= 2  # the tent's one-dimensional variation

    def test_constant(self):
        pts = tuple(P(Fraction(i) - 1, Fraction(j) - 1) for j in range(3)
                    for i in range(3))
        f = SampledFunction(pts, (Fraction(2),) * 9)
        c = PlanarCoeffs(Fraction(0), Fraction(0), Fraction(2))
        assert star_planar_bound(f, P(0, 0), [P(0, 1), P(0, -1)], [c, c]) == 0

    def test_planar_two_rays_slack(self):
        pts = tuple(P(Fraction(i) - 1, Fraction(j) - 1) for j in range(3)
                    for i in range(3))
        c = PlanarCoeffs(Fraction(1), Fraction(0), Fraction(0))
        f = SampledFunction(pts, tuple(c.eval(p) for p in pts))
        bound = star_planar_bound(f, P(0, 0), [P(0, 1), P(0, -1)], [c, c])
        assert bound == 4 * 2  # 2n * (max - min) with n = 2

    def test_not_star_planar(self):
        f = self._abs_sample()
        with pytest.raises(NotStarPlanar):
            star_planar_bound(
                f, P(0, 0), [P(0, 1), P(0, -1)],
                [PlanarCoeffs(Fraction(1), Fraction(0), Fraction(0)),
                 PlanarCoeffs(Fraction(1), Fraction(0), Fraction(0))])


class TestBumps:
    def test_plateau_norm_three(self):
        for s, d in ((Fraction(1, 2), Fraction(1)), (Fraction(1, 3), Fraction(1, 2))):
            b = make_bumps(BumpSpec.of(s, d))
            assert bv_norm_1d(b.g_s_function()) == 3

    def test_chi_endpoints(self):
        b = make_bumps(BumpSpec.of(Fraction(1, 2), Fraction(1)))
        assert b.chi(P(0, 0)) == 0
        assert b.chi(P(1, 1)) == 1

    def test_pyramid_search_window(self):
        pc = pyramid_ctpp()
        pts = tuple(P(Fraction(i, 2) - 1, Fraction(j, 2) - 1)
                    for j in range(5) for i in range(5))
        f = pc.sample(pts)
        est = var_search(f, SearchConfig(iters=3000, restarts=4, seed=0))
        assert 2 <= est.value <= 4
        assert est.stats["max_objective_seen"] <= 4

    def test_bad_spec(self):
        with pytest.raises(BadSpec):
            BumpSpec.of(2, 1)

    def test_chi_product_norm_bound(self):
        # chi = g_s(x) g_s(y): variation estimates never exceed the algebra
        # bound |chi|_BV <= |g_s|_BV^2 = 9, i.e. var <= 9 - sup = 8
        b = make_bumps(BumpSpec.of(Fraction(1, 2), Fraction(1)))
        xs = b.g_s_breakpoints()
        pts = tuple(P(x, y) for x in xs for y in xs)
        f = SampledFunction(pts, tuple(b.chi(p) for p in pts))
        est = var_search(f, SearchConfig(iters=4000, restarts=4, seed=2))
        assert est.stats["max_objective_seen"] <= 8 + 1e-9
        assert float(est.value) + float(f.sup_abs()) <= 9 + 1e-9


class TestTriangleBound:
    def test_all_constructions_obey_gradient_bound(self):
        funcs = [
            pyramid_ctpp(),
            interpolate_grid(lambda v: v.x * v.y, RECT01, 3),
            interpolate_grid(lambda v: math.sin(float(v.x)) + float(v.y) ** 2,
                             RECT01, 2),
        ]
        for g in funcs:
            rep = triangle_lipschitz_report(g)
            assert all(r.ok for r in rep)

    def test_lip_and_bv_chain(self):
        g = interpolate_grid(lambda v: v.x * v.y, RECT01, 2)
        pts = tuple(P(Fraction(i, 4), Fraction(j, 4)) for i in range(5)
                    for j in range(5))
        sample = g.sample(pts)
        r_min = min(float(inradius(g.tri.triangle(i)).lo)
                    for i in range(len(g.tri.triangles)))
        sup = max(abs(complex(v)) for v in sample.values)
        lip = lipschitz_constant(sample)
        assert lip <= 2 * sup / r_min + 1e-9
        est = var_search(sample, SearchConfig(iters=1000, restarts=2, seed=0))
        diam = math.sqrt(float(sample.diameter_sq()))
        assert float(est.value) <= diam * lip + 1e-9


def test_vector_space_closure_lazy_sum():
    g1 = interpolate_grid(lambda v: v.x, RECT01, 2)
    g2 = interpolate_grid(lambda v: v.x * v.y, RECT01, 2)
    s = CtppSum((g1, g2))
    rng = random.Random(1)
    for _ in range(25):
        p = P(Fraction(rng.randint(0, 12), 12), Fraction(rng.randint(0, 12), 12))
        assert s.eval(p) == eval_ctpp(g1, p) + eval_ctpp(g2, p)


def test_solve_plane_roundtrip():
    c = solve_plane(P(0, 0), P(1, 0), P(0, 1), Fraction(1), Fraction(0), Fraction(0))
    assert (c.a, c.b, c.c) == (-1, -1, 1)
