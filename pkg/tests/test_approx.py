"""Bernstein approximants, the second-derivative pipeline, matching corrections."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from planevar.geom import P, Rectangle
from planevar.variation import SampledFunction, SearchConfig, var_search
from planevar.ctpp import interpolate_grid
from planevar.approx import (
    C2Oracle,
    InconsistentOracle,
    OverlappingSquares,
    PointNotInDomain,
    Poly2,
    bernstein2,
    c2_to_poly,
    grid_lipschitz,
    match_points,
    match_triangle,
)

RECT01 = Rectangle.of(0, 1, 0, 1)


class TestPoly2:
    def test_eval_and_trim(self):
        p = Poly2.from_rows([[1, 2], [3, 0], [0, 0]])
        assert p.deg_x == 1 and p.deg_y == 1
        assert p.eval(Fraction(1, 2), Fraction(1, 3)) == \
            1 + 2 * Fraction(1, 3) + 3 * Fraction(1, 2)

    def test_derivatives(self):
        x2y = Poly2.from_rows([[0, 0], [0, 0], [0, 1]])
        assert x2y.dx() == Poly2.from_rows([[0, 0], [0, 2]])  # 2xy
        assert x2y.dy() == Poly2.from_rows([[0], [0], [1]])   # x^2

    def test_antiderivatives(self):
        xy = Poly2.from_rows([[0, 0], [0, 1]])
        assert xy.int_x() == Poly2.from_rows([[0, 0], [0, 0], [0, Fraction(1, 2)]])
        assert xy.int_y() == Poly2.from_rows([[0, 0, 0], [0, 0, Fraction(1, 2)]])

    def test_mul(self):
        x = Poly2.from_rows([[0], [1]])
        y = Poly2.from_rows([[0, 1]])
        assert x * y == Poly2.from_rows([[0, 0], [0, 1]])

    def test_restrict_line(self):
        xy = Poly2.from_rows([[0, 0], [0, 1]])
        coeffs = xy.restrict_line(P(0, 0), P(1, 1))  # t^2 along the diagonal
        assert coeffs == (0, 0, 1)

    def test_float_lift_is_exact(self):
        p = Poly2.from_rows([[0.5]])
        assert p.coeffs[0][0] == Fraction(1, 2)


class TestBernstein:
    def test_constant(self):
        assert bernstein2(lambda x, y: Fraction(7), 2) == Poly2.constant(7)

    def test_affine_reproduced(self):
        for d in (1, 2, 5):
            assert bernstein2(lambda x, y: x, d) == Poly2.from_rows([[0], [1]])
            assert bernstein2(lambda x, y: 2 * x - 3 * y + 1, d) == \
                Poly2.from_rows([[1, -3], [2, 0]])

    def test_x_squared_closed_form(self):
        # B_d(x^2) = x^2 + x(1-x)/d
        for d in (1, 2, 4):
            expect = Poly2.from_rows([[0], [Fraction(1, d)],
                                      [1 - Fraction(1, d)]])
            assert bernstein2(lambda x, y: x * x, d) == expect
        b1 = bernstein2(lambda x, y: x * x, 1)
        worst = max(abs(b1.eval(Fraction(k, 16), 0) - Fraction(k, 16) ** 2)
                    for k in range(17))
        assert worst == Fraction(1, 4)  # at x = 1/2

    def test_monotone_convergence_for_convex(self):
        xs = np.linspace(0, 1, 21)
        X, Y = np.meshgrid(xs, xs, indexing="ij")
        for target, F in ((lambda x, y: float(x) ** 2, X ** 2),
                          (lambda x, y: math.exp(float(x) + float(y)),
                           np.exp(X + Y))):
            prev = None
            for d in (2, 4, 8):
                b = bernstein2(target, d)
                err = float(np.max(np.abs(b.eval_float_grid(X, Y) - F)))
                if prev is not None:
                    assert err <= prev + 1e-12
                prev = err


class TestC2Pipeline:
    def test_exact_quadratic_cubic(self):
        f = Poly2.from_rows([[0, 0, 1], [0, 0, 0], [0, 1, 0]])  # x^2 y + y^2
        p, rep = c2_to_poly(C2Oracle.from_poly(f), 2, skip_spot_check=True)
        assert p == f
        assert rep.eps_meas == 0

    def test_constant(self):
        p, _ = c2_to_poly(C2Oracle.from_poly(Poly2.constant(Fraction(5))), 1,
                          skip_spot_check=True)
        assert p == Poly2.constant(5)

    def test_internal_chain_small_degree(self):
        oracle = C2Oracle(
            f=lambda x, y: math.sin(float(x)) * math.exp(float(y)),
            fx=lambda x, y: math.cos(float(x)) * math.exp(float(y)),
            fy=lambda x, y: math.sin(float(x)) * math.exp(float(y)),
            fxx=lambda x, y: -math.sin(float(x)) * math.exp(float(y)),
            fxy=lambda x, y: math.cos(float(x)) * math.exp(float(y)),
            fyy=lambda x, y: math.sin(float(x)) * math.exp(float(y)))
        p, rep = c2_to_poly(oracle, 6, grid_n=21)
        assert rep.passed, rep.checks
        assert rep.hx_err <= 2 * rep.eps_meas + rep.tol
        assert rep.dpx_err <= 3 * rep.eps_meas + rep.tol
        assert rep.dpy_err <= 2 * rep.eps_meas + rep.tol
        assert rep.lip_norm_err <= (4 + math.sqrt(13)) * rep.eps_meas + rep.tol

    def test_inconsistent_oracle(self):
        bad = C2Oracle(
            f=lambda x, y: float(x) ** 2,
            fx=lambda x, y: 0.0,  # wrong
            fy=lambda x, y: 0.0,
            fxx=lambda x, y: 2.0,
            fxy=lambda x, y: 0.0,
            fyy=lambda x, y: 0.0)
        with pytest.raises(InconsistentOracle):
            c2_to_poly(bad, 2)


class TestMatchTriangle:
    def test_zero_difference(self):
        h, rep = match_triangle(P(0, 0), P(1, 0), P(0, 1),
                                (Fraction(1), Fraction(2), Fraction(3)),
                                (Fraction(1), Fraction(2), Fraction(3)))
        assert (h.a, h.b, h.c) == (0, 0, 0)
        assert rep.bv_bound == 0

    def test_unit_corner(self):
        h, rep = match_triangle(P(0, 0), P(1, 0), P(0, 1),
                                (Fraction(1), Fraction(0), Fraction(0)),
                                (Fraction(0), Fraction(0), Fraction(0)))
        assert (h.a, h.b, h.c) == (-1, -1, 1)  # 1 - x - y
        assert rep.bound_3sup == 3
        assert rep.bv_bound == 2  # sup 1 + spread 1

    def test_bound_tightness_window(self):
        rng = random.Random(7)
        for _ in range(60):
            fv = tuple(Fraction(rng.randint(-8, 8), 4) for _ in range(3))
            gv = tuple(Fraction(rng.randint(-8, 8), 4) for _ in range(3))
            if fv == gv:
                continue
            _, rep = match_triangle(P(0, 0), P(1, 0), P(0, 1), fv, gv)
            assert rep.bv_bound <= rep.bound_3sup
            assert rep.bound_3sup <= 3 * rep.bv_bound


class TestMatchPoints:
    def _setup(self):
        g0 = interpolate_grid(lambda v: v.x * v.y, RECT01, 2)
        grid7 = tuple(P(Fraction(i, 6), Fraction(j, 6))
                      for j in range(7) for i in range(7))
        rng = random.Random(3)
        f = SampledFunction(grid7, tuple(Fraction(rng.randint(-12, 12), 8)
                                         for _ in grid7))
        return g0, f, grid7

    def test_empty_points_is_identity(self):
        g0, f, _ = self._setup()
        g, rep = match_points(f, g0, (), Fraction(1, 8))
        assert rep.n_points == 0 and rep.bound_ok
        assert g.eval(P(Fraction(1, 3), Fraction(1, 2))) == \
            g0.eval(P(Fraction(1, 3), Fraction(1, 2)))

    def test_single_point_bound(self):
        g0, f, grid7 = self._setup()
        target = grid7[10]
        g, rep = match_points(f, g0, (target,), Fraction(1, 8))
        assert g.eval(target) == f.value(target)
        c = abs(rep.coefs[0])
        assert rep.var_h_bound == 4 * c
        h_sample = SampledFunction(
            grid7, tuple(g.eval(p) - g0.eval(p) for p in grid7))
        est = var_search(h_sample, SearchConfig(iters=1500, restarts=4, seed=0))
        assert est.value <= 4 * c

    def test_three_points_exact(self):
        g0, f, grid7 = self._setup()
        pts = (P(Fraction(1, 6), Fraction(1, 6)),
               P(Fraction(5, 6), Fraction(1, 6)),
               P(Fraction(1, 2), Fraction(5, 6)))
        g, rep = match_points(f, g0, pts, Fraction(1, 8))
        for p in pts:
            assert g.eval(p) == f.value(p)
        assert rep.bound_ok and rep.interp_max_err == 0

    def test_overlapping_squares(self):
        g0, f, grid7 = self._setup()
        with pytest.raises(OverlappingSquares):
            match_points(f, g0, (grid7[0], grid7[1]), Fraction(1, 8))

    def test_point_not_in_domain(self):
        g0, f, _ = self._setup()
        with pytest.raises(PointNotInDomain):
            match_points(f, g0, (P(5, 5),), Fraction(1, 8))


def test_grid_lipschitz_linear():
    xs = np.linspace(0, 1, 9)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    assert grid_lipschitz(2 * X, X, Y) == pytest.approx(2.0)


def test_high_degree_eval_is_stable():
    # monomial Horner would lose ~3^d of precision; the Bernstein-basis path
    # must agree with exact rational evaluation
    b = bernstein2(lambda x, y: math.exp(float(x)) * math.cos(float(y)), 24)
    xs = np.linspace(0.0, 1.0, 9)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    V = b.eval_float_grid(X, Y)
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            exact = float(b.eval(Fraction(i, 8), Fraction(j, 8)))
            assert abs(V[i, j] - exact) < 1e-12


def test_auto_degree_doubles_until_target():
    from planevar.approx import c2_to_poly_auto
    oracle = C2Oracle(
        f=lambda x, y: math.sin(float(x)) * math.exp(float(y)),
        fx=lambda x, y: math.cos(float(x)) * math.exp(float(y)),
        fy=lambda x, y: math.sin(float(x)) * math.exp(float(y)),
        fxx=lambda x, y: -math.sin(float(x)) * math.exp(float(y)),
        fxy=lambda x, y: math.cos(float(x)) * math.exp(float(y)),
        fyy=lambda x, y: math.sin(float(x)) * math.exp(float(y)))
    p, rep = c2_to_poly_auto(oracle, eps_target=4e-2, max_degree=16, grid_n=17)
    assert rep.eps_meas <= 4e-2
    assert p.deg_x <= 18  # degree 16 inputs give a degree-18 polynomial
    assert rep.passed
