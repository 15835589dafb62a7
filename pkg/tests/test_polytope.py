import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import grid_params
from oracles import random_unimodular
from toric_cone_lab.polytope import (
    HirzebruchParams,
    Polytope,
    edges,
    hirzebruch_trapezoid,
    is_delzant,
    is_integral,
    lattice_length,
    unit_cube,
    unit_simplex,
)

params_st = st.builds(HirzebruchParams, st.integers(1, 6), st.integers(1, 6), st.integers(0, 6))


def lattice_points_on_segment(p, q):
    """Brute-force count of integer points on a segment with integral endpoints."""
    lo = [min(a, b) for a, b in zip(p, q)]
    hi = [max(a, b) for a, b in zip(p, q)]
    count = 0
    for x in range(int(lo[0]), int(hi[0]) + 1):
        for y in range(int(lo[1]), int(hi[1]) + 1):
            cross = (q[0] - p[0]) * (y - p[1]) - (q[1] - p[1]) * (x - p[0])
            if cross == 0:
                count += 1
    return count


class TestParams:
    def test_from_abm(self):
        p = HirzebruchParams.from_abm(Fraction(5, 2), 1, 1)
        assert (p.b, p.c, p.m) == (1, 2, 1)
        assert p.a == Fraction(5, 2)

    @pytest.mark.parametrize("b, c, m", [(0, 1, 0), (1, 0, 0), (1, 1, -1), (-2, 3, 1)])
    def test_invalid(self, b, c, m):
        with pytest.raises(ValueError):
            HirzebruchParams(b, c, m)

    def test_non_integral_c(self):
        with pytest.raises(ValueError, match="not an integer"):
            HirzebruchParams.from_abm(2, 1, 3)

    def test_rejects_non_int(self):
        with pytest.raises(TypeError):
            HirzebruchParams(Fraction(1), 1, 0)


class TestTrapezoid:
    @pytest.mark.parametrize("abm, vertices", [
        ((2, 1, 0), [(0, 0), (2, 0), (2, 1), (0, 1)]),
        ((3, 1, 2), [(0, 0), (4, 0), (2, 1), (0, 1)]),
        ((5, 2, 4), [(0, 0), (9, 0), (1, 2), (0, 2)]),
    ])
    def test_vertices(self, abm, vertices):
        poly = hirzebruch_trapezoid(HirzebruchParams.from_abm(*abm))
        assert poly.vertices == tuple(tuple(Fraction(x) for x in v) for v in vertices)

    @given(params_st)
    def test_always_delzant_and_integral(self, p):
        poly = hirzebruch_trapezoid(p)
        assert is_delzant(poly)
        assert is_integral(poly)

    @given(params_st)
    def test_boundary_closes(self, p):
        total = [0, 0]
        for e in edges(hirzebruch_trapezoid(p)):
            for i in range(2):
                total[i] += lattice_length(e) * e.primitive_direction[i]
        assert total == [0, 0]


class TestPolytopeValidation:
    def test_clockwise_rejected(self):
        with pytest.raises(ValueError):
            Polytope([(0, 0), (0, 1), (1, 1), (1, 0)])

    def test_non_extreme_rejected(self):
        with pytest.raises(ValueError):
            Polytope([(0, 0), (1, 0), (2, 0), (0, 1)])

    def test_duplicate_rejected(self):
        with pytest.raises(ValueError):
            Polytope([(0, 0), (1, 0), (1, 0), (0, 1)])

    def test_too_few(self):
        with pytest.raises(ValueError):
            Polytope([(0, 0), (1, 0)])

    def test_float_rejected(self):
        with pytest.raises(TypeError):
            Polytope([(0, 0), (1.5, 0), (0, 1)])

    def test_pentagram_rejected(self):
        # every turn is positive but the cycle winds twice
        star = [(2, 0), (-2, 1), (1, -2), (1, 2), (-2, -1)]
        with pytest.raises(ValueError):
            Polytope(star)

    def test_cube_3d(self):
        cube = unit_cube(3)
        assert len(cube.facets()) == 6
        assert len(edges(cube)) == 12
        assert is_delzant(cube)

    def test_non_simple_3d(self):
        pyramid = Polytope([(0, 0, 0), (2, 0, 0), (2, 2, 0), (0, 2, 0), (1, 1, 1)])
        rep = is_delzant(pyramid)
        assert not rep
        assert any(v.reason == "non-simple" for v in rep.failures)


class TestEdges:
    def test_unit_square(self, square):
        es = edges(square)
        assert [e.primitive_direction for e in es] == [(1, 0), (0, 1), (-1, 0), (0, -1)]
        assert all(lattice_length(e) == 1 for e in es)

    def test_slanted_edge(self):
        es = edges(hirzebruch_trapezoid(HirzebruchParams.from_abm(3, 1, 2)))
        slant = next(e for e in es if e.endpoints == (1, 2))
        assert slant.primitive_direction == (-2, 1)
        assert lattice_length(slant) == 1

    def test_rectangle_bottom(self):
        bottom = edges(hirzebruch_trapezoid(HirzebruchParams.from_abm(2, 1, 0)))[0]
        assert bottom.primitive_direction == (1, 0)
        assert lattice_length(bottom) == 2

    def test_rational_edge(self):
        half = Polytope([(0, 0), (Fraction(1, 2), 0), (0, Fraction(3, 2))])
        es = edges(half)
        assert es[0].primitive_direction == (1, 0)
        assert lattice_length(es[0]) == Fraction(1, 2)
        assert es[1].primitive_direction == (-1, 3)
        assert lattice_length(es[1]) == Fraction(1, 2)

    @settings(max_examples=30)
    @given(params_st)
    def test_length_counts_lattice_points(self, p):
        poly = hirzebruch_trapezoid(p)
        for e in edges(poly):
            i, j = e.endpoints
            assert lattice_length(e) == lattice_points_on_segment(poly.vertices[i], poly.vertices[j]) - 1


class TestIntegrality:
    def test_rectangle(self):
        assert is_integral(hirzebruch_trapezoid(HirzebruchParams.from_abm(2, 1, 0)))

    def test_half_square(self):
        h = Fraction(1, 2)
        assert not is_integral(Polytope([(0, 0), (h, 0), (h, h), (0, h)]))

    def test_half_integral_a(self):
        p = HirzebruchParams(1, 2, 1)
        assert p.a == Fraction(5, 2)
        poly = hirzebruch_trapezoid(p)
        assert poly.vertices == tuple(tuple(map(Fraction, v)) for v in [(0, 0), (3, 0), (2, 1), (0, 1)])
        assert is_integral(poly)

    def test_every_grid_trapezoid(self):
        assert all(is_integral(hirzebruch_trapezoid(p)) for p in grid_params(6, 6, 6))


class TestDelzant:
    def test_square(self, square):
        assert is_delzant(square)

    def test_trapezoid_312(self):
        rep = is_delzant(hirzebruch_trapezoid(HirzebruchParams.from_abm(3, 1, 2)))
        assert rep.delzant
        by_vertex = {v.vertex: v for v in rep.vertices}
        # vertex 2 is (2,1), vertex 1 is (4,0)
        assert set(by_vertex[2].directions) == {(-1, 0), (2, -1)}
        assert abs(by_vertex[2].determinant) == 1
        assert set(by_vertex[1].directions) == {(-2, 1), (-1, 0)}

    def test_thin_triangle(self):
        rep = is_delzant(Polytope([(0, 0), (1, 0), (0, 2)]))
        assert not rep
        bad = rep.failures
        assert [v.vertex for v in bad] == [1]
        assert set(bad[0].directions) == {(-1, 0), (-1, 2)}
        assert abs(bad[0].determinant) == 2
        assert bad[0].reason == "non-unimodular"

    def test_cp2(self, cp2_triangle):
        assert is_delzant(cp2_triangle)

    @settings(max_examples=50)
    @given(params_st, st.integers(0, 2**32))
    def test_affine_unimodular_invariance(self, p, seed):
        rng = random.Random(seed)
        T = random_unimodular(2, rng)
        w = (rng.randint(-9, 9), rng.randint(-9, 9))
        poly = hirzebruch_trapezoid(p)
        image = poly.transform(T, w)
        assert bool(is_delzant(image)) == bool(is_delzant(poly))
        assert is_integral(image) == is_integral(poly)

    @settings(max_examples=30)
    @given(st.integers(0, 2**32))
    def test_invariance_on_non_delzant(self, seed):
        rng = random.Random(seed)
        T = random_unimodular(2, rng)
        thin = Polytope([(0, 0), (1, 0), (0, 2)])
        image = thin.transform(T, (rng.randint(-5, 5), rng.randint(-5, 5)))
        assert not is_delzant(image)

    def test_rational_shift_breaks_integrality_only(self, square):
        h = Fraction(1, 2)
        moved = square.transform([[1, 0], [0, 1]], (h, 0))
        assert is_delzant(moved)
        assert not is_integral(moved)

    def test_simplex_3d(self):
        assert is_delzant(unit_simplex(3))
