import itertools
import random
from fractions import Fraction
from math import comb, factorial, pi

import pytest

from valgebra.geometry import hull, minkowski_sum, reflect, scale, translate, volume
from valgebra.intervals import Interval
from valgebra.mixed import (
    derivative_at_zero,
    intrinsic_volume_brackets,
    minkowski_polynomial,
    mixed_volume,
    mixed_volume_grouped,
    projection_identity_check,
    steiner_coeffs,
    unit_ball_volume,
)
from valgebra.polynomials import Polynomial, integrate
from valgebra.samples import box, segment, standard_simplex, unit_cube

from conftest import rational_points

F = Fraction


# Independent oracle: mixed volumes straight from the defining expansion,
# by interpolating vol(l1 K1 + ... + ln Kn) on a grid and reading one
# coefficient (no inclusion-exclusion anywhere).
def mv_oracle(bodies):
    """Coefficient of l1*...*ln in vol(sum li Ki), divided by n!."""
    n = bodies[0].dim
    from valgebra.interp import tensor_interpolate
    from valgebra.mixed import _combo_measure

    def values(axis, coeffs):
        if axis == n:
            return _combo_measure([(b, F(c)) for b, c in zip(bodies, coeffs)], n, None)
        return [values(axis + 1, coeffs + [k]) for k in range(n + 1)]

    poly = tensor_interpolate(values(0, []), [n] * n)
    # vol(sum li Ki) = sum over n-tuples V(K_i1..K_in) l_i1...l_in; the
    # all-distinct coefficient collects n! orderings.
    return poly.coefficient(tuple(1 for _ in range(n))) / factorial(n)


class TestMixedVolume:
    def test_diagonal_is_volume(self, rng):
        for _ in range(5):
            P = hull(rational_points(rng, 6, 2), 2)
            assert mixed_volume([P, P]) == volume(P)

    def test_two_segments(self):
        assert mixed_volume([segment(2, 0), segment(2, 1)]) == F(1, 2)

    def test_reflected_square(self):
        sq = unit_cube(2)
        assert mixed_volume([sq, reflect(sq)]) == 1

    def test_against_expansion_oracle(self, rng):
        for _ in range(4):
            bodies = [hull(rational_points(rng, 5, 2), 2) for _ in range(2)]
            assert mixed_volume(bodies) == mv_oracle(bodies)
        bodies3 = [hull(rational_points(rng, 4, 3), 3) for _ in range(3)]
        assert mixed_volume(bodies3) == mv_oracle(bodies3)

    def test_symmetry_exhaustive(self, rng):
        bodies = [hull(rational_points(rng, 4, 3), 3) for _ in range(3)]
        base = mixed_volume(bodies)
        for perm in itertools.permutations(bodies):
            assert mixed_volume(list(perm)) == base

    def test_multilinearity(self, rng):
        K = hull(rational_points(rng, 5, 2), 2)
        K2 = hull(rational_points(rng, 5, 2), 2)
        A = hull(rational_points(rng, 5, 2), 2)
        a, b = F(2), F(3, 2)
        combo = minkowski_sum(scale(K, a), scale(K2, b))
        lhs = mixed_volume([combo, A])
        rhs = a * mixed_volume([K, A]) + b * mixed_volume([K2, A])
        assert lhs == rhs

    def test_translation_invariance_per_slot(self, rng):
        K = hull(rational_points(rng, 5, 2), 2)
        A = hull(rational_points(rng, 5, 2), 2)
        assert mixed_volume([translate(K, (3, -2)), A]) == mixed_volume([K, A])

    def test_monotonicity_nested_boxes(self):
        small = unit_cube(2)
        big = box([(0, 2), (0, 1)])
        A = box([(0, 1), (0, 3)])
        assert mixed_volume([small, A]) <= mixed_volume([big, A])

    def test_nonnegative(self, rng):
        for _ in range(5):
            bodies = [hull(rational_points(rng, 5, 2), 2) for _ in range(2)]
            assert mixed_volume(bodies) >= 0

    def test_arity_errors(self):
        with pytest.raises(ValueError):
            mixed_volume([unit_cube(2)])
        with pytest.raises(ValueError):
            mixed_volume([unit_cube(2), unit_cube(3)])


class TestMinkowskiPolynomial:
    def test_square_plus_square(self):
        mp = minkowski_polynomial(unit_cube(2), [unit_cube(2)])
        assert mp.poly == Polynomial(1, {(0,): F(1), (1,): F(2), (2,): F(1)})

    def test_point_base(self):
        A = unit_cube(2)
        pt = hull([(0, 0)], 2)
        mp = minkowski_polynomial(pt, [A])
        assert mp.poly == Polynomial(1, {(2,): F(1)})

    def test_density_value_matches_direct_integral(self):
        xpoly = Polynomial(2, {(1, 0): F(1)})
        mp = minkowski_polynomial(unit_cube(2), [unit_cube(2)], xpoly)
        direct = integrate(box([(0, 2), (0, 2)]), xpoly)
        assert mp.eval([1]) == direct == 4

    def test_reproduces_grid_values(self, rng):
        # The recovered polynomial matches direct computation on the whole
        # conventional grid {0..n+deg f}^s, not only on the internal one.
        xpoly = Polynomial(2, {(1, 0): F(1)})
        K = hull(rational_points(rng, 5, 2), 2)
        A = hull(rational_points(rng, 4, 2), 2)
        B = segment(2, 1)
        mp = minkowski_polynomial(K, [A, B], xpoly)
        for la in range(4):
            for lb in range(4):
                cands = [
                    tuple(k[i] + la * a[i] + lb * b[i] for i in range(2))
                    for k in K.vertices
                    for a in A.vertices
                    for b in B.vertices
                ]
                direct = integrate(hull(cands, 2), xpoly)
                assert mp.eval([la, lb]) == direct

    def test_repeated_bodies_grouped_consistently(self, rng):
        K = hull(rational_points(rng, 5, 2), 2)
        A = hull(rational_points(rng, 4, 2), 2)
        mp = minkowski_polynomial(K, [A, A])
        for la in range(3):
            for lb in range(3):
                combined = volume(hull(
                    [tuple(k[i] + (la + lb) * a[i] for i in range(2)) for k in K.vertices for a in A.vertices],
                    2,
                ))
                assert mp.eval([la, lb]) == combined

    def test_derivative_examples(self):
        sq = unit_cube(2)
        mp = minkowski_polynomial(sq, [sq])
        assert derivative_at_zero(mp, [0]) == 2 == 2 * mixed_volume([sq, sq])
        assert derivative_at_zero(minkowski_polynomial(sq, []), []) == volume(sq)
        with pytest.raises(ValueError):
            derivative_at_zero(mp, [3])

    def test_derivative_identity_random(self, rng):
        for n in (2, 3):
            K = hull(rational_points(rng, n + 2, n), n)
            slack = [hull(rational_points(rng, n + 2, n), n) for _ in range(n - 1)]
            mp = minkowski_polynomial(K, slack)
            lhs = derivative_at_zero(mp, list(range(n - 1)))
            rhs = F(factorial(n), factorial(1)) * mixed_volume([K] + slack)
            assert lhs == rhs


class TestSteiner:
    def test_square_half_perimeter(self):
        coeffs = steiner_coeffs(unit_cube(2), 4)
        v1 = coeffs[1] / unit_ball_volume(1, 4)  # eps^1 coefficient / kappa_1
        assert v1.contains(2)
        assert v1.width() <= F(1, 100)

    def test_segment(self):
        s = scale(segment(2, 0), 3)
        vols = intrinsic_volume_brackets(s, 3)
        assert vols[1].contains(3)
        assert vols[2].lo == vols[2].hi == 0

    def test_euler_normalization(self, rng):
        for K in (unit_cube(2), standard_simplex(2), hull(rational_points(rng, 5, 2), 2)):
            vols = intrinsic_volume_brackets(K, 3)
            assert vols[0].contains(1)

    def test_brackets_shrink_with_level(self):
        w1 = [iv.width() for iv in steiner_coeffs(unit_cube(2), 1)]
        w2 = [iv.width() for iv in steiner_coeffs(unit_cube(2), 2)]
        w3 = [iv.width() for iv in steiner_coeffs(unit_cube(2), 3)]
        for a, b, c in zip(w1, w2, w3):
            assert c <= b <= a

    def test_volume_coefficient_exact(self):
        coeffs = steiner_coeffs(standard_simplex(2), 2)
        assert coeffs[0].lo == coeffs[0].hi == volume(standard_simplex(2))

    def test_3d_segment(self):
        s = scale(segment(3, 0), 2)
        vols = intrinsic_volume_brackets(s, 1)
        assert vols[1].contains(2)


class TestProjectionIdentity:
    def test_planar_case(self):
        r = projection_identity_check(segment(1, 0), [unit_cube(2)])
        assert r["equal"] and r["lhs"] == F(1, 2)

    def test_zero_projection(self):
        flat = box([(0, 1), (0, 0)])  # no extent in the z coordinate
        r = projection_identity_check(segment(1, 0), [flat])
        assert r["equal"] and r["lhs"] == 0

    def test_dim4(self, rng):
        r = projection_identity_check(unit_cube(2), [unit_cube(4), unit_cube(4)])
        assert r["equal"]
        r2 = projection_identity_check(
            unit_cube(2), [unit_cube(4), hull(rational_points(rng, 6, 4), 4)]
        )
        assert r2["equal"]

    def test_misaligned_split(self):
        with pytest.raises(ValueError):
            projection_identity_check(unit_cube(2), [unit_cube(5), unit_cube(5)])
        with pytest.raises(ValueError):
            projection_identity_check(unit_cube(2), [unit_cube(4), unit_cube(3)])
