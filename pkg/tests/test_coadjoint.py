"""Oracles for skew forms, isotropy, flows, and the open-component census.

Frozen values below were computed by hand from the structure constants:
for the ax+b algebra ([Y1,Y2] = Y2) the form is [[0, xi2], [-xi2, 0]] with
determinant xi2^2, so the nondegenerate set is two half-planes swapped by
negation; for the realified complex Borel algebra the determinant is
16(xi2^2 + xi4^2)^2, whose zero set has codimension two, so the
nondegenerate set is connected.
"""
import math
from fractions import Fraction as Q

import numpy as np
import pytest

from liegrpd.catalog import (
    axb,
    complex_borel,
    euclid2,
    filiform4,
    heisenberg,
    realified_borel,
)
from liegrpd.coadjoint import (
    ComponentCensus,
    FlowConfig,
    bform,
    coadjoint_flow,
    frobenius_test,
    is_open_orbit,
    isotropy_algebra,
    minus_one_probe,
    open_component_census,
    orbit_dimension,
)
from liegrpd.exact import ModeError, det_exact
from liegrpd.lie import Subspace


class TestSkewForm:
    def test_axb_matrix(self):
        L = axb()
        b = bform(L, (Q(3), Q(5)))
        assert b.data == ((Q(0), Q(5)), (Q(-5), Q(0)))
        assert det_exact(b) == 25

    def test_heisenberg_matrix(self):
        L = heisenberg()
        b = bform(L, (Q(0), Q(0), Q(7)))
        assert b.data[0][1] == 7 and b.data[1][0] == -7
        assert all(b.data[i][2] == 0 and b.data[2][i] == 0 for i in range(3))

    def test_antisymmetry_in_point(self):
        L = realified_borel()
        xi = (Q(1), Q(-2), Q(3), Q(5))
        neg = tuple(-v for v in xi)
        b1, b2 = bform(L, xi), bform(L, neg)
        assert all(
            b1.data[i][j] == -b2.data[i][j] for i in range(4) for j in range(4)
        )

    def test_form_is_skew(self):
        for make in (axb, heisenberg, filiform4, realified_borel, euclid2):
            L = make()
            xi = tuple(Q(k + 1, 2) for k in range(L.dim))
            b = bform(L, xi)
            assert all(
                b.data[i][j] == -b.data[j][i]
                for i in range(L.dim)
                for j in range(L.dim)
            )

    def test_float_point(self):
        L = axb()
        b = bform(L, (0.5, 2.0))
        assert not b.exact
        assert b.data[0][1] == 2.0

    def test_realified_borel_det_formula(self):
        L = realified_borel()
        for xi in [(1, 2, 3, 4), (0, 1, 0, 0), (5, -2, 7, 1), (1, 0, 1, 0)]:
            xi = tuple(Q(v) for v in xi)
            expected = 16 * (xi[1] ** 2 + xi[3] ** 2) ** 2
            assert det_exact(bform(L, xi)) == expected


class TestOrbitDimension:
    def test_axb(self):
        L = axb()
        assert orbit_dimension(L, (Q(1), Q(0))) == 0
        assert orbit_dimension(L, (Q(0), Q(1))) == 2
        assert is_open_orbit(L, (Q(0), Q(1)))
        assert not is_open_orbit(L, (Q(1), Q(0)))

    def test_heisenberg_never_open(self):
        L = heisenberg()
        assert orbit_dimension(L, (Q(1), Q(2), Q(3))) == 2
        assert orbit_dimension(L, (Q(1), Q(2), Q(0))) == 0
        assert not is_open_orbit(L, (Q(1), Q(2), Q(3)))

    def test_rank_is_even(self):
        import random

        rng = random.Random(7)
        for make in (axb, heisenberg, filiform4, realified_borel, euclid2):
            L = make()
            for _ in range(10):
                xi = tuple(Q(rng.randint(-9, 9)) for _ in range(L.dim))
                assert orbit_dimension(L, xi) % 2 == 0


class TestIsotropy:
    def test_heisenberg_generic(self):
        L = heisenberg()
        iso = isotropy_algebra(L, (Q(0), Q(0), Q(1)))
        assert iso.dim == 1
        assert iso.contains((Q(0), Q(0), Q(1)))

    def test_axb_points(self):
        L = axb()
        assert isotropy_algebra(L, (Q(0), Q(1))).dim == 0
        assert isotropy_algebra(L, (Q(1), Q(0))).dim == 2

    def test_isotropy_is_subalgebra(self):
        import random

        rng = random.Random(3)
        for make in (heisenberg, filiform4, realified_borel, euclid2):
            L = make()
            for _ in range(8):
                xi = tuple(Q(rng.randint(-5, 5)) for _ in range(L.dim))
                iso = isotropy_algebra(L, xi)
                for u in iso.rows:
                    for v in iso.rows:
                        assert iso.contains(L.bracket(u, v))

    def test_requires_exact_point(self):
        with pytest.raises(ModeError):
            isotropy_algebra(axb(), (0.5, 1.5))


class TestFrobenius:
    def test_axb_has_open_orbit(self):
        ok, xi = frobenius_test(axb(), seed=0)
        assert ok and det_exact(bform(axb(), xi)) != 0

    def test_odd_dimension_never(self):
        assert frobenius_test(heisenberg(), seed=0) == (False, None)
        assert frobenius_test(euclid2(), seed=0) == (False, None)

    def test_realified_borel(self):
        ok, xi = frobenius_test(realified_borel(), seed=1)
        assert ok

    def test_filiform_never(self):
        # det of the 4x4 skew form vanishes identically (nilpotent, index 2)
        ok, _ = frobenius_test(filiform4(), trials=64, seed=5)
        assert not ok


class TestFlow:
    def test_axb_exponential_decay(self):
        L = axb()
        res = coadjoint_flow(L, (Q(0), Q(1)), (Q(1), Q(0)), 1.0)
        final = res.points[-1]
        assert abs(final[0]) < 1e-12
        assert abs(final[1] - math.exp(-1.0)) < 1e-6

    def test_heisenberg_center_coordinate_constant(self):
        L = heisenberg()
        res = coadjoint_flow(L, (Q(0), Q(0), Q(1)), (Q(1), Q(1), Q(0)), 2.0)
        assert all(abs(p[2] - 1.0) < 1e-9 for p in res.points)

    def test_rank_conserved_along_flow(self):
        L = realified_borel()
        res = coadjoint_flow(L, (Q(1), Q(2), Q(0), Q(1)), (Q(1), Q(0), Q(1), Q(0)), 1.5)
        assert res.initial_rank == 4
        assert res.rank_conserved

    def test_zero_time(self):
        res = coadjoint_flow(axb(), (Q(1), Q(1)), (Q(1), Q(0)), 0.0)
        assert len(res.points) == 1 and res.rank_conserved

    def test_linear_flow_matches_matrix_exponential(self):
        # integrating the linear field must agree with exp(-t ad(x)^T) xi
        from liegrpd.exact import matrix_exp_numeric, Matrix
        from liegrpd.lie import ad_matrix

        L = euclid2()
        x = (Q(1), Q(0), Q(0))
        t = 1.25
        res = coadjoint_flow(L, (Q(1), Q(2), Q(3)), x, t)
        gen = (-ad_matrix(L, x).transpose()).to_numpy()
        expected = matrix_exp_numeric(
            Matrix((gen * t).tolist())
        ).to_numpy() @ np.array([1.0, 2.0, 3.0])
        assert np.allclose(np.array(res.points[-1]), expected, atol=1e-7)


class TestCensus:
    def test_axb_two_components_paired(self):
        census = open_component_census(axb(), FlowConfig(sample_count=128))
        assert census.component_count == 2
        assert census.negation_pairing in (((0, 1), (1, 0)),)
        assert census.even
        assert census.exponential
        # the two components are the half planes xi2 > 0 and xi2 < 0
        signs = {1 if rep[1] > 0 else -1 for rep in census.representatives}
        assert signs == {1, -1}

    def test_heisenberg_empty(self):
        census = open_component_census(heisenberg(), FlowConfig(sample_count=64))
        assert census.component_count == 0
        assert census.nondegenerate_samples == 0

    def test_euclid2_empty_and_not_exponential(self):
        census = open_component_census(euclid2(), FlowConfig(sample_count=64))
        assert census.component_count == 0
        assert not census.exponential

    def test_realified_borel_connected(self):
        census = open_component_census(realified_borel(), FlowConfig(sample_count=160))
        assert census.component_count == 1
        # connected census: the lone component is its own negation image
        assert census.negation_pairing == ((0, 0),)
        assert not census.even
        # evenness is not asserted here: the algebra is not exponential
        assert not census.exponential

    def test_census_deterministic(self):
        a = open_component_census(axb(), FlowConfig(sample_count=96, seed=4))
        b = open_component_census(axb(), FlowConfig(sample_count=96, seed=4))
        assert a == b

    def test_complex_field_rejected(self):
        with pytest.raises(ValueError):
            open_component_census(complex_borel())

    def test_components_never_mix_axb_signs(self):
        census = open_component_census(axb(), FlowConfig(sample_count=128, seed=9))
        assert census.component_count == 2
        assert isinstance(census, ComponentCensus)
        assert sum(census.component_sizes) == census.nondegenerate_samples


class TestMinusOneProbe:
    def test_euclid2_rotation_witness(self):
        probe = minus_one_probe(euclid2())
        assert probe.found
        assert probe.t_label.endswith("pi")
        assert abs(probe.eigenvalue + 1.0) < 1e-6

    def test_exponential_algebras_have_no_witness(self):
        for make in (heisenberg, axb, filiform4):
            probe = minus_one_probe(make())
            assert not probe.found

    def test_realified_borel_witness_along_imaginary_direction(self):
        # ad(iH) rotates span{E, iE} with eigenvalues +/- 2i, so
        # exp((pi/2) ad(iH)) has eigenvalue e^{i pi} = -1
        probe = minus_one_probe(realified_borel())
        assert probe.found
        assert probe.direction == (Q(0), Q(0), Q(1), Q(0))
        assert probe.t_label == "(4/8)pi"
        assert abs(probe.eigenvalue + 1.0) < 1e-6
