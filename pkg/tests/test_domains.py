"""Convex-domain and cube constants, both C_HLS routes."""

import math

import pytest

from gnsbounds import (
    ConvexDomainSpec,
    convex_gns_constant,
    cube_gns_constant,
    davies_constant,
    hls_constant,
    hls_constant_back_solved,
    weak_norm_kernel,
)
from gnsbounds.domains import HLS_MISMATCH_ANNOTATION


def test_davies_examples():
    assert davies_constant(ConvexDomainSpec.unit_cube(2)) == pytest.approx(1.0, abs=1e-14)
    assert davies_constant(ConvexDomainSpec.unit_cube(3)) == pytest.approx(math.sqrt(3.0), rel=1e-14)
    assert davies_constant(ConvexDomainSpec.ball(3, 1.0)) == pytest.approx(2.0 / math.pi, rel=1e-14)


def test_unit_cube_spec():
    spec = ConvexDomainSpec.unit_cube(4)
    assert spec.diameter == pytest.approx(2.0)
    assert spec.volume == 1.0


def test_isodiametric_validation():
    # a set of diameter 1 in the plane cannot have volume 1
    with pytest.raises(ValueError):
        ConvexDomainSpec(d=2, diameter=1.0, volume=1.0)


def test_weak_norm_kernel_values():
    assert weak_norm_kernel(1) == pytest.approx(1.0, abs=1e-14)
    assert weak_norm_kernel(2) == pytest.approx(2.0 * math.sqrt(math.pi), rel=1e-13)
    assert weak_norm_kernel(3) == pytest.approx(7.795554179441508, rel=1e-13)


def test_hls_closed_form_values():
    # frozen from the independent evaluation of gamma_1 / sqrt(S_d)
    assert hls_constant(3) == pytest.approx(8.433785068495643, rel=1e-12)
    assert hls_constant(4) == pytest.approx(12.32473583410952, rel=1e-12)
    assert hls_constant(5) == pytest.approx(16.11291278082348, rel=1e-12)
    with pytest.raises(ValueError):
        hls_constant(2)


def test_hls_back_solved_values():
    assert hls_constant_back_solved(3) == pytest.approx(1.347, abs=5e-4)
    assert hls_constant_back_solved(4) == pytest.approx(3.9044, abs=5e-4)
    assert hls_constant_back_solved(5) == pytest.approx(6.3246, abs=5e-4)


def test_convex_report_consistency():
    for d in (3, 4, 5):
        rep = convex_gns_constant(ConvexDomainSpec.unit_cube(d))
        assert rep.c_1 == pytest.approx((rep.c_d * rep.c_hls) ** -2, rel=1e-12)
        assert rep.c_1_table == pytest.approx((rep.c_d * rep.c_hls_table) ** -2, rel=1e-12)
        # the two routes disagree far beyond 2x: both are carried, flagged
        assert rep.hls_mismatch
        assert rep.annotation == HLS_MISMATCH_ANNOTATION
    with pytest.raises(ValueError):
        convex_gns_constant(ConvexDomainSpec.unit_cube(2))


def test_c1_table_round_trip():
    # back-solving C_HLS from the published C_1 and recomposing returns them
    assert convex_gns_constant(ConvexDomainSpec.unit_cube(3)).c_1_table == pytest.approx(0.1838, rel=1e-12)
    assert convex_gns_constant(ConvexDomainSpec.unit_cube(4)).c_1_table == pytest.approx(0.0041, rel=1e-12)
    assert convex_gns_constant(ConvexDomainSpec.unit_cube(5)).c_1_table == pytest.approx(0.0002, rel=1e-12)


def test_cube_g2_values():
    assert cube_gns_constant(1).g_2 == pytest.approx(math.pi**2 / 60.0, rel=1e-13)
    assert cube_gns_constant(2).g_2 == pytest.approx(0.4000583708203964, rel=1e-12)
    assert cube_gns_constant(3).g_2 == pytest.approx(0.7164685652036661, rel=1e-12)
    assert cube_gns_constant(4).g_2 == pytest.approx(0.5812707714624566, rel=1e-12)
    assert cube_gns_constant(5).g_2 == pytest.approx(0.8021799078013907, rel=1e-12)


def test_cube_nd_provenance():
    assert cube_gns_constant(1).nd_provenance == "analytic"
    assert cube_gns_constant(2).nd_provenance.startswith("refined")
    assert cube_gns_constant(3).nd_provenance.startswith("refined")
    assert cube_gns_constant(4).nd_provenance == "analytic"


def test_g2_formula_invariant():
    for d in range(1, 6):
        rep = cube_gns_constant(d)
        expected = math.pi**2 * d**2 / ((d + 4) * (d + 2) * rep.n_d_used ** (2.0 / d))
        assert rep.g_2 == pytest.approx(expected, rel=1e-13)


def test_refined_not_worse_than_analytic():
    for d, r_cut in ((2, math.sqrt(17)), (3, math.sqrt(19))):
        refined = cube_gns_constant(d, nd_mode="refined", r_cut=r_cut)
        analytic = cube_gns_constant(d, nd_mode="analytic")
        assert refined.n_d_used <= analytic.n_d_used
        assert refined.g_2 >= analytic.g_2


def test_g1_below_g2_on_cubes():
    for d in (3, 4, 5):
        rep = cube_gns_constant(d)
        assert rep.c_1 < rep.g_2
        assert rep.c_1_table < rep.g_2
