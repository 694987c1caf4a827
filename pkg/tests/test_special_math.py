"""Gamma/Beta and ball-geometry checks against stdlib oracles."""

import math

import numpy as np
import pytest

from gnsbounds import ball_geometry, beta_fn, gamma_fn


def test_gamma_trivial_values():
    assert gamma_fn(1.0) == 1.0
    assert gamma_fn(5.0) == 24.0
    assert abs(gamma_fn(0.5) - math.sqrt(math.pi)) < 1e-15


def test_gamma_against_stdlib():
    # math.gamma is the independent oracle (different implementation)
    for x in np.geomspace(0.1, 50.0, 400):
        assert abs(gamma_fn(float(x)) - math.gamma(x)) <= 1e-12 * math.gamma(x)


def test_gamma_recurrence_property():
    rng = np.random.default_rng(42)
    for x in rng.uniform(0.1, 30.0, size=1000):
        x = float(x)
        lhs = gamma_fn(x + 1.0)
        assert abs(lhs - x * gamma_fn(x)) <= 1e-11 * lhs


def test_gamma_domain_error():
    with pytest.raises(ValueError):
        gamma_fn(0.0)
    with pytest.raises(ValueError):
        gamma_fn(-2.5)


def test_beta_values():
    assert beta_fn(1.0, 1.0) == 1.0
    assert abs(beta_fn(2.0, 3.0) - 1.0 / 12.0) < 1e-12
    assert abs(beta_fn(0.5, 0.5) - math.pi) < 1e-12 * math.pi


def test_beta_symmetry_and_errors():
    rng = np.random.default_rng(1)
    for _ in range(100):
        x, y = rng.uniform(0.2, 8.0, size=2)
        b = beta_fn(float(x), float(y))
        assert abs(b - beta_fn(float(y), float(x))) <= 1e-12 * b
    with pytest.raises(ValueError):
        beta_fn(-1.0, 2.0)


def test_ball_geometry_values():
    g1 = ball_geometry(1)
    assert g1.omega == 2.0 and g1.sphere_area == 2.0
    g2 = ball_geometry(2)
    assert abs(g2.omega - math.pi) < 1e-15 and abs(g2.sphere_area - 2 * math.pi) < 1e-15
    g3 = ball_geometry(3)
    assert abs(g3.omega - 4 * math.pi / 3) < 1e-14
    assert abs(g3.sphere_area - 4 * math.pi) < 1e-14
    # omega_5 = 8 pi^2 / 15 (closed-form evaluation of pi^{5/2}/Gamma(7/2))
    assert abs(ball_geometry(5).omega - 5.263789013914325) < 1e-13


def test_omega_sphere_relation():
    for d in range(1, 21):
        g = ball_geometry(d)
        assert abs(g.omega * d - g.sphere_area) <= 1e-12 * g.sphere_area
