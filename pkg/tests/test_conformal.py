import numpy as np
import pytest

import ovaloid as ov
from ovaloid.conformal import polygon_self_intersects
from ovaloid.contour import ContourSpec, spec_for_params
from ovaloid.errors import DomainError

IDENTITY = ov.OvaloidParams(a=0.0, b=0.0, C=1.0)
GENERIC = ov.OvaloidParams(a=0.3, b=0.3, C=1.0)


def test_identity_map_values():
    spec = spec_for_params(0.0, 0.0)
    assert ov.cauchy_transform(IDENTITY, spec, 0.5) == pytest.approx(0.5, abs=1e-12)
    assert abs(ov.cauchy_transform(IDENTITY, spec, 0.0)) < 1e-12


def test_map_vanishes_at_origin_generically():
    spec = spec_for_params(GENERIC.a, GENERIC.b)
    assert abs(ov.cauchy_transform(GENERIC, spec, 0.0)) < 1e-12


def test_solved_map_places_focus(solved):
    rep = solved(0.3)
    p = rep.params
    spec = spec_for_params(p.a, p.b)
    assert ov.cauchy_transform(p, spec, complex(p.b)) == pytest.approx(1.0, abs=1e-10)


def test_contour_clearance_errors():
    spec = spec_for_params(0.0, 0.0)  # radius 1.15
    with pytest.raises(DomainError, match="radius"):
        ov.cauchy_transform(IDENTITY, spec, 1.15 - 1e-8)
    with pytest.raises(DomainError):
        ov.cauchy_transform(IDENTITY, spec, 1.3)


def test_derivatives_of_identity():
    spec = spec_for_params(0.0, 0.0)
    for z in (0.0, 0.4, 0.3 + 0.2j):
        assert ov.f_derivative(IDENTITY, spec, z, 1) == pytest.approx(1.0, abs=1e-12)
        assert abs(ov.f_derivative(IDENTITY, spec, z, 2)) < 1e-12
    with pytest.raises(ValueError):
        ov.f_derivative(IDENTITY, spec, 0.0, 3)


def test_derivative_matches_finite_difference():
    spec = spec_for_params(GENERIC.a, GENERIC.b)
    z = 0.2
    h = 1e-5
    fd1 = (ov.cauchy_transform(GENERIC, spec, z + h) - ov.cauchy_transform(GENERIC, spec, z - h)) / (2 * h)
    assert ov.f_derivative(GENERIC, spec, z, 1) == pytest.approx(fd1, abs=1e-8)
    fd2 = (
        ov.cauchy_transform(GENERIC, spec, z + h)
        - 2 * ov.cauchy_transform(GENERIC, spec, z)
        + ov.cauchy_transform(GENERIC, spec, z - h)
    ) / h**2
    assert ov.f_derivative(GENERIC, spec, z, 2) == pytest.approx(fd2, abs=1e-6)


def test_f_prime_at_zero_positive():
    for p in (IDENTITY, GENERIC):
        assert ov.f_prime_at_zero(p, spec_for_params(p.a, p.b)) > 0


def test_taylor_identity():
    series = ov.taylor_series(IDENTITY, spec_for_params(0.0, 0.0))
    assert series.coefficients[1] == pytest.approx(1.0, abs=1e-13)
    rest = np.delete(series.coefficients, 1)
    assert np.max(np.abs(rest)) < 1e-13
    assert series.truncation_error < 1e-13


def test_taylor_structure_generic():
    series = ov.taylor_series(GENERIC, spec_for_params(GENERIC.a, GENERIC.b))
    c = series.coefficients
    assert abs(c[0]) < 1e-12
    assert np.max(np.abs(c[2::2])) < 1e-12
    assert c[1] > 0


def test_taylor_resummation_matches_transform():
    spec = spec_for_params(GENERIC.a, GENERIC.b)
    series = ov.taylor_series(GENERIC, spec)
    rng = np.random.default_rng(11)
    z = rng.uniform(0, 0.95, 100) * np.exp(1j * rng.uniform(0, 2 * np.pi, 100))
    direct = ov.cauchy_transform(GENERIC, spec, z)
    assert np.max(np.abs(series.evaluate(z) - direct)) < 1e-10 + series.truncation_error


def test_taylor_solved_interior_point(solved):
    rep = solved(0.3)
    p = rep.params
    spec = spec_for_params(p.a, p.b)
    series = ov.taylor_series(p, spec)
    z = 0.9 * np.exp(0.7j)
    assert series.evaluate(z) == pytest.approx(ov.cauchy_transform(p, spec, z), abs=1e-9)


def test_taylor_order_validation_and_warning():
    spec = spec_for_params(0.1, 0.85, node_count=256)
    with pytest.raises(ValueError):
        ov.taylor_series(ov.OvaloidParams(a=0.1, b=0.85), spec, order=200)
    with pytest.warns(UserWarning, match="tail"):
        ov.taylor_series(ov.OvaloidParams(a=0.1, b=0.85), spec)


def test_profile_identity_is_unit_circle():
    curve = ov.profile_curve(IDENTITY, spec_for_params(0.0, 0.0), 64)
    r = np.hypot(curve.points[:, 0], curve.points[:, 1])
    assert np.max(np.abs(r - 1.0)) < 1e-12
    assert curve.winding_number() == 1
    assert not curve.self_intersects()


def test_profile_requires_enough_points():
    with pytest.raises(ValueError):
        ov.profile_curve(IDENTITY, spec_for_params(0.0, 0.0), 8)


def test_profile_solved_shape(solved):
    rep = solved(0.3)
    p = rep.params
    curve = ov.profile_curve(p, spec_for_params(p.a, p.b), 256)
    # the rightmost boundary point lies beyond the focus at +1
    assert curve.points[0, 1] == pytest.approx(0.0, abs=1e-12)
    assert curve.points[0, 0] > 1.0
    assert curve.is_simple_closed()
    assert curve.x_extent() > 1.0


def test_map_symmetries(solved):
    rep = solved(0.3)
    p = rep.params
    spec = spec_for_params(p.a, p.b)
    rng = np.random.default_rng(5)
    w = np.exp(1j * rng.uniform(0, 2 * np.pi, 128))
    f = ov.cauchy_transform(p, spec, w)
    f_conj = ov.cauchy_transform(p, spec, np.conj(w))
    f_neg = ov.cauchy_transform(p, spec, -w)
    assert np.max(np.abs(f_conj - np.conj(f))) < 1e-11
    assert np.max(np.abs(f_neg + f)) < 1e-11


def test_radius_invariance(solved):
    rep = solved(0.3)
    p = rep.params
    theta = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    z = np.exp(1j * theta)
    v1 = ov.cauchy_transform(p, spec_for_params(p.a, p.b, radius=1.1), z)
    v2 = ov.cauchy_transform(p, spec_for_params(p.a, p.b, radius=1.2), z)
    assert np.max(np.abs(v1 - v2)) < 1e-10


def test_polygon_self_intersection_detector():
    square = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    assert not polygon_self_intersects(square)
    bowtie = np.array([[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
    assert polygon_self_intersects(bowtie)
