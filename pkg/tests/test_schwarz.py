import numpy as np
import pytest

import ovaloid as ov
from ovaloid.contour import ContourSpec, spec_for_params
from ovaloid.errors import DomainError


def test_params_validation():
    with pytest.raises(ValueError):
        ov.OvaloidParams(a=1.0, b=0.3)
    with pytest.raises(ValueError):
        ov.OvaloidParams(a=0.3, b=-0.1)
    with pytest.raises(ValueError):
        ov.OvaloidParams(a=0.3, b=0.3, C=0.0)
    with pytest.raises(ValueError):
        ov.OvaloidParams(a=0.3, b=0.3, epsilon=-1.0)


def test_g_degenerate_value():
    p = ov.OvaloidParams(a=0.0, b=0.0, C=1.0)
    # collapses to (w^2-1)^2 / w^2
    assert ov.g_eval(p, 2.0) == pytest.approx(9.0 / 4.0, abs=1e-15)


def test_g_double_zeros_at_unit_points():
    p = ov.OvaloidParams(a=0.37, b=0.21, C=1.4)
    for w0 in (1.0, -1.0):
        assert abs(ov.g_eval(p, w0)) < 1e-14
        # order two: g(w0 + h) ~ h^2
        h = 1e-5
        assert abs(ov.g_eval(p, w0 + h)) / h**2 == pytest.approx(
            abs(ov.g_eval(p, w0 + 2 * h)) / (4 * h**2), rel=1e-3
        )


def test_g_real_coefficients_conjugate_symmetry():
    p = ov.OvaloidParams(a=0.3, b=0.3, C=1.0)
    w = 0.5 + 0.1j
    assert ov.g_eval(p, w) == pytest.approx(np.conj(ov.g_eval(p, np.conj(w))), abs=1e-15)


def test_g_reciprocal_symmetry():
    p = ov.OvaloidParams(a=0.25, b=0.45, C=2.0)
    rng = np.random.default_rng(7)
    w = rng.uniform(0.9, 1.1, 64) * np.exp(1j * rng.uniform(0, 2 * np.pi, 64))
    g1 = ov.g_eval(p, w)
    g2 = ov.g_eval(p, 1.0 / w)
    assert np.max(np.abs(g1 - g2) / np.abs(g1)) < 1e-12


def test_g_pole_proximity_rejected():
    p = ov.OvaloidParams(a=0.2, b=0.4)
    with pytest.raises(DomainError):
        ov.g_eval(p, 0.4)
    with pytest.raises(DomainError):
        ov.g_eval(p, -2.5)  # -1/b


def test_g_pole_order_two_limits():
    p = ov.OvaloidParams(a=0.22, b=0.3, C=1.0)
    b = p.b
    limits = []
    for phase in (1.0, np.exp(2j * np.pi / 3), np.exp(4j * np.pi / 3)):
        # Richardson in the approach distance removes the O(t) term
        v1 = (1e-4 * phase) ** 2 * ov.g_eval(p, b + 1e-4 * phase)
        v2 = (5e-5 * phase) ** 2 * ov.g_eval(p, b + 5e-5 * phase)
        limits.append(2.0 * v2 - v1)
    limits = np.array(limits)
    assert np.max(np.abs(limits - limits[0])) < 1e-8
    assert abs(limits[0]) > 0.1  # finite and nonzero


def test_sqrt_g_degenerate_is_w_minus_inverse():
    p = ov.OvaloidParams(a=0.0, b=0.0, C=1.0)
    for w in (0.7, 1.3j, -0.4 + 0.9j, 2.0):
        assert ov.sqrt_g(p, w) == pytest.approx(w - 1.0 / w, abs=1e-14)


def test_sqrt_g_squares_to_g():
    p = ov.OvaloidParams(a=0.4, b=0.4, C=1.0)
    rng = np.random.default_rng(42)
    w = 1.05 * np.exp(1j * rng.uniform(0, 2 * np.pi, 10_000))
    s = ov.sqrt_g(p, w)
    g = ov.g_eval(p, w)
    assert np.max(np.abs(s * s - g)) < 1e-12


def test_sqrt_g_odd():
    p = ov.OvaloidParams(a=0.35, b=0.25, C=1.7)
    w = 1.05 * np.exp(1j * np.linspace(0, 2 * np.pi, 33))
    assert np.max(np.abs(ov.sqrt_g(p, -w) + ov.sqrt_g(p, w))) < 1e-13


def test_sqrt_g_conjugate_symmetry():
    p = ov.OvaloidParams(a=0.3, b=0.45, C=1.0)
    rng = np.random.default_rng(3)
    w = rng.uniform(0.8, 1.2, 128) * np.exp(1j * rng.uniform(0, 2 * np.pi, 128))
    assert np.max(np.abs(ov.sqrt_g(p, np.conj(w)) - np.conj(ov.sqrt_g(p, w)))) < 1e-13


def test_sqrt_g_annulus_enforced():
    p = ov.OvaloidParams(a=0.5, b=0.2)
    with pytest.raises(DomainError):
        ov.sqrt_g(p, 0.3)  # |w| < a
    with pytest.raises(DomainError):
        ov.sqrt_g(p, 2.5)  # |w| > 1/a
    with pytest.raises(DomainError):
        ov.sqrt_g(ov.OvaloidParams(a=0.0, b=0.2), 0.0)


def test_sqrt_g_no_branch_jumps_under_refinement():
    p = ov.OvaloidParams(a=0.45, b=0.45, C=1.0)
    prev = None
    for n in (512, 1024, 2048):
        w = ContourSpec(1.1, n).nodes()
        s = ov.sqrt_g(p, w)
        jump = float(np.max(np.abs(np.diff(np.concatenate([s, s[:1]])))))
        if prev is not None:
            assert jump < 0.75 * prev  # halving the spacing shrinks the jumps
        prev = jump


def test_residue_kernel_value_example():
    data = ov.residue_kernel(ov.OvaloidParams(a=0.0, b=0.5))
    assert data.h_value == pytest.approx(0.16, abs=1e-15)


def test_residue_kernel_derivative_denominator():
    # 4 b^11 + 8 b^9 - 8 b^5 - 4 b^3 at b = 1/2 is -375/512
    b = 0.5
    den = 4 * b**11 + 8 * b**9 - 8 * b**5 - 4 * b**3
    assert den == pytest.approx(-375.0 / 512.0, abs=1e-16)


def test_residue_kernel_matches_direct_kernel_value():
    # independent closed form: (b^2-1)^2 (b^2+a^2)(1+a^2 b^2) / ((2b)^2 (1-b^4)^2)
    for a in (0.0, 0.2, 0.5, 0.8):
        for b in (0.1, 0.3, 0.6, 0.9):
            direct = ((b * b - 1) ** 2 * (b * b + a * a) * (1 + a * a * b * b)
                      / ((2 * b) ** 2 * (1 - b**4) ** 2))
            data = ov.residue_kernel(ov.OvaloidParams(a=a, b=b))
            assert data.h_value == pytest.approx(direct, rel=1e-14)


def test_residue_kernel_derivative_matches_finite_difference():
    # d/dz [(z-b)^2 g(z)] at z=b, with C=1
    for a, b in ((0.3, 0.5), (0.22, 0.3), (0.0, 0.4), (0.6, 0.7)):
        p = ov.OvaloidParams(a=a, b=b, C=1.0)

        def kernel(z):
            return ((z - b) ** 2 * ov.g_eval(p, z)).real

        def central(h):
            return (kernel(b + h) - kernel(b - h)) / (2 * h)

        # steps small enough for the h^2 truncation, large enough that the
        # cancellation in (w^2 - b^2) near the pole stays below 1e-9
        fd = (4.0 * central(1e-4) - central(2e-4)) / 3.0
        data = ov.residue_kernel(p)
        assert fd == pytest.approx(data.h_zeta_derivative, abs=1e-8)


def test_residue_kernel_rejects_b_zero():
    with pytest.raises(DomainError):
        ov.residue_kernel(ov.OvaloidParams(a=0.1, b=0.0))


def test_schwarz_identity_map():
    series = ov.TaylorSeries(coefficients=np.array([0.0, 1.0]), truncation_error=0.0)
    p = ov.OvaloidParams(a=0.0, b=0.0)
    assert ov.schwarz_on_circle(p, series, 1j) == pytest.approx(-1j, abs=1e-15)
    assert ov.schwarz_on_circle(p, series, 1.0) == pytest.approx(series.evaluate(1.0), abs=1e-15)
    with pytest.raises(DomainError):
        ov.schwarz_on_circle(p, series, 1.2)


def test_schwarz_pole_combination_bounded_near_focus(solved):
    # 0.5*(S(z)-z)^2 - A/(z-eps)^2 - A/(z+eps)^2 must stay bounded as z
    # approaches the focus; on the preimage side (S(z)-z)^2 continues to g(w).
    rep = solved(0.3)
    p = rep.params
    spec = spec_for_params(p.a, p.b)
    series = ov.taylor_series(p, spec)
    eps = p.epsilon
    singular_seen = 0.0
    combos = []
    for t in (0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.002):
        w = p.b + t
        z = series.evaluate(w)
        pole_part = rep.A / (z - eps) ** 2 + rep.A / (z + eps) ** 2
        combos.append(abs(0.5 * ov.g_eval(p, w) - pole_part))
        singular_seen = max(singular_seen, abs(pole_part))
    # threshold frozen from a mesh study of the solved b=0.3 body (max ~9.7)
    assert max(combos) < 20.0
    assert singular_seen > 1e3  # the cancellation is across five orders
