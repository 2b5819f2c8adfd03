"""Contour geometry, branch substitution, shift cubic, slow phase."""

import warnings

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from kdvrh.contour import (
    Contour,
    Detour,
    GFunction,
    Orientation,
    RAY_ANGLE,
    RayLabel,
    SectorTag,
    Side,
    airy_phase,
    build_contour,
    eval_g,
    eval_phase,
    full_phase,
    lambda0_root,
    shifted_phase,
    sqrt_branch,
)

EPS = np.finfo(float).eps


def cubic_root_bisect(x, t):
    """Bisection oracle for the monotone case t <= 0."""
    assert t <= 0.0
    f = lambda lam: lam ** 3 - 24.0 * t * lam + 48.0 * x
    hi = 10.0 + 2.0 * (1.0 + 48.0 * abs(x)) ** (1.0 / 3.0) + 6.0 * np.sqrt(1.0 + abs(t))
    lo = -hi
    assert f(lo) < 0.0 < f(hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def winding_number(polygon, pt):
    """Total turning of the closed polygon around pt, in turns."""
    total = 0.0
    n = len(polygon)
    for k in range(n):
        a = polygon[k] - pt
        b = polygon[(k + 1) % n] - pt
        total += np.angle(b / a)
    return total / (2.0 * np.pi)


# ---------------------------------------------------------------- branch root


def test_sqrt_branch_sides():
    assert sqrt_branch(4.0) == 2.0
    assert abs(sqrt_branch(-9.0, Side.PLUS) - 3.0j) < 1e-15
    assert abs(sqrt_branch(-9.0, Side.MINUS) + 3.0j) < 1e-15
    # Explicit substitution must not depend on the sign of a zero.
    assert sqrt_branch(complex(-9.0, -0.0), Side.PLUS) == sqrt_branch(complex(-9.0, 0.0), Side.PLUS)
    with pytest.raises(ValueError):
        sqrt_branch(-9.0)


def test_sqrt_branch_array_mixed():
    lams = np.array([-4.0, 1.0, -1.0 + 0.5j, 2.0j])
    got = sqrt_branch(lams, Side.MINUS)
    for k, lam in enumerate(lams):
        want = sqrt_branch(complex(lam), Side.MINUS)
        assert abs(got[k] - want) < 1e-15


# --------------------------------------------------------------------- phases


def test_full_phase_branch_free_point():
    val = eval_phase(full_phase(1.0, 0.0), 1.0)
    assert abs(val - 106.0 / 105.0) < 1e-14


def test_full_phase_cut_sides():
    ph = full_phase(0.0, 0.0)
    plus = eval_phase(ph, -4.0, Side.PLUS)
    minus = eval_phase(ph, -4.0, Side.MINUS)
    # sqrt(-4 + i0) = 2i, so the Plus value is (2i)**7/105 = -128i/105;
    # with x = t = 0 the value is purely imaginary.
    assert abs(plus.real) < 1e-14
    assert abs(plus.imag + 128.0 / 105.0) < 1e-14
    assert abs(minus - np.conj(plus)) < 1e-14
    with pytest.raises(ValueError):
        eval_phase(ph, -4.0)


def test_airy_phase_value():
    assert abs(eval_phase(airy_phase(2.0, -1.0), 9.0) - 15.0) < 1e-14


def test_phase_array_matches_scalar():
    ph = full_phase(0.3, -1.2)
    lams = np.array([-3.0, -0.5, 0.25, 4.0 + 1.0j])
    arr = eval_phase(ph, lams, Side.PLUS)
    for k, lam in enumerate(lams):
        assert abs(arr[k] - eval_phase(ph, complex(lam), Side.PLUS)) < 1e-13


def test_shifted_phase_at_cubic_root_matches_g():
    x, t = -100.0, 0.0
    lam0 = lambda0_root(x, t)
    ph = shifted_phase(x, t, lam0)
    g = GFunction(x, t)
    for lam in (lam0 + 1.0, lam0 + 9.0, 5.0 + 2.0j):
        # The sqrt(lambda - lam0) coefficient is the cubic residual / 48.
        assert abs(eval_phase(ph, lam) - g(lam)) < 1e-9


@settings(max_examples=60, deadline=None)
@given(
    x=st.floats(-2.0, 2.0),
    t=st.floats(-2.0, -0.01),
    re=st.floats(-2.0, 2.0),
    im=st.floats(0.05, 2.0),
)
def test_phase_schwarz_symmetry(x, t, re, im):
    lam = complex(re, im)
    lam0 = lambda0_root(x, t)
    for ph in (full_phase(x, t), airy_phase(x, t), shifted_phase(x, t, lam0)):
        up = eval_phase(ph, lam)
        down = eval_phase(ph, np.conj(lam))
        assert abs(np.conj(down) - up) < 1e-13 * (1.0 + abs(up))


def test_boundary_values_match_off_axis_limit():
    # Quadratic Richardson extrapolation in the offset reproduces the
    # explicit substitution on the cut.
    cases = [
        (full_phase(0.7, -1.1), -2.5),
        (airy_phase(1.3, -0.4), -1.2),
    ]
    x, t = 3.0, -1.0
    lam0 = lambda0_root(x, t)
    cases.append((shifted_phase(x, t, lam0), lam0 - 2.0))
    eps = np.array([1e-2, 5e-3, 2.5e-3])
    for ph, lam in cases:
        for side, sgn in ((Side.PLUS, +1.0), (Side.MINUS, -1.0)):
            vals = np.array([eval_phase(ph, lam + 1j * sgn * e) for e in eps])
            fit = np.polyfit(eps, vals, 2)
            exact = eval_phase(ph, lam, side)
            assert abs(fit[-1] - exact) < 1e-8 * (1.0 + abs(exact))


# ---------------------------------------------------------------- shift cubic


def test_lambda0_triple_root_origin():
    with pytest.warns(RuntimeWarning):
        assert lambda0_root(0.0, 0.0) == 0.0


def test_lambda0_reference_values():
    want = cubic_root_bisect(-1.0, 0.0)
    assert abs(want - 3.634241185664279) < 1e-12
    assert abs(lambda0_root(-1.0, 0.0) - want) < 1e-12
    assert abs(lambda0_root(1.0, 0.0) + want) < 1e-12


def test_lambda0_large_x_branch_sign():
    for t in (3.0, 0.0, -2.0):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert lambda0_root(-1e6, t) > 300.0
            assert lambda0_root(1e6, t) < -300.0


def test_lambda0_ambiguity_flag():
    # Negative and near-zero discriminant regions both warn.
    with pytest.warns(RuntimeWarning):
        root = lambda0_root(0.0, 1.0)
    assert abs(root + np.sqrt(24.0)) < 1e-12
    with pytest.warns(RuntimeWarning):
        lambda0_root(0.9428090415820634, 1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        lambda0_root(5.0, 1.0)


@settings(max_examples=80, deadline=None)
@given(x=st.floats(-50.0, 50.0), t=st.floats(-10.0, -0.01))
def test_lambda0_against_bisection(x, t):
    root = lambda0_root(x, t)
    assert abs(root ** 3 - 24.0 * t * root + 48.0 * x) < 1e-12 * (1.0 + abs(root) ** 3)
    assert abs(root - cubic_root_bisect(x, t)) < 1e-9 * (1.0 + abs(root))
    assert root * x <= 0.0


# ------------------------------------------------------------------ slow phase


def test_g_vanishes_at_shift_point():
    for x, t in ((0.5, -1.0), (-7.0, -0.3), (12.0, -2.0)):
        g = GFunction(x, t)
        assert eval_g(x, t, g.lambda0) == 0.0


def test_g_unit_offset_value():
    x, t = -100.0, 0.0
    lam0 = lambda0_root(x, t)
    want = 1.0 / 105.0 + lam0 / 30.0 + lam0 ** 2 / 24.0
    got = eval_g(x, t, lam0 + 1.0)
    assert abs(got - want) < 1e-13 * abs(want)


def test_g_matches_large_x_series():
    # Series oracle: for x -> +inf with s = -lam0,
    # g = s**(7/2)/56 + (lam/80) s**(5/2) - (t/3 + lam**2/192) s**(3/2)
    #     + (lam**3 - 64 t lam)/128 * s**(1/2) + O(s**(-1/2)).
    t, lam = 0.0, 0.0
    for x in (100.0, 400.0):
        lam0 = lambda0_root(x, t)
        s = -lam0
        series = (
            s ** 3.5 / 56.0
            + lam / 80.0 * s ** 2.5
            - (t / 3.0 + lam ** 2 / 192.0) * s ** 1.5
            + (lam ** 3 - 64.0 * t * lam) / 128.0 * np.sqrt(s)
        )
        got = eval_g(x, t, lam, Side.PLUS)
        assert abs(got - series) < 1e-3 * abs(series)


def test_g_cut_needs_side():
    x, t = 100.0, 0.0
    lam0 = lambda0_root(x, t)
    with pytest.raises(ValueError):
        eval_g(x, t, lam0 - 3.0)
    up = eval_g(x, t, lam0 - 3.0, Side.PLUS)
    down = eval_g(x, t, lam0 - 3.0, Side.MINUS)
    assert abs(up - np.conj(down)) < 1e-12 * (1.0 + abs(up))


def test_shift_expansion_tail_double():
    # theta_shift - theta - c/sqrt(lam) should drop like lam**(-3/2); one
    # decade in double precision before cancellation dominates.
    x, t = 1.3, -0.7
    lam0 = lambda0_root(x, t)
    ph_s = shifted_phase(x, t, lam0)
    ph_f = full_phase(x, t)
    c = GFunction(x, t, lam0).tail_coefficient
    d = lambda lam: eval_phase(ph_s, lam) - eval_phase(ph_f, lam) - c / np.sqrt(lam)
    ratio = abs(d(1000.0)) / abs(d(100.0))
    assert 0.02 < ratio < 0.05


def test_shift_expansion_tail_highprec():
    # Same ladder through lam = 1e4 with 50-digit arithmetic, using the
    # identical coefficient formulas.
    import mpmath as mp

    mp.mp.dps = 50
    x, t = mp.mpf("1.3"), mp.mpf("-0.7")
    lam0 = mp.mpf(lambda0_root(1.3, -0.7))
    for _ in range(3):
        lam0 -= (lam0 ** 3 - 24 * t * lam0 + 48 * x) / (3 * lam0 ** 2 - 24 * t)
    c5 = lam0 / 30
    c3 = (lam0 ** 2 - 8 * t) / 24
    c1 = (lam0 ** 3 - 24 * t * lam0 + 48 * x) / 48
    c = -(lam0 ** 4) / 384 + t * lam0 ** 2 / 8 - x * lam0 / 2

    def diff(lam):
        w = mp.sqrt(lam - lam0)
        z = mp.sqrt(lam)
        shifted = w ** 7 / 105 + c5 * w ** 5 + c3 * w ** 3 + c1 * w
        plain = z ** 7 / 105 - t / 3 * z ** 3 + x * z
        return shifted - plain - c / z

    vals = [abs(diff(mp.mpf(10) ** k)) for k in (2, 3, 4)]
    for lo, hi in zip(vals[:-1], vals[1:]):
        slope = mp.log10(hi) - mp.log10(lo)
        assert -1.65 < float(slope) < -1.35


# -------------------------------------------------------------------- contour


def test_canonical_contour_table():
    c = build_contour()
    assert c.junction == 0.0
    pos = c.ray(RayLabel.POS_AXIS)
    assert pos.direction == 1.0
    assert pos.orientation is Orientation.TO_INFINITY
    assert pos.plus_sector is SectorTag.UPPER_RIGHT
    assert pos.minus_sector is SectorTag.LOWER_RIGHT
    up = c.ray(RayLabel.UPPER_RAY)
    assert abs(up.direction - np.exp(1j * RAY_ANGLE)) < 1e-15
    assert up.orientation is Orientation.FROM_INFINITY
    assert up.plus_sector is SectorTag.UPPER_RIGHT
    assert up.minus_sector is SectorTag.UPPER_LEFT
    low = c.ray(RayLabel.LOWER_RAY)
    assert abs(low.direction - np.exp(-1j * RAY_ANGLE)) < 1e-15
    assert low.plus_sector is SectorTag.LOWER_LEFT
    assert low.minus_sector is SectorTag.LOWER_RIGHT
    neg = c.ray(RayLabel.NEG_AXIS)
    assert neg.direction == -1.0
    assert neg.orientation is Orientation.FROM_INFINITY
    assert neg.plus_sector is SectorTag.UPPER_LEFT
    assert neg.minus_sector is SectorTag.LOWER_LEFT
    # Travel directions: both axes are traversed rightward.
    assert pos.travel_direction == 1.0
    assert neg.travel_direction == 1.0


def test_contour_shift_translates_rays():
    c = build_contour(-10.0)
    assert c.junction == -10.0
    for ray in c.rays:
        assert ray.base == -10.0
    assert c.classify(-10.0 + 0.5j + 0.2) is SectorTag.UPPER_RIGHT


def test_classifier_matches_side_table():
    c = build_contour(0.0)
    for ray in c.rays:
        normal = 1j * ray.travel_direction
        for r in (0.5, 2.0, 7.0):
            pt = ray.point(r)
            assert c.classify(pt + 1e-6 * normal) is ray.plus_sector
            assert c.classify(pt - 1e-6 * normal) is ray.minus_sector


def test_classifier_rejects_contour_points():
    c = build_contour()
    with pytest.raises(ValueError):
        c.classify(1.5)
    with pytest.raises(ValueError):
        c.classify(-2.0)
    with pytest.raises(ValueError):
        c.classify(0.0)


@settings(max_examples=100, deadline=None)
@given(r=st.floats(1e-3, 50.0), phi=st.floats(-np.pi + 1e-4, np.pi - 1e-4))
def test_classifier_total_and_conjugate_symmetric(r, phi):
    assume(min(abs(phi), abs(abs(phi) - RAY_ANGLE)) > 1e-3)
    c = build_contour()
    lam = r * np.exp(1j * phi)
    tag = c.classify(lam)
    assert tag in SectorTag
    flipped = {
        SectorTag.UPPER_RIGHT: SectorTag.LOWER_RIGHT,
        SectorTag.UPPER_LEFT: SectorTag.LOWER_LEFT,
        SectorTag.LOWER_LEFT: SectorTag.UPPER_LEFT,
        SectorTag.LOWER_RIGHT: SectorTag.UPPER_RIGHT,
    }
    assert c.classify(np.conj(lam)) is flipped[tag]


def test_sector_anchors_land_in_their_sector():
    c = build_contour(-3.0)
    for tag in SectorTag:
        anchor = c.sector_anchor(tag)
        assert abs(abs(anchor - c.junction) - 1.0) < 1e-14
        assert c.classify(anchor) is tag


def test_min_distance_brute_force():
    c = build_contour()
    rs = np.linspace(0.0, 60.0, 200001)
    for lam in (0.5j, -1.0 + 2.0j, 3.0 - 0.2j):
        brute = min(np.min(np.abs(ray.point(rs) - lam)) for ray in c.rays)
        assert abs(c.min_distance(lam) - brute) < 1e-3 * (1.0 + brute)


# ------------------------------------------------------------------- reroutes


def test_detour_clears_avoided_point():
    avoid = -2.0 + 1.0j
    c_plain = build_contour()
    assert c_plain.ray(RayLabel.UPPER_RAY).distance(avoid) < 0.3
    c = build_contour(0.0, [Detour(RayLabel.UPPER_RAY, avoid, 0.3)])
    ray = c.ray(RayLabel.UPPER_RAY)
    assert ray.distance(avoid) >= 0.3
    poly = ray.polyline(6.0)
    for a, b in zip(poly[:-1], poly[1:]):
        span = np.abs(a + np.linspace(0.0, 1.0, 2001) * (b - a) - avoid)
        assert span.min() >= 0.3 - 1e-9
    # The swept lens (straight span plus reversed reroute) must not
    # contain the point: crossing it would change the homotopy class.
    d = ray.deformations[0]
    a = ray.point(d.r_start)
    b = ray.point(d.r_end)
    loop = [a, b, d.waypoints[1], d.waypoints[0]]
    assert abs(winding_number(loop, avoid)) < 1e-6
    # A probe inside the lens is enclosed, so the oracle can tell sides.
    probe = 0.5 * (0.5 * (a + b) + 0.5 * (d.waypoints[0] + d.waypoints[1]))
    assert abs(abs(winding_number(loop, probe)) - 1.0) < 1e-6


def test_detour_overlap_rejected():
    dets = [
        Detour(RayLabel.UPPER_RAY, -2.0 + 1.0j, 0.3),
        Detour(RayLabel.UPPER_RAY, -2.1 + 1.05j, 0.3),
    ]
    with pytest.raises(ValueError):
        build_contour(0.0, dets)


def test_detour_must_fit_on_ray():
    near_base = 0.2 * np.exp(1j * RAY_ANGLE) + 0.01j
    with pytest.raises(ValueError):
        build_contour(0.0, [Detour(RayLabel.UPPER_RAY, near_base, 0.3)])
