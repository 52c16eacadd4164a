"""Transmission evaluators against a frozen brute-force oracle grid.

Reference ln T values were produced by two independent oracles (mpmath
tanh-sinh quadrature at 40 significant digits, and a float log-domain
Simpson rule with Richardson extrapolation over 2^17-point panels; see
tests/brute_oracle.py) agreeing with each other to better than 1e-11
before being frozen here.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coulombpacket.errors import (
    ConvergenceError,
    DomainError,
    RangeError,
    RegimeError,
)
from coulombpacket.packet import DensityTable, PacketShape, log_density
from coulombpacket.transmission import (
    BarrierQuery,
    G_param,
    evaluate,
    ln_T_bessel_gamma1,
    ln_T_from_table,
    ln_T_quadrature,
    ln_T_steepest,
    log_integrand,
    plane_wave_log_D,
    planewave_validity,
    saddle_point_approx,
    saddle_point_numeric,
)


# --- kernel and validity ---------------------------------------------------

def test_plane_wave_log_D():
    assert plane_wave_log_D(700.0, 1.0) == -700.0
    assert plane_wave_log_D(10.0, 2.0) == -5.0
    for bad_y in (0.0, -1.0):
        with pytest.raises(DomainError):
            plane_wave_log_D(10.0, bad_y)
    with pytest.raises(DomainError):
        plane_wave_log_D(0.0, 1.0)


def test_planewave_validity_threshold():
    v, ok = planewave_validity(10.0, 1e-6)
    assert v == pytest.approx(0.01, rel=1e-12) and ok
    v, ok = planewave_validity(1.0, 0.010000001)
    assert v > 0.1 and not ok         # strict comparison at the edge
    _, ok = planewave_validity(700.0, 1.0)
    assert not ok


# --- G parameter -------------------------------------------------------------

def test_G_param_worked_value():
    assert G_param(700.0, 0.1, 2.0) == 70.0
    assert G_param(700.0, 1e-4, 1.0) == pytest.approx(
        7.0 / math.sqrt(2.0), rel=1e-13)


def test_G_param_survives_power_underflow():
    # B^(gamma/2) underflows a double here; the log-domain rescue must kick in
    G = G_param(1e300, 1e-250, 4.0)
    from coulombpacket.packet import shape_constants
    beta4 = shape_constants(4.0)[0]
    expected = math.exp(math.log(1e300) + 2.0 * math.log(1e-250)
                        - math.log(4.0 * beta4))
    assert G == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("A, B, gamma", [
    (0.0, 1.0, 2.0), (1.0, -1.0, 2.0), (1.0, 1.0, 0.0),
    (math.nan, 1.0, 2.0), (1.0, math.inf, 2.0),
])
def test_G_param_domain(A, B, gamma):
    with pytest.raises(DomainError):
        G_param(A, B, gamma)


# --- saddle machinery ------------------------------------------------------

@pytest.mark.parametrize("G, gamma, expected", [
    (70.0, 2.0, 4.483022257915927),
    (1.0, 2.0, 1.465571231876768),       # the cubic y^3 - y^2 - 1 root
    (1e6, 2.0, 100.33444691355265),
    (50.0, 0.5, 13.220890796402404),
])
def test_saddle_point_numeric_frozen(G, gamma, expected):
    assert saddle_point_numeric(G, gamma) == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("G", [0.5, 2.0, 25.0, 1e6])
def test_saddle_point_gamma1_closed_form(G):
    assert saddle_point_numeric(G, 1.0) == math.sqrt(G)


def test_saddle_point_no_stationary_point_small_G():
    # gamma < 1 with small G: the exponent is monotone on (1, inf)
    with pytest.raises(ConvergenceError):
        saddle_point_numeric(3.0, 0.3)
    # same gamma, large G: the upper branch exists
    assert saddle_point_numeric(1e4, 0.3) > 1.0


@given(
    lnG=st.floats(min_value=-4.0, max_value=18.0),
    gamma=st.floats(min_value=0.15, max_value=10.0),
)
@settings(max_examples=150)
def test_saddle_root_satisfies_stationarity(lnG, gamma):
    G = math.exp(lnG)
    try:
        y = saddle_point_numeric(G, gamma)
    except ConvergenceError:
        return   # no interior stationary point: a legitimate outcome
    if gamma == 1.0:
        assert y == math.sqrt(G)
        return
    assert y > 1.0
    # residual of ln G = 2 ln y + (gamma-1) ln(y-1) at the reported root
    resid = lnG - 2.0 * math.log(y) - (gamma - 1.0) * math.log(y - 1.0)
    assert abs(resid) <= 1e-9


def test_saddle_point_approx_form_and_convergence():
    assert saddle_point_approx(1000.0, 2.0) == pytest.approx(
        1000.0 ** (1.0 / 3.0) + 1.0 / 3.0, rel=1e-14)
    for gamma in (1.5, 2.0, 3.0):
        errs = []
        for G in (1e2, 1e4, 1e6):
            y = saddle_point_numeric(G, gamma)
            errs.append(abs(saddle_point_approx(G, gamma) - y) / y)
        assert errs[0] > errs[1] > errs[2]


@pytest.mark.parametrize("func", [saddle_point_numeric, saddle_point_approx])
def test_saddle_domain(func):
    with pytest.raises(DomainError):
        func(0.0, 2.0)
    with pytest.raises(DomainError):
        func(10.0, -1.0)


# --- integrand ----------------------------------------------------------

def test_log_integrand_closed_form():
    shape = PacketShape.from_gamma(2.0, 0.1)
    # -A/y - beta (y-1)^2/B with beta = 1/2
    assert log_integrand(1.5, 3.0, shape) == pytest.approx(
        -2.0 - 0.5 * 0.25 / 0.1, rel=1e-13)
    assert log_integrand(1.0, 5.0, shape) == -5.0
    assert log_integrand(0.0, 3.0, shape) == -math.inf
    assert log_integrand(-2.0, 3.0, shape) == -math.inf
    arr = log_integrand(np.array([0.5, 1.0, 2.0]), 3.0, shape)
    assert arr.shape == (3,) and arr[1] == -3.0


# --- quadrature -----------------------------------------------------------

QUAD_ORACLE = [
    # (A, B, gamma, ln_T)
    (700.0, 1e-5, 1.0, -668.7598852191197),
    (700.0, 1e-4, 1.0, -485.0923812451879),
    (700.0, 1e-3, 1.0, -306.6745892918953),
    (700.0, 1e-2, 1.0, -182.66911835829063),
    (700.0, 1e-3, 2.0, -579.6127775916156),
    (700.0, 1.0, 2.0, -110.2186738223023),
    (700.0, 10.0, 3.0, -67.18666395387955),
    (100.0, 1e-4, 4.0, -99.54412726067625),
    (50.0, 0.02, 0.5, -23.43726329861214),
    (20.0, 0.5, 1.2, -10.066669841612683),
    (10.0, 0.3, 0.3, -6.851139283706555),
    (5.0, 2.0, 3.0, -2.9489005249786224),
]


@pytest.mark.parametrize("A, B, gamma, expected", QUAD_ORACLE)
def test_ln_T_quadrature_oracle_grid(A, B, gamma, expected):
    res = ln_T_quadrature(BarrierQuery(A, B, gamma))
    assert res.ln_T == pytest.approx(expected, rel=1e-9, abs=1e-9)
    assert res.method_used == "quadrature"
    assert res.quad_error_ln is not None and res.quad_error_ln < 1e-6
    assert res.planewave_ok == planewave_validity(A, B)[1]
    assert res.G == pytest.approx(G_param(A, B, gamma), rel=1e-15)


def test_ln_T_monotone_decreasing_in_A():
    vals = [ln_T_quadrature(BarrierQuery(A, 1e-3, 2.0)).ln_T
            for A in (10.0, 50.0, 200.0, 700.0)]
    assert vals[0] > vals[1] > vals[2] > vals[3]


@pytest.mark.parametrize("A, B, gamma", [
    (700.0, 1e-3, 2.0), (700.0, 1e-5, 1.0), (100.0, 0.01, 3.0)])
def test_packet_average_bounded_by_construction(A, B, gamma):
    # half the density sits at y >= 1 where D(y) >= e^-A, so
    # e^-A / 2 <= T <= 1 rigorously
    r = ln_T_quadrature(BarrierQuery(A, B, gamma))
    assert -A + math.log(0.49) <= r.ln_T <= 0.0


@pytest.mark.parametrize("A", [10.0, 100.0])
def test_delta_packet_limit(A):
    res = ln_T_quadrature(BarrierQuery(A, 1e-8, 2.0))
    assert abs(res.ln_T + A) <= 1e-2


def test_delta_packet_short_circuit():
    # below the representability cutoff the packet is a delta: T = D(p0)
    res = ln_T_quadrature(BarrierQuery(100.0, 1e-15, 2.0))
    assert res.ln_T == -100.0
    assert res.quad_error_ln == 0.0
    assert res.planewave_ok is True
    assert res.method_used == "quadrature"


def test_quadrature_failure_carries_partial_estimate(monkeypatch):
    from coulombpacket import transmission as tr

    def unconverged(seed_panels, **kwargs):
        return -123.0, 3.4e-4, False

    monkeypatch.setattr(tr, "_adaptive_log_quadrature", unconverged)
    with pytest.raises(ConvergenceError) as exc_info:
        tr.ln_T_quadrature(BarrierQuery(50.0, 0.1, 2.0))
    assert exc_info.value.quad_error_ln == pytest.approx(3.4e-4)
    assert exc_info.value.ln_T is not None and exc_info.value.ln_T <= 0.0


def test_result_log10_and_magnitude():
    r = ln_T_quadrature(BarrierQuery(10.0, 1e-6, 2.0))
    assert r.log10_T == pytest.approx(r.ln_T / math.log(10.0), rel=1e-15)
    assert r.magnitude.ln_value == r.ln_T


# --- steepest descent -------------------------------------------------------

STEEPEST_ORACLE = [
    # (A, B, gamma, ln_T*, low_confidence)
    (700.0, 1.0, 2.0, -109.9262935734866, False),
    (700.0, 10.0, 3.0, -67.07940069748392, False),
    (700.0, 1e-4, 1.0, -485.0929767016556, True),
    (100.0, 0.1, 1.5, -44.87784177996757, True),
    (50.0, 0.02, 0.5, -23.56765388807719, False),
]


@pytest.mark.parametrize("A, B, gamma, expected, low", STEEPEST_ORACLE)
def test_ln_T_steepest_frozen(A, B, gamma, expected, low):
    res = ln_T_steepest(BarrierQuery(A, B, gamma))
    assert res.ln_T == pytest.approx(expected, rel=1e-10)
    assert res.method_used == "steepest_descent"
    assert res.low_confidence is low


def test_steepest_low_confidence_tracks_G():
    # G = 70 -> G^(1/3) = 4.12: below the trust threshold
    assert ln_T_steepest(BarrierQuery(700.0, 0.1, 2.0)).low_confidence is True
    # G = 700 -> G^(1/3) = 8.88: trusted
    assert ln_T_steepest(BarrierQuery(700.0, 1.0, 2.0)).low_confidence is False


def test_steepest_to_quadrature_ratio_gamma2():
    lq = ln_T_quadrature(BarrierQuery(700.0, 1.0, 2.0)).ln_T
    ls = ln_T_steepest(BarrierQuery(700.0, 1.0, 2.0)).ln_T
    assert math.exp(ls - lq) == pytest.approx(1.3396123067980195, rel=1e-6)


def test_steepest_matches_exact_gamma1_form_asymptotically():
    # for gamma = 1 the Laplace value reproduces the large-argument K1 form
    r = ln_T_bessel_gamma1(700.0, 1e-4)
    s = ln_T_steepest(BarrierQuery(700.0, 1e-4, 1.0))
    assert s.ln_T == pytest.approx(r.ln_T_asymptotic, abs=1e-9)


# --- gamma = 1 closed form ---------------------------------------------------

def test_bessel_gamma1_frozen_value():
    r = ln_T_bessel_gamma1(100.0, 0.01)
    assert r.ln_T == pytest.approx(-59.37217312237709, rel=1e-12)
    assert r.ln_T_asymptotic == pytest.approx(-59.377126258316636, rel=1e-12)
    assert r.ln_T > r.ln_T_asymptotic      # K1 exceeds its asymptotic form
    assert r.method_used == "bessel_gamma1"
    assert r.y_star_numeric == pytest.approx(math.sqrt(r.G), rel=1e-15)


@pytest.mark.parametrize("B", [1e-3, 1e-2])
def test_bessel_gamma1_matches_quadrature_in_regime(B):
    lb = ln_T_bessel_gamma1(700.0, B).ln_T
    lq = ln_T_quadrature(BarrierQuery(700.0, B, 1.0)).ln_T
    assert abs(lb - lq) <= 1e-3 * abs(lq)


def test_bessel_gamma1_regime_and_domain():
    with pytest.raises(RegimeError):
        ln_T_bessel_gamma1(5.0, 0.01)      # A < 10: replacement unjustified
    with pytest.raises(DomainError):
        ln_T_bessel_gamma1(0.0, 0.01)
    with pytest.raises(DomainError):
        ln_T_bessel_gamma1(100.0, -1.0)


def test_bessel_gamma1_suppresses_subunit_stationary_point():
    r = ln_T_bessel_gamma1(700.0, 1e-8)    # G < 1: peak sits at the y=1 cusp
    assert r.G < 1.0
    assert r.y_star_numeric is None
    assert r.y_star_approx == pytest.approx(math.sqrt(r.G), rel=1e-15)


@pytest.mark.parametrize("method", ["quadrature", "steepest_descent"])
@pytest.mark.parametrize("A, B, gamma", [
    (700.0, 1e-8, 1.0), (700.0, 0.1, 2.0), (10.0, 0.3, 0.3), (20.0, 0.5, 1.2)])
def test_published_stationary_points_exceed_one(method, A, B, gamma):
    res = evaluate(BarrierQuery(A, B, gamma, method=method))
    if res.y_star_numeric is not None:
        assert res.y_star_numeric > 1.0


# --- tabulated densities --------------------------------------------------

def test_from_table_three_point_wedge():
    # trapezoid weights only sample the apex, so T = e^-10 almost exactly
    w = 1e-4
    t = DensityTable(y=np.array([1.0 - w, 1.0, 1.0 + w]),
                     density=np.array([0.0, 1.0 / w, 0.0]))
    res = ln_T_from_table(t, 10.0)
    assert res.ln_T == pytest.approx(-10.0, abs=1e-10)
    assert res.method_used == "table_trapezoid"
    assert res.G is None


def test_from_table_truncated_support_bias():
    # a [0.5, 1.5] window clips the upper tail that carries real weight at
    # A = 50, so the table answer differs from full quadrature by ~9e-3
    shape = PacketShape.from_gamma(2.0, 0.01)
    y = np.linspace(0.5, 1.5, 10001)
    t = DensityTable(y=y, density=np.exp(log_density(y, shape)))
    res = ln_T_from_table(t, 50.0)
    assert res.ln_T == pytest.approx(-43.15941059391343, rel=1e-10)
    lq = ln_T_quadrature(BarrierQuery(50.0, 0.01, 2.0)).ln_T
    assert abs(res.ln_T - lq) < 1e-2


def test_from_table_wide_support_matches_quadrature():
    shape = PacketShape.from_gamma(2.0, 0.01)
    y = np.linspace(0.5, 2.0, 10001)
    t = DensityTable(y=y, density=np.exp(log_density(y, shape)))
    res = ln_T_from_table(t, 50.0)
    lq = ln_T_quadrature(BarrierQuery(50.0, 0.01, 2.0)).ln_T
    assert res.ln_T == pytest.approx(lq, abs=1e-6)


def test_from_table_unnormalized_mass_passes_through():
    # tables are averaged as-is; mass 0.5 at negligible A gives T = 0.5
    y = np.linspace(0.9, 1.1, 201)
    t = DensityTable(y=y, density=np.full_like(y, 2.5))
    res = ln_T_from_table(t, 1e-9)
    assert res.ln_T == pytest.approx(math.log(0.5), abs=1e-6)


def test_from_table_all_zero_density():
    t = DensityTable(y=np.array([0.5, 1.0, 1.5]), density=np.zeros(3))
    res = ln_T_from_table(t, 5.0)
    assert res.ln_T == -math.inf
    assert res.method_used == "table_trapezoid"


def test_from_table_domain():
    t = DensityTable(y=np.array([0.5, 1.5]), density=np.array([0.5, 0.5]))
    for bad_A in (0.0, -2.0, math.nan):
        with pytest.raises(DomainError):
            ln_T_from_table(t, bad_A)


# --- dispatch ----------------------------------------------------------

def test_auto_dispatch_boundaries():
    # closed form only where its |y-1| -> y-1 replacement is safe
    assert evaluate(BarrierQuery(700.0, 1e-3, 1.0)).method_used == "bessel_gamma1"
    assert evaluate(BarrierQuery(700.0, 1e-8, 1.0)).method_used == "quadrature"
    assert evaluate(BarrierQuery(5.0, 1.0, 1.0)).method_used == "quadrature"
    assert evaluate(BarrierQuery(700.0, 1e-3, 2.0)).method_used == "quadrature"
    # A^2 B = 8 with A >= 10 is the closed-form edge
    assert evaluate(BarrierQuery(10.0, 0.08, 1.0)).method_used == "bessel_gamma1"
    assert evaluate(BarrierQuery(10.0, 0.079, 1.0)).method_used == "quadrature"


def test_explicit_method_dispatch():
    assert evaluate(BarrierQuery(50.0, 0.1, 2.0, method="steepest_descent")
                    ).method_used == "steepest_descent"
    assert evaluate(BarrierQuery(50.0, 0.1, 1.0, method="bessel_gamma1")
                    ).method_used == "bessel_gamma1"
    assert evaluate(BarrierQuery(50.0, 0.1, 2.0, method="quadrature")
                    ).method_used == "quadrature"


def test_barrier_query_validation():
    for bad in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(DomainError):
            BarrierQuery(bad, 1.0, 2.0)
        with pytest.raises(DomainError):
            BarrierQuery(1.0, bad, 2.0)
    with pytest.raises(RangeError):
        BarrierQuery(1.0, 1.0, 0.05)
    with pytest.raises(RangeError):
        BarrierQuery(1.0, 1.0, 11.0)
    with pytest.raises(DomainError):
        BarrierQuery(1.0, 1.0, 2.0, method="simpson")
    with pytest.raises(DomainError):
        BarrierQuery(1.0, 1.0, 2.0, method="bessel_gamma1")   # needs gamma=1
