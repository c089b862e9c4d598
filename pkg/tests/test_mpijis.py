import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from paramnet.errors import InfeasibleError, SingularNetworkError, ValidationError
from paramnet.mpijis import (
    MpijisParams,
    added_noise,
    alpha_sweep,
    explicit_elements,
    full_smatrix,
    full_smatrix_at,
    inner_smatrix,
    phase_sweep,
    solve_t_for_isolation,
    two_port_on_resonance,
)
from paramnet.devices import JpcParams, rho_from_t
from paramnet.wave import is_unitary

from conftest import angle, unit, unit_open

Q = 1 / math.sqrt(2)
T_IDEAL = 1 / math.sqrt(2)

# Ideal working point, written out from the analytic result by hand.
IDEAL = np.array(
    [
        [0, 0, -Q, -Q],
        [2j * math.sqrt(2) / 3, 0, -1j / (3 * math.sqrt(2)), 1j / (3 * math.sqrt(2))],
        [-1 / (3 * math.sqrt(2)), -1j * Q, -math.sqrt(2) / 3, math.sqrt(2) / 3],
        [1 / (3 * math.sqrt(2)), -1j * Q, math.sqrt(2) / 3, -math.sqrt(2) / 3],
    ]
)
OFF = np.array([[0, 1j, 0, 0], [1j, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])


def test_params_validation_and_derived():
    p = MpijisParams.from_phases(0.5, 0.6, phi=3 * math.pi / 2, phi_s=0.2)
    assert p.beta == pytest.approx(0.8)
    assert p.r == pytest.approx(math.sqrt(0.75))
    assert p.phi == pytest.approx(-math.pi / 2)
    assert p.phi_s == pytest.approx(0.2)
    for kw in (dict(t=1.2), dict(t=0.5, alpha=-0.1), dict(t=0.5, phi1=math.inf)):
        with pytest.raises(ValidationError):
            MpijisParams(**kw)


def test_invalid_t_error_names_the_key():
    with pytest.raises(ValidationError) as info:
        MpijisParams(1.2)
    assert info.value.key == "t"


@pytest.mark.parametrize(
    "t, phi, s21, s12, s11",
    [
        (T_IDEAL, -math.pi / 2, 2j * math.sqrt(2) / 3, 0, 0),
        (0.0, 0.3, 1j, 1j, 0),
        (T_IDEAL, 0.0, 0.47140452j, 0.47140452j, -0.47140452j),
    ],
)
def test_two_port_examples(t, phi, s21, s12, s11):
    got = two_port_on_resonance(t, phi)
    np.testing.assert_allclose(got, (s21, s12, s11), atol=1e-8)


@given(t=unit, phi=angle)
def test_two_port_agrees_with_full_matrix(t, phi):
    m = full_smatrix(MpijisParams.from_phases(t, Q, phi)).data
    s21, s12, s11 = two_port_on_resonance(t, phi)
    assert m[1, 0] == pytest.approx(s21, abs=1e-12)
    assert m[0, 1] == pytest.approx(s12, abs=1e-12)
    assert m[0, 0] == pytest.approx(s11, abs=1e-12)


def test_inner_symmetric_example():
    s = inner_smatrix(Q, Q, 0.0, math.pi / 2, Q)
    assert s.data[0, 0] == pytest.approx((Q * 0.5) / (1 - 0.25), abs=1e-15)
    assert s.data[0, 0] == pytest.approx(0.4714045, abs=1e-7)


def test_inner_without_coupling_is_two_jpcs():
    t = 0.6
    s = inner_smatrix(0.8, t, 0.4, 1.3, 0.0)
    assert s.data[0, 1] == 0
    assert s.data[0, 2] == pytest.approx(-t * cmath.exp(-0.4j), abs=1e-15)
    assert s.data[1, 3] == pytest.approx(-t * cmath.exp(-1.3j), abs=1e-15)


def test_inner_rejects_unnormalised_and_singular():
    with pytest.raises(ValidationError):
        inner_smatrix(0.5, 0.5, 0, 0, 0.5)
    with pytest.raises(SingularNetworkError) as info:
        inner_smatrix(1.0, 0.0, 0, 0, 1.0)
    assert "cpl.b1" in info.value.ports


@settings(max_examples=200, deadline=None)
@given(t=unit, alpha=unit_open, phi1=angle, phi2=angle)
def test_inner_is_unitary(t, alpha, phi1, phi2):
    assert is_unitary(inner_smatrix(math.sqrt(1 - t * t), t, phi1, phi2, alpha))


def test_ideal_point_matches_hand_matrix():
    m = full_smatrix(MpijisParams.from_phases(T_IDEAL, Q, -math.pi / 2, math.pi / 2))
    np.testing.assert_allclose(m.data, IDEAL, atol=1e-15)


@pytest.mark.parametrize("route", ["explicit", "hybrid"])
@pytest.mark.parametrize("alpha", [0.0, 0.3, Q, 0.999])
def test_off_state_is_transparent(route, alpha):
    m = full_smatrix(MpijisParams(0.0, alpha, 0.7, 2.1), route=route)
    np.testing.assert_allclose(m.data, OFF, atol=1e-15)


def test_off_state_with_closed_rail_is_singular():
    # alpha = 1 and t = 0 leave a lossless resonant loop on the b rail
    with pytest.raises(SingularNetworkError):
        full_smatrix(MpijisParams(0.0, 1.0))


def test_unknown_route():
    with pytest.raises(ValidationError):
        full_smatrix(MpijisParams(0.5), route="mason")


def test_explicit_needs_alpha_below_one():
    with pytest.raises(ValidationError):
        explicit_elements(0.5, 1.0, 0, 0)


def test_alpha_one_uses_hybrid_limit():
    p = MpijisParams.from_phases(0.4, 1.0, -math.pi / 2)
    m = full_smatrix(p)
    near = full_smatrix(MpijisParams.from_phases(0.4, 1 - 1e-14, -math.pi / 2))
    np.testing.assert_allclose(m.data, near.data, atol=1e-6)
    assert is_unitary(m)


@settings(max_examples=300, deadline=None)
@given(t=unit, alpha=unit_open, phi1=angle, phi2=angle)
def test_routes_agree_and_are_unitary(t, alpha, phi1, phi2):
    p = MpijisParams(t, alpha, phi1, phi2)
    a = full_smatrix(p, "explicit")
    b = full_smatrix(p, "hybrid")
    np.testing.assert_allclose(a.data, b.data, atol=1e-12)
    assert is_unitary(a)
    m = a.data
    assert m[0, 0] == pytest.approx(m[1, 1], abs=1e-12)
    assert m[2, 2] == pytest.approx(m[3, 3], abs=1e-12)
    assert m[2, 3] == pytest.approx(m[3, 2], abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(t=unit, alpha=unit_open, phi1=angle, phi2=angle)
def test_phase_reversal_transposes(t, alpha, phi1, phi2):
    fwd = full_smatrix(MpijisParams(t, alpha, phi1, phi2)).data
    rev = full_smatrix(MpijisParams(t, alpha, -phi1, -phi2)).data
    np.testing.assert_allclose(rev, fwd.T, atol=1e-12)


@given(t=unit, alpha=unit_open, phi=angle)
def test_s12_is_s21_with_reversed_phase(t, alpha, phi):
    a = full_smatrix(MpijisParams.from_phases(t, alpha, phi)).data
    b = full_smatrix(MpijisParams.from_phases(t, alpha, -phi)).data
    assert a[0, 1] == pytest.approx(b[1, 0], abs=1e-12)


@given(t=unit, alpha=unit_open)
def test_general_antiphase_form(t, alpha):
    # at phi = -pi/2, phi_s = pi/2 the matrix is fixed by g and h alone
    beta2 = 1 - alpha**2
    den = 1 + alpha**2 / beta2 * t**2
    g = math.sqrt(1 - t**2) / den
    h = alpha / beta2 * t**2 / den
    sg, dl = g + h, g - h
    m = full_smatrix(MpijisParams.from_phases(t, alpha, -math.pi / 2)).data
    assert m[1, 0] == pytest.approx(1j * sg, abs=1e-12)
    assert m[0, 1] == pytest.approx(1j * dl, abs=1e-12)
    assert m[2, 2] == pytest.approx(-(sg + dl) / 2, abs=1e-12)
    assert m[2, 3] == pytest.approx((sg - dl) / 2, abs=1e-12)
    assert abs(m[0, 2]) ** 2 == pytest.approx((1 - dl**2) / 2, abs=1e-12)
    assert abs(m[2, 0]) ** 2 == pytest.approx((1 - sg**2) / 2, abs=1e-12)


def test_t_equal_beta_limit():
    alpha = 0.9
    beta = math.sqrt(1 - alpha**2)
    m = full_smatrix(MpijisParams.from_phases(beta, alpha, -math.pi / 2)).data
    assert abs(m[1, 0]) == pytest.approx(2 * alpha / (1 + alpha**2), abs=1e-12)
    assert abs(m[1, 0]) == pytest.approx(0.99448, abs=1e-5)


def test_frequency_response_reduces_on_resonance():
    t = 0.63
    jpc = JpcParams(rho_from_t(t))
    p = MpijisParams.from_phases(t, 0.55, -1.2, 0.4)
    on = full_smatrix_at(p, jpc, jpc.omega_a).data
    np.testing.assert_allclose(on, full_smatrix(p).data, atol=1e-14)


def test_frequency_response_dip_at_resonance():
    jpc = JpcParams(rho_from_t(T_IDEAL))
    p = MpijisParams.from_phases(T_IDEAL, Q, -math.pi / 2)
    ws = jpc.omega_a + np.linspace(-3, 3, 121) * jpc.kappa_a
    s12 = np.array([abs(full_smatrix_at(p, jpc, w).data[0, 1]) ** 2 for w in ws])
    s21 = np.array([abs(full_smatrix_at(p, jpc, w).data[1, 0]) ** 2 for w in ws])
    assert np.argmin(s12) == 60
    assert s12[60] < 1e-20 and s12[0] > 0.5
    assert np.all(s21 > 0.85)


def test_alpha_one_frequency_response():
    jpc = JpcParams(0.3)
    p = MpijisParams.from_phases(0.0, 1.0, -math.pi / 2)
    m = full_smatrix_at(p, jpc, jpc.omega_a + 0.2 * jpc.kappa_a)
    assert m.n == 4


@pytest.mark.parametrize(
    "s21, n_add",
    [(Fraction(8, 9), Fraction(1, 16)), (Fraction(1, 2), Fraction(1, 2)), (Fraction(1), Fraction(0))],
)
def test_added_noise_exact(s21, n_add):
    rep = added_noise(s21)
    assert rep.n_add == n_add
    assert rep.noise_factor == s21


def test_added_noise_float_and_edges():
    assert added_noise(8 / 9).n_add == pytest.approx(1 / 16, abs=1e-15)
    assert added_noise(0.0).n_add == math.inf
    with pytest.raises(ValidationError):
        added_noise(1.5)


def test_solve_t_examples():
    t = solve_t_for_isolation(Q, 0.01)
    assert 0.65 < t < 0.66
    s12 = full_smatrix(MpijisParams.from_phases(t, Q, -math.pi / 2)).data[0, 1]
    assert abs(abs(s12) ** 2 - 0.01) < 1e-12
    assert solve_t_for_isolation(Q, 0.0) == pytest.approx(T_IDEAL, abs=1e-15)
    assert solve_t_for_isolation(0.3, 1.0) == 0.0


def test_solve_t_picks_smallest_root():
    alpha, target = 0.5, 0.04
    t = solve_t_for_isolation(alpha, target)
    grid = np.linspace(0, t, 400, endpoint=False)[1:]
    amps = [abs(full_smatrix(MpijisParams.from_phases(x, alpha)).data[0, 1]) ** 2 for x in grid]
    assert min(amps) > target


@pytest.mark.parametrize("kw, err", [
    (dict(alpha=1.0, target_iso_power=0.01), ValidationError),
    (dict(alpha=0.5, target_iso_power=1.5), InfeasibleError),
    (dict(alpha=0.5, target_iso_power=0.01, phi=math.pi / 2), InfeasibleError),
])
def test_solve_t_errors(kw, err):
    with pytest.raises(err):
        solve_t_for_isolation(**kw)


def test_alpha_sweep_shape():
    alphas = np.linspace(0.2, 0.99, 12)
    out = alpha_sweep(alphas)
    np.testing.assert_allclose(out["S12"], 0.01, atol=1e-10)
    assert np.all(np.diff(out["S21"]) > 0)
    assert np.all(np.diff(out["S23"]) < 0)


def test_phase_sweep_equal_magnitudes():
    base = MpijisParams.from_phases(T_IDEAL, Q)
    phis = np.linspace(-2 * math.pi, 2 * math.pi, 97)
    terms = ["S11", "S22", "S31", "S41", "S23", "S24", "S13", "S14", "S32", "S42", "S21", "S12"]
    out = phase_sweep(base, phis, terms)
    for a, b in [("S22", "S11"), ("S41", "S31"), ("S24", "S23"), ("S14", "S13"), ("S42", "S32")]:
        np.testing.assert_allclose(out[a], out[b], atol=1e-12)
    np.testing.assert_array_equal(out["phi"], phis)


def test_phase_sweep_extremes():
    base = MpijisParams.from_phases(T_IDEAL, Q)
    out = phase_sweep(base, [-math.pi / 2, math.pi / 2])
    assert out["S21"][0] == pytest.approx(8 / 9, abs=1e-14)
    assert out["S12"][0] == pytest.approx(0, abs=1e-14)
    assert out["S12"][1] == pytest.approx(8 / 9, abs=1e-14)
    assert out["S21"][1] == pytest.approx(0, abs=1e-14)


def test_phase_sweep_unknown_term():
    with pytest.raises(ValidationError):
        phase_sweep(MpijisParams(0.5), [0.0], ["S55"])
