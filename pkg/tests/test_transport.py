"""Lorentz generators and transport operators, closed form and path ordered."""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from eprfw.geometry import PhiModulatedGeometry, StringGeometry
from eprfw.kinematics import CircularWorldline
from eprfw.transport import (
    IDENTITY2,
    apply_to_spinor,
    chiral_block,
    gamma_matrices,
    lorentz_generators,
    rotation_angle,
    spinor,
    transport_closed_form,
    transport_numeric,
    transport_from_connection,
    transport_params,
    wigner_angle,
)
from eprfw.transport import _gamma_matrix

ALPHAS = (0.25, 0.5, 0.9, 1.0)
SINH_XIS = (0.0, 0.75, 2.0)
PHIS = (math.pi / 4, math.pi / 2, math.pi, 2 * math.pi)

XI_REF = math.asinh(0.75)  # cosh = 1.25


def ref_worldline(direction=+1, alpha=0.5, sh=0.75):
    return CircularWorldline(StringGeometry(alpha), rho=2.0, xi=math.asinh(sh), direction=direction)


def params_grid():
    return [
        transport_params(CircularWorldline(StringGeometry(a), 1.0, math.asinh(sh), d), Phi)
        for a in ALPHAS
        for sh in SINH_XIS
        for Phi in PHIS
        for d in (+1, -1)
    ]


# -------------------------------------------------------------- generators


@pytest.mark.parametrize("rep", ["spin-half", "dirac"])
def test_generators_antisymmetric(rep):
    sig = lorentz_generators(rep)
    for a in range(4):
        for b in range(4):
            assert np.allclose(sig[a, b], -sig[b, a], atol=1e-15)


@pytest.mark.parametrize("rep", ["spin-half", "dirac"])
def test_generators_close_lorentz_algebra(rep):
    # [S^{ab}, S^{cd}] = s * i (eta^{ad} S^{bc} + eta^{bc} S^{ad}
    #                           - eta^{ac} S^{bd} - eta^{bd} S^{ac})
    # with one fixed structure-constant sign s = -1 for the whole family;
    # the sign is tied to the connection convention the transport exponent uses.
    sig = lorentz_generators(rep)
    eta = np.diag([-1.0, 1.0, 1.0, 1.0])
    for a in range(4):
        for b in range(4):
            for c in range(4):
                for d in range(4):
                    lhs = sig[a, b] @ sig[c, d] - sig[c, d] @ sig[a, b]
                    rhs = -1j * (
                        eta[a, d] * sig[b, c]
                        + eta[b, c] * sig[a, d]
                        - eta[a, c] * sig[b, d]
                        - eta[b, d] * sig[a, c]
                    )
                    assert np.abs(lhs - rhs).max() <= 1e-12


def test_spin_half_hermiticity_split():
    sig = lorentz_generators("spin-half")
    for k in range(1, 4):
        boost = sig[0, k]
        assert np.allclose(boost.conj().T, -boost, atol=1e-15)  # anti-Hermitian
    for j in range(1, 4):
        for k in range(1, 4):
            rot = sig[j, k]
            assert np.allclose(rot.conj().T, rot, atol=1e-15)  # Hermitian


def test_spin_half_rotation_exponentiates_to_real_rotation():
    sig = lorentz_generators("spin-half")
    angle = 0.7
    # rotation about the 2-axis is generated by Sigma^{31} = sigma^2 / 2
    rot = expm(-1j * angle * sig[3, 1])
    assert np.abs(rot.imag).max() <= 1e-14
    assert np.allclose(rot @ rot.conj().T, IDENTITY2, atol=1e-14)
    assert rotation_angle(rot) == pytest.approx(angle, abs=1e-12)


def test_gamma_matrices_clifford_algebra():
    g = gamma_matrices()
    eta = np.diag([-1.0, 1.0, 1.0, 1.0])
    for a in range(4):
        for b in range(4):
            anti = g[a] @ g[b] + g[b] @ g[a]
            assert np.allclose(anti, 2.0 * eta[a, b] * np.eye(4), atol=1e-15)


def test_dirac_generators_block_diagonal():
    sig = lorentz_generators("dirac")
    for a in range(4):
        for b in range(4):
            assert np.abs(sig[a, b][:2, 2:]).max() == 0.0
            assert np.abs(sig[a, b][2:, :2]).max() == 0.0


def test_dirac_right_block_is_spin_half_family():
    dirac = lorentz_generators("dirac")
    half = lorentz_generators("spin-half")
    for a in range(4):
        for b in range(4):
            assert np.allclose(dirac[a, b][2:, 2:], half[a, b], atol=1e-15)


def test_unknown_representation_rejected():
    with pytest.raises(ValueError):
        lorentz_generators("vector")


# ------------------------------------------------------------------ params


def test_transport_params_reference_values():
    params = transport_params(ref_worldline(), math.pi)
    assert params.eta1 == pytest.approx(-0.5 * math.pi * 0.75 * 1.25, abs=1e-12)
    assert params.eta2 == pytest.approx(-0.5 * math.pi * 1.25**2, abs=1e-12)
    assert params.eta1 == pytest.approx(-1.472622, abs=1e-6)
    assert params.eta2 == pytest.approx(-2.454369, abs=1e-6)
    assert params.theta == pytest.approx(0.625 * math.pi, abs=1e-12)


def test_transport_params_at_rest():
    params = transport_params(ref_worldline(sh=0.0), math.pi)
    assert params.eta1 == 0.0
    assert params.eta2 == pytest.approx(-0.5 * math.pi, abs=1e-15)
    assert params.theta == pytest.approx(0.5 * math.pi, abs=1e-15)


@pytest.mark.parametrize("params", params_grid())
def test_gamma_squared_identity(params):
    assert abs(params.gamma**2 - (params.eta1**2 - params.eta2**2)) <= 1e-12 * max(
        1.0, params.theta**2
    )
    gam = _gamma_matrix(params)
    assert np.abs(gam @ gam - params.gamma**2 * np.eye(2)).max() <= 1e-12 * max(1.0, params.theta**2)


def test_partner_particle_flips_both_parameters():
    plus = transport_params(ref_worldline(+1), math.pi)
    minus = transport_params(ref_worldline(-1), math.pi)
    assert minus.eta1 == -plus.eta1
    assert minus.eta2 == -plus.eta2
    assert minus.theta == plus.theta


# ------------------------------------------------------------- closed form


def test_closed_form_full_loop_is_minus_identity():
    # theta = alpha Phi = 2 pi at rest: the spinor double cover
    wl = CircularWorldline(StringGeometry(1.0), rho=1.0, xi=0.0)
    op = transport_closed_form(transport_params(wl, 2 * math.pi))
    assert np.allclose(op, -IDENTITY2, atol=1e-12)


def test_closed_form_rest_frame_rotation():
    wl = ref_worldline(sh=0.0)
    theta = 0.5 * math.pi
    op = transport_closed_form(transport_params(wl, math.pi))
    expected = np.array(
        [
            [math.cos(theta / 2), -math.sin(theta / 2)],
            [math.sin(theta / 2), math.cos(theta / 2)],
        ]
    )
    assert np.allclose(op, expected, atol=1e-14)
    assert np.abs(op.conj().T @ op - IDENTITY2).max() <= 1e-12
    assert rotation_angle(op) == pytest.approx(theta, abs=1e-12)


def test_closed_form_without_transport_is_identity():
    from eprfw.transport import TransportParams

    op = transport_closed_form(TransportParams(eta1=0.0, eta2=0.0, gamma=0.0j, theta=0.0))
    assert np.allclose(op, IDENTITY2, atol=1e-15)


@pytest.mark.parametrize("params", params_grid())
def test_closed_form_against_scaling_squaring_oracle(params):
    ours = transport_closed_form(params)
    oracle = expm(0.5 * _gamma_matrix(params))
    assert np.abs(ours - oracle).max() <= 1e-12


@pytest.mark.parametrize("params", params_grid())
def test_closed_form_unimodular(params):
    assert abs(np.linalg.det(transport_closed_form(params)) - 1.0) <= 1e-10


def test_boosted_transport_is_not_unitary():
    for sh in (0.75, 2.0):
        op = transport_closed_form(transport_params(ref_worldline(sh=sh), math.pi))
        assert np.abs(op.conj().T @ op - IDENTITY2).max() > 1e-6


def test_full_period_boosted_transport_is_unitary():
    # theta = 2 pi kills the boost part even for xi > 0
    wl = ref_worldline(alpha=1.0)
    op = transport_closed_form(transport_params(wl, 2 * math.pi / 1.25))
    assert np.abs(op.conj().T @ op - IDENTITY2).max() <= 1e-12


# ----------------------------------------------------------------- spinors


def test_apply_to_spinor_rotation_action():
    theta = 0.5 * math.pi
    op = transport_closed_form(transport_params(ref_worldline(sh=0.0), math.pi))
    out = apply_to_spinor(op, "up")
    assert np.allclose(out, [math.cos(theta / 2), math.sin(theta / 2)], atol=1e-14)


def test_apply_identity_to_down():
    assert np.allclose(apply_to_spinor(IDENTITY2, "down"), spinor("down"))


def test_apply_to_spinor_boosted_mixing_structure():
    params = transport_params(ref_worldline(), math.pi)
    out = apply_to_spinor(transport_closed_form(params), "up")
    theta = params.theta
    expected_up = math.cos(theta / 2)
    expected_down = (params.eta1 - params.eta2) * math.sin(theta / 2) / theta
    assert out[0].real == pytest.approx(expected_up, abs=1e-14)
    assert out[1].real == pytest.approx(expected_down, abs=1e-14)
    out_down = apply_to_spinor(transport_closed_form(params), "down")
    assert out_down[0].real == pytest.approx(
        (params.eta1 + params.eta2) * math.sin(theta / 2) / theta, abs=1e-14
    )


def test_spinor_label_validation():
    with pytest.raises(ValueError):
        spinor("sideways")


# ------------------------------------------------------------- wigner angle


def test_wigner_angle_values():
    assert wigner_angle(1.0, 0.0, math.pi / 2) == pytest.approx(math.pi / 2, abs=1e-15)
    assert wigner_angle(0.5, XI_REF, math.pi) == pytest.approx(0.625 * math.pi, abs=1e-12)
    assert wigner_angle(0.5, XI_REF, math.pi) == pytest.approx(1.963495, abs=1e-6)


def test_wigner_angle_monotone():
    base = wigner_angle(0.5, 0.8, 1.0)
    assert wigner_angle(0.6, 0.8, 1.0) > base
    assert wigner_angle(0.5, 0.9, 1.0) > base
    assert wigner_angle(0.5, 0.8, 1.1) > base


# ---------------------------------------------------------------- numeric


def test_numeric_empty_path_is_identity():
    wl = ref_worldline()
    for steps in (1, 7):
        assert np.allclose(transport_numeric(wl, 0.0, steps), IDENTITY2, atol=1e-15)


def test_numeric_rejects_zero_steps():
    with pytest.raises(ValueError):
        transport_numeric(ref_worldline(), math.pi, 0)


def test_numeric_fixed_coefficients_matches_closed_form():
    wl = ref_worldline()
    closed = transport_closed_form(transport_params(wl, math.pi))
    num = transport_numeric(wl, math.pi, 4096)
    assert np.abs(num - closed).max() <= 1e-10


def test_numeric_partner_particle_matches_closed_form():
    wl = ref_worldline(direction=-1)
    closed = transport_closed_form(transport_params(wl, math.pi))
    num = transport_numeric(wl, math.pi, 512)
    assert np.abs(num - closed).max() <= 1e-10


def test_numeric_full_loop_holonomy():
    wl = CircularWorldline(StringGeometry(1.0), rho=1.0, xi=0.0)
    op = transport_numeric(wl, 2 * math.pi, 4096)
    assert np.allclose(op, -IDENTITY2, atol=1e-10)


def variable_mode_worldline():
    geom = PhiModulatedGeometry(alpha=0.5, epsilon=0.4, k=1)
    return CircularWorldline(geom, rho=2.0, xi=XI_REF)


def test_numeric_convergence_is_second_order():
    wl = variable_mode_worldline()
    Phi = math.pi
    ref = transport_numeric(wl, Phi, 32768)
    errors = [np.abs(transport_numeric(wl, Phi, n) - ref).max() for n in (16, 32, 64, 128, 256, 512, 1024)]
    assert errors[0] > 1e-6  # the perturbation actually bites
    for e_n, e_2n in zip(errors, errors[1:]):
        if e_2n <= 1e-10:
            break
        assert e_n / e_2n >= 1.9


def test_variable_mode_requires_path_ordering():
    # per-step generators must not commute, otherwise ordering is untested
    wl = variable_mode_worldline()
    a = transport_from_connection(wl, 0.5, 1)
    b = transport_from_connection(wl, 0.5, 1, phi0=wl.direction * 0.5)
    assert np.abs(a @ b - b @ a).max() > 1e-4


def test_transport_composition_path_ordered():
    wl = variable_mode_worldline()
    full = transport_numeric(wl, math.pi, 1024)
    first = transport_from_connection(wl, math.pi / 2, 512)
    second = transport_from_connection(wl, math.pi / 2, 512, phi0=math.pi / 2)
    assert np.abs(second @ first - full).max() <= 1e-12


def test_closed_form_composition_fixed_coefficients():
    wl = ref_worldline()
    op_a = transport_closed_form(transport_params(wl, 0.8))
    op_b = transport_closed_form(transport_params(wl, 1.3))
    op_ab = transport_closed_form(transport_params(wl, 2.1))
    assert np.abs(op_b @ op_a - op_ab).max() <= 1e-12


# ---------------------------------------------------------------- chirality


def test_dirac_transport_reduces_to_right_block():
    wl = ref_worldline()
    dirac_op = transport_numeric(wl, math.pi, 2048, representation="dirac")
    block = chiral_block(dirac_op, "right")
    closed = transport_closed_form(transport_params(wl, math.pi))
    assert np.abs(block - closed).max() <= 1e-10


def test_chiral_blocks_of_identity():
    ident = np.eye(4, dtype=complex)
    assert np.allclose(chiral_block(ident, "left"), IDENTITY2)
    assert np.allclose(chiral_block(ident, "right"), IDENTITY2)


def test_rotation_only_transport_has_equal_unitary_blocks():
    wl = ref_worldline(sh=0.0)
    dirac_op = transport_numeric(wl, math.pi, 256, representation="dirac")
    left = chiral_block(dirac_op, "left")
    right = chiral_block(dirac_op, "right")
    assert np.allclose(left, right, atol=1e-12)
    assert np.abs(left.conj().T @ left - IDENTITY2).max() <= 1e-12


def test_chiral_block_rejects_off_block_mass():
    bad = np.eye(4, dtype=complex)
    bad[0, 3] = 1e-3
    with pytest.raises(ValueError, match="not block diagonal"):
        chiral_block(bad)


def test_dirac_determinant():
    wl = ref_worldline()
    dirac_op = transport_numeric(wl, math.pi, 512, representation="dirac")
    assert abs(np.linalg.det(dirac_op) - 1.0) <= 1e-9


# ------------------------------------------------------------ c invariance


def test_transport_independent_of_unit_choice():
    ops = []
    for c in (1.0, 2.0):
        wl = CircularWorldline(StringGeometry(0.5, c=c), rho=2.0, xi=XI_REF)
        ops.append(transport_numeric(wl, math.pi, 128))
        params = transport_params(wl, math.pi)
        assert params.theta == pytest.approx(0.625 * math.pi, abs=1e-12)
    assert np.abs(ops[0] - ops[1]).max() <= 1e-12
