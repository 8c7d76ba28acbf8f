"""Bell basis, pair evolution under spin transport, and CHSH machinery.

Two-qubit amplitudes are length-4 complex vectors in the product basis
(|up,up>, |up,down>, |down,up>, |down,down>), with the particle sent toward
phi = +Phi as the first tensor factor.  Transported states are generally not
normalized (the boost part of the transport is non-unitary on the spin factor
alone), so expectation values divide by the state norm and reports carry the
raw norm alongside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .geometry import StringGeometry
from .kinematics import CircularWorldline
from .transport import (
    SIGMA1,
    SIGMA3,
    transport_closed_form,
    transport_params,
    wigner_angle,
)

__all__ = [
    "RESTORATION_ASSIGNMENT",
    "BellBasis",
    "MeasurementSettings",
    "BellReport",
    "bell_states",
    "initial_state",
    "evolve_pair",
    "final_state_closed_form",
    "state_norm",
    "bell_decomposition",
    "chsh_settings",
    "correlator",
    "chsh_value",
    "chsh_direct",
    "chsh_closed_form",
    "roty",
    "restored_settings",
    "chsh_restored",
    "bell_report",
    "same_ray",
]

# The observer at +Phi rotates their measurement axes by +theta about the
# 2-axis (the observer at -Phi by -theta).  +1 is the assignment that returns
# the CHSH value to 2*sqrt(2) at xi = 0; the selection test freezes it here.
RESTORATION_ASSIGNMENT = +1


class BellBasis(NamedTuple):
    psi_plus: np.ndarray
    psi_minus: np.ndarray
    phi_plus: np.ndarray
    phi_minus: np.ndarray


class MeasurementSettings(NamedTuple):
    a: np.ndarray
    a_prime: np.ndarray
    b: np.ndarray
    b_prime: np.ndarray


def bell_states() -> BellBasis:
    """The four maximally entangled states psi+-, phi+- as amplitude vectors."""
    r = 1.0 / math.sqrt(2.0)
    return BellBasis(
        psi_plus=np.array([0.0, r, r, 0.0], dtype=complex),
        psi_minus=np.array([0.0, r, -r, 0.0], dtype=complex),
        phi_plus=np.array([r, 0.0, 0.0, r], dtype=complex),
        phi_minus=np.array([r, 0.0, 0.0, -r], dtype=complex),
    )


def initial_state() -> np.ndarray:
    """The singlet psi- emitted at the source (phi = 0)."""
    return bell_states().psi_minus.copy()


def evolve_pair(initial: np.ndarray, xi_plus: np.ndarray, xi_minus: np.ndarray) -> np.ndarray:
    """Apply per-particle transport operators: (xi_plus (x) xi_minus) |initial>."""
    return np.kron(np.asarray(xi_plus), np.asarray(xi_minus)) @ np.asarray(initial, dtype=complex)


def final_state_closed_form(alpha: float, xi: float, Phi: float, branch: int = +1) -> np.ndarray:
    """Closed-form transported pair state.

    cos(theta) |psi-> + branch * sin(theta) (sinh(xi) |phi-> + cosh(xi) |phi+>)
    with theta = alpha * Phi * cosh(xi).  The relative phase between the psi-
    and phi blocks is real: applying the two closed-form transport operators
    to the singlet (:func:`evolve_pair`) produces exactly this state, which
    the pair-evolution test asserts amplitude by amplitude.  ``branch = -1``
    selects the mirror labeling with the two particles' roles swapped,
    equivalent to continuing the azimuth to -Phi.

    The squared norm is cos^2(theta) + sin^2(theta) cosh(2 xi) >= 1.
    """
    if branch not in (+1, -1):
        raise ValueError(f"branch must be +1 or -1, got {branch}")
    theta = wigner_angle(alpha, xi, Phi)
    basis = bell_states()
    return math.cos(theta) * basis.psi_minus + branch * math.sin(theta) * (
        math.sinh(xi) * basis.phi_minus + math.cosh(xi) * basis.phi_plus
    )


def state_norm(s: np.ndarray) -> float:
    return float(np.linalg.norm(s))


def bell_decomposition(s: np.ndarray) -> np.ndarray:
    """Coefficients of ``s`` in the Bell basis, ordered (psi+, psi-, phi+, phi-)."""
    basis = bell_states()
    return np.array(
        [
            np.vdot(basis.psi_plus, s),
            np.vdot(basis.psi_minus, s),
            np.vdot(basis.phi_plus, s),
            np.vdot(basis.phi_minus, s),
        ]
    )


def chsh_settings() -> MeasurementSettings:
    """Singlet-optimal spin observables a, a', b, b' in the 1-3 plane."""
    r = 1.0 / math.sqrt(2.0)
    return MeasurementSettings(
        a=r * (SIGMA1 + SIGMA3),
        a_prime=r * (-SIGMA1 + SIGMA3),
        b=SIGMA3.copy(),
        b_prime=SIGMA1.copy(),
    )


def correlator(s: np.ndarray, A: np.ndarray, B: np.ndarray) -> float:
    """Normalized expectation <s| A (x) B |s> / <s|s> of a joint spin measurement."""
    s = np.asarray(s, dtype=complex)
    n2 = np.vdot(s, s).real
    if n2 <= 0.0 or not np.isfinite(n2):
        raise ValueError("correlator of a zero-norm state is undefined")
    val = np.vdot(s, np.kron(A, B) @ s) / n2
    return float(val.real)


def chsh_value(s: np.ndarray, settings: MeasurementSettings) -> float:
    """|<ab> + <a'b> + <ab'> - <a'b'>| for the given settings."""
    a, ap, b, bp = settings
    return abs(
        correlator(s, a, b)
        + correlator(s, ap, b)
        + correlator(s, a, bp)
        - correlator(s, ap, bp)
    )


def chsh_direct(s: np.ndarray) -> float:
    """CHSH combination of the fixed settings on state ``s``."""
    return chsh_value(s, chsh_settings())


def chsh_closed_form(theta: float, xi: float) -> float:
    """Closed-form CHSH value of the transported (unnormalized) pair state.

    sqrt(2) * | -cos(2 theta) - cos^2(theta) + cosh(2 xi) sin^2(theta) |.

    The cosh(2 xi) term enters with a plus sign, i.e. as (eta1^2 + eta2^2)
    over |gamma|^2: this is the combination that equals the direct CHSH
    expectation of the transported state (exactly at xi = 0, and up to the
    state norm for xi > 0, since this closed form does not normalize).
    Reading the ratio against the signed gamma^2 instead would flip the term
    and disagree with the direct computation already at xi = 0.
    """
    return math.sqrt(2.0) * abs(
        -math.cos(2.0 * theta)
        - math.cos(theta) ** 2
        + math.cosh(2.0 * xi) * math.sin(theta) ** 2
    )


def roty(angle: float) -> np.ndarray:
    """Spin-half rotation about the 2-axis by ``angle``: exp(-i angle sigma^2 / 2)."""
    c, s = math.cos(0.5 * angle), math.sin(0.5 * angle)
    return np.array([[c, -s], [s, c]], dtype=complex)


def restored_settings(theta: float, assignment: int = RESTORATION_ASSIGNMENT) -> MeasurementSettings:
    """CHSH settings with each observer's axes rotated against the precession.

    The observer at +Phi conjugates their observables with a rotation by
    ``assignment * theta`` about the 2-axis, the observer at -Phi with the
    opposite rotation.
    """
    if assignment not in (+1, -1):
        raise ValueError(f"assignment must be +1 or -1, got {assignment}")
    base = chsh_settings()
    r1 = roty(assignment * theta)
    r2 = roty(-assignment * theta)

    def rotate(r, op):
        return r @ op @ r.conj().T

    return MeasurementSettings(
        a=rotate(r1, base.a),
        a_prime=rotate(r1, base.a_prime),
        b=rotate(r2, base.b),
        b_prime=rotate(r2, base.b_prime),
    )


def chsh_restored(s: np.ndarray, theta: float, assignment: int = RESTORATION_ASSIGNMENT) -> float:
    """CHSH combination after both observers rotate their axes by -+theta."""
    return chsh_value(s, restored_settings(theta, assignment))


def same_ray(x: np.ndarray, y: np.ndarray, atol: float = 1e-10) -> bool:
    """Whether two amplitude vectors agree up to one global phase.

    The phase is extracted from the largest-magnitude coefficient of ``x``.
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    k = int(np.argmax(np.abs(x)))
    if abs(x[k]) == 0.0:
        return bool(np.allclose(y, 0.0, atol=atol))
    phase = y[k] / x[k]
    mag = abs(phase)
    if abs(mag - 1.0) > atol:
        return False
    return bool(np.allclose(x * phase, y, atol=atol))


@dataclass(frozen=True)
class BellReport:
    """Summary of one transported-pair evaluation at (alpha, xi, Phi)."""

    alpha: float
    xi: float
    Phi: float
    theta: float
    norm: float
    chsh_direct: float
    chsh_closed: float
    chsh_restored: float
    restored_residual: float
    bell_coefficients: tuple  # (psi-, psi+, phi-, phi+) components


def bell_report(
    alpha: float,
    xi: float,
    Phi: float,
    c: float = 1.0,
    assignment: int = RESTORATION_ASSIGNMENT,
) -> BellReport:
    """Evolve the singlet with the two closed-form transport operators and measure.

    The orbit radius drops out of every reported quantity, so a unit-radius
    worldline pair is used internally.
    """
    geom = StringGeometry(alpha=alpha, c=c)
    xi_plus = transport_closed_form(
        transport_params(CircularWorldline(geom, rho=1.0, xi=xi, direction=+1), Phi)
    )
    xi_minus = transport_closed_form(
        transport_params(CircularWorldline(geom, rho=1.0, xi=xi, direction=-1), Phi)
    )
    state = evolve_pair(initial_state(), xi_plus, xi_minus)
    theta = wigner_angle(alpha, xi, Phi)
    restored = chsh_restored(state, theta, assignment)
    coeffs = bell_decomposition(state)
    return BellReport(
        alpha=alpha,
        xi=xi,
        Phi=Phi,
        theta=theta,
        norm=state_norm(state),
        chsh_direct=chsh_direct(state),
        chsh_closed=chsh_closed_form(theta, xi),
        chsh_restored=restored,
        restored_residual=abs(restored - 2.0 * math.sqrt(2.0)),
        bell_coefficients=(coeffs[1], coeffs[0], coeffs[3], coeffs[2]),
    )
