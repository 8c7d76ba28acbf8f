"""Self-verification battery: every module invariant and oracle comparison.

Each check reports its name, the tolerance it enforces, the observed error,
and pass/fail.  Investigative checks (quantities the theory leaves open, such
as the restoration residual at nonzero rapidity) carry ``tolerance=None`` and
always pass; they exist to put the measured numbers in the report.

``run_checks(inject_omega_sign_flip=True)`` corrupts the sign of the spin
connection fed to the path-ordered integrator; the end-to-end pair-evolution
check must then fail, which proves the suite can catch a wrong connection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from . import epr, geometry, kinematics, transport
from .geometry import (
    MINKOWSKI,
    PhiModulatedGeometry,
    SpacetimePoint,
    StringGeometry,
)
from .kinematics import CircularWorldline

__all__ = ["CheckResult", "run_checks", "ALPHAS", "RHOS", "SINH_XIS", "PHIS"]

ALPHAS = (0.25, 0.5, 0.9, 1.0)
RHOS = (0.5, 1.0, 2.0)
SINH_XIS = (0.0, 0.75, 2.0)
PHIS = (math.pi / 4, math.pi / 2, math.pi, 2 * math.pi)

TWO_SQRT2 = 2.0 * math.sqrt(2.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    tolerance: float | None
    observed: float
    passed: bool
    note: str = ""

    def __post_init__(self):
        # numpy scalars leak in from the comparisons; keep plain types so the
        # report serializes cleanly
        object.__setattr__(self, "observed", float(self.observed))
        object.__setattr__(self, "passed", bool(self.passed))
        if self.tolerance is not None:
            object.__setattr__(self, "tolerance", float(self.tolerance))

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tol = "----" if self.tolerance is None else f"{self.tolerance:.1e}"
        text = f"[{status}] {self.name:<38s} observed={self.observed:.3e} tol={tol}"
        return text + (f"  ({self.note})" if self.note else "")


def _grid_points():
    for alpha in ALPHAS:
        for rho in RHOS:
            yield StringGeometry(alpha), SpacetimePoint(rho=rho, phi=0.7)


def _worldlines():
    for alpha in ALPHAS:
        for rho in RHOS:
            for sh in SINH_XIS:
                yield CircularWorldline(StringGeometry(alpha), rho=rho, xi=math.asinh(sh))


def _expected_connections(geom, wl):
    """Closed-form nonzero component tables (with antisymmetric partners)."""
    a_rho = float(kinematics.proper_acceleration(wl)[geometry.RHO])
    c2 = geom.c**2
    alpha, rho = geom.alpha, wl.rho
    omega = np.zeros((4, 4, 4))
    omega[geometry.PHI, 1, 3] = -alpha
    omega[geometry.PHI, 3, 1] = +alpha
    tau = np.zeros((4, 4, 4))
    tau[geometry.T, 0, 1] = tau[geometry.T, 1, 0] = -a_rho / c2
    tau[geometry.Z, 1, 2] = a_rho / c2
    tau[geometry.Z, 2, 1] = -a_rho / c2
    tau[geometry.PHI, 1, 3] = alpha * rho * a_rho / c2
    tau[geometry.PHI, 3, 1] = -alpha * rho * a_rho / c2
    return omega, tau, omega + tau


def _flipped_connection(geom, pt, accel):
    """Mutated total connection with the spin-connection sign inverted."""
    return -geometry.spin_connection_at(geom, pt) + geometry.fw_connection_at(geom, pt, accel)


# ---------------------------------------------------------------- geometry


def check_tetrad_identities() -> CheckResult:
    err = 0.0
    for geom, pt in _grid_points():
        g = geometry.metric_at(geom, pt)
        tet = geometry.tetrad_at(geom, pt)
        err = max(err, np.abs(tet.e.T @ MINKOWSKI @ tet.e - g).max())
        err = max(err, np.abs(tet.e @ tet.einv - np.eye(4)).max())
        err = max(err, np.abs(tet.einv @ tet.e - np.eye(4)).max())
    return CheckResult("tetrad_identities", 1e-12, err, err <= 1e-12)


def check_connection_tables() -> CheckResult:
    err = 0.0
    for wl in _worldlines():
        geom, pt = wl.geom, wl.point(0.0)
        accel = kinematics.proper_acceleration(wl)
        omega_exp, tau_exp, total_exp = _expected_connections(geom, wl)
        err = max(err, np.abs(geometry.spin_connection_at(geom, pt) - omega_exp).max())
        err = max(err, np.abs(geometry.fw_connection_at(geom, pt, accel) - tau_exp).max())
        err = max(err, np.abs(geometry.total_connection_at(geom, pt, accel) - total_exp).max())
    return CheckResult("connection_component_tables", 1e-12, err, err <= 1e-12)


def check_connection_antisymmetry() -> CheckResult:
    err = 0.0
    for wl in _worldlines():
        geom, pt = wl.geom, wl.point(0.0)
        accel = kinematics.proper_acceleration(wl)
        for form in (
            geometry.spin_connection_at(geom, pt),
            geometry.fw_connection_at(geom, pt, accel),
            geometry.total_connection_at(geom, pt, accel),
        ):
            raised = np.einsum("mac,cb->mab", form, MINKOWSKI)  # X_mu^{ab}
            err = max(err, np.abs(raised + np.einsum("mab->mba", raised)).max())
    return CheckResult("connection_antisymmetry_raised", 1e-12, err, err <= 1e-12)


def check_christoffel_oracle() -> CheckResult:
    err = 0.0
    for geom, pt in _grid_points():
        err = max(err, np.abs(geometry.christoffel_fd(geom, pt) - geometry.christoffel_at(geom, pt)).max())
    return CheckResult("christoffel_finite_difference", 1e-6, err, err <= 1e-6)


def check_spin_connection_pipeline() -> CheckResult:
    err = 0.0
    for geom, pt in _grid_points():
        err = max(err, np.abs(geometry.spin_connection_fd(geom, pt) - geometry.spin_connection_at(geom, pt)).max())
    return CheckResult("spin_connection_generic_pipeline", 1e-6, err, err <= 1e-6)


def check_riemann_flatness() -> CheckResult:
    err = 0.0
    for geom, pt in _grid_points():
        err = max(err, np.abs(geometry.riemann_at(geom, pt)).max())
    return CheckResult("riemann_off_axis_flatness", 1e-6, err, err <= 1e-6)


def check_holonomy_deficit() -> CheckResult:
    err = 0.0
    for alpha in ALPHAS:
        deficit = geometry.holonomy_deficit_angle(StringGeometry(alpha))
        err = max(err, abs(deficit - 2.0 * math.pi * (1.0 - alpha)))
    return CheckResult("holonomy_deficit_full_loop", 1e-8, err, err <= 1e-8)


# -------------------------------------------------------------- kinematics


def check_velocity_normalization() -> CheckResult:
    err = 0.0
    for wl in _worldlines():
        g = geometry.metric_at(wl.geom, wl.point())
        u = kinematics.four_velocity(wl)
        a = kinematics.proper_acceleration(wl)
        err = max(err, abs(u @ g @ u + wl.geom.c**2))
        err = max(err, abs(u @ g @ a))
    return CheckResult("velocity_norm_and_orthogonality", 1e-12, err, err <= 1e-12)


def check_acceleration_oracle() -> CheckResult:
    err = 0.0
    for wl in _worldlines():
        err = max(
            err,
            np.abs(
                kinematics.proper_acceleration(wl) - kinematics.acceleration_from_velocity(wl)
            ).max(),
        )
    return CheckResult("acceleration_covariant_oracle", 1e-8, err, err <= 1e-8)


# ---------------------------------------------------------------- transport


def _params_grid():
    for alpha in ALPHAS:
        for sh in SINH_XIS:
            for Phi in PHIS:
                for direction in (+1, -1):
                    wl = CircularWorldline(StringGeometry(alpha), rho=1.0, xi=math.asinh(sh), direction=direction)
                    yield transport.transport_params(wl, Phi)


def check_gamma_matrix_square() -> CheckResult:
    err = 0.0
    for params in _params_grid():
        gam = transport._gamma_matrix(params)
        err = max(err, np.abs(gam @ gam - (params.gamma**2) * np.eye(2)).max())
    return CheckResult("gamma_matrix_square_identity", 1e-12, err, err <= 1e-12)


def check_transport_determinant() -> CheckResult:
    err = 0.0
    for params in _params_grid():
        err = max(err, abs(np.linalg.det(transport.transport_closed_form(params)) - 1.0))
    return CheckResult("transport_determinant", 1e-10, err, err <= 1e-10)


def check_closed_form_vs_expm() -> CheckResult:
    err = 0.0
    for params in _params_grid():
        xi_op = transport.transport_closed_form(params)
        err = max(err, np.abs(xi_op - expm(0.5 * transport._gamma_matrix(params))).max())
    return CheckResult("closed_form_vs_scaling_squaring", 1e-12, err, err <= 1e-12)


def _reference_worldline(direction=+1):
    return CircularWorldline(StringGeometry(0.5), rho=2.0, xi=math.asinh(0.75), direction=direction)


def check_numeric_fixed_coefficients(steps: int = 4096) -> CheckResult:
    wl = _reference_worldline()
    Phi = math.pi
    num = transport.transport_numeric(wl, Phi, steps)
    ref = transport.transport_closed_form(transport.transport_params(wl, Phi))
    err = float(np.abs(num - ref).max())
    return CheckResult("numeric_transport_fixed_coefficients", 1e-10, err, err <= 1e-10,
                       note=f"N={steps}")


def convergence_errors(ns=(16, 32, 64, 128, 256, 512, 1024), steps_ref: int = 32768):
    """Integrator errors vs a dense reference in the variable-coefficient mode."""
    geom = PhiModulatedGeometry(alpha=0.5, epsilon=0.4, k=1)
    wl = CircularWorldline(geom, rho=2.0, xi=math.asinh(0.75))
    Phi = math.pi
    ref = transport.transport_numeric(wl, Phi, steps_ref)
    return [float(np.abs(transport.transport_numeric(wl, Phi, n) - ref).max()) for n in ns]


def check_integrator_convergence() -> CheckResult:
    errors = convergence_errors()
    floor = 1e-10
    ratios = [
        errors[i] / errors[i + 1]
        for i in range(len(errors) - 1)
        if errors[i + 1] > floor
    ]
    worst = min(ratios) if ratios else float("inf")
    return CheckResult(
        "integrator_convergence_order", 1.9, worst, worst >= 1.9,
        note="threshold is a lower bound on the error ratio per step doubling",
    )


def check_single_step_vs_dense(steps_dense: int = 65536) -> CheckResult:
    wl = _reference_worldline()
    Phi = math.pi
    ref = transport.transport_closed_form(transport.transport_params(wl, Phi))
    err1 = float(np.abs(transport.transport_numeric(wl, Phi, 1) - ref).max())
    err_dense = float(np.abs(transport.transport_numeric(wl, Phi, steps_dense) - ref).max())
    ratio = err1 / err_dense if err_dense > 0 else float("inf")
    return CheckResult(
        "single_step_vs_dense_product", None, ratio, True,
        note=f"constant generator: err(N=1)={err1:.2e}, err(N={steps_dense})={err_dense:.2e}",
    )


def check_dirac_chiral_block(steps: int = 4096) -> CheckResult:
    wl = _reference_worldline()
    Phi = math.pi
    dirac_op = transport.transport_numeric(wl, Phi, steps, representation="dirac")
    block = transport.chiral_block(dirac_op, "right")
    ref = transport.transport_closed_form(transport.transport_params(wl, Phi))
    err = float(np.abs(block - ref).max())
    return CheckResult("dirac_right_block_reduction", 1e-8, err, err <= 1e-8, note=f"N={steps}")


def check_wigner_rest_frame() -> CheckResult:
    err = 0.0
    for alpha in ALPHAS:
        for Phi in (math.pi / 4, math.pi / 2, math.pi):
            wl = CircularWorldline(StringGeometry(alpha), rho=1.0, xi=0.0)
            op = transport.transport_closed_form(transport.transport_params(wl, Phi))
            err = max(err, abs(transport.rotation_angle(op) - transport.wigner_angle(alpha, 0.0, Phi)))
    return CheckResult("wigner_angle_rest_frame", 1e-10, err, err <= 1e-10)


# --------------------------------------------------------------------- epr


def _closed_pair(alpha, xi, Phi, connection_fn=None, steps=None):
    geom = StringGeometry(alpha)
    ops = []
    for direction in (+1, -1):
        wl = CircularWorldline(geom, rho=1.0, xi=xi, direction=direction)
        if steps is None:
            ops.append(transport.transport_closed_form(transport.transport_params(wl, Phi)))
        else:
            ops.append(
                transport.transport_from_connection(wl, Phi, steps, connection_fn=connection_fn)
            )
    return epr.evolve_pair(epr.initial_state(), ops[0], ops[1])


def check_pair_evolution_closed_form() -> CheckResult:
    err = 0.0
    for alpha in ALPHAS:
        for sh in SINH_XIS:
            for Phi in PHIS:
                xi = math.asinh(sh)
                evolved = _closed_pair(alpha, xi, Phi)
                expected = epr.final_state_closed_form(alpha, xi, Phi)
                err = max(err, np.abs(evolved - expected).max())
    return CheckResult("pair_evolution_closed_form", 1e-10, err, err <= 1e-10)


def check_pair_evolution_from_connection(inject_omega_sign_flip: bool = False) -> CheckResult:
    connection_fn = _flipped_connection if inject_omega_sign_flip else None
    err = 0.0
    for alpha, sh, Phi in ((0.5, 0.75, math.pi), (0.9, 2.0, math.pi / 2), (1.0, 0.0, math.pi)):
        xi = math.asinh(sh)
        evolved = _closed_pair(alpha, xi, Phi, connection_fn=connection_fn, steps=512)
        expected = epr.final_state_closed_form(alpha, xi, Phi)
        err = max(err, np.abs(evolved - expected).max())
    note = "spin-connection sign flip injected" if inject_omega_sign_flip else "N=512"
    return CheckResult("pair_evolution_from_connection", 1e-9, err, err <= 1e-9, note=note)


def check_chsh_singlet() -> CheckResult:
    err = abs(epr.chsh_direct(epr.initial_state()) - TWO_SQRT2)
    return CheckResult("chsh_singlet_tsirelson", 1e-12, err, err <= 1e-12)


def check_chsh_closed_theta_zero() -> CheckResult:
    err = 0.0
    for sh in SINH_XIS:
        err = max(err, abs(epr.chsh_closed_form(0.0, math.asinh(sh)) - TWO_SQRT2))
    return CheckResult("chsh_closed_form_at_theta_zero", 1e-12, err, err <= 1e-12)


def check_chsh_rest_frame_equivalence() -> CheckResult:
    err = 0.0
    for alpha in ALPHAS:
        for Phi in PHIS:
            evolved = _closed_pair(alpha, 0.0, Phi)
            theta = transport.wigner_angle(alpha, 0.0, Phi)
            err = max(err, abs(epr.chsh_direct(evolved) - epr.chsh_closed_form(theta, 0.0)))
    return CheckResult("chsh_direct_vs_closed_rest_frame", 1e-10, err, err <= 1e-10)


def check_restoration_rest_frame() -> CheckResult:
    err = 0.0
    for alpha in ALPHAS:
        for Phi in PHIS:
            evolved = _closed_pair(alpha, 0.0, Phi)
            theta = transport.wigner_angle(alpha, 0.0, Phi)
            err = max(err, abs(epr.chsh_restored(evolved, theta) - TWO_SQRT2))
    return CheckResult("chsh_restoration_rest_frame", 1e-10, err, err <= 1e-10)


def check_restoration_residual_boosted() -> CheckResult:
    worst = 0.0
    for sh in (0.75, 2.0):
        for Phi in (math.pi / 4, math.pi / 2):
            report = epr.bell_report(0.5, math.asinh(sh), Phi)
            worst = max(worst, report.restored_residual)
    return CheckResult(
        "restoration_residual_boosted", None, worst, True,
        note="investigative: no asserted value at xi > 0",
    )


def check_chsh_normalization_discrepancy() -> CheckResult:
    worst = 0.0
    for sh in (0.75, 2.0):
        for Phi in (math.pi / 4, math.pi / 2):
            report = epr.bell_report(0.5, math.asinh(sh), Phi)
            worst = max(worst, abs(report.chsh_direct - report.chsh_closed))
    return CheckResult(
        "chsh_direct_vs_closed_boosted", None, worst, True,
        note="investigative: closed form is unnormalized at xi > 0",
    )


def check_c_scaling_regression() -> CheckResult:
    """The c^2 factors must drop out of every physical output at c = 2."""
    err = 0.0
    for c in (1.0, 2.0):
        geom = StringGeometry(0.5, c=c)
        pt = SpacetimePoint(rho=2.0)
        tet = geometry.tetrad_at(geom, pt)
        err = max(err, np.abs(tet.e.T @ MINKOWSKI @ tet.e - geometry.metric_at(geom, pt)).max())
        wl = CircularWorldline(geom, rho=2.0, xi=math.asinh(0.75))
        err = max(err, abs(kinematics.velocity_norm(wl) + c**2))
    op1 = transport.transport_numeric(
        CircularWorldline(StringGeometry(0.5, c=1.0), 2.0, math.asinh(0.75)), math.pi, 64
    )
    op2 = transport.transport_numeric(
        CircularWorldline(StringGeometry(0.5, c=2.0), 2.0, math.asinh(0.75)), math.pi, 64
    )
    err = max(err, float(np.abs(op1 - op2).max()))
    return CheckResult("c_scaling_regression", 1e-12, err, err <= 1e-12)


def run_checks(inject_omega_sign_flip: bool = False, steps_dense: int = 65536) -> list[CheckResult]:
    """Run the full battery; the optional mutation must make the suite fail."""
    return [
        check_tetrad_identities(),
        check_connection_tables(),
        check_connection_antisymmetry(),
        check_christoffel_oracle(),
        check_spin_connection_pipeline(),
        check_riemann_flatness(),
        check_holonomy_deficit(),
        check_velocity_normalization(),
        check_acceleration_oracle(),
        check_gamma_matrix_square(),
        check_transport_determinant(),
        check_closed_form_vs_expm(),
        check_numeric_fixed_coefficients(),
        check_integrator_convergence(),
        check_single_step_vs_dense(steps_dense),
        check_dirac_chiral_block(),
        check_wigner_rest_frame(),
        check_pair_evolution_closed_form(),
        check_pair_evolution_from_connection(inject_omega_sign_flip),
        check_chsh_singlet(),
        check_chsh_closed_theta_zero(),
        check_chsh_rest_frame_equivalence(),
        check_restoration_rest_frame(),
        check_restoration_residual_boosted(),
        check_chsh_normalization_discrepancy(),
        check_c_scaling_regression(),
    ]
