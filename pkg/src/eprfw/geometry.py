"""Conical (cosmic-string) spacetime: metric, tetrad, and connection 1-forms.

Index conventions used throughout the package:

* coordinate index mu runs over (t, rho, z, phi) = (0, 1, 2, 3);
* frame (orthonormal) indices a, b run 0..3 with eta = diag(-1, +1, +1, +1);
* Christoffel symbols are arrays ``gamma[lam, mu, nu]`` = Gamma^lam_{mu nu};
* connection 1-forms are arrays ``X[mu, a, b]`` with mixed frame indices,
  upper a and lower b.

The line element is ``ds^2 = -c^2 dt^2 + drho^2 + dz^2 + alpha^2 rho^2 dphi^2``
with deficit factor 0 < alpha <= 1 (alpha = 1 is flat space in cylindrical
coordinates).  The axis rho = 0 carries all of the curvature and is excluded
from the domain; everywhere else the space is flat, which the finite-difference
Riemann tensor and the holonomy deficit check verify independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

__all__ = [
    "T", "RHO", "Z", "PHI",
    "MINKOWSKI",
    "OnAxisError",
    "StringGeometry",
    "PhiModulatedGeometry",
    "SpacetimePoint",
    "Tetrad",
    "metric_at",
    "tetrad_at",
    "christoffel_at",
    "christoffel_fd",
    "spin_connection_at",
    "spin_connection_fd",
    "fw_connection_at",
    "total_connection_at",
    "riemann_at",
    "transport_frame_vector",
    "holonomy_deficit_angle",
]

# coordinate indices
T, RHO, Z, PHI = 0, 1, 2, 3

MINKOWSKI = np.diag([-1.0, 1.0, 1.0, 1.0])


class OnAxisError(ValueError):
    """Point lies on the string axis (rho <= 0), where the geometry is singular."""


@dataclass(frozen=True)
class StringGeometry:
    """Conical spacetime parameters: deficit factor ``alpha`` and light speed ``c``."""

    alpha: float
    c: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.c <= 0.0:
            raise ValueError(f"c must be positive, got {self.c}")

    def alpha_at(self, phi: float) -> float:
        """Local deficit factor; constant for the physical string geometry."""
        return self.alpha


@dataclass(frozen=True)
class PhiModulatedGeometry(StringGeometry):
    """Verification aid: deficit factor modulated along phi.

    Used only to exercise genuine path ordering in the transport integrator,
    where a phi-independent generator would make every step exact.  The
    closed-form metric/connection expressions are evaluated pointwise with
    alpha(phi); this is a synthetic variable-coefficient problem, not a
    solution of the modulated metric (no d(alpha)/dphi terms are added).
    """

    epsilon: float = 0.0
    k: int = 1

    def __post_init__(self):
        super().__post_init__()
        if abs(self.epsilon) >= 1.0 or self.alpha * (1.0 + abs(self.epsilon)) > 1.0:
            raise ValueError("modulation must keep alpha(phi) inside (0, 1]")

    def alpha_at(self, phi: float) -> float:
        return self.alpha * (1.0 + self.epsilon * math.sin(self.k * phi))


@dataclass(frozen=True)
class SpacetimePoint:
    """Event in string coordinates (t, rho, z, phi); phi is stored unwrapped."""

    t: float = 0.0
    rho: float = 1.0
    z: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if self.rho <= 0.0:
            raise OnAxisError(f"on string axis: rho must be positive, got {self.rho}")

    def shifted(self, mu: int, h: float) -> "SpacetimePoint":
        """Same event with coordinate ``mu`` offset by ``h`` (for differencing)."""
        coords = [self.t, self.rho, self.z, self.phi]
        coords[mu] += h
        return SpacetimePoint(*coords)


@dataclass(frozen=True)
class Tetrad:
    """Orthonormal frame ``e[a, mu]`` = e^a_mu and inverse ``einv[mu, a]`` = e^mu_a."""

    e: np.ndarray
    einv: np.ndarray


def metric_at(geom: StringGeometry, pt: SpacetimePoint) -> np.ndarray:
    """Metric g_{mu nu} at ``pt``: diag(-c^2, 1, 1, alpha^2 rho^2)."""
    a = geom.alpha_at(pt.phi)
    return np.diag([-geom.c**2, 1.0, 1.0, (a * pt.rho) ** 2])


def tetrad_at(geom: StringGeometry, pt: SpacetimePoint) -> Tetrad:
    """Rest-frame tetrad of the static observer, diagonal in these coordinates.

    e^0_t = c, e^1_rho = 1, e^2_z = 1, e^3_phi = alpha*rho.  The time leg
    carries the factor c so that e^a_mu e^b_nu eta_ab = g_{mu nu} holds for
    any unit choice (it reduces to 1 for the default c = 1).
    """
    a = geom.alpha_at(pt.phi)
    diag = np.array([geom.c, 1.0, 1.0, a * pt.rho])
    return Tetrad(e=np.diag(diag), einv=np.diag(1.0 / diag))


def christoffel_at(geom: StringGeometry, pt: SpacetimePoint) -> np.ndarray:
    """Levi-Civita connection; only Gamma^rho_{phi phi} and Gamma^phi_{rho phi} survive."""
    a = geom.alpha_at(pt.phi)
    gamma = np.zeros((4, 4, 4))
    gamma[RHO, PHI, PHI] = -(a**2) * pt.rho
    gamma[PHI, RHO, PHI] = gamma[PHI, PHI, RHO] = 1.0 / pt.rho
    return gamma


def christoffel_fd(geom: StringGeometry, pt: SpacetimePoint, h: float = 1e-5) -> np.ndarray:
    """Christoffel symbols from central differences of the metric.

    Independent of :func:`christoffel_at`; step h = 1e-5 balances truncation
    against round-off for first derivatives in double precision.
    """
    dg = np.zeros((4, 4, 4))  # dg[sig, mu, nu] = d_sig g_{mu nu}
    for sig in range(4):
        gp = metric_at(geom, pt.shifted(sig, +h))
        gm = metric_at(geom, pt.shifted(sig, -h))
        dg[sig] = (gp - gm) / (2.0 * h)
    ginv = np.linalg.inv(metric_at(geom, pt))
    # Gamma^lam_{mu nu} = 1/2 g^{lam sig} (d_mu g_{sig nu} + d_nu g_{sig mu} - d_sig g_{mu nu})
    return 0.5 * np.einsum(
        "ls,smn->lmn",
        ginv,
        np.einsum("msn->smn", dg) + np.einsum("nsm->smn", dg) - dg,
    )


def _frame_covariant_derivative(geom, pt, gamma):
    """cov[mu, nu, b] = d_mu e^nu_b + Gamma^nu_{mu sig} e^sig_b for this tetrad family."""
    a = geom.alpha_at(pt.phi)
    deinv = np.zeros((4, 4, 4))  # deinv[mu, nu, b] = d_mu e^nu_b
    deinv[RHO, PHI, 3] = -1.0 / (a * pt.rho**2)
    einv = tetrad_at(geom, pt).einv
    return deinv + np.einsum("nms,sb->mnb", gamma, einv)


def spin_connection_at(
    geom: StringGeometry, pt: SpacetimePoint, gamma: np.ndarray | None = None
) -> np.ndarray:
    """Spin connection omega[mu, a, b] of the rest-frame tetrad.

    Computed as e^a_nu (d_mu e^nu_b + Gamma^nu_{mu sig} e^sig_b).  The overall
    sign/index placement is fixed so that the phi components come out as
    omega_phi^1_3 = -alpha, omega_phi^3_1 = +alpha, the set that sums with the
    boost term to the total transport connection used downstream (the opposite
    placement would flip every precession angle).

    ``gamma`` may supply precomputed Christoffel symbols, e.g. the
    finite-difference ones, to rebuild the same object through an
    independent route.
    """
    if gamma is None:
        gamma = christoffel_at(geom, pt)
    cov = _frame_covariant_derivative(geom, pt, gamma)
    return np.einsum("an,mnb->mab", tetrad_at(geom, pt).e, cov)


def spin_connection_fd(geom: StringGeometry, pt: SpacetimePoint, h: float = 1e-5) -> np.ndarray:
    """Spin connection through the generic pipeline with finite-difference Christoffels."""
    return spin_connection_at(geom, pt, gamma=christoffel_fd(geom, pt, h))


def fw_connection_at(
    geom: StringGeometry, pt: SpacetimePoint, accel: np.ndarray
) -> np.ndarray:
    """Fermi-Walker boost 1-form tau[mu, a, b] for proper acceleration ``accel``.

    tau_mu^a_b = (a^nu / c^2) (e^a_nu e_{b mu} - e^a_mu e_{b nu}) with
    e_{b mu} = eta_{bc} e^c_mu; ``accel`` is given in coordinate components.
    """
    accel = np.asarray(accel, dtype=float)
    tet = tetrad_at(geom, pt)
    lower = MINKOWSKI @ tet.e  # lower[b, mu] = e_{b mu}
    ae = tet.e @ accel     # ae[a] = e^a_nu a^nu
    al = lower @ accel     # al[b] = e_{b nu} a^nu
    tau = np.einsum("a,bm->mab", ae, lower) - np.einsum("am,b->mab", tet.e, al)
    return tau / geom.c**2


def total_connection_at(
    geom: StringGeometry, pt: SpacetimePoint, accel: np.ndarray
) -> np.ndarray:
    """Total transport connection: spin connection plus Fermi-Walker term."""
    return spin_connection_at(geom, pt) + fw_connection_at(geom, pt, accel)


def riemann_at(geom: StringGeometry, pt: SpacetimePoint, h: float = 1e-4) -> np.ndarray:
    """Riemann tensor R^lam_{mu nu kap} from finite differences of the Christoffels.

    Vanishes off the axis (all curvature is concentrated at rho = 0); the
    larger step h = 1e-4 suits the second-derivative round-off balance.
    """
    dgam = np.zeros((4, 4, 4, 4))  # dgam[sig, lam, mu, nu] = d_sig Gamma^lam_{mu nu}
    for sig in range(4):
        gp = christoffel_at(geom, pt.shifted(sig, +h))
        gm = christoffel_at(geom, pt.shifted(sig, -h))
        dgam[sig] = (gp - gm) / (2.0 * h)
    gamma = christoffel_at(geom, pt)
    riem = np.einsum("nlmk->lmnk", dgam) - np.einsum("klmn->lmnk", dgam)
    riem += np.einsum("lns,smk->lmnk", gamma, gamma) - np.einsum("lks,smn->lmnk", gamma, gamma)
    return riem


def transport_frame_vector(
    geom: StringGeometry,
    v: np.ndarray,
    Phi: float,
    rho: float = 1.0,
    steps: int = 256,
) -> tuple[np.ndarray, float]:
    """Parallel-transport frame components of ``v`` along a circle of radius ``rho``.

    Integrates dV^a/dphi = -omega_phi^a_b V^b over the arc [0, Phi] in
    ``steps`` midpoint sub-arcs and tracks the accumulated rotation angle in
    the (1, 3) plane (unwrapped; steps must keep each increment below pi).
    Returns the transported components and the signed rotation angle.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    v = np.asarray(v, dtype=float).copy()
    dphi = Phi / steps
    angle = 0.0
    for k in range(steps):
        pt = SpacetimePoint(rho=rho, phi=(k + 0.5) * dphi)
        w = spin_connection_at(geom, pt)[PHI]
        prev = math.atan2(v[3], v[1]) if (v[1] or v[3]) else None
        v = expm(-w * dphi) @ v
        if prev is not None:
            cur = math.atan2(v[3], v[1])
            d = cur - prev
            d = (d + math.pi) % (2.0 * math.pi) - math.pi
            angle += d
    return v, angle


def holonomy_deficit_angle(geom: StringGeometry, Phi: float = 2.0 * math.pi, steps: int = 512) -> float:
    """Deficit rotation of a frame vector carried around an arc Phi at rest.

    The transport rotates the vector by -alpha*Phi in the (1, 3) plane; the
    flat-space reference is -Phi, so the deficit is (1 - alpha) Phi, i.e.
    2 pi (1 - alpha) for a full loop.
    """
    _, angle = transport_frame_vector(geom, np.array([0.0, 1.0, 0.0, 0.0]), Phi, steps=steps)
    return Phi + angle
