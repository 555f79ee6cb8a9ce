"""Coefficients of d/dmu and d/domega in the frame-adapted streaming
term, in every derivable form, plus the assembled directional
derivative Omega . grad Psi."""
from __future__ import annotations

import dataclasses
import enum
import math

import numpy as np

from .derivatives import DEFAULT_CFG, DiffConfig, FrameJet, frame_jet
from .errors import (FoliationMissing, InconsistentDirection, OutOfRange,
                     PolarDirection)
from .frames import FramePoint

_POLAR_TOL = 1e-14
_FOLIATION_TOL = 1e-6


class MuForm(enum.Enum):
    CURVE_CURVATURE = "curve-curvature"
    SURFACE_CURVATURE = "surface-curvature"


class OmegaForm(enum.Enum):
    DIRECT_TB = "direct-tb"
    DIRECT_BT = "direct-bt"
    CURVE_CURVATURE = "curve-curvature"
    SURFACE_B = "surface-b"
    SURFACE_T = "surface-t"


@dataclasses.dataclass(frozen=True)
class StreamingCoefficients:
    """a_mu and a_omega with their named contributions.

    breakdown keys: mu_surface, mu_curve_n, omega_curve, omega_wind,
    omega_tilt.  The tilt entry is the azimuth drift produced by the
    mu-level change along the ray; without it the assembled
    Omega . grad Psi fails the linear-function identity.
    """

    a_mu: float
    a_omega: float
    breakdown: dict
    at: tuple
    frame: FramePoint

    def __post_init__(self):
        bd = self.breakdown
        if abs(self.a_mu - bd["mu_surface"] - bd["mu_curve_n"]) > 1e-10:
            raise ValueError("a_mu breakdown inconsistent")
        resid = (self.a_omega - bd["omega_curve"] - bd["omega_wind"]
                 - bd["omega_tilt"])
        if abs(resid) > 1e-10:
            raise ValueError("a_omega breakdown inconsistent")


def _foliation_defect_from(jet_vec, jet_jac) -> float:
    rot = np.array([jet_jac[2, 1] - jet_jac[1, 2],
                    jet_jac[0, 2] - jet_jac[2, 0],
                    jet_jac[1, 0] - jet_jac[0, 1]])
    return float(jet_vec @ rot)


def _angles(mu: float, omega: float):
    s = math.sqrt(max(0.0, 1.0 - mu * mu))
    return s, math.cos(omega), math.sin(omega)


def grad_mu(frame_field, r, mu, omega, form: MuForm = MuForm.CURVE_CURVATURE,
            cfg: DiffConfig = DEFAULT_CFG) -> float:
    """Rate of change of mu = Omega . n along a straight ray."""
    if not -1.0 <= mu <= 1.0:
        raise OutOfRange(f"mu = {mu} outside [-1, 1]")
    jet = frame_jet(frame_field, np.asarray(r, dtype=float), cfg)
    s, c, sn = _angles(mu, omega)
    n, t, b = jet.n, jet.t, jet.b
    if form is MuForm.SURFACE_CURVATURE:
        defect = _foliation_defect_from(n, jet.jn)
        if abs(defect) > _FOLIATION_TOL:
            raise FoliationMissing(
                f"n-foliation defect {defect:.3e} exceeds {_FOLIATION_TOL}")
        quad = (c * c * float(t @ (jet.jn @ t))
                + sn * c * float(t @ (jet.jn @ b) + b @ (jet.jn @ t))
                + sn * sn * float(b @ (jet.jn @ b)))
    elif form is MuForm.CURVE_CURVATURE:
        n_kt = -float(n @ (jet.jt @ t))
        n_kb = -float(n @ (jet.jb @ b))
        cross = float(n @ (jet.jt @ b) + n @ (jet.jb @ t))
        quad = c * c * n_kt + sn * sn * n_kb - sn * c * cross
    else:
        raise OutOfRange(f"unknown mu form {form!r}")
    along_n = c * float(t @ (jet.jn @ n)) + sn * float(b @ (jet.jn @ n))
    return (1.0 - mu * mu) * quad + mu * s * along_n


def grad_omega(frame_field, r, mu, omega,
               form: OmegaForm = OmegaForm.DIRECT_TB,
               cfg: DiffConfig = DEFAULT_CFG) -> float:
    """Rate of change of the azimuth's defining projection, t . grad_Omega b.

    All forms evaluate the same quantity through different derivative
    routes; the surface routes additionally require their foliation."""
    if 1.0 - mu * mu < _POLAR_TOL:
        raise PolarDirection("omega undefined for mu at +-1")
    jet = frame_jet(frame_field, np.asarray(r, dtype=float), cfg)
    s, c, sn = _angles(mu, omega)
    n, t, b = jet.n, jet.t, jet.b
    omega_vec = mu * n + s * (c * t + sn * b)
    if form is OmegaForm.DIRECT_TB:
        return float(t @ (jet.jb @ omega_vec))
    if form is OmegaForm.DIRECT_BT:
        return -float(b @ (jet.jt @ omega_vec))
    if form is OmegaForm.CURVE_CURVATURE:
        b_kt = -float(b @ (jet.jt @ t))
        t_kb = -float(t @ (jet.jb @ b))
        wind = float(t @ (jet.jb @ n))
        return s * (c * b_kt - sn * t_kb) + mu * wind
    if form is OmegaForm.SURFACE_B:
        defect = _foliation_defect_from(b, jet.jb)
        if abs(defect) > _FOLIATION_TOL:
            raise FoliationMissing(
                f"b-foliation defect {defect:.3e} exceeds {_FOLIATION_TOL}")
        return (s * c * float(t @ (jet.jb @ t))
                + mu * float(t @ (jet.jb @ n))
                + s * sn * float(t @ (jet.jb @ b)))
    if form is OmegaForm.SURFACE_T:
        defect = _foliation_defect_from(t, jet.jt)
        if abs(defect) > _FOLIATION_TOL:
            raise FoliationMissing(
                f"t-foliation defect {defect:.3e} exceeds {_FOLIATION_TOL}")
        return (-s * c * float(b @ (jet.jt @ t))
                - mu * float(b @ (jet.jt @ n))
                - s * sn * float(b @ (jet.jt @ b)))
    raise OutOfRange(f"unknown omega form {form!r}")


def coefficients_from_jet(jet: FrameJet, mu: float, omega: float,
                          at_point=None) -> StreamingCoefficients:
    """Assemble both coefficients from a precomputed frame jet."""
    if 1.0 - mu * mu < _POLAR_TOL:
        raise PolarDirection("omega undefined for mu at +-1")
    at_point = (np.zeros(3) if at_point is None
                else np.asarray(at_point, dtype=float).copy())
    s, c, sn = _angles(mu, omega)
    n, t, b = jet.n, jet.t, jet.b
    quad = (c * c * float(t @ (jet.jn @ t))
            + sn * c * float(t @ (jet.jn @ b) + b @ (jet.jn @ t))
            + sn * sn * float(b @ (jet.jn @ b)))
    mu_surface = (1.0 - mu * mu) * quad
    dn_n = jet.jn @ n
    mu_curve_n = mu * s * (c * float(t @ dn_n) + sn * float(b @ dn_n))

    b_kt = -float(b @ (jet.jt @ t))
    t_kb = -float(t @ (jet.jb @ b))
    omega_curve = s * (c * b_kt - sn * t_kb)
    omega_wind = mu * float(t @ (jet.jb @ n))
    omega_vec = mu * n + s * (c * t + sn * b)
    dn_along = jet.jn @ omega_vec
    omega_tilt = -mu * (-sn * float(t @ dn_along)
                        + c * float(b @ dn_along)) / s

    breakdown = {"mu_surface": mu_surface, "mu_curve_n": mu_curve_n,
                 "omega_curve": omega_curve, "omega_wind": omega_wind,
                 "omega_tilt": omega_tilt}
    return StreamingCoefficients(
        a_mu=mu_surface + mu_curve_n,
        a_omega=omega_curve + omega_wind + omega_tilt,
        breakdown=breakdown,
        at=(at_point, mu, omega),
        frame=FramePoint.loose(n, t, b))


def streaming_coefficients(frame_field, r, mu, omega,
                           cfg: DiffConfig = DEFAULT_CFG
                           ) -> StreamingCoefficients:
    """Both streaming coefficients and their breakdown at one state."""
    r = np.asarray(r, dtype=float)
    jet = frame_jet(frame_field, r, cfg)
    return coefficients_from_jet(jet, float(mu), float(omega), at_point=r)


def apply_streaming(coeffs: StreamingCoefficients, omega_dir,
                    spatial_grad_psi, dpsi_dmu: float,
                    dpsi_domega: float) -> float:
    """Assembled Omega . grad Psi from precomputed pieces.

    omega_dir must reconstruct from (mu, omega, frame) within 1e-10."""
    d = np.asarray(omega_dir, dtype=float)
    _, mu, omega = coeffs.at
    s, c, sn = _angles(mu, omega)
    rebuilt = (mu * coeffs.frame.n + s * c * coeffs.frame.t
               + s * sn * coeffs.frame.b)
    if float(np.max(np.abs(d - rebuilt))) > 1e-10:
        raise InconsistentDirection(
            "direction does not match the coefficient state")
    grad = np.asarray(spatial_grad_psi, dtype=float)
    return float(d @ grad + coeffs.a_mu * dpsi_dmu
                 + coeffs.a_omega * dpsi_domega)
