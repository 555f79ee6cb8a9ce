"""Directional derivatives, Jacobians, and curls of vector fields.

Two interchangeable engines: dual-number forward mode (exact for
analytic fields) and central finite differences with optional
Richardson extrapolation.  Fields are callables taking one 3-sequence
of scalars; the dual engine feeds them Dual scalars.
"""
from __future__ import annotations

import dataclasses

import numpy as np

from . import dual as dm
from .dual import Dual
from .errors import EvaluationFailure, OutOfRange

DUAL = "dual"
FD = "fd"


@dataclasses.dataclass(frozen=True)
class DiffConfig:
    engine: str = DUAL
    fd_step: float = 1e-5
    richardson: bool = True

    def __post_init__(self):
        if self.engine not in (DUAL, FD):
            raise OutOfRange(f"unknown engine {self.engine!r}")
        if not 1e-9 <= self.fd_step <= 1e-2:
            raise OutOfRange("fd_step must lie in [1e-9, 1e-2]")


DEFAULT_CFG = DiffConfig()


def _probe(field, p):
    try:
        out = field(p)
    except EvaluationFailure:
        raise
    except Exception as exc:
        raise EvaluationFailure(f"field raised at probe {tuple(p)}") from exc
    return out


def _tangent_row(component, width):
    if isinstance(component, Dual):
        return component.eps
    return (0.0,) * width


def directional_derivative(field, r, h, cfg: DiffConfig = DEFAULT_CFG):
    """(h . grad) field at r."""
    r = np.asarray(r, dtype=float)
    h = np.asarray(h, dtype=float)
    if cfg.engine == DUAL:
        out = _probe(field, dm.seed_direction(r, h))
        return np.array([_tangent_row(c, 1)[0] for c in out])
    scale = float(np.linalg.norm(h))
    if scale == 0.0:
        return np.zeros(3)
    u = h / scale

    def central(step):
        fp = np.asarray(_probe(field, tuple(r + step * u)), dtype=float)
        fm = np.asarray(_probe(field, tuple(r - step * u)), dtype=float)
        return (fp - fm) / (2.0 * step)

    d = central(cfg.fd_step)
    if cfg.richardson:
        d_half = central(cfg.fd_step / 2.0)
        d = (4.0 * d_half - d) / 3.0
    return scale * d


def jacobian(field, r, cfg: DiffConfig = DEFAULT_CFG):
    """3x3 matrix with column j = d(field)/d(coordinate j) at r."""
    r = np.asarray(r, dtype=float)
    if cfg.engine == DUAL:
        out = _probe(field, dm.seed_gradient(r))
        return np.array([_tangent_row(c, 3) for c in out], dtype=float)
    cols = [directional_derivative(field, r, e, cfg)
            for e in np.eye(3)]
    return np.column_stack(cols)


def curl(field, r, cfg: DiffConfig = DEFAULT_CFG):
    """Standard curl assembled from the Jacobian's antisymmetric part."""
    j = jacobian(field, r, cfg)
    return np.array([j[2, 1] - j[1, 2],
                     j[0, 2] - j[2, 0],
                     j[1, 0] - j[0, 1]])


@dataclasses.dataclass(frozen=True)
class FrameJet:
    """Frame vectors and all three Jacobians at one point.

    Column j of each Jacobian is the derivative along coordinate j;
    a directional derivative of, say, n along h is ``jn @ h``.
    """

    n: np.ndarray
    t: np.ndarray
    b: np.ndarray
    jn: np.ndarray
    jt: np.ndarray
    jb: np.ndarray


def frame_jet(frame_field, r, cfg: DiffConfig = DEFAULT_CFG) -> FrameJet:
    """Evaluate a frame field and its three Jacobians in one pass."""
    r = np.asarray(r, dtype=float)
    if cfg.engine == DUAL:
        seeds = dm.seed_gradient(r)
        try:
            n, t, b = frame_field.raw(*seeds)
        except EvaluationFailure:
            raise
        except Exception as exc:
            raise EvaluationFailure(
                f"frame raised at {tuple(r)}") from exc
        vecs = []
        jacs = []
        for vec in (n, t, b):
            vecs.append(np.array([dm.value(c) for c in vec]))
            jacs.append(np.array([_tangent_row(c, 3) for c in vec]))
        return FrameJet(vecs[0], vecs[1], vecs[2],
                        jacs[0], jacs[1], jacs[2])

    def raw_at(p):
        try:
            return frame_field.raw(p[0], p[1], p[2])
        except EvaluationFailure:
            raise
        except Exception as exc:
            raise EvaluationFailure(
                f"frame raised at probe {tuple(p)}") from exc

    n0, t0, b0 = raw_at(r)
    center = tuple(np.asarray(v, dtype=float) for v in (n0, t0, b0))

    def columns(step):
        cols = {0: [], 1: [], 2: []}
        for j in range(3):
            e = np.zeros(3)
            e[j] = step
            plus = raw_at(r + e)
            minus = raw_at(r - e)
            for k in range(3):
                dp = np.asarray(plus[k], dtype=float)
                dmn = np.asarray(minus[k], dtype=float)
                cols[k].append((dp - dmn) / (2.0 * step))
        return [np.column_stack(cols[k]) for k in range(3)]

    jacs = columns(cfg.fd_step)
    if cfg.richardson:
        jacs_half = columns(cfg.fd_step / 2.0)
        jacs = [(4.0 * jh - j) / 3.0 for j, jh in zip(jacs, jacs_half)]
    return FrameJet(center[0], center[1], center[2],
                    jacs[0], jacs[1], jacs[2])
