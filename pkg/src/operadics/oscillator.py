"""Harmonic-oscillator Lax pair and transported higher-degree solutions.

The classical pair on the plane is

    L = [[p, w q], [w q, -p]],     M = [[0, -w/2], [w/2, 0]],

with Hamiltonian H = (p^2 + w^2 q^2) / 2 and canonical flow dq/dt = p,
dp/dt = -w^2 q.  Along the exact trajectory L satisfies dL/dt = ML - LM
identically, and trace(L^2) = 4H, so the flow is isospectral.

A degree-n operadic variable rides the same flow by conjugation with
exp(tM) (transport along characteristics).  One period T = 2 pi / w gives
exp(TM) = -identity, so the transported solution returns to (-1)^(n+1)
times its initial value: odd degrees are periodic, even degrees are
anti-periodic.  That obstruction is reported, never hidden.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import LaxSystem, conjugation_oracle, lax_rhs
from .errors import ConfigError, DegreeMismatchError, DimMismatchError
from .multiop import ENDO, MultiOp, max_abs_diff, op_norm, sub


def classical_lax(q: float, p: float, omega: float) -> MultiOp:
    """The plane Lax matrix [[p, w q], [w q, -p]] as a degree-1 operation."""
    wq = omega * q
    return MultiOp(2, 1, ENDO, np.array([p, wq, wq, -p], dtype=np.float64))


def m_matrix(omega: float) -> MultiOp:
    """The constant rotation generator [[0, -w/2], [w/2, 0]]."""
    half = omega / 2.0
    return MultiOp(2, 1, ENDO, np.array([0.0, -half, half, 0.0], dtype=np.float64))


def hamiltonian(q: float, p: float, omega: float) -> float:
    return 0.5 * (p * p + omega * omega * q * q)


def canonical_flow(q: float, p: float, omega: float) -> tuple[float, float]:
    """(dq/dt, dp/dt) from the canonical equations."""
    return (p, -(omega * omega) * q)


@dataclass(frozen=True)
class OscillatorParams:
    """Frequency, initial phase-space point, and the operadic variable."""

    omega: float
    q0: float
    p0: float
    degree: int = 1
    l_init: MultiOp | None = None

    def __post_init__(self):
        if not self.omega > 0:
            raise ConfigError(f"omega must be positive, got {self.omega}")
        if self.degree < 1:
            raise ConfigError(f"degree must be >= 1, got {self.degree}")
        if self.l_init is None:
            if self.degree >= 2:
                raise ConfigError(
                    "degree >= 2 needs an explicit initial operation; "
                    "no canonical one exists"
                )
        else:
            if self.l_init.dim != 2:
                raise DimMismatchError("the oscillator lives on a 2-dim module")
            if self.l_init.degree != self.degree:
                raise DegreeMismatchError(
                    f"l_init degree {self.l_init.degree} != declared {self.degree}"
                )

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega


def resolve_l_init(params: OscillatorParams) -> MultiOp:
    """The initial operadic variable; degree 1 defaults to the classical L."""
    if params.l_init is not None:
        return params.l_init
    return classical_lax(params.q0, params.p0, params.omega)


def exact_flow(params: OscillatorParams, t: float) -> tuple[float, float]:
    """Closed-form trajectory (q(t), p(t)) of the canonical equations."""
    w = params.omega
    c = math.cos(w * t)
    s = math.sin(w * t)
    q = params.q0 * c + (params.p0 / w) * s
    p = params.p0 * c - w * params.q0 * s
    return (q, p)


def classical_lax_time_derivative(params: OscillatorParams, t: float) -> MultiOp:
    """d/dt of L(q(t), p(t)) by exact differentiation of the closed form.

    Entrywise this is [[-w^2 q, w p], [w p, w^2 q]].
    """
    q, p = exact_flow(params, t)
    w = params.omega
    dp = -(w * w) * q
    dq_w = w * p
    return MultiOp(2, 1, ENDO, np.array([dp, dq_w, dq_w, -dp], dtype=np.float64))


def lax_residual_classical(params: OscillatorParams, t: float) -> float:
    """Norm of dL/dt - (ML - LM) along the exact trajectory (analytically 0)."""
    q, p = exact_flow(params, t)
    rhs = lax_rhs(m_matrix(params.omega), classical_lax(q, p, params.omega))
    return float(op_norm(sub(classical_lax_time_derivative(params, t), rhs)))


def transport_solution(params: OscillatorParams, t: float) -> MultiOp:
    """The degree-n solution at time t: conjugation transport of l_init."""
    return conjugation_oracle(m_matrix(params.omega), resolve_l_init(params), t)


@dataclass(frozen=True)
class MonodromyReport:
    degree: int
    period: float
    defect: float
    periodic: bool


def monodromy_report(params: OscillatorParams, tol: float = 1e-8) -> MonodromyReport:
    """Mismatch between the transported solution after one period and l_init.

    Even degrees pick up the sign (-1)^(n+1) = -1 from exp(TM) = -identity,
    so their defect is 2 * op_norm(l_init) for generic initial data.
    """
    l_init = resolve_l_init(params)
    defect = float(max_abs_diff(transport_solution(params, params.period), l_init))
    return MonodromyReport(
        degree=params.degree,
        period=params.period,
        defect=defect,
        periodic=defect <= tol,
    )


def oscillator_system(params: OscillatorParams, dt: float, t_end: float) -> LaxSystem:
    """Bundle the oscillator into an integrable system with its (q, p) flow."""
    omega = params.omega

    def rhs(_t: float, state: np.ndarray) -> np.ndarray:
        dq, dp = canonical_flow(state[0], state[1], omega)
        return np.array([dq, dp], dtype=np.float64)

    return LaxSystem(
        m=m_matrix(omega),
        l0=resolve_l_init(params),
        dt=dt,
        t_end=t_end,
        observe=(),
        state0=(params.q0, params.p0),
        state_rhs=rhs,
    )
