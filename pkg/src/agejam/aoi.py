"""Closed-form Peak Age of Information for the two update models.

The queued model is an M/D/1 queue with receiver-side packet losses; the
just-in-time model generates an update at the instant of transmission.  For
a per-packet loss probability p and deterministic service d:

    queued:  E[A] = 1/(lambda*(1-p)) + d + d*rho/(2*(1-rho)),  rho = lambda*d
    JIT:     E[A] = 1/(lambda*(1-p)) + d

closed_loop_paoi composes the whole evaluation pipeline: classifier
operating point -> jammer activation probability -> budget-constrained
jamming power -> outage probability -> PAoI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .adversary import jam_power
from .channel import outage_probability
from .detection import (
    jam_trigger_probability_real,
    prob_jammer_declares_busy,
)

if TYPE_CHECKING:
    from .scenario import Scenario

__all__ = [
    "TrafficConfig",
    "AnalyticResult",
    "StabilityError",
    "mg1_sojourn",
    "paoi_md1",
    "paoi_md1_derivative",
    "paoi_jit",
    "optimal_lambda_md1",
    "closed_loop_paoi",
]

UPDATE_MODELS = ("md1", "jit")


class StabilityError(ValueError):
    """Raised when the offered load makes the queued model diverge."""

    def __init__(self, rho: float):
        self.rho = rho
        super().__init__(f"queue is unstable: rho = lambda*d = {rho} >= 1")


@dataclass(frozen=True)
class TrafficConfig:
    """Update traffic description.

    lam is the arrival rate in packets per slot; q_t the per-slot
    probability that a real transmission occupies the channel (the
    adversary's prior, equal to the utilization lam*d unless overridden);
    q the fraction of transmitter-silent slots filled by a decoy, so the
    decoy prior is q_d = (1-q_t)*q.
    """

    lam: float = 0.6
    q: float = 0.0
    d: float = 1.0
    model: str = "md1"
    q_t: float | None = None

    def __post_init__(self):
        if self.lam < 0.0:
            raise ValueError(f"lambda must be non-negative, got {self.lam}")
        if not 0.0 <= self.q <= 1.0:
            raise ValueError(f"q must be in [0, 1], got {self.q}")
        if self.d <= 0.0:
            raise ValueError(f"d must be positive, got {self.d}")
        if self.model not in UPDATE_MODELS:
            raise ValueError(f"model must be one of {UPDATE_MODELS}, got {self.model!r}")
        if self.q_t is not None and not 0.0 <= self.q_t <= 1.0:
            raise ValueError(f"q_t must be in [0, 1], got {self.q_t}")
        if self.model == "jit" and self.lam * self.d > 1.0 + 1e-12:
            raise ValueError(
                f"JIT model needs lambda*d <= 1 (one update per slot), got {self.lam * self.d}"
            )

    @property
    def transmit_prob(self) -> float:
        """Adversary prior for a real transmission in a slot."""
        if self.q_t is not None:
            return self.q_t
        return min(1.0, self.lam * self.d)

    @property
    def decoy_prob(self) -> float:
        return (1.0 - self.transmit_prob) * self.q


@dataclass(frozen=True)
class AnalyticResult:
    """All intermediates of the closed-form pipeline for one scenario."""

    p_busy: float
    p_j: float
    p_jam_real: float
    p_loss: float
    paoi: float
    jammer_silent: bool
    model: str


def mg1_sojourn(lam: float, es: float, es2: float) -> float:
    """Mean sojourn time of an M/G/1 queue: E[S] + lam*E[S^2]/(2*(1-rho))."""
    if lam < 0.0 or es <= 0.0 or es2 < 0.0:
        raise ValueError(f"invalid M/G/1 parameters ({lam}, {es}, {es2})")
    rho = lam * es
    if rho >= 1.0 - 1e-9:
        raise StabilityError(rho)
    return es + lam * es2 / (2.0 * (1.0 - rho))


def _check_loss(p: float) -> None:
    if not 0.0 <= p < 1.0:
        raise ValueError(f"loss probability must be in [0, 1), got {p}")


def paoi_md1(lam: float, d: float, p: float) -> float:
    """Expected peak age of the queued model with i.i.d. losses."""
    _check_loss(p)
    if lam <= 0.0:
        raise ValueError(f"lambda must be positive, got {lam}")
    rho = lam * d
    if rho >= 1.0 - 1e-9:
        raise StabilityError(rho)
    return 1.0 / (lam * (1.0 - p)) + d + d * rho / (2.0 * (1.0 - rho))


def paoi_md1_derivative(lam: float, d: float, p: float) -> float:
    """d(paoi_md1)/d(lambda) in closed form.

    Numerator 2 - 4*d*lam + lam^2*d^2*(p+1) over
    2*(p-1)*lam^2*(1-lam*d)^2; the positive root of the numerator below
    the stability boundary is the optimal arrival rate.
    """
    _check_loss(p)
    if lam <= 0.0:
        raise ValueError(f"lambda must be positive, got {lam}")
    rho = lam * d
    if rho >= 1.0 - 1e-9:
        raise StabilityError(rho)
    num = 2.0 - 4.0 * d * lam + lam * lam * d * d * (p + 1.0)
    den = 2.0 * (p - 1.0) * lam * lam * (1.0 - rho) ** 2
    return num / den


def paoi_jit(lam: float, d: float, p: float) -> float:
    """Expected peak age of the just-in-time model: no waiting term."""
    _check_loss(p)
    if lam <= 0.0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if lam * d > 1.0 + 1e-12:
        raise ValueError(f"JIT needs lambda <= 1/d, got lambda*d = {lam * d}")
    return 1.0 / (lam * (1.0 - p)) + d


def optimal_lambda_md1(d: float, p: float) -> float:
    """Arrival rate minimizing the queued-model peak age.

    The stationary point of paoi_md1 below the stability boundary:
    lambda* = (2 - sqrt(2*(1-p))) / (d*(1+p)).
    """
    _check_loss(p)
    if d <= 0.0:
        raise ValueError(f"d must be positive, got {d}")
    return (2.0 - math.sqrt(2.0 * (1.0 - p))) / (d * (1.0 + p))


def closed_loop_paoi(scenario: "Scenario") -> AnalyticResult:
    """Closed-form end-to-end evaluation of one scenario.

    Chains the detection law (busy probability), the budget power rule,
    the real-packet trigger probability, the outage mix, and finally the
    PAoI of the configured update model.
    """
    tr = scenario.traffic
    roc = scenario.resolve_roc()
    q_t = tr.transmit_prob
    q_d = tr.decoy_prob
    p_busy = prob_jammer_declares_busy(q_t, q_d, roc, scenario.jammer_prior_mode)
    p_j = jam_power(scenario.power.p_j_max, p_busy)
    p_jam_real = jam_trigger_probability_real(q_t, roc)
    p_loss = outage_probability(scenario.channel, scenario.power, p_jam_real, p_j)
    if p_loss >= 1.0:
        raise ValueError(f"loss probability {p_loss} leaves no informative packets")
    if tr.model == "md1":
        paoi = paoi_md1(tr.lam, tr.d, p_loss)
    else:
        paoi = paoi_jit(tr.lam, tr.d, p_loss)
    return AnalyticResult(
        p_busy=p_busy,
        p_j=p_j,
        p_jam_real=p_jam_real,
        p_loss=p_loss,
        paoi=paoi,
        jammer_silent=(p_busy == 0.0),
        model=tr.model,
    )
