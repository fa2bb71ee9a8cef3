"""Rayleigh-fading link mathematics for the four links of the network.

All quantities are linear (not dB).  Under Rayleigh fading the received
power gain of a link with average gain h is exponentially distributed with
mean h, so the SNR h*P/sigma2 of a link is itself exponential.  The jammed
link sees an interference term that is exponential as well, which yields a
closed-form SINR distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ChannelConfig",
    "PowerConfig",
    "snr_cdf",
    "sinr_cdf",
    "outage_probability",
    "sample_fading",
]

# 3 dB in linear scale; the decoy-to-adversary link default is 3 dB above
# the transmitter-to-adversary link.
DB3 = 10.0 ** 0.3


@dataclass(frozen=True)
class ChannelConfig:
    """Average power gains and noise levels of the four links.

    h1 (transmitter->receiver) is derived as h2/alpha with alpha in (0, 1],
    so the link to the receiver is never weaker than the link the adversary
    observes.  sigma2 holds one noise power per link (index 0 is the
    receiver).
    """

    h2: float = 1e-3
    alpha: float = 1.0
    h3: float = 1.0
    h4: float = 1e-3 * DB3
    sigma2: tuple[float, float, float, float] = (1.0, 1.0, 1.0, 1.0)
    gamma_min: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        for name in ("h2", "h3", "h4", "gamma_min"):
            v = getattr(self, name)
            if not v > 0.0:
                raise ValueError(f"{name} must be positive, got {v}")
        if len(self.sigma2) != 4 or any(s <= 0.0 for s in self.sigma2):
            raise ValueError(f"sigma2 must be four positive values, got {self.sigma2}")

    @property
    def h1(self) -> float:
        return self.h2 / self.alpha


@dataclass(frozen=True)
class PowerConfig:
    """Transmit-side powers and the two average power budgets (linear)."""

    p_t: float = 1e3
    p_d: float = 1e3
    p_t_max: float = 1e3
    p_j_max: float = 1.0

    def __post_init__(self):
        for name in ("p_t", "p_d", "p_t_max", "p_j_max"):
            v = getattr(self, name)
            if v < 0.0:
                raise ValueError(f"{name} must be non-negative, got {v}")


def snr_cdf(y: float, avg_gain: float, power: float, noise: float) -> float:
    """CDF of the SNR of an unjammed Rayleigh link, P[gain*P/noise <= y].

    The SNR is exponential with mean avg_gain*power/noise, so the CDF is
    1 - exp(-noise*y/(avg_gain*power)).
    """
    if avg_gain <= 0.0 or power <= 0.0 or noise <= 0.0:
        raise ValueError(
            f"avg_gain, power and noise must be positive "
            f"(got {avg_gain}, {power}, {noise})"
        )
    if y < 0.0:
        raise ValueError(f"SNR threshold must be non-negative, got {y}")
    return -math.expm1(-noise * y / (avg_gain * power))


def sinr_cdf(y: float, p_t: float, p_j: float, h1: float, h3: float, noise: float) -> float:
    """CDF of the SINR of the jammed direct link.

    Signal h1*P_T*G1 over noise plus interference h3*P_J*G3, with G1, G3
    independent unit-mean exponentials:

        F(y) = 1 - h1*P_T/(h1*P_T + y*h3*P_J) * exp(-noise*y/(h1*P_T))

    With h1 = h3 = 1 this is the textbook normalized form, and p_j = 0
    recovers snr_cdf exactly.
    """
    if p_t <= 0.0:
        raise ValueError(f"transmit power must be positive, got {p_t}")
    if p_j < 0.0:
        raise ValueError(f"jamming power must be non-negative, got {p_j}")
    if h1 <= 0.0 or h3 <= 0.0 or noise <= 0.0:
        raise ValueError(f"gains and noise must be positive (got {h1}, {h3}, {noise})")
    if y < 0.0:
        raise ValueError(f"SINR threshold must be non-negative, got {y}")
    s = h1 * p_t
    return 1.0 - s / (s + y * h3 * p_j) * math.exp(-noise * y / s)


def outage_probability(
    cfg: ChannelConfig, pw: PowerConfig, p_jam_active: float, p_j: float
) -> float:
    """Packet loss probability conditioned on the jammer's activity.

    Mixes the unjammed and jammed CDFs at the decoding threshold:
    p_out = F_snr(gamma_min)*(1 - p_jam_active) + F_sinr(gamma_min)*p_jam_active.
    p_j is the per-activation jamming power chosen by the adversary module.
    """
    if not 0.0 <= p_jam_active <= 1.0:
        raise ValueError(f"p_jam_active must be a probability, got {p_jam_active}")
    noise = cfg.sigma2[0]
    clear = snr_cdf(cfg.gamma_min, cfg.h1, pw.p_t, noise)
    jammed = sinr_cdf(cfg.gamma_min, pw.p_t, p_j, cfg.h1, cfg.h3, noise)
    return clear * (1.0 - p_jam_active) + jammed * p_jam_active


def sample_fading(rng: np.random.Generator, avg_gain: float, size=None):
    """Draw instantaneous power gain(s) of a Rayleigh link: Exp(mean=avg_gain)."""
    if avg_gain <= 0.0:
        raise ValueError(f"avg_gain must be positive, got {avg_gain}")
    return rng.exponential(avg_gain, size=size)
