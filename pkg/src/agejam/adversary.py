"""Jamming power selection under the average power budget, plus per-slot
decision mechanics and energy bookkeeping for the reactive jammer."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .detection import RocPair

__all__ = [
    "JammerConfig",
    "JammerState",
    "jam_power",
    "decide_and_spend",
    "realized_average_power",
]

JAMMER_MODES = ("oracle", "adaptive")


@dataclass(frozen=True)
class JammerConfig:
    """Average power budget and the power-selection policy.

    oracle: per-activation power fixed from the closed-form activation
    probability so the long-run average meets the budget exactly.
    adaptive: per-activation power tracks the running empirical activation
    count instead (p_j_max * slots / max(1, activations)).
    """

    p_j_max: float = 1.0
    mode: str = "oracle"

    def __post_init__(self):
        if self.p_j_max < 0.0:
            raise ValueError(f"p_j_max must be non-negative, got {self.p_j_max}")
        if self.mode not in JAMMER_MODES:
            raise ValueError(f"mode must be one of {JAMMER_MODES}, got {self.mode!r}")


@dataclass
class JammerState:
    """Running counters of the adversary within one simulation run."""

    slots_observed: int = 0
    activations: int = 0
    energy_spent: float = 0.0


def jam_power(p_j_max: float, p_busy: float) -> float:
    """Per-activation power that exhausts the average budget: p_j_max/p_busy.

    A busy probability of zero means the jammer never fires; 0.0 is
    returned and callers must treat the per-activation power as moot.
    """
    if p_j_max < 0.0:
        raise ValueError(f"p_j_max must be non-negative, got {p_j_max}")
    if not 0.0 <= p_busy <= 1.0:
        raise ValueError(f"p_busy must be a probability, got {p_busy}")
    if p_busy == 0.0:
        return 0.0
    return p_j_max / p_busy


def decide_and_spend(
    state: JammerState,
    slot_truth: str,
    roc: RocPair,
    rng: np.random.Generator,
    p_j: float,
) -> bool:
    """One sensing slot: classify, jam on a busy call, account the energy.

    The busy probability is 1-p_m_t, 1-p_m_d or the union false alarm for
    real/decoy/idle truth.  Any busy call costs one slot of power p_j,
    so decoys and false alarms drain the budget without touching the
    receiver.
    """
    if slot_truth == "real":
        p_busy = 1.0 - roc.p_m_t
    elif slot_truth == "decoy":
        p_busy = 1.0 - roc.p_m_d
    elif slot_truth == "idle":
        p_busy = roc.p_f
    else:
        raise ValueError(f"slot_truth must be real/decoy/idle, got {slot_truth!r}")
    state.slots_observed += 1
    jams = rng.random() < p_busy
    if jams:
        state.activations += 1
        state.energy_spent += p_j
    return jams


def realized_average_power(state: JammerState, p_j: float) -> float:
    """Long-run average power actually radiated: p_j * activations / slots."""
    if state.slots_observed <= 0:
        raise ValueError("no slots observed yet")
    return p_j * state.activations / state.slots_observed
