"""Adversary-side signal detection: ROC models and busy/idle decision laws.

The jammer runs a binary signal-presence classifier.  We never run a neural
network here; the classifier is abstracted by its operating point, either
injected directly (RocPair), computed from an energy detector, or read from
a calibration table exported by an external training tool.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np
from scipy import integrate, special, stats

__all__ = [
    "RocPair",
    "DetectorModel",
    "EnergyDetector",
    "DetectorTable",
    "TableDetector",
    "prob_jammer_declares_busy",
    "prob_jammer_declares_idle",
    "jam_trigger_probability_real",
    "energy_detector_roc",
    "table_detector_lookup",
    "roc_from_detector",
]

PRIOR_MODES = ("exclusive", "paper_literal")


def _check_prob(name: str, v: float) -> None:
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"{name} must be in [0, 1], got {v}")


@dataclass(frozen=True)
class RocPair:
    """Operating point of the jammer's classifier against both links.

    p_m_* are misdetection probabilities (signal present, declared idle)
    for real and decoy transmissions; p_f_* are false-alarm probabilities
    against the respective idle channels.
    """

    p_m_t: float
    p_m_d: float
    p_f_t: float
    p_f_d: float

    def __post_init__(self):
        for name in ("p_m_t", "p_m_d", "p_f_t", "p_f_d"):
            _check_prob(name, getattr(self, name))

    @property
    def p_f(self) -> float:
        """Union false alarm over the two idle channels."""
        return self.p_f_t + self.p_f_d - self.p_f_t * self.p_f_d


class DetectorModel(Protocol):
    """Anything that maps an operating condition to detection probabilities."""

    def p_detect(self, snr: float, n_samples: int) -> float: ...

    def p_false_alarm(self, n_samples: int) -> float: ...


def prob_jammer_declares_busy(
    q_t: float, q_d: float, roc: RocPair, mode: str = "exclusive"
) -> float:
    """Probability the classifier outputs "busy" in a random slot.

    Real and decoy transmissions are coordinated, so in the default
    "exclusive" mode the idle prior is 1 - q_t - q_d.  The
    "paper_literal" mode weighs false alarms by (1-q_t)(1-q_d) instead,
    which treats the two activities as independent.
    """
    _check_prob("q_t", q_t)
    _check_prob("q_d", q_d)
    if mode not in PRIOR_MODES:
        raise ValueError(f"mode must be one of {PRIOR_MODES}, got {mode!r}")
    if mode == "exclusive":
        if q_t + q_d > 1.0 + 1e-12:
            raise ValueError(
                f"exclusive activities require q_t + q_d <= 1, got {q_t + q_d}"
            )
        idle = max(0.0, 1.0 - q_t - q_d)
    else:
        idle = (1.0 - q_t) * (1.0 - q_d)
    return q_t * (1.0 - roc.p_m_t) + q_d * (1.0 - roc.p_m_d) + idle * roc.p_f


def prob_jammer_declares_idle(
    q_t: float, q_d: float, roc: RocPair, mode: str = "exclusive"
) -> float:
    """Complement of prob_jammer_declares_busy in the same mode."""
    return 1.0 - prob_jammer_declares_busy(q_t, q_d, roc, mode)


def jam_trigger_probability_real(q_t: float, roc: RocPair) -> float:
    """Slot-level probability that the jammer is active on a real message.

    This is q_t*(1 - p_m_t): the joint probability that a slot carries a
    real transmission and the classifier catches it.  Decoy-triggered
    activity drains power but never interferes with the receiver, so this
    value (not the overall busy probability) is what feeds the outage mix.
    """
    _check_prob("q_t", q_t)
    return q_t * (1.0 - roc.p_m_t)


def energy_detector_roc(
    threshold: float, n_samples: int, noise: float, avg_snr: float
) -> tuple[float, float]:
    """Operating point of a square-law energy detector over Rayleigh fading.

    The statistic is the summed energy of n complex samples.  Under noise
    only it is Gamma(n, noise), so the false alarm is the regularized
    upper incomplete gamma Q(n, threshold/noise).  Under signal plus noise,
    conditioned on the per-sample SNR g of the fading block, the statistic
    is a scaled noncentral chi-square with 2n degrees of freedom and
    noncentrality 2ng; the detection probability averages that tail over
    g ~ Exp(mean=avg_snr).

    Returns (p_false_alarm, p_detect).
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    if threshold < 0.0:
        raise ValueError(f"threshold must be non-negative, got {threshold}")
    if noise <= 0.0:
        raise ValueError(f"noise must be positive, got {noise}")
    if avg_snr < 0.0:
        raise ValueError(f"avg_snr must be non-negative, got {avg_snr}")

    p_fa = float(special.gammaincc(n_samples, threshold / noise))
    if avg_snr == 0.0 or threshold == 0.0:
        return p_fa, p_fa if threshold > 0.0 else 1.0

    x = 2.0 * threshold / noise
    df = 2 * n_samples

    def tail(u: float) -> float:
        # u = g / avg_snr, integrand already weighted by the Exp(1) density
        return stats.ncx2.sf(x, df, 2.0 * n_samples * avg_snr * u) * np.exp(-u)

    p_d, err = integrate.quad(tail, 0.0, np.inf, epsabs=1e-9, epsrel=1e-9, limit=200)
    if err > 1e-6:
        raise ArithmeticError(
            f"energy detector integration did not converge (abs error {err:.3g})"
        )
    return p_fa, min(1.0, max(p_fa, float(p_d)))


class EnergyDetector:
    """DetectorModel backed by the closed-form energy detector.

    The threshold is per-sample relative to the noise floor: a detector
    built with threshold_per_sample=t compares the summed energy of n
    samples against n*t*noise.
    """

    def __init__(self, threshold_per_sample: float = 1.4, noise: float = 1.0):
        if threshold_per_sample < 0.0:
            raise ValueError("threshold_per_sample must be non-negative")
        if noise <= 0.0:
            raise ValueError("noise must be positive")
        self.threshold_per_sample = threshold_per_sample
        self.noise = noise

    @classmethod
    def from_false_alarm(cls, target_p_f: float, n_samples: int, noise: float = 1.0):
        """Calibrate the threshold so p_false_alarm(n_samples) == target_p_f."""
        _check_prob("target_p_f", target_p_f)
        if not 0.0 < target_p_f < 1.0:
            raise ValueError("target_p_f must be in (0, 1) to invert the tail")
        tau = float(special.gammainccinv(n_samples, target_p_f)) * noise
        return cls(threshold_per_sample=tau / (n_samples * noise), noise=noise)

    def _threshold(self, n_samples: int) -> float:
        return self.threshold_per_sample * n_samples * self.noise

    def p_false_alarm(self, n_samples: int) -> float:
        p_fa, _ = energy_detector_roc(self._threshold(n_samples), n_samples, self.noise, 0.0)
        return p_fa

    def p_detect(self, snr: float, n_samples: int) -> float:
        _, p_d = energy_detector_roc(self._threshold(n_samples), n_samples, self.noise, snr)
        return p_d


@dataclass(frozen=True)
class DetectorTable:
    """Calibrated (snr, packet size) -> (p_detect, p_false_alarm) grid.

    The probability grids are row-major by packet size: row i corresponds
    to packet_sizes[i] and column j to snr_db[j].  This layout is the wire
    schema shared with the external calibration tool.
    """

    packet_sizes: tuple[int, ...]
    snr_db: tuple[float, ...]
    p_detect: tuple[tuple[float, ...], ...]
    p_false_alarm: tuple[tuple[float, ...], ...]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.snr_db) < 2:
            raise ValueError("detector table needs at least 2 SNR grid points")
        if any(b <= a for a, b in zip(self.snr_db, self.snr_db[1:])):
            raise ValueError("snr_db grid must be strictly increasing")
        if not self.packet_sizes:
            raise ValueError("detector table needs at least one packet size")
        if any(n < 1 for n in self.packet_sizes):
            raise ValueError("packet sizes must be positive")
        for name, grid in (("p_detect", self.p_detect), ("p_false_alarm", self.p_false_alarm)):
            if len(grid) != len(self.packet_sizes):
                raise ValueError(f"{name} must have one row per packet size")
            for row in grid:
                if len(row) != len(self.snr_db):
                    raise ValueError(f"{name} rows must match the snr_db grid length")
                for v in row:
                    _check_prob(name, v)

    @classmethod
    def from_dict(cls, doc: dict) -> "DetectorTable":
        required = {"packet_sizes", "snr_db", "p_detect", "p_false_alarm"}
        missing = required - doc.keys()
        if missing:
            raise ValueError(f"detector table missing fields: {sorted(missing)}")
        unknown = doc.keys() - (required | {"metadata"})
        if unknown:
            raise ValueError(f"detector table has unknown fields: {sorted(unknown)}")
        return cls(
            packet_sizes=tuple(int(n) for n in doc["packet_sizes"]),
            snr_db=tuple(float(s) for s in doc["snr_db"]),
            p_detect=tuple(tuple(float(v) for v in row) for row in doc["p_detect"]),
            p_false_alarm=tuple(tuple(float(v) for v in row) for row in doc["p_false_alarm"]),
            metadata=dict(doc.get("metadata", {})),
        )

    @classmethod
    def load(cls, path) -> "DetectorTable":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return {
            "packet_sizes": list(self.packet_sizes),
            "snr_db": list(self.snr_db),
            "p_detect": [list(row) for row in self.p_detect],
            "p_false_alarm": [list(row) for row in self.p_false_alarm],
            "metadata": dict(self.metadata),
        }


def table_detector_lookup(
    table: DetectorTable, snr_db: float, n_samples: int
) -> tuple[float, float]:
    """Interpolate (p_detect, p_false_alarm) at snr_db for one packet size.

    Linear interpolation between grid points, clamped to the edge values
    outside the calibrated range.  The packet size must be present exactly.
    """
    try:
        row = table.packet_sizes.index(n_samples)
    except ValueError:
        raise KeyError(
            f"packet size {n_samples} not in detector table "
            f"(available: {list(table.packet_sizes)})"
        ) from None
    grid = np.asarray(table.snr_db)
    p_d = float(np.interp(snr_db, grid, np.asarray(table.p_detect[row])))
    p_f = float(np.interp(snr_db, grid, np.asarray(table.p_false_alarm[row])))
    return p_d, p_f


class TableDetector:
    """DetectorModel reading a calibration table; SNR given in linear scale."""

    def __init__(self, table: DetectorTable):
        self.table = table

    def p_detect(self, snr: float, n_samples: int) -> float:
        if snr <= 0.0:
            raise ValueError(f"snr must be positive, got {snr}")
        p_d, _ = table_detector_lookup(self.table, 10.0 * np.log10(snr), n_samples)
        return p_d

    def p_false_alarm(self, n_samples: int) -> float:
        # noise-only operating point: false alarm at the bottom of the grid
        _, p_f = table_detector_lookup(self.table, self.table.snr_db[0], n_samples)
        return p_f


def roc_from_detector(
    model: DetectorModel, snr_real: float, snr_decoy: float, n_samples: int
) -> RocPair:
    """Evaluate a detector model on both links at their average SNRs."""
    p_f = model.p_false_alarm(n_samples)
    return RocPair(
        p_m_t=1.0 - model.p_detect(snr_real, n_samples),
        p_m_d=1.0 - model.p_detect(snr_decoy, n_samples),
        p_f_t=p_f,
        p_f_d=p_f,
    )
