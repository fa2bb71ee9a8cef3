"""Scenario description: one fully-validated experiment configuration.

Scenarios are loaded from JSON with a versioned, fail-closed schema
(unknown fields are errors).  All powers in the file are given in dB
relative to the noise floor; everything is converted to linear scale at
this boundary and stays linear inside the library.

An empty document gives the baseline evaluation setup: slot duration 1,
unit noise, decoding threshold 0 dB, jammer budget 0 dB, transmit power
30 dB over noise with the transmitter-to-adversary link at -30 dB so that
link's average SNR is 0 dB, decoy link 3 dB stronger, q_t = lambda = 0.6,
queued updates.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Any

from .adversary import JammerConfig
from .aoi import TrafficConfig
from .channel import DB3, ChannelConfig, PowerConfig
from .detection import (
    PRIOR_MODES,
    DetectorTable,
    EnergyDetector,
    RocPair,
    TableDetector,
    roc_from_detector,
)

__all__ = ["Scenario", "ScenarioError", "load_scenario", "scenario_from_dict", "DEFAULT_SEED"]

SCHEMA_VERSION = 1
DEFAULT_SEED = 20260809
SEED_ENV_VAR = "AGEJAM_SEED"


class ScenarioError(ValueError):
    """Configuration rejected; message names the offending field."""


def _db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


@dataclass(frozen=True)
class FixedRocSpec:
    roc: RocPair
    kind: str = "fixed"


@dataclass(frozen=True)
class EnergyDetectorSpec:
    n_samples: int = 16
    target_false_alarm: float = 0.05
    kind: str = "energy"


@dataclass(frozen=True)
class TableDetectorSpec:
    path: str
    n_samples: int = 16
    kind: str = "table"


DetectorSpec = FixedRocSpec | EnergyDetectorSpec | TableDetectorSpec


@dataclass(frozen=True)
class Scenario:
    channel: ChannelConfig
    power: PowerConfig
    traffic: TrafficConfig
    detector: DetectorSpec
    jammer: JammerConfig
    jammer_prior_mode: str = "exclusive"
    seed: int = DEFAULT_SEED
    n_slots: int = 1_000_000

    def __post_init__(self):
        if self.n_slots < 1:
            raise ScenarioError(f"n_slots must be >= 1, got {self.n_slots}")
        if self.jammer_prior_mode not in PRIOR_MODES:
            raise ScenarioError(
                f"jammer_prior_mode must be one of {PRIOR_MODES}, got {self.jammer_prior_mode!r}"
            )
        q_t = self.traffic.transmit_prob
        q_d = self.traffic.decoy_prob
        avg = q_t * self.power.p_t + q_d * self.power.p_d
        if avg > self.power.p_t_max * (1.0 + 1e-12):
            raise ScenarioError(
                "power budget violated: q_t*p_t + q_d*p_d = "
                f"{avg:g} > p_t_max = {self.power.p_t_max:g}"
            )

    @property
    def snr_adversary_real(self) -> float:
        """Average SNR of the transmitter at the adversary (linear)."""
        return self.channel.h2 * self.power.p_t / self.channel.sigma2[1]

    @property
    def snr_adversary_decoy(self) -> float:
        """Average SNR of the decoy node at the adversary (linear)."""
        return self.channel.h4 * self.power.p_d / self.channel.sigma2[3]

    def resolve_roc(self) -> RocPair:
        """Classifier operating point for this scenario's links."""
        det = self.detector
        if isinstance(det, FixedRocSpec):
            return det.roc
        if isinstance(det, EnergyDetectorSpec):
            model = EnergyDetector.from_false_alarm(det.target_false_alarm, det.n_samples)
            return roc_from_detector(
                model, self.snr_adversary_real, self.snr_adversary_decoy, det.n_samples
            )
        model = TableDetector(DetectorTable.load(det.path))
        return roc_from_detector(
            model, self.snr_adversary_real, self.snr_adversary_decoy, det.n_samples
        )


def _take(section: dict, name: str, default):
    return section.pop(name) if name in section else default


def _reject_unknown(section: dict, where: str) -> None:
    if section:
        raise ScenarioError(f"unknown field(s) in {where}: {sorted(section)}")


def _section(doc: dict, name: str) -> dict:
    sec = doc.pop(name, {})
    if not isinstance(sec, dict):
        raise ScenarioError(f"{name} must be an object")
    return dict(sec)


def scenario_from_dict(doc: dict, base_dir: str = ".") -> Scenario:
    """Build and validate a Scenario from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise ScenarioError("scenario document must be a JSON object")
    doc = dict(doc)
    version = doc.pop("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ScenarioError(f"unsupported schema_version {version} (expected {SCHEMA_VERSION})")

    ch = _section(doc, "channel")
    h2 = float(_take(ch, "h2", 1e-3))
    alpha = float(_take(ch, "alpha", 1.0))
    h3 = float(_take(ch, "h3", 1.0))
    h4 = _take(ch, "h4", None)
    sigma2 = _take(ch, "sigma2", 1.0)
    gamma_min_db = float(_take(ch, "gamma_min_db", 0.0))
    _reject_unknown(ch, "channel")
    if isinstance(sigma2, (int, float)):
        sigma2 = (float(sigma2),) * 4
    else:
        sigma2 = tuple(float(s) for s in sigma2)
    if h4 is None:
        h4 = h2 * DB3  # decoy-to-adversary link 3 dB above the real one
    try:
        channel = ChannelConfig(
            h2=h2, alpha=alpha, h3=h3, h4=float(h4), sigma2=sigma2,
            gamma_min=_db_to_linear(gamma_min_db),
        )
    except ValueError as exc:
        raise ScenarioError(f"channel: {exc}") from None

    pw = _section(doc, "power")
    p_t_db = float(_take(pw, "p_t_db", 30.0))
    p_d_db = float(_take(pw, "p_d_db", p_t_db))
    p_t_max_db = float(_take(pw, "p_t_max_db", p_t_db))
    p_j_max_db = float(_take(pw, "p_j_max_db", 0.0))
    _reject_unknown(pw, "power")
    power = PowerConfig(
        p_t=_db_to_linear(p_t_db),
        p_d=_db_to_linear(p_d_db),
        p_t_max=_db_to_linear(p_t_max_db),
        p_j_max=_db_to_linear(p_j_max_db),
    )

    tr = _section(doc, "traffic")
    try:
        traffic = TrafficConfig(
            lam=float(_take(tr, "lambda", 0.6)),
            q=float(_take(tr, "q", 0.0)),
            d=float(_take(tr, "d", 1.0)),
            model=str(_take(tr, "model", "md1")),
            q_t=(lambda v: None if v is None else float(v))(_take(tr, "q_t", None)),
        )
    except ValueError as exc:
        raise ScenarioError(f"traffic: {exc}") from None
    _reject_unknown(tr, "traffic")

    det = _section(doc, "detector")
    kind = str(_take(det, "kind", "fixed"))
    if kind == "fixed":
        try:
            roc = RocPair(
                p_m_t=float(_take(det, "p_m_t", 0.2)),
                p_m_d=float(_take(det, "p_m_d", 0.1)),
                p_f_t=float(_take(det, "p_f_t", 0.05)),
                p_f_d=float(_take(det, "p_f_d", 0.05)),
            )
        except ValueError as exc:
            raise ScenarioError(f"detector: {exc}") from None
        detector: DetectorSpec = FixedRocSpec(roc=roc)
    elif kind == "energy":
        detector = EnergyDetectorSpec(
            n_samples=int(_take(det, "n_samples", 16)),
            target_false_alarm=float(_take(det, "target_false_alarm", 0.05)),
        )
        if detector.n_samples < 1:
            raise ScenarioError("detector: n_samples must be >= 1")
    elif kind == "table":
        path = _take(det, "path", None)
        if path is None:
            raise ScenarioError("detector: table detector requires a path")
        path = str(path)
        if not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        detector = TableDetectorSpec(path=path, n_samples=int(_take(det, "n_samples", 16)))
    else:
        raise ScenarioError(f"detector: unknown kind {kind!r} (fixed/energy/table)")
    _reject_unknown(det, "detector")

    jm = _section(doc, "jammer")
    try:
        jammer = JammerConfig(
            p_j_max=power.p_j_max,
            mode=str(_take(jm, "mode", "oracle")),
        )
    except ValueError as exc:
        raise ScenarioError(f"jammer: {exc}") from None
    prior_mode = str(_take(jm, "prior_mode", "exclusive"))
    _reject_unknown(jm, "jammer")

    sim = _section(doc, "sim")
    seed = _take(sim, "seed", None)
    if seed is None:
        seed = int(os.environ.get(SEED_ENV_VAR, DEFAULT_SEED))
    n_slots = int(_take(sim, "n_slots", 1_000_000))
    _reject_unknown(sim, "sim")
    _reject_unknown(doc, "scenario")

    return Scenario(
        channel=channel,
        power=power,
        traffic=traffic,
        detector=detector,
        jammer=jammer,
        jammer_prior_mode=prior_mode,
        seed=int(seed),
        n_slots=n_slots,
    )


def load_scenario(path) -> Scenario:
    """Parse, default-fill and validate a scenario file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return scenario_from_dict(doc, base_dir=os.path.dirname(os.path.abspath(path)))
