"""Monte Carlo simulation of the transmitter/decoy/jammer/receiver loop.

One run is driven by four independently-seeded random streams (traffic,
decoy, detection, fading) spawned from the scenario seed, so changing the
detector never perturbs the channel draws of a paired run (common random
numbers).  All randomness is pre-drawn as per-block arrays; the sequential
bookkeeping lives in _kernels and is bit-reproducible for a given seed.

The queued model keeps exact M/D/1 dynamics: arrivals form a Poisson
process with continuous timestamps, and service starts the moment the
server frees up rather than at the next slot boundary.  Each service
occupies one resource block, which is also the adversary's sensing unit;
transmitter-silent blocks on the slot grid carry decoys or stay idle.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .adversary import jam_power
from .aoi import closed_loop_paoi, AnalyticResult
from .detection import prob_jammer_declares_busy
from .scenario import Scenario

__all__ = [
    "AoiTracker",
    "AoiStats",
    "CompareReport",
    "record_delivery",
    "run",
    "run_trace",
    "compare_with_analytic",
    "TRACE_COLUMNS",
]

Z99 = 2.5758293035489004
TRACE_COLUMNS = ("slot", "truth", "jam", "outage", "qlen", "age")
TRUTH_NAMES = ("idle", "real", "decoy")


class AoiTracker:
    """Sawtooth bookkeeping: age grows linearly, informative updates reset it.

    Reference implementation of the delivery rule; the simulation kernels
    inline the same arithmetic.
    """

    def __init__(self, delta0: float = 0.0):
        self.last_informative_gen = -delta0
        self.last_time = 0.0
        self.peaks: list[float] = []
        self._virgin = True  # the very first delivery always informs

    def age(self, t_now: float) -> float:
        return t_now - self.last_informative_gen

    @property
    def mean_paoi(self) -> float | None:
        if not self.peaks:
            return None
        return sum(self.peaks) / len(self.peaks)


def record_delivery(tracker: AoiTracker, t_gen: float, t_now: float) -> AoiTracker:
    """Account one delivered packet; stale packets leave the tracker alone.

    The recorded peak is the age immediately before the update lands,
    t_now - (generation time of the previous informative packet); the age
    then restarts from t_now - t_gen.
    """
    if t_gen > t_now:
        raise ValueError(f"packet delivered before generation ({t_gen} > {t_now})")
    if t_now < tracker.last_time:
        raise RuntimeError(f"time went backwards: {t_now} < {tracker.last_time}")
    tracker.last_time = t_now
    if not tracker._virgin and t_gen <= tracker.last_informative_gen:
        return tracker  # stale: an older update cannot rejuvenate the receiver
    tracker.peaks.append(t_now - tracker.last_informative_gen)
    tracker.last_informative_gen = t_gen
    tracker._virgin = False
    return tracker


@dataclass(frozen=True)
class AoiStats:
    """Outcome of one simulation run (times in slots, powers linear)."""

    mean_paoi: float | None
    paoi_ci99: float | None
    time_avg_aoi: float
    loss_rate: float
    loss_rate_ci99: float | None
    delivered: int
    dropped: int
    arrivals: int
    queue_final: int
    jammer_avg_power: float
    activation_rate: float
    activations: int
    n_real: int
    n_decoy: int
    n_idle: int
    n_blocks: int
    seed: int
    model: str

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class CompareReport:
    """Analytic pipeline vs simulation on the same scenario."""

    applicable: bool
    note: str
    analytic: AnalyticResult | None
    stats: AoiStats | None
    rel_err_paoi: float | None
    within_ci99: bool | None


def _paoi_ci(peaks: np.ndarray) -> float | None:
    """99% half-width for the mean peak age, batch means against autocorrelation."""
    n = peaks.size
    if n < 2:
        return None
    if n >= 64:
        nb = 32
        m = n // nb
        batches = peaks[: nb * m].reshape(nb, m).mean(axis=1)
        return Z99 * float(batches.std(ddof=1)) / math.sqrt(nb)
    return Z99 * float(peaks.std(ddof=1)) / math.sqrt(n)


def _streams(seed: int):
    ss = np.random.SeedSequence(seed)
    return [np.random.Generator(np.random.PCG64(child)) for child in ss.spawn(4)]


def _prepare(scenario: Scenario, n_slots: int | None, seed: int | None):
    n_slots = scenario.n_slots if n_slots is None else int(n_slots)
    seed = scenario.seed if seed is None else int(seed)
    tr = scenario.traffic
    d = tr.d
    n_blocks = int(n_slots // d) if d != 1.0 else int(n_slots)
    if n_blocks < 1:
        raise ValueError(f"horizon of {n_slots} slots holds no block of {d} slots")
    return n_slots, seed, d, n_blocks


def _run_arrays(scenario: Scenario, n_slots=None, seed=None, trace=False):
    n_slots, seed, d, n_blocks = _prepare(scenario, n_slots, seed)
    tr = scenario.traffic
    rng_traffic, rng_decoy, rng_det, rng_fad = _streams(seed)
    horizon = n_blocks * d
    burn_time = 0.01 * horizon

    roc = scenario.resolve_roc()
    q_t = tr.transmit_prob
    q_d = tr.decoy_prob
    p_busy = prob_jammer_declares_busy(q_t, q_d, roc, scenario.jammer_prior_mode)
    adaptive = scenario.jammer.mode == "adaptive"
    p_j = jam_power(scenario.power.p_j_max, p_busy)

    u_det = rng_det.random(n_blocks)
    u_hit = rng_det.random(n_blocks)
    u_decoy = rng_decoy.random(n_blocks)
    g1 = rng_fad.exponential(scenario.channel.h1, n_blocks)
    g3 = rng_fad.exponential(scenario.channel.h3, n_blocks)

    t_int8 = np.zeros(n_blocks if trace else 1, dtype=np.int8)
    t_jam = np.zeros(n_blocks if trace else 1, dtype=np.uint8)
    t_out = np.zeros(n_blocks if trace else 1, dtype=np.uint8)
    t_qlen = np.zeros(n_blocks if trace else 1, dtype=np.int64)
    t_age = np.zeros(n_blocks if trace else 1, dtype=np.float64)
    common = (
        1.0 - roc.p_m_t, 1.0 - roc.p_m_d, roc.p_f, q_t, tr.q,
        p_j, adaptive, scenario.power.p_j_max,
        scenario.power.p_t, scenario.channel.sigma2[0], scenario.channel.gamma_min,
        burn_time, horizon,
    )

    if tr.model == "md1":
        rho = tr.lam * d
        if rho >= 1.0:
            warnings.warn(
                f"queued model is unstable (rho = {rho:g} >= 1); running anyway",
                RuntimeWarning,
                stacklevel=3,
            )
        counts = rng_traffic.poisson(tr.lam * d, n_blocks)
        k = int(counts.sum())
        gen = (np.repeat(np.arange(n_blocks, dtype=np.float64), counts)
               + rng_traffic.random(k)) * d
        gen.sort(kind="stable")
        idx = np.arange(k, dtype=np.float64)
        dep = np.maximum.accumulate(gen - idx * d) + (idx + 1.0) * d
        n_served = int(np.searchsorted(dep, horizon, side="right"))
        dep_served = dep[:n_served]
        block_idx = np.floor((dep_served - d) / d + 1e-9).astype(np.int64)
        peaks = np.zeros(max(n_served, 1), dtype=np.float64)
        out = _kernels.run_m1_blocks(
            n_blocks, d, gen, dep_served, block_idx,
            u_det, u_hit, u_decoy, g1, g3,
            *common,
            peaks, trace, t_int8, t_jam, t_out, t_qlen, t_age,
        )
        (n_peaks, age_integral, delivered, dropped, activations,
         act_real, act_decoy, act_idle, n_decoy, n_idle, energy) = out
        n_real = n_served
        arrivals = k
        queue_final = k - n_served
    else:
        send_prob = tr.lam * d
        u_tx = rng_traffic.random(n_blocks)
        peaks = np.zeros(n_blocks, dtype=np.float64)
        out = _kernels.run_m2_blocks(
            n_blocks, d, send_prob,
            u_tx, u_det, u_hit, u_decoy, g1, g3,
            *common,
            peaks, trace, t_int8, t_jam, t_out, t_qlen, t_age,
        )
        (n_peaks, age_integral, delivered, dropped, activations,
         act_real, act_decoy, act_idle, n_real, n_decoy, n_idle, energy) = out
        arrivals = n_real
        queue_final = 0

    peaks = peaks[:n_peaks]
    loss_rate = dropped / n_real if n_real else 0.0
    stats = AoiStats(
        mean_paoi=float(peaks.mean()) if n_peaks else None,
        paoi_ci99=_paoi_ci(peaks),
        time_avg_aoi=age_integral / (horizon - burn_time),
        loss_rate=loss_rate,
        loss_rate_ci99=(
            Z99 * math.sqrt(loss_rate * (1.0 - loss_rate) / n_real) if n_real else None
        ),
        delivered=delivered,
        dropped=dropped,
        arrivals=arrivals,
        queue_final=queue_final,
        jammer_avg_power=energy / horizon,
        activation_rate=activations / n_blocks,
        activations=activations,
        n_real=n_real,
        n_decoy=n_decoy,
        n_idle=n_idle,
        n_blocks=n_blocks,
        seed=seed,
        model=tr.model,
    )
    trace_arrays = None
    if trace:
        trace_arrays = {
            "slot": np.arange(n_blocks, dtype=np.int64),
            "truth": t_int8,
            "jam": t_jam,
            "outage": t_out,
            "qlen": t_qlen,
            "age": t_age,
        }
    return stats, trace_arrays


def run(scenario: Scenario, *, n_slots: int | None = None, seed: int | None = None) -> AoiStats:
    """Simulate one scenario; deterministic for a given seed."""
    stats, _ = _run_arrays(scenario, n_slots=n_slots, seed=seed, trace=False)
    return stats


def run_trace(scenario: Scenario, *, n_slots=None, seed=None):
    """Like run() but also returns the per-block audit trace arrays."""
    stats, trace = _run_arrays(scenario, n_slots=n_slots, seed=seed, trace=True)
    return stats, trace


def write_trace(trace: dict, path) -> None:
    """Write the audit trace as delimited text with a header row."""
    n = trace["slot"].size
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(TRACE_COLUMNS) + "\n")
        for i in range(n):
            fh.write(
                f"{trace['slot'][i]},{TRUTH_NAMES[trace['truth'][i]]},"
                f"{trace['jam'][i]},{trace['outage'][i]},"
                f"{trace['qlen'][i]},{trace['age'][i]:.9g}\n"
            )


def compare_with_analytic(
    scenario: Scenario, *, n_slots: int | None = None, seed: int | None = None
) -> CompareReport:
    """Run both engines on one scenario and report their agreement."""
    if scenario.jammer.mode == "adaptive":
        return CompareReport(
            applicable=False,
            note="analytic not applicable: adaptive jammer power has no closed form",
            analytic=None,
            stats=None,
            rel_err_paoi=None,
            within_ci99=None,
        )
    analytic = closed_loop_paoi(scenario)
    stats = run(scenario, n_slots=n_slots, seed=seed)
    if stats.mean_paoi is None:
        return CompareReport(
            applicable=False,
            note="simulation delivered no packets",
            analytic=analytic,
            stats=stats,
            rel_err_paoi=None,
            within_ci99=None,
        )
    diff = abs(stats.mean_paoi - analytic.paoi)
    return CompareReport(
        applicable=True,
        note="",
        analytic=analytic,
        stats=stats,
        rel_err_paoi=diff / analytic.paoi,
        within_ci99=(stats.paoi_ci99 is not None and diff <= stats.paoi_ci99),
    )
