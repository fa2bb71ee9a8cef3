"""Closed-form peak-age formulas against independent brute-force simulators.

The oracles below are deliberately written as naive per-packet event loops
(explicit server-free bookkeeping), sharing no code with the production
simulator, and stay the reference for every frozen value asserted here.
"""

import math

import numpy as np
import pytest

from agejam import (
    StabilityError,
    TrafficConfig,
    closed_loop_paoi,
    mg1_sojourn,
    optimal_lambda_md1,
    paoi_jit,
    paoi_md1,
    paoi_md1_derivative,
)
from conftest import make_scenario


def brute_md1(lam, d, p, n_packets, seed, collect="paoi"):
    """Naive M/D/1 with i.i.d. receiver-side losses; FCFS, no retransmission."""
    rng = np.random.default_rng(seed)
    gaps = rng.exponential(1.0 / lam, n_packets)
    lost = rng.random(n_packets) < p
    t = 0.0
    server_free = 0.0
    last_inf_gen = 0.0
    peaks = []
    sojourns = []
    for k in range(n_packets):
        t += gaps[k]
        start = t if t > server_free else server_free
        dep = start + d
        server_free = dep
        sojourns.append(dep - t)
        if not lost[k]:
            peaks.append(dep - last_inf_gen)
            last_inf_gen = t
    warm = max(1, len(peaks) // 100)
    if collect == "sojourn":
        return float(np.mean(sojourns[n_packets // 100:]))
    return float(np.mean(peaks[warm:]))


def brute_jit(lam, d, p, n_slots, seed):
    """Naive slotted just-in-time updater with Bernoulli sends and losses."""
    rng = np.random.default_rng(seed)
    send = rng.random(n_slots) < lam * d
    lost = rng.random(n_slots) < p
    last_inf_gen = 0.0
    peaks = []
    for b in range(n_slots):
        if send[b] and not lost[b]:
            dep = (b + 1.0) * d
            peaks.append(dep - last_inf_gen)
            last_inf_gen = b * d
    warm = max(1, len(peaks) // 100)
    return float(np.mean(peaks[warm:]))


class TestMg1Sojourn:
    def test_frozen_deterministic_service(self):
        assert mg1_sojourn(0.5, 1.0, 1.0) == pytest.approx(1.5, abs=1e-12)

    def test_brute_force_agreement(self):
        sim = brute_md1(0.5, 1.0, 0.0, 300_000, seed=11, collect="sojourn")
        assert sim == pytest.approx(1.5, rel=0.01)

    def test_empty_system(self):
        assert mg1_sojourn(0.0, 2.0, 4.0) == 2.0

    def test_instability(self):
        with pytest.raises(StabilityError):
            mg1_sojourn(1.0, 1.0, 1.0)
        with pytest.raises(StabilityError):
            mg1_sojourn(1.0 - 1e-12, 1.0, 1.0)


class TestPaoiMd1:
    def test_frozen_lossless(self):
        assert paoi_md1(0.6, 1.0, 0.0) == pytest.approx(3.416667, abs=1e-6)
        assert paoi_md1(0.6, 1.0, 0.0) == pytest.approx(1 / 0.6 + 1 + 0.6 / 0.8, abs=1e-12)

    def test_frozen_half_loss(self):
        assert paoi_md1(0.6, 1.0, 0.5) == pytest.approx(5.083333, abs=1e-6)

    def test_brute_force_agreement(self):
        assert brute_md1(0.6, 1.0, 0.0, 400_000, seed=12) == pytest.approx(3.416667, rel=0.01)
        assert brute_md1(0.6, 1.0, 0.5, 400_000, seed=13) == pytest.approx(5.083333, rel=0.01)

    def test_sparse_update_asymptote(self):
        assert paoi_md1(1e-3, 1.0, 0.0) == pytest.approx(1001.0, abs=1e-2)

    def test_strictly_increasing_in_loss(self):
        vals = [paoi_md1(0.6, 1.0, p) for p in np.linspace(0.0, 0.95, 12)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_errors(self):
        with pytest.raises(ValueError):
            paoi_md1(0.6, 1.0, 1.0)
        with pytest.raises(StabilityError):
            paoi_md1(1.0, 1.0, 0.0)
        with pytest.raises(ValueError):
            paoi_md1(0.0, 1.0, 0.0)


class TestPaoiJit:
    def test_every_slot_delivered(self):
        assert paoi_jit(1.0, 1.0, 0.0) == 2.0

    def test_frozen_half_loss(self):
        assert paoi_jit(0.6, 1.0, 0.5) == pytest.approx(4.333333, abs=1e-6)

    def test_brute_force_agreement(self):
        assert brute_jit(0.6, 1.0, 0.5, 800_000, seed=14) == pytest.approx(4.333333, rel=0.01)

    def test_never_above_queued_model(self, rng):
        for _ in range(200):
            lam = rng.uniform(0.05, 0.95)
            p = rng.uniform(0.0, 0.9)
            assert paoi_jit(lam, 1.0, p) <= paoi_md1(lam, 1.0, p)

    def test_rate_cap(self):
        with pytest.raises(ValueError):
            paoi_jit(1.2, 1.0, 0.0)


class TestOptimalLambda:
    def test_frozen_values(self):
        assert optimal_lambda_md1(1.0, 0.0) == pytest.approx(2 - math.sqrt(2), abs=1e-12)
        assert optimal_lambda_md1(1.0, 0.0) == pytest.approx(0.585786, abs=1e-6)
        assert optimal_lambda_md1(1.0, 0.5) == pytest.approx(2.0 / 3.0, abs=1e-12)

    def test_stability_boundary_limit(self):
        assert optimal_lambda_md1(1.0, 1.0 - 1e-12) == pytest.approx(1.0, abs=1e-5)
        assert optimal_lambda_md1(2.0, 0.0) <= 0.5

    @pytest.mark.parametrize("p", [0.0, 0.1, 0.3, 0.5])
    def test_grid_search_confirms_minimizer(self, p):
        d = 1.0
        grid = np.arange(1e-4, 1.0 / d, 1e-4)
        vals = np.array([paoi_md1(l, d, p) for l in grid])
        best = grid[int(np.argmin(vals))]
        assert abs(best - optimal_lambda_md1(d, p)) <= 1e-4 + 1e-12

    def test_zeroes_the_derivative(self):
        for p in (0.0, 0.2, 0.7):
            lam = optimal_lambda_md1(1.0, p)
            assert abs(paoi_md1_derivative(lam, 1.0, p)) < 1e-9


class TestDerivative:
    def test_matches_finite_differences(self, rng):
        h = 1e-6
        worst = 0.0
        for _ in range(100):
            lam = rng.uniform(0.05, 0.9)
            p = rng.uniform(0.0, 0.9)
            fd = (paoi_md1(lam + h, 1.0, p) - paoi_md1(lam - h, 1.0, p)) / (2 * h)
            exact = paoi_md1_derivative(lam, 1.0, p)
            worst = max(worst, abs(fd - exact) / abs(exact))
        assert worst < 1e-6


class TestTrafficConfig:
    def test_priors(self):
        tr = TrafficConfig(lam=0.6, q=0.5)
        assert tr.transmit_prob == pytest.approx(0.6)
        assert tr.decoy_prob == pytest.approx(0.2)
        assert TrafficConfig(lam=0.6, q_t=0.7).transmit_prob == 0.7

    def test_validation(self):
        with pytest.raises(ValueError):
            TrafficConfig(lam=-0.1)
        with pytest.raises(ValueError):
            TrafficConfig(q=1.5)
        with pytest.raises(ValueError):
            TrafficConfig(model="mg1")
        with pytest.raises(ValueError):
            TrafficConfig(lam=1.2, model="jit")


class TestClosedLoop:
    def test_perfect_channel_degenerate(self):
        sc = make_scenario(channel={"gamma_min_db": -200.0})
        res = closed_loop_paoi(sc)
        assert res.p_loss == pytest.approx(0.0, abs=1e-12)
        assert res.paoi == pytest.approx(paoi_md1(0.6, 1.0, 0.0), abs=1e-6)

    def test_invisible_transmitter(self):
        # all-miss classifier: activity comes from decoys only and
        # the peak age equals the jam-free value
        sc = make_scenario(
            traffic={"q": 0.5},
            detector={"p_m_t": 1.0, "p_m_d": 0.3, "p_f_t": 0.0, "p_f_d": 0.0},
        )
        res = closed_loop_paoi(sc)
        assert res.p_jam_real == 0.0
        assert res.p_busy == pytest.approx(0.2 * 0.7)
        from agejam import snr_cdf

        p_clear = snr_cdf(sc.channel.gamma_min, sc.channel.h1, sc.power.p_t, 1.0)
        assert res.paoi == pytest.approx(paoi_md1(0.6, 1.0, p_clear), abs=1e-12)

    def test_silent_jammer_flag(self):
        sc = make_scenario(
            traffic={"q": 0.0},
            detector={"p_m_t": 1.0, "p_m_d": 1.0, "p_f_t": 0.0, "p_f_d": 0.0},
        )
        res = closed_loop_paoi(sc)
        assert res.jammer_silent
        assert res.p_j == 0.0

    def test_reports_all_intermediates(self):
        res = closed_loop_paoi(make_scenario())
        assert res.p_busy == pytest.approx(0.519, abs=1e-12)
        assert res.p_j == pytest.approx(1.0 / 0.519, abs=1e-9)
        assert res.p_jam_real == pytest.approx(0.48, abs=1e-12)
        assert 0.0 < res.p_loss < 1.0
        assert res.paoi >= 1.0

    def test_instability_reports_rho(self):
        sc = make_scenario(traffic={"lambda": 1.2, "q_t": 0.6})
        with pytest.raises(StabilityError) as exc:
            closed_loop_paoi(sc)
        assert exc.value.rho == pytest.approx(1.2)
