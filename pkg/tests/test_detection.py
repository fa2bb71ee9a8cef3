"""Detection laws against slot-level Monte Carlo and the energy detector
against raw complex-sample simulation."""

import json
import math

import numpy as np
import pytest
from scipy import special

from agejam import (
    DetectorTable,
    EnergyDetector,
    RocPair,
    TableDetector,
    energy_detector_roc,
    jam_trigger_probability_real,
    prob_jammer_declares_busy,
    prob_jammer_declares_idle,
    roc_from_detector,
    table_detector_lookup,
)

N_SLOTS = 1_000_000


def mc_busy_rate(rng, q_t, q_d, roc, n=N_SLOTS):
    """Oracle: simulate the four-outcome detection experiment slot by slot."""
    u = rng.random(n)
    real = u < q_t
    decoy = (u >= q_t) & (u < q_t + q_d)
    idle = ~real & ~decoy
    v = rng.random(n)
    busy = (real & (v < 1 - roc.p_m_t)) | (decoy & (v < 1 - roc.p_m_d)) | (idle & (v < roc.p_f))
    return float(busy.mean())


def se3(p, n=N_SLOTS):
    return 3.0 * math.sqrt(max(p * (1 - p), 1e-12) / n)


class TestBusyIdle:
    def test_never_idle_perfect_detector(self):
        roc = RocPair(0.0, 0.0, 0.3, 0.2)
        assert prob_jammer_declares_busy(0.6, 0.4, roc) == pytest.approx(1.0)

    def test_frozen_mixed_case(self, rng):
        roc = RocPair(p_m_t=0.2, p_m_d=0.0, p_f_t=0.1, p_f_d=0.0)
        exact = prob_jammer_declares_busy(0.6, 0.0, roc)
        assert exact == pytest.approx(0.52, abs=1e-12)
        assert abs(mc_busy_rate(rng, 0.6, 0.0, roc) - exact) < se3(exact)

    def test_silent_network(self):
        roc = RocPair(0.5, 0.5, 0.0, 0.0)
        assert prob_jammer_declares_busy(0.0, 0.0, roc) == 0.0

    def test_idle_examples(self):
        roc = RocPair(p_m_t=0.2, p_m_d=0.0, p_f_t=0.1, p_f_d=0.0)
        assert prob_jammer_declares_idle(0.6, 0.0, roc) == pytest.approx(0.48)
        perfect = RocPair(0.0, 0.0, 0.0, 0.0)
        assert prob_jammer_declares_idle(0.0, 0.0, perfect) == 1.0
        assert prob_jammer_declares_idle(1.0, 0.0, perfect) == 0.0

    def test_busy_idle_sum_to_one_both_modes(self, rng):
        for _ in range(300):
            q_t, q_d = rng.random(2) * 0.5
            roc = RocPair(*rng.random(4))
            for mode in ("exclusive", "paper_literal"):
                b = prob_jammer_declares_busy(q_t, q_d, roc, mode)
                i = prob_jammer_declares_idle(q_t, q_d, roc, mode)
                assert b + i == pytest.approx(1.0, abs=1e-12)

    def test_paper_literal_idle_weight(self):
        # reproduces the printed law with (1-q_t)(1-q_d) on the false alarm
        roc = RocPair(0.1, 0.2, 0.3, 0.0)
        q_t, q_d = 0.5, 0.3
        expected = 0.5 * 0.9 + 0.3 * 0.8 + 0.5 * 0.7 * 0.3
        assert prob_jammer_declares_busy(q_t, q_d, roc, "paper_literal") == pytest.approx(
            expected, abs=1e-12
        )

    def test_exclusive_rejects_overlapping_priors(self):
        roc = RocPair(0.1, 0.1, 0.1, 0.1)
        with pytest.raises(ValueError):
            prob_jammer_declares_busy(0.7, 0.7, roc)
        # the paper-literal mode has no such constraint
        prob_jammer_declares_busy(0.7, 0.7, roc, "paper_literal")

    def test_monotone_in_decoy_prior(self, rng):
        # detectable decoys raise the activation rate: mechanism of the
        # jamming-power-vs-q curve
        for _ in range(100):
            roc = RocPair(
                p_m_t=rng.random(),
                p_m_d=rng.random() * 0.5,
                p_f_t=rng.random() * 0.2,
                p_f_d=rng.random() * 0.2,
            )
            if 1 - roc.p_m_d <= roc.p_f:
                continue
            q_t = rng.random() * 0.5
            qs = np.linspace(0.0, 1.0 - q_t, 8)
            vals = [prob_jammer_declares_busy(q_t, qd, roc) for qd in qs]
            assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))

    def test_slot_mc_matches_both_laws(self, rng):
        roc = RocPair(0.25, 0.1, 0.07, 0.04)
        q_t, q_d = 0.5, 0.3
        exact = prob_jammer_declares_busy(q_t, q_d, roc)
        assert abs(mc_busy_rate(rng, q_t, q_d, roc) - exact) < se3(exact)


class TestJamTrigger:
    def test_values(self):
        roc = RocPair(0.2, 0.0, 0.0, 0.0)
        assert jam_trigger_probability_real(0.6, roc) == pytest.approx(0.48)
        assert jam_trigger_probability_real(0.0, roc) == 0.0
        assert jam_trigger_probability_real(1.0, RocPair(0.0, 0.0, 0.0, 0.0)) == 1.0


class TestEnergyDetector:
    def test_chi_square_tail(self):
        p_fa, _ = energy_detector_roc(1.0, 1, 1.0, 0.5)
        assert p_fa == pytest.approx(math.exp(-1.0), abs=1e-12)

    def test_always_busy_at_zero_threshold(self):
        assert energy_detector_roc(0.0, 4, 1.0, 1.0) == (1.0, 1.0)

    def test_blind_at_zero_snr(self):
        p_fa, p_d = energy_detector_roc(5.0, 4, 1.0, 0.0)
        assert p_d == pytest.approx(p_fa, abs=1e-12)

    def test_detect_beats_false_alarm(self):
        p_fa, p_d = energy_detector_roc(20.0, 16, 1.0, 1.0)
        assert p_d > p_fa

    def test_monotone_in_threshold(self):
        taus = np.linspace(1.0, 60.0, 10)
        rocs = [energy_detector_roc(t, 16, 1.0, 1.0) for t in taus]
        for (fa_a, pd_a), (fa_b, pd_b) in zip(rocs, rocs[1:]):
            assert fa_b <= fa_a + 1e-12
            assert pd_b <= pd_a + 1e-12

    def test_against_sample_level_mc(self, rng):
        # 1e6 synthetic sensing windows, block Rayleigh fading, n = 8
        n, tau, snr = 8, 12.0, 0.8
        draws = 1_000_000
        noise = (rng.standard_normal((draws, n)) + 1j * rng.standard_normal((draws, n))) / np.sqrt(2)
        stat0 = np.abs(noise) ** 2
        emp_fa = float(np.mean(stat0.sum(axis=1) > tau))
        g = rng.exponential(snr, draws)[:, None]
        phase = rng.random((draws, n)) * 2 * np.pi
        sig = np.sqrt(g) * np.exp(1j * phase)
        stat1 = np.abs(sig + noise) ** 2
        emp_d = float(np.mean(stat1.sum(axis=1) > tau))
        p_fa, p_d = energy_detector_roc(tau, n, 1.0, snr)
        assert abs(emp_fa - p_fa) < se3(p_fa, draws)
        assert abs(emp_d - p_d) < se3(p_d, draws)

    def test_calibrated_model(self):
        det = EnergyDetector.from_false_alarm(0.05, 16)
        assert det.p_false_alarm(16) == pytest.approx(0.05, abs=1e-10)
        # fig-2 style trends: better with SNR and with sample count
        snrs = [0.1, 0.5, 1.0, 3.0, 10.0]
        pds = [det.p_detect(s, 16) for s in snrs]
        assert all(b >= a - 1e-9 for a, b in zip(pds, pds[1:]))
        det32 = EnergyDetector.from_false_alarm(0.05, 32)
        assert det32.p_detect(1.0, 32) > det.p_detect(1.0, 16)

    def test_integration_guard(self):
        # valid inputs converge; the tolerance contract is 1e-6 absolute
        _, p_d = energy_detector_roc(30.0, 16, 1.0, 2.0)
        assert 0.0 <= p_d <= 1.0


def small_table():
    return DetectorTable(
        packet_sizes=(16, 32),
        snr_db=(-5.0, 0.0, 5.0),
        p_detect=((0.2, 0.6, 0.8), (0.3, 0.7, 0.9)),
        p_false_alarm=((0.05, 0.05, 0.05), (0.04, 0.04, 0.04)),
        metadata={"source": "test"},
    )


class TestDetectorTable:
    def test_lookup_on_grid_point(self):
        assert table_detector_lookup(small_table(), 0.0, 16) == (0.6, 0.05)

    def test_lookup_midpoint(self):
        p_d, _ = table_detector_lookup(small_table(), 2.5, 16)
        assert p_d == pytest.approx(0.7)

    def test_clamps_outside_grid(self):
        assert table_detector_lookup(small_table(), -40.0, 16)[0] == 0.2
        assert table_detector_lookup(small_table(), 40.0, 16)[0] == 0.8

    def test_unknown_packet_size(self):
        with pytest.raises(KeyError, match=r"\[16, 32\]"):
            table_detector_lookup(small_table(), 0.0, 64)

    def test_schema_validation(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            DetectorTable(
                packet_sizes=(16,), snr_db=(0.0, 0.0),
                p_detect=((0.5, 0.5),), p_false_alarm=((0.1, 0.1),),
            )
        with pytest.raises(ValueError, match="at least 2"):
            DetectorTable(
                packet_sizes=(16,), snr_db=(0.0,),
                p_detect=((0.5,),), p_false_alarm=((0.1,),),
            )
        with pytest.raises(ValueError):
            DetectorTable(
                packet_sizes=(16,), snr_db=(0.0, 1.0),
                p_detect=((0.5, 1.5),), p_false_alarm=((0.1, 0.1),),
            )

    def test_json_round_trip(self, tmp_path):
        t = small_table()
        path = tmp_path / "table.json"
        path.write_text(json.dumps(t.to_dict()))
        assert DetectorTable.load(path) == t

    def test_unknown_field_rejected(self):
        doc = small_table().to_dict()
        doc["surprise"] = 1
        with pytest.raises(ValueError, match="unknown"):
            DetectorTable.from_dict(doc)

    def test_table_detector_model(self):
        det = TableDetector(small_table())
        assert det.p_detect(1.0, 16) == pytest.approx(0.6)  # 0 dB
        roc = roc_from_detector(det, 1.0, 10 ** 0.3, 16)
        assert roc.p_m_t == pytest.approx(0.4)
        assert roc.p_m_d < roc.p_m_t  # decoy link is 3 dB stronger
