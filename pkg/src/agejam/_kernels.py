"""Hot simulation kernels.

Two implementations of the same per-block bookkeeping: a sequential loop
compiled with numba (default) and a vectorized pure-numpy path.  Set
AGEJAM_NO_NUMBA=1 to force the numpy path; it is also used automatically
when numba is not importable.  Both paths consume identical pre-drawn
random arrays, so integer outcomes (deliveries, losses, activations) match
exactly and float accumulators agree to rounding.

Block semantics shared by both paths:
  - a block is one resource block of duration d (one service time);
  - truth codes: 0 idle, 1 real, 2 decoy;
  - a busy call spends one block of jamming energy whatever the truth;
  - interference lands on a real packet only when the busy call also
    aligns with it (probability hit_prob), keeping the slot-level law
    P[interfere on real] = q_t*(1 - p_m_t) of the analytic pipeline;
  - adaptive jammers re-estimate the per-activation power as
    p_j_max * blocks_seen / activations at every activation.
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("AGEJAM_NO_NUMBA", "").strip() not in ("1", "true", "yes")
if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

__all__ = ["USE_NUMBA", "run_m1_blocks", "run_m2_blocks"]


def _m1_loop(
    n_blocks, d, gen, dep, block_idx,
    u_det, u_hit, u_decoy, g1, g3,
    pb_real, pb_decoy, pb_idle, hit_prob, q,
    p_j, adaptive, p_j_max,
    p_t, sigma1, gamma_min,
    burn_time, horizon,
    peaks, trace_on, truth_tr, jam_tr, outage_tr, qlen_tr, age_tr,
):
    n_served = dep.shape[0]
    n_arr = gen.shape[0]
    j = 0
    arr_ptr = 0
    activations = 0
    act_real = 0
    act_decoy = 0
    act_idle = 0
    n_decoy = 0
    n_idle = 0
    delivered = 0
    dropped = 0
    n_peaks = 0
    last_gen = 0.0
    last_dep = 0.0
    age_integral = 0.0
    energy = 0.0
    for b in range(n_blocks):
        t_end = (b + 1.0) * d
        lg0 = last_gen
        is_real = j < n_served and block_idx[j] == b
        jams = False
        outage = False
        truth = 0
        if is_real:
            truth = 1
            jams = u_det[b] < pb_real
            pj_eff = 0.0
            if jams:
                activations += 1
                act_real += 1
                if adaptive:
                    pj_eff = p_j_max * (b + 1.0) / activations
                else:
                    pj_eff = p_j
                energy += pj_eff * d
            interf = 0.0
            if jams and u_hit[b] < hit_prob:
                interf = g3[b] * pj_eff
            sinr = g1[b] * p_t / (sigma1 + interf)
            outage = sinr <= gamma_min
            if outage:
                dropped += 1
            else:
                delivered += 1
                dpt = dep[j]
                # FCFS keeps generation times increasing: every delivery
                # is informative.
                if dpt > burn_time:
                    peaks[n_peaks] = dpt - last_gen
                    n_peaks += 1
                    t0 = last_dep if last_dep > burn_time else burn_time
                    a1 = dpt - last_gen
                    a0 = t0 - last_gen
                    age_integral += 0.5 * (a1 * a1 - a0 * a0)
                last_gen = gen[j]
                last_dep = dpt
            j += 1
        else:
            if u_decoy[b] < q:
                truth = 2
                n_decoy += 1
                jams = u_det[b] < pb_decoy
            else:
                n_idle += 1
                jams = u_det[b] < pb_idle
            if jams:
                activations += 1
                if truth == 2:
                    act_decoy += 1
                else:
                    act_idle += 1
                if adaptive:
                    energy += p_j_max * (b + 1.0) / activations * d
                else:
                    energy += p_j * d
        if trace_on:
            truth_tr[b] = truth
            jam_tr[b] = 1 if jams else 0
            outage_tr[b] = 1 if outage else 0
            while arr_ptr < n_arr and gen[arr_ptr] <= t_end:
                arr_ptr += 1
            qlen_tr[b] = arr_ptr - j
            # a delivery later in this block has not reset the age yet
            age_tr[b] = t_end - (last_gen if last_dep <= t_end else lg0)
    t0 = last_dep if last_dep > burn_time else burn_time
    if horizon > t0:
        a1 = horizon - last_gen
        a0 = t0 - last_gen
        age_integral += 0.5 * (a1 * a1 - a0 * a0)
    return (
        n_peaks, age_integral, delivered, dropped, activations,
        act_real, act_decoy, act_idle, n_decoy, n_idle, energy,
    )


def _m2_loop(
    n_blocks, d, send_prob,
    u_tx, u_det, u_hit, u_decoy, g1, g3,
    pb_real, pb_decoy, pb_idle, hit_prob, q,
    p_j, adaptive, p_j_max,
    p_t, sigma1, gamma_min,
    burn_time, horizon,
    peaks, trace_on, truth_tr, jam_tr, outage_tr, qlen_tr, age_tr,
):
    activations = 0
    act_real = 0
    act_decoy = 0
    act_idle = 0
    n_real = 0
    n_decoy = 0
    n_idle = 0
    delivered = 0
    dropped = 0
    n_peaks = 0
    last_gen = 0.0
    last_dep = 0.0
    age_integral = 0.0
    energy = 0.0
    for b in range(n_blocks):
        t_end = (b + 1.0) * d
        jams = False
        outage = False
        truth = 0
        if u_tx[b] < send_prob:
            truth = 1
            n_real += 1
            jams = u_det[b] < pb_real
            pj_eff = 0.0
            if jams:
                activations += 1
                act_real += 1
                if adaptive:
                    pj_eff = p_j_max * (b + 1.0) / activations
                else:
                    pj_eff = p_j
                energy += pj_eff * d
            interf = 0.0
            if jams and u_hit[b] < hit_prob:
                interf = g3[b] * pj_eff
            sinr = g1[b] * p_t / (sigma1 + interf)
            outage = sinr <= gamma_min
            if outage:
                dropped += 1
            else:
                delivered += 1
                dpt = t_end
                if dpt > burn_time:
                    peaks[n_peaks] = dpt - last_gen
                    n_peaks += 1
                    t0 = last_dep if last_dep > burn_time else burn_time
                    a1 = dpt - last_gen
                    a0 = t0 - last_gen
                    age_integral += 0.5 * (a1 * a1 - a0 * a0)
                last_gen = b * d
                last_dep = dpt
        else:
            if u_decoy[b] < q:
                truth = 2
                n_decoy += 1
                jams = u_det[b] < pb_decoy
            else:
                n_idle += 1
                jams = u_det[b] < pb_idle
            if jams:
                activations += 1
                if truth == 2:
                    act_decoy += 1
                else:
                    act_idle += 1
                if adaptive:
                    energy += p_j_max * (b + 1.0) / activations * d
                else:
                    energy += p_j * d
        if trace_on:
            truth_tr[b] = truth
            jam_tr[b] = 1 if jams else 0
            outage_tr[b] = 1 if outage else 0
            qlen_tr[b] = 0
            age_tr[b] = t_end - last_gen
    t0 = last_dep if last_dep > burn_time else burn_time
    if horizon > t0:
        a1 = horizon - last_gen
        a0 = t0 - last_gen
        age_integral += 0.5 * (a1 * a1 - a0 * a0)
    return (
        n_peaks, age_integral, delivered, dropped, activations,
        act_real, act_decoy, act_idle, n_real, n_decoy, n_idle, energy,
    )


if USE_NUMBA:
    _m1_loop_jit = njit(cache=True)(_m1_loop)
    _m2_loop_jit = njit(cache=True)(_m2_loop)


# --- vectorized numpy twins ------------------------------------------------

def _informative_stats(gd, dd, burn_time, horizon):
    """Peaks and exact sawtooth integral from informative (gen, dep) pairs."""
    prev_gen = np.concatenate(([0.0], gd[:-1]))
    prev_dep = np.concatenate(([0.0], dd[:-1]))
    keep = dd > burn_time
    peaks = (dd - prev_gen)[keep]
    t0 = np.maximum(prev_dep, burn_time)
    seg = 0.5 * ((dd - prev_gen) ** 2 - (t0 - prev_gen) ** 2)
    age_integral = float(seg[keep].sum())
    lg = float(gd[-1]) if gd.size else 0.0
    ld = float(dd[-1]) if dd.size else 0.0
    t0t = ld if ld > burn_time else burn_time
    if horizon > t0t:
        age_integral += 0.5 * ((horizon - lg) ** 2 - (t0t - lg) ** 2)
    return peaks, age_integral


def _jam_energy(jams, adaptive, p_j, p_j_max, d, n_blocks):
    act_cum = np.cumsum(jams)
    if adaptive:
        pj_eff = p_j_max * np.arange(1.0, n_blocks + 1.0) / np.maximum(act_cum, 1)
    else:
        pj_eff = np.full(n_blocks, p_j)
    energy = float((pj_eff * d * jams).sum())
    return pj_eff, energy


def _m1_numpy(
    n_blocks, d, gen, dep, block_idx,
    u_det, u_hit, u_decoy, g1, g3,
    pb_real, pb_decoy, pb_idle, hit_prob, q,
    p_j, adaptive, p_j_max,
    p_t, sigma1, gamma_min,
    burn_time, horizon,
    peaks, trace_on, truth_tr, jam_tr, outage_tr, qlen_tr, age_tr,
):
    n_served = dep.shape[0]
    is_real = np.zeros(n_blocks, dtype=bool)
    is_real[block_idx] = True
    decoy = ~is_real & (u_decoy < q)
    idle = ~is_real & ~decoy
    jams = (
        (is_real & (u_det < pb_real))
        | (decoy & (u_det < pb_decoy))
        | (idle & (u_det < pb_idle))
    )
    pj_eff, energy = _jam_energy(jams, adaptive, p_j, p_j_max, d, n_blocks)

    jr = jams[block_idx]
    hit = jr & (u_hit[block_idx] < hit_prob)
    interf = np.where(hit, g3[block_idx] * pj_eff[block_idx], 0.0)
    sinr = g1[block_idx] * p_t / (sigma1 + interf)
    outage = sinr <= gamma_min
    ok = ~outage
    gd = gen[:n_served][ok]
    dd = dep[ok]
    pk, age_integral = _informative_stats(gd, dd, burn_time, horizon)
    peaks[: pk.size] = pk

    if trace_on:
        truth_tr[:] = 0
        truth_tr[is_real] = 1
        truth_tr[decoy] = 2
        jam_tr[:] = jams
        outage_tr[:] = False
        outage_tr[block_idx] = outage
        t_end = (np.arange(n_blocks) + 1.0) * d
        arrived = np.searchsorted(gen, t_end, side="right")
        served = np.searchsorted(block_idx, np.arange(n_blocks), side="right")
        qlen_tr[:] = arrived - served
        last_gen = np.zeros(n_blocks)
        if gd.size:
            pos = np.searchsorted(dd, t_end, side="right")
            last_gen = np.where(pos > 0, gd[np.maximum(pos - 1, 0)], 0.0)
        age_tr[:] = t_end - last_gen

    return (
        int(pk.size), age_integral, int(ok.sum()), int(outage.sum()),
        int(jams.sum()),
        int((jams & is_real).sum()), int((jams & decoy).sum()), int((jams & idle).sum()),
        int(decoy.sum()), int(idle.sum()), energy,
    )


def _m2_numpy(
    n_blocks, d, send_prob,
    u_tx, u_det, u_hit, u_decoy, g1, g3,
    pb_real, pb_decoy, pb_idle, hit_prob, q,
    p_j, adaptive, p_j_max,
    p_t, sigma1, gamma_min,
    burn_time, horizon,
    peaks, trace_on, truth_tr, jam_tr, outage_tr, qlen_tr, age_tr,
):
    is_real = u_tx < send_prob
    decoy = ~is_real & (u_decoy < q)
    idle = ~is_real & ~decoy
    jams = (
        (is_real & (u_det < pb_real))
        | (decoy & (u_det < pb_decoy))
        | (idle & (u_det < pb_idle))
    )
    pj_eff, energy = _jam_energy(jams, adaptive, p_j, p_j_max, d, n_blocks)

    ridx = np.flatnonzero(is_real)
    jr = jams[ridx]
    hit = jr & (u_hit[ridx] < hit_prob)
    interf = np.where(hit, g3[ridx] * pj_eff[ridx], 0.0)
    sinr = g1[ridx] * p_t / (sigma1 + interf)
    outage = sinr <= gamma_min
    ok = ~outage
    gd = ridx[ok] * d
    dd = (ridx[ok] + 1.0) * d
    pk, age_integral = _informative_stats(gd, dd, burn_time, horizon)
    peaks[: pk.size] = pk

    if trace_on:
        truth_tr[:] = 0
        truth_tr[is_real] = 1
        truth_tr[decoy] = 2
        jam_tr[:] = jams
        outage_tr[:] = False
        outage_tr[ridx] = outage
        qlen_tr[:] = 0
        t_end = (np.arange(n_blocks) + 1.0) * d
        last_gen = np.zeros(n_blocks)
        if gd.size:
            pos = np.searchsorted(dd, t_end, side="right")
            last_gen = np.where(pos > 0, gd[np.maximum(pos - 1, 0)], 0.0)
        age_tr[:] = t_end - last_gen

    return (
        int(pk.size), age_integral, int(ok.sum()), int(outage.sum()),
        int(jams.sum()),
        int((jams & is_real).sum()), int((jams & decoy).sum()), int((jams & idle).sum()),
        int(is_real.sum()), int(decoy.sum()), int(idle.sum()), energy,
    )


def run_m1_blocks(*args):
    if USE_NUMBA:
        return _m1_loop_jit(*args)
    return _m1_numpy(*args)


def run_m2_blocks(*args):
    if USE_NUMBA:
        return _m2_loop_jit(*args)
    return _m2_numpy(*args)
