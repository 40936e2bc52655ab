"""Maximum temporally-consistent subsequence selection.

A retained clock sample must be consistent with EVERY other retained sample,
not just its neighbours: the clock never increases, and never falls faster
than wall time plus a slack theta. The slack does not accumulate across
links, so a longest-chain recurrence over consecutive pairs can return
chains whose far-apart members break the bound.

In scaled integer coordinates W = t*p + n*100*q (fps = p/q), the pair
constraint for sample i before sample j reads

    t_j <= t_i   and   W_i <= W_j + theta*p

so a subsequence is valid exactly when its times are non-increasing and its
W values never drop more than theta*p below their running maximum. The DP
keeps, per sample, a Pareto frontier of (chain length, running max W)
states; a smaller running max admits strictly more extensions, so pruning
dominated states is lossless. Cost is O(n * S) for S total frontier states,
with S ~= n on realistic inputs.

All arithmetic is int64, so the kernel agrees bit-for-bit with the pairwise
predicate used by brute-force oracles. The kernel is jitted with numba on
first use; the plain-Python body is the fallback and the reference.
"""
from __future__ import annotations

import numpy as np

_INT64_MAX = np.iinfo(np.int64).max


def _chain_dp(times, wvals, theta):
    """Return ascending indices of one maximum-cardinality valid subsequence.

    Ties resolve deterministically: longer chains win, then smaller running
    max, then the earliest-created state.
    """
    n = times.shape[0]
    out = np.empty(n, np.int64)
    if n == 0:
        return out[:0].copy()

    cap = 2 * n + 8
    st_len = np.empty(cap, np.int64)
    st_rm = np.empty(cap, np.int64)
    st_par = np.empty(cap, np.int64)
    st_node = np.empty(cap, np.int64)
    st_t = np.empty(cap, np.int64)

    # Per-length candidate scratch, stamped per node to avoid clearing.
    len_rm = np.empty(n + 2, np.int64)
    len_par = np.empty(n + 2, np.int64)
    len_stamp = np.full(n + 2, -1, np.int64)
    touched = np.empty(n + 2, np.int64)

    ns = 0
    best_len = 0
    best_state = -1

    for j in range(n):
        tj = times[j]
        wj = wvals[j]
        lim = wj + theta
        low_len = 0
        low_par = -1
        ntouch = 0
        for s in range(ns):
            if st_t[s] < tj:
                continue
            rm = st_rm[s]
            if rm <= wj:
                # Extension lifts the running max to wj; only length matters.
                if st_len[s] > low_len:
                    low_len = st_len[s]
                    low_par = s
            elif rm <= lim:
                lcand = st_len[s] + 1
                if len_stamp[lcand] != j:
                    len_stamp[lcand] = j
                    len_rm[lcand] = rm
                    len_par[lcand] = s
                    touched[ntouch] = lcand
                    ntouch += 1
                elif rm < len_rm[lcand]:
                    len_rm[lcand] = rm
                    len_par[lcand] = s
        lcand = low_len + 1
        if len_stamp[lcand] != j:
            len_stamp[lcand] = j
            len_rm[lcand] = wj
            len_par[lcand] = low_par
            touched[ntouch] = lcand
            ntouch += 1
        elif wj < len_rm[lcand]:
            len_rm[lcand] = wj
            len_par[lcand] = low_par

        # Sort touched lengths descending; ntouch stays small in practice.
        for a in range(1, ntouch):
            v = touched[a]
            b = a - 1
            while b >= 0 and touched[b] < v:
                touched[b + 1] = touched[b]
                b -= 1
            touched[b + 1] = v

        if ns + ntouch > cap:
            extra = cap if cap > ntouch + 8 else ntouch + 8
            st_len = np.concatenate((st_len, np.empty(extra, np.int64)))
            st_rm = np.concatenate((st_rm, np.empty(extra, np.int64)))
            st_par = np.concatenate((st_par, np.empty(extra, np.int64)))
            st_node = np.concatenate((st_node, np.empty(extra, np.int64)))
            st_t = np.concatenate((st_t, np.empty(extra, np.int64)))
            cap += extra

        # Pareto sweep: keep a state only when its running max beats every
        # longer state's running max.
        cur_min = _INT64_MAX
        for a in range(ntouch):
            lcand = touched[a]
            rm = len_rm[lcand]
            if rm < cur_min:
                cur_min = rm
                st_len[ns] = lcand
                st_rm[ns] = rm
                st_par[ns] = len_par[lcand]
                st_node[ns] = j
                st_t[ns] = tj
                if lcand > best_len:
                    best_len = lcand
                    best_state = ns
                ns += 1

    k = best_len
    s = best_state
    while s >= 0:
        k -= 1
        out[k] = st_node[s]
        s = st_par[s]
    return out[:best_len].copy()


_impl = None


def _get_impl():
    global _impl
    if _impl is None:
        try:
            from numba import njit

            _impl = njit(cache=True)(_chain_dp)
        except ImportError:  # pragma: no cover - numba is a declared dependency
            _impl = _chain_dp
    return _impl


def max_consistent_chain(
    times_cs: np.ndarray, wvals: np.ndarray, theta_scaled: int
) -> np.ndarray:
    """Select indices of a maximum all-pairs-consistent subsequence."""
    times_cs = np.ascontiguousarray(times_cs, dtype=np.int64)
    wvals = np.ascontiguousarray(wvals, dtype=np.int64)
    return _get_impl()(times_cs, wvals, np.int64(theta_scaled))
