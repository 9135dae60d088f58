"""Compiled inner loops for exhaustive checks over all 2-matchings."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _lis_positions(seq, n, out):
    # Patience sorting with back-pointers; same tie rules as sequences.longest_increasing.
    tails = np.empty(n, np.int64)
    tail_pos = np.empty(n, np.int64)
    back = np.empty(n, np.int64)
    piles = 0
    for i in range(n):
        x = seq[i]
        lo, hi = 0, piles
        while lo < hi:
            mid = (lo + hi) // 2
            if tails[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        tails[lo] = x
        tail_pos[lo] = i
        if lo == piles:
            piles += 1
        back[i] = tail_pos[lo - 1] if lo > 0 else -1
    i = tail_pos[piles - 1]
    k = piles - 1
    while i != -1:
        out[k] = i
        k -= 1
        i = back[i]
    return piles


@njit(cache=True)
def base2_outcome(lefts, rights, n, x1, x2, x3, buf, neg):
    """Run the base extraction on one matching.

    Returns (branch, size) with branch 1 line, 2 stack, 3 wave, or 0 when
    the produced set is not a clique larger than its threshold.
    """
    for i in range(n):
        neg[i] = -rights[i]
    s = _lis_positions(neg, n, buf)
    if s > x2:
        for a in range(s):
            for b in range(a + 1, s):
                if not rights[buf[a]] > rights[buf[b]]:
                    return 0, s
        return 2, s
    L = _lis_positions(rights, n, buf)
    waves = 0
    best = 0
    best_start = 0
    i = 0
    prev_right = 0
    line_ok = True
    while i < L:
        head = buf[i]
        if lefts[head] < prev_right:
            line_ok = False
        prev_right = rights[head]
        j = i + 1
        while j < L and lefts[buf[j]] < rights[head]:
            j += 1
        waves += 1
        if j - i > best:
            best = j - i
            best_start = i
        i = j
    if waves > x1:
        return (1 if line_ok else 0), waves
    if best > x3:
        for a in range(best_start, best_start + best):
            for b in range(a + 1, best_start + best):
                e, f = buf[a], buf[b]
                if not (lefts[e] < lefts[f] < rights[e] < rights[f]):
                    return 0, best
        return 3, best
    return 0, best


@njit(cache=True)
def exhaustive_base2(n, x1, x2, x3):
    """Outcome counts [failed, line, stack, wave] over all 2-matchings of size n.

    Matchings are visited through their choice sequences: edge k joins the
    first free vertex to the c_k-th remaining free vertex.
    """
    counts = np.zeros(4, np.int64)
    if n == 0:
        return counts
    v = 2 * n
    choice = np.zeros(n, np.int64)
    free = np.empty(v, np.int64)
    lefts = np.empty(n, np.int64)
    rights = np.empty(n, np.int64)
    buf = np.empty(n, np.int64)
    neg = np.empty(n, np.int64)
    while True:
        for t in range(v):
            free[t] = t + 1
        size = v
        for k in range(n):
            lefts[k] = free[0]
            c = choice[k] + 1
            rights[k] = free[c]
            # remove positions 0 and c
            w = 0
            for t in range(1, size):
                if t != c:
                    free[w] = free[t]
                    w += 1
            size -= 2
        branch, _ = base2_outcome(lefts, rights, n, x1, x2, x3, buf, neg)
        counts[branch] += 1
        k = n - 1
        while k >= 0:
            choice[k] += 1
            if choice[k] < v - 2 * k - 1:
                break
            choice[k] = 0
            k -= 1
        if k < 0:
            break
    return counts
