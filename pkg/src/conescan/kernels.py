"""
Compiled linear-time sweeps. All kernels work on absolute indices of the full value arrays and never allocate more
than O(window) memory.
"""
import numpy as np
from numba import njit


@njit(nogil=True, cache=True)
def previous_smaller(x, a, b):
    """
    For every t in [a, b] the last s in [a, t) with x[s] < x[t], or a - 1 if there is none (monotonic stack).
    """
    m = b - a + 1
    out = np.empty(m, dtype=np.int64)
    stack = np.empty(m, dtype=np.int64)
    top = 0
    for t in range(a, b + 1):
        while top > 0 and x[stack[top - 1]] >= x[t]:
            top -= 1
        out[t - a] = stack[top - 1] if top > 0 else a - 1
        stack[top] = t
        top += 1
    return out


@njit(nogil=True, cache=True)
def entrance_from_previous(L, R, a, b, prev_l, prev_r):
    """
    Cone entrance times from the two previous-smaller arrays. Entries are -1 when the cone of t is non-empty and
    extends past a, i.e. L[a - 1] >= L[t] and R[a - 1] >= R[t].
    """
    m = b - a + 1
    v = np.empty(m, dtype=np.int64)
    for k in range(m):
        t = a + k
        entry = max(prev_l[k], prev_r[k]) + 1
        if entry == a and t > a and a > 0 and L[a - 1] >= L[t] and R[a - 1] >= R[t]:
            entry = -1
        v[k] = entry
    return v


@njit(nogil=True, cache=True)
def maximal_intervals(v, a, b):
    """
    Maximal cone intervals from an entrance map, as (entrance, time) arrays sorted by time.

    Cone intervals are nested or interior-disjoint, so a single right-to-left pass that remembers the left end of the
    last accepted interval decides maximality.
    """
    m = b - a + 1
    starts = np.empty(m, dtype=np.int64)
    ends = np.empty(m, dtype=np.int64)
    count = 0
    left = b + 1
    for t in range(b, a - 1, -1):
        entry = v[t - a]
        if entry < a or entry >= t:
            continue
        if t <= left:
            starts[count] = entry
            ends[count] = t
            count += 1
            left = entry
    return starts[:count][::-1].copy(), ends[:count][::-1].copy()


@njit(nogil=True, cache=True)
def greedy_cover(times, eps):
    """Number of half-open intervals [x, x + eps) a greedy left-to-right sweep needs to cover the sorted times."""
    count = 0
    i = 0
    m = times.size
    while i < m:
        count += 1
        limit = times[i] + eps
        while i < m and times[i] < limit:
            i += 1
    return count


@njit(nogil=True, cache=True)
def envelope(starts, ends, a, b):
    """Largest maximal interval containing each index of [a, b]; indices in no interval map to themselves."""
    sigma = np.arange(a, b + 1)
    tau = np.arange(a, b + 1)
    for k in range(starts.size):
        s = starts[k]
        e = ends[k]
        for t in range(s, e + 1):
            current = tau[t - a] - sigma[t - a]
            if e - s > current:
                sigma[t - a] = s
                tau[t - a] = e
    return sigma, tau
