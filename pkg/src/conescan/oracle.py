import numpy as np

from src.conescan.cones import (ConeInterval, EntranceMap, SENTINEL, AMBIGUOUS, LEFT, RIGHT)
from src.corrpath import PathPair, Window
from src.errors import SizeError

MAX_ORACLE_LENGTH = 2 ** 16


def brute_force_cone_oracle(path: PathPair, w: Window):
    """
    Direct quadratic evaluation of cone entrance times and maximal cone intervals, used to check the sweeps.

    :return: (EntranceMap, list of ConeInterval sorted by t)
    """
    w = path.check_window(w)
    if len(w) > MAX_ORACLE_LENGTH:
        raise SizeError(f"oracle window of {len(w)} indices exceeds {MAX_ORACLE_LENGTH}")
    L, R = path.L, path.R
    v = np.empty(len(w), dtype=np.int64)
    prev_l = np.empty(len(w), dtype=np.int64)
    prev_r = np.empty(len(w), dtype=np.int64)
    for t in range(w.a, w.b + 1):
        s = t
        while s - 1 >= w.a and L[s - 1] >= L[t] and R[s - 1] >= R[t]:
            s -= 1
        if s == w.a and t > w.a and w.a > 0 and L[w.a - 1] >= L[t] and R[w.a - 1] >= R[t]:
            s = SENTINEL
        v[t - w.a] = s
        below_l = np.flatnonzero(L[w.a:t] < L[t])
        below_r = np.flatnonzero(R[w.a:t] < R[t])
        prev_l[t - w.a] = below_l[-1] + w.a if below_l.size else w.a - 1
        prev_r[t - w.a] = below_r[-1] + w.a if below_r.size else w.a - 1
    entrance = EntranceMap(window=w, v=v, prev_L=prev_l, prev_R=prev_r)

    candidates = [(int(v[t - w.a]), t) for t in range(w.a, w.b + 1) if w.a <= v[t - w.a] < t]
    starts = np.array([c[0] for c in candidates], dtype=np.int64)
    ends = np.array([c[1] for c in candidates], dtype=np.int64)
    intervals = []
    for start, end in candidates:
        # every candidate contains itself
        if np.count_nonzero((starts <= start) & (ends >= end)) > 1:
            continue
        dl = float(L[end] - L[start])
        dr = float(R[end] - R[start])
        if dl == 0 and dr == 0:
            side = AMBIGUOUS
        elif dr == 0:
            side = LEFT
        elif dl == 0:
            side = RIGHT
        else:
            l_binding = prev_l[end - w.a] + 1 == start
            r_binding = prev_r[end - w.a] + 1 == start
            side = LEFT if r_binding and not l_binding else RIGHT if l_binding and not r_binding else AMBIGUOUS
        intervals.append(ConeInterval(v=start, t=end, side=side, jump=(dl, dr)))
    return entrance, intervals
