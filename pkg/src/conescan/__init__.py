from src.conescan.cones import (EntranceMap, ConeInterval, ConeIntervalTable, LEFT, RIGHT, AMBIGUOUS, SENTINEL,
                                entrance_times, maximal_cone_intervals, intervals_from_entrance, non_cone_set,
                                covered_mask, bubble_envelope, skip_bubbles)
from src.conescan.covering import CoveringCurve, covering_count, dyadic_grid
from src.conescan.infima import simultaneous_infima, window_argmins, infimum_straddle
from src.conescan.events import cone_gap_event, cone_gap_events, overshoot_probability_bound
from src.conescan.oracle import brute_force_cone_oracle
