from src.beads.ledger import BeadLedger, bead_ledger, p_function, reconstruct, first_bead_in
from src.beads.chordal import (ChordalProcess, JumpOrdinalClock, chordal_boundary_process, mass_to_jumpcount_reparam,
                               restore_constancy, PROXY_LABEL)
from src.beads.tails import TailSample, bubble_tail_sample, infima_gap_sample
from src.beads.boltzmann import (sample_boltzmann_area, boltzmann_area_pdf, boltzmann_area_cdf, boltzmann_area_law)
