from src.corrpath.cov_spec import CovSpec, build_cov_spec, lattice_step_law
from src.corrpath.path_pair import BROWNIAN, LATTICE, PathPair, Window
from src.corrpath.sampling import (sample_brownian_pair, sample_lattice_pair, sample_pair, empirical_cov,
                                   empirical_correlation, rescale, coarsen_to_lattice, time_reversal, chunk_generator,
                                   trial_generator)
from src.corrpath.path_io import save_path, load_path
