from src.exponents.constants import Constants, constants, kpz_upper, alpha_gamma_form, alpha_kappa_form
from src.exponents.regression import (RegressionFit, fit_loglog, bootstrap_slope, estimate_dimension,
                                      estimate_pooled_dimension, pooled_dimension_fit, dimension_scales, tail_slope,
                                      tail_cutoff, bootstrap_tail_slope, pooled_tail_fit, probability_fit)
from src.exponents.montecarlo import mc_probability_scaling, event_indicators, run_trials
from src.exponents.report import ClaimResult, VerificationReport, write_report, read_report, validate_report
