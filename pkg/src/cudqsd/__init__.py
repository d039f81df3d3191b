"""Concatenated unambiguous discrimination of symmetric qudit states.

Optimal unambiguous discrimination (UD) of ``d`` symmetric states, followed by
a minimum-error Fourier measurement on the inconclusive branch (CUD), in closed
form and as a shot-level Monte Carlo simulation.
"""

from .discrimination import (AncillaCoupledUnitary, KrausPair, TheoryReport, ancilla_unitary,
                             apply_kraus, inconclusive_space_dim, kraus_pair, me_outcome_distribution,
                             p_me_inconclusive, project_ancilla, theory_report)
from .montecarlo import (CountsTable, EstimateReport, NoiseModel, branch_distributions, estimate,
                         percentage_errors, run_trials)
from .oracle import brute_force_report
from .qudit import (CoefficientProfile, CoefficientVector, StateVector, build_symmetric_state,
                    coefficients_from_profile, compute_xi_max, fourier_matrix, gram_matrix,
                    gram_overlap, random_coefficients)
from .sweep import (Histogram, SweepGrid, SweepRow, error_histograms, export, load_csv, load_json,
                    r_histogram, run_sweep)

__version__ = "0.1.0"
