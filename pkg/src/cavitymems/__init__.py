"""Two atoms asymmetrically coupled to a resonant single-mode cavity:
closed-form reduced dynamics, entanglement and nonlocality measures, global
maxima over the pulse area, and frontiers over mixedness."""

__version__ = "0.1.0"

from .qcore import (BASIS_INDEX, BASIS_LABELS, SECTOR_LABELS, ConsistencyError,
                    SectorState, check_density, check_hermitian, ginibre_density,
                    haar_unitary, herm_defect, hermitian_eig,
                    hermitian_eigenvalues, partial_trace_field,
                    photon_distribution, purity, trace_distance)
from .dynamics import (CouplingConfig, SectorHamiltonian, bright_dark_states,
                       build_sector_hamiltonian, initial_sector_state,
                       ode_oracle, ode_oracle_path, propagate_grid,
                       propagate_sector, reduced_state_closed_form)
from .measures import (bell_max, bell_max_closed_form, concurrence,
                       concurrence_closed_form, concurrence_x_state,
                       correlation_matrix, linear_entropy, werner_reference,
                       werner_state)
from .analysis import (CHI_INTERIOR_HIGH, CHI_INTERIOR_LOW, GlobalMaxResult,
                       KinkReport, SymmetryReport, TwoExcitationPeak,
                       exchange_symmetry_report, global_max_bell_closed,
                       global_max_bell_numeric, global_max_concurrence_closed,
                       global_max_concurrence_numeric, golden_max, kink_scan,
                       locate_two_excitation_peak, pi_boundary_concurrence)
from .frontier import (DEFAULT_SEED, FrontierCurve, best_concurrence_at_mixedness,
                       coverage_threshold, mbvms_frontier, mems_frontier,
                       mems_frontier_value, mems_state, trajectory_sweep,
                       werner_curve, x_state)

__all__ = [
    "__version__",
    # qcore
    "BASIS_INDEX", "BASIS_LABELS", "SECTOR_LABELS", "ConsistencyError",
    "SectorState", "check_density", "check_hermitian", "ginibre_density",
    "haar_unitary", "herm_defect", "hermitian_eig", "hermitian_eigenvalues",
    "partial_trace_field", "photon_distribution", "purity", "trace_distance",
    # dynamics
    "CouplingConfig", "SectorHamiltonian", "bright_dark_states",
    "build_sector_hamiltonian", "initial_sector_state", "ode_oracle",
    "ode_oracle_path", "propagate_grid", "propagate_sector",
    "reduced_state_closed_form",
    # measures
    "bell_max", "bell_max_closed_form", "concurrence", "concurrence_closed_form",
    "concurrence_x_state", "correlation_matrix", "linear_entropy",
    "werner_reference", "werner_state",
    # analysis
    "CHI_INTERIOR_HIGH", "CHI_INTERIOR_LOW", "GlobalMaxResult", "KinkReport",
    "SymmetryReport", "TwoExcitationPeak", "exchange_symmetry_report",
    "global_max_bell_closed", "global_max_bell_numeric",
    "global_max_concurrence_closed", "global_max_concurrence_numeric",
    "golden_max", "kink_scan", "locate_two_excitation_peak",
    "pi_boundary_concurrence",
    # frontier
    "DEFAULT_SEED", "FrontierCurve", "best_concurrence_at_mixedness",
    "coverage_threshold", "mbvms_frontier", "mems_frontier",
    "mems_frontier_value", "mems_state", "trajectory_sweep", "werner_curve",
    "x_state",
]
