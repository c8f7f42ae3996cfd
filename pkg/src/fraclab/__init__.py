"""fraclab: a numerical laboratory for fractional-order operators.

Modules
-------
core              grids, sampled functions, DFT, Gamma, power-law fits
symbols           multiplier symbols, kernels, normalization constant
operators         multiplier vs principal-value application, cross-validation
halfspace         order reducers, model Dirichlet solver, traces
dirichlet_domain  weighted Galerkin realization on (-1, 1), eigenpairs,
                  boundary-regularity probes, identity checks
heat              fractional heat flow and space-time regularity probes
levy_mc           killed/free stable-process Monte Carlo oracles
cli               batch experiment runner
"""
from .core import (FractionalOrder, PowerFit, SampledFunction, SpectralFunction,
                   UniformGrid1D, dft_forward, dft_inverse, fit_power_law,
                   gamma_fn)
from .symbols import (KernelSpec, SymbolKind, SymbolSpec, bessel,
                      closed_form_normalization, estimate_normalization,
                      eval_symbol, minus_reducer, plus_reducer, riesz)
from .operators import (CrossValidation, PVResult, SpectralConfig,
                        apply_multiplier, apply_pv_integral, cross_validate,
                        pv_reference_quadrature)
from .halfspace import (HalfLineFunction, ModelSolution, SupportSide,
                        TraceValues, TransmissionDecomposition,
                        boundary_exponent, decompose_transmission,
                        forward_bessel, halfline_grid, solve_model_dirichlet,
                        support_leakage, weighted_trace, xi_apply,
                        xi_minus_truncated, xi_plus_truncated)
from .dirichlet_domain import (DirichletSystem, EigenPair, GreensReport,
                               HolderCapReport, IbpReport, QuadConfig,
                               RegularityReport, StationarySolution,
                               WeightedBasis, assemble, assemble_via_form,
                               boundary_regularity_probe, eigen_solve,
                               greens_reduced_check, holder_cap_detector,
                               ibp_identity_check, mass_matrix,
                               solve_stationary)
from .heat import (CapDemoReport, HeatConfig, HeatScheme, HeatTrajectory,
                   TimeRegularityReport, boundary_exponent_in_time, evolve,
                   semigroup_gap, smoothness_cap_demo, time_regularity_probe)
from .levy_mc import (MCEstimate, StableConfig, feynman_kac_free,
                      feynman_kac_killed, feynman_kac_killed_extrapolated,
                      principal_eigenvalue_extrapolated,
                      principal_eigenvalue_mc, richardson_pair,
                      sample_increment, survival_curve)

__version__ = "0.1.0"
