"""Finite-temperature Hartree-Fock electron gas with Riesz interactions."""

from ._core import (
    BracketError,
    ConvergenceError,
    NoSpinCurve,
    Potential,
    Solver,
    __version__,
    classify_transition,
    dirac_constant,
    exchange_bound,
    exchange_coefficient,
    fermi_entropy,
    flambda_minimizer,
    free_gas_density,
    haar_su2,
    kinetic_coefficient,
    mu_curve,
    mu_T0,
    nospin_energy_T0,
    phase_diagram,
    polarization_energy,
    rearrangement_gap,
    scan_polarization,
    thomas_fermi_constant,
    verify,
)

__all__ = [
    "BracketError",
    "ConvergenceError",
    "NoSpinCurve",
    "Potential",
    "Solver",
    "__version__",
    "classify_transition",
    "dirac_constant",
    "exchange_bound",
    "exchange_coefficient",
    "fermi_entropy",
    "flambda_minimizer",
    "free_gas_density",
    "haar_su2",
    "kinetic_coefficient",
    "mu_curve",
    "mu_T0",
    "nospin_energy_T0",
    "phase_diagram",
    "polarization_energy",
    "rearrangement_gap",
    "scan_polarization",
    "thomas_fermi_constant",
    "verify",
]
