"""Trilinear three-mode boson model, biconfluent Heun reduction, and the
resulting family of quasi-exactly solvable Schroedinger potentials."""

__version__ = "0.1.0"

from .fock import (
    FockState,
    SubspaceLabel,
    WeightedState,
    apply_interaction,
    subspace_basis,
    symmetry_eigenvalues,
)
from .hamiltonian import ModeFrequencies, RestrictedHamiltonian, build_hamiltonian
from .spectra import Spectrum, eig_sym
from .heun import (
    Branch,
    BheParams,
    RhoPolynomial,
    bhe_operator_residual,
    bhe_params,
    bhe_standard_residual,
    fock_to_rho_polynomial,
)
from .schroedinger import (
    AuxConstants,
    PotentialSpec,
    ResidualReport,
    WavefunctionSpec,
    epsilon_of,
    eval_potential,
    eval_wavefunction,
    potential_spec,
    schrodinger_residual,
    split_sextic,
    wavefunction_spec,
)
from .fdoracle import FdConfig, contains_eigenvalue, fd_spectrum, suggest_domain

__all__ = [
    "FockState",
    "SubspaceLabel",
    "WeightedState",
    "apply_interaction",
    "subspace_basis",
    "symmetry_eigenvalues",
    "ModeFrequencies",
    "RestrictedHamiltonian",
    "build_hamiltonian",
    "Spectrum",
    "eig_sym",
    "Branch",
    "BheParams",
    "RhoPolynomial",
    "bhe_operator_residual",
    "bhe_params",
    "bhe_standard_residual",
    "fock_to_rho_polynomial",
    "AuxConstants",
    "PotentialSpec",
    "ResidualReport",
    "WavefunctionSpec",
    "epsilon_of",
    "eval_potential",
    "eval_wavefunction",
    "potential_spec",
    "schrodinger_residual",
    "split_sextic",
    "wavefunction_spec",
    "FdConfig",
    "contains_eigenvalue",
    "fd_spectrum",
    "suggest_domain",
]
