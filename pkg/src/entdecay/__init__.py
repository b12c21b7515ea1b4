"""Entanglement decay of few-qubit registers under Pauli noise.

Modules
-------
matcore      complex matrix kernels, Jacobi eigensolver, qubit permutations
states       W, GHZ and four-qubit catalog states, partial trace
lindblad     Pauli noise channels, RK4 master-equation integrator
analytic     closed-form density matrices and tau formulas
concurrence  one-vs-rest concurrence lower bound and oracles
analysis     sweeps, sudden-death search, comparisons, file formats
"""

from .errors import (
    CatalogError,
    EntDecayError,
    NotInCatalog,
    NotPSD,
    NumericalError,
    StepTooLarge,
    UnknownState,
    ValidationError,
)

__version__ = "0.1.0"

__all__ = [
    "CatalogError",
    "EntDecayError",
    "NotInCatalog",
    "NotPSD",
    "NumericalError",
    "StepTooLarge",
    "UnknownState",
    "ValidationError",
    "__version__",
]
