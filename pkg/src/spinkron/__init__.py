"""Spin Hamiltonians from Kronecker products, and their spectral analysis."""

from spinkron._accel import USE_NUMBA, backend_name
from spinkron.hamiltonian_builder import (
    BreitRabiParams,
    CouplingCoefficients,
    TensorParams,
    build_breit_rabi,
    build_general,
    build_tensor,
    tensor_to_coefficients,
)
from spinkron.matrix_core import (
    ComplexMatrix,
    add,
    identity,
    is_hermitian,
    kron,
    matmul,
    scale,
    zeros,
)
from spinkron.oracle_basis import build_breit_rabi_basis
from spinkron.spectral import (
    BlockStructure,
    CharPoly,
    ConvergenceError,
    NotHermitianError,
    Permutation,
    Spectrum,
    block_structure,
    char_poly,
    eigen_hermitian,
    isospectral,
    permutation_conjugate,
)
from spinkron.spin_operators import SpinMatrices, SpinQuantum, spin_matrices
from spinkron.sweep import (
    CrossingEvent,
    SpecError,
    SweepError,
    SweepResult,
    SweepSpec,
    detect_events,
    parse_spec,
    run_sweep,
    write_csv,
)

__version__ = "0.1.0"

__all__ = [
    "USE_NUMBA",
    "backend_name",
    "BreitRabiParams",
    "CouplingCoefficients",
    "TensorParams",
    "build_breit_rabi",
    "build_general",
    "build_tensor",
    "tensor_to_coefficients",
    "ComplexMatrix",
    "add",
    "identity",
    "is_hermitian",
    "kron",
    "matmul",
    "scale",
    "zeros",
    "build_breit_rabi_basis",
    "BlockStructure",
    "CharPoly",
    "ConvergenceError",
    "NotHermitianError",
    "Permutation",
    "Spectrum",
    "block_structure",
    "char_poly",
    "eigen_hermitian",
    "isospectral",
    "permutation_conjugate",
    "SpinMatrices",
    "SpinQuantum",
    "spin_matrices",
    "CrossingEvent",
    "SpecError",
    "SweepError",
    "SweepResult",
    "SweepSpec",
    "detect_events",
    "parse_spec",
    "run_sweep",
    "write_csv",
]
