"""Phase-space representations of quantum mechanics on Fourier grids.

The package computes the s-ordered family of quasi-distributions (Wigner at
s = 0, Kirkwood-Rihaczek at s = 1, with the Husimi function as a squared
kernel transform), the integral-kernel maps from position wavefunctions to
phase-space wavefunctions, the exact star-product application for
Hamiltonians p^2/2m + V(q), and the residual verifiers that separate the
one-sided eigen-equation (infinitely many solutions, one per weight g) from
the two-sided pair (unique solution, the s-Wigner function).
"""

__version__ = "0.1.0"

from .errors import (
    AliasingError,
    ConfigError,
    ConventionError,
    DegreeOverflowError,
    NumericalGuardError,
    SupportError,
)
from .grid import (
    ComplexField2D,
    Grid1D,
    PhaseSpaceGrid,
    integrate_phase,
    interior_mask,
    make_phase_grid,
    partial_fourier_p_to_y,
    partial_fourier_y_to_p,
)
from .states import (
    DensityMatrix,
    OscillatorUnits,
    PositionWavefunction,
    coherent_wavefunction,
    density_from_mixture,
    gamma_point,
    hermite_eigenstate,
    laguerre,
    momentum_representation,
    schrodinger_residual,
)
from .solutions import (
    Convention,
    GFunction,
    PhaseSpaceWavefunction,
    gaussian_mixture_g,
    phase_inner,
    solve_plain,
    solve_s_family,
    wigner_conjugate_g,
)
from .kernels import (
    KernelSpec,
    UnitarityReport,
    build_kernel,
    check_kernel_unitarity,
    g_norm_residual,
    gauge_transform,
    gaussian_g,
    kernel_transform,
    transform_norm,
)
from .quasidist import (
    OperatorMatrix,
    QuasiDistribution,
    expectation,
    husimi,
    identity_operator,
    kirkwood_rihaczek,
    marginals,
    operator_to_symbol,
    position_operator,
    psi_s_pure,
    purity_integral,
    symbol_to_operator,
    wigner_from_pure,
    wigner_s_from_density,
)
from .star import (
    HamiltonianSpec,
    PolySymbol,
    eigen_residuals,
    monomial,
    star_apply_left,
    star_apply_right,
    star_poly,
)

__all__ = [name for name in dir() if not name.startswith("_")]
