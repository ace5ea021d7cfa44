"""Quasi-distributions and the operator <-> symbol transforms.

The central object is the one-parameter family of distributions

    W_s(q,p) = (1/2 pi hbar) integral dy e^{i p y / hbar}
               < q - (1-s) y/2 | rho | q + (1+s) y/2 >,

real symmetric-ordered at s = 0 (the Wigner function), generally complex
otherwise, with the s = 1 endpoint giving the Kirkwood-Rihaczek function.
All members are normalised and produce the exact position and momentum
marginals; only the symmetric member is real.

Operators and symbols convert both ways through the same skewed-diagonal
machinery.  On the grid, the skew turns into one exact fractional shift per
matrix diagonal (the diagonals are treated periodically, which is the
natural pseudospectral semantic), so operator_to_symbol followed by
symbol_to_operator is an identity to rounding by construction.

Convention bookkeeping: density-like sources carry the 1/(2 pi hbar)
prefactor, observable symbols do not; the `density` flag keeps the two from
being double counted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AliasingError, ConfigError
from .grid import (
    ComplexField2D,
    Grid1D,
    PhaseSpaceGrid,
    _pft_forward,
    _pft_inverse,
    check_boundary_decay,
    eval_trig_affine,
    fractional_shift,
)
from .kernels import KernelSpec, kernel_transform
from .solutions import Convention, PhaseSpaceWavefunction
from .states import DensityMatrix, OscillatorUnits, PositionWavefunction

TWO_PI = 2.0 * np.pi

NYQUIST_ENERGY_TOL = 1e-8


@dataclass
class QuasiDistribution:
    """A member of the s-ordered family, with provenance and diagnostics."""

    field: ComplexField2D
    s: float
    source: str  # "pure" or "mixed"

    def __post_init__(self):
        if self.source not in ("pure", "mixed"):
            raise ConfigError(f"source must be 'pure' or 'mixed', got {self.source!r}")

    @property
    def grid(self) -> PhaseSpaceGrid:
        return self.field.grid

    @property
    def values(self) -> np.ndarray:
        return self.field.values

    @property
    def normalization(self) -> float:
        return float(np.real(self.values.sum() * self.grid.dqdp))

    def real_values(self, tol: float = 1e-10) -> np.ndarray:
        """The real field at s = 0; raises if the imaginary part survives."""
        peak = np.max(np.abs(self.values))
        imag = np.max(np.abs(self.values.imag))
        if self.s == 0.0 and peak > 0 and imag > tol * max(1.0, peak):
            raise ConfigError(f"s = 0 field has imaginary residue {imag:.3e}")
        return np.real(self.values).copy()

    def validate(self, tol: float = 1e-6) -> None:
        err = abs(self.normalization - 1.0)
        if err > tol:
            raise ConfigError(
                f"quasi-distribution integrates to {self.normalization:.8f}, "
                f"off by {err:.3e}"
            )


@dataclass
class OperatorMatrix:
    """Sampled kernel <q'|F|q''> of an operator, dq measure convention."""

    grid: Grid1D
    matrix: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        n = self.grid.n
        if self.matrix.shape != (n, n):
            raise ConfigError("operator matrix shape does not match the grid")
        if not np.all(np.isfinite(self.matrix)):
            raise ConfigError("operator matrix contains non-finite entries")
        if self.hermitian:
            dev = np.max(np.abs(self.matrix - self.matrix.conj().T))
            if dev > 1e-10 * max(1.0, np.max(np.abs(self.matrix))):
                raise ConfigError(f"operator flagged Hermitian deviates by {dev:.3e}")


def identity_operator(grid: Grid1D) -> OperatorMatrix:
    return OperatorMatrix(grid, np.eye(grid.n) / grid.step, hermitian=True)


def position_operator(grid: Grid1D) -> OperatorMatrix:
    return OperatorMatrix(grid, np.diag(grid.coords) / grid.step, hermitian=True)


# ---------------------------------------------------------------------------
# the skewed-diagonal engine
# ---------------------------------------------------------------------------

def _diag_offsets(n: int) -> np.ndarray:
    """Integer diagonal offsets matching the y grid order y_k = (k - n/2) dq."""
    return np.arange(n) - n // 2


def _matrix_to_skewed(matrix: np.ndarray, qgrid: Grid1D, s: float) -> np.ndarray:
    """G(q_i, y_k) = F(q - (1-s)y/2, q + (1+s)y/2) via per-diagonal shifts.

    The k-th column collects the periodic diagonal F[i, i + m_k] and shifts
    it by -(1-s) y_k / 2 with the band-limited interpolant.
    """
    n = qgrid.n
    out = np.empty((n, n), dtype=complex)
    rows = np.arange(n)
    for k, m in enumerate(_diag_offsets(n)):
        diag = matrix[rows, (rows + m) % n]
        delta = -0.5 * (1.0 - s) * m * qgrid.step
        if m == 0 or delta == 0.0:
            out[:, k] = diag
        else:
            out[:, k] = fractional_shift(diag, qgrid, delta)
    return out


def _skewed_to_matrix(skewed: np.ndarray, qgrid: Grid1D, s: float) -> np.ndarray:
    """Exact inverse of :func:`_matrix_to_skewed`."""
    n = qgrid.n
    out = np.empty((n, n), dtype=complex)
    rows = np.arange(n)
    for k, m in enumerate(_diag_offsets(n)):
        delta = 0.5 * (1.0 - s) * m * qgrid.step
        if m == 0 or delta == 0.0:
            diag = skewed[:, k]
        else:
            diag = fractional_shift(skewed[:, k], qgrid, delta)
        out[rows, (rows + m) % n] = diag
    return out


def operator_to_symbol(op: OperatorMatrix, s: float, grid: PhaseSpaceGrid,
                       density: bool = False) -> ComplexField2D:
    """f_s(q,p) = integral dy e^{i p y/hbar} <q-(1-s)y/2 | F | q+(1+s)y/2>.

    With density=True the result carries the extra 1/(2 pi hbar), i.e. it
    is 2 pi hbar W_s divided down to the distribution itself.
    """
    if op.grid != grid.qgrid:
        raise ConfigError("operator grid does not match the phase-space grid")
    skewed = _matrix_to_skewed(op.matrix, grid.qgrid, s)
    vals = _pft_forward(skewed, grid.ygrid, grid.pgrid, grid.hbar, sign=+1, axis=1)
    if density:
        vals = vals / (TWO_PI * grid.hbar)
    return ComplexField2D(grid, vals)


def symbol_to_operator(f: ComplexField2D, s: float,
                       density: bool = False) -> OperatorMatrix:
    """Inverse of :func:`operator_to_symbol` on the same grid.

    Refuses symbols whose y-representation keeps non-negligible energy in
    the extreme-|y| row (aliasing: the grid cannot represent the operator).
    """
    grid = f.grid
    vals = f.values * (TWO_PI * grid.hbar) if density else f.values
    skewed = _pft_inverse(vals, grid.ygrid, grid.pgrid, grid.hbar, sign=+1, axis=1)
    total = np.sum(np.abs(skewed) ** 2)
    if total > 0:
        nyquist = np.sum(np.abs(skewed[:, 0]) ** 2)
        if nyquist / total > NYQUIST_ENERGY_TOL:
            raise AliasingError(
                "symbol has spectral weight at the edge of the y range "
                f"(fraction {nyquist / total:.3e}); it cannot be quantised "
                "on this grid without aliasing"
            )
    matrix = _skewed_to_matrix(skewed, grid.qgrid, s)
    return OperatorMatrix(grid.qgrid, matrix)


# ---------------------------------------------------------------------------
# distributions
# ---------------------------------------------------------------------------

def wigner_s_from_density(rho: DensityMatrix, s: float,
                          grid: PhaseSpaceGrid) -> QuasiDistribution:
    """The s-ordered distribution of a (possibly mixed) state."""
    if rho.grid != grid.qgrid:
        raise ConfigError("density matrix grid does not match the phase-space grid")
    check_boundary_decay(rho.rho, what="density matrix entries")
    op = OperatorMatrix(grid.qgrid, rho.rho, hermitian=True)
    field = operator_to_symbol(op, s, grid, density=True)
    source = "pure" if abs(rho.purity - 1.0) < 1e-6 else "mixed"
    return QuasiDistribution(field, s, source)


def psi_s_pure(phi: PositionWavefunction, s: float,
               grid: PhaseSpaceGrid) -> PhaseSpaceWavefunction:
    """The unique two-sided solution for a pure state:

    psi_s(q,p) = integral dy e^{-i p y/hbar}
                 phi*(q - (s+1)y/2) phi(q + (1-s)y/2),

    equal to 2 pi hbar W_s.  Computed by band-limited evaluation of the two
    shifted factors (a deliberately different code path from the
    density-matrix route, so the two can cross-check each other).
    """
    if phi.grid != grid.qgrid:
        raise ConfigError("wavefunction grid does not match the phase-space grid")
    check_boundary_decay(phi.values, what="wavefunction samples")
    q = grid.qgrid.coords
    y = grid.ygrid.coords
    left = np.conj(eval_trig_affine(phi.values, phi.grid, q, -0.5 * (s + 1.0) * y))
    right = eval_trig_affine(phi.values, phi.grid, q, 0.5 * (1.0 - s) * y)
    chi = left * right
    vals = _pft_forward(chi, grid.ygrid, grid.pgrid, grid.hbar, sign=-1, axis=1)
    return PhaseSpaceWavefunction(ComplexField2D(grid, vals), Convention.S_FAMILY)


def wigner_from_pure(phi: PositionWavefunction,
                     grid: PhaseSpaceGrid) -> QuasiDistribution:
    """The Wigner function of a pure state, real to rounding."""
    psi = psi_s_pure(phi, 0.0, grid)
    vals = psi.values / (TWO_PI * grid.hbar)
    dist = QuasiDistribution(ComplexField2D(grid, vals), 0.0, "pure")
    dist.real_values()  # realness is an invariant at s = 0; fail loudly
    return dist


def kirkwood_rihaczek(phi: PositionWavefunction,
                      grid: PhaseSpaceGrid) -> QuasiDistribution:
    """The s = 1 endpoint from its closed form,

    W_1(q,p) = (2 pi hbar)^{-1/2} e^{-i p q / hbar} phi(q) phi~*(p),

    with phi~ the momentum representation.  Useful as an independent check
    of the s-family transform at s = 1.
    """
    from .states import momentum_representation

    if phi.grid != grid.qgrid:
        raise ConfigError("wavefunction grid does not match the phase-space grid")
    hbar = grid.hbar
    phit = momentum_representation(phi, hbar)
    if phit.grid != grid.pgrid:
        raise ConfigError("momentum grid of phi does not match the p grid")
    q = grid.q_mesh()
    p = grid.p_mesh()
    vals = (
        np.exp(-1j * q * p / hbar)
        * phi.values[:, None]
        * np.conj(phit.values)[None, :]
        / np.sqrt(TWO_PI * hbar)
    )
    return QuasiDistribution(ComplexField2D(grid, vals), 1.0, "pure")


def husimi(phi: PositionWavefunction, units: OscillatorUnits,
           grid: PhaseSpaceGrid) -> ComplexField2D:
    """|<Gamma|phi>|^2: non-negative, normalised with the dGamma measure.

    Computed from the coherent-state kernel transform, not by smoothing the
    Wigner function (that identity is exercised in the test suite instead).
    """
    psi = kernel_transform(KernelSpec.coherent_state(grid, units), phi)
    return ComplexField2D(grid, np.abs(psi.values) ** 2 + 0j)


def marginals(dist: QuasiDistribution, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """(P(q), P(p)) by integrating out the conjugate variable.

    Both marginals are real for every s: the imaginary parts integrate
    away, which is checked here rather than assumed.
    """
    vals = dist.values
    grid = dist.grid
    pq = vals.sum(axis=1) * grid.pgrid.step
    pp = vals.sum(axis=0) * grid.qgrid.step
    scale = max(np.max(np.abs(pq)), np.max(np.abs(pp)), 1e-300)
    resid = max(np.max(np.abs(pq.imag)), np.max(np.abs(pp.imag)))
    if resid > tol * scale:
        raise ConfigError(f"marginals kept an imaginary residue of {resid:.3e}")
    return pq.real.copy(), pp.real.copy()


def purity_integral(dist: QuasiDistribution) -> float:
    """2 pi hbar * integral W^2 dq dp; equals Tr rho^2 at s = 0 only."""
    if dist.s != 0.0:
        raise ConfigError(
            "the quadratic purity integral pairs W with itself only at s = 0; "
            f"got s = {dist.s}"
        )
    w = dist.values
    total = np.sum(w * w) * dist.grid.dqdp
    if abs(total.imag) > 1e-10 * max(1.0, abs(total.real)):
        raise ConfigError(f"purity integral kept an imaginary part {total.imag:.3e}")
    return float(TWO_PI * dist.grid.hbar * total.real)


def expectation(dist: QuasiDistribution, op: OperatorMatrix) -> complex:
    """Tr(F rho) = integral W_s f_{-s} dq dp, with f_{-s} the (-s)-symbol of F."""
    if op.grid != dist.grid.qgrid:
        raise ConfigError("operator grid does not match the distribution grid")
    f = operator_to_symbol(op, -dist.s, dist.grid, density=False)
    return complex(np.sum(dist.values * f.values) * dist.grid.dqdp)
