"""Oscillator eigenstates, coherent states, density matrices.

Hermite functions are built with the normalised three-term recurrence (the
functions themselves, never the bare polynomials) so they stay finite up to
n = 64.  Density matrices are stored as sampled kernels <q'|rho|q''> with
the dq measure convention: trace = sum(diag) * dq.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, SupportError
from .grid import Grid1D, _pft_forward, check_boundary_decay, spectral_derivative

MAX_LEVEL = 64


@dataclass(frozen=True)
class OscillatorUnits:
    """Mass, frequency and hbar, with the derived length scale lambda."""

    mass: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("mass", "omega", "hbar"):
            v = getattr(self, name)
            if not (v > 0 and np.isfinite(v)):
                raise ConfigError(f"{name} must be positive, got {v}")

    @property
    def lam(self) -> float:
        return np.sqrt(self.hbar / (self.mass * self.omega))

    def energy(self, n: int) -> float:
        return self.hbar * self.omega * (n + 0.5)


@dataclass
class PositionWavefunction:
    """Complex samples of a wavefunction on a uniform 1-D grid.

    energy carries the eigen-energy when the state is an eigenstate, so
    residual checks never have to recompute it.
    """

    grid: Grid1D
    values: np.ndarray
    energy: float | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.n,):
            raise ConfigError("wavefunction samples do not match the grid")
        if not np.all(np.isfinite(self.values)):
            raise ConfigError("wavefunction contains non-finite entries")

    @classmethod
    def from_samples(cls, grid: Grid1D, values, normalize: bool = True,
                     energy: float | None = None) -> "PositionWavefunction":
        values = np.asarray(values, dtype=complex)
        if normalize:
            norm = np.sqrt(np.sum(np.abs(values) ** 2) * grid.step)
            if norm == 0:
                raise ConfigError("cannot normalize the zero function")
            values = values / norm
        return cls(grid, values, energy)

    @property
    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.grid.step))

    def overlap(self, other: "PositionWavefunction") -> complex:
        if other.grid != self.grid:
            raise ConfigError("wavefunctions live on different grids")
        return complex(np.vdot(self.values, other.values) * self.grid.step)


@dataclass
class DensityMatrix:
    """Sampled kernel <q'|rho|q''>; Hermitian, unit trace, PSD."""

    grid: Grid1D
    rho: np.ndarray

    def __post_init__(self):
        self.rho = np.asarray(self.rho, dtype=complex)
        n = self.grid.n
        if self.rho.shape != (n, n):
            raise ConfigError("density matrix shape does not match the grid")
        if not np.all(np.isfinite(self.rho)):
            raise ConfigError("density matrix contains non-finite entries")
        herm = np.max(np.abs(self.rho - self.rho.conj().T))
        if herm > 1e-12 * max(1.0, np.max(np.abs(self.rho))):
            raise ConfigError(f"density matrix is not Hermitian (deviation {herm:.3e})")
        tr = self.trace
        if abs(tr - 1.0) > 1e-8:
            raise ConfigError(f"density matrix trace is {tr:.10f}, expected 1")
        evals = np.linalg.eigvalsh(self.rho)
        if evals.min() * self.grid.step < -1e-8:
            raise ConfigError(
                f"density matrix is not positive semidefinite "
                f"(lowest eigenvalue {evals.min() * self.grid.step:.3e})"
            )

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.rho)) * self.grid.step)

    @property
    def purity(self) -> float:
        """Tr rho^2 with the dq measure folded in."""
        return float(np.real(np.sum(self.rho * self.rho.T)) * self.grid.step ** 2)

    def diagonal(self) -> np.ndarray:
        return np.real(np.diag(self.rho)).copy()


def laguerre(n: int, x):
    """Laguerre polynomial L_n(x) by the stable three-term recurrence.

    (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1};  n is capped at 64.
    """
    if n < 0 or int(n) != n:
        raise ConfigError(f"order must be a non-negative integer, got {n}")
    if n > MAX_LEVEL:
        raise ConfigError(f"Laguerre order {n} exceeds the stability bound {MAX_LEVEL}")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def hermite_eigenstate(n: int, units: OscillatorUnits, grid: Grid1D) -> PositionWavefunction:
    """Normalised oscillator eigenstate phi_n sampled on the grid.

    Uses the recurrence on the normalised Hermite functions h_k directly:
    h_k = sqrt(2/k) u h_{k-1} - sqrt((k-1)/k) h_{k-2}, u = q/lambda.
    Refuses grids that cannot contain the state (the classical turning
    point plus margin), since normalisation would silently fail.
    """
    if n < 0 or int(n) != n:
        raise ConfigError(f"level must be a non-negative integer, got {n}")
    if n > MAX_LEVEL:
        raise ConfigError(f"level {n} exceeds the stability bound {MAX_LEVEL}")
    lam = units.lam
    halfwidth = min(abs(grid.min), abs(grid.max))
    required = lam * 2.0 * np.sqrt(2 * n + 1)
    if halfwidth < required:
        raise SupportError(
            f"grid halfwidth {halfwidth:.3f} too small for level {n}: "
            f"need at least {required:.3f} (2*lambda*sqrt(2n+1))"
        )
    u = grid.coords / lam
    h_prev = np.pi ** -0.25 * np.exp(-0.5 * u ** 2)
    if n == 0:
        values = h_prev
    else:
        h_cur = np.sqrt(2.0) * u * h_prev
        for k in range(2, n + 1):
            h_prev, h_cur = h_cur, np.sqrt(2.0 / k) * u * h_cur - np.sqrt((k - 1) / k) * h_prev
        values = h_cur
    values = values / np.sqrt(lam)
    return PositionWavefunction(grid, values, energy=units.energy(n))


def gamma_point(q: float, p: float, units: OscillatorUnits) -> complex:
    """Map a phase-space point to Gamma = (q/lambda + i lambda p/hbar)/sqrt(2)."""
    lam = units.lam
    return (q / lam + 1j * lam * p / units.hbar) / np.sqrt(2.0)


def gamma_to_qp(gamma: complex, units: OscillatorUnits) -> tuple[float, float]:
    lam = units.lam
    return (np.sqrt(2.0) * lam * gamma.real,
            np.sqrt(2.0) * units.hbar * gamma.imag / lam)


def coherent_wavefunction(gamma: complex, units: OscillatorUnits,
                          grid: Grid1D) -> PositionWavefunction:
    """Samples of <q'|Gamma>, the displaced minimum-uncertainty Gaussian.

    <q'|Gamma> = (lambda^2 pi)^{-1/4}
                 exp{-(q'-q)^2 / 2 lambda^2 + i p (q'-q) / hbar}
    with (q, p) recovered from Gamma.
    """
    q0, p0 = gamma_to_qp(complex(gamma), units)
    lam = units.lam
    halfwidth = min(abs(grid.min), abs(grid.max))
    if abs(q0) + 6.0 * lam > halfwidth:
        raise SupportError(
            f"coherent state centred at q = {q0:.3f} is not supported on a "
            f"grid of halfwidth {halfwidth:.3f}"
        )
    dq = grid.coords - q0
    values = (lam ** 2 * np.pi) ** -0.25 * np.exp(
        -dq ** 2 / (2.0 * lam ** 2) + 1j * p0 * dq / units.hbar
    )
    return PositionWavefunction(grid, values)


def density_from_mixture(components) -> DensityMatrix:
    """rho = sum_k w_k |phi_k><phi_k| from (weight, wavefunction) pairs."""
    components = list(components)
    if not components:
        raise ConfigError("mixture needs at least one component")
    weights = np.array([w for w, _ in components], dtype=float)
    if np.any(weights < 0):
        raise ConfigError("mixture weights must be non-negative")
    if abs(weights.sum() - 1.0) > 1e-10:
        raise ConfigError(f"mixture weights sum to {weights.sum():.12f}, expected 1")
    grid = components[0][1].grid
    rho = np.zeros((grid.n, grid.n), dtype=complex)
    for w, phi in components:
        if phi.grid != grid:
            raise ConfigError("mixture components live on different grids")
        rho += w * np.outer(phi.values, phi.values.conj())
    return DensityMatrix(grid, rho)


def momentum_representation(phi: PositionWavefunction, hbar: float = 1.0) -> PositionWavefunction:
    """phi~(p) = (2 pi hbar)^{-1/2} integral phi(q) exp(-i p q / hbar) dq.

    Returned on the conjugate grid of phi; the discrete transform is
    exactly unitary, so the norm is preserved to rounding.
    """
    pgrid = phi.grid.dual(hbar)
    vals = _pft_forward(phi.values, phi.grid, pgrid, hbar, sign=-1, axis=0)
    vals = vals / np.sqrt(2.0 * np.pi * hbar)
    return PositionWavefunction(pgrid, vals, energy=phi.energy)


def schrodinger_residual(phi: PositionWavefunction, potential: np.ndarray,
                         energy: float, units: OscillatorUnits) -> float:
    """Relative L2 residual of (-hbar^2/2m) phi'' + V phi - E phi.

    The second derivative is spectral, so the state must decay inside the
    grid (checked).
    """
    check_boundary_decay(phi.values, what="wavefunction samples")
    d2 = spectral_derivative(phi.values, phi.grid, order=2, axis=0)
    h_phi = -(units.hbar ** 2) / (2.0 * units.mass) * d2 + potential * phi.values
    num = np.linalg.norm(h_phi - energy * phi.values)
    den = np.linalg.norm(phi.values)
    return float(num / den)
