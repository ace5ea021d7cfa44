"""Constructive solutions of the phase-space Schrodinger equations.

Two conventions coexist and are never mixed:

* PLAIN: psi(q,p) = e^{-iqp/2 hbar} integral dy g(y) phi(q+y) e^{-ipy/hbar}.
  The weight g is arbitrary nonzero; unitarity of the induced kernel needs
  integral |g|^2 dy = 1.

* S_FAMILY: phase-space variables carry the factor-two rescaling under
  which the position/momentum operators read q + (1-s)(i hbar/2) d_p and
  p - (1+s)(i hbar/2) d_q.  The general solution is

  psi_s(q,p) = e^{-2ipq/(hbar(s+1))} integral dy e^{-ipy/hbar}
               g_s(y) phi(2q/(s+1) + (1-s)y/2),

  with unitarity target integral |g_s|^2 dy = 2/|1+s|.

Each choice of the weight gives a different solution of the same one-sided
eigen-equation: the equation alone has infinitely many solutions.  The
conjugate choice g_s(y) = phi*(-(s+1)y/2) reproduces 2*pi*hbar times the
s-ordered Wigner function, the unique solution of the two-sided pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigError
from .grid import (
    ComplexField2D,
    Grid1D,
    PhaseSpaceGrid,
    _pft_forward,
    check_boundary_decay,
    eval_trig,
    eval_trig_affine,
)
from .states import PositionWavefunction


class Convention(Enum):
    """Which variable scaling a phase-space wavefunction uses."""

    PLAIN = "plain"
    S_FAMILY = "s_family"


@dataclass
class GFunction:
    """Sampled weight g(y) entering the general solutions."""

    ygrid: Grid1D
    values: np.ndarray
    target_s: float | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.ygrid.n,):
            raise ConfigError("g samples do not match the y grid")
        if not np.all(np.isfinite(self.values)):
            raise ConfigError("g contains non-finite entries")
        if self.norm_squared == 0.0:
            raise ConfigError("g must be nonzero")

    @property
    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2) * self.ygrid.step)


@dataclass
class PhaseSpaceWavefunction:
    """A phase-space field plus the convention tag it was built in."""

    field: ComplexField2D
    convention: Convention

    @property
    def grid(self) -> PhaseSpaceGrid:
        return self.field.grid

    @property
    def values(self) -> np.ndarray:
        return self.field.values


def ensure_same_convention(a: PhaseSpaceWavefunction, b: PhaseSpaceWavefunction) -> None:
    if a.convention is not b.convention:
        raise ConfigError(
            f"cannot mix phase-space conventions {a.convention.value!r} "
            f"and {b.convention.value!r}"
        )


def phase_inner(a: PhaseSpaceWavefunction, b: PhaseSpaceWavefunction) -> complex:
    """<a|b> with the dGamma = dq dp / (2 pi hbar) measure."""
    ensure_same_convention(a, b)
    if a.grid != b.grid:
        raise ConfigError("phase-space wavefunctions live on different grids")
    total = np.vdot(a.values, b.values) * a.grid.dqdp
    return complex(total / (2.0 * np.pi * a.grid.hbar))


def _require_same_lattice(g: GFunction, ygrid: Grid1D) -> None:
    if (g.ygrid.n != ygrid.n or abs(g.ygrid.step - ygrid.step) > 1e-12 * ygrid.step
            or abs(g.ygrid.min - ygrid.min) > 1e-9 * ygrid.step):
        raise ConfigError(
            "g is sampled on a different y grid than the transform requires; "
            f"need n={ygrid.n}, step={ygrid.step:.6g}, min={ygrid.min:.6g}"
        )


def solve_plain(phi: PositionWavefunction, g: GFunction,
                grid: PhaseSpaceGrid) -> PhaseSpaceWavefunction:
    """General solution in the PLAIN convention for an arbitrary weight g.

    Computed per q-row: shift phi, multiply by g, partial Fourier in y.
    The shifted argument q + y lands exactly on the q lattice, so no
    interpolation is involved; samples beyond the grid are zero under the
    padding policy (boundary decay of phi is checked).
    """
    ygrid = grid.ygrid
    _require_same_lattice(g, ygrid)
    if phi.grid != grid.qgrid:
        raise ConfigError("phi must be sampled on the q grid of the output")
    check_boundary_decay(phi.values, what="wavefunction samples")

    n = grid.n
    # q_i + y_j = qmin + (i + j - n/2) dq: pure index arithmetic with zero fill
    padded = np.zeros(3 * n, dtype=complex)
    padded[n:2 * n] = phi.values
    idx = np.arange(n)[:, None] + np.arange(n)[None, :] - n // 2 + n
    chi = g.values[None, :] * padded[idx]
    f = _pft_forward(chi, ygrid, grid.pgrid, grid.hbar, sign=-1, axis=1)
    qp = grid.q_mesh() * grid.p_mesh()
    f = np.exp(-0.5j * qp / grid.hbar) * f
    return PhaseSpaceWavefunction(ComplexField2D(grid, f), Convention.PLAIN)


def solve_s_family(phi: PositionWavefunction, g_s: GFunction, s: float,
                   grid: PhaseSpaceGrid) -> PhaseSpaceWavefunction:
    """General solution of the s-family equation for an arbitrary weight g_s.

    phi is evaluated at the rescaled argument 2q/(s+1) + (1-s)y/2 by
    band-limited interpolation (the affine lattice makes this a single
    matrix product).  s = 1 uses the closed form
    psi = e^{-ipq/hbar} g~(p) phi(q); s = -1 has no representation on this
    side of phase space and is rejected.
    """
    if s == -1.0:
        raise ConfigError(
            "s = -1 is singular in this convention; the construction would "
            "have to start from the momentum representation instead"
        )
    ygrid = grid.ygrid
    _require_same_lattice(g_s, ygrid)
    check_boundary_decay(phi.values, what="wavefunction samples")
    hbar = grid.hbar
    q = grid.qgrid.coords
    p = grid.pgrid.coords

    if s == 1.0:
        g_tilde = _pft_forward(g_s.values, ygrid, grid.pgrid, hbar, sign=-1, axis=0)
        phi_q = eval_trig(phi.values, phi.grid, q)
        vals = np.exp(-1j * np.outer(q, p) / hbar) * np.outer(phi_q, g_tilde)
        return PhaseSpaceWavefunction(ComplexField2D(grid, vals), Convention.S_FAMILY)

    y = ygrid.coords
    phi_xi = eval_trig_affine(phi.values, phi.grid,
                              2.0 * q / (s + 1.0), 0.5 * (1.0 - s) * y)
    chi = g_s.values[None, :] * phi_xi
    f = _pft_forward(chi, ygrid, grid.pgrid, hbar, sign=-1, axis=1)
    f = np.exp(-2j * np.outer(q, p) / (hbar * (s + 1.0))) * f
    return PhaseSpaceWavefunction(ComplexField2D(grid, f), Convention.S_FAMILY)


def wigner_conjugate_g(phi: PositionWavefunction, s: float, ygrid: Grid1D) -> GFunction:
    """The conjugate weight g_s(y) = phi*(-(s+1) y / 2).

    This is the unique choice for which the one-sided solution also solves
    the right eigen-equation; its norm satisfies
    integral |g_s|^2 dy = (2/|1+s|) ||phi||^2.
    """
    if s == -1.0:
        raise ConfigError("s = -1 gives the zero scaling; no conjugate weight exists")
    pts = -0.5 * (s + 1.0) * ygrid.coords
    vals = np.conj(eval_trig(phi.values, phi.grid, pts))
    return GFunction(ygrid, vals, target_s=s)


def gaussian_mixture_g(ygrid: Grid1D, seed: int, terms: int = 3,
                       target_norm: float | None = None) -> GFunction:
    """Seeded random weight: a small mixture of displaced complex Gaussians.

    Used by the uniqueness suite; the seed is recorded by callers so runs
    are reproducible.
    """
    rng = np.random.default_rng(seed)
    y = ygrid.coords
    vals = np.zeros(ygrid.n, dtype=complex)
    for _ in range(terms):
        c = rng.normal() + 1j * rng.normal()
        mu = rng.uniform(-1.5, 1.5)
        sigma = rng.uniform(0.7, 1.5)
        vals += c * np.exp(-((y - mu) ** 2) / (2.0 * sigma ** 2))
    g = GFunction(ygrid, vals)
    if target_norm is not None:
        vals = vals * np.sqrt(target_norm / g.norm_squared)
        g = GFunction(ygrid, vals)
    return g
