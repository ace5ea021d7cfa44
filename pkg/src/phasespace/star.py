"""The s-ordered star product: exact grid application and polynomial algebra.

For symbols a, b the product is

    a *_s b = a exp{ (i hbar/2) [ (1-s) dq<- dp-> - (1+s) dp<- dq-> ] } b,

equivalently a evaluated at the shifted arguments

    a( q + (1-s)(i hbar/2) d_p ,  p - (1+s)(i hbar/2) d_q )  acting on b.

For Hamiltonians H = p^2/2m + V(q) the left product is applied EXACTLY, not
as a truncated derivative series: in the mixed (q, y) representation
i hbar d_p becomes multiplication by y, so the potential acts as
V(q + (1-s)y/2); the kinetic part needs only p-multiplication and spectral
d_q, done directly in (q, p).  The right product mirrors the shifts:

    f *_s H = H( q - (1+s)(i hbar/2) d_p ,  p + (1-s)(i hbar/2) d_q ) f.

The polynomial engine evaluates the same series exactly (it terminates for
polynomials) and is the independent cross-check for the grid pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ConfigError, DegreeOverflowError, SupportError
from .grid import (
    ComplexField2D,
    Grid1D,
    PhaseSpaceGrid,
    _pft_forward,
    _pft_inverse,
    interior_mask,
    spectral_derivative,
)
from .states import OscillatorUnits

MAX_POLY_DEGREE = 8


# ---------------------------------------------------------------------------
# Hamiltonians
# ---------------------------------------------------------------------------

@dataclass
class HamiltonianSpec:
    """H(q,p) = p^2/2m + V(q) with V sampled and, when available, analytic.

    mass=None drops the kinetic term (potential-only symbols, used e.g. for
    the unit-symbol identity).  A sampled-only V is usable as long as the
    shifted argument stays inside the grid wherever the field has weight;
    it is never extrapolated.
    """

    qgrid: Grid1D
    potential: np.ndarray
    mass: float | None = 1.0
    analytic: object = None  # callable V(x), vectorised

    def __post_init__(self):
        self.potential = np.asarray(self.potential, dtype=float)
        if self.potential.shape != (self.qgrid.n,):
            raise ConfigError("potential samples do not match the grid")
        if not np.all(np.isfinite(self.potential)):
            raise ConfigError("potential contains non-finite samples")
        if self.mass is not None and not (self.mass > 0 and np.isfinite(self.mass)):
            raise ConfigError(f"mass must be positive or None, got {self.mass}")

    @classmethod
    def harmonic(cls, units: OscillatorUnits, qgrid: Grid1D) -> "HamiltonianSpec":
        def v(x):
            return 0.5 * units.mass * units.omega ** 2 * np.asarray(x) ** 2

        return cls(qgrid, v(qgrid.coords), mass=units.mass, analytic=v)

    def symbol(self, grid: PhaseSpaceGrid) -> ComplexField2D:
        """The classical symbol sampled on the phase-space grid."""
        if grid.qgrid != self.qgrid:
            raise ConfigError("phase-space grid does not match the Hamiltonian grid")
        vals = np.broadcast_to(self.potential[:, None], (grid.n, grid.n)).astype(complex)
        if self.mass is not None:
            vals = vals + (grid.p_mesh() ** 2) / (2.0 * self.mass)
        return ComplexField2D(grid, vals)

    def potential_at(self, x: np.ndarray, chi: np.ndarray) -> np.ndarray:
        """V at shifted arguments x, weighted use pattern chi.

        Analytic potentials evaluate directly.  Sampled potentials are
        spline-interpolated inside the grid; outside it the contribution is
        dropped only where chi is negligible, otherwise this errors rather
        than extrapolate.
        """
        if self.analytic is not None:
            return np.asarray(self.analytic(x), dtype=float)
        inside = (x >= self.qgrid.min) & (x <= self.qgrid.max)
        if not np.all(inside):
            peak = np.max(np.abs(chi))
            bad = np.abs(chi[~inside])
            if peak > 0 and bad.size and bad.max() > 1e-12 * peak:
                raise SupportError(
                    "sampled potential requested outside its grid where the "
                    "field still has weight; supply an analytic form or "
                    "enlarge the grid"
                )
        spline = CubicSpline(self.qgrid.coords, self.potential)
        out = np.zeros_like(x)
        out[inside] = spline(x[inside])
        return out


# ---------------------------------------------------------------------------
# exact grid application
# ---------------------------------------------------------------------------

def _as_values(f) -> tuple[np.ndarray, bool]:
    if isinstance(f, ComplexField2D):
        return f.values, True
    return np.asarray(f, dtype=complex), False


def _star_apply(ham: HamiltonianSpec, f, s: float, grid: PhaseSpaceGrid,
                side: str):
    """Shared pipeline for the left and right product with H."""
    if side == "left":
        kin_coeff = -(1.0 + s)   # p - (1+s)(i hbar/2) d_q
        pot_coeff = +(1.0 - s)   # q + (1-s) y/2
    elif side == "right":
        kin_coeff = +(1.0 - s)   # p + (1-s)(i hbar/2) d_q
        pot_coeff = -(1.0 + s)   # q - (1+s) y/2
    else:  # pragma: no cover
        raise ConfigError(f"unknown side {side!r}")

    values, wrapped = _as_values(f)
    if values.shape != (grid.n, grid.n):
        raise ConfigError("field shape does not match the grid")
    if grid.qgrid != ham.qgrid:
        raise ConfigError("Hamiltonian grid does not match the field grid")
    hbar = grid.hbar

    out = np.zeros_like(values)

    if ham.mass is not None:
        p = grid.p_mesh()
        dq1 = spectral_derivative(values, grid.qgrid, order=1, axis=0)
        dq2 = spectral_derivative(values, grid.qgrid, order=2, axis=0)
        c = kin_coeff * 0.5j * hbar
        out += (p ** 2 * values + 2.0 * c * p * dq1 + c ** 2 * dq2) / (2.0 * ham.mass)

    chi = _pft_inverse(values, grid.ygrid, grid.pgrid, hbar, sign=-1, axis=1)
    args = grid.q_mesh() + 0.5 * pot_coeff * grid.y_mesh()
    chi = ham.potential_at(args, chi) * chi
    out += _pft_forward(chi, grid.ygrid, grid.pgrid, hbar, sign=-1, axis=1)

    if wrapped:
        return ComplexField2D(grid, out)
    return out


def star_apply_left(ham: HamiltonianSpec, f, s: float, grid: PhaseSpaceGrid):
    """(H *_s f)(q,p), exact for H = p^2/2m + V(q)."""
    return _star_apply(ham, f, s, grid, "left")


def star_apply_right(ham: HamiltonianSpec, f, s: float, grid: PhaseSpaceGrid):
    """(f *_s H)(q,p) via the sign-mirrored argument shifts."""
    return _star_apply(ham, f, s, grid, "right")


def eigen_residuals(ham: HamiltonianSpec, f, energy: float, s: float,
                    grid: PhaseSpaceGrid,
                    edge_fraction: float = 0.1) -> tuple[float, float]:
    """Relative residuals of the two eigen-equations on the grid interior.

    left  = ||H *_s f - E f|| / ||E f||
    right = ||f *_s H - E f|| / ||E f||

    The outer edge_fraction of each axis is masked: the fields decay there
    and the discrete transforms wrap periodically, so the edge carries no
    information about the equations.
    """
    values, _ = _as_values(f)
    if not np.any(values):
        raise ConfigError("cannot form residuals of the zero field")
    mask = interior_mask(values.shape, edge_fraction)
    target = energy * values
    denom = np.linalg.norm(target[mask])
    if denom == 0:
        raise ConfigError("E*f vanishes on the interior; residuals are undefined")
    left_vals, _ = _as_values(star_apply_left(ham, values, s, grid))
    right_vals, _ = _as_values(star_apply_right(ham, values, s, grid))
    left = np.linalg.norm((left_vals - target)[mask]) / denom
    right = np.linalg.norm((right_vals - target)[mask]) / denom
    return float(left), float(right)


# ---------------------------------------------------------------------------
# polynomial symbols
# ---------------------------------------------------------------------------

@dataclass
class PolySymbol:
    """Sparse polynomial in (q, p): {(i, j): coefficient of q^i p^j}.

    Construction enforces the total-degree cap; star products of capped
    inputs may exceed it (their degree is the sum) and are built unchecked.
    """

    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), c in self.coeffs.items():
            if i < 0 or j < 0 or int(i) != i or int(j) != j:
                raise ConfigError(f"bad monomial exponents ({i}, {j})")
            c = complex(c)
            if c != 0:
                clean[(int(i), int(j))] = c
        self.coeffs = clean

    @classmethod
    def from_dict(cls, coeffs: dict) -> "PolySymbol":
        sym = cls(dict(coeffs))
        if sym.degree > MAX_POLY_DEGREE:
            raise DegreeOverflowError(
                f"total degree {sym.degree} exceeds the cap {MAX_POLY_DEGREE}"
            )
        return sym

    @property
    def degree(self) -> int:
        if not self.coeffs:
            return 0
        return max(i + j for (i, j) in self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolySymbol) and self.coeffs == other.coeffs

    def __add__(self, other: "PolySymbol") -> "PolySymbol":
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0.0) + c
        return PolySymbol(out)

    def __sub__(self, other: "PolySymbol") -> "PolySymbol":
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0.0) - c
        return PolySymbol(out)

    def scale(self, factor: complex) -> "PolySymbol":
        return PolySymbol({k: factor * c for k, c in self.coeffs.items()})

    def diff(self, var: str, order: int = 1) -> "PolySymbol":
        out = self
        for _ in range(order):
            new = {}
            for (i, j), c in out.coeffs.items():
                if var == "q" and i > 0:
                    new[(i - 1, j)] = new.get((i - 1, j), 0.0) + i * c
                elif var == "p" and j > 0:
                    new[(i, j - 1)] = new.get((i, j - 1), 0.0) + j * c
            out = PolySymbol(new)
        return out

    def pointwise(self, other: "PolySymbol") -> "PolySymbol":
        out: dict = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0.0) + c1 * c2
        return PolySymbol(out)

    def sample(self, grid: PhaseSpaceGrid) -> np.ndarray:
        q = grid.q_mesh()
        p = grid.p_mesh()
        out = np.zeros((grid.n, grid.n), dtype=complex)
        for (i, j), c in self.coeffs.items():
            out += c * q ** i * p ** j
        return out


def monomial(i: int, j: int, coeff: complex = 1.0) -> PolySymbol:
    return PolySymbol.from_dict({(i, j): coeff})


def star_poly(a: PolySymbol, b: PolySymbol, s: float, hbar: float = 1.0) -> PolySymbol:
    """Exact a *_s b for polynomial symbols; the series terminates.

    Inputs are capped at total degree 8; the product degree is the sum of
    the input degrees and may exceed the cap.
    """
    for name, sym in (("left", a), ("right", b)):
        if sym.degree > MAX_POLY_DEGREE:
            raise DegreeOverflowError(
                f"{name} operand has degree {sym.degree} > {MAX_POLY_DEGREE}"
            )
    result_sym = PolySymbol({})
    deg_a = a.degree
    for m in range(deg_a + 1):
        for n in range(deg_a + 1 - m):
            da = a.diff("q", m).diff("p", n)
            if not da.coeffs:
                continue
            db = b.diff("p", m).diff("q", n)
            if not db.coeffs:
                continue
            factor = (
                (0.5j * hbar) ** (m + n)
                * (1.0 - s) ** m
                * (-(1.0 + s)) ** n
                / (math.factorial(m) * math.factorial(n))
            )
            result_sym = result_sym + da.pointwise(db).scale(factor)
    return result_sym
