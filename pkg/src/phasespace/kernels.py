"""Integral kernels mapping position wavefunctions to phase-space ones.

A kernel K(Gamma; q') acts by psi(Gamma) = integral K(Gamma; q') phi(q') dq'.
Unitarity onto the image space requires

    integral conj(K)(Gamma; q') K(Gamma; q'') dGamma = delta(q' - q''),

which on the grid is checked against the discrete delta 1/dq.  The kernel
is only fixed up to a Gamma-dependent phase (gauge freedom), so a spec can
carry an optional gauge field exp(i f(Gamma)).

Variants:

* coherent: K(q,p;q') = <Gamma|q'>, the displaced-Gaussian overlap.
* bargmann: the entire-function kernel, unitary with the Gaussian-weighted
  measure dmu(z) = pi^{-1} exp(-|z|^2) d^2 z.
* general_g (PLAIN convention): K = e^{-ip(q' - q/2)/hbar} g(q' - q),
  unitary iff integral |g|^2 dy = 1.
* s_family (S_FAMILY convention): the one-parameter family, unitary iff
  integral |g_s|^2 dy = 2/|1+s|.  s = 1 degenerates to a diagonal-in-q
  operator with a Fourier factor and is realised operationally, never as a
  sampled array; s = -1 is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError
from .grid import (
    ComplexField2D,
    PhaseSpaceGrid,
    _pft_forward,
    eval_trig,
    integrate_phase,
)
from .solutions import (
    Convention,
    GFunction,
    PhaseSpaceWavefunction,
    solve_plain,
    solve_s_family,
)
from .states import OscillatorUnits, PositionWavefunction

BUILD_KERNEL_MAX_N = 128

_VARIANTS = ("coherent", "bargmann", "general_g", "s_family")


@dataclass(frozen=True)
class KernelSpec:
    """Declarative description of a kernel on a phase-space grid."""

    variant: str
    grid: PhaseSpaceGrid
    units: OscillatorUnits | None = None
    g: GFunction | None = None
    s: float | None = None
    gauge: np.ndarray | None = None  # real f(q,p); kernel gains exp(i f)

    def __post_init__(self):
        if self.variant not in _VARIANTS:
            raise ConfigError(f"unknown kernel variant {self.variant!r}")
        if self.variant in ("coherent", "bargmann") and self.units is None:
            raise ConfigError(f"{self.variant} kernel needs oscillator units")
        if self.variant in ("general_g", "s_family") and self.g is None:
            raise ConfigError(f"{self.variant} kernel needs a g function")
        if self.variant == "s_family":
            if self.s is None:
                raise ConfigError("s_family kernel needs the ordering parameter s")
            if self.s == -1.0:
                raise ConfigError("s = -1 has no kernel on this side of phase space")
        if self.gauge is not None:
            gauge = np.asarray(self.gauge)
            n = self.grid.n
            if gauge.shape != (n, n):
                raise ConfigError("gauge phase must be sampled on the full grid")
            if np.iscomplexobj(gauge) and np.max(np.abs(gauge.imag)) > 0:
                raise ConfigError("gauge phase must be real-valued")

    # -- constructors -------------------------------------------------

    @classmethod
    def coherent_state(cls, grid, units=None) -> "KernelSpec":
        return cls("coherent", grid, units=units or OscillatorUnits(hbar=grid.hbar))

    @classmethod
    def bargmann(cls, grid, units=None) -> "KernelSpec":
        return cls("bargmann", grid, units=units or OscillatorUnits(hbar=grid.hbar))

    @classmethod
    def general_g(cls, grid, g: GFunction) -> "KernelSpec":
        return cls("general_g", grid, g=g)

    @classmethod
    def s_family(cls, grid, g: GFunction, s: float) -> "KernelSpec":
        return cls("s_family", grid, g=g, s=s)

    def with_gauge(self, f_values) -> "KernelSpec":
        return replace(self, gauge=np.asarray(f_values, dtype=float))

    @property
    def convention(self) -> Convention:
        return Convention.S_FAMILY if self.variant == "s_family" else Convention.PLAIN

    # -- declarative plain-text form ----------------------------------

    @classmethod
    def from_config_text(cls, text: str, grid: PhaseSpaceGrid) -> "KernelSpec":
        """Parse 'key = value' lines: variant, s, lambda, gauge.

        variant: coherent | bargmann | general-g | s-family.
        For general-g and s-family the weight defaults to the unit-variance
        Gaussian scaled to the unitarity target of the convention.
        gauge: none, or qp:<coeff> meaning f(q,p) = coeff * q * p / hbar.
        """
        fields: dict[str, str] = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"bad kernel config line: {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            fields[key.lower()] = value
        variant = fields.get("variant", "").replace("-", "_")
        lam = float(fields.get("lambda", "1.0"))
        units = OscillatorUnits(mass=grid.hbar / lam ** 2, omega=1.0, hbar=grid.hbar)
        spec: KernelSpec
        if variant in ("coherent", "bargmann"):
            spec = cls(variant, grid, units=units)
        elif variant == "general_g":
            spec = cls.general_g(grid, gaussian_g(grid, lam=lam, target=1.0))
        elif variant == "s_family":
            if "s" not in fields:
                raise ConfigError("s-family kernel config needs s")
            s = float(fields["s"])
            if s == -1.0:
                raise ConfigError("s = -1 has no kernel on this side of phase space")
            spec = cls.s_family(
                grid, gaussian_g(grid, lam=lam, target=2.0 / abs(1.0 + s)), s
            )
        else:
            raise ConfigError(f"unknown kernel variant {fields.get('variant')!r}")
        gauge = fields.get("gauge", "none")
        if gauge != "none":
            if not gauge.startswith("qp:"):
                raise ConfigError(f"unsupported gauge spec {gauge!r}")
            coeff = float(gauge[3:])
            f = coeff * grid.q_mesh() * grid.p_mesh() / grid.hbar
            spec = spec.with_gauge(f)
        return spec


def gaussian_g(grid: PhaseSpaceGrid, lam: float = 1.0, target: float = 1.0) -> GFunction:
    """The Gaussian weight (pi lam^2)^{-1/4} e^{-y^2/2 lam^2}, rescaled to
    integral |g|^2 dy = target."""
    y = grid.ygrid.coords
    vals = (np.pi * lam ** 2) ** -0.25 * np.exp(-(y ** 2) / (2.0 * lam ** 2))
    g = GFunction(grid.ygrid, vals)
    return GFunction(grid.ygrid, vals * np.sqrt(target / g.norm_squared))


# ---------------------------------------------------------------------------
# sampled kernels and columns
# ---------------------------------------------------------------------------

def _bargmann_z(grid: PhaseSpaceGrid, units: OscillatorUnits) -> np.ndarray:
    lam = units.lam
    return (grid.q_mesh() / lam + 1j * lam * grid.p_mesh() / units.hbar) / np.sqrt(2.0)


def kernel_column(spec: KernelSpec, idx: int) -> np.ndarray:
    """K(q, p; q'_idx) over the full (q, p) grid for one source point."""
    grid = spec.grid
    qp = grid.qgrid.coords[idx]
    q = grid.q_mesh()
    p = grid.p_mesh()
    hbar = grid.hbar
    if spec.variant == "coherent":
        lam = spec.units.lam
        col = (lam ** 2 * np.pi) ** -0.25 * np.exp(
            -((qp - q) ** 2) / (2.0 * lam ** 2) - 1j * p * (qp - q) / hbar
        )
    elif spec.variant == "bargmann":
        lam = spec.units.lam
        z = _bargmann_z(grid, spec.units)
        col = (lam ** 2 * np.pi) ** -0.25 * np.exp(
            -0.5 * z ** 2 - qp ** 2 / (2.0 * lam ** 2) + np.sqrt(2.0) * z * qp / lam
        )
    elif spec.variant == "general_g":
        gval = eval_trig(spec.g.values, spec.g.ygrid, np.atleast_1d(qp - q[:, 0]))
        col = np.exp(-1j * p * (qp - 0.5 * q) / hbar) * gval[:, None]
    elif spec.variant == "s_family":
        s = spec.s
        if s == 1.0:
            raise ConfigError(
                "the s = 1 kernel contains delta(q - q'); it is realised as an "
                "operator in kernel_transform, not as a sampled array"
            )
        arg = 2.0 * qp / (1.0 - s) - 4.0 * q[:, 0] / (1.0 - s ** 2)
        gval = eval_trig(spec.g.values, spec.g.ygrid, arg)
        col = (2.0 / (1.0 - s)) * gval[:, None] * np.exp(
            -2j * p * (qp - q) / ((1.0 - s) * hbar)
        )
    else:  # pragma: no cover
        raise ConfigError(f"unknown kernel variant {spec.variant!r}")
    if spec.gauge is not None:
        col = np.exp(1j * spec.gauge) * col
    return col


def build_kernel(spec: KernelSpec) -> np.ndarray:
    """Materialise the sampled kernel K[q, p, q'].

    This is an O(n^3) array; it is only allowed up to n = 128 and exists for
    direct-quadrature cross-validation.  Use :func:`kernel_transform` for the
    separable fast paths at production sizes.
    """
    n = spec.grid.n
    if n > BUILD_KERNEL_MAX_N:
        raise ConfigError(
            f"refusing to materialise an n^3 kernel at n = {n}; "
            "use kernel_transform, which never builds the full array"
        )
    out = np.empty((n, n, n), dtype=complex)
    for k in range(n):
        out[:, :, k] = kernel_column(spec, k)
    return out


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------

def kernel_transform(spec: KernelSpec, phi: PositionWavefunction) -> PhaseSpaceWavefunction:
    """psi(Gamma) = integral K(Gamma; q') phi(q') dq' by the fast path.

    Every variant reduces to per-row partial Fourier transforms or a small
    number of matrix products; the full n^3 kernel is never built.
    """
    grid = spec.grid
    if phi.grid != grid.qgrid:
        raise ConfigError("wavefunction grid does not match the kernel grid")
    hbar = grid.hbar
    q = grid.qgrid.coords
    p = grid.pgrid.coords
    n = grid.n

    if spec.variant == "coherent":
        lam = spec.units.lam
        # K = A(q, q') e^{-ip(q'-q)/hbar}: row-wise Fourier over q'
        a = (lam ** 2 * np.pi) ** -0.25 * np.exp(
            -((q[None, :] - q[:, None]) ** 2) / (2.0 * lam ** 2)
        )
        rows = _pft_forward(a * phi.values[None, :], grid.qgrid, grid.pgrid,
                            hbar, sign=-1, axis=1)
        vals = np.exp(1j * np.outer(q, p) / hbar) * rows
        psi = PhaseSpaceWavefunction(ComplexField2D(grid, vals), Convention.PLAIN)
    elif spec.variant == "bargmann":
        lam = spec.units.lam
        z = _bargmann_z(grid, spec.units)
        weighted = np.exp(-(q ** 2) / (2.0 * lam ** 2)) * phi.values * grid.qgrid.step
        vals = np.empty((n, n), dtype=complex)
        pref = (lam ** 2 * np.pi) ** -0.25 * np.exp(-0.5 * z ** 2)
        for j in range(n):  # block over p-columns to keep memory at O(n^2)
            expz = np.exp(np.sqrt(2.0) * np.outer(z[:, j], q) / lam)
            vals[:, j] = expz @ weighted
        vals *= pref
        psi = PhaseSpaceWavefunction(ComplexField2D(grid, vals), Convention.PLAIN)
    elif spec.variant == "general_g":
        psi = solve_plain(phi, spec.g, grid)
    elif spec.variant == "s_family":
        psi = solve_s_family(phi, spec.g, spec.s, grid)
    else:  # pragma: no cover
        raise ConfigError(f"unknown kernel variant {spec.variant!r}")

    if spec.gauge is not None:
        psi = gauge_transform(psi, spec.gauge)
    return psi


def gauge_transform(psi: PhaseSpaceWavefunction, f_values) -> PhaseSpaceWavefunction:
    """psi'(Gamma) = e^{i f(Gamma)} psi(Gamma) for a real phase field f."""
    f = np.asarray(f_values)
    if np.iscomplexobj(f):
        if np.max(np.abs(f.imag)) > 0:
            raise ConfigError("gauge phase must be real-valued")
        f = f.real
    if f.shape != psi.values.shape:
        raise ConfigError("gauge phase shape does not match the field")
    out = ComplexField2D(psi.grid, np.exp(1j * f) * psi.values)
    return PhaseSpaceWavefunction(out, psi.convention)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UnitarityReport:
    """Result of a kernel unitarity probe."""

    residual: float          # max |overlap - delta| over the probe pairs
    diagonal_factor: float   # mean diagonal overlap times dq (1 when unitary)
    pairs: int

    def __repr__(self):
        return (f"UnitarityReport(residual={self.residual:.3e}, "
                f"diagonal_factor={self.diagonal_factor:.6f}, pairs={self.pairs})")


def default_probe_pairs(n: int) -> list[tuple[int, int]]:
    """Deterministic (q', q'') index pairs, diagonal included.

    Base points sit in the central half of the grid so that quadrature
    truncation does not masquerade as a unitarity defect.
    """
    center = n // 2
    bases = sorted({center, center - n // 8, center + n // 8,
                    center - n // 16, center + n // 16})
    offsets = [0, 1, 2, 5, n // 8]
    pairs = []
    for i in bases:
        for m in offsets:
            j = i + m
            if 0 <= j < n:
                pairs.append((i, j))
    return pairs


def check_kernel_unitarity(spec: KernelSpec, measure: str = "dGamma",
                           pairs: list[tuple[int, int]] | None = None) -> UnitarityReport:
    """Probe integral conj(K)(.;q') K(.;q'') dGamma against delta(q'-q'').

    The delta is discretised as 1/dq at coincident indices.  measure
    "bargmann" uses dmu(z) = pi^{-1} e^{-|z|^2} d^2 z instead of dGamma.
    """
    grid = spec.grid
    n = grid.n
    if pairs is None:
        pairs = default_probe_pairs(n)
    key = measure.lower()
    if key == "dgamma":
        weight = grid.dqdp / (2.0 * np.pi * grid.hbar)
    elif key == "bargmann":
        units = spec.units or OscillatorUnits(hbar=grid.hbar)
        z = _bargmann_z(grid, units)
        weight = np.exp(-np.abs(z) ** 2) / np.pi * grid.dqdp / (2.0 * grid.hbar)
    else:
        raise ConfigError(f"unknown measure {measure!r}; use 'dGamma' or 'bargmann'")

    dq = grid.qgrid.step
    columns: dict[int, np.ndarray] = {}

    def col(i: int) -> np.ndarray:
        if i not in columns:
            columns[i] = kernel_column(spec, i)
        return columns[i]

    residual = 0.0
    diag_values = []
    for i, j in pairs:
        overlap = np.sum(np.conj(col(i)) * col(j) * weight)
        target = (1.0 / dq) if i == j else 0.0
        residual = max(residual, abs(overlap - target))
        if i == j:
            diag_values.append(overlap.real * dq)
    factor = float(np.mean(diag_values)) if diag_values else float("nan")
    return UnitarityReport(float(residual), factor, len(pairs))


def g_norm_residual(g: GFunction, convention: Convention, s: float | None = None) -> float:
    """|integral |g|^2 dy - target| for the unitarity target of the convention."""
    if convention is Convention.PLAIN:
        target = 1.0
    elif convention is Convention.S_FAMILY:
        if s is None:
            s = g.target_s
        if s is None:
            raise ConfigError("the s-family norm target needs the parameter s")
        if s == -1.0:
            raise ConfigError("the unitarity target 2/|1+s| is undefined at s = -1")
        target = 2.0 / abs(1.0 + s)
    else:  # pragma: no cover
        raise ConfigError(f"unknown convention {convention!r}")
    return abs(g.norm_squared - target)


def transform_norm(psi: PhaseSpaceWavefunction) -> float:
    """integral |psi|^2 dGamma (1 for unitary kernels on normalised input)."""
    dens = ComplexField2D(psi.grid, np.abs(psi.values) ** 2 + 0j)
    return float(integrate_phase(dens, "dGamma").real)
