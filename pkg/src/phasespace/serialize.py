"""CSV/JSON export and import.

Layouts (all CSV is LF-terminated, 17 significant digits, scientific
notation, so identical inputs produce byte-identical files):

* wavefunction: columns q, Re, Im; JSON sidecar with grid and units.
* matrix (density or operator): row-major triplets i, j, Re, Im.
* 2-D field: row-major rows q, p, Re, Im with the header carrying
  s, hbar, convention, source and the normalization check value.

Every JSON header embeds the originating config and the library version.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigError
from .grid import ComplexField2D, Grid1D, PhaseSpaceGrid, make_phase_grid
from .states import DensityMatrix, PositionWavefunction

FLOAT_FMT = "%.17e"


def _fmt(x: float) -> str:
    return FLOAT_FMT % x


def _base(path) -> Path:
    p = Path(path)
    return p.with_suffix("") if p.suffix in (".csv", ".json") else p


def _header(kind: str, extra: dict | None = None) -> dict:
    head = {"kind": kind, "version": __version__}
    if extra:
        head.update(extra)
    return head


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n",
                    encoding="utf-8")


def _grid1d_meta(grid: Grid1D) -> dict:
    return {"n": grid.n, "min": grid.min, "step": grid.step}


def _phase_grid_meta(grid: PhaseSpaceGrid) -> dict:
    return {
        "q": _grid1d_meta(grid.qgrid),
        "p": _grid1d_meta(grid.pgrid),
        "hbar": grid.hbar,
    }


def save_wavefunction(path, phi: PositionWavefunction, meta: dict | None = None) -> tuple[Path, Path]:
    base = _base(path)
    csv_path = base.with_suffix(".csv")
    json_path = base.with_suffix(".json")
    q = phi.grid.coords
    lines = ["q,Re,Im"]
    for k in range(phi.grid.n):
        lines.append(",".join((_fmt(q[k]), _fmt(phi.values[k].real), _fmt(phi.values[k].imag))))
    csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    head = _header("wavefunction", meta)
    head["grid"] = _grid1d_meta(phi.grid)
    head["norm"] = phi.norm
    if phi.energy is not None:
        head["energy"] = phi.energy
    _write_json(json_path, head)
    return csv_path, json_path


def load_wavefunction(path) -> PositionWavefunction:
    base = _base(path)
    head = json.loads(base.with_suffix(".json").read_text(encoding="utf-8"))
    g = head["grid"]
    grid = Grid1D(int(g["n"]), float(g["min"]), float(g["step"]))
    data = np.loadtxt(base.with_suffix(".csv"), delimiter=",", skiprows=1)
    values = data[:, 1] + 1j * data[:, 2]
    return PositionWavefunction(grid, values, energy=head.get("energy"))


def save_matrix(path, grid: Grid1D, matrix: np.ndarray, kind: str = "density",
                meta: dict | None = None) -> tuple[Path, Path]:
    base = _base(path)
    csv_path = base.with_suffix(".csv")
    json_path = base.with_suffix(".json")
    matrix = np.asarray(matrix)
    n = grid.n
    if matrix.shape != (n, n):
        raise ConfigError("matrix shape does not match the grid")
    lines = ["i,j,Re,Im"]
    for i in range(n):
        for j in range(n):
            lines.append(f"{i},{j}," + _fmt(matrix[i, j].real) + "," + _fmt(matrix[i, j].imag))
    csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    head = _header(kind, meta)
    head["grid"] = _grid1d_meta(grid)
    _write_json(json_path, head)
    return csv_path, json_path


def load_density(path) -> DensityMatrix:
    base = _base(path)
    head = json.loads(base.with_suffix(".json").read_text(encoding="utf-8"))
    g = head["grid"]
    grid = Grid1D(int(g["n"]), float(g["min"]), float(g["step"]))
    data = np.loadtxt(base.with_suffix(".csv"), delimiter=",", skiprows=1)
    n = grid.n
    rho = np.zeros((n, n), dtype=complex)
    rho[data[:, 0].astype(int), data[:, 1].astype(int)] = data[:, 2] + 1j * data[:, 3]
    return DensityMatrix(grid, rho)


def save_field(path, field: ComplexField2D, meta: dict | None = None) -> tuple[Path, Path]:
    """2-D field as row-major q, p, Re, Im rows plus a JSON header."""
    base = _base(path)
    csv_path = base.with_suffix(".csv")
    json_path = base.with_suffix(".json")
    grid = field.grid
    q = grid.qgrid.coords
    p = grid.pgrid.coords
    vals = field.values
    lines = ["q,p,Re,Im"]
    for i in range(grid.n):
        qi = _fmt(q[i])
        row = vals[i]
        for j in range(grid.n):
            lines.append(",".join((qi, _fmt(p[j]), _fmt(row[j].real), _fmt(row[j].imag))))
    csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    head = _header("field", meta)
    head["grid"] = _phase_grid_meta(grid)
    _write_json(json_path, head)
    return csv_path, json_path


def load_field(path) -> tuple[ComplexField2D, dict]:
    base = _base(path)
    head = json.loads(base.with_suffix(".json").read_text(encoding="utf-8"))
    g = head["grid"]
    grid = PhaseSpaceGrid(
        Grid1D(int(g["q"]["n"]), float(g["q"]["min"]), float(g["q"]["step"])),
        Grid1D(int(g["p"]["n"]), float(g["p"]["min"]), float(g["p"]["step"])),
        float(g["hbar"]),
    )
    data = np.loadtxt(base.with_suffix(".csv"), delimiter=",", skiprows=1)
    n = grid.n
    values = (data[:, 2] + 1j * data[:, 3]).reshape(n, n)
    return ComplexField2D(grid, values), head


def save_report(path, payload: dict) -> Path:
    """Deterministic JSON report (sorted keys, embedded version)."""
    p = Path(path)
    body = {"version": __version__}
    body.update(payload)
    _write_json(p, body)
    return p


def residual_record(s: float, n: int, energy: float, left: float, right: float,
                    grid: PhaseSpaceGrid, mask: float) -> dict:
    """The JSON record shape used for eigen-equation residual reports."""
    return {
        "s": s,
        "n": n,
        "E": energy,
        "left": left,
        "right": right,
        "grid": {"n": grid.n, "q_halfwidth": -grid.qgrid.min, "hbar": grid.hbar},
        "mask": mask,
    }
