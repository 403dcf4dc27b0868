"""Multivariate functional time series: per-variable basis coefficients,
file ingestion, normalization, evaluation and coefficient arithmetic."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .basis import (
    FunctionalBasis,
    SampleGrid,
    make_bspline_basis,
    make_delta_basis,
    make_tensor_basis,
    project_samples,
)
from .domains import DomainSpec


@dataclass(frozen=True)
class MFTS:
    """A length-N multivariate functional time series.

    Coefficients are stored column-per-time: variable j holds a (d_j, N)
    matrix whose column i is the basis expansion of observation i.
    """

    bases: tuple[FunctionalBasis, ...]
    coefficients: tuple[np.ndarray, ...]
    names: tuple[str, ...] = ()
    grids: tuple[SampleGrid | None, ...] = ()

    def __post_init__(self):
        if len(self.bases) == 0:
            raise ValueError("MFTS needs at least one variable")
        if len(self.bases) != len(self.coefficients):
            raise ValueError("one coefficient matrix per basis required")
        coeffs = tuple(np.asarray(c, dtype=float) for c in self.coefficients)
        lengths = set()
        for basis, c in zip(self.bases, coeffs):
            if c.ndim != 2 or c.shape[0] != basis.size:
                raise ValueError(
                    f"coefficient matrix must be ({basis.size}, N), got {c.shape}"
                )
            if not np.all(np.isfinite(c)):
                raise ValueError("coefficients must be finite")
            lengths.add(c.shape[1])
        if len(lengths) != 1:
            raise ValueError(f"variables disagree on series length: {sorted(lengths)}")
        (n,) = lengths
        if n < 1:
            raise ValueError("series length must be >= 1")
        object.__setattr__(self, "coefficients", coeffs)
        names = self.names or tuple(f"var{j + 1}" for j in range(len(self.bases)))
        object.__setattr__(self, "names", tuple(names))
        grids = self.grids or (None,) * len(self.bases)
        object.__setattr__(self, "grids", tuple(grids))

    @property
    def n_variables(self) -> int:
        return len(self.bases)

    @property
    def length(self) -> int:
        return self.coefficients[0].shape[1]

    def compatible_with(self, other: "MFTS") -> bool:
        return (
            self.n_variables == other.n_variables
            and self.length == other.length
            and all(
                a.structurally_equal(b) for a, b in zip(self.bases, other.bases)
            )
        )

    def default_sites(self, variable: int, n_1d: int = 100, n_2d: int = 24):
        """Evaluation sites for a variable: its ingestion grid when known,
        otherwise a uniform grid over the domain."""
        if self.grids[variable] is not None:
            return self.grids[variable].points
        basis = self.bases[variable]
        if basis.kind == "discrete_delta":
            return basis.points
        if basis.domain.ndim == 1:
            lo, hi = basis.domain.bounds[0]
            return np.linspace(lo, hi, n_1d)
        (x0, x1), (y0, y1) = basis.domain.bounds
        gx = np.linspace(x0, x1, n_2d)
        gy = np.linspace(y0, y1, n_2d)
        return np.array([(x, y) for x in gx for y in gy])


@dataclass(frozen=True)
class NormalizationRecord:
    """Per-variable positive scale factors used for normalization."""

    scales: tuple[float, ...]

    def __post_init__(self):
        if any(s <= 0 for s in self.scales):
            raise ValueError("normalization scales must be positive")


def evaluate(mfts: MFTS, variable: int, sites) -> np.ndarray:
    """Render one variable on evaluation sites; returns (n_sites, N)."""
    basis = mfts.bases[variable]
    return basis.design_matrix(sites) @ mfts.coefficients[variable]


def normalize(
    mfts: MFTS, variables: list[int] | None = None
) -> tuple[MFTS, NormalizationRecord]:
    """Divide each selected variable by the scalar standard deviation of all
    of its sample values (stored ingestion samples when available, otherwise
    values evaluated on a default grid). Unselected variables get scale 1."""
    selected = set(range(mfts.n_variables)) if variables is None else set(variables)
    scales = []
    for j in range(mfts.n_variables):
        if j not in selected:
            scales.append(1.0)
            continue
        if mfts.grids[j] is not None:
            vals = mfts.grids[j].values
        else:
            vals = evaluate(mfts, j, mfts.default_sites(j))
        sd = float(np.std(vals))
        if sd == 0.0:
            raise ValueError(f"variable {j} has zero variance; cannot normalize")
        scales.append(sd)
    coeffs = tuple(c / s for c, s in zip(mfts.coefficients, scales))
    grids = tuple(
        SampleGrid(g.points, g.values / s) if g is not None else None
        for g, s in zip(mfts.grids, scales)
    )
    out = MFTS(mfts.bases, coeffs, mfts.names, grids)
    return out, NormalizationRecord(tuple(scales))


def denormalize(mfts: MFTS, record: NormalizationRecord) -> MFTS:
    coeffs = tuple(c * s for c, s in zip(mfts.coefficients, record.scales))
    grids = tuple(
        SampleGrid(g.points, g.values * s) if g is not None else None
        for g, s in zip(mfts.grids, record.scales)
    )
    return MFTS(mfts.bases, coeffs, mfts.names, grids)


def add(a: MFTS, b: MFTS) -> MFTS:
    if not a.compatible_with(b):
        raise ValueError("cannot add series with mismatched bases or lengths")
    coeffs = tuple(ca + cb for ca, cb in zip(a.coefficients, b.coefficients))
    return MFTS(a.bases, coeffs, a.names)


def scale(a: MFTS, c: float) -> MFTS:
    return MFTS(a.bases, tuple(cm * c for cm in a.coefficients), a.names)


# -- ingestion --------------------------------------------------------------


def _domain_from_config(cfg: dict) -> DomainSpec:
    kind = cfg["kind"]
    if kind == "interval":
        return DomainSpec("interval", (tuple(cfg["bounds"]),))
    if kind == "rectangle":
        return DomainSpec("rectangle", tuple(tuple(b) for b in cfg["bounds"]))
    raise ValueError(f"unknown domain kind {kind!r}")


def _basis_from_config(domain: DomainSpec, cfg: dict, grid) -> FunctionalBasis:
    kind = cfg["kind"]
    if kind == "bspline":
        return make_bspline_basis(domain, int(cfg["df"]), int(cfg.get("degree", 3)))
    if kind == "tensor_bspline":
        df = tuple(int(x) for x in cfg["df"])
        return make_tensor_basis(domain, df, int(cfg.get("degree", 3)))
    if kind == "delta":
        return make_delta_basis(np.asarray(grid, dtype=float))
    raise ValueError(f"unknown basis kind {kind!r}")


def ingest_dict(data: dict) -> MFTS:
    """Build an MFTS from a parsed dataset dict (see the JSON schema)."""
    variables = data.get("variables")
    if not variables:
        raise ValueError("dataset has no variables")
    bases, coeffs, names, grids = [], [], [], []
    lengths = set()
    for var in variables:
        domain = _domain_from_config(var["domain"])
        grid_pts = np.asarray(var["grid"], dtype=float)
        values = np.asarray(var["values"], dtype=float)  # N rows x sites
        if values.ndim != 2 or values.shape[1] != len(grid_pts):
            raise ValueError(
                f"variable {var.get('name')}: values must be (N, n_sites); "
                f"got {values.shape} for {len(grid_pts)} sites"
            )
        grid = SampleGrid(grid_pts, values.T)
        basis = _basis_from_config(domain, var["basis"], grid_pts)
        bases.append(basis)
        coeffs.append(project_samples(grid, basis))
        names.append(var.get("name", f"var{len(names) + 1}"))
        grids.append(grid)
        lengths.add(values.shape[0])
    if len(lengths) != 1:
        raise ValueError(f"variables disagree on series length: {sorted(lengths)}")
    return MFTS(tuple(bases), tuple(coeffs), tuple(names), tuple(grids))


def ingest(path: str | Path) -> MFTS:
    """Ingest a dataset JSON file."""
    with open(path, encoding="utf-8") as fh:
        return ingest_dict(json.load(fh))


def ingest_csv(path: str | Path, basis: dict | None = None, name: str = "var1") -> MFTS:
    """Ingest a 1D CSV: first column is the site, remaining columns are time
    points. ``basis`` follows the JSON schema's basis object (default delta)."""
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row:
                continue
            try:
                rows.append([float(x) for x in row])
            except ValueError:
                continue  # header line
    if not rows:
        raise ValueError("CSV contains no numeric rows")
    arr = np.asarray(rows, dtype=float)
    sites, values = arr[:, 0], arr[:, 1:]
    if values.shape[1] == 0:
        raise ValueError("CSV needs at least one time-point column")
    data = {
        "variables": [
            {
                "name": name,
                "domain": {
                    "kind": "interval",
                    "bounds": [float(sites.min()), float(sites.max())],
                },
                "basis": basis or {"kind": "delta"},
                "grid": sites.tolist(),
                "values": values.T.tolist(),
            }
        ]
    }
    return ingest_dict(data)


def to_dataset_dict(mfts: MFTS) -> dict:
    """Export an MFTS in the dataset JSON schema (values re-evaluated on each
    variable's grid)."""
    out = []
    for j, basis in enumerate(mfts.bases):
        sites = mfts.default_sites(j)
        values = evaluate(mfts, j, sites)
        if basis.domain.ndim == 1:
            dom = {"kind": "interval", "bounds": list(basis.domain.bounds[0])}
            grid = np.atleast_1d(np.asarray(sites)).tolist()
        else:
            dom = {"kind": "rectangle", "bounds": [list(b) for b in basis.domain.bounds]}
            grid = np.atleast_2d(np.asarray(sites)).tolist()
        if basis.kind == "bspline":
            bcfg = {"kind": "bspline", "df": basis.size, "degree": basis.degree}
        elif basis.kind == "tensor_bspline":
            bcfg = {
                "kind": "tensor_bspline",
                "df": list(basis.df_per_axis),
                "degree": basis.degree,
            }
        else:
            bcfg = {"kind": "delta"}
        out.append(
            {
                "name": mfts.names[j],
                "domain": dom,
                "basis": bcfg,
                "grid": grid,
                "values": values.T.tolist(),
            }
        )
    return {"variables": out}
