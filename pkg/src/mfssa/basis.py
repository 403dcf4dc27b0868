"""Finite functional bases: B-splines on intervals, tensor B-splines on
rectangles, and discrete point-mass ("delta") bases.

Each basis carries its Gram matrix (matrix of pairwise L2 inner products),
computed exactly for splines by composite Gauss-Legendre quadrature per knot
span. The Gram is the bridge between coefficient vectors and function-space
geometry: ``<f, g> = cf @ G @ cg``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import BSpline
from scipy.linalg import lstsq as _lstsq

from .domains import DomainSpec, interval
from .errors import NumericError, ProjectionError

# Relative eigenvalue floor applied to every Gram before square roots are
# taken downstream; guards G^{-1/2} against numerically singular bases.
GRAM_EIG_FLOOR = 1e-12

# Projection fails rather than returning garbage past this design condition.
MAX_DESIGN_COND = 1e12


def _open_uniform_knots(lo: float, hi: float, df: int, degree: int) -> np.ndarray:
    """Open-uniform knot vector on [lo, hi] giving exactly ``df`` B-splines."""
    n_interior = df - degree - 1
    inner = np.linspace(lo, hi, n_interior + 2)[1:-1]
    return np.concatenate([np.full(degree + 1, lo), inner, np.full(degree + 1, hi)])


def _bspline_design_1d(knots: np.ndarray, degree: int, x: np.ndarray) -> np.ndarray:
    """Dense (len(x), df) matrix of B-spline basis values; closed right end."""
    df = len(knots) - degree - 1
    x = np.asarray(x, dtype=float)
    # splev-backed evaluation handles x == knots[-1] correctly.
    eye = np.eye(df)
    spl = BSpline(knots, eye, degree, extrapolate=False)
    vals = spl(x)
    return np.nan_to_num(vals, nan=0.0)


def _gauss_legendre_on_spans(spans: np.ndarray, n_nodes: int):
    """Composite Gauss-Legendre nodes/weights over consecutive break points."""
    ref_x, ref_w = np.polynomial.legendre.leggauss(n_nodes)
    xs, ws = [], []
    for a, b in zip(spans[:-1], spans[1:]):
        if b <= a:
            continue
        h = 0.5 * (b - a)
        xs.append(h * ref_x + 0.5 * (a + b))
        ws.append(h * ref_w)
    return np.concatenate(xs), np.concatenate(ws)


@dataclass(frozen=True)
class FunctionalBasis:
    """A finite basis over a 1D or 2D compact domain with its Gram matrix."""

    domain: DomainSpec
    kind: str  # "bspline" | "tensor_bspline" | "discrete_delta"
    size: int
    gram: np.ndarray
    knots: tuple[np.ndarray, ...] = ()  # per-axis, spline kinds only
    degree: int = 0
    df_per_axis: tuple[int, ...] = ()
    points: np.ndarray | None = None  # delta kind only
    cell_measure: float = 1.0  # delta kind only
    _gram_eig: tuple[np.ndarray, np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        g = np.asarray(self.gram, dtype=float)
        if not np.all(np.isfinite(g)):
            raise NumericError("Gram matrix contains non-finite values")
        scale = np.abs(g).max()
        if np.abs(g - g.T).max() > 1e-12 * max(scale, 1.0):
            raise NumericError("Gram matrix is not symmetric")
        g = 0.5 * (g + g.T)
        lam, vec = np.linalg.eigh(g)
        floor = GRAM_EIG_FLOOR * lam[-1]
        lam = np.maximum(lam, floor)
        object.__setattr__(self, "gram", (vec * lam) @ vec.T)
        object.__setattr__(self, "_gram_eig", (lam, vec))

    def gram_sqrt(self) -> np.ndarray:
        lam, vec = self._gram_eig
        return (vec * np.sqrt(lam)) @ vec.T

    def gram_inv_sqrt(self) -> np.ndarray:
        lam, vec = self._gram_eig
        return (vec / np.sqrt(lam)) @ vec.T

    # -- evaluation ---------------------------------------------------------

    def design_matrix(self, sites) -> np.ndarray:
        """Basis functions evaluated at sites, shape (n_sites, size)."""
        if self.kind == "bspline":
            x = np.atleast_1d(np.asarray(sites, dtype=float))
            self._check_inside(x[:, None])
            return _bspline_design_1d(self.knots[0], self.degree, x)
        if self.kind == "tensor_bspline":
            pts = np.atleast_2d(np.asarray(sites, dtype=float))
            self._check_inside(pts)
            ax = _bspline_design_1d(self.knots[0], self.degree, pts[:, 0])
            ay = _bspline_design_1d(self.knots[1], self.degree, pts[:, 1])
            # tensor index (i, j) -> i * df_y + j
            return (ax[:, :, None] * ay[:, None, :]).reshape(len(pts), self.size)
        if self.kind == "discrete_delta":
            own = self.points
            flat_sites = np.asarray(sites, dtype=float)
            flat_sites = (
                np.atleast_1d(flat_sites) if own.ndim == 1 else np.atleast_2d(flat_sites)
            )
            design = np.zeros((len(flat_sites), self.size))
            for i, s in enumerate(flat_sites):
                dist = (
                    np.abs(own - s)
                    if own.ndim == 1
                    else np.linalg.norm(own - s, axis=1)
                )
                j = int(np.argmin(dist))
                if dist[j] > 1e-9:
                    raise ValueError(
                        "delta basis can only be evaluated at its defining sites"
                    )
                design[i, j] = 1.0
            return design
        raise ValueError(f"unknown basis kind {self.kind!r}")

    def _check_inside(self, pts: np.ndarray):
        for row in pts:
            if not self.domain.contains(row if len(row) > 1 else row[0]):
                raise ValueError(f"site {row} lies outside the domain")

    def structurally_equal(self, other: "FunctionalBasis") -> bool:
        """Same kind, domain, knots and degree (object identity not required)."""
        if self.kind != other.kind or self.size != other.size:
            return False
        if self.domain != other.domain or self.degree != other.degree:
            return False
        if len(self.knots) != len(other.knots):
            return False
        for a, b in zip(self.knots, other.knots):
            if a.shape != b.shape or not np.allclose(a, b):
                return False
        if (self.points is None) != (other.points is None):
            return False
        if self.points is not None and not np.allclose(self.points, other.points):
            return False
        return True


@dataclass(frozen=True)
class SampleGrid:
    """Evaluation sites plus observed values (sites x time)."""

    points: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2 or vals.shape[0] != len(pts):
            raise ValueError(
                f"values must be (n_sites, N); got {vals.shape} for {len(pts)} sites"
            )
        flat = pts.reshape(len(pts), -1)
        if len(np.unique(flat, axis=0)) != len(flat):
            raise ValueError("duplicate sample sites")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)


# -- constructors -----------------------------------------------------------


def make_bspline_basis(domain: DomainSpec, df: int, degree: int = 3) -> FunctionalBasis:
    """B-spline basis with open-uniform knots on an interval."""
    if domain.kind != "interval":
        raise ValueError("make_bspline_basis requires an interval domain")
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if df < degree + 1:
        raise ValueError(f"df={df} too small for degree {degree}; need df >= degree+1")
    lo, hi = domain.bounds[0]
    knots = _open_uniform_knots(lo, hi, df, degree)
    gram = _spline_gram(knots, degree)
    return FunctionalBasis(
        domain=domain,
        kind="bspline",
        size=df,
        gram=gram,
        knots=(knots,),
        degree=degree,
        df_per_axis=(df,),
    )


def make_tensor_basis(
    domain: DomainSpec, df_per_axis: tuple[int, int], degree: int = 3
) -> FunctionalBasis:
    """Tensor-product B-spline basis on a rectangle; Gram is the Kronecker
    product of the per-axis Grams."""
    if domain.kind != "rectangle":
        raise ValueError("make_tensor_basis requires a rectangle domain")
    df_x, df_y = df_per_axis
    if min(df_x, df_y) < degree + 1:
        raise ValueError("each axis df must be >= degree+1")
    knots_x = _open_uniform_knots(*domain.bounds[0], df_x, degree)
    knots_y = _open_uniform_knots(*domain.bounds[1], df_y, degree)
    gram = np.kron(_spline_gram(knots_x, degree), _spline_gram(knots_y, degree))
    return FunctionalBasis(
        domain=domain,
        kind="tensor_bspline",
        size=df_x * df_y,
        gram=gram,
        knots=(knots_x, knots_y),
        degree=degree,
        df_per_axis=(df_x, df_y),
    )


def make_delta_basis(points, cell_measure: float | None = None) -> FunctionalBasis:
    """Point-mass basis over an ordered site list. The inner product is the
    Euclidean dot product weighted by a uniform cell measure, which makes the
    functional pipeline coincide with classical vector (M)SSA."""
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise ValueError("delta basis needs at least one point")
    if cell_measure is None:
        if pts.ndim == 1 and len(pts) > 1:
            cell_measure = float(pts[1] - pts[0])
        else:
            cell_measure = 1.0
    if cell_measure <= 0:
        raise ValueError("cell_measure must be positive")
    if pts.ndim == 1:
        lo, hi = float(pts.min()), float(pts.max())
        if not lo < hi:
            lo, hi = lo - 0.5 * cell_measure, hi + 0.5 * cell_measure
        dom = interval(lo, hi)
    else:
        los = pts.min(axis=0)
        his = pts.max(axis=0)
        his = np.where(his > los, his, los + cell_measure)
        dom = DomainSpec("rectangle", ((los[0], his[0]), (los[1], his[1])))
    n = len(pts)
    return FunctionalBasis(
        domain=dom,
        kind="discrete_delta",
        size=n,
        gram=cell_measure * np.eye(n),
        points=pts,
        cell_measure=float(cell_measure),
    )


# -- Gram and projection ----------------------------------------------------


def _spline_gram(knots: np.ndarray, degree: int) -> np.ndarray:
    """Gram of a 1D B-spline basis by composite Gauss-Legendre quadrature,
    2*degree+1 nodes per knot span (exact for products of splines)."""
    breaks = np.unique(knots)
    x, w = _gauss_legendre_on_spans(breaks, 2 * degree + 1)
    design = _bspline_design_1d(knots, degree, x)
    gram = (design * w[:, None]).T @ design
    if not np.all(np.isfinite(gram)):
        raise NumericError("quadrature produced non-finite Gram entries")
    return gram


def gram_matrix(basis: FunctionalBasis) -> np.ndarray:
    """The (floored, symmetrized) Gram matrix of a constructed basis."""
    return basis.gram


def project_samples(grid: SampleGrid, basis: FunctionalBasis) -> np.ndarray:
    """Least-squares fit of each time point's samples; returns (size, N)."""
    if len(grid.points) < basis.size:
        raise ProjectionError(
            f"need at least {basis.size} sites to project, got {len(grid.points)}"
        )
    design = basis.design_matrix(grid.points)
    cond = np.linalg.cond(design)
    if not np.isfinite(cond) or cond > MAX_DESIGN_COND:
        raise ProjectionError(
            f"design matrix ill-conditioned (cond={cond:.3e})", condition_number=cond
        )
    # QR-based (complete orthogonal) least squares.
    coeffs, *_ = _lstsq(design, grid.values, lapack_driver="gelsy")
    return coeffs
