"""Compact domains that functional variables live on: intervals and rectangles."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class DomainSpec:
    """A 1D interval or a 2D axis-aligned rectangle.

    ``bounds`` is a tuple of per-axis (lo, hi) pairs: one pair for an
    interval, two for a rectangle.
    """

    kind: str
    bounds: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if self.kind not in ("interval", "rectangle"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        n_axes = 1 if self.kind == "interval" else 2
        if len(self.bounds) != n_axes:
            raise ValueError(
                f"{self.kind} domain needs {n_axes} axis bound pair(s), got {len(self.bounds)}"
            )
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        for lo, hi in bounds:
            if not lo < hi:
                raise ValueError(f"axis bounds must satisfy lo < hi, got ({lo}, {hi})")
        object.__setattr__(self, "bounds", bounds)

    @property
    def ndim(self) -> int:
        return len(self.bounds)

    def contains(self, point, atol: float = 1e-12) -> bool:
        """Whether a point (scalar for intervals, pair for rectangles) lies inside."""
        coords = (point,) if self.ndim == 1 else tuple(point)
        if len(coords) != self.ndim:
            return False
        return all(
            lo - atol <= float(c) <= hi + atol
            for c, (lo, hi) in zip(coords, self.bounds)
        )

    def measure(self) -> float:
        m = 1.0
        for lo, hi in self.bounds:
            m *= hi - lo
        return m


def interval(lo: float, hi: float) -> DomainSpec:
    return DomainSpec("interval", ((lo, hi),))


def rectangle(x_bounds, y_bounds) -> DomainSpec:
    return DomainSpec("rectangle", (tuple(x_bounds), tuple(y_bounds)))
