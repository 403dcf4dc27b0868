"""Grouping, Hankel projection by antidiagonal averaging, and inverse
embedding back to a series."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decomposition import TrajectoryDecomposition
from .embedding import EmbeddingPlan
from .mfts import MFTS


@dataclass(frozen=True)
class Grouping:
    """Ordered, pairwise-disjoint sets of 1-based component indices."""

    groups: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        groups = tuple(tuple(sorted(set(int(i) for i in g))) for g in self.groups)
        if any(len(g) == 0 for g in groups):
            raise ValueError("groups must be non-empty")
        seen: set[int] = set()
        for g in groups:
            if any(i < 1 for i in g):
                raise ValueError("component indices are 1-based and must be >= 1")
            overlap = seen.intersection(g)
            if overlap:
                raise ValueError(f"overlapping groups: component(s) {sorted(overlap)}")
            seen.update(g)
        object.__setattr__(self, "groups", groups)
        labels = self.labels or tuple(
            ",".join(str(i) for i in g) for g in groups
        )
        if len(labels) != len(groups):
            raise ValueError("one label per group required")
        object.__setattr__(self, "labels", tuple(labels))

    @classmethod
    def parse(cls, text: str) -> "Grouping":
        """Parse the CLI grammar, e.g. ``"1;2,3;4,5"``."""
        groups = []
        for part in text.split(";"):
            part = part.strip()
            if not part:
                continue
            groups.append(tuple(int(tok) for tok in part.split(",")))
        if not groups:
            raise ValueError(f"empty grouping string {text!r}")
        return cls(tuple(groups))

    def validate_rank(self, rank: int):
        for g in self.groups:
            for i in g:
                if i > rank:
                    raise ValueError(
                        f"component index {i} exceeds decomposition rank {rank}"
                    )

    def covered(self) -> set[int]:
        return {i for g in self.groups for i in g}

    def residual_indices(self, rank: int) -> tuple[int, ...]:
        return tuple(i for i in range(1, rank + 1) if i not in self.covered())


@dataclass(frozen=True)
class ReconstructionSet:
    """One reconstructed series per group, plus each group's share of the
    squared-singular-value total."""

    series: tuple[MFTS, ...]
    labels: tuple[str, ...]
    shares: tuple[float, ...]


def group_components(
    dec: TrajectoryDecomposition, grouping: Grouping
) -> list[np.ndarray]:
    """Per-group coefficient matrices: sums of rank-one contributions to B."""
    grouping.validate_rank(dec.rank)
    return [dec.component_matrix([i - 1 for i in g]) for g in grouping.groups]


def hankelize(B_group: np.ndarray, plan: EmbeddingPlan) -> np.ndarray:
    """Replace each basis index's L x K sub-block by its antidiagonal means.

    This is the orthogonal projection onto the Hankel subspace; it acts
    independently per basis index and does not involve the Gram.
    """
    L, K, d = plan.L, plan.K, plan.d
    if B_group.shape != (L * d, K):
        raise ValueError(f"expected shape {(L * d, K)}, got {B_group.shape}")
    u = np.add.outer(np.arange(L), np.arange(K)).ravel()
    counts = np.bincount(u)
    out = np.empty_like(B_group, dtype=float)
    for q in range(d):
        block = B_group[q * L : (q + 1) * L]
        means = np.bincount(u, weights=block.ravel()) / counts
        out[q * L : (q + 1) * L] = means[u].reshape(L, K)
    return out


def inverse_embed(B_hankel: np.ndarray, plan: EmbeddingPlan) -> np.ndarray:
    """Read the length-N coefficient series off the constant antidiagonals of
    each basis index's block; returns (d, N)."""
    L, K, d = plan.L, plan.K, plan.d
    C = np.empty((d, plan.N))
    for q in range(d):
        block = B_hankel[q * L : (q + 1) * L]
        # time t (0-based) = r + k; take the first available representative.
        C[q, :K] = block[0, :]
        if L > 1:
            C[q, K:] = block[1:, K - 1]
    return C


def reconstruct(
    dec: TrajectoryDecomposition,
    grouping: Grouping,
    source: MFTS,
    include_residual: bool = False,
) -> ReconstructionSet:
    """Hankelize each group's matrix and map it back to a series per group."""
    plan = dec.plan
    if plan.N != source.length or plan.d_per_variable != tuple(
        b.size for b in source.bases
    ):
        raise ValueError("decomposition does not match the source series")
    grouping.validate_rank(dec.rank)
    groups = list(grouping.groups)
    labels = list(grouping.labels)
    if include_residual:
        residual = grouping.residual_indices(dec.rank)
        if residual:
            groups.append(residual)
            labels.append("residual")
    total_sq = float(np.sum(dec.singular_values**2))
    series, shares = [], []
    for g in groups:
        Bg = dec.component_matrix([i - 1 for i in g])
        C = inverse_embed(hankelize(Bg, plan), plan)
        coeffs, row = [], 0
        for basis in source.bases:
            coeffs.append(C[row : row + basis.size])
            row += basis.size
        series.append(MFTS(source.bases, tuple(coeffs), source.names))
        share = float(np.sum(dec.singular_values[[i - 1 for i in g]] ** 2))
        shares.append(share / total_sq if total_sq > 0 else 0.0)
    return ReconstructionSet(tuple(series), tuple(labels), tuple(shares))
