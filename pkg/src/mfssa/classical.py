"""Classical vector MSSA baseline: vertical/horizontal stacking, SVD,
grouping, per-block antidiagonal averaging."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .decomposition import _fix_signs
from .reconstruction import Grouping


def _hankel(series: np.ndarray, L: int) -> np.ndarray:
    """L x K trajectory matrix of one scalar series."""
    K = len(series) - L + 1
    return np.ascontiguousarray(sliding_window_view(series, L).T[:, :K])


def mssa_embed(values: np.ndarray, L: int, stacking: str = "vertical") -> np.ndarray:
    """Block-Hankel trajectory matrix of a p x N multivariate series."""
    values = np.atleast_2d(np.asarray(values, dtype=float))
    p, N = values.shape
    if not 1 <= L < N:
        raise ValueError(f"need 1 <= L < N={N}, got L={L}")
    blocks = [_hankel(values[j], L) for j in range(p)]
    if stacking == "vertical":
        return np.vstack(blocks)
    if stacking == "horizontal":
        return np.hstack(blocks)
    raise ValueError(f"unknown stacking {stacking!r}")


@dataclass(frozen=True)
class MssaDecomposition:
    stacking: str
    singular_values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray
    L: int
    N: int
    p: int

    @property
    def K(self) -> int:
        return self.N - self.L + 1

    @property
    def rank(self) -> int:
        return len(self.singular_values)


def mssa_decompose(
    values: np.ndarray, L: int, stacking: str = "vertical", tol: float = 1e-12
) -> MssaDecomposition:
    values = np.atleast_2d(np.asarray(values, dtype=float))
    X = mssa_embed(values, L, stacking)
    u, s, vt = np.linalg.svd(X, full_matrices=False)
    keep = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    u, s, vt = u[:, :keep], s[:keep], vt[:keep]
    u, v = _fix_signs(u, vt)
    return MssaDecomposition(
        stacking=stacking,
        singular_values=s,
        left_vectors=u,
        right_vectors=v,
        L=L,
        N=values.shape[1],
        p=values.shape[0],
    )


def _diagonal_average(block: np.ndarray) -> np.ndarray:
    """Series of antidiagonal means of one L x K block (length N)."""
    L, K = block.shape
    u = np.add.outer(np.arange(L), np.arange(K)).ravel()
    return np.bincount(u, weights=block.ravel()) / np.bincount(u)


def mssa_reconstruct(dec: MssaDecomposition, grouping: Grouping) -> list[np.ndarray]:
    """Per-group p x N series via per-block antidiagonal averaging."""
    grouping.validate_rank(dec.rank)
    out = []
    L, K, p = dec.L, dec.K, dec.p
    for g in grouping.groups:
        idx = [i - 1 for i in g]
        Xg = (dec.left_vectors[:, idx] * dec.singular_values[idx]) @ dec.right_vectors[
            :, idx
        ].T
        series = np.empty((p, dec.N))
        for j in range(p):
            if dec.stacking == "vertical":
                block = Xg[j * L : (j + 1) * L, :]
            else:
                block = Xg[:, j * K : (j + 1) * K]
            series[j] = _diagonal_average(block)
        out.append(series)
    return out
