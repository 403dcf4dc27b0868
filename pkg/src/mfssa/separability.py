"""Weighted covariance and w-correlation diagnostics between series."""

from __future__ import annotations

import numpy as np

from .mfts import MFTS


def weights(N: int, L: int) -> np.ndarray:
    """w_i = min(i, L, N - i + 1) for i = 1..N (integer weights)."""
    if not 1 <= L <= N:
        raise ValueError(f"need 1 <= L <= N, got L={L}, N={N}")
    i = np.arange(1, N + 1)
    return np.minimum(np.minimum(i, L), N - i + 1).astype(float)


def wcov(y: MFTS, z: MFTS, L: int) -> float:
    """Weighted covariance: sum over variables and time of w_i times the
    functional inner product, computed as c_y^T G_j c_z per time point."""
    if not y.compatible_with(z):
        raise ValueError("series must share bases and length")
    w = weights(y.length, L)
    total = 0.0
    for cy, cz, basis in zip(y.coefficients, z.coefficients, y.bases):
        per_time = np.einsum("ai,ab,bi->i", cy, basis.gram, cz)
        total += float(w @ per_time)
    return total


def wnorm(y: MFTS, L: int) -> float:
    return float(np.sqrt(max(wcov(y, y, L), 0.0)))


def wcorrelation_matrix(series, L: int, labels=None) -> np.ndarray:
    """Matrix of pairwise w-correlations between reconstructed series."""
    series = list(series)
    if not series:
        raise ValueError("need at least one series")
    norms = [wnorm(s, L) for s in series]
    for idx, n in enumerate(norms):
        if n == 0.0:
            name = labels[idx] if labels else str(idx)
            raise ValueError(
                f"w-correlation undefined: reconstruction {name!r} is identically zero"
            )
    m = len(series)
    out = np.eye(m)
    for a in range(m):
        for b in range(a + 1, m):
            rho = wcov(series[a], series[b], L) / (norms[a] * norms[b])
            out[a, b] = out[b, a] = rho
    return out
