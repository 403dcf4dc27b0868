"""Coefficient representation of the trajectory operator.

The embedding turns a length-N series into the (L*d) x K coefficient matrix
``B`` whose column k stacks, basis-index-major and lag-minor, the coefficients
of the k-th lagged vector. The inner-product structure of the function space
enters through ``G = blockdiag_j(G_j) (x) I_L``, which is never materialized
densely on the main path; all applications go block-by-block.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .mfts import MFTS


@dataclass(frozen=True)
class EmbeddingPlan:
    """Window bookkeeping: sizes plus the (q, r) <-> row index maps.

    Indices are 0-based internally. Row ``(q, r)`` of B (basis index q in
    0..d-1, lag r in 0..L-1) lives at ``q * L + r``; basis index q belongs to
    variable ``j_q`` and is its local basis function ``l_q``.
    """

    L: int
    N: int
    d_per_variable: tuple[int, ...]

    @property
    def K(self) -> int:
        return self.N - self.L + 1

    @property
    def d(self) -> int:
        return sum(self.d_per_variable)

    @property
    def variable_offsets(self) -> tuple[int, ...]:
        offs, acc = [], 0
        for dj in self.d_per_variable:
            offs.append(acc)
            acc += dj
        return tuple(offs)

    def variable_of(self, q: int) -> tuple[int, int]:
        """Map global basis index q to (variable j, local index l)."""
        for j, off in enumerate(self.variable_offsets):
            if q < off + self.d_per_variable[j]:
                return j, q - off
        raise IndexError(f"basis index {q} out of range 0..{self.d - 1}")

    def row_index(self, q: int, r: int) -> int:
        if not (0 <= q < self.d and 0 <= r < self.L):
            raise IndexError(f"(q={q}, r={r}) out of range")
        return q * self.L + r

    def row_to_qr(self, k: int) -> tuple[int, int]:
        if not 0 <= k < self.L * self.d:
            raise IndexError(f"row {k} out of range")
        return divmod(k, self.L)


@dataclass(frozen=True)
class TrajectoryRep:
    """The matrix B plus the block-structured Gram of the lagged-vector space."""

    B: np.ndarray
    plan: EmbeddingPlan
    bases: tuple

    # -- structured Gram application ---------------------------------------

    def _apply_blocks(self, mats, x: np.ndarray) -> np.ndarray:
        """Apply blockdiag(mats) (x) I_L to x (shape (L*d, ...))."""
        L, d = self.plan.L, self.plan.d
        lead = x.shape[1:]
        m = x.reshape(d, L, -1)
        out = np.empty_like(m, dtype=float)
        for j, off in enumerate(self.plan.variable_offsets):
            dj = self.plan.d_per_variable[j]
            block = mats[j]
            seg = m[off : off + dj].reshape(dj, -1)
            out[off : off + dj] = (block @ seg).reshape(dj, L, -1)
        return out.reshape((L * d,) + lead)

    def apply_gram(self, x: np.ndarray) -> np.ndarray:
        return self._apply_blocks([b.gram for b in self.bases], x)

    def apply_gram_sqrt(self, x: np.ndarray) -> np.ndarray:
        return self._apply_blocks([b.gram_sqrt() for b in self.bases], x)

    def apply_gram_inv_sqrt(self, x: np.ndarray) -> np.ndarray:
        return self._apply_blocks([b.gram_inv_sqrt() for b in self.bases], x)

    def dense_gram(self) -> np.ndarray:
        """Materialized G = blockdiag_j(G_j) (x) I_L; oracle/debug use only."""
        from scipy.linalg import block_diag

        gb = block_diag(*[b.gram for b in self.bases])
        return np.kron(gb, np.eye(self.plan.L))


def embed(mfts: MFTS, L: int) -> TrajectoryRep:
    """Build the trajectory representation with window length L."""
    N = mfts.length
    if not 1 <= L < N:
        raise ValueError(f"window length must satisfy 1 <= L < N={N}, got {L}")
    if L > N // 2:
        warnings.warn(
            f"L={L} exceeds N/2={N // 2}; the usual rule of thumb is L <= N/2",
            stacklevel=2,
        )
    C = np.vstack(mfts.coefficients)  # d x N, variable-major rows
    K = N - L + 1
    # windows[q, k, r] = C[q, k + r]; B rows ordered q-major, r-minor.
    windows = sliding_window_view(C, L, axis=1)
    B = np.ascontiguousarray(windows.transpose(0, 2, 1)).reshape(C.shape[0] * L, K)
    plan = EmbeddingPlan(L=L, N=N, d_per_variable=tuple(b.size for b in mfts.bases))
    return TrajectoryRep(B=B, plan=plan, bases=tuple(mfts.bases))


def gram_sqrt(rep: TrajectoryRep):
    """Structured operators applying G^{1/2} and G^{-1/2}."""
    return rep.apply_gram_sqrt, rep.apply_gram_inv_sqrt


def adjoint_apply(rep: TrajectoryRep, z: np.ndarray) -> np.ndarray:
    """Adjoint of the trajectory operator on a coefficient vector z in the
    lagged-vector space: returns B^T G z (length K)."""
    z = np.asarray(z, dtype=float)
    if z.shape[0] != rep.B.shape[0]:
        raise ValueError(
            f"expected coefficient vector of length {rep.B.shape[0]}, got {z.shape[0]}"
        )
    return rep.B.T @ rep.apply_gram(z)
