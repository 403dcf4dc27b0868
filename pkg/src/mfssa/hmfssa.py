"""Horizontal variant: all variables share one domain and basis, and the
trajectory operator concatenates the per-variable coefficient Hankel blocks
horizontally into an (L*d) x (p*K) matrix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .basis import FunctionalBasis
from .decomposition import _fix_signs
from .embedding import EmbeddingPlan
from .mfts import MFTS
from .reconstruction import Grouping, ReconstructionSet, hankelize, inverse_embed


class CommonDomainError(ValueError):
    """Raised when variables do not share one basis/domain (required here)."""


@dataclass(frozen=True)
class HmfssaRep:
    B_h: np.ndarray  # (L*d, p*K)
    basis: FunctionalBasis
    L: int
    N: int
    p: int

    @property
    def K(self) -> int:
        return self.N - self.L + 1

    @property
    def d(self) -> int:
        return self.basis.size

    @property
    def plan(self) -> EmbeddingPlan:
        """Per-variable block plan (single variable, shared basis)."""
        return EmbeddingPlan(L=self.L, N=self.N, d_per_variable=(self.d,))

    def _apply_block(self, mat: np.ndarray, x: np.ndarray) -> np.ndarray:
        lead = x.shape[1:]
        m = x.reshape(self.d, self.L, -1)
        out = (mat @ m.reshape(self.d, -1)).reshape(self.d, self.L, -1)
        return out.reshape((self.d * self.L,) + lead)

    def apply_gram_sqrt(self, x: np.ndarray) -> np.ndarray:
        return self._apply_block(self.basis.gram_sqrt(), x)

    def apply_gram_inv_sqrt(self, x: np.ndarray) -> np.ndarray:
        return self._apply_block(self.basis.gram_inv_sqrt(), x)


def hmfssa_embed(mfts: MFTS, L: int) -> HmfssaRep:
    if not 1 <= L < mfts.length:
        raise ValueError(f"need 1 <= L < N={mfts.length}, got L={L}")
    base = mfts.bases[0]
    for other in mfts.bases[1:]:
        if not base.structurally_equal(other):
            raise CommonDomainError(
                "horizontal variant requires all variables to share one "
                "domain and basis"
            )
    K = mfts.length - L + 1
    blocks = []
    for c in mfts.coefficients:
        windows = sliding_window_view(c, L, axis=1)  # (d, K, L)
        blocks.append(
            np.ascontiguousarray(windows.transpose(0, 2, 1)).reshape(base.size * L, K)
        )
    return HmfssaRep(
        B_h=np.hstack(blocks), basis=base, L=L, N=mfts.length, p=mfts.n_variables
    )


@dataclass(frozen=True)
class HmfssaDecomposition:
    singular_values: np.ndarray
    right_vectors: np.ndarray  # (p*K, r)
    left_coeffs: np.ndarray  # (L*d, r)
    rep: HmfssaRep

    @property
    def rank(self) -> int:
        return len(self.singular_values)

    def component_matrix(self, indices) -> np.ndarray:
        idx = np.asarray(sorted(indices), dtype=int)
        s = self.singular_values[idx]
        return (self.left_coeffs[:, idx] * s) @ self.right_vectors[:, idx].T

    def export_dict(self) -> dict:
        return {
            "variant": "hmfssa",
            "sigma": self.singular_values.tolist(),
            "V": self.right_vectors.tolist(),
            "Psi": self.left_coeffs.tolist(),
            "L": self.rep.L,
            "K": self.rep.K,
            "d": [self.rep.d],
            "p": self.rep.p,
        }


def hmfssa_decompose(rep: HmfssaRep, tol: float = 1e-12) -> HmfssaDecomposition:
    X = rep.apply_gram_sqrt(rep.B_h)
    u, s, vt = np.linalg.svd(X, full_matrices=False)
    keep = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    u, s, vt = u[:, :keep], s[:keep], vt[:keep]
    u, v = _fix_signs(u, vt)
    return HmfssaDecomposition(
        singular_values=s,
        right_vectors=v,
        left_coeffs=rep.apply_gram_inv_sqrt(u),
        rep=rep,
    )


def hmfssa_reconstruct(
    dec: HmfssaDecomposition,
    grouping: Grouping,
    source: MFTS,
    include_residual: bool = False,
) -> ReconstructionSet:
    """Column block j feeds reconstructed variable j; each block is
    hankelized independently."""
    rep = dec.rep
    if source.length != rep.N or source.n_variables != rep.p:
        raise ValueError("decomposition does not match the source series")
    grouping.validate_rank(dec.rank)
    groups = list(grouping.groups)
    labels = list(grouping.labels)
    if include_residual:
        residual = grouping.residual_indices(dec.rank)
        if residual:
            groups.append(residual)
            labels.append("residual")
    plan = rep.plan
    total_sq = float(np.sum(dec.singular_values**2))
    series, shares = [], []
    for g in groups:
        Bg = dec.component_matrix([i - 1 for i in g])
        coeffs = []
        for j in range(rep.p):
            block = Bg[:, j * rep.K : (j + 1) * rep.K]
            coeffs.append(inverse_embed(hankelize(block, plan), plan))
        series.append(MFTS(source.bases, tuple(coeffs), source.names))
        share = float(np.sum(dec.singular_values[[i - 1 for i in g]] ** 2))
        shares.append(share / total_sq if total_sq > 0 else 0.0)
    return ReconstructionSet(tuple(series), tuple(labels), tuple(shares))
