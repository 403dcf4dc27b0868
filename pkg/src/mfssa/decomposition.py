"""Eigentriples of the trajectory operator.

The operator SVD reduces to the dense SVD of ``X = G^{1/2} B``; left singular
functions are recovered in coefficient form as ``Psi = G^{-1/2} U``. The
unfolded (vertically-stacked) variant solves the same problem under a row
permutation, which `vmfssa_oracle` exploits as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embedding import EmbeddingPlan, TrajectoryRep

DEFAULT_RANK_TOL = 1e-12


def _fix_signs(u: np.ndarray, vt: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic SVD signs: the largest-|.| entry of each right vector is
    made positive (ties: lowest index, which argmax already picks)."""
    v = vt.T
    for i in range(v.shape[1]):
        idx = int(np.argmax(np.abs(v[:, i])))
        if v[idx, i] < 0:
            v[:, i] *= -1
            u[:, i] *= -1
    return u, v


@dataclass(frozen=True)
class TrajectoryDecomposition:
    """Eigentriples (sigma_i, v_i, psi_i) in coefficient representation."""

    singular_values: np.ndarray  # (r,), descending, positive
    right_vectors: np.ndarray  # (K, r), orthonormal columns
    left_coeffs: np.ndarray  # (Ld, r); column i holds G^{-1/2} u_i
    plan: EmbeddingPlan
    bases: tuple

    @property
    def rank(self) -> int:
        return len(self.singular_values)

    def component_matrix(self, indices) -> np.ndarray:
        """Sum of rank-one contributions sigma_i (G^{-1/2}u_i) v_i^T to B.

        ``indices`` are 0-based component positions.
        """
        idx = np.asarray(sorted(indices), dtype=int)
        s = self.singular_values[idx]
        return (self.left_coeffs[:, idx] * s) @ self.right_vectors[:, idx].T

    def export_dict(self) -> dict:
        return {
            "sigma": self.singular_values.tolist(),
            "V": self.right_vectors.tolist(),
            "Psi": self.left_coeffs.tolist(),
            "L": self.plan.L,
            "K": self.plan.K,
            "d": list(self.plan.d_per_variable),
        }


def decompose(rep: TrajectoryRep, tol: float = DEFAULT_RANK_TOL) -> TrajectoryDecomposition:
    """SVD of G^{1/2} B; components with sigma_i <= tol * sigma_1 discarded."""
    X = rep.apply_gram_sqrt(rep.B)
    try:
        u, s, vt = np.linalg.svd(X, full_matrices=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        from .errors import NumericError

        raise NumericError(f"SVD failed: {exc}") from exc
    if s.size == 0 or s[0] == 0.0:
        keep = 0
    else:
        keep = int(np.sum(s > tol * s[0]))
    u, s, vt = u[:, :keep], s[:keep], vt[:keep]
    u, v = _fix_signs(u, vt)
    psi = rep.apply_gram_inv_sqrt(u)
    return TrajectoryDecomposition(
        singular_values=s,
        right_vectors=v,
        left_coeffs=psi,
        plan=rep.plan,
        bases=rep.bases,
    )


def eigentriple_relations_check(
    dec: TrajectoryDecomposition, rep: TrajectoryRep
) -> dict:
    """Residuals of the defining relations of the eigentriples.

    Returns the max over retained components of ||X v_i - sigma_i psi_i||
    (norm in the lagged-vector space) and ||X* psi_i - sigma_i v_i||
    (Euclidean), both computed in coefficient space.
    """
    s, v, psi = dec.singular_values, dec.right_vectors, dec.left_coeffs
    forward = rep.B @ v - psi * s  # coefficients of X v_i - sigma_i psi_i
    forward_norms = np.sqrt(
        np.maximum(np.einsum("ki,ki->i", forward, rep.apply_gram(forward)), 0.0)
    )
    backward = rep.B.T @ rep.apply_gram(psi) - v * s
    backward_norms = np.linalg.norm(backward, axis=0)
    return {
        "max_forward_residual": float(forward_norms.max(initial=0.0)),
        "max_backward_residual": float(backward_norms.max(initial=0.0)),
    }


def unfolding_permutation(plan: EmbeddingPlan) -> np.ndarray:
    """Row permutation mapping the basis-major ordering of B onto the
    vertically-stacked ordering (variable-major, lag-major, local basis
    index minor). Returns ``perm`` with ``B_unfolded = B[perm]``."""
    L = plan.L
    perm = np.empty(plan.d * L, dtype=int)
    pos = 0
    for j, off in enumerate(plan.variable_offsets):
        dj = plan.d_per_variable[j]
        for r in range(L):
            for l in range(dj):
                perm[pos] = (off + l) * L + r
                pos += 1
    return perm


def vmfssa_oracle(rep: TrajectoryRep, tol: float = DEFAULT_RANK_TOL) -> dict:
    """Decompose the unfolded (vertically-stacked) representation and compare
    against the direct decomposition. Dense Gram path; small instances only."""
    dec = decompose(rep, tol=tol)
    perm = unfolding_permutation(rep.plan)
    B_u = rep.B[perm]
    G_u = rep.dense_gram()[np.ix_(perm, perm)]
    lam, vec = np.linalg.eigh(G_u)
    lam = np.maximum(lam, 1e-12 * lam[-1])
    g_half = (vec * np.sqrt(lam)) @ vec.T
    g_inv_half = (vec / np.sqrt(lam)) @ vec.T
    u, s, vt = np.linalg.svd(g_half @ B_u, full_matrices=False)
    keep = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    u, s, vt = u[:, :keep], s[:keep], vt[:keep]
    u, v = _fix_signs(u, vt)
    psi_u = g_inv_half @ u
    r = min(dec.rank, keep)
    # undo the permutation to compare left functions in the direct ordering
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    psi_back = psi_u[inv]
    return {
        "rank_direct": dec.rank,
        "rank_unfolded": keep,
        "max_sigma_diff": float(np.abs(dec.singular_values[:r] - s[:r]).max(initial=0.0)),
        "max_right_vector_diff": float(
            np.abs(dec.right_vectors[:, :r] - v[:, :r]).max(initial=0.0)
        ),
        "max_left_coeff_diff": float(
            np.abs(dec.left_coeffs[:, :r] - psi_back[:, :r]).max(initial=0.0)
        ),
    }


def render_left_functions(
    dec: TrajectoryDecomposition, variable: int, sites, components
) -> np.ndarray:
    """Evaluate the per-lag functional elements of selected left singular
    functions on sites; returns (n_components, L, n_sites)."""
    if not 0 <= variable < len(dec.bases):
        raise IndexError(f"variable {variable} out of range")
    comps = list(components)
    if any(not 0 <= i < dec.rank for i in comps):
        raise IndexError("component index out of range")
    basis = dec.bases[variable]
    plan = dec.plan
    off = plan.variable_offsets[variable]
    dj = plan.d_per_variable[variable]
    design = basis.design_matrix(sites)  # (n_sites, dj)
    L = plan.L
    out = np.empty((len(comps), L, design.shape[0]))
    for ci, i in enumerate(comps):
        block = dec.left_coeffs[off * L : (off + dj) * L, i].reshape(dj, L)
        out[ci] = (design @ block).T
    return out
