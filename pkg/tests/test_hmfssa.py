import numpy as np
import pytest

from mfssa import (
    MFTS,
    CommonDomainError,
    Grouping,
    hmfssa_decompose,
    hmfssa_embed,
    hmfssa_reconstruct,
    make_bspline_basis,
    make_delta_basis,
    mssa_decompose,
)
from conftest import UNIT


def shared_basis_series(rng, p=2, N=30, df=5):
    b = make_bspline_basis(UNIT, df, 3)
    return MFTS(tuple(b for _ in range(p)), tuple(rng.standard_normal((df, N)) for _ in range(p)))


class TestEmbed:
    def test_shape_and_column_blocks(self, rng):
        x = shared_basis_series(rng, p=3, N=20, df=4)
        rep = hmfssa_embed(x, 5)
        assert rep.B_h.shape == (4 * 5, 3 * 16)
        # column block j is the single-variable embedding of variable j
        for j in range(3):
            single = hmfssa_embed(MFTS((x.bases[j],), (x.coefficients[j],)), 5)
            assert np.array_equal(rep.B_h[:, j * 16 : (j + 1) * 16], single.B_h)

    def test_hand_example(self):
        b = make_delta_basis([0.5], cell_measure=1.0)
        x = MFTS((b, b), (np.array([[1.0, 2.0, 3.0]]), np.array([[7.0, 8.0, 9.0]])))
        rep = hmfssa_embed(x, 2)
        assert np.array_equal(rep.B_h, [[1, 2, 7, 8], [2, 3, 8, 9]])

    def test_mixed_bases_rejected(self, rng):
        b1 = make_bspline_basis(UNIT, 5, 3)
        b2 = make_bspline_basis(UNIT, 6, 3)
        x = MFTS((b1, b2), (rng.standard_normal((5, 10)), rng.standard_normal((6, 10))))
        with pytest.raises(CommonDomainError):
            hmfssa_embed(x, 3)

    def test_bad_lag(self, rng):
        x = shared_basis_series(rng, N=10)
        with pytest.raises(ValueError):
            hmfssa_embed(x, 10)


class TestDecompose:
    def test_orthonormal_factors(self, rng):
        x = shared_basis_series(rng, p=2, N=30)
        rep = hmfssa_embed(x, 6)
        dec = hmfssa_decompose(rep)
        assert np.abs(
            dec.right_vectors.T @ dec.right_vectors - np.eye(dec.rank)
        ).max() < 1e-10
        lg = dec.left_coeffs.T @ rep.apply_gram_sqrt(rep.apply_gram_sqrt(dec.left_coeffs))
        assert np.abs(lg - np.eye(dec.rank)).max() < 1e-9

    def test_component_sum_recovers(self, rng):
        x = shared_basis_series(rng, p=2, N=25)
        rep = hmfssa_embed(x, 5)
        dec = hmfssa_decompose(rep)
        total = dec.component_matrix(range(dec.rank))
        assert np.abs(total - rep.B_h).max() < 1e-9

    def test_delta_basis_matches_horizontal_mssa(self, rng):
        n_sites, N, L = 30, 25, 5
        vals1 = rng.standard_normal((n_sites, N))
        vals2 = rng.standard_normal((n_sites, N))
        b = make_delta_basis(np.linspace(0, 1, n_sites, endpoint=False))
        x = MFTS((b, b), (vals1, vals2))
        dec_f = hmfssa_decompose(hmfssa_embed(x, L))
        # explicit-loop oracle for the discrete trajectory matrix
        K = N - L + 1
        blocks = []
        for vals in (vals1, vals2):
            blk = np.zeros((n_sites * L, K))
            for q in range(n_sites):
                for r in range(L):
                    for k in range(K):
                        blk[q * L + r, k] = vals[q, k + r]
            blocks.append(blk)
        ref = np.linalg.svd(np.hstack(blocks), compute_uv=False)
        c = b.cell_measure
        r = dec_f.rank
        assert np.abs(dec_f.singular_values - np.sqrt(c) * ref[:r]).max() < 1e-9

    def test_export_dict(self, rng):
        x = shared_basis_series(rng, p=2, N=20)
        dec = hmfssa_decompose(hmfssa_embed(x, 4))
        out = dec.export_dict()
        assert out["variant"] == "hmfssa"
        assert out["p"] == 2
        assert len(out["V"]) == 2 * dec.rep.K


class TestReconstruct:
    def test_full_grouping_roundtrip(self, rng):
        x = shared_basis_series(rng, p=3, N=24)
        dec = hmfssa_decompose(hmfssa_embed(x, 5))
        out = hmfssa_reconstruct(dec, Grouping((tuple(range(1, dec.rank + 1)),)), x)
        for got, want in zip(out.series[0].coefficients, x.coefficients):
            assert np.abs(got - want).max() < 1e-9

    def test_residual_partition(self, rng):
        x = shared_basis_series(rng, p=2, N=24)
        dec = hmfssa_decompose(hmfssa_embed(x, 5))
        out = hmfssa_reconstruct(dec, Grouping(((1, 2),)), x, include_residual=True)
        assert out.labels[-1] == "residual"
        for j in range(2):
            total = sum(s.coefficients[j] for s in out.series)
            assert np.abs(total - x.coefficients[j]).max() < 1e-9

    def test_source_mismatch(self, rng):
        x = shared_basis_series(rng, p=2, N=24)
        y = shared_basis_series(rng, p=2, N=23)
        dec = hmfssa_decompose(hmfssa_embed(x, 5))
        with pytest.raises(ValueError, match="match"):
            hmfssa_reconstruct(dec, Grouping(((1,),)), y)
