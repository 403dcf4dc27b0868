import numpy as np
import pytest

from mfssa import (
    MFTS,
    Grouping,
    decompose,
    embed,
    make_delta_basis,
    mssa_decompose,
    mssa_embed,
    mssa_reconstruct,
)


class TestMssaEmbed:
    def test_scalar_hankel(self):
        X = mssa_embed(np.array([[1.0, 2.0, 3.0, 4.0, 5.0]]), 2)
        assert np.array_equal(X, [[1, 2, 3, 4], [2, 3, 4, 5]])

    def test_vertical_stacking_order(self):
        vals = np.array([[1.0, 2.0, 3.0], [7.0, 8.0, 9.0]])
        X = mssa_embed(vals, 2, "vertical")
        assert np.array_equal(X, [[1, 2], [2, 3], [7, 8], [8, 9]])

    def test_horizontal_stacking_order(self):
        vals = np.array([[1.0, 2.0, 3.0], [7.0, 8.0, 9.0]])
        X = mssa_embed(vals, 2, "horizontal")
        assert np.array_equal(X, [[1, 2, 7, 8], [2, 3, 8, 9]])

    def test_bad_args(self):
        with pytest.raises(ValueError):
            mssa_embed(np.zeros((1, 5)), 5)
        with pytest.raises(ValueError):
            mssa_embed(np.zeros((1, 5)), 2, "diagonal")


class TestMssaDecompose:
    def test_sigma_against_dense_svd(self, rng):
        vals = rng.standard_normal((3, 30))
        dec = mssa_decompose(vals, 6)
        ref = np.linalg.svd(mssa_embed(vals, 6), compute_uv=False)
        assert np.abs(dec.singular_values - ref[: dec.rank]).max() < 1e-10

    def test_single_series_stackings_share_sigma(self, rng):
        # with one variable the two stackings build the same matrix
        vals = rng.standard_normal((1, 25))
        a = mssa_decompose(vals, 5, "vertical")
        b = mssa_decompose(vals, 5, "horizontal")
        r = min(a.rank, b.rank)
        assert np.abs(a.singular_values[:r] - b.singular_values[:r]).max() < 1e-9

    def test_rank_one(self):
        dec = mssa_decompose(np.ones((2, 10)), 3)
        assert dec.rank == 1


class TestMssaReconstruct:
    @pytest.mark.parametrize("stacking", ["vertical", "horizontal"])
    def test_full_grouping_roundtrip(self, rng, stacking):
        vals = rng.standard_normal((3, 25))
        dec = mssa_decompose(vals, 5, stacking)
        rec = mssa_reconstruct(dec, Grouping((tuple(range(1, dec.rank + 1)),)))
        assert np.abs(rec[0] - vals).max() < 1e-10

    def test_groups_sum_to_whole(self, rng):
        vals = rng.standard_normal((2, 25))
        dec = mssa_decompose(vals, 5)
        cut = dec.rank // 2
        rec = mssa_reconstruct(
            dec, Grouping((tuple(range(1, cut + 1)), tuple(range(cut + 1, dec.rank + 1))))
        )
        assert np.abs(rec[0] + rec[1] - vals).max() < 1e-9


class TestDeltaEquivalence:
    def test_mfssa_with_delta_basis_matches_vmssa(self, rng):
        # the functional route over a discrete delta basis must agree with
        # plain vector MSSA up to the sqrt of the cell measure on sigma
        n_sites, N, L = 40, 30, 6
        vals = rng.standard_normal((n_sites, N))
        b = make_delta_basis(np.linspace(0, 1, n_sites, endpoint=False))
        x = MFTS((b,), (vals,))
        dec_f = decompose(embed(x, L))
        dec_v = mssa_decompose(vals, L, "vertical")
        r = min(dec_f.rank, dec_v.rank)
        c = b.cell_measure
        assert np.abs(
            dec_f.singular_values[:r] - np.sqrt(c) * dec_v.singular_values[:r]
        ).max() < 1e-9
        assert np.abs(
            np.abs(dec_f.right_vectors[:, :r]) - np.abs(dec_v.right_vectors[:, :r])
        ).max() < 1e-8
