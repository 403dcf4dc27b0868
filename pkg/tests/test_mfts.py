import json

import numpy as np
import pytest

from mfssa import (
    MFTS,
    add,
    denormalize,
    evaluate,
    ingest_csv,
    ingest_dict,
    make_bspline_basis,
    normalize,
    scale,
    to_dataset_dict,
)
from mfssa.domains import interval

UNIT = interval(0.0, 1.0)


def curve_image_dataset(N=12):
    rng = np.random.default_rng(7)
    sites_1d = np.linspace(0, 1, 100)
    grid_2d = [
        [float(x), float(y)]
        for x in np.linspace(0, 1, 32)
        for y in np.linspace(0, 1, 32)
    ]
    return {
        "variables": [
            {
                "name": "curves",
                "domain": {"kind": "interval", "bounds": [0.0, 1.0]},
                "basis": {"kind": "bspline", "df": 8, "degree": 3},
                "grid": sites_1d.tolist(),
                "values": rng.standard_normal((N, 100)).tolist(),
            },
            {
                "name": "images",
                "domain": {"kind": "rectangle", "bounds": [[0.0, 1.0], [0.0, 1.0]]},
                "basis": {"kind": "tensor_bspline", "df": [4, 4], "degree": 2},
                "grid": grid_2d,
                "values": rng.standard_normal((N, 1024)).tolist(),
            },
        ]
    }


class TestIngestion:
    def test_curve_plus_image(self):
        x = ingest_dict(curve_image_dataset())
        assert x.n_variables == 2
        assert x.length == 12
        assert x.coefficients[0].shape == (8, 12)
        assert x.coefficients[1].shape == (16, 12)

    def test_mismatched_lengths_rejected(self):
        data = curve_image_dataset()
        data["variables"][1]["values"] = data["variables"][1]["values"][:-1]
        with pytest.raises(ValueError, match="length"):
            ingest_dict(data)

    def test_empty_variables_rejected(self):
        with pytest.raises(ValueError):
            ingest_dict({"variables": []})

    def test_deterministic(self):
        data = curve_image_dataset()
        a = ingest_dict(data)
        b = ingest_dict(json.loads(json.dumps(data)))
        for ca, cb in zip(a.coefficients, b.coefficients):
            assert np.array_equal(ca, cb)

    def test_csv_roundtrip(self, tmp_path):
        sites = np.linspace(0, 1, 10)
        vals = np.arange(30).reshape(10, 3)
        lines = ["site,t1,t2,t3"]
        for s, row in zip(sites, vals):
            lines.append(",".join([str(s)] + [str(v) for v in row]))
        p = tmp_path / "d.csv"
        p.write_text("\n".join(lines))
        x = ingest_csv(p)
        assert x.length == 3
        assert x.bases[0].kind == "discrete_delta"
        assert np.allclose(x.coefficients[0], vals)


class TestNormalize:
    def test_scale_matches_sample_sd(self):
        rng = np.random.default_rng(3)
        sites = np.linspace(0, 1, 50)
        vals = 1.0 + 4.0 * rng.standard_normal((8, 50))
        data = {
            "variables": [
                {
                    "name": "v",
                    "domain": {"kind": "interval", "bounds": [0.0, 1.0]},
                    "basis": {"kind": "delta"},
                    "grid": sites.tolist(),
                    "values": vals.tolist(),
                }
            ]
        }
        x = ingest_dict(data)
        normed, record = normalize(x)
        assert record.scales[0] == pytest.approx(float(np.std(vals.T)), rel=1e-12)
        assert np.allclose(normed.coefficients[0], x.coefficients[0] / record.scales[0])

    def test_unit_sd_scale_near_one(self):
        rng = np.random.default_rng(4)
        b = make_bspline_basis(UNIT, 6, 3)
        x = MFTS((b,), (rng.standard_normal((6, 200)),))
        _, record = normalize(x)
        assert 0.3 < record.scales[0] < 3.0

    def test_roundtrip_exact(self, rng):
        b = make_bspline_basis(UNIT, 6, 3)
        x = MFTS((b,), (rng.standard_normal((6, 9)),))
        normed, record = normalize(x)
        back = denormalize(normed, record)
        assert np.abs(back.coefficients[0] - x.coefficients[0]).max() < 1e-12

    def test_zero_variance_rejected(self):
        b = make_bspline_basis(UNIT, 4, 3)
        x = MFTS((b,), (np.zeros((4, 5)),))
        with pytest.raises(ValueError, match="variance"):
            normalize(x)

    def test_selected_variables_only(self, rng):
        b = make_bspline_basis(UNIT, 5, 3)
        x = MFTS((b, b), tuple(rng.standard_normal((5, 7)) for _ in range(2)))
        normed, record = normalize(x, variables=[1])
        assert record.scales[0] == 1.0
        assert np.array_equal(normed.coefficients[0], x.coefficients[0])


class TestEvaluate:
    def test_exact_roundtrip(self, rng):
        b = make_bspline_basis(UNIT, 7, 3)
        c = rng.standard_normal((7, 4))
        x = MFTS((b,), (c,))
        sites = np.linspace(0, 1, 30)
        from mfssa.basis import SampleGrid, project_samples

        c2 = project_samples(SampleGrid(sites, evaluate(x, 0, sites)), b)
        assert np.abs(c2 - c).max() < 1e-10

    def test_constant(self):
        b = make_bspline_basis(UNIT, 6, 3)
        x = MFTS((b,), (np.full((6, 3), 2.5),))
        vals = evaluate(x, 0, np.linspace(0, 1, 11))
        assert np.abs(vals - 2.5).max() < 1e-10

    def test_site_out_of_domain(self):
        b = make_bspline_basis(UNIT, 6, 3)
        x = MFTS((b,), (np.zeros((6, 3)),))
        with pytest.raises(ValueError, match="outside"):
            evaluate(x, 0, [1.5])

    def test_smoother_fit_with_more_df(self, rng):
        sites = np.linspace(0, 1, 80)
        truth = np.sin(2 * np.pi * 2.5 * sites)
        vals = truth + 0.05 * rng.standard_normal(80)
        from mfssa.basis import SampleGrid, project_samples

        def fit_rmse(df):
            b = make_bspline_basis(UNIT, df, 3)
            c = project_samples(SampleGrid(sites, vals[:, None]), b)
            return float(
                np.sqrt(np.mean((b.design_matrix(sites) @ c - vals[:, None]) ** 2))
            )

        assert fit_rmse(15) < fit_rmse(4)


class TestArithmetic:
    def test_add_inverse(self, rng):
        b = make_bspline_basis(UNIT, 5, 3)
        x = MFTS((b,), (rng.standard_normal((5, 6)),))
        z = add(x, scale(x, -1.0))
        assert np.abs(z.coefficients[0]).max() == 0.0

    def test_commutative(self, rng):
        b = make_bspline_basis(UNIT, 5, 3)
        x = MFTS((b,), (rng.standard_normal((5, 6)),))
        y = MFTS((b,), (rng.standard_normal((5, 6)),))
        assert np.array_equal(add(x, y).coefficients[0], add(y, x).coefficients[0])

    def test_vector_space_axioms(self, rng):
        b = make_bspline_basis(UNIT, 5, 3)
        x = MFTS((b,), (rng.standard_normal((5, 6)),))
        y = MFTS((b,), (rng.standard_normal((5, 6)),))
        a, c = 2.5, -1.25
        lhs = scale(add(x, y), a)
        rhs = add(scale(x, a), scale(y, a))
        assert np.abs(lhs.coefficients[0] - rhs.coefficients[0]).max() < 1e-12
        lhs2 = scale(x, a + c)
        rhs2 = add(scale(x, a), scale(x, c))
        assert np.abs(lhs2.coefficients[0] - rhs2.coefficients[0]).max() < 1e-12

    def test_basis_mismatch(self, rng):
        b1 = make_bspline_basis(UNIT, 5, 3)
        b2 = make_bspline_basis(UNIT, 6, 3)
        x = MFTS((b1,), (rng.standard_normal((5, 6)),))
        y = MFTS((b2,), (rng.standard_normal((6, 6)),))
        with pytest.raises(ValueError):
            add(x, y)


def test_export_schema_roundtrip(rng):
    b = make_bspline_basis(UNIT, 6, 3)
    x = MFTS((b,), (rng.standard_normal((6, 4)),))
    again = ingest_dict(to_dataset_dict(x))
    assert np.abs(again.coefficients[0] - x.coefficients[0]).max() < 1e-8
