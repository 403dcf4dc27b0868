"""Command line interface: analyze | simulate | serve."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .decomposition import decompose
from .embedding import embed
from .errors import MfssaError
from .mfts import ingest, ingest_csv, normalize, to_dataset_dict
from .reconstruction import Grouping, reconstruct
from .separability import wcorrelation_matrix
from .simulation import (
    FAR1_NORMS,
    NOISE_KINDS,
    SimConfig,
    gamma0_for_norm,
    kernel_norm_sq,
    run_study,
    write_rmse_csv,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mfssa",
        description="Multivariate functional singular spectrum analysis",
    )
    parser.add_argument("--seed", type=int, default=0, help="global RNG seed")
    parser.add_argument(
        "--threads", type=int, default=0, help="BLAS thread cap (0 = library default)"
    )
    parser.add_argument(
        "--tolerance", type=float, default=1e-12, help="relative rank tolerance"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="decompose a dataset and export results")
    p_an.add_argument("--input", required=True, help="dataset JSON (or CSV) path")
    p_an.add_argument("--lag", type=int, required=True, help="window length L")
    p_an.add_argument("--groups", default=None, help='grouping, e.g. "1;2,3;4,5"')
    p_an.add_argument("--out", required=True, help="output directory")
    p_an.add_argument(
        "--normalize",
        action="store_true",
        help="divide each variable by its sample standard deviation",
    )
    p_an.add_argument(
        "--residual",
        action="store_true",
        help="also emit the residual (ungrouped components) reconstruction",
    )

    p_sim = sub.add_parser("simulate", help="run the reconstruction-error study")
    p_sim.add_argument("--preset", choices=("desk", "full"), default="desk")
    p_sim.add_argument("--full", action="store_true", help="alias for --preset full")
    p_sim.add_argument("--out", default="rmse.csv", help="output CSV path")
    p_sim.add_argument(
        "--noise", action="append", choices=NOISE_KINDS, default=None
    )
    p_sim.add_argument("--replicates", type=int, default=None)
    p_sim.add_argument(
        "--norm-check",
        action="store_true",
        help="print the re-quadratured squared kernel norms and exit",
    )

    p_srv = sub.add_parser("serve", help="start the analysis server")
    p_srv.add_argument("--port", type=int, default=8000)
    p_srv.add_argument("--host", default="127.0.0.1")
    return parser


def _apply_thread_cap(threads: int):
    if threads <= 0:
        return
    try:
        import threadpoolctl

        threadpoolctl.threadpool_limits(threads)
    except ImportError:
        print("threadpoolctl not installed; --threads ignored", file=sys.stderr)


def _load_input(path: str):
    p = Path(path)
    if p.suffix.lower() == ".csv":
        return ingest_csv(p)
    return ingest(p)


def cmd_analyze(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    series = _load_input(args.input)
    if args.normalize:
        series, record = normalize(series)
        (out_dir / "normalization.json").write_text(
            json.dumps({"scales": list(record.scales)}, indent=2)
        )
    dec = decompose(embed(series, args.lag), tol=args.tolerance)
    payload = dec.export_dict()
    (out_dir / "decomposition.json").write_text(json.dumps(payload))

    # plot data: scree, right-vector series, paired coordinates
    sigma = dec.singular_values
    sq = sigma**2
    n_show = min(dec.rank, 12)
    plotdata = {
        "scree": {
            "sigma": sigma.tolist(),
            "cumulative_share": np.cumsum(sq / sq.sum()).tolist() if sq.sum() else [],
        },
        "right_vectors": dec.right_vectors[:, :n_show].T.tolist(),
        "paired": [
            {
                "components": [i + 1, i + 2],
                "coordinates": np.stack(
                    [dec.right_vectors[:, i], dec.right_vectors[:, i + 1]], axis=1
                ).tolist(),
            }
            for i in range(n_show - 1)
        ],
    }
    (out_dir / "plotdata.json").write_text(json.dumps(plotdata))

    # elementary w-correlation diagnostic
    n_el = min(dec.rank, 12)
    elementary = reconstruct(
        dec, Grouping(tuple((i,) for i in range(1, n_el + 1))), series
    )
    wc = wcorrelation_matrix(elementary.series, args.lag, elementary.labels)
    with open(out_dir / "wcorrelation.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["component"] + [str(i) for i in range(1, n_el + 1)])
        for i, row in enumerate(wc, start=1):
            writer.writerow([i] + [f"{v:.10f}" for v in row])

    if args.groups:
        grouping = Grouping.parse(args.groups)
        grouping.validate_rank(dec.rank)
        recs = reconstruct(dec, grouping, series, include_residual=args.residual)
        for label, rec, share in zip(recs.labels, recs.series, recs.shares):
            data = to_dataset_dict(rec)
            data["group"] = label
            data["share"] = share
            safe = label.replace(",", "_")
            (out_dir / f"reconstruction_{safe}.json").write_text(json.dumps(data))
        group_wc = wcorrelation_matrix(recs.series, args.lag, recs.labels)
        with open(out_dir / "wcorrelation_groups.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["group"] + list(recs.labels))
            for label, row in zip(recs.labels, group_wc):
                writer.writerow([label] + [f"{v:.10f}" for v in row])
    return 0


def _preset_configs(preset: str, seed: int, noises, replicates) -> list[SimConfig]:
    if preset == "desk":
        noises = noises or ("white", "far1_05")
        reps = replicates or 20
        return [
            SimConfig(
                N=100,
                L=20,
                k=0.02,
                omega1=0.1,
                omega2=0.25,
                noise=nz,
                replicates=reps,
                seed=seed,
            )
            for nz in noises
        ]
    noises = noises or NOISE_KINDS
    reps = replicates or 100
    configs = []
    for N in (100, 200):
        for L in (20, 40):
            for k in (0.0, 0.02):
                for w1 in (0.1, 0.5):
                    for w2 in (0.0, 0.25):
                        for nz in noises:
                            configs.append(
                                SimConfig(
                                    N=N,
                                    L=L,
                                    k=k,
                                    omega1=w1,
                                    omega2=w2,
                                    noise=nz,
                                    replicates=reps,
                                    seed=seed,
                                )
                            )
    return configs


def cmd_simulate(args) -> int:
    if args.norm_check:
        for name, target in sorted(FAR1_NORMS.items()):
            g = gamma0_for_norm(target)
            print(f"{name}: target norm^2 = {target**2:.2f}, "
                  f"re-quadratured = {kernel_norm_sq(g):.12f}")
        return 0
    preset = "full" if args.full else args.preset
    configs = _preset_configs(preset, args.seed, args.noise, args.replicates)
    rows = run_study(configs)
    write_rmse_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    _apply_thread_cap(args.threads)
    try:
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "simulate":
            return cmd_simulate(args)
        return cmd_serve(args)
    except (MfssaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
