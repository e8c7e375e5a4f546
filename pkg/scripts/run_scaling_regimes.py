#!/usr/bin/env python3
"""Estimator behaviour in the two multi-network asymptotic regimes.

Regime 1 fixes the number of graphs and grows every graph (consistency:
MISE and latent MAE both head to zero). Regime 2 fixes the graph size and
grows the number of graphs (MISE plateaus at a non-zero floor because
per-node degree noise never shrinks). Emits one plot-ready CSV per regime.
"""
import argparse

from multigraphon.bench import (
    ExperimentConfig,
    SizeSpec,
    format_summary,
    run_benchmark,
    summarize,
    write_results_csv,
)


def sweep(axis, values, fixed, args):
    cfg = ExperimentConfig(
        graphon_ids=(args.graphon,),
        num_graphs=fixed if axis == "n" else 1,
        sizes=SizeSpec("fixed", n=fixed if axis == "M" else 1),
        trials=args.trials,
        seed=args.seed,
        methods=("jgs",),
        resolution=args.res,
        sweep=axis,
        sweep_values=tuple(values),
    )
    records = run_benchmark(cfg)
    print(format_summary(summarize(records)))
    return records


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--graphon", type=int, default=1)
    parser.add_argument("--fixed-M", type=int, default=30)
    parser.add_argument("--n-values", default="30,100,300,1000")
    parser.add_argument("--fixed-n", type=int, default=30)
    parser.add_argument("--M-values", default="10,30,100,300,1000")
    parser.add_argument("--trials", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--res", type=int, default=1000)
    parser.add_argument("--out-prefix", default="scaling")
    args = parser.parse_args()

    n_values = [int(x) for x in args.n_values.split(",")]
    rows = sweep("n", n_values, args.fixed_M, args)
    out_n = f"{args.out_prefix}_growing_n.csv"
    write_results_csv(rows, out_n)
    print(f"regime 1 (M={args.fixed_M} fixed): {len(rows)} rows -> {out_n}\n")

    m_values = [int(x) for x in args.M_values.split(",")]
    rows = sweep("M", m_values, args.fixed_n, args)
    out_m = f"{args.out_prefix}_growing_M.csv"
    write_results_csv(rows, out_m)
    print(f"regime 2 (n={args.fixed_n} fixed): {len(rows)} rows -> {out_m}")


if __name__ == "__main__":
    main()
