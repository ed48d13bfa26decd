"""Karate club, |C| = 3: every method over 20 sampled partitions, trial-averaged m(k).

    python scripts/run_karate.py --out karate.csv
"""

import argparse

from navtime.harness import ExperimentConfig, karate_path, mean_curves, run_experiment


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--c-size", type=int, default=3)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--k-max", type=int, default=15)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    cfg = ExperimentConfig(karate_path(), args.c_size, args.trials, args.k_max,
                           master_seed=args.seed, output_path=args.out)
    curves = mean_curves(run_experiment(cfg))
    print("k        " + " ".join(f"{k:6d}" for k in range(args.k_max + 1)))
    for alg, ms in curves.items():
        print(f"{alg:<8} " + " ".join(f"{m:6.2f}" for m in ms))


if __name__ == "__main__":
    main()
