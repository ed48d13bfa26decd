"""Mean and spread of m(k) per algorithm from a ``navtime run`` CSV.

    python scripts/summarize.py results.csv [--plot curves.png]
"""

import argparse

import pandas as pd


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("csv")
    ap.add_argument("--plot", help="write a PNG of the mean curves (needs matplotlib)")
    args = ap.parse_args()

    df = pd.read_csv(args.csv)
    stats = df.groupby(["algorithm", "k"])["m"].agg(["mean", "std"]).reset_index()
    table = stats.pivot(index="k", columns="algorithm", values="mean")
    print(table.round(3).to_string())

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(5, 4))
        for alg, part in stats.groupby("algorithm"):
            ax.errorbar(part["k"], part["mean"], yerr=part["std"], label=alg, capsize=2)
        ax.set_xlabel("links added k")
        ax.set_ylabel("mean absorption time m")
        ax.legend()
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)


if __name__ == "__main__":
    main()
