"""Plot h over one period in x, next to the sawtooth approximation."""
import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from kochtube.cantor import MU, h_geometric, h_tilde
from kochtube.scaling import index_from_x


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=400)
    ap.add_argument("--output", default="h_profile.png")
    args = ap.parse_args()

    xs = np.arange(args.count) / args.count
    idx = [index_from_x(float(x)) for x in xs]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot(xs, [h_geometric(i) for i in idx], label="h (quadrature)")
    ax.plot(xs, [h_tilde(i) for i in idx], "--", label="sawtooth")
    ax.axhline(MU, color="grey", lw=0.5)
    ax.set_xlabel("{x}")
    ax.set_ylabel("formed fraction")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(args.output)


if __name__ == "__main__":
    main()
