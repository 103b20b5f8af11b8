"""Ratio of the earlier closed approximation to V(eps) across a few periods."""
import argparse

import numpy as np

from kochtube.scaling import index_from_x
from kochtube.tube import v_direct, vf_approx


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--periods", type=int, default=4)
    ap.add_argument("--per-period", type=int, default=8)
    args = ap.parse_args()

    print(f"{'x':>8} {'V':>14} {'approx':>14} {'ratio':>8}")
    for x in np.arange(1.0, 1.0 + args.periods, 1.0 / args.per_period):
        idx = index_from_x(float(x))
        v, a = v_direct(idx), vf_approx(idx)
        print(f"{x:8.3f} {v:14.8g} {a:14.8g} {a / v:8.4f}")


if __name__ == "__main__":
    main()
