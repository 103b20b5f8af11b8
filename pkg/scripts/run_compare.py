"""Direct, Fourier and Monte Carlo values of V(eps) on a log grid, as CSV."""
import argparse
import sys

import numpy as np

from kochtube.geometry import oracle_inner_area
from kochtube.scaling import epsilon_of, index_of
from kochtube.tube import v_direct, v_tube


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--x-min", type=float, default=0.6)
    ap.add_argument("--x-max", type=float, default=4.5)
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--samples", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()

    print("x,epsilon,v_direct,v_tube,oracle,std_error,bias,ok")
    for x in np.linspace(args.x_min, args.x_max, args.count):
        eps = epsilon_of(float(x))
        vd = v_direct(eps)
        vt = v_tube(eps).V if index_of(eps).frac > 0 else float("nan")
        o = oracle_inner_area(eps, args.samples, args.seed)
        ok = abs(vd - o.area_mean) <= 3 * o.std_error + o.bias_bound
        print(f"{x:.4f},{eps:.10g},{vd:.10g},{vt:.10g},{o.area_mean:.10g},"
              f"{o.std_error:.3g},{o.bias_bound:.3g},{int(ok)}")
        sys.stdout.flush()


if __name__ == "__main__":
    main()
