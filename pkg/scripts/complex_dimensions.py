"""List the possible complex dimensions with the size of their coefficients."""
import argparse

from kochtube.tube import complex_dimensions


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--h-mode", choices=("geometric", "approximate"), default="geometric")
    args = ap.parse_args()

    for d in complex_dimensions(args.n, h_mode=args.h_mode):
        if d.n >= 0:
            print(f"{d.line:>2} {d.value.real:8.5f} {d.value.imag:+10.5f}i  |coef| = {d.magnitude:.4e}")


if __name__ == "__main__":
    main()
