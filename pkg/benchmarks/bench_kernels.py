"""Benchmark the raster kernels: compiled extension vs pure numpy.

Runs the pairwise and the ellipsoid kernels on identical inputs at a few
resolutions, checks the outputs agree bit for bit, and prints a timing
table with the speedup factor.

    python3 benchmarks/bench_kernels.py [--resolutions 256,512,1024] [--repeat 3]
"""

import argparse
import time

import numpy as np

from elliptic_tubes import Tube, square, ellipse
from elliptic_tubes._kernels import implementations


def _inputs_pairwise(resolution):
    domain = square()
    tube = Tube(domain)
    rows = domain.rows()
    anchor = np.array([0.05 + 0.2j, -0.1 + 0.35j])
    direction = np.array([0.8 - 0.1j, 0.55 + 0.3j])
    fam_a = rows @ np.append(anchor, 1.0)
    fam_b = rows @ np.append(direction, 0.0)
    w = np.linspace(-4.0, 4.0, resolution)
    return (fam_a, fam_b, w, w)


def _inputs_ellipsoid(resolution):
    domain = ellipse()
    center, shape = domain.ellipsoid_data()
    anchor = np.array([0.1 + 0.1j, -0.05 + 0.2j])
    direction = np.array([0.7 + 0.2j, 0.4 - 0.5j])
    aff_a = np.append(anchor, 1.0)
    aff_b = np.append(direction, 0.0)
    w = np.linspace(-3.0, 3.0, resolution)
    return (center, shape, aff_a, aff_b, w, w)


def _time(func, args, repeat):
    best = np.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = func(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--resolutions", default="256,512,1024")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    resolutions = [int(tok) for tok in args.resolutions.split(",")]

    impls = implementations()
    if "compiled" not in impls:
        print("compiled extension not available; benchmarking numpy only")
    header = f"{'kernel':<10} {'res':>6} " + " ".join(
        f"{name:>12}" for name in impls
    )
    if len(impls) == 2:
        header += f" {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for kernel, make in (("pairwise", _inputs_pairwise), ("ellipsoid", _inputs_ellipsoid)):
        for res in resolutions:
            inputs = make(res)
            times = {}
            outputs = {}
            for name, impl in impls.items():
                func = getattr(impl, f"{kernel}_bitmap")
                times[name], outputs[name] = _time(func, inputs, args.repeat)
            if len(outputs) == 2:
                a, b = outputs.values()
                if not np.array_equal(a, b):
                    raise SystemExit(f"{kernel} kernels disagree at {res}")
            row = f"{kernel:<10} {res:>6} " + " ".join(
                f"{times[name] * 1e3:>10.2f}ms" for name in impls
            )
            if len(impls) == 2:
                row += f" {times['numpy'] / times['compiled']:>8.1f}x"
            print(row)
    print("outputs agree bit for bit" if len(impls) == 2 else "")


if __name__ == "__main__":
    main()
