"""Compare the compiled kernel extension against its pure-Python twin.

Runs each kernel family over a fixed random workload with ``timeit`` and
prints per-call timings plus the speedup of the compiled backend.  Exits
with an explanation if the extension is not built.

Usage::

    python3 benchmarks/bench_kernels.py [--repeats N] [--calls N]
"""
from __future__ import annotations

import argparse
import random
import timeit

import conicsteps._kernels_py as kpy

try:
    import conicsteps._kernels as kc
except ImportError:  # pragma: no cover - depends on the build
    kc = None


def make_workloads(n: int) -> dict[str, tuple[str, list[tuple]]]:
    """Map benchmark name -> (kernel function name, argument tuples)."""
    rng = random.Random(20260826)
    on_curve = []
    for _ in range(n):
        a = rng.uniform(1.0, 10.0)
        b = rng.uniform(0.3 * a, a)
        t = rng.uniform(0.0, kpy.TWO_PI)
        x, y = kpy.ellipse_point(a, b, t)
        on_curve.append((a, b, x, y))
    residual = [(a, b, x + rng.uniform(-0.5, 0.5), y + rng.uniform(-0.5, 0.5))
                for (a, b, x, y) in on_curve]
    points = [(a, b, rng.uniform(0.0, kpy.TWO_PI)) for (a, b, _, _) in on_curve]
    rays = [
        (a, b, rng.uniform(-12, 12), rng.uniform(-12, 12),
         rng.uniform(-1, 1), rng.uniform(-1, 1))
        for (a, b, _, _) in on_curve
    ]
    quads = []
    for _ in range(n):
        qa = rng.uniform(-2, 2)
        qb = rng.uniform(-2, 2)
        qc = rng.uniform(-2, 2)
        if rng.random() < 0.25 and qa != 0.0:
            qc = qb * qb / (4.0 * qa) + rng.uniform(-1e-9, 1e-9)
        quads.append((qa, qb, qc, 1e-7))
    nearest = [(a, b, x + rng.uniform(-0.3, 0.3), y + rng.uniform(-0.3, 0.3),
                257, 64) for (a, b, x, y) in on_curve]
    return {
        "ellipse_residual": ("ellipse_residual", residual),
        "ellipse_gradient": ("ellipse_gradient", residual),
        "ellipse_point": ("ellipse_point", points),
        "ellipse_ray_coeffs": ("ellipse_ray_coeffs", rays),
        "quadratic_roots": ("quadratic_roots", quads),
        "ellipse_nearest_param": ("ellipse_nearest_param", nearest),
    }


def time_batch(func, args_list: list[tuple], repeats: int) -> float:
    """Best-of-N seconds for one sweep over the whole argument list."""
    def run() -> None:
        for args in args_list:
            func(*args)

    return min(timeit.repeat(run, number=1, repeat=repeats))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=7,
                        help="timing repeats per workload (best is kept)")
    parser.add_argument("--calls", type=int, default=20000,
                        help="kernel calls per workload sweep")
    opts = parser.parse_args()

    if kc is None:
        raise SystemExit(
            "compiled extension conicsteps._kernels is not built; "
            "run 'pip install -e .' first"
        )

    workloads = make_workloads(opts.calls)
    name_w = max(len(name) for name in workloads)
    print(f"{opts.calls} calls per sweep, best of {opts.repeats} sweeps\n")
    print(f"{'kernel':<{name_w}}  {'python/call':>12}  {'compiled/call':>13}  "
          f"{'speedup':>7}")
    total_py = total_c = 0.0
    for name, (attr, args_list) in workloads.items():
        t_py = time_batch(getattr(kpy, attr), args_list, opts.repeats)
        t_c = time_batch(getattr(kc, attr), args_list, opts.repeats)
        total_py += t_py
        total_c += t_c
        per_py = t_py / opts.calls
        per_c = t_c / opts.calls
        print(f"{name:<{name_w}}  {per_py * 1e9:>10.1f} ns  "
              f"{per_c * 1e9:>11.1f} ns  {t_py / t_c:>6.1f}x")
    print(f"\n{'overall':<{name_w}}  {'':>12}  {'':>13}  "
          f"{total_py / total_c:>6.1f}x")


if __name__ == "__main__":
    main()
