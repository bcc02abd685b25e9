"""Benchmark: compiled kernel core vs the pure-Python/numpy fallback.

Times the workloads that dominate the toolkit's runtime:

* scalar Sellmeier / group-index / angle-tuned evaluations (the residual
  callbacks inside the bracketing root-finders),
* flat array evaluation over a 512^2 grid's worth of points (the JSA fill),
* the end-to-end Table-I style GVM solve and a 512^2 JSA+SVD, run in a
  subprocess per backend via PDCSIM_PURE.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from pdcsim.kernels import _pure

try:
    from pdcsim.kernels import _core
except ImportError:
    _core = None

KDP_O = (15.264496, np.array([5202.088, 0.01008956]), np.array([400.0, 0.012942625]), 0.0)
KDP_E = (5.360660, np.array([1291.19696, 0.008637494]), np.array([400.0, 0.012281043]), 0.0)


def time_fn(fn, *args, repeat=5, number=1):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(number):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / number)
    return best


def scalar_loop(mod, n):
    A, B, C, D = KDP_O
    Ae, Be, Ce, De = KDP_E
    acc = 0.0
    wl = 0.83
    for j in range(n):
        w = wl + 1e-7 * j
        acc += mod.group_index_scalar(A, B, C, D, w)
        acc += mod.angle_group_index_scalar(A, B, C, D, Ae, Be, Ce, De, 1.18, w)
    return acc


def array_eval(mod, wl, theta):
    A, B, C, D = KDP_O
    Ae, Be, Ce, De = KDP_E
    if hasattr(mod, "angle_index_flat"):
        mod.index_flat(A, B, C, D, wl)
        mod.angle_group_index_flat(A, B, C, D, Ae, Be, Ce, De, theta, wl)
    else:
        mod.index_array(A, B, C, D, wl)
        mod.angle_group_index_array(A, B, C, D, Ae, Be, Ce, De, theta, wl)


def end_to_end(env_value, quick):
    code = (
        "import time, math; t0=time.time(); "
        "from pdcsim import dispersion as d, phasematching as pm, jsa, schmidt; "
        "sol = pm.find_gvm_wavelength(d.load_crystal('KDP'), 'type2', 0.0); "
        "t1=time.time(); "
        "cfg = pm.PdcConfig.build('KDP','type2',415.0,3.0,5.0); "
        f"grid = jsa.FrequencyGrid.centered(cfg, {128 if quick else 512}, 5.0); "
        "dec = schmidt.decompose(jsa.build_jsa(cfg, grid)); t2=time.time(); "
        "print(f'{t1-t0:.3f} {t2-t1:.3f}')"
    )
    env = dict(os.environ, PDCSIM_PURE=env_value)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    if out.returncode != 0:
        raise RuntimeError(out.stderr)
    gvm, grid = (float(x) for x in out.stdout.split())
    return gvm, grid


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args()

    n_scalar = 2000 if args.quick else 20000
    n_points = 256 * 256 if args.quick else 512 * 512
    rng = np.random.default_rng(0)
    wl = rng.uniform(0.4, 1.2, n_points)
    theta = rng.uniform(0.0, 1.5, n_points)

    backends = [("pure", _pure)]
    if _core is not None:
        backends.append(("compiled", _core))

    print(f"{'workload':<34}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    rows = [
        (f"scalar eval loop ({2 * n_scalar} calls)", lambda mod: scalar_loop(mod, n_scalar)),
        (f"array eval ({n_points} points)", lambda mod: array_eval(mod, wl, theta)),
    ]
    for label, work in rows:
        times = [time_fn(work, mod) for _, mod in backends]
        speed = times[0] / times[-1] if len(times) > 1 else 1.0
        print(f"{label:<34}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times) + f"{speed:>9.1f}x")

    print("\nend-to-end (subprocess per backend):")
    gvm_p, grid_p = end_to_end("1", args.quick)
    print(f"{'KDP Table-I GVM solve':<34}{gvm_p * 1e3:>10.0f}ms", end="")
    if _core is not None:
        gvm_c, grid_c = end_to_end("", args.quick)
        print(f"{gvm_c * 1e3:>10.0f}ms{gvm_p / gvm_c:>9.1f}x")
        print(f"{'JSA build + SVD':<34}{grid_p * 1e3:>10.0f}ms{grid_c * 1e3:>10.0f}ms"
              f"{grid_p / grid_c:>9.1f}x")
    else:
        print(f"\n{'JSA build + SVD':<34}{grid_p * 1e3:>10.0f}ms")


if __name__ == "__main__":
    main()
