"""Time the numba-jitted kernels against the pure-python/numpy fallback.

When numba is active each kernel keeps its uncompiled source reachable
as ``<kernel>.py_func``, so both paths can be timed in one process. Run
with ``ARTINDEX_NO_NUMBA=1`` to confirm the fallback stands alone.

    python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from artindex import kernels
from artindex.csvio import load_bundled_dataset
from artindex.indexes import hpm_method
from artindex.monotonicity import search_violations
from artindex.regression import ModelSpec


def timed(fn, *args, repeat: int = 2000) -> float:
    fn(*args)  # warm up (triggers compilation on the jitted path)
    start = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - start) / repeat


def bench_pair(name: str, fn, *args, repeat: int = 2000) -> None:
    jitted = timed(fn, *args, repeat=repeat)
    fallback = getattr(fn, "py_func", None)
    if fallback is None:
        print(f"{name:<28s} {jitted * 1e6:>10.2f} us/call   (numba disabled: single path)")
        return
    pure = timed(fallback, *args, repeat=max(repeat // 10, 10))
    print(
        f"{name:<28s} jit {jitted * 1e6:>9.2f} us/call   "
        f"numpy {pure * 1e6:>9.2f} us/call   speedup {pure / jitted:>6.1f}x"
    )


def main() -> None:
    print(f"numba enabled: {kernels.NUMBA_ENABLED}")
    rng = np.random.default_rng(42)
    x = rng.standard_normal((29, 4))
    y = rng.standard_normal(29)
    r, qty = kernels.householder_factor(x, y)

    bench_pair("householder_factor 29x4", kernels.householder_factor, x, y)
    bench_pair("solve_upper_triangular", kernels.solve_upper_triangular, r, qty)
    bench_pair("invert_upper_triangular", kernels.invert_upper_triangular, r)
    bench_pair(
        "regularized_incomplete_beta",
        kernels.regularized_incomplete_beta,
        12.5,
        0.5,
        0.817,
        repeat=20000,
    )

    ds = load_bundled_dataset()
    spec = ModelSpec(regressors=("area", "aspect_ratio"), reference_period="A")
    start = time.perf_counter()
    report = search_violations(ds, hpm_method(spec))
    elapsed = time.perf_counter() - start
    print(
        f"{'hpm grid sweep (300 refits)':<28s} {elapsed * 1e3:>10.1f} ms total   "
        f"({len(report.violations)} violations found)"
    )


if __name__ == "__main__":
    main()
