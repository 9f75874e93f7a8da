"""Timing comparison of the compiled kernel against the pure numpy fallback.

Run as a script: python benchmarks/bench_kernel.py [--repeat N]
Covers the two kernel entry points on their heaviest realistic inputs:
identity scanning over random order-6 ternary tables and the full order-3
candidate sweep (531441 tables).
"""

from __future__ import annotations

import argparse
import random
import time

from finact import kernel
from finact import _kernel_py


def _backends():
    backends = [("pure", _kernel_py)]
    if kernel.BACKEND == "compiled":
        from finact import _kernel

        backends.insert(0, ("compiled", _kernel))
    return backends


def _random_tables(n: int, count: int, seed: int) -> list[tuple[int, ...]]:
    rng = random.Random(seed)
    return [
        tuple(rng.randrange(n) for _ in range(n**3)) for _ in range(count)
    ]


def bench_flags(repeat: int) -> None:
    n = 6
    tables = _random_tables(n, 200, seed=20240901)
    print(f"flags_bitmask: {len(tables)} random order-{n} tables")
    for name, mod in _backends():
        best = min(
            _time(lambda: [mod.flags_bitmask(t, n) for t in tables])
            for _ in range(repeat)
        )
        print(f"  {name:9s} {best * 1000:9.1f} ms")


def bench_scan(repeat: int) -> None:
    print("scan_a1a2_n3: all 531441 order-3 candidates")
    for name, mod in _backends():
        best = min(_time(mod.scan_a1a2_n3) for _ in range(repeat))
        print(f"  {name:9s} {best * 1000:9.1f} ms")


def _time(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    print(f"active backend: {kernel.BACKEND}")
    bench_flags(args.repeat)
    bench_scan(args.repeat)


if __name__ == "__main__":
    main()
