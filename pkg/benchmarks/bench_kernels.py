"""Time the compiled kernels against the numpy fallback on group products.

    python3 benchmarks/bench_kernels.py [--size 2000] [--repeat 3]
"""

import argparse
import json
import random
import time

from parahoric import kernels
from parahoric.group import make_group

GROUPS = [
    {"family": "GL", "n": 2, "ring": "unram(p=3,m=1,h=2)"},
    {"family": "GL", "n": 3, "ring": "equichar(p=3,m=1,h=2)", "f": ["1/2", "1/2"]},
    {"family": "Sp4", "ring": "unram(p=3,m=1,h=2)"},
    {"family": "HeteroBlock", "n": 2, "ring": "ram(p=3,e=2,c=1,h=3)",
     "ring2": "ram(p=3,e=2,c=2,h=3)"},
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench(spec, size, repeat):
    G = make_group(spec)
    rng = random.Random(0)
    A = kernels.as_array([G.random_element(rng) for _ in range(size)])
    B = kernels.as_array([G.random_element(rng) for _ in range(size)])
    kernels.group_tables(G)
    side = min(size, 300)
    A2, B2 = A[:side], B[:side]
    row = {"group": G.describe()["family"], "n": G.n, "pairs": size, "closure_grid": side * side}
    impls = {"numpy": kernels.pure}
    if kernels.BACKEND == "cython":
        impls["cython"] = kernels._impl
    for name, impl in impls.items():
        row[f"matmul_{name}_s"] = best_of(lambda: kernels.matmul_pairs(G, A, B, impl), repeat)
        row[f"closure_{name}_s"] = best_of(lambda: kernels.closure_count(G, A2, B2, impl), repeat)
    if "cython" in impls:
        # both back ends must agree before a timing means anything
        assert (kernels.matmul_pairs(G, A, B, kernels.pure)
                == kernels.matmul_pairs(G, A, B, kernels._impl)).all()
        row["matmul_speedup"] = row["matmul_numpy_s"] / row["matmul_cython_s"]
        row["closure_speedup"] = row["closure_numpy_s"] / row["closure_cython_s"]
    return row


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"backend at import: {kernels.BACKEND}")
    for spec in GROUPS:
        print(json.dumps({k: round(v, 5) if isinstance(v, float) else v
                          for k, v in bench(spec, args.size, args.repeat).items()}))


if __name__ == "__main__":
    main()
