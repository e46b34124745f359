"""Compare the compiled and pure-Python polynomial kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--seed S]

Each workload is run on every available backend; results are checked to be
identical before timings are printed.
"""

import argparse
import random
import statistics
import time
from fractions import Fraction

from relweil import _pykernels, kernels
from relweil.weilres import derive_example_D


def _rand_int_list(rng, n, bits):
    return [rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(n)]


def _rand_frac_list(rng, n):
    return [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(n)]


def _rand_sparse(rng, nvars, nterms, maxdeg):
    out = {}
    while len(out) < nterms:
        e = tuple(rng.randint(0, maxdeg) for _ in range(nvars))
        out[e] = Fraction(rng.randint(-20, 20) or 1, rng.randint(1, 5))
    return out


def workloads(rng):
    a_int, b_int = _rand_int_list(rng, 300, 64), _rand_int_list(rng, 300, 64)
    a_fr, b_fr = _rand_frac_list(rng, 80), _rand_frac_list(rng, 80)
    m = _rand_int_list(rng, 40, 32) + [1]
    big = _rand_int_list(rng, 400, 32)
    pa, pb = _rand_int_list(rng, 120, 48), _rand_int_list(rng, 60, 48)
    sa, sb = _rand_sparse(rng, 4, 60, 5), _rand_sparse(rng, 4, 60, 5)
    return [
        ("dense_mul int 300x300", "dense_mul", (a_int, b_int)),
        ("dense_mul Fraction 80x80", "dense_mul", (a_fr, b_fr)),
        ("dense_rem_monic 400 mod 40", "dense_rem_monic", (big, m)),
        ("dense_prem 120 by 60", "dense_prem", (pa, pb)),
        ("sparse_mul 4 vars 60x60", "sparse_mul", (sa, sb)),
    ]


def _time(fn, args, repeat):
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=7)
    parser.add_argument("--seed", type=int, default=2024)
    args = parser.parse_args(argv)
    rng = random.Random(args.seed)
    backends = kernels.available_backends()
    impls = {name: kernels._BACKENDS[name] for name in backends}
    print(f"backends: {', '.join(backends)}")
    header = f"{'workload':34s}" + "".join(f"{b:>12s}" for b in backends)
    if "compiled" in impls:
        header += f"{'speedup':>10s}"
    print(header)
    for label, name, wargs in workloads(rng):
        ref = getattr(_pykernels, name)(*wargs)
        times = {}
        for b, mod in impls.items():
            fn = getattr(mod, name)
            if fn(*wargs) != ref:
                raise SystemExit(f"{b} backend disagrees on {label}")
            times[b] = _time(fn, wargs, args.repeat)
        row = f"{label:34s}" + "".join(f"{times[b] * 1e3:10.3f}ms" for b in backends)
        if "compiled" in times:
            row += f"{times['python'] / times['compiled']:9.2f}x"
        print(row)
    # end-to-end: the symbolic genus-5 elimination
    for b in backends:
        kernels.set_backend(b)
        t = _time(lambda: derive_example_D("a", "b", "d"), (), max(1, args.repeat // 2))
        print(f"{'derive_example_D symbolic':34s} [{b}] {t * 1e3:.2f}ms")
    kernels.set_backend(backends[0] if "compiled" not in backends else "compiled")


if __name__ == "__main__":
    main()
