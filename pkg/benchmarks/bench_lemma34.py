"""Time the count-matrix classifier on the full n <= 3 instance set.

    python3 benchmarks/bench_lemma34.py [--repeat 3]

Backends: the pure-Python reference, the vectorised numpy kernel and the
numba kernel (skipped when numba is missing or CROSSNODAL_DISABLE_NUMBA=1).
All three must agree on every instance.
"""

import argparse
import time

import numpy as np

from crossnodal import _kernels
from crossnodal.lemma34 import classify_matrix_condition, instance_arrays


def python_backend(Bs, As):
    out = np.zeros((len(Bs), 3), dtype=np.bool_)
    for k in range(len(Bs)):
        out[k] = tuple(classify_matrix_condition(Bs[k].tolist(), As[k].tolist()))
    return out


def best_of(fn, data, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = [fn(Bs, As) for Bs, As in data]
        times.append(time.perf_counter() - t0)
    return min(times), np.concatenate(res)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=3)
    args = ap.parse_args(argv)

    data = [instance_arrays(n) for n in range(1, args.max_n + 1)]
    total = sum(len(Bs) for Bs, _ in data)
    backends = {"python": python_backend, "numpy": _kernels.classify_batch_numpy}
    if _kernels.classify_batch_numba is not None:
        _kernels.classify_batch_numba(*data[0])  # compile outside the timed loop
        backends["numba"] = _kernels.classify_batch_numba

    print(f"{total} instances, best of {args.repeat}")
    reference = None
    for name, fn in backends.items():
        dt, res = best_of(fn, data, 1 if name == "python" else args.repeat)
        if reference is None:
            reference = res
        agree = bool((res == reference).all())
        print(f"{name:>7}: {dt:8.3f} s  {total / dt:12.0f} inst/s  agrees={agree}")


if __name__ == "__main__":
    main()
