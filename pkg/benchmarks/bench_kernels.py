"""Time the numpy and numba kernels on the same random inputs.

    python benchmarks/bench_kernels.py [--repeat N] [--scale S]

Each kernel runs once on both paths before timing (JIT warm-up and an
agreement check), then the best of ``--repeat`` runs is reported.
"""

import argparse
import timeit

import numpy as np

from gamefix import kernels


def cases(rng, scale):
    n = 40 * scale
    ranks = rng.integers(0, 6, (n, 5 * n)).astype(np.int64)
    small = rng.integers(0, 6, (n // 2, n // 2)).astype(np.int64)
    small_opp = rng.integers(0, 6, small.shape).astype(np.int64)
    r = rng.random((6 * n, 6 * n)) < 0.02
    s = rng.random((6 * n, 6 * n)) < 0.02
    states = 4
    wf = rng.random((2 * n, 2 * n * states)) < 0.05

    # a 3-player game with n/4 moves each
    k = max(2, n // 8)
    shape = (k, k, k)
    profiles = np.array(np.unravel_index(np.arange(k**3), shape)).T
    own_idx = profiles.T.copy()
    opp_idx = np.stack(
        [np.ravel_multi_index(tuple(np.delete(profiles, i, axis=1).T), (k, k)) for i in range(3)]
    )
    rels = [rng.random((k, k * k)) < 0.6 for _ in range(3)]

    return {
        "best_response": (ranks,),
        "stable_response": (ranks,),
        "constructive_response": (small, small_opp),
        "compose": (r, s),
        "weak_fixpoint": (wf, states),
        "assemble_profile": (rels, own_idx, opp_idx),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--scale", type=int, default=2)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if kernels.numba_impl is None:
        raise SystemExit("numba is not installed")
    rng = np.random.default_rng(args.seed)
    impls = {"numpy": kernels.numpy_impl, "numba": kernels.numba_impl}

    print(f"{'kernel':<24}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name, inputs in cases(rng, args.scale).items():
        fns = {label: getattr(impl, name) for label, impl in impls.items()}
        results = {label: fn(*inputs) for label, fn in fns.items()}
        if not np.array_equal(results["numpy"], results["numba"]):
            raise SystemExit(f"{name}: numpy and numba disagree")
        times = {
            label: min(timeit.repeat(lambda fn=fn: fn(*inputs), number=1, repeat=args.repeat)) * 1e3
            for label, fn in fns.items()
        }
        speedup = times["numpy"] / times["numba"]
        print(f"{name:<24}{times['numpy']:>12.3f}{times['numba']:>12.3f}{speedup:>9.1f}x")


if __name__ == "__main__":
    main()
