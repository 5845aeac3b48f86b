"""Compare the compiled SGNS kernel against the numpy fallback.

    python benchmarks/bench_kernel.py --pairs 200000 --dim 100

Both kernels get identical inputs; the script reports wall time per call and
the largest absolute difference between the resulting weight matrices.
"""

import argparse
import time

import numpy as np

from clinabbrev.embeddings.kernel import compiled_train_pairs, python_train_pairs


def make_inputs(rng, vocab, dim, pairs, negatives):
    w_in = rng.uniform(-0.5 / dim, 0.5 / dim, size=(vocab, dim))
    w_out = rng.normal(scale=0.1, size=(vocab, dim))
    centers = np.sort(rng.integers(0, vocab, pairs)).astype(np.int64)
    contexts = rng.integers(0, vocab, pairs).astype(np.int64)
    negs = rng.integers(0, vocab, (pairs, negatives)).astype(np.int64)
    alphas = np.linspace(0.025, 0.0001, pairs)
    return w_in, w_out, centers, contexts, negs, alphas


def timed(fn, w_in, w_out, *args, repeat):
    best = float("inf")
    for _ in range(repeat):
        a, b = w_in.copy(), w_out.copy()
        t0 = time.perf_counter()
        fn(a, b, *args)
        best = min(best, time.perf_counter() - t0)
    return best, a, b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--vocab", type=int, default=5000)
    ap.add_argument("--dim", type=int, default=100)
    ap.add_argument("--pairs", type=int, default=100_000)
    ap.add_argument("--negatives", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    w_in, w_out, *rest = make_inputs(rng, args.vocab, args.dim, args.pairs, args.negatives)

    t_py, in_py, out_py = timed(python_train_pairs, w_in, w_out, *rest, repeat=args.repeat)
    print(f"python  {t_py:8.3f}s  {args.pairs / t_py:12,.0f} pairs/s")
    if compiled_train_pairs is None:
        print("compiled kernel not built; install with Cython available to compare")
        return
    t_c, in_c, out_c = timed(compiled_train_pairs, w_in, w_out, *rest, repeat=args.repeat)
    print(f"cython  {t_c:8.3f}s  {args.pairs / t_c:12,.0f} pairs/s")
    print(f"speedup {t_py / t_c:8.1f}x")
    diff = max(np.max(np.abs(in_py - in_c)), np.max(np.abs(out_py - out_c)))
    print(f"max |diff| {diff:.2e}")


if __name__ == "__main__":
    main()
