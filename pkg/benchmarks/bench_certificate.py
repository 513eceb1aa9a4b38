"""Throughput benchmark for the certificate kernel backends.

Generates a deterministic stream of integer matrices over {0, +-1, +-i}
and times three ways of computing (trace condition, delta, rank):

  compiled   the C extension, when built
  pure-int   the Python fallback on the same flattened integers
  reference  the GaussianRational path used for non-integer input

Run:  python3 benchmarks/bench_certificate.py [--count N] [--n DIM]
"""

import argparse
import time

from cubelin import ScalarMatrix, parse_gaussian, splitmix64
from cubelin import kernel
from cubelin.druzkowski import rank_bound_certificate

PAIRS = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]
SCALARS = [parse_gaussian(s) for s in ("0", "1", "-1", "i", "-i")]


def build_inputs(count, n, seed):
    width = n * n
    flats = []
    matrices = []
    for c in range(count):
        digits = [splitmix64(seed, c * width + e) % len(PAIRS) for e in range(width)]
        flat = []
        for d in digits:
            flat.extend(PAIRS[d])
        flats.append(flat)
        matrices.append(
            ScalarMatrix(
                [[SCALARS[digits[i * n + j]] for j in range(n)] for i in range(n)]
            )
        )
    return flats, matrices


def timed(label, fn, payloads, baseline=None):
    started = time.perf_counter()
    results = [fn(p) for p in payloads]
    elapsed = time.perf_counter() - started
    rate = len(payloads) / elapsed
    line = f"{label:<10} {elapsed:8.3f}s  {rate:12,.0f} certs/s"
    if baseline is not None:
        line += f"  x{baseline / elapsed:.1f} vs reference"
    print(line)
    return elapsed, results


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=20_000)
    parser.add_argument("--n", type=int, default=3)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    print(f"backend: {kernel.BACKEND}")
    print(f"inputs: {args.count} random {args.n}x{args.n} matrices over 0, +-1, +-i")
    flats, matrices = build_inputs(args.count, args.n, args.seed)

    ref_count = min(args.count, 2_000)
    ref_elapsed, ref_results = timed(
        "reference",
        lambda M: rank_bound_certificate(M),
        matrices[:ref_count],
    )
    ref_per = ref_elapsed / ref_count
    scaled_reference = ref_per * args.count

    pure_elapsed, pure_results = timed(
        "pure-int",
        lambda flat: kernel.certificate_ints_pure(args.n, flat),
        flats,
        baseline=scaled_reference,
    )

    if kernel._certkernel is not None:
        fast, fast_results = timed(
            "compiled",
            lambda flat: kernel._certkernel.certificate_int(args.n, flat),
            flats,
            baseline=scaled_reference,
        )
        assert fast_results == pure_results, "backends disagree"
        print(f"compiled vs pure-int: x{pure_elapsed / fast:.1f}")
    else:
        print("compiled: extension not built, skipped")

    expected = [
        (c.trace_condition_holds, c.delta, c.rank) for c in ref_results
    ]
    assert pure_results[:ref_count] == expected, "pure backend disagrees with reference"
    print("agreement: all backends matched on the reference slice")


if __name__ == "__main__":
    main()
