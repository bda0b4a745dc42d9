"""Empirical change rates of the syndrome-coding baselines.

F5: average flips per block versus 1 - 2**-p, and embedding efficiency
p / (1 - 2**-p). MMx: average cost saved over single-flip F5 with random
costs. nsF5: fraction of random blocks solvable as the dry share shrinks.
"""
import argparse

import numpy as np

from di3stego.matrix_codes import (
    f5_embed_block,
    hamming_matrix,
    mmx_embed_block,
    nsf5_embed_block,
    random_parity_matrix,
    random_wet_set,
)
from di3stego.strategy import prng_new


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    print("F5 Hamming embedding")
    for p in range(1, 7):
        code = hamming_matrix(p)
        flips = 0
        for _ in range(args.trials):
            x, m = rng.integers(0, 2, code.n), rng.integers(0, 2, p)
            flips += f5_embed_block(x, m, code)[1] is not None
        rate = flips / args.trials
        print(f"  p={p} n={code.n:3d} flips/block {rate:.4f} (expected {1 - 2.0**-p:.4f})"
              f"  bits/change {p / max(rate, 1e-12):.3f} (expected {p / (1 - 2.0**-p):.3f})")

    print("MMx cost versus single-flip F5, p=3, rho ~ U(0,1)")
    code = hamming_matrix(3)
    for k in (1, 2, 3):
        f5_cost = mm_cost = 0.0
        for _ in range(args.trials):
            x, m, rho = rng.integers(0, 2, 7), rng.integers(0, 2, 3), rng.uniform(0, 1, 7)
            _, j = f5_embed_block(x, m, code)
            f5_cost += 0 if j is None else rho[j]
            mm_cost += mmx_embed_block(x, m, code, rho, k)[2]
        print(f"  MM{k}: mean cost {mm_cost / args.trials:.4f} vs F5 {f5_cost / args.trials:.4f}")

    print("nsF5 wet paper solvability, 8 x 64 blocks")
    prng = prng_new(args.seed)
    D = random_parity_matrix(8, 64, prng)
    for dry in (4, 8, 10, 12, 16, 32):
        ok = 0
        for _ in range(args.trials // 4):
            wet = random_wet_set(64, dry, prng)
            ok += nsf5_embed_block(rng.integers(0, 2, 64), rng.integers(0, 2, 8), D, wet) is not None
        print(f"  dry={dry:2d}: solvable {ok / (args.trials // 4):.3f}")


if __name__ == "__main__":
    main()
