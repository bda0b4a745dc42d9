"""Write a directory of synthetic textured PGM covers.

    python scripts/make_corpus.py out/corpus --count 50 --size 512
"""
import argparse
from pathlib import Path

from di3stego.bench import synthetic_corpus
from di3stego.image_io import save_pgm


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("out")
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--size", type=int, default=512)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, img in synthetic_corpus(args.count, args.size, args.seed).items():
        save_pgm(img, out / f"{name}.pgm")
    print(f"wrote {args.count} covers of {args.size}x{args.size} to {out}")


if __name__ == "__main__":
    main()
