"""Command-line interface: ``embed``, ``extract``, ``attack`` and ``bench``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .attacks import AttackSpec
from .bench import CLI_KINDS, DEFAULT_GRID_SPEC, BenchConfig, parse_grid, run_bench, write_report
from .di3 import bits_to_bytes, bytes_to_bits, embed_image, extract_image, load_key
from .errors import StegoError
from .image_io import read_pgm, save_pgm

EXIT_OK, EXIT_PARTIAL, EXIT_CONFIG = 0, 1, 2


def _embed(args) -> int:
    key = load_key(args.key)
    cover = read_pgm(args.cover)
    msg = bytes_to_bits(Path(args.msg).read_bytes())
    stego = embed_image(cover, msg, key)
    save_pgm(stego, args.out)
    print(f"embedded {msg.size} bits into {args.out}", file=sys.stderr)
    return EXIT_OK


def _extract(args) -> int:
    key = load_key(args.key)
    width = args.width if args.width is not None else key.width
    if width is None:
        raise ValueError("message width must be given with --width or in the key file")
    msg = extract_image(read_pgm(args.stego), key.with_width(width))
    Path(args.out).write_bytes(bits_to_bytes(msg))
    return EXIT_OK


def _attack(args) -> int:
    spec = AttackSpec(CLI_KINDS[args.kind], args.param, args.levels)
    save_pgm(spec.apply(read_pgm(args.input)), args.out)
    return EXIT_OK


def _bench(args) -> int:
    cfg = BenchConfig(
        corpus_dir=Path(args.corpus),
        key=load_key(args.key),
        bpp=args.bpp,
        attack_grid=parse_grid(args.grid, args.levels),
        message_seed=args.message_seed,
        jobs=args.jobs,
    )
    result = run_bench(cfg)
    if args.csv:
        Path(args.csv).write_bytes(write_report(result.records, "csv"))
    else:
        sys.stdout.buffer.write(write_report(result.records, "csv"))
    if args.plotdata:
        out = Path(args.plotdata)
        out.mkdir(parents=True, exist_ok=True)
        for kind, data in write_report(result.records, "plotdata").items():
            (out / f"{kind}.dat").write_bytes(data)
    for image_id, reason in result.failures.items():
        print(f"failed: {image_id}: {reason}", file=sys.stderr)
    return EXIT_PARTIAL if result.failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="di3stego", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="hide a message file in a PGM cover")
    p.add_argument("--cover", required=True)
    p.add_argument("--msg", required=True, help="raw message bytes, MSB-first bit order")
    p.add_argument("--key", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_embed)

    p = sub.add_parser("extract", help="recover a message from a stego PGM")
    p.add_argument("--stego", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--width", type=int, help="message width in bits (overrides the key file)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_extract)

    p = sub.add_parser("attack", help="apply one attack to a PGM")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--kind", required=True, choices=sorted(CLI_KINDS))
    p.add_argument("--param", required=True, type=float)
    p.add_argument("--levels", type=int, default=3, help="wavelet decomposition depth")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_attack)

    p = sub.add_parser("bench", help="run the robustness protocol over a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--bpp", type=float, default=0.1)
    p.add_argument("--grid", default=DEFAULT_GRID_SPEC)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--csv")
    p.add_argument("--plotdata")
    p.add_argument("--message-seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (StegoError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
