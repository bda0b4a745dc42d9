"""Robustness protocol: embed, attack, extract, and report bit error rates."""
from __future__ import annotations

import csv
import hashlib
import io
import logging
import math
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .attacks import AttackSpec
from .di3 import StegoKey, embed_image, extract_image, strategy_for
from .errors import EmptyCorpus, EmptyInput, PgmError, StegoError, WidthMismatch
from .image_io import GrayImage, read_pgm
from .signification import lsc_count

log = logging.getLogger(__name__)

CLI_KINDS = {
    "crop": "crop",
    "rotation": "rotation",
    "dct": "dct_quantize",
    "wavelet": "wavelet_quantize",
}
DEFAULT_GRID_SPEC = "crop=1,10,25,50,81;rotation=2,5,10,20;dct=30,50,70,90;wavelet=2,8,32"
CSV_HEADER = ["image", "attack", "param", "payload_bits", "ber_percent"]


def ber(a, b) -> float:
    """Percentage of differing bits between two equal-width messages."""
    a = np.asarray(a, dtype=np.uint8).ravel()
    b = np.asarray(b, dtype=np.uint8).ravel()
    if a.size != b.size:
        raise WidthMismatch(f"cannot compare messages of {a.size} and {b.size} bits")
    if a.size == 0:
        raise WidthMismatch("empty messages")
    return 100.0 * np.count_nonzero(a != b) / a.size


def payload_width(img: GrayImage, bpp: float) -> int:
    if not bpp > 0:
        raise ValueError(f"bpp must be positive, got {bpp}")
    # guard against 0.1-style representation error just below an integer
    return math.floor(img.width * img.height * bpp + 1e-9)


def parse_grid(spec: str, levels: int = 3) -> list[AttackSpec]:
    """Parse ``crop=1,10;rotation=2,5;dct=30;wavelet=2,8`` into attack specs."""
    grid = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        name, sep, values = part.partition("=")
        name = name.strip()
        if not sep or name not in CLI_KINDS:
            raise ValueError(f"bad grid entry {part!r}; expected one of {sorted(CLI_KINDS)}=v1,v2,...")
        for v in values.split(","):
            if v.strip():
                grid.append(AttackSpec(CLI_KINDS[name], float(v), levels))
    return grid


def derive_seed(master: int, image_id: str) -> int:
    digest = hashlib.sha256(f"{master}:{image_id}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


def random_message(nbits: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).integers(0, 2, nbits, dtype=np.uint8)


@dataclass(frozen=True, order=True)
class RobustnessRecord:
    image_id: str
    attack: AttackSpec
    ber_percent: float
    payload_bits: int

    def sort_key(self):
        return (self.image_id, self.attack.kind, self.attack.param)


@dataclass
class BenchConfig:
    corpus_dir: Path | None
    key: StegoKey
    bpp: float = 0.1
    attack_grid: list[AttackSpec] = field(default_factory=lambda: parse_grid(DEFAULT_GRID_SPEC))
    message_seed: int = 0
    jobs: int = 1


@dataclass
class BenchResult:
    records: list[RobustnessRecord]
    failures: dict[str, str]


def bench_image(image_id: str, cover: GrayImage, cfg: BenchConfig) -> list[RobustnessRecord]:
    P = payload_width(cover, cfg.bpp)
    msg = random_message(P, derive_seed(cfg.message_seed, image_id))
    key = cfg.key.with_width(P)
    # the strategy depends only on (seed, N, P, iterations): build it once per image
    S = strategy_for(key, lsc_count(cover, key.sig), P)
    stego = embed_image(cover, msg, key, strategy=S)
    out = []
    for spec in [AttackSpec("none")] + list(cfg.attack_grid):
        attacked = spec.apply(stego)
        got = extract_image(attacked, key, strategy=S)
        out.append(RobustnessRecord(image_id, spec, ber(msg, got), P))
    return out


def _load_and_bench(args):
    path, cfg = args
    return bench_image(Path(path).stem, read_pgm(path), cfg)


def corpus_files(corpus_dir) -> list[Path]:
    corpus_dir = Path(corpus_dir)
    if not corpus_dir.is_dir():
        raise EmptyCorpus(f"{corpus_dir} is not a directory")
    files = sorted(p for p in corpus_dir.iterdir() if p.suffix.lower() in (".pgm", ".pnm"))
    if not files:
        raise EmptyCorpus(f"no PGM files in {corpus_dir}")
    return files


def run_bench_images(images: dict[str, GrayImage], cfg: BenchConfig) -> list[RobustnessRecord]:
    if not images:
        raise EmptyCorpus("no images to benchmark")
    records = [r for image_id, img in images.items() for r in bench_image(image_id, img, cfg)]
    return sorted(records, key=RobustnessRecord.sort_key)


def run_bench(cfg: BenchConfig) -> BenchResult:
    """Run the protocol over every PGM in ``cfg.corpus_dir``.

    Images that fail to load or embed are logged and reported in
    ``failures``; the rest of the corpus still runs.
    """
    files = corpus_files(cfg.corpus_dir)
    records: list[RobustnessRecord] = []
    failures: dict[str, str] = {}
    work = [(str(p), cfg) for p in files]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            futures = [pool.submit(_load_and_bench, w) for w in work]
            outcomes = []
            for path, fut in zip(files, futures):
                try:
                    outcomes.append(fut.result())
                except (PgmError, StegoError, OSError) as exc:
                    failures[path.stem] = str(exc)
    else:
        outcomes = []
        for path, w in zip(files, work):
            try:
                outcomes.append(_load_and_bench(w))
            except (PgmError, StegoError, OSError) as exc:
                failures[path.stem] = str(exc)
    for path, reason in failures.items():
        log.warning("skipping %s: %s", path, reason)
    for recs in outcomes:
        records.extend(recs)
    if not records:
        raise EmptyCorpus("no image in the corpus could be processed")
    records.sort(key=RobustnessRecord.sort_key)
    return BenchResult(records, failures)


def _fmt(x: float) -> str:
    return repr(float(x)) if x != int(x) else str(int(x))


def aggregate(records) -> dict[str, list[tuple[float, float, float, float]]]:
    """Per attack kind: ``(param, mean, min, max)`` of BER, sorted by param."""
    groups: dict[tuple[str, float], list[float]] = defaultdict(list)
    for r in records:
        groups[(r.attack.kind, r.attack.param)].append(r.ber_percent)
    out: dict[str, list] = defaultdict(list)
    for (kind, param), vals in sorted(groups.items()):
        out[kind].append((param, sum(vals) / len(vals), min(vals), max(vals)))
    return dict(out)


def write_report(records, format: str = "csv"):
    """Render records as CSV ``bytes`` or as plot data ``{kind: bytes}``."""
    records = list(records)
    if not records:
        raise EmptyInput("no records to report")
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow([r.image_id, r.attack.kind, _fmt(r.attack.param), r.payload_bits, repr(r.ber_percent)])
        return buf.getvalue().encode()
    if format == "plotdata":
        files = {}
        for kind, rows in aggregate(records).items():
            lines = ["# param  mean_ber  min_ber  max_ber"]
            lines += [f"{_fmt(p)}  {mean!r}  {lo!r}  {hi!r}" for p, mean, lo, hi in rows]
            files[kind] = ("\n".join(lines) + "\n").encode()
        return files
    raise ValueError(f"unknown report format {format!r}")


def read_csv(data: bytes, levels: int = 3) -> list[RobustnessRecord]:
    rows = csv.DictReader(io.StringIO(data.decode()))
    return [
        RobustnessRecord(
            image_id=row["image"],
            attack=AttackSpec(row["attack"], float(row["param"]), levels),
            ber_percent=float(row["ber_percent"]),
            payload_bits=int(row["payload_bits"]),
        )
        for row in rows
    ]


# synthetic covers: BOSS images are not redistributable


def synthetic_image(size: int | tuple[int, int], seed: int) -> GrayImage:
    """Textured grayscale cover: smooth gradients, ripples, blobs and sensor-like noise."""
    h, w = (size, size) if isinstance(size, int) else size
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:h, 0:w] / max(h, w)
    img = 60 + 120 * (rng.uniform(-0.5, 0.5) * xx + rng.uniform(-0.5, 0.5) * yy + 0.5)
    for _ in range(4):
        fx, fy = rng.uniform(1, 12, 2)
        img += rng.uniform(5, 25) * np.sin(2 * np.pi * (fx * xx + fy * yy) + rng.uniform(0, 2 * np.pi))
    for _ in range(6):
        cx, cy, r = rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0.03, 0.2)
        img += rng.uniform(-40, 40) * np.exp(-((xx - cx) ** 2 + (yy - cy) ** 2) / (2 * r**2))
    # coarse noise upsampled for mid-frequency texture; fine noise for the low bit planes
    coarse = rng.normal(0, 10, (h // 4 + 1, w // 4 + 1))
    img += np.kron(coarse, np.ones((4, 4)))[:h, :w]
    img += rng.normal(0, 3, (h, w))
    return GrayImage.from_array(np.clip(np.round(img), 0, 255).astype(np.uint8))


def synthetic_corpus(count: int, size=512, seed: int = 0) -> dict[str, GrayImage]:
    return {f"synth{i:03d}": synthetic_image(size, seed * 1000 + i) for i in range(count)}
