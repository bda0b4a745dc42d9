"""DI3 embedding and extraction over the least significant coefficients.

The embedding key is ``(seed, iterations, signification thresholds)``;
extraction additionally needs the message width ``P``. The strategy only
fixes the order in which LSC positions are overwritten: message bit ``i``
always ends up at LSC index ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import (
    GeometryMismatch,
    LambdaTooSmall,
    PayloadTooLarge,
    WidthMismatch,
)
from .image_io import GrayImage
from .signification import DEFAULT_PARAMS, SignificationParams, decompose, lsc_count, rebuild
from .strategy import KeyedPrng, Strategy, make_strategy


def as_message(bits) -> np.ndarray:
    msg = np.asarray(bits, dtype=np.uint8).ravel()
    if msg.size < 1:
        raise ValueError("message must contain at least one bit")
    if msg.max() > 1:
        raise ValueError("message bits must be 0 or 1")
    return msg


@dataclass(frozen=True)
class StegoKey:
    seed: int
    iterations: int | None = None
    sig: SignificationParams = DEFAULT_PARAMS
    width: int | None = None

    def iterations_for(self, P: int) -> int:
        # default leaves a prefix as long as the permutation suffix
        return 2 * P if self.iterations is None else self.iterations

    def with_width(self, width: int) -> StegoKey:
        return replace(self, width=width)


def embed_bits(lsc, msg, S: Strategy) -> np.ndarray:
    """Replay ``S`` over the LSC stream, writing ``lsc[i] = msg[i]`` for each visited ``i``."""
    lsc = np.array(lsc, dtype=np.uint8)
    msg = as_message(msg)
    if msg.size != S.P or S.P > lsc.size:
        raise WidthMismatch(f"message width {msg.size}, strategy width {S.P}, LSC count {lsc.size}")
    # every write at index i stores msg[i], so iteration order cannot change the outcome
    lsc[S.terms] = msg[S.terms]
    return lsc


def extract_bits(lsc, S: Strategy, P: int) -> np.ndarray:
    """Replay the reversed strategy, reading ``M[i] = lsc[i]`` for each visited ``i``."""
    lsc = np.asarray(lsc, dtype=np.uint8)
    if P != S.P or P > lsc.size:
        raise WidthMismatch(f"requested width {P}, strategy width {S.P}, LSC count {lsc.size}")
    msg = np.zeros(P, dtype=np.uint8)
    rs = S.terms[::-1]
    msg[rs] = lsc[rs]
    return msg


def strategy_for(key: StegoKey, N: int, P: int) -> Strategy:
    iterations = key.iterations_for(P)
    if P > N:
        raise PayloadTooLarge(f"message of {P} bits exceeds {N} LSC positions")
    if iterations < P:
        raise LambdaTooSmall(f"iterations={iterations} is smaller than message width {P}")
    return make_strategy(N, P, iterations, KeyedPrng(key.seed))


def embed_image(cover: GrayImage, msg, key: StegoKey, strategy: Strategy | None = None) -> GrayImage:
    msg = as_message(msg)
    dec = decompose(cover, key.sig)
    S = strategy if strategy is not None else strategy_for(key, len(dec.lsc), msg.size)
    return rebuild(dec.with_lsc(embed_bits(dec.lsc.bits, msg, S)))


def extract_image(stego: GrayImage, key: StegoKey, strategy: Strategy | None = None) -> np.ndarray:
    if key.width is None:
        raise ValueError("extraction key must carry the message width")
    dec = decompose(stego, key.sig)
    N = len(dec.lsc)
    if N < key.width:
        raise GeometryMismatch(f"stego image holds {N} LSC positions, key expects {key.width} bits")
    S = strategy if strategy is not None else strategy_for(key, N, key.width)
    return extract_bits(dec.lsc.bits, S, key.width)


def capacity(img: GrayImage, sig: SignificationParams = DEFAULT_PARAMS) -> int:
    return lsc_count(img, sig)


# key file: one ``name=value`` per line, ``#`` comments allowed


def format_key(key: StegoKey) -> str:
    lines = [f"seed={key.seed}"]
    if key.iterations is not None:
        lines.append(f"lambda={key.iterations}")
    lines += [f"m={key.sig.m:g}", f"M={key.sig.M:g}"]
    if key.sig.weight_fn != DEFAULT_PARAMS.weight_fn:
        lines.append(f"weight_fn={key.sig.weight_fn}")
    if key.width is not None:
        lines.append(f"width={key.width}")
    return "\n".join(lines) + "\n"


def parse_key(text: str) -> StegoKey:
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"key file line {lineno}: expected name=value, got {raw!r}")
        fields[name.strip()] = value.strip()

    unknown = set(fields) - {"seed", "lambda", "m", "M", "width", "weight_fn"}
    if unknown:
        raise ValueError(f"unknown key fields: {sorted(unknown)}")
    if "seed" not in fields:
        raise ValueError("key file must define seed")
    seed = int(fields["seed"])
    if not 0 <= seed < 1 << 64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    sig = SignificationParams(
        m=float(fields.get("m", DEFAULT_PARAMS.m)),
        M=float(fields.get("M", DEFAULT_PARAMS.M)),
        weight_fn=fields.get("weight_fn", DEFAULT_PARAMS.weight_fn),
    )
    iterations = int(fields["lambda"]) if "lambda" in fields else None
    width = int(fields["width"]) if "width" in fields else None
    return StegoKey(seed=seed, iterations=iterations, sig=sig, width=width)


def load_key(path) -> StegoKey:
    return parse_key(Path(path).read_text())


def bytes_to_bits(data: bytes) -> np.ndarray:
    return np.unpackbits(np.frombuffer(data, dtype=np.uint8))


def bits_to_bytes(bits) -> bytes:
    # trailing partial byte is zero padded
    return np.packbits(np.asarray(bits, dtype=np.uint8)).tobytes()
