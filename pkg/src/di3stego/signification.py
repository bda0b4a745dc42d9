"""Signification functions and the MSC / passive / LSC partition of an image.

A signification function gives each global bit position ``k`` a weight
``u(k)``. With thresholds ``m < M`` a position is a most significant
coefficient when ``u(k) >= M``, a least significant coefficient when
``u(k) <= m`` and passive otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import IncompletePartition, UnknownWeightFn
from .image_io import GrayImage, from_bits, to_bits

WeightFn = Callable[[np.ndarray], np.ndarray]


def _pgm8(k: np.ndarray) -> np.ndarray:
    # 8 for the most significant bit of a pixel, 1 for the least
    return 8 - (k % 8)


WEIGHT_FUNCTIONS: dict[str, WeightFn] = {"pgm8": _pgm8}


def register_weight_fn(name: str, fn: WeightFn) -> None:
    WEIGHT_FUNCTIONS[name] = fn


@dataclass(frozen=True)
class SignificationParams:
    m: float = 3.0
    M: float = 6.0
    weight_fn: str = "pgm8"

    def __post_init__(self):
        if not self.m < self.M:
            raise ValueError(f"thresholds must satisfy m < M, got m={self.m}, M={self.M}")


DEFAULT_PARAMS = SignificationParams()


@dataclass(frozen=True, eq=False)
class Stream:
    positions: np.ndarray
    bits: np.ndarray

    def __len__(self):
        return len(self.positions)

    def with_bits(self, bits) -> Stream:
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.shape != self.bits.shape:
            raise ValueError(f"expected {len(self)} bits, got {bits.size}")
        return Stream(self.positions, bits)


@dataclass(frozen=True, eq=False)
class Decomposition:
    msc: Stream
    passive: Stream
    lsc: Stream
    width: int
    height: int

    def with_lsc(self, bits) -> Decomposition:
        return Decomposition(self.msc, self.passive, self.lsc.with_bits(bits), self.width, self.height)


def _weights(k: np.ndarray, params: SignificationParams) -> np.ndarray:
    try:
        fn = WEIGHT_FUNCTIONS[params.weight_fn]
    except KeyError:
        raise UnknownWeightFn(params.weight_fn) from None
    return fn(k)


def weight(k: int, params: SignificationParams = DEFAULT_PARAMS) -> float:
    return float(_weights(np.asarray([k], dtype=np.int64), params)[0])


def lsc_positions(num_pixels: int, params: SignificationParams = DEFAULT_PARAMS) -> np.ndarray:
    k = np.arange(8 * num_pixels, dtype=np.int64)
    return k[_weights(k, params) <= params.m]


def lsc_count(img: GrayImage, params: SignificationParams = DEFAULT_PARAMS) -> int:
    return len(lsc_positions(img.width * img.height, params))


def decompose(img: GrayImage, params: SignificationParams = DEFAULT_PARAMS) -> Decomposition:
    bits = to_bits(img)
    k = np.arange(bits.size, dtype=np.int64)
    u = _weights(k, params)
    is_msc = u >= params.M
    is_lsc = u <= params.m
    is_passive = ~(is_msc | is_lsc)

    def stream(mask):
        return Stream(k[mask], bits[mask])

    return Decomposition(stream(is_msc), stream(is_passive), stream(is_lsc), img.width, img.height)


def rebuild(dec: Decomposition) -> GrayImage:
    total = 8 * dec.width * dec.height
    positions = np.concatenate([dec.msc.positions, dec.passive.positions, dec.lsc.positions])
    if positions.size != total or not np.array_equal(np.sort(positions), np.arange(total)):
        raise IncompletePartition("stream positions do not partition the image's bit range")
    bits = np.empty(total, dtype=np.uint8)
    for s in (dec.msc, dec.passive, dec.lsc):
        bits[s.positions] = s.bits
    return from_bits(bits, dec.width, dec.height)
