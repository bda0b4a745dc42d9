"""Portable graymap (P2 / P5, maxval 255) reading and writing.

Bits of an image are addressed globally as ``k = 8 * i + b`` where ``i`` is
the row-major pixel index and ``b = 0`` is the most significant bit of the
pixel. :func:`to_bits` / :func:`from_bits` implement that convention.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BadMaxval, MalformedHeader, TruncatedData, UnsupportedMagic

MAXVAL = 255
_WHITESPACE = b" \t\r\n\v\f"


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8-bit grayscale image; ``pixels`` is a ``(height, width)`` uint8 array."""

    width: int
    height: int
    pixels: np.ndarray
    maxval: int = MAXVAL

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"image dimensions must be positive, got {self.width}x{self.height}")
        if self.maxval != MAXVAL:
            raise BadMaxval(f"maxval must be {MAXVAL}, got {self.maxval}")
        arr = np.asarray(self.pixels)
        if arr.size != self.width * self.height:
            raise ValueError(
                f"expected {self.width * self.height} pixels, got {arr.size}"
            )
        if arr.size and (arr.min() < 0 or arr.max() > MAXVAL):
            raise ValueError("pixel values must lie in [0, 255]")
        arr = arr.astype(np.uint8).reshape(self.height, self.width)
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @classmethod
    def from_array(cls, arr) -> GrayImage:
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        return cls(width=arr.shape[1], height=arr.shape[0], pixels=arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.height, self.width

    def flat(self) -> list[int]:
        return self.pixels.ravel().tolist()

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and np.array_equal(self.pixels, other.pixels)
        )

    def __repr__(self):
        return f"GrayImage(width={self.width}, height={self.height})"


class _Cursor:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def skip_space_and_comments(self):
        data = self.data
        while self.pos < len(data):
            c = data[self.pos]
            if c in _WHITESPACE:
                self.pos += 1
            elif c == ord("#"):
                while self.pos < len(data) and data[self.pos] not in b"\r\n":
                    self.pos += 1
            else:
                break

    def token(self, what: str) -> bytes:
        self.skip_space_and_comments()
        start = self.pos
        while self.pos < len(self.data) and self.data[self.pos] not in _WHITESPACE:
            if self.data[self.pos] == ord("#"):
                break
            self.pos += 1
        if start == self.pos:
            raise MalformedHeader(f"missing {what}")
        return self.data[start : self.pos]

    def integer(self, what: str) -> int:
        tok = self.token(what)
        if not tok.isdigit():
            raise MalformedHeader(f"{what} is not a non-negative integer: {tok!r}")
        return int(tok)


def parse_pgm(data: bytes) -> GrayImage:
    """Decode a P2 (ASCII) or P5 (binary) graymap with maxval 255."""
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise UnsupportedMagic(f"unsupported magic {magic!r}")
    if len(data) > 2 and data[2:3] not in _WHITESPACE and data[2:3] != b"#":
        raise MalformedHeader("magic must be followed by whitespace")
    cur = _Cursor(data)
    cur.pos = 2
    width = cur.integer("width")
    height = cur.integer("height")
    maxval = cur.integer("maxval")
    if width < 1 or height < 1:
        raise MalformedHeader(f"non-positive dimensions {width}x{height}")
    if maxval != MAXVAL:
        raise BadMaxval(f"maxval must be {MAXVAL}, got {maxval}")
    count = width * height

    if magic == b"P5":
        # exactly one whitespace byte separates maxval from the raster
        if cur.pos >= len(data) or data[cur.pos] not in _WHITESPACE:
            raise TruncatedData("no raster after header")
        start = cur.pos + 1
        raster = data[start : start + count]
        if len(raster) < count:
            raise TruncatedData(f"expected {count} samples, got {len(raster)}")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        body = data[cur.pos :]
        tokens = body.split()
        if len(tokens) < count:
            raise TruncatedData(f"expected {count} samples, got {len(tokens)}")
        try:
            values = np.array([int(t) for t in tokens[:count]], dtype=np.int64)
        except ValueError as exc:
            raise MalformedHeader(f"non-integer sample: {exc}") from None
        if values.min() < 0 or values.max() > MAXVAL:
            raise MalformedHeader("sample outside [0, 255]")
        pixels = values
    return GrayImage(width=width, height=height, pixels=pixels.reshape(height, width))


def write_pgm(img: GrayImage, binary: bool = True) -> bytes:
    """Canonical encoding: ``magic\\nwidth height\\n255\\n`` then the samples."""
    magic = "P5" if binary else "P2"
    header = f"{magic}\n{img.width} {img.height}\n{img.maxval}\n".encode("ascii")
    if binary:
        return header + img.pixels.tobytes()
    rows = (" ".join(str(v) for v in row) for row in img.pixels.tolist())
    return header + ("\n".join(rows) + "\n").encode("ascii")


def read_pgm(path) -> GrayImage:
    return parse_pgm(Path(path).read_bytes())


def save_pgm(img: GrayImage, path, binary: bool = True) -> None:
    Path(path).write_bytes(write_pgm(img, binary=binary))


def to_bits(img: GrayImage) -> np.ndarray:
    """All ``8 * width * height`` bits of the image, MSB-first per pixel."""
    return np.unpackbits(img.pixels.ravel())


def from_bits(bits: np.ndarray, width: int, height: int) -> GrayImage:
    packed = np.packbits(np.asarray(bits, dtype=np.uint8))
    return GrayImage(width=width, height=height, pixels=packed.reshape(height, width))
