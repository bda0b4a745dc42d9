"""Image attacks used by the robustness protocol.

Every attack keeps the image geometry so a message can be extracted
directly from the attacked image. JPEG and JPEG 2000 are modelled by their
lossy cores (block-DCT quantization and wavelet detail quantization).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadAngle, BadParameter, BadPercentage, BadQuality
from .image_io import GrayImage

KINDS = ("none", "crop", "rotation", "dct_quantize", "wavelet_quantize")

# ITU-T T.81 Annex K luminance table
JPEG_LUMA_TABLE = np.array(
    [
        [16, 11, 10, 16, 24, 40, 51, 61],
        [12, 12, 14, 19, 26, 58, 60, 55],
        [14, 13, 16, 24, 40, 57, 69, 56],
        [14, 17, 22, 29, 51, 87, 80, 62],
        [18, 22, 37, 56, 68, 109, 103, 77],
        [24, 35, 55, 64, 81, 104, 113, 92],
        [49, 64, 78, 87, 103, 121, 120, 101],
        [72, 92, 95, 98, 112, 100, 103, 99],
    ],
    dtype=np.int64,
)


def _to_image(arr: np.ndarray) -> GrayImage:
    # round half away from zero, then clamp
    out = np.clip(np.floor(arr + 0.5), 0, 255).astype(np.uint8)
    return GrayImage.from_array(out)


def crop_attack(img: GrayImage, pct: float) -> GrayImage:
    """Blank (set to 0) a centred rectangle covering ``pct`` percent of the image."""
    if not 0 <= pct <= 100:
        raise BadPercentage(f"crop percentage must lie in [0, 100], got {pct}")
    h, w = img.shape
    f = math.sqrt(pct / 100)
    sw = min(w, math.floor(w * f + 0.5))
    sh = min(h, math.floor(h * f + 0.5))
    top, left = (h - sh) // 2, (w - sw) // 2
    out = img.pixels.copy()
    out[top : top + sh, left : left + sw] = 0
    return GrayImage.from_array(out)


def _rotate(arr: np.ndarray, theta_deg: float) -> np.ndarray:
    h, w = arr.shape
    cy, cx = (h - 1) / 2, (w - 1) / 2
    t = math.radians(theta_deg)
    c, s = math.cos(t), math.sin(t)
    yy, xx = np.mgrid[0:h, 0:w].astype(float)
    dx, dy = xx - cx, yy - cy
    # inverse mapping: where each output pixel comes from in the source
    sx = np.clip(cx + c * dx + s * dy, 0, w - 1)
    sy = np.clip(cy - s * dx + c * dy, 0, h - 1)
    x0 = np.minimum(np.floor(sx).astype(np.int64), w - 1)
    y0 = np.minimum(np.floor(sy).astype(np.int64), h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    fx, fy = sx - x0, sy - y0
    a = arr.astype(float)
    top = a[y0, x0] * (1 - fx) + a[y0, x1] * fx
    bottom = a[y1, x0] * (1 - fx) + a[y1, x1] * fx
    return top * (1 - fy) + bottom * fy


def rotation_attack(img: GrayImage, theta: float) -> GrayImage:
    """Rotate by ``+theta`` then ``-theta`` degrees about the image centre.

    Bilinear interpolation with edge clamping; each leg is rounded back to
    8-bit gray levels.
    """
    if not 0 <= theta <= 360:
        raise BadAngle(f"rotation angle must lie in [0, 360], got {theta}")
    if theta == 0:
        return img
    once = _to_image(_rotate(img.pixels, theta))
    return _to_image(_rotate(once.pixels, -theta))


def quality_table(quality: int) -> np.ndarray:
    """Luminance table scaled by the usual libjpeg quality law."""
    if not 1 <= quality <= 100:
        raise BadQuality(f"quality must lie in [1, 100], got {quality}")
    scale = 5000 // quality if quality < 50 else 200 - 2 * quality
    return np.clip((JPEG_LUMA_TABLE * scale + 50) // 100, 1, 255)


def dct_matrix(n: int = 8) -> np.ndarray:
    """Orthonormal type-II DCT matrix ``C`` so that ``C @ x`` transforms columns."""
    k = np.arange(n)[:, None]
    i = np.arange(n)[None, :]
    C = np.cos(math.pi * (2 * i + 1) * k / (2 * n)) * math.sqrt(2 / n)
    C[0] /= math.sqrt(2)
    return C


_C8 = dct_matrix(8)


def _pad_edge(arr: np.ndarray, multiple: int) -> np.ndarray:
    h, w = arr.shape
    return np.pad(arr, ((0, (-h) % multiple), (0, (-w) % multiple)), mode="edge")


def dct_quantize_attack(img: GrayImage, quality: int) -> GrayImage:
    table = quality_table(int(quality)).astype(float)
    h, w = img.shape
    a = _pad_edge(img.pixels.astype(float), 8) - 128.0
    H, W = a.shape
    blocks = a.reshape(H // 8, 8, W // 8, 8).transpose(0, 2, 1, 3)
    coef = _C8 @ blocks @ _C8.T
    coef = np.round(coef / table) * table
    rec = (_C8.T @ coef @ _C8).transpose(0, 2, 1, 3).reshape(H, W) + 128.0
    return _to_image(rec[:h, :w])


def haar_forward(a: np.ndarray, levels: int) -> tuple[np.ndarray, list]:
    """Integer-valued 2-D Haar analysis (sums and differences, no scaling).

    Returns the final approximation band and a list of ``(LH, HL, HH)``
    detail bands, finest level first.
    """
    details = []
    ll = a.astype(float)
    for _ in range(levels):
        p, q = ll[0::2, 0::2], ll[0::2, 1::2]
        r, s = ll[1::2, 0::2], ll[1::2, 1::2]
        details.append((p + q - r - s, p - q + r - s, p - q - r + s))
        ll = p + q + r + s
    return ll, details


def haar_inverse(ll: np.ndarray, details: list) -> np.ndarray:
    for lh, hl, hh in reversed(details):
        h, w = ll.shape
        out = np.empty((2 * h, 2 * w))
        out[0::2, 0::2] = (ll + lh + hl + hh) / 4
        out[0::2, 1::2] = (ll + lh - hl - hh) / 4
        out[1::2, 0::2] = (ll - lh + hl - hh) / 4
        out[1::2, 1::2] = (ll - lh - hl + hh) / 4
        ll = out
    return ll


def wavelet_quantize_attack(img: GrayImage, levels: int = 3, step: float = 8.0) -> GrayImage:
    if not 1 <= levels <= 5:
        raise BadParameter(f"levels must lie in [1, 5], got {levels}")
    if not step > 0:
        raise BadParameter(f"quantization step must be positive, got {step}")
    h, w = img.shape
    a = _pad_edge(img.pixels.astype(float), 2**levels)
    ll, details = haar_forward(a, levels)
    details = [tuple(np.round(band / step) * step for band in bands) for bands in details]
    return _to_image(haar_inverse(ll, details)[:h, :w])


@dataclass(frozen=True, order=True)
class AttackSpec:
    kind: str
    param: float = 0.0
    levels: int = 3

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BadParameter(f"unknown attack kind {self.kind!r}")
        if self.kind == "crop" and not 0 <= self.param <= 100:
            raise BadPercentage(f"crop percentage must lie in [0, 100], got {self.param}")
        if self.kind == "rotation" and not 0 <= self.param <= 360:
            raise BadAngle(f"rotation angle must lie in [0, 360], got {self.param}")
        if self.kind == "dct_quantize" and not 1 <= self.param <= 100:
            raise BadQuality(f"quality must lie in [1, 100], got {self.param}")
        if self.kind == "wavelet_quantize" and not self.param > 0:
            raise BadParameter(f"quantization step must be positive, got {self.param}")

    def apply(self, img: GrayImage) -> GrayImage:
        if self.kind == "none":
            return img
        if self.kind == "crop":
            return crop_attack(img, self.param)
        if self.kind == "rotation":
            return rotation_attack(img, self.param)
        if self.kind == "dct_quantize":
            return dct_quantize_attack(img, int(self.param))
        return wavelet_quantize_attack(img, self.levels, self.param)


def apply_attack(img: GrayImage, spec: AttackSpec) -> GrayImage:
    return spec.apply(img)
