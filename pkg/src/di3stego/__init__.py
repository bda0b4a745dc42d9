"""DI3 steganography on grayscale images, matrix-embedding baselines and a robustness bench."""
from .attacks import AttackSpec, crop_attack, dct_quantize_attack, rotation_attack, wavelet_quantize_attack
from .bench import BenchConfig, RobustnessRecord, ber, payload_width, run_bench, write_report
from .di3 import StegoKey, embed_bits, embed_image, extract_bits, extract_image
from .image_io import GrayImage, parse_pgm, read_pgm, save_pgm, write_pgm
from .signification import Decomposition, SignificationParams, decompose, rebuild, weight
from .strategy import KeyedPrng, Strategy, make_strategy, prng_new

__all__ = [
    "AttackSpec", "BenchConfig", "Decomposition", "GrayImage", "KeyedPrng", "RobustnessRecord",
    "SignificationParams", "StegoKey", "Strategy", "ber", "crop_attack", "dct_quantize_attack",
    "decompose", "embed_bits", "embed_image", "extract_bits", "extract_image", "make_strategy",
    "parse_pgm", "payload_width", "prng_new", "read_pgm", "rebuild", "rotation_attack", "run_bench",
    "save_pgm", "wavelet_quantize_attack", "weight", "write_pgm", "write_report",
]
