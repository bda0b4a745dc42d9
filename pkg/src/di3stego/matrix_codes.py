"""Syndrome-coding baselines: F5 Hamming embedding, nsF5 wet paper codes, MMx.

All arithmetic is over GF(2). Indices returned by this module are 0-based;
column ``j`` of a Hamming parity-check matrix is the binary expansion of
``j + 1`` with the first row holding the most significant bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import (
    BadParameter,
    InsufficientCoefficients,
    LengthMismatch,
    NoSolutionWithinBudget,
)
from .strategy import KeyedPrng


def _bits(v) -> np.ndarray:
    return np.asarray(v, dtype=np.uint8).ravel()


def int_columns(values, rows: int) -> np.ndarray:
    """Binary matrix whose columns are ``values`` written MSB-first on ``rows`` bits."""
    values = np.asarray(values, dtype=np.int64)
    shifts = np.arange(rows - 1, -1, -1, dtype=np.int64)
    return ((values[None, :] >> shifts[:, None]) & 1).astype(np.uint8)


@dataclass(frozen=True, eq=False)
class HammingCode:
    p: int
    H: np.ndarray

    @property
    def n(self) -> int:
        return self.H.shape[1]


def hamming_matrix(p: int) -> HammingCode:
    if not 1 <= p <= 16:
        raise BadParameter(f"p must lie in [1, 16], got {p}")
    H = int_columns(np.arange(1, 2**p), p)
    H.setflags(write=False)
    return HammingCode(p=p, H=H)


def gf2_matvec(A: np.ndarray, x) -> np.ndarray:
    return (A.astype(np.int64) @ _bits(x).astype(np.int64) % 2).astype(np.uint8)


def syndrome(code: HammingCode, x) -> np.ndarray:
    x = _bits(x)
    if x.size != code.n:
        raise LengthMismatch(f"block of {x.size} bits, code length {code.n}")
    return gf2_matvec(code.H, x)


def syndrome_value(bits) -> int:
    """Read a syndrome vector as an integer, first entry most significant."""
    v = 0
    for b in _bits(bits):
        v = (v << 1) | int(b)
    return v


# F5


def f5_embed_block(x, m, code: HammingCode) -> tuple[np.ndarray, int | None]:
    """Flip at most one bit of ``x`` so that ``H y = m``.

    Returns ``(y, j)`` where ``j`` is the flipped 0-based index, or ``None``
    when ``x`` already carries ``m``.
    """
    x, m = _bits(x), _bits(m)
    if m.size != code.p:
        raise LengthMismatch(f"message chunk of {m.size} bits, code carries {code.p}")
    delta = syndrome(code, x) ^ m
    d = syndrome_value(delta)
    y = x.copy()
    if d == 0:
        return y, None
    j = d - 1
    y[j] ^= 1
    return y, j


def f5_lsb(v: int) -> int:
    """F5's odd-symmetric LSB: ``1 - v mod 2`` for negatives, ``v mod 2`` otherwise."""
    v = int(v)
    return 1 - v % 2 if v < 0 else v % 2


def _pad_chunks(msg: np.ndarray, p: int) -> np.ndarray:
    pad = (-msg.size) % p
    return np.concatenate([msg, np.zeros(pad, dtype=np.uint8)]).reshape(-1, p)


def _next_group(coeffs: np.ndarray, start: int, n: int) -> list[int] | None:
    group = []
    i = start
    while len(group) < n and i < coeffs.size:
        if coeffs[i] != 0:
            group.append(i)
        i += 1
    return group if len(group) == n else None


def f5_embed_stream(coeffs, msg, p: int) -> np.ndarray:
    """Embed ``msg`` in ``p``-bit chunks over groups of ``2**p - 1`` nonzero coefficients.

    A flip decrements the coefficient's magnitude. When that produces a
    zero the group is abandoned and the chunk is embedded again into the
    next ``2**p - 1`` nonzero coefficients, starting where the abandoned
    group started (the decoder never sees the zeroed coefficient).
    """
    code = hamming_matrix(p)
    out = np.array(coeffs, dtype=np.int64)
    msg = _bits(msg)
    pos = 0
    for chunk in _pad_chunks(msg, p):
        while True:
            group = _next_group(out, pos, code.n)
            if group is None:
                raise InsufficientCoefficients("ran out of nonzero coefficients")
            x = np.array([f5_lsb(out[i]) for i in group], dtype=np.uint8)
            _, j = f5_embed_block(x, chunk, code)
            if j is None:
                break
            idx = group[j]
            out[idx] -= np.sign(out[idx])
            if out[idx] != 0:
                break
            # shrinkage: retry this chunk from the same place
        pos = group[-1] + 1
    return out


def f5_extract_stream(coeffs, nbits: int, p: int) -> np.ndarray:
    code = hamming_matrix(p)
    coeffs = np.asarray(coeffs, dtype=np.int64)
    chunks = []
    pos = 0
    for _ in range(-(-nbits // p)):
        group = _next_group(coeffs, pos, code.n)
        if group is None:
            raise InsufficientCoefficients("stream holds fewer groups than requested")
        x = np.array([f5_lsb(coeffs[i]) for i in group], dtype=np.uint8)
        chunks.append(syndrome(code, x))
        pos = group[-1] + 1
    return np.concatenate(chunks)[:nbits] if chunks else np.zeros(0, dtype=np.uint8)


# nsF5 wet paper codes


@dataclass(frozen=True, eq=False)
class WetPaperInstance:
    D: np.ndarray
    wet: frozenset
    delta: np.ndarray

    def __post_init__(self):
        D = np.asarray(self.D, dtype=np.uint8)
        if D.ndim != 2:
            raise BadParameter("D must be a 2-D binary matrix")
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "delta", _bits(self.delta))
        object.__setattr__(self, "wet", frozenset(int(j) for j in self.wet))
        if self.delta.size != D.shape[0]:
            raise LengthMismatch(f"syndrome of {self.delta.size} bits for {D.shape[0]} rows")
        if any(not 0 <= j < D.shape[1] for j in self.wet):
            raise BadParameter("wet indices must address columns of D")

    def check_columns(self) -> None:
        """Reject null or repeated columns, as the construction forbids them."""
        cols = [syndrome_value(c) for c in self.D.T]
        if 0 in cols or len(set(cols)) != len(cols):
            raise BadParameter("D must not contain null or repeated columns")


def random_parity_matrix(rows: int, n: int, prng: KeyedPrng) -> np.ndarray:
    """``rows x n`` matrix with distinct nonzero columns drawn from ``1 .. 2**rows - 1``."""
    if n > 2**rows - 1:
        raise BadParameter(f"cannot draw {n} distinct nonzero columns of {rows} bits")
    pool = list(range(1, 2**rows))
    # partial Fisher-Yates: the first n slots are a uniform sample without replacement
    for i in range(n):
        j = i + prng.next_below(len(pool) - i)
        pool[i], pool[j] = pool[j], pool[i]
    return int_columns(pool[:n], rows)


def random_wet_set(n: int, dry: int, prng: KeyedPrng) -> frozenset:
    if not 0 <= dry <= n:
        raise BadParameter(f"dry count {dry} outside [0, {n}]")
    order = prng.shuffle(list(range(n)))
    return frozenset(order[dry:])


def wet_paper_solve(inst: WetPaperInstance) -> np.ndarray | None:
    """Solve ``D v = delta`` with ``v`` zero on wet columns, or return ``None``.

    Gaussian elimination over the dry columns, pivoting on the lowest
    available column and row; free variables are set to zero.
    """
    D = inst.D
    rows, n = D.shape
    dry = [j for j in range(n) if j not in inst.wet]
    # augmented system restricted to dry columns
    A = np.concatenate([D[:, dry], inst.delta[:, None]], axis=1).astype(np.uint8)
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(len(dry)):
        if r == rows:
            break
        hits = np.nonzero(A[r:, c])[0]
        if hits.size == 0:
            continue
        piv = r + hits[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        A[others] ^= A[r]
        pivots.append((r, c))
        r += 1
    if A[r:, -1].any():
        return None
    v = np.zeros(n, dtype=np.uint8)
    for row, c in pivots:
        v[dry[c]] = A[row, -1]
    return v


def nsf5_embed_block(x, m, D, wet) -> np.ndarray | None:
    """Change only dry bits of ``x`` so that ``D y = m``; ``None`` if impossible."""
    x = _bits(x)
    inst = WetPaperInstance(D=D, wet=wet, delta=gf2_matvec(np.asarray(D), x) ^ _bits(m))
    v = wet_paper_solve(inst)
    return None if v is None else x ^ v


# MMx


def mmx_embed_block(x, m, code: HammingCode, rho, max_flips: int = 2):
    """Cheapest flip set of size at most ``max_flips`` whose columns sum to the syndrome gap.

    Returns ``(y, flips, cost)``; ties go to the lexicographically smallest
    index tuple.
    """
    x, m = _bits(x), _bits(m)
    rho = np.asarray(rho, dtype=float).ravel()
    if not 1 <= max_flips <= 3:
        raise BadParameter(f"max_flips must be 1, 2 or 3, got {max_flips}")
    if rho.size != code.n:
        raise LengthMismatch(f"{rho.size} costs for a block of {code.n}")
    if m.size != code.p:
        raise LengthMismatch(f"message chunk of {m.size} bits, code carries {code.p}")
    d = syndrome_value(syndrome(code, x) ^ m)
    if d == 0:
        return x.copy(), (), 0.0

    # column j of a Hamming matrix is the integer j + 1
    best = None
    for size in range(1, max_flips + 1):
        for flips in combinations(range(code.n), size):
            acc = 0
            for j in flips:
                acc ^= j + 1
            if acc != d:
                continue
            cost = float(rho[list(flips)].sum())
            if best is None or (cost, flips) < best:
                best = (cost, flips)
    if best is None:
        raise NoSolutionWithinBudget(f"no flip set of size <= {max_flips} reaches the syndrome")
    cost, flips = best
    y = x.copy()
    y[list(flips)] ^= 1
    return y, flips, cost
