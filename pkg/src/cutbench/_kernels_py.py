"""Reference amplitude-update kernels in pure numpy.

Each function mutates a complex128 array of length 2^n in place. Matrix
index convention: for two-qubit kernels the first operand qubit is the
least-significant bit of the 4x4 matrix index.

The compiled extension (_kernels) implements the same signatures; the
package selects between them at import time in `kernels`.
"""
from __future__ import annotations

import numpy as np


def _pair_views(amps: np.ndarray, q: int):
    v = amps.reshape(-1, 2, 1 << q)
    return v[:, 0, :], v[:, 1, :]


def apply_1q(amps: np.ndarray, m: np.ndarray, q: int) -> None:
    lo, hi = _pair_views(amps, q)
    a = lo.copy()
    lo[...] = m[0, 0] * a + m[0, 1] * hi
    hi[...] = m[1, 0] * a + m[1, 1] * hi


def _block_views(amps: np.ndarray, qa: int, qb: int):
    """Return block(ba, bb): the sub-array where qubit qa has bit ba and
    qubit qb has bit bb."""
    lo, hi = (qa, qb) if qa < qb else (qb, qa)
    v = amps.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)

    def block(ba: int, bb: int) -> np.ndarray:
        b_lo, b_hi = (ba, bb) if qa == lo else (bb, ba)
        return v[:, b_hi, :, b_lo, :]

    return block


def apply_2q(amps: np.ndarray, m: np.ndarray, qa: int, qb: int) -> None:
    block = _block_views(amps, qa, qb)
    x = [block(j & 1, j >> 1).copy() for j in range(4)]
    for j in range(4):
        block(j & 1, j >> 1)[...] = (
            m[j, 0] * x[0] + m[j, 1] * x[1] + m[j, 2] * x[2] + m[j, 3] * x[3]
        )


def apply_cx(amps: np.ndarray, control: int, target: int) -> None:
    block = _block_views(amps, control, target)
    a, b = block(1, 0), block(1, 1)
    tmp = a.copy()
    a[...] = b
    b[...] = tmp


def apply_cz(amps: np.ndarray, qa: int, qb: int) -> None:
    block = _block_views(amps, qa, qb)
    block(1, 1)[...] *= -1.0


def apply_swap(amps: np.ndarray, qa: int, qb: int) -> None:
    block = _block_views(amps, qa, qb)
    a, b = block(1, 0), block(0, 1)
    tmp = a.copy()
    a[...] = b
    b[...] = tmp
