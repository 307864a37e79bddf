"""Dense spin-chain plumbing shared by the row and column pictures.

Quantum states of an n-column row boundary live in a 2^n vector indexed
by a bitmask: bit (k-1) holds the spin of column k, 0 = up, 1 = down.
Operator-valued 2x2 auxiliary matrices are kept as nested lists
[[M00, M01], [M10, M11]] of dense (2^n, 2^n) arrays.
"""
from __future__ import annotations

import numpy as np


def w_plus(n: int) -> np.ndarray:
    v = np.zeros(2 ** n)
    v[0] = 1.0
    return v


def w_minus(n: int) -> np.ndarray:
    v = np.zeros(2 ** n)
    v[-1] = 1.0
    return v


def basis_index(positions, n: int) -> int:
    """Index of the basis state with down spins exactly at `positions` (1-based)."""
    idx = 0
    for x in positions:
        if not 1 <= x <= n:
            raise IndexError(f"position {x} outside 1..{n}")
        if idx >> (x - 1) & 1:
            raise IndexError(f"position {x} repeated")
        idx |= 1 << (x - 1)
    return idx


def apply_site(op2: np.ndarray, k: int, n: int, m: np.ndarray) -> np.ndarray:
    """Left-multiply by op2 embedded at column k, without forming the embedding."""
    shape = m.shape
    t = m.reshape(2 ** (n - k), 2, -1)
    return np.einsum("ab,hbl->hal", op2, t).reshape(shape)


def site_blocks(m4: np.ndarray):
    """Split a 4x4 aux (x) site matrix into its 2x2 aux blocks."""
    return [[m4[0:2, 0:2], m4[0:2, 2:4]], [m4[2:4, 0:2], m4[2:4, 2:4]]]


def aux_identity_blocks(dim: int):
    z = np.zeros((dim, dim))
    return [[np.eye(dim), z.copy()], [z.copy(), np.eye(dim)]]


def aux_block_matmul(x, y):
    """Product of two operator-valued 2x2 auxiliary matrices."""
    return [[x[i][0] @ y[0][j] + x[i][1] @ y[1][j] for j in range(2)]
            for i in range(2)]


def fold_site_blocks(blocks_per_site, n: int):
    """Left-multiply embedded single-site aux blocks for k = 1..n onto the identity.

    blocks_per_site[k-1] is the 2x2 aux block list of the 4x4 local matrix
    at column k (or None to skip that column); the result is the aux-block
    form of block_n ... block_1.
    """
    t = aux_identity_blocks(2 ** n)
    for k in range(1, n + 1):
        blk = blocks_per_site[k - 1]
        if blk is None:
            continue
        t = [[apply_site(blk[i][0], k, n, t[0][j])
              + apply_site(blk[i][1], k, n, t[1][j]) for j in range(2)]
             for i in range(2)]
    return t
