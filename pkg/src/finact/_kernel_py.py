"""Pure numpy fallback for the compiled kernel in _kernel.pyx.

Both backends must agree bit for bit; the parity test compares them when the
compiled module is importable. Flag bits: A1=1, A2=2, A3=4, A4=8, K3=16,
K4=32, commutative=64, associative=128.
"""

from __future__ import annotations

import numpy as np


def flags_bitmask(table, n: int) -> int:
    """Bitmask of the eight identity flags for one flat ternary table.

    The 4- and 5-index scans are chunked over their leading index to keep the
    intermediate arrays at O(n^4) and below."""
    t = np.ascontiguousarray(table, dtype=np.int64).ravel()
    if t.shape[0] != n**3:
        raise ValueError("table must have n**3 entries")
    t = t.reshape(n, n, n)
    mask = 0

    X2, Y2 = np.indices((n, n))
    if bool(np.all(t[X2, Y2, Y2] == X2)):
        mask |= 1
    if bool(np.all(t[X2, X2, Y2] == Y2)):
        mask |= 2

    X, Y, Z = np.indices((n, n, n))
    if all(np.array_equal(t[p][X, t], t[p][Y, Z]) for p in range(n)):
        mask |= 4
    if all(np.array_equal(t[t[p][X, Y], Y, Z], t[p][X, Z]) for p in range(n)):
        mask |= 8
    if bool(np.all(t[X, Y, t.transpose(1, 0, 2)] == Z)):
        mask |= 16
    if bool(np.all(t[t.transpose(1, 0, 2), Z, X] == Y)):
        mask |= 32
    if np.array_equal(t, t.transpose(2, 1, 0)):
        mask |= 64

    Y4, Z4, R4, S4 = np.indices((n, n, n, n))
    if all(
        np.array_equal(t[t[x][Y4, Z4], R4, S4], t[x][Y4, t[Z4, R4, S4]])
        for x in range(n)
    ):
        mask |= 128

    return mask


def scan_a1a2_n3() -> np.ndarray:
    """Identity bitmask for every A1/A2-prefilled ternary table on 3 elements.

    Cell (x, y, z) sits at column (x*3 + y)*3 + z. The 12 cells with x != y
    and y != z are free; candidate c takes the base-3 digits of c in
    lexicographic cell order, most significant first."""
    total = 3**12
    cells = [(x, y, z) for x in range(3) for y in range(3) for z in range(3)]
    T = np.zeros((total, 27), dtype=np.int8)
    free: list[int] = []
    for ci, (x, y, z) in enumerate(cells):
        if y == z:
            T[:, ci] = x
        elif x == y:
            T[:, ci] = z
        else:
            free.append(ci)
    cand = np.arange(total, dtype=np.int64)
    for k, ci in enumerate(free):
        T[:, ci] = ((cand // 3 ** (11 - k)) % 3).astype(np.int8)

    def gather(idx: np.ndarray) -> np.ndarray:
        return np.take_along_axis(T, idx[:, None], axis=1)[:, 0]

    def col(ci: int) -> np.ndarray:
        return T[:, ci].astype(np.int64)

    masks = np.full(total, 3, dtype=np.uint8)

    ok = np.ones(total, dtype=bool)
    for p in range(3):
        for x in range(3):
            for y in range(3):
                for z in range(3):
                    ok &= gather((p * 3 + x) * 3 + col((x * 3 + y) * 3 + z)) == T[:, (p * 3 + y) * 3 + z]
    masks[ok] |= 4

    ok = np.ones(total, dtype=bool)
    for p in range(3):
        for x in range(3):
            for y in range(3):
                for z in range(3):
                    ok &= gather((col((p * 3 + x) * 3 + y) * 3 + y) * 3 + z) == T[:, (p * 3 + x) * 3 + z]
    masks[ok] |= 8

    ok = np.ones(total, dtype=bool)
    for x in range(3):
        for y in range(3):
            for z in range(3):
                ok &= gather((x * 3 + y) * 3 + col((y * 3 + x) * 3 + z)) == z
    masks[ok] |= 16

    ok = np.ones(total, dtype=bool)
    for x in range(3):
        for y in range(3):
            for z in range(3):
                ok &= gather((col((y * 3 + x) * 3 + z) * 3 + z) * 3 + x) == y
    masks[ok] |= 32

    ok = np.ones(total, dtype=bool)
    for x in range(3):
        for y in range(3):
            for z in range(3):
                ok &= T[:, (x * 3 + y) * 3 + z] == T[:, (z * 3 + y) * 3 + x]
    masks[ok] |= 64

    ok = np.ones(total, dtype=bool)
    for x in range(3):
        for y in range(3):
            for z in range(3):
                for r in range(3):
                    for p in range(3):
                        lhs = gather((col((x * 3 + y) * 3 + z) * 3 + r) * 3 + p)
                        rhs = gather((x * 3 + y) * 3 + col((z * 3 + r) * 3 + p))
                        ok &= lhs == rhs
    masks[ok] |= 128

    return masks
