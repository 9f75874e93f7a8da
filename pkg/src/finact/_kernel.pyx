# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled loops for ternary identity scans.

Semantics must match finact._kernel_py exactly; the selector in finact.kernel
picks whichever is available. Flag bits: A1=1, A2=2, A3=4, A4=8, K3=16, K4=32,
commutative=64, associative=128.
"""

import numpy as np


def flags_bitmask(table, int n):
    """Bitmask of the eight identity flags for one flat ternary table.

    Entry (x, y, z) sits at index (x*n + y)*n + z. Associativity is the
    expensive flag at O(n^5); everything else is O(n^4) or below.
    """
    arr = np.ascontiguousarray(table, dtype=np.int64).ravel()
    if arr.shape[0] != n * n * n:
        raise ValueError("table must have n**3 entries")
    cdef long[::1] t = arr
    cdef long n2 = n * n
    cdef int mask = 0
    cdef int ok
    cdef long x, y, z, p, r

    ok = 1
    for x in range(n):
        for y in range(n):
            if t[x * n2 + y * n + y] != x:
                ok = 0
                break
        if not ok:
            break
    if ok:
        mask |= 1

    ok = 1
    for x in range(n):
        for y in range(n):
            if t[x * n2 + x * n + y] != y:
                ok = 0
                break
        if not ok:
            break
    if ok:
        mask |= 2

    ok = 1
    for p in range(n):
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if t[p * n2 + x * n + t[x * n2 + y * n + z]] != t[p * n2 + y * n + z]:
                        ok = 0
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            break
    if ok:
        mask |= 4

    ok = 1
    for p in range(n):
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if t[t[p * n2 + x * n + y] * n2 + y * n + z] != t[p * n2 + x * n + z]:
                        ok = 0
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            break
    if ok:
        mask |= 8

    ok = 1
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if t[x * n2 + y * n + t[y * n2 + x * n + z]] != z:
                    ok = 0
                    break
            if not ok:
                break
        if not ok:
            break
    if ok:
        mask |= 16

    ok = 1
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if t[t[y * n2 + x * n + z] * n2 + z * n + x] != y:
                    ok = 0
                    break
            if not ok:
                break
        if not ok:
            break
    if ok:
        mask |= 32

    ok = 1
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if t[x * n2 + y * n + z] != t[z * n2 + y * n + x]:
                    ok = 0
                    break
            if not ok:
                break
        if not ok:
            break
    if ok:
        mask |= 64

    ok = 1
    for x in range(n):
        for y in range(n):
            for z in range(n):
                for r in range(n):
                    for p in range(n):
                        if t[t[x * n2 + y * n + z] * n2 + r * n + p] != t[x * n2 + y * n + t[z * n2 + r * n + p]]:
                            ok = 0
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            break
    if ok:
        mask |= 128

    return mask


def scan_a1a2_n3():
    """Identity bitmask for every ternary table on 3 elements prefilled by
    A1 ([x,y,y] = x) and A2 ([x,x,y] = y).

    The 12 cells with x != y and y != z are free; candidate c assigns the
    base-3 digits of c to them in lexicographic cell order, most significant
    digit first. Returns a uint8 array of length 3**12 = 531441.
    """
    out_arr = np.zeros(531441, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef long t[27]
    cdef long free_cells[12]
    cdef long digits[12]
    cdef long x, y, z, p, r, c, k
    cdef int mask, ok

    k = 0
    for x in range(3):
        for y in range(3):
            for z in range(3):
                if y == z:
                    t[(x * 3 + y) * 3 + z] = x
                elif x == y:
                    t[(x * 3 + y) * 3 + z] = z
                else:
                    free_cells[k] = (x * 3 + y) * 3 + z
                    k += 1

    for k in range(12):
        digits[k] = 0
        t[free_cells[k]] = 0

    for c in range(531441):
        mask = 3

        ok = 1
        for p in range(3):
            for x in range(3):
                for y in range(3):
                    for z in range(3):
                        if t[(p * 3 + x) * 3 + t[(x * 3 + y) * 3 + z]] != t[(p * 3 + y) * 3 + z]:
                            ok = 0
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            mask |= 4

        ok = 1
        for p in range(3):
            for x in range(3):
                for y in range(3):
                    for z in range(3):
                        if t[(t[(p * 3 + x) * 3 + y] * 3 + y) * 3 + z] != t[(p * 3 + x) * 3 + z]:
                            ok = 0
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            mask |= 8

        ok = 1
        for x in range(3):
            for y in range(3):
                for z in range(3):
                    if t[(x * 3 + y) * 3 + t[(y * 3 + x) * 3 + z]] != z:
                        ok = 0
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            mask |= 16

        ok = 1
        for x in range(3):
            for y in range(3):
                for z in range(3):
                    if t[(t[(y * 3 + x) * 3 + z] * 3 + z) * 3 + x] != y:
                        ok = 0
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            mask |= 32

        ok = 1
        for x in range(3):
            for y in range(3):
                for z in range(3):
                    if t[(x * 3 + y) * 3 + z] != t[(z * 3 + y) * 3 + x]:
                        ok = 0
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            mask |= 64

        ok = 1
        for x in range(3):
            for y in range(3):
                for z in range(3):
                    for r in range(3):
                        for p in range(3):
                            if t[(t[(x * 3 + y) * 3 + z] * 3 + r) * 3 + p] != t[(x * 3 + y) * 3 + t[(z * 3 + r) * 3 + p]]:
                                ok = 0
                                break
                        if not ok:
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            mask |= 128

        out[c] = <unsigned char> mask

        k = 11
        while k >= 0:
            digits[k] += 1
            if digits[k] == 3:
                digits[k] = 0
                t[free_cells[k]] = 0
                k -= 1
            else:
                t[free_cells[k]] = digits[k]
                break

    return out_arr
