"""Arithmetic over GF(2^16) and Cauchy coefficient matrices.

Log/antilog tables drive multiplication; addition is XOR.  Payloads are
vectors of 16-bit words, so all bulk operations are vectorized over numpy
uint16 arrays.  Cauchy matrices supply the erasure-coding coefficients:
every square submatrix of a Cauchy matrix is invertible, which is exactly
the solvability guarantee the coded delivery needs.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigurationError

FIELD_BITS = 16
FIELD_SIZE = 1 << FIELD_BITS
ORDER = FIELD_SIZE - 1

# Candidate degree-16 polynomials; the first primitive one is used.
_CANDIDATE_POLYS = (0x1100B, 0x1002D, 0x10039, 0x1003F, 0x14FAB)


def _build_tables():
    for poly in _CANDIDATE_POLYS:
        exp = np.zeros(2 * ORDER, dtype=np.uint16)
        log = np.zeros(FIELD_SIZE, dtype=np.int64)
        x = 1
        ok = True
        for i in range(ORDER):
            exp[i] = x
            if log[x] and x != 1:
                ok = False
                break
            log[x] = i
            x <<= 1
            if x & FIELD_SIZE:
                x ^= poly
        if ok and x == 1:
            exp[ORDER:] = exp[:ORDER]
            return exp, log, poly
    raise ConfigurationError("no primitive polynomial found")


EXP, LOG, PRIMITIVE_POLY = _build_tables()


def mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return int(EXP[LOG[a] + LOG[b]])


def inv(a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("no inverse of 0 in GF(2^16)")
    return int(EXP[ORDER - LOG[a]])


def scale(scalar: int, words: np.ndarray) -> np.ndarray:
    """scalar * words, elementwise over GF(2^16)."""
    if scalar == 0:
        return np.zeros_like(words)
    out = EXP[LOG[scalar] + LOG[words.astype(np.int64)]].astype(np.uint16)
    out[words == 0] = 0
    return out


def cauchy_matrix(num_rows: int, num_cols: int) -> np.ndarray:
    """C[i, j] = 1 / (x_i ^ y_j) with all x_i, y_j distinct field elements."""
    if num_rows + num_cols > FIELD_SIZE:
        raise ConfigurationError(
            f"Cauchy matrix needs {num_rows + num_cols} distinct field elements, "
            f"only {FIELD_SIZE} available"
        )
    mat = np.zeros((num_rows, num_cols), dtype=np.uint16)
    for i in range(num_rows):
        for j in range(num_cols):
            mat[i, j] = inv(i ^ (num_rows + j))
    return mat


def matvec(matrix: np.ndarray, payloads: np.ndarray) -> np.ndarray:
    """Matrix (n x k) times k payload rows, each a uint16 word vector."""
    n, k = matrix.shape
    out = np.zeros((n, payloads.shape[1]), dtype=np.uint16)
    for i in range(n):
        acc = np.zeros(payloads.shape[1], dtype=np.uint16)
        for j in range(k):
            acc ^= scale(int(matrix[i, j]), payloads[j])
        out[i] = acc
    return out


def solve(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve A X = B over GF(2^16); A is square n x n, B holds n payload rows."""
    n = matrix.shape[0]
    a = matrix.astype(np.uint16).copy()
    b = rhs.astype(np.uint16).copy()
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r, col]), None)
        if pivot is None:
            raise ConfigurationError("singular coefficient matrix")
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            b[[col, pivot]] = b[[pivot, col]]
        piv_inv = inv(int(a[col, col]))
        a[col] = scale(piv_inv, a[col])
        b[col] = scale(piv_inv, b[col])
        for r in range(n):
            if r != col and a[r, col]:
                factor = int(a[r, col])
                a[r] ^= scale(factor, a[col])
                b[r] ^= scale(factor, b[col])
    return b
