"""Vectorized numpy versions of the compiled kernels (same signatures)."""

from __future__ import annotations

import numpy as np


def _product(A, B, mul, add):
    n = mul.shape[0]
    m = max(A.shape[0], B.shape[0])
    A = np.broadcast_to(A, (m, n * n))
    B = np.broadcast_to(B, (m, n * n))
    out = np.empty((m, n * n), dtype=np.int32)
    for i in range(n):
        for j in range(n):
            acc = np.zeros(m, dtype=np.int32)
            for k in range(n):
                term = mul[i, k, j, A[:, i * n + k], B[:, k * n + j]]
                acc = add[i, j, acc, term]
            out[:, i * n + j] = acc
    return out


def matmul_pairs(A, B, mul, add):
    return _product(np.asarray(A), np.asarray(B), mul, add)


def left_mul_many(g, B, mul, add):
    return _product(np.asarray(g)[None, :], np.asarray(B), mul, add)


def member_mask(C, res, fadd, fmul, fneg, finv):
    C = np.asarray(C)
    n = res.shape[0]
    m = C.shape[0]
    M = np.empty((m, n, n), dtype=np.int32)
    for i in range(n):
        for j in range(n):
            M[:, i, j] = res[i, j, C[:, i * n + j]]
    alive = np.ones(m, dtype=bool)
    rows = np.arange(m)
    for col in range(n):
        nz = M[:, col:, col] != 0
        has = nz.any(axis=1)
        alive &= has
        piv = col + np.argmax(nz, axis=1)
        top = M[rows, piv].copy()
        M[rows, piv] = M[:, col]
        M[:, col] = top
        pinv = finv[M[:, col, col]]
        for r in range(col + 1, n):
            factor = fmul[M[:, r, col], pinv]
            for j in range(col, n):
                M[:, r, j] = fadd[M[:, r, j], fneg[fmul[factor, M[:, col, j]]]]
    return alive.astype(np.uint8)


def closure_count(A, B, mul, add, res, fadd, fmul, fneg, finv):
    A, B = np.asarray(A), np.asarray(B)
    bad = 0
    for s in range(A.shape[0]):
        C = _product(A[s][None, :], B, mul, add)
        bad += int(C.shape[0] - member_mask(C, res, fadd, fmul, fneg, finv).sum())
    return bad
