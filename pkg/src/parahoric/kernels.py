"""Kernel selection: the compiled extension when built, numpy otherwise.

Set ``PARAHORIC_PURE=1`` to force the numpy versions.
"""

from __future__ import annotations

import os

import numpy as np

if os.environ.get("PARAHORIC_PURE") == "1":
    from . import _kernels_py as _impl
    BACKEND = "numpy"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl
        BACKEND = "numpy"

from . import _kernels_py as pure  # noqa: E402


def group_tables(G) -> dict:
    """Padded integer tables for a windowed group (cached on the group)."""
    if G._kernel is not None:
        return G._kernel
    T, n = G.tables, G.n
    N = max(S.size for row in G.spaces for S in row)
    mul = np.zeros((n, n, n, N, N), dtype=np.int32)
    add = np.zeros((n, n, N, N), dtype=np.int32)
    res = np.zeros((n, n, N), dtype=np.int32)
    for i in range(n):
        for j in range(n):
            a = np.array(T.add[i][j], dtype=np.int32)
            add[i, j, :a.shape[0], :a.shape[1]] = a
            r = np.array(T.res[i][j], dtype=np.int32)
            res[i, j, :r.shape[0]] = r
            for k in range(n):
                m = np.array(T.mul[i][k][j], dtype=np.int32)
                mul[i, k, j, :m.shape[0], :m.shape[1]] = m
    F = G.field
    els = F.elements()
    fadd = np.array([[F.code(x + y) for y in els] for x in els], dtype=np.int32)
    fmul = np.array([[F.code(x * y) for y in els] for x in els], dtype=np.int32)
    fneg = np.array([F.code(-x) for x in els], dtype=np.int32)
    finv = np.array([F.code(F.inverse(x)) if x != F.zero else 0 for x in els], dtype=np.int32)
    G._kernel = {"mul": mul, "add": add, "res": res, "fadd": fadd, "fmul": fmul,
                 "fneg": fneg, "finv": finv}
    return G._kernel


def as_array(elements) -> np.ndarray:
    return np.ascontiguousarray(np.array([g.codes for g in elements], dtype=np.int32))


def matmul_pairs(G, A, B, impl=None):
    t = group_tables(G)
    return (impl or _impl).matmul_pairs(A, B, t["mul"], t["add"])


def left_mul_many(G, g, B, impl=None):
    t = group_tables(G)
    return (impl or _impl).left_mul_many(np.ascontiguousarray(np.array(g.codes, dtype=np.int32)),
                                         B, t["mul"], t["add"])


def member_mask(G, C, impl=None):
    t = group_tables(G)
    return (impl or _impl).member_mask(C, t["res"], t["fadd"], t["fmul"], t["fneg"], t["finv"])


def closure_count(G, A, B, impl=None) -> int:
    """Products of A x B that leave the group (0 means closed)."""
    t = group_tables(G)
    return int((impl or _impl).closure_count(A, B, t["mul"], t["add"], t["res"], t["fadd"],
                                             t["fmul"], t["fneg"], t["finv"]))
