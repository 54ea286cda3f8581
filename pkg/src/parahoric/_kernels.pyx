# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot loops for windowed matrix products.

Elements are rows of n*n window codes.  ``mul[i,k,j,a,b]`` is the code of the
(i, j) contribution of y_ik = a and y_kj = b; ``add[i,j]`` adds codes in the
(i, j) window.  Membership is a nonzero residue determinant over F_q.
Tables arrive padded to a common window size N and are walked through raw
pointers.
"""

import numpy as np

cdef struct Tabs:
    const int* mul
    const int* add
    const int* res
    const int* fadd
    const int* fmul
    const int* fneg
    const int* finv
    int n
    int N
    int q


cdef inline void _product(const Tabs* T, const int* a, const int* b, int* out) noexcept nogil:
    cdef int n = T.n, N = T.N, i, j, k, acc
    cdef Py_ssize_t NN = <Py_ssize_t>N * N, cell
    for i in range(n):
        for j in range(n):
            acc = 0
            cell = i * n + j
            for k in range(n):
                acc = T.add[cell * NN + acc * N
                            + T.mul[((i * n + k) * n + j) * NN + a[i * n + k] * N + b[k * n + j]]]
            out[cell] = acc


cdef inline bint _unit_det(const Tabs* T, const int* c) noexcept nogil:
    cdef int M[64]
    cdef int n = T.n, N = T.N, q = T.q, i, r, col, piv, t, j, factor
    for i in range(n * n):
        M[i] = T.res[i * N + c[i]]
    for col in range(n):
        piv = -1
        for r in range(col, n):
            if M[r * n + col] != 0:
                piv = r
                break
        if piv < 0:
            return False
        if piv != col:
            for j in range(n):
                t = M[col * n + j]
                M[col * n + j] = M[piv * n + j]
                M[piv * n + j] = t
        for r in range(col + 1, n):
            if M[r * n + col] != 0:
                factor = T.fmul[M[r * n + col] * q + T.finv[M[col * n + col]]]
                for j in range(col, n):
                    M[r * n + j] = T.fadd[M[r * n + j] * q
                                          + T.fneg[T.fmul[factor * q + M[col * n + j]]]]
    return True


cdef Tabs _tabs(const int[:, :, :, :, ::1] mul, const int[:, :, :, ::1] add,
                const int[:, :, ::1] res, const int[:, ::1] fadd, const int[:, ::1] fmul,
                const int[::1] fneg, const int[::1] finv):
    cdef Tabs T
    T.mul = &mul[0, 0, 0, 0, 0]
    T.add = &add[0, 0, 0, 0]
    T.n = mul.shape[0]
    T.N = mul.shape[3]
    if res is not None:
        T.res = &res[0, 0, 0]
        T.fadd = &fadd[0, 0]
        T.fmul = &fmul[0, 0]
        T.fneg = &fneg[0]
        T.finv = &finv[0]
        T.q = fadd.shape[0]
    return T


def matmul_pairs(const int[:, ::1] A, const int[:, ::1] B,
                 const int[:, :, :, :, ::1] mul, const int[:, :, :, ::1] add):
    cdef Tabs T = _tabs(mul, add, None, None, None, None, None)
    cdef Py_ssize_t m = A.shape[0], s
    out = np.zeros((m, T.n * T.n), dtype=np.int32)
    cdef int[:, ::1] C = out
    if m == 0:
        return out
    with nogil:
        for s in range(m):
            _product(&T, &A[s, 0], &B[s, 0], &C[s, 0])
    return out


def left_mul_many(const int[::1] g, const int[:, ::1] B,
                  const int[:, :, :, :, ::1] mul, const int[:, :, :, ::1] add):
    cdef Tabs T = _tabs(mul, add, None, None, None, None, None)
    cdef Py_ssize_t m = B.shape[0], s
    out = np.zeros((m, T.n * T.n), dtype=np.int32)
    cdef int[:, ::1] C = out
    if m == 0:
        return out
    with nogil:
        for s in range(m):
            _product(&T, &g[0], &B[s, 0], &C[s, 0])
    return out


def member_mask(const int[:, ::1] C, const int[:, :, ::1] res, const int[:, ::1] fadd,
                const int[:, ::1] fmul, const int[::1] fneg, const int[::1] finv):
    cdef Tabs T
    T.n = res.shape[0]
    T.N = res.shape[2]
    T.res = &res[0, 0, 0]
    T.fadd = &fadd[0, 0]
    T.fmul = &fmul[0, 0]
    T.fneg = &fneg[0]
    T.finv = &finv[0]
    T.q = fadd.shape[0]
    cdef Py_ssize_t m = C.shape[0], s
    out = np.zeros(m, dtype=np.uint8)
    cdef unsigned char[::1] o = out
    if m == 0:
        return out
    with nogil:
        for s in range(m):
            o[s] = _unit_det(&T, &C[s, 0])
    return out


def closure_count(const int[:, ::1] A, const int[:, ::1] B,
                  const int[:, :, :, :, ::1] mul, const int[:, :, :, ::1] add,
                  const int[:, :, ::1] res, const int[:, ::1] fadd, const int[:, ::1] fmul,
                  const int[::1] fneg, const int[::1] finv):
    """Number of pairs (a, b) in A x B whose product is not a member.

    When a whole column of window codes fits in a small table (N^n <= 4096),
    each left factor first tabulates its action on every possible column,
    so a product costs n*n lookups.
    """
    cdef Tabs T = _tabs(mul, add, res, fadd, fmul, fneg, finv)
    cdef Py_ssize_t ma = A.shape[0], mb = B.shape[0], s, t
    cdef int n = T.n, N = T.N, i, j, k, acc
    cdef Py_ssize_t NN = <Py_ssize_t>N * N, ncol = 1, col, c, x
    cdef int buf[64]
    cdef int digits[8]
    cdef long long bad = 0
    if ma == 0 or mb == 0:
        return 0
    for i in range(n):
        ncol *= N
    if ncol > 4096:
        with nogil:
            for s in range(ma):
                for t in range(mb):
                    _product(&T, &A[s, 0], &B[t, 0], buf)
                    if not _unit_det(&T, buf):
                        bad += 1
        return bad
    colcode_arr = np.zeros((mb, n), dtype=np.int64)
    cdef long long[:, ::1] colcode = colcode_arr
    for t in range(mb):
        for j in range(n):
            x = 0
            for k in range(n - 1, -1, -1):
                x = x * N + B[t, k * n + j]
            colcode[t, j] = x
    # few residue matrices: tabulate "determinant is a unit" once, indexed by
    # the base-q code of the residue matrix
    cdef int q = T.q
    cdef Py_ssize_t nres = 1, code
    for i in range(n * n):
        nres *= q
    if nres > (1 << 20):
        with nogil:
            for s in range(ma):
                for t in range(mb):
                    _product(&T, &A[s, 0], &B[t, 0], buf)
                    if not _unit_det(&T, buf):
                        bad += 1
        return bad
    ident_arr = np.tile(np.arange(q, dtype=np.int32), n * n)
    cdef int[::1] ident = ident_arr
    cdef Tabs R = T
    R.N = q
    R.res = &ident[0]
    unit_arr = np.zeros(nres, dtype=np.uint8)
    cdef unsigned char[::1] unit = unit_arr
    with nogil:
        for code in range(nres):
            c = code
            for i in range(n * n):
                buf[i] = c % q
                c = c // q
            unit[code] = _unit_det(&R, buf)
    rtable_arr = np.zeros((n, n, ncol), dtype=np.int64)
    cdef long long[:, :, ::1] rtable = rtable_arr
    cdef long long weight, rc
    with nogil:
        for s in range(ma):
            weight = 1
            for i in range(n):
                for j in range(n):
                    for col in range(ncol):
                        c = col
                        for k in range(n):
                            digits[k] = c % N
                            c = c // N
                        acc = 0
                        for k in range(n):
                            acc = T.add[(i * n + j) * NN + acc * N
                                        + T.mul[((i * n + k) * n + j) * NN
                                                + A[s, i * n + k] * N + digits[k]]]
                        rtable[i, j, col] = T.res[(i * n + j) * N + acc] * weight
                    weight *= q
            for t in range(mb):
                rc = 0
                for i in range(n):
                    for j in range(n):
                        rc += rtable[i, j, colcode[t, j]]
                if not unit[rc]:
                    bad += 1
    return bad
