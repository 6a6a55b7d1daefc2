# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels over F_p; same contracts and scan order as _kernels_py."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

ctypedef long long i64

BACKEND = "cython"


cdef inline i64 _inv(i64 a, i64 p) nogil:
    cdef i64 result = 1, base = a % p, e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


cdef int _rref_inplace(i64* R, int m, int n, i64 p, int* pivots) nogil:
    """Row-reduce an m x n row-major buffer in place; returns the rank."""
    cdef int r = 0, c, i, k, j
    cdef i64 t, inv, f
    for c in range(n):
        if r == m:
            break
        k = -1
        for i in range(r, m):
            if R[i * n + c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(n):
                t = R[r * n + j]
                R[r * n + j] = R[k * n + j]
                R[k * n + j] = t
        inv = _inv(R[r * n + c], p)
        for j in range(n):
            R[r * n + j] = (R[r * n + j] * inv) % p
        for i in range(m):
            if i != r:
                f = R[i * n + c]
                if f != 0:
                    for j in range(n):
                        R[i * n + j] = (R[i * n + j] - f * R[r * n + j]) % p
                        if R[i * n + j] < 0:
                            R[i * n + j] += p
        if pivots != NULL:
            pivots[r] = c
        r += 1
    return r


def rref(a, p):
    cdef cnp.ndarray[i64, ndim=2] R = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    cdef int m = R.shape[0], n = R.shape[1]
    cdef int* piv = <int*> malloc((min(m, n) + 1) * sizeof(int))
    cdef int rank
    try:
        if m and n:
            rank = _rref_inplace(&R[0, 0], m, n, p, piv)
        else:
            rank = 0
        pivots = [piv[i] for i in range(rank)]
    finally:
        free(piv)
    return R, pivots


cdef class _Scanner:
    """Mixed-radix walk over coefficient vectors with an incrementally
    maintained linear combination ``vec = coeffs @ basis (mod p)``."""
    cdef i64[:, ::1] basis
    cdef i64[::1] coeffs
    cdef i64[::1] vec
    cdef int d, N
    cdef i64 p
    cdef bint done

    def __init__(self, basis, i64 p):
        self.basis = np.ascontiguousarray(basis, dtype=np.int64)
        self.d = self.basis.shape[0]
        self.N = self.basis.shape[1]
        self.p = p
        self.coeffs = np.zeros(self.d, dtype=np.int64)
        self.vec = np.zeros(self.N, dtype=np.int64)
        self.done = False

    cdef void advance(self) nogil:
        cdef int i = 0, j
        while i < self.d:
            self.coeffs[i] += 1
            if self.coeffs[i] < self.p:
                for j in range(self.N):
                    self.vec[j] = (self.vec[j] + self.basis[i, j]) % self.p
                return
            # digit wraps p-1 -> 0; one more copy of the row cancels the p-1 already added
            self.coeffs[i] = 0
            for j in range(self.N):
                self.vec[j] = (self.vec[j] + self.basis[i, j]) % self.p
            i += 1
        self.done = True


cdef bint _blocks_injective(i64* vec, i64[:, ::1] blocks, i64* scratch, i64 p) nogil:
    cdef int b, k, off, r, c
    for b in range(blocks.shape[0]):
        off = <int> blocks[b, 0]
        r = <int> blocks[b, 1]
        c = <int> blocks[b, 2]
        if c == 0:
            continue
        for k in range(r * c):
            scratch[k] = vec[off + k]
        if _rref_inplace(scratch, r, c, p, NULL) < c:
            return False
    return True


cdef bint _blocks_idempotent(i64* vec, i64[:, ::1] blocks, i64 p) nogil:
    cdef int b, i, j, k, off, n
    cdef i64 s
    for b in range(blocks.shape[0]):
        off = <int> blocks[b, 0]
        n = <int> blocks[b, 1]
        for i in range(n):
            for j in range(n):
                s = 0
                for k in range(n):
                    s += vec[off + i * n + k] * vec[off + k * n + j]
                if s % p != vec[off + i * n + j]:
                    return False
    return True


def _max_block(i64[:, ::1] blocks):
    cdef int b, best = 1
    for b in range(blocks.shape[0]):
        if blocks[b, 1] * blocks[b, 2] > best:
            best = <int> (blocks[b, 1] * blocks[b, 2])
    return best


def _mono_scan(basis, i64 p, blocks, Py_ssize_t limit):
    cdef i64[:, ::1] bl = np.ascontiguousarray(blocks, dtype=np.int64).reshape(-1, 3)
    cdef int b
    for b in range(bl.shape[0]):
        if bl[b, 1] < bl[b, 2]:
            return []
    cdef _Scanner sc = _Scanner(basis, p)
    cdef i64* scratch = <i64*> malloc(_max_block(bl) * sizeof(i64))
    cdef i64* vp
    out = []
    try:
        while not sc.done:
            vp = &sc.vec[0] if sc.N else scratch
            if _blocks_injective(vp, bl, scratch, p):
                out.append(np.asarray(sc.coeffs).copy())
                if len(out) >= limit:
                    break
            sc.advance()
    finally:
        free(scratch)
    return out


def first_mono(basis, p, blocks):
    found = _mono_scan(basis, p, blocks, 1)
    return found[0] if found else None


def all_monos(basis, p, blocks, limit):
    d = np.asarray(basis).shape[0]
    found = _mono_scan(basis, p, blocks, limit)
    return np.array(found, dtype=np.int64).reshape(len(found), d)


def first_idempotent(basis, i64 p, blocks, identity):
    cdef i64[:, ::1] bl = np.ascontiguousarray(blocks, dtype=np.int64).reshape(-1, 3)
    cdef i64[::1] ident = np.ascontiguousarray(identity, dtype=np.int64)
    cdef _Scanner sc = _Scanner(basis, p)
    cdef int j
    cdef bint zero, is_id
    while not sc.done:
        zero = True
        is_id = True
        for j in range(sc.N):
            if sc.vec[j] != 0:
                zero = False
            if sc.vec[j] != ident[j]:
                is_id = False
        if not zero and not is_id and _blocks_idempotent(&sc.vec[0], bl, p):
            return np.asarray(sc.coeffs).copy()
        sc.advance()
    return None
