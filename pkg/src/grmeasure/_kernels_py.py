"""Pure-Python kernels over F_p. Used when the compiled module is absent.

Morphism spaces are passed around as a ``(d, N)`` integer basis whose rows
are flattened morphisms. ``blocks`` is a ``(k, 3)`` array of
``(offset, rows, cols)`` locating each vertex component (row-major) inside
a flattened morphism. Search functions scan coefficient vectors as a
mixed-radix counter, least significant digit first, starting at zero;
the compiled twin scans in exactly the same order.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def rref(a, p):
    """Reduced row echelon form mod ``p``. Returns ``(R, pivot_columns)``."""
    R = np.array(a, dtype=np.int64) % p
    m, n = R.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        R[r] = (R[r] * inv) % p
        for i in range(m):
            if i != r and R[i, c]:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R, pivots


def _rank(M, p):
    return len(rref(M, p)[1])


def _components(vec, blocks):
    return [vec[o : o + r * c].reshape(r, c) for o, r, c in blocks]


def _counter(d, p):
    coeffs = np.zeros(d, dtype=np.int64)
    while True:
        yield coeffs
        i = 0
        while i < d:
            coeffs[i] += 1
            if coeffs[i] < p:
                break
            coeffs[i] = 0
            i += 1
        if i == d:
            return


def _is_mono(vec, blocks, p):
    for M in _components(vec, blocks):
        if M.shape[1] and _rank(M, p) < M.shape[1]:
            return False
    return True


def first_mono(basis, p, blocks):
    """First element with every component injective, as coefficients."""
    basis = np.asarray(basis, dtype=np.int64)
    blocks = [tuple(int(v) for v in b) for b in blocks]
    if any(r < c for _, r, c in blocks):
        return None
    for coeffs in _counter(basis.shape[0], p):
        vec = (coeffs @ basis) % p
        if _is_mono(vec, blocks, p):
            return coeffs.copy()
    return None


def all_monos(basis, p, blocks, limit):
    basis = np.asarray(basis, dtype=np.int64)
    blocks = [tuple(int(v) for v in b) for b in blocks]
    out = []
    if any(r < c for _, r, c in blocks):
        return np.zeros((0, basis.shape[0]), dtype=np.int64)
    for coeffs in _counter(basis.shape[0], p):
        vec = (coeffs @ basis) % p
        if _is_mono(vec, blocks, p):
            out.append(coeffs.copy())
            if len(out) >= limit:
                break
    return np.array(out, dtype=np.int64).reshape(len(out), basis.shape[0])


def first_idempotent(basis, p, blocks, identity):
    """First endomorphism ``e`` with ``e*e == e`` that is neither 0 nor 1."""
    basis = np.asarray(basis, dtype=np.int64)
    identity = np.asarray(identity, dtype=np.int64)
    blocks = [tuple(int(v) for v in b) for b in blocks]
    for coeffs in _counter(basis.shape[0], p):
        vec = (coeffs @ basis) % p
        if not vec.any() or np.array_equal(vec, identity):
            continue
        if all(np.array_equal((E @ E) % p, E) for E in _components(vec, blocks)):
            return coeffs.copy()
    return None
