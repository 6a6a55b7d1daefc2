"""Exact linear algebra over the prime field F_p.

Matrices are ``int64`` numpy arrays with entries in ``[0, p)``.
"""

from __future__ import annotations

import numpy as np

from grmeasure import kernels

MAX_PRIME = 97


class BudgetExceeded(RuntimeError):
    """An exhaustive search would exceed its configured budget."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def check_prime(p: int) -> int:
    if not is_prime(p) or p > MAX_PRIME:
        raise ValueError(f"field size must be a prime in 2..{MAX_PRIME}, got {p}")
    return p


def mat(rows, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    a = np.array(rows, dtype=np.int64) % p
    if shape is not None:
        a = a.reshape(shape)
    return a


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return a.reshape(a.shape) % p, []
    return kernels.rref(a, p)


def rank(a: np.ndarray, p: int) -> int:
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{x : a @ x = 0}`` as the columns of the returned matrix."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    R, piv = rref(a, p)
    free = [c for c in range(n) if c not in set(piv)]
    out = zeros(n, len(free))
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, c in enumerate(piv):
            out[c, k] = (-R[i, f]) % p
    return out


def column_space(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the column span, as a matrix of independent columns."""
    a = np.asarray(a, dtype=np.int64)
    if a.shape[1] == 0:
        return zeros(a.shape[0], 0)
    _, piv = rref(a, p)
    return a[:, piv] % p


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Some ``x`` with ``a @ x = b``; raises ``ValueError`` if none exists."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if b.ndim == 1:
        return solve(a, b[:, None], p)[:, 0]
    m, n = a.shape
    k = b.shape[1]
    R, piv = rref(np.hstack([a, b]), p)
    if any(c >= n for c in piv):
        raise ValueError("inconsistent linear system")
    x = zeros(n, k)
    for i, c in enumerate(piv):
        x[c] = R[i, n:]
    return x % p


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix is not square")
    R, piv = rref(np.hstack([a, eye(n)]), p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:, n:] % p


def complement(sub: np.ndarray, n: int, p: int) -> np.ndarray:
    """Columns of the identity extending the columns of ``sub`` to a basis."""
    basis = np.asarray(sub, dtype=np.int64)
    r = rank(basis, p)
    extra: list[int] = []
    for i in range(n):
        cand = np.hstack([basis, eye(n)[:, extra + [i]]])
        if rank(cand, p) > r + len(extra):
            extra.append(i)
    return eye(n)[:, extra]


def check_budget(p: int, dim: int, budget: int, what: str) -> None:
    if p**dim > budget:
        raise BudgetExceeded(f"{what} budget: {p}^{dim} elements exceeds {budget}")
