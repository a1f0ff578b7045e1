"""Linear algebra over Z/m.

Work is split over the prime-power factors ``p**e`` of ``m``.  Over
Z/p**e every nonzero entry is a unit times a power of ``p``, so pivoting
on an entry of least valuation gives a diagonal (Smith) form without
zero-divisor trouble.  Results are recombined with the Chinese remainder
theorem.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod

import numpy as np

__all__ = [
    "factorize",
    "LocalSmith",
    "local_smith",
    "kernel",
    "kernel_size",
    "solve",
    "span",
]


def factorize(m: int) -> list[tuple[int, int]]:
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1
    if m > 1:
        out.append((m, 1))
    return out


def _valuation(a: int, p: int, e: int) -> int:
    """p-adic valuation of ``a`` modulo p**e (``e`` for zero)."""
    if a == 0:
        return e
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


@dataclass
class LocalSmith:
    """``U @ A @ C == D (mod p**e)`` with ``D`` diagonal of powers of p.

    ``exponents[s]`` is the valuation of the s-th pivot; pivots past
    ``rank`` are zero.
    """

    p: int
    e: int
    U: np.ndarray
    C: np.ndarray
    exponents: list[int]

    @property
    def modulus(self) -> int:
        return self.p**self.e

    @property
    def rank(self) -> int:
        return len(self.exponents)


def local_smith(A: np.ndarray, p: int, e: int) -> LocalSmith:
    P = p**e
    A = np.array(A, dtype=np.int64) % P
    r, k = A.shape
    U = np.eye(r, dtype=np.int64)
    C = np.eye(k, dtype=np.int64)
    exponents = []
    s = 0
    while s < min(r, k):
        sub = A[s:, s:]
        nz = np.argwhere(sub != 0)
        if len(nz) == 0:
            break
        # entry of least valuation
        best, best_v = None, e
        for i, j in nz:
            v = _valuation(int(sub[i, j]), p, e)
            if v < best_v:
                best, best_v = (i + s, j + s), v
                if v == 0:
                    break
        i, j = best
        if i != s:
            A[[s, i]] = A[[i, s]]
            U[[s, i]] = U[[i, s]]
        if j != s:
            A[:, [s, j]] = A[:, [j, s]]
            C[:, [s, j]] = C[:, [j, s]]
        unit = int(A[s, s]) // p**best_v
        inv = pow(unit, -1, P)
        A[s] = A[s] * inv % P
        U[s] = U[s] * inv % P
        pv = p**best_v
        for i in range(r):
            if i != s and A[i, s]:
                c = int(A[i, s]) // pv
                A[i] = (A[i] - c * A[s]) % P
                U[i] = (U[i] - c * U[s]) % P
        for j in range(s + 1, k):
            if A[s, j]:
                c = int(A[s, j]) // pv
                A[:, j] = (A[:, j] - c * A[:, s]) % P
                C[:, j] = (C[:, j] - c * C[:, s]) % P
        exponents.append(best_v)
        s += 1
    return LocalSmith(p, e, U, C, exponents)


def _crt_unit(m: int, P: int) -> int:
    """The residue that is 1 mod P and 0 mod m/P."""
    rest = m // P
    if rest == 1:
        return 1
    return rest * pow(rest % P, -1, P) % m


def kernel(A: np.ndarray, m: int) -> list[tuple[np.ndarray, int]]:
    """Generators of ``{x : A x = 0 mod m}`` as ``(vector, order)`` pairs.

    The kernel is the internal direct sum of the cyclic subgroups
    generated, so ``prod(order)`` is its size and every element is
    ``sum(c_i g_i)`` for unique ``0 <= c_i < order_i``.
    """
    A = np.asarray(A, dtype=np.int64)
    k = A.shape[1]
    gens = []
    if m == 1:
        return gens
    for p, e in factorize(m):
        P = p**e
        sm = local_smith(A, p, e)
        lift = _crt_unit(m, P)
        for s in range(k):
            if s < sm.rank:
                v = sm.exponents[s]
                if v == 0:
                    continue
                vec = sm.C[:, s] * p ** (e - v) % P
                order = p**v
            else:
                vec = sm.C[:, s] % P
                order = P
            gens.append((vec * lift % m, order))
    return gens


def kernel_size(A: np.ndarray, m: int) -> int:
    return prod(order for _, order in kernel(A, m))


def span(gens: list[tuple[np.ndarray, int]], length: int, m: int) -> np.ndarray:
    """All combinations of ``gens``, one row each (unsorted)."""
    if not gens:
        return np.zeros((1, length), dtype=np.int64)
    G = np.array([g for g, _ in gens], dtype=np.int64)
    coeffs = np.array(list(product(*[range(o) for _, o in gens])), dtype=np.int64)
    return coeffs @ G % m


def solve(A: np.ndarray, b, m: int) -> np.ndarray | None:
    """One solution of ``A x = b (mod m)``, or ``None`` if there is none."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    k = A.shape[1]
    x = np.zeros(k, dtype=np.int64)
    if m == 1:
        return x
    for p, e in factorize(m):
        P = p**e
        sm = local_smith(A, p, e)
        c = sm.U @ (b % P) % P
        y = np.zeros(k, dtype=np.int64)
        for s in range(len(c)):
            if s < sm.rank:
                pv = p ** sm.exponents[s]
                if c[s] % pv:
                    return None
                y[s] = c[s] // pv
            elif c[s]:
                return None
        xp = sm.C @ y % P
        x = (x + xp * _crt_unit(m, P)) % m
    return x
