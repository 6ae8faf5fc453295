"""Exact linear algebra over prime fields F_p.

Matrices are plain ``numpy`` int64 arrays with entries in ``range(p)``.
Linear maps act on column vectors, so a map V -> W is stored with shape
``(dim W, dim V)``.  Subspaces are stored by a reduced row-echelon basis,
one vector per row, which makes equal subspaces byte-identical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, NotInvertible

_FLOAT_EXACT = 2 ** 52


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not is_prime(int(self.p)):
            raise ValueError(f"modulus must be prime, got {self.p!r}")

    def inv(self, x: int) -> int:
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, -1, self.p)

    def elements(self) -> range:
        return range(self.p)


def frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_matrix(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``a @ b`` reduced mod p, routed through float BLAS when provably exact."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[-1] if a.ndim else 1
    if inner * (p - 1) ** 2 < _FLOAT_EXACT:
        prod = np.matmul(a.astype(np.float64), b.astype(np.float64))
        return np.rint(prod).astype(np.int64) % p
    return np.matmul(a, b) % p


def mdot(p: int, *mats: np.ndarray) -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        out = matmul(out, m, p)
    return out


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form; returns the nonzero rows and pivot columns."""
    m = np.array(a, dtype=np.int64, copy=True) % p
    if m.ndim != 2:
        raise DimensionMismatch(f"rref needs a 2-d array, got shape {m.shape}")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        lead = int(m[r, c])
        if lead != 1:
            m[r, c:] = (m[r, c:] * pow(lead, -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[np.ix_(hit, np.arange(c, cols))] = (
                m[np.ix_(hit, np.arange(c, cols))] - np.outer(col[hit], m[r, c:])
            ) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p: int) -> np.ndarray:
    """Rows spanning {x : a x = 0}, in reduced row-echelon form."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    if a.shape[0] == 0:
        return identity(n)
    r, pivots = rref(a, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = zeros(len(free), n)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, pc in enumerate(pivots):
            basis[k, pc] = (-r[row, f]) % p
    # free-variable basis is already RREF up to row order; canonicalize anyway
    return rref(basis, p)[0] if len(free) else basis


@dataclass(frozen=True)
class AffineSolution:
    """All solutions ``particular + span(kernel rows)`` of a linear system."""

    particular: np.ndarray
    kernel: np.ndarray

    @property
    def kernel_dim(self) -> int:
        return int(self.kernel.shape[0])

    def count(self, p: int) -> int:
        return p ** self.kernel_dim

    def points(self, p: int) -> Iterator[np.ndarray]:
        """Every solution, in lexicographic order of kernel coordinates."""
        k = self.kernel_dim
        for coeffs in itertools.product(range(p), repeat=k):
            if k:
                yield (self.particular + np.asarray(coeffs, dtype=np.int64) @ self.kernel) % p
            else:
                yield self.particular.copy()

    def batches(self, p: int, size: int = 4096) -> Iterator[np.ndarray]:
        """Solutions stacked as rows, ``size`` at a time, same order as ``points``."""
        k = self.kernel_dim
        total = p ** k
        for start in range(0, total, size):
            idx = np.arange(start, min(start + size, total), dtype=np.int64)
            digits = np.zeros((idx.size, k), dtype=np.int64)
            rem = idx.copy()
            for j in range(k - 1, -1, -1):
                digits[:, j] = rem % p
                rem //= p
            yield (self.particular[None, :] + matmul(digits, self.kernel, p)) % p


def solve_linear(a, b, p: int) -> Optional[AffineSolution]:
    """Solve ``a x = b`` over F_p; ``None`` when inconsistent."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    if a.ndim != 2 or a.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"system {a.shape} incompatible with rhs of length {b.shape[0]}")
    n = a.shape[1]
    aug = np.concatenate([a, b[:, None]], axis=1)
    r, pivots = rref(aug, p)
    if n in pivots:
        return None
    x = zeros(1, n)[0]
    for row, pc in enumerate(pivots):
        x[pc] = r[row, n]
    return AffineSolution(frozen(x), frozen(nullspace(a, p)))


def inverse(a, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64) % p
    n = a.shape[0]
    if a.shape != (n, n):
        raise NotInvertible(f"non-square matrix {a.shape}")
    r, pivots = rref(np.concatenate([a, identity(n)], axis=1), p)
    if pivots[:n] != list(range(n)):
        raise NotInvertible("singular matrix")
    return r[:, n:]


def is_injective(a, p: int) -> bool:
    a = np.asarray(a)
    return rank(a, p) == a.shape[1]


def is_surjective(a, p: int) -> bool:
    a = np.asarray(a)
    return rank(a, p) == a.shape[0]


def is_bijective(a, p: int) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of F_p^n held by its canonical RREF basis (rows)."""

    p: int
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors, ambient_dim: int, p: int) -> "Subspace":
        v = np.asarray(vectors, dtype=np.int64)
        if v.size == 0:
            return cls.zero(ambient_dim, p)
        v = v.reshape(-1, ambient_dim) % p
        if v.shape[0] == 0:
            return cls.zero(ambient_dim, p)
        r, piv = rref(v, p)
        return cls(p, ambient_dim, frozen(r), tuple(piv))

    @classmethod
    def column_space(cls, mat, p: int) -> "Subspace":
        mat = np.asarray(mat, dtype=np.int64)
        return cls.span(mat.T, mat.shape[0], p)

    @classmethod
    def kernel(cls, mat, p: int) -> "Subspace":
        mat = np.asarray(mat, dtype=np.int64)
        return cls.span(nullspace(mat, p), mat.shape[1], p)

    @classmethod
    def zero(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls(p, ambient_dim, frozen(zeros(0, ambient_dim)), ())

    @classmethod
    def full(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls(p, ambient_dim, frozen(identity(ambient_dim)), tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    @cached_property
    def key(self) -> tuple:
        return (self.ambient_dim, self.dim, tuple(int(x) for x in self.basis.reshape(-1)))

    def sort_key(self) -> tuple:
        return (self.dim, tuple(int(x) for x in self.basis.reshape(-1)))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.p == other.p and self.key == other.key

    def __hash__(self):
        return hash((self.p, self.key))

    def __repr__(self):
        rows = [tuple(int(x) for x in r) for r in self.basis]
        return f"Subspace(p={self.p}, n={self.ambient_dim}, basis={rows})"

    @property
    def inclusion(self) -> np.ndarray:
        """Matrix of the inclusion map F_p^dim -> F_p^n (basis vectors as columns)."""
        return self.basis.T.copy()

    def coordinates(self, vectors) -> np.ndarray:
        """Coordinates (as columns) of column vectors lying in the subspace."""
        v = np.asarray(vectors, dtype=np.int64) % self.p
        single = v.ndim == 1
        v = v.reshape(self.ambient_dim, -1)
        c = v[list(self.pivots), :]
        if not np.array_equal(matmul(self.basis.T, c, self.p), v):
            raise ValueError("vector not in subspace")
        return c[:, 0] if single else c

    def contains(self, vector) -> bool:
        v = np.asarray(vector, dtype=np.int64).reshape(-1) % self.p
        return rank(np.vstack([self.basis, v]), self.p) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return rank(np.vstack([self.basis, other.basis]), self.p) == self.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(np.vstack([self.basis, other.basis]), self.ambient_dim, self.p)


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def count_subspaces(n: int, p: int) -> int:
    return sum(gaussian_binomial(n, k, p) for k in range(n + 1))


def enumerate_subspaces(n: int, p: int, budget: Optional[int] = None,
                        dims: Optional[Sequence[int]] = None) -> Iterator[Subspace]:
    """Yield every subspace of F_p^n exactly once, ordered by (dim, RREF entries).

    The Gaussian-binomial count is checked against ``budget`` before any work.
    """
    dims = range(n + 1) if dims is None else dims
    total = sum(gaussian_binomial(n, k, p) for k in dims)
    if budget is not None and total > budget:
        raise BudgetExceeded("subspace", total, budget)
    for k in dims:
        found = []
        for piv in itertools.combinations(range(n), k):
            pset = set(piv)
            free = [(r, c) for r, pc in enumerate(piv) for c in range(pc + 1, n) if c not in pset]
            for vals in itertools.product(range(p), repeat=len(free)):
                m = zeros(k, n)
                for r, pc in enumerate(piv):
                    m[r, pc] = 1
                for (r, c), v in zip(free, vals):
                    m[r, c] = v
                found.append(Subspace(p, n, frozen(m), piv))
        found.sort(key=Subspace.sort_key)
        yield from found
