"""Finite-dimensional unital associative algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import AxiomViolation, DimensionMismatch
from .linalg import PrimeField, frozen, identity, is_injective, matmul, zeros


class Diagnostic(NamedTuple):
    kind: str
    where: tuple
    message: str


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """Algebra over F_p with basis e_0..e_{d-1}.

    ``struct_consts[i, j]`` is the coordinate vector of ``e_i e_j``.
    """

    field: PrimeField
    struct_consts: np.ndarray
    unit: np.ndarray
    name: str = ""

    def __post_init__(self):
        p = self.field.p
        c = np.asarray(self.struct_consts, dtype=np.int64) % p
        d = c.shape[0]
        if d < 1 or c.shape != (d, d, d):
            raise DimensionMismatch(f"structure constants must be d x d x d with d >= 1, got {c.shape}")
        u = np.asarray(self.unit, dtype=np.int64).reshape(-1) % p
        if u.shape != (d,):
            raise DimensionMismatch(f"unit has length {u.shape[0]}, expected {d}")
        object.__setattr__(self, "struct_consts", frozen(c))
        object.__setattr__(self, "unit", frozen(u))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def dim(self) -> int:
        return int(self.struct_consts.shape[0])

    def __repr__(self):
        return f"FiniteAlgebra({self.name or '?'}, p={self.p}, dim={self.dim})"

    def same_as(self, other: "FiniteAlgebra") -> bool:
        return (self is other) or (
            self.p == other.p
            and np.array_equal(self.struct_consts, other.struct_consts)
            and np.array_equal(self.unit, other.unit)
        )

    def basis_vector(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[i] = 1
        return e

    def mul(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return np.einsum("i,j,ijk->k", x, y, self.struct_consts) % self.p

    @cached_property
    def left_regular(self) -> np.ndarray:
        """``left_regular[i]`` is the matrix of y -> e_i y."""
        return frozen(np.transpose(self.struct_consts, (0, 2, 1)).copy())

    @cached_property
    def right_regular(self) -> np.ndarray:
        """``right_regular[j]`` is the matrix of x -> x e_j."""
        return frozen(np.transpose(self.struct_consts, (1, 2, 0)).copy())

    def left_mult(self, x) -> np.ndarray:
        return np.einsum("i,ikj->kj", np.asarray(x, dtype=np.int64), self.left_regular) % self.p

    def right_mult(self, y) -> np.ndarray:
        return np.einsum("j,jki->ki", np.asarray(y, dtype=np.int64), self.right_regular) % self.p

    def opposite(self) -> "FiniteAlgebra":
        return FiniteAlgebra(self.field, np.transpose(self.struct_consts, (1, 0, 2)),
                             self.unit, name=f"{self.name}^op")

    def is_commutative(self) -> bool:
        return np.array_equal(self.struct_consts, np.transpose(self.struct_consts, (1, 0, 2)))


def validate_algebra(alg: FiniteAlgebra) -> list[Diagnostic]:
    """Check all d^3 associativity triples and 2d unit identities."""
    out = []
    c = alg.struct_consts
    p = alg.p
    d = alg.dim
    # (e_i e_j) e_k and e_i (e_j e_k) as d x d x d x d arrays
    lhs = np.einsum("ijm,mkn->ijkn", c, c) % p
    rhs = np.einsum("jkm,imn->ijkn", c, c) % p
    bad = np.argwhere(np.any(lhs != rhs, axis=3))
    for i, j, k in bad:
        out.append(Diagnostic("associativity", (int(i), int(j), int(k)),
                              f"(e{i} e{j}) e{k} != e{i} (e{j} e{k})"))
    left = np.einsum("i,ijk->jk", alg.unit, c) % p
    right = np.einsum("j,ijk->ik", alg.unit, c) % p
    eye = identity(d)
    for i in range(d):
        if not np.array_equal(left[i], eye[i]):
            out.append(Diagnostic("left-unit", (i,), f"1 e{i} != e{i}"))
        if not np.array_equal(right[i], eye[i]):
            out.append(Diagnostic("right-unit", (i,), f"e{i} 1 != e{i}"))
    return out


def ground(p: int) -> FiniteAlgebra:
    return FiniteAlgebra(PrimeField(p), np.ones((1, 1, 1), dtype=np.int64), [1], name=f"F{p}")


def product_algebra(p: int, n: int) -> FiniteAlgebra:
    """F_p^n with orthogonal idempotent basis."""
    c = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        c[i, i, i] = 1
    return FiniteAlgebra(PrimeField(p), c, np.ones(n, dtype=np.int64), name=f"F{p}^{n}")


def polynomial_quotient(p: int, modulus: Sequence[int], name: str = "") -> FiniteAlgebra:
    """F_p[x]/(f) in the basis 1, x, ..., x^{n-1}.

    ``modulus`` lists the coefficients of the monic f from the constant term up,
    without the leading 1.
    """
    n = len(modulus)
    f = np.asarray(modulus, dtype=np.int64) % p
    # powers x^0 .. x^{2n-2} reduced
    powers = [np.eye(n, dtype=np.int64)[k] for k in range(n)]
    for _ in range(n, 2 * n - 1):
        prev = powers[-1]
        shifted = np.concatenate([[0], prev[:-1]])
        powers.append((shifted - prev[-1] * f) % p)
    c = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            c[i, j] = powers[i + j]
    return FiniteAlgebra(PrimeField(p), c, np.eye(n, dtype=np.int64)[0], name=name or f"F{p}[x]/f")


def dual_numbers(p: int) -> FiniteAlgebra:
    return polynomial_quotient(p, [0, 0], name=f"F{p}[x]/(x^2)")


def matrix_algebra(p: int, n: int) -> FiniteAlgebra:
    """M_n(F_p) with basis E_ij in row-major order (index i*n + j)."""
    d = n * n
    c = np.zeros((d, d, d), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            for l in range(n):
                c[i * n + j, j * n + l, i * n + l] = 1
    unit = np.zeros(d, dtype=np.int64)
    for i in range(n):
        unit[i * n + i] = 1
    return FiniteAlgebra(PrimeField(p), c, unit, name=f"M{n}(F{p})")


@dataclass(frozen=True, eq=False)
class AlgebraMorphism:
    """Unital algebra map; ``matrix`` has shape (target.dim, source.dim)."""

    source: FiniteAlgebra
    target: FiniteAlgebra
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.int64) % self.source.p
        if m.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatch(
                f"morphism matrix {m.shape} does not match {self.target.dim} x {self.source.dim}")
        object.__setattr__(self, "matrix", frozen(m))

    def __call__(self, x) -> np.ndarray:
        return matmul(self.matrix, np.asarray(x, dtype=np.int64), self.source.p)

    def is_injective(self) -> bool:
        return is_injective(self.matrix, self.source.p)


def validate_morphism(f: AlgebraMorphism) -> list[Diagnostic]:
    out = []
    src, tgt = f.source, f.target
    if src.p != tgt.p:
        return [Diagnostic("field", (), "source and target fields differ")]
    if not np.array_equal(f(src.unit), tgt.unit):
        out.append(Diagnostic("unital", (), "f(1) != 1"))
    for i in range(src.dim):
        for j in range(src.dim):
            a = f(src.struct_consts[i, j])
            b = tgt.mul(f.matrix[:, i], f.matrix[:, j])
            if not np.array_equal(a, b):
                out.append(Diagnostic("multiplicative", (i, j), f"f(e{i} e{j}) != f(e{i}) f(e{j})"))
    return out


def check_morphism(f: AlgebraMorphism) -> AlgebraMorphism:
    diags = validate_morphism(f)
    if diags:
        raise AxiomViolation("not an algebra morphism", diags)
    return f


def unit_map(alg: FiniteAlgebra) -> AlgebraMorphism:
    """The structure map F_p -> alg."""
    return AlgebraMorphism(ground(alg.p), alg, alg.unit.reshape(-1, 1))


def identity_morphism(alg: FiniteAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(alg, alg, identity(alg.dim))


def diagonal_embedding(p: int, n: int) -> AlgebraMorphism:
    """F_p^n -> M_n(F_p) onto the diagonal matrices."""
    m = zeros(n * n, n)
    for i in range(n):
        m[i * n + i, i] = 1
    return AlgebraMorphism(product_algebra(p, n), matrix_algebra(p, n), m)
