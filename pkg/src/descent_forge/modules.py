"""Bimodules, bimodule maps, balanced tensor products, duals and End algebras.

A left B-module is a (B, F_p)-bimodule and a right A-module an
(F_p, A)-bimodule, so one type covers every module in the package.
Actions are stored as one matrix per basis element of the acting algebra.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .algebra import (AlgebraMorphism, Diagnostic, FiniteAlgebra, ground, unit_map)
from .errors import AlgebraMismatch, AxiomViolation, BudgetExceeded, DimensionMismatch, NotInvertible
from .linalg import (Subspace, frozen, identity, inverse, is_bijective, matmul, nullspace,
                     rank, solve_linear, zeros)

DEFAULT_BUDGET_MB = 4096


def memory_guard(nbytes: int, what: str) -> None:
    """Refuse allocations above ``DESCENT_FORGE_BUDGET_MB`` (default 4096)."""
    limit_mb = float(os.environ.get("DESCENT_FORGE_BUDGET_MB", DEFAULT_BUDGET_MB))
    if nbytes > limit_mb * 2 ** 20:
        raise BudgetExceeded(f"memory ({what})", f"{nbytes / 2 ** 20:.1f} MB", f"{limit_mb:g} MB")


def _combine(coeffs, mats, p) -> np.ndarray:
    return np.einsum("k,kij->ij", np.asarray(coeffs, dtype=np.int64), mats) % p


@dataclass(frozen=True, eq=False)
class Bimodule:
    left_alg: FiniteAlgebra
    right_alg: FiniteAlgebra
    left_action: np.ndarray
    right_action: np.ndarray
    name: str = ""

    def __post_init__(self):
        p = self.left_alg.p
        la = np.asarray(self.left_action, dtype=np.int64) % p
        ra = np.asarray(self.right_action, dtype=np.int64) % p
        n = la.shape[1] if la.ndim == 3 else -1
        if la.shape != (self.left_alg.dim, n, n) or ra.shape != (self.right_alg.dim, n, n):
            raise DimensionMismatch(f"action shapes {la.shape} / {ra.shape} inconsistent")
        object.__setattr__(self, "left_action", frozen(la))
        object.__setattr__(self, "right_action", frozen(ra))

    @property
    def p(self) -> int:
        return self.left_alg.p

    @property
    def dim(self) -> int:
        return int(self.left_action.shape[1])

    def __repr__(self):
        return (f"Bimodule({self.name or '?'}: {self.left_alg.name or '?'}-"
                f"{self.right_alg.name or '?'}, dim={self.dim})")

    def act_left(self, a) -> np.ndarray:
        """Matrix of m -> a m."""
        return _combine(a, self.left_action, self.p)

    def act_right(self, b) -> np.ndarray:
        """Matrix of m -> m b."""
        return _combine(b, self.right_action, self.p)

    @classmethod
    def regular(cls, alg: FiniteAlgebra) -> "Bimodule":
        return cls(alg, alg, alg.left_regular, alg.right_regular, name=alg.name)

    @classmethod
    def left_module(cls, alg: FiniteAlgebra, mats, name: str = "") -> "Bimodule":
        mats = np.asarray(mats, dtype=np.int64)
        n = mats.shape[1]
        return cls(alg, ground(alg.p), mats, identity(n)[None], name=name)

    @classmethod
    def right_module(cls, alg: FiniteAlgebra, mats, name: str = "") -> "Bimodule":
        mats = np.asarray(mats, dtype=np.int64)
        n = mats.shape[1]
        return cls(ground(alg.p), alg, identity(n)[None], mats, name=name)

    @classmethod
    def zero(cls, left: FiniteAlgebra, right: FiniteAlgebra) -> "Bimodule":
        return cls(left, right, np.zeros((left.dim, 0, 0), dtype=np.int64),
                   np.zeros((right.dim, 0, 0), dtype=np.int64))


def validate_bimodule(m: Bimodule) -> list[Diagnostic]:
    out = []
    p = m.p
    n = m.dim
    eye = identity(n)
    L, R = m.left_alg, m.right_alg
    if not np.array_equal(m.act_left(L.unit), eye):
        out.append(Diagnostic("left-unit", (), "1 acts nontrivially on the left"))
    if not np.array_equal(m.act_right(R.unit), eye):
        out.append(Diagnostic("right-unit", (), "1 acts nontrivially on the right"))
    for i in range(L.dim):
        for j in range(L.dim):
            if not np.array_equal(m.act_left(L.struct_consts[i, j]),
                                  matmul(m.left_action[i], m.left_action[j], p)):
                out.append(Diagnostic("left-assoc", (i, j), f"(a{i} a{j}) m != a{i} (a{j} m)"))
    for i in range(R.dim):
        for j in range(R.dim):
            if not np.array_equal(m.act_right(R.struct_consts[i, j]),
                                  matmul(m.right_action[j], m.right_action[i], p)):
                out.append(Diagnostic("right-assoc", (i, j), f"m (b{i} b{j}) != (m b{i}) b{j}"))
    for i in range(L.dim):
        for j in range(R.dim):
            if not np.array_equal(matmul(m.left_action[i], m.right_action[j], p),
                                  matmul(m.right_action[j], m.left_action[i], p)):
                out.append(Diagnostic("commute", (i, j), f"(a{i} m) b{j} != a{i} (m b{j})"))
    return out


def restrict(m: Bimodule, left: Optional[AlgebraMorphism] = None,
             right: Optional[AlgebraMorphism] = None) -> Bimodule:
    """Restriction of scalars along ``left: B -> m.left_alg`` and ``right: C -> m.right_alg``."""
    p = m.p
    la, lalg = m.left_action, m.left_alg
    ra, ralg = m.right_action, m.right_alg
    if left is not None:
        if not left.target.same_as(m.left_alg):
            raise AlgebraMismatch("left restriction target is not the left algebra")
        la = np.einsum("jk,jab->kab", left.matrix, m.left_action) % p
        lalg = left.source
    if right is not None:
        if not right.target.same_as(m.right_alg):
            raise AlgebraMismatch("right restriction target is not the right algebra")
        ra = np.einsum("jk,jab->kab", right.matrix, m.right_action) % p
        ralg = right.source
    return Bimodule(lalg, ralg, la, ra, name=m.name)


def forget_right(m: Bimodule) -> Bimodule:
    """The underlying left module."""
    return restrict(m, right=unit_map(m.right_alg))


def forget_left(m: Bimodule) -> Bimodule:
    return restrict(m, left=unit_map(m.left_alg))


def op_bimodule(m: Bimodule) -> Bimodule:
    """An (L, R)-bimodule viewed as an (R^op, L^op)-bimodule."""
    return Bimodule(m.right_alg.opposite(), m.left_alg.opposite(), m.right_action,
                    m.left_action, name=f"{m.name}^op")


def is_invariant(m: Bimodule, sub: Subspace, sides: str = "both") -> bool:
    mats = []
    if sides in ("both", "left"):
        mats.extend(m.left_action)
    if sides in ("both", "right"):
        mats.extend(m.right_action)
    if sub.dim == 0:
        return True
    for a in mats:
        img = matmul(a, sub.inclusion, m.p)
        if rank(np.vstack([sub.basis, img.T]), m.p) != sub.dim:
            return False
    return True


def submodule(m: Bimodule, sub: Subspace) -> Bimodule:
    """Restrict the actions to an invariant subspace (basis = the RREF rows)."""
    if not is_invariant(m, sub):
        raise AxiomViolation("subspace is not invariant under the actions")
    incl = sub.inclusion
    piv = list(sub.pivots)
    la = np.stack([matmul(a, incl, m.p)[piv, :] for a in m.left_action]) if sub.dim else \
        np.zeros((m.left_alg.dim, 0, 0), dtype=np.int64)
    ra = np.stack([matmul(a, incl, m.p)[piv, :] for a in m.right_action]) if sub.dim else \
        np.zeros((m.right_alg.dim, 0, 0), dtype=np.int64)
    return Bimodule(m.left_alg, m.right_alg, la, ra)


def quotient_maps(sub: Subspace) -> tuple[np.ndarray, np.ndarray]:
    """Projection onto F^n / sub (coordinates at non-pivot columns) and a section."""
    n = sub.ambient_dim
    piv = list(sub.pivots)
    pset = set(piv)
    nonpiv = [c for c in range(n) if c not in pset]
    proj = zeros(len(nonpiv), n)
    for t, c in enumerate(nonpiv):
        proj[t, c] = 1
        for r, pc in enumerate(piv):
            proj[t, pc] = (-sub.basis[r, c]) % sub.p
    lift = zeros(n, len(nonpiv))
    for t, c in enumerate(nonpiv):
        lift[c, t] = 1
    return frozen(proj), frozen(lift)


def quotient(m: Bimodule, sub: Subspace) -> tuple[Bimodule, np.ndarray]:
    """Quotient bimodule and the projection map m -> m/sub."""
    if not is_invariant(m, sub):
        raise AxiomViolation("subspace is not invariant under the actions")
    proj, lift = quotient_maps(sub)
    q = proj.shape[0]
    la = np.stack([matmul(proj, matmul(a, lift, m.p), m.p) for a in m.left_action]) if q else \
        np.zeros((m.left_alg.dim, 0, 0), dtype=np.int64)
    ra = np.stack([matmul(proj, matmul(a, lift, m.p), m.p) for a in m.right_action]) if q else \
        np.zeros((m.right_alg.dim, 0, 0), dtype=np.int64)
    return Bimodule(m.left_alg, m.right_alg, la, ra), proj


def direct_sum(*mods: Bimodule) -> Bimodule:
    first = mods[0]
    n = sum(m.dim for m in mods)

    def block(actions):
        k = actions[0].shape[0]
        out = np.zeros((k, n, n), dtype=np.int64)
        off = 0
        for a in actions:
            d = a.shape[1]
            out[:, off:off + d, off:off + d] = a
            off += d
        return out

    return Bimodule(first.left_alg, first.right_alg, block([m.left_action for m in mods]),
                    block([m.right_action for m in mods]))


@dataclass(frozen=True, eq=False)
class BimoduleMap:
    source: Bimodule
    target: Bimodule
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.int64) % self.source.p
        if m.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatch(f"map {m.shape} vs {self.target.dim} x {self.source.dim}")
        object.__setattr__(self, "matrix", frozen(m))

    @property
    def p(self) -> int:
        return self.source.p

    def __call__(self, v) -> np.ndarray:
        return matmul(self.matrix, np.asarray(v, dtype=np.int64), self.p)

    def compose(self, other: "BimoduleMap") -> "BimoduleMap":
        """``self`` after ``other``."""
        return BimoduleMap(other.source, self.target, matmul(self.matrix, other.matrix, self.p))

    def is_injective(self) -> bool:
        return rank(self.matrix, self.p) == self.source.dim

    def is_bijective(self) -> bool:
        return is_bijective(self.matrix, self.p)


def map_violations(src: Bimodule, tgt: Bimodule, mat: np.ndarray,
                   sides: str = "both") -> list[Diagnostic]:
    out = []
    p = src.p
    if sides in ("both", "left"):
        for i in range(src.left_alg.dim):
            if not np.array_equal(matmul(mat, src.left_action[i], p), matmul(tgt.left_action[i], mat, p)):
                out.append(Diagnostic("left-linear", (i,), f"f(a{i} x) != a{i} f(x)"))
    if sides in ("both", "right"):
        for i in range(src.right_alg.dim):
            if not np.array_equal(matmul(mat, src.right_action[i], p), matmul(tgt.right_action[i], mat, p)):
                out.append(Diagnostic("right-linear", (i,), f"f(x b{i}) != f(x) b{i}"))
    return out


def commutant_system(src: Bimodule, tgt: Bimodule, sides: str = "both") -> np.ndarray:
    """Coefficient matrix whose kernel is {X : X acts as a bimodule map}, X flattened row-major."""
    p = src.p
    n, m = src.dim, tgt.dim
    blocks = []
    pairs = []
    if sides in ("both", "left"):
        pairs.extend(zip(src.left_action, tgt.left_action))
    if sides in ("both", "right"):
        pairs.extend(zip(src.right_action, tgt.right_action))
    for a_src, a_tgt in pairs:
        # vec(X a_src) - vec(a_tgt X), row-major vec
        blocks.append((np.kron(identity(m), a_src.T) - np.kron(a_tgt, identity(n))) % p)
    if not blocks:
        return zeros(0, m * n)
    return np.vstack(blocks)


def hom_space(src: Bimodule, tgt: Bimodule, sides: str = "both") -> np.ndarray:
    """Basis (rows, flattened (tgt.dim, src.dim) matrices) of bimodule maps src -> tgt."""
    return nullspace(commutant_system(src, tgt, sides), src.p)


# --------------------------------------------------------------------------- tensors


@dataclass(frozen=True, eq=False)
class TensorSpace:
    """M ⊗_B N realised as a quotient of the field tensor product.

    Full-space index of ``m_i ⊗ n_j`` is ``i * dim N + j`` (``np.kron`` order).
    """

    left: Bimodule
    right: Bimodule
    relations: Subspace
    project: np.ndarray
    lift: np.ndarray
    space: Bimodule

    @property
    def p(self) -> int:
        return self.left.p

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def full_dim(self) -> int:
        return self.left.dim * self.right.dim

    def pure(self, m, n) -> np.ndarray:
        """Class of m ⊗ n."""
        return matmul(self.project, np.kron(np.asarray(m, dtype=np.int64),
                                            np.asarray(n, dtype=np.int64)), self.p)

    def descend(self, full_map: np.ndarray, check: bool = True) -> np.ndarray:
        """Matrix on the quotient of a linear map defined on the full tensor space."""
        full_map = np.asarray(full_map, dtype=np.int64) % self.p
        if check and self.relations.dim:
            if np.any(matmul(full_map, self.relations.inclusion, self.p)):
                raise AxiomViolation("map does not vanish on the balancing relations")
        return matmul(full_map, self.lift, self.p)

    def lift_matrix(self, v) -> np.ndarray:
        """A representative of the class ``v`` as a (dim M, dim N) coefficient matrix."""
        return matmul(self.lift, np.asarray(v, dtype=np.int64), self.p).reshape(
            self.left.dim, self.right.dim)


def tensor_over(m: Bimodule, n: Bimodule) -> TensorSpace:
    """Balanced tensor product M ⊗_B N with B = m.right_alg = n.left_alg."""
    if not m.right_alg.same_as(n.left_alg):
        raise AlgebraMismatch(
            f"cannot tensor: right algebra {m.right_alg.name!r} != left algebra {n.left_alg.name!r}")
    p = m.p
    dm, dn = m.dim, n.dim
    full = dm * dn
    base = m.right_alg
    memory_guard(8 * base.dim * full * full * 2, "tensor relations")
    gens = []
    eye_m, eye_n = identity(dm), identity(dn)
    for k in range(base.dim):
        rel = (np.kron(m.right_action[k], eye_n) - np.kron(eye_m, n.left_action[k])) % p
        if np.any(rel):
            gens.append(rel.T)
    if gens:
        relations = Subspace.span(np.vstack(gens), full, p)
    else:
        relations = Subspace.zero(full, p)
    proj, lift = quotient_maps(relations)
    q = proj.shape[0]

    def induced(mats, left_side):
        if q == 0:
            return np.zeros((mats.shape[0], 0, 0), dtype=np.int64)
        out = []
        for a in mats:
            big = np.kron(a, eye_n) if left_side else np.kron(eye_m, a)
            out.append(matmul(proj, matmul(big, lift, p), p))
        return np.stack(out)

    space = Bimodule(m.left_alg, n.right_alg, induced(m.left_action, True),
                     induced(n.right_action, False),
                     name=f"{m.name or 'M'}⊗{n.name or 'N'}")
    return TensorSpace(m, n, relations, proj, lift, space)


def tensor_maps(f: np.ndarray, g: np.ndarray, src: TensorSpace, tgt: TensorSpace) -> np.ndarray:
    """Matrix of f ⊗ g : src -> tgt (f right-B-linear, g left-B-linear)."""
    p = src.p
    return matmul(tgt.project, matmul(np.kron(np.asarray(f, dtype=np.int64),
                                              np.asarray(g, dtype=np.int64)), src.lift, p), p)


def associator(xu: TensorSpace, xu_v: TensorSpace, u_v: TensorSpace,
               x_uv: TensorSpace) -> np.ndarray:
    """Matrix of X ⊗ (U ⊗ V) -> (X ⊗ U) ⊗ V, x ⊗ (u ⊗ v) ↦ (x ⊗ u) ⊗ v."""
    p = xu.p
    dx, du, dv = xu.left.dim, u_v.left.dim, u_v.right.dim
    eye_v = identity(dv)
    full = zeros(xu_v.dim, dx * u_v.dim)
    for a in range(dx):
        for w in range(u_v.dim):
            coeffs = u_v.lift[:, w].reshape(du, dv)
            acc = np.zeros(xu_v.full_dim, dtype=np.int64)
            for s, t in zip(*np.nonzero(coeffs)):
                acc += coeffs[s, t] * np.kron(xu.project[:, a * du + s], eye_v[t])
            full[:, a * u_v.dim + w] = matmul(xu_v.project, acc % p, p)
    return x_uv.descend(full)


# --------------------------------------------------------------------------- duals, End


@dataclass(frozen=True, eq=False)
class DualBasis:
    """Pairs (m_i, f_i) with m = Σ m_i f_i(m) for a right module."""

    vectors: np.ndarray      # (k, dim M)
    functionals: np.ndarray  # (k, dim A, dim M)

    def __len__(self):
        return int(self.vectors.shape[0])


def hom_to_regular(m: Bimodule) -> np.ndarray:
    """Basis of Hom_A(M_A, A_A) as flattened (dim A, dim M) matrices (RREF rows)."""
    A = m.right_alg
    target = Bimodule(ground(A.p), A, identity(A.dim)[None], A.right_regular)
    src = forget_left(m)
    return hom_space(src, target, "right")


def _xi_columns(m: Bimodule, phis: np.ndarray) -> np.ndarray:
    """Columns vec(ξ(e_j ⊗ φ_k)) for all j, k, where ξ(m⊗φ)(x) = m·φ(x)."""
    A = m.right_alg
    n = m.dim
    cols = []
    for j in range(n):
        for phi in phis:
            # Σ_t (ρ(a_t) e_j) outer φ[t, :]
            mat = np.einsum("ti,tk->ik", m.right_action[:, :, j], phi) % A.p
            cols.append(mat.reshape(-1))
    return np.array(cols, dtype=np.int64).T.reshape(n * n, -1) if cols else zeros(n * n, 0)


def dual_basis(m: Bimodule) -> Optional[DualBasis]:
    """Dual basis of M as a right module over m.right_alg, or None if M is not projective."""
    A = m.right_alg
    n = m.dim
    if n == 0:
        return DualBasis(zeros(0, 0), np.zeros((0, A.dim, 0), dtype=np.int64))
    hom = hom_to_regular(m)
    phis = hom.reshape(-1, A.dim, n)
    if phis.shape[0] == 0:
        return None
    cols = _xi_columns(m, phis)
    sol = solve_linear(cols, identity(n).reshape(-1), A.p)
    if sol is None:
        return None
    coeffs = sol.particular.reshape(n, phis.shape[0])
    vecs, funcs = [], []
    for j in range(n):
        f = np.einsum("k,kab->ab", coeffs[j], phis) % A.p
        if np.any(f):
            vecs.append(identity(n)[j])
            funcs.append(f)
    db = DualBasis(frozen(np.array(vecs, dtype=np.int64).reshape(-1, n)),
                   frozen(np.array(funcs, dtype=np.int64).reshape(-1, A.dim, n)))
    if not dual_basis_reconstructs(m, db):
        raise AxiomViolation("dual basis failed to reconstruct the identity")
    return db


def dual_basis_reconstructs(m: Bimodule, db: DualBasis) -> bool:
    """Check m = Σ m_i f_i(m) on every basis vector."""
    p = m.p
    total = zeros(m.dim, m.dim)
    for v, f in zip(db.vectors, db.functionals):
        # x ↦ v · f(x) = Σ_t f(x)_t ρ(a_t) v
        total = (total + np.einsum("ti,tk->ik", matmul(m.right_action, v, p).reshape(
            m.right_alg.dim, m.dim), f)) % p
    return np.array_equal(total % p, identity(m.dim))


@dataclass(frozen=True, eq=False)
class EndAlgebra:
    """S = End_A(M) for a (B, A)-bimodule M with its canonical data."""

    module: Bimodule            # the (B, A)-bimodule M
    S: FiniteAlgebra
    i: AlgebraMorphism          # B -> S, b ↦ [m ↦ b m]
    basis: np.ndarray           # (dim S, n, n) endomorphism matrices
    m_over_s: Bimodule          # M as (S, A)-bimodule
    dual_over_s: Bimodule       # M* = Hom_A(M, A) as (A, S)-bimodule
    dual_functionals: np.ndarray  # (dim M*, dim A, n)
    xi_tensor: TensorSpace      # M ⊗_A M* as an (S, S)-bimodule
    xi: np.ndarray              # matrix M ⊗_A M* -> S
    dual: Optional[DualBasis]

    @property
    def dual_module(self) -> Bimodule:
        """M* as an (A, B)-bimodule."""
        return restrict(self.dual_over_s, right=self.i)

    def s_coordinates(self, mat) -> np.ndarray:
        flat = np.asarray(mat, dtype=np.int64).reshape(-1)
        return _coords(self._s_space, flat)

    @cached_property
    def _s_space(self) -> Subspace:
        n = self.module.dim
        return Subspace(self.S.p, n * n, frozen(self.basis.reshape(self.S.dim, n * n).copy()),
                        tuple(int(np.flatnonzero(r)[0]) for r in self.basis.reshape(self.S.dim, -1)))


def _coords(sub: Subspace, flat: np.ndarray) -> np.ndarray:
    return sub.coordinates(flat.reshape(-1, 1))[:, 0]


def end_algebra(m: Bimodule, require_iso: bool = True) -> EndAlgebra:
    """S = End_A(M_A) with i: B -> S and ξ: M ⊗_A M* -> S.

    Raises :class:`NotInvertible` when ξ is not bijective (M_A not projective)
    unless ``require_iso`` is false.
    """
    B, A = m.left_alg, m.right_alg
    p = m.p
    n = m.dim
    ends = hom_space(forget_left(m), forget_left(m), "right")
    ends_space = Subspace.span(ends, n * n, p)
    basis = ends_space.basis.reshape(-1, n, n)
    d = basis.shape[0]

    def coords(mat):
        return _coords(ends_space, np.asarray(mat).reshape(-1))

    c = np.zeros((d, d, d), dtype=np.int64)
    for a in range(d):
        for b in range(d):
            c[a, b] = coords(matmul(basis[a], basis[b], p))
    S = FiniteAlgebra(B.field, c, coords(identity(n)), name=f"End({m.name or 'M'})")
    i = AlgebraMorphism(B, S, np.stack([coords(m.left_action[k]) for k in range(B.dim)], axis=1))
    m_over_s = Bimodule(S, A, basis, m.right_action, name=m.name or "M")

    hom = hom_to_regular(m)
    hom_space_ = Subspace.span(hom, A.dim * n, p)
    phis = hom_space_.basis.reshape(-1, A.dim, n)
    r = phis.shape[0]

    def dcoords(mat):
        return _coords(hom_space_, np.asarray(mat).reshape(-1))

    if r:
        left_a = np.stack([np.stack([dcoords(matmul(A.left_regular[t], phi, p)) for phi in phis], axis=1)
                           for t in range(A.dim)])
        right_s = np.stack([np.stack([dcoords(matmul(phi, basis[u], p)) for phi in phis], axis=1)
                            for u in range(d)])
    else:
        left_a = np.zeros((A.dim, 0, 0), dtype=np.int64)
        right_s = np.zeros((d, 0, 0), dtype=np.int64)
    dual_over_s = Bimodule(A, S, left_a, right_s, name=f"{m.name or 'M'}*")

    ten = tensor_over(m_over_s, dual_over_s)
    full = zeros(d, n * r)
    cols = _xi_columns(m, phis)
    for j in range(n):
        for k in range(r):
            full[:, j * r + k] = coords(cols[:, j * r + k].reshape(n, n))
    xi = ten.descend(full)
    db = dual_basis(m)
    if require_iso and (db is None or not is_bijective(xi, p)):
        raise NotInvertible("ξ: M ⊗_A M* -> End_A(M) is not an isomorphism (M_A not projective)")
    return EndAlgebra(m, S, i, frozen(basis.copy()), m_over_s, dual_over_s, frozen(phis.copy()),
                      ten, xi, db)


def xi_inverse(e: EndAlgebra) -> np.ndarray:
    return inverse(e.xi, e.S.p)
