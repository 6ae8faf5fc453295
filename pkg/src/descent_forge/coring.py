"""Corings, coring endomorphisms, and comodules over the Sweedler coring.

Two concrete corings are built:

* the Sweedler coring S ⊗_B S of an extension B -> S, an S-coring with
  Δ(s ⊗ s') = s ⊗ 1 ⊗ s' and ε(s ⊗ s') = s s'.  Its tensor square
  Σ ⊗_S Σ is modelled by S ⊗_B S ⊗_B S (and the cube by the 4-fold power);
  the identification with the honest Σ ⊗_S Σ is available as a matrix;
* the comatrix A-coring M* ⊗_B M of a (B, A)-bimodule with M_A finitely
  generated projective, with Δ(φ ⊗ m) = Σ_i (φ ⊗ m_i) ⊗_A (f_i ⊗ m) and
  ε(φ ⊗ m) = φ(m), built on honest balanced tensor products.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .algebra import Diagnostic, FiniteAlgebra, unit_map
from .errors import AlgebraMismatch, AxiomViolation, BudgetExceeded, NotInvertible
from .extension import Extension
from .linalg import (AffineSolution, Subspace, frozen, identity, inverse, is_bijective, matmul,
                     solve_linear, zeros)
from .modules import (Bimodule, EndAlgebra, TensorSpace, associator, commutant_system,
                      end_algebra, map_violations, restrict, submodule, tensor_maps, tensor_over)

DEFAULT_ENDO_BUDGET = 2 ** 20


class Coring:
    """An A-coring: an (A, A)-bimodule Σ with comultiplication and counit.

    Subclasses fix a concrete model of Σ ⊗_A Σ (``square_dim``) and
    implement the handful of structure maps the axiom checks need.
    """

    base: FiniteAlgebra
    carrier: Bimodule
    comult: np.ndarray   # Σ -> Σ ⊗_A Σ
    counit: np.ndarray   # Σ -> A
    label: str = "coring"

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def square_dim(self) -> int:
        raise NotImplementedError

    def apply_square(self, gs: np.ndarray, v: np.ndarray) -> np.ndarray:
        """(g ⊗ g)(v) for a batch ``gs`` of shape (k, n, n); returns (k, square_dim)."""
        raise NotImplementedError

    def coassociativity_sides(self) -> tuple[np.ndarray, np.ndarray]:
        """(Δ ⊗ 1)∘Δ and (1 ⊗ Δ)∘Δ as maps into the same model of Σ^{⊗3}."""
        raise NotImplementedError

    def counit_sides(self) -> tuple[np.ndarray, np.ndarray]:
        """(ε ⊗ 1)∘Δ and (1 ⊗ ε)∘Δ as maps Σ -> Σ."""
        raise NotImplementedError

    @cached_property
    def unit_bimodule(self) -> Bimodule:
        return Bimodule.regular(self.base)

    def generators(self) -> list[int]:
        """Indices of basis vectors generating Σ as an (A, A)-bimodule (greedy)."""
        p = self.p
        gens: list[int] = []
        span = Subspace.zero(self.dim, p)
        ops = [matmul(l, r, p) for l in self.carrier.left_action for r in self.carrier.right_action]
        for j in range(self.dim):
            if span.dim == self.dim:
                break
            e = identity(self.dim)[:, j]
            if span.contains(e):
                continue
            gens.append(j)
            span = span + Subspace.span(np.stack([matmul(o, e, p) for o in ops]), self.dim, p)
        return gens


def check_coring(c: Coring) -> list[Diagnostic]:
    """Coassociativity, both counit laws, and bimodule linearity of Δ and ε."""
    out = []
    lhs, rhs = c.coassociativity_sides()
    if not np.array_equal(lhs, rhs):
        cols = np.flatnonzero(np.any(lhs != rhs, axis=0))
        out.append(Diagnostic("coassociativity", tuple(int(x) for x in cols),
                              "(Δ⊗1)Δ != (1⊗Δ)Δ"))
    left, right = c.counit_sides()
    eye = identity(c.dim)
    if not np.array_equal(left, eye):
        out.append(Diagnostic("left-counit", (), "(ε⊗1)Δ != id"))
    if not np.array_equal(right, eye):
        out.append(Diagnostic("right-counit", (), "(1⊗ε)Δ != id"))
    for d in map_violations(c.carrier, c.unit_bimodule, c.counit):
        out.append(Diagnostic("counit-linear", d.where, d.message))
    return out


def _require_coring(c: Coring) -> Coring:
    diags = check_coring(c)
    if diags:
        raise AxiomViolation(f"{c.label} fails the coring axioms", diags)
    return c


class SweedlerCoring(Coring):
    """The canonical coring S ⊗_B S of an extension, as an S-coring."""

    # often called a B-coring; the structure carried here is the S-coring one
    labels = ("B-coring", "S-coring")

    def __init__(self, ext: Extension):
        self.ext = ext
        self.base = ext.S
        self.label = f"Sweedler coring of {ext.name or 'extension'}"
        two = ext.power(2)
        three = ext.power(3)
        self.sigma = two.tensor
        self.carrier = two.space
        d = ext.S.dim
        u = ext.S.unit.reshape(-1, 1)
        eye = identity(d)
        # s ⊗ s' ↦ s ⊗ 1 ⊗ s'
        insert_mid = np.kron(np.kron(eye, u), eye)
        self.comult = frozen(two.descend(matmul(three.flat_project, insert_mid, ext.p)))
        self.counit = frozen(two.descend(ext.multiplication))

    @property
    def square_dim(self) -> int:
        return self.ext.power(3).dim

    def pure(self, s, t) -> np.ndarray:
        return self.ext.power(2).pure(s, t)

    @cached_property
    def _glue(self) -> np.ndarray:
        """(a ⊗ b) ⊗ (c ⊗ d) ↦ a ⊗ bc ⊗ d on flat tensors, shape (d^3, d^4)."""
        d = self.ext.S.dim
        eye = identity(d)
        return frozen(np.kron(np.kron(eye, self.ext.multiplication), eye))

    def _flat_endo(self, gs: np.ndarray) -> np.ndarray:
        two = self.ext.power(2)
        return matmul(matmul(two.flat_lift, gs, self.p), two.flat_project, self.p)

    def apply_square(self, gs: np.ndarray, v: np.ndarray) -> np.ndarray:
        ext = self.ext
        p = self.p
        d = ext.S.dim
        three = ext.power(3)
        flat_v = matmul(three.flat_lift, np.asarray(v, dtype=np.int64), p).reshape(d * d, d)
        gf = self._flat_endo(np.asarray(gs, dtype=np.int64))                    # (k, d², d²)
        unit_left = np.kron(ext.S.unit.reshape(-1, 1), identity(d))             # z ↦ 1 ⊗ z
        h = matmul(gf, unit_left, p)                                            # (k, d², d)
        w = matmul(matmul(gf, flat_v, p), np.transpose(h, (0, 2, 1)), p)        # (k, d², d²)
        glued = matmul(w.reshape(w.shape[0], -1), self._glue.T, p)              # (k, d³)
        return matmul(glued, three.flat_project.T, p)

    def square_map(self, g: np.ndarray) -> np.ndarray:
        """g ⊗_S g on the model S ⊗_B S ⊗_B S."""
        return square_columns(self, g, identity(self.square_dim))

    def coassociativity_sides(self):
        ext = self.ext
        d = ext.S.dim
        u = ext.S.unit.reshape(-1, 1)
        eye = identity(d)
        three, four = ext.power(3), ext.power(4)
        left = three.descend(matmul(four.flat_project, np.kron(np.kron(np.kron(eye, u), eye), eye), self.p))
        right = three.descend(matmul(four.flat_project, np.kron(np.kron(np.kron(eye, eye), u), eye), self.p))
        return matmul(left, self.comult, self.p), matmul(right, self.comult, self.p)

    def counit_sides(self):
        ext = self.ext
        eye = identity(ext.S.dim)
        two, three = ext.power(2), ext.power(3)
        left = three.descend(matmul(two.flat_project, np.kron(ext.multiplication, eye), self.p))
        right = three.descend(matmul(two.flat_project, np.kron(eye, ext.multiplication), self.p))
        return matmul(left, self.comult, self.p), matmul(right, self.comult, self.p)

    @cached_property
    def honest_square(self) -> TensorSpace:
        """Σ ⊗_S Σ as an honest balanced tensor product."""
        return tensor_over(self.carrier, self.carrier)

    @cached_property
    def square_identification(self) -> np.ndarray:
        """Isomorphism Σ ⊗_S Σ -> S ⊗_B S ⊗_B S, (a⊗b) ⊗ (c⊗d) ↦ a ⊗ bc ⊗ d."""
        ext = self.ext
        two, three = ext.power(2), ext.power(3)
        sq = self.honest_square
        flat = matmul(self._glue, np.kron(two.flat_lift, two.flat_lift), self.p)
        iso = sq.descend(matmul(three.flat_project, flat, self.p))
        if not is_bijective(iso, self.p):
            raise AxiomViolation("Σ⊗_SΣ -> S⊗_BS⊗_BS is not bijective")
        return frozen(iso)

    def as_generic(self) -> "GenericCoring":
        """The same coring with Δ expressed in the honest Σ ⊗_S Σ."""
        comult = matmul(inverse(self.square_identification, self.p), self.comult, self.p)
        return GenericCoring(self.base, self.carrier, self.honest_square, comult, self.counit,
                             label=f"{self.label} (honest tensors)")


class GenericCoring(Coring):
    """A coring with Σ ⊗_A Σ and Σ ⊗_A Σ ⊗_A Σ built as honest quotients."""

    def __init__(self, base: FiniteAlgebra, carrier: Bimodule, square: TensorSpace,
                 comult: np.ndarray, counit: np.ndarray, label: str = "coring"):
        self.base = base
        self.carrier = carrier
        self.square = square
        self.comult = frozen(np.asarray(comult, dtype=np.int64) % base.p)
        self.counit = frozen(np.asarray(counit, dtype=np.int64) % base.p)
        self.label = label

    @property
    def square_dim(self) -> int:
        return self.square.dim

    def apply_square(self, gs, v):
        p = self.p
        n = self.dim
        u = self.square.lift_matrix(v)                                  # (n, n)
        gs = np.asarray(gs, dtype=np.int64)
        w = matmul(matmul(gs, u, p), np.transpose(gs, (0, 2, 1)), p)   # (k, n, n)
        return matmul(w.reshape(w.shape[0], n * n), self.square.project.T, p)

    def square_map(self, g: np.ndarray) -> np.ndarray:
        return tensor_maps(g, g, self.square, self.square)

    @cached_property
    def _cube(self):
        sq = self.square
        left_cube = tensor_over(sq.space, self.carrier)          # (Σ⊗Σ)⊗Σ
        right_cube = tensor_over(self.carrier, sq.space)         # Σ⊗(Σ⊗Σ)
        assoc = associator(sq, left_cube, sq, right_cube)
        return left_cube, right_cube, assoc

    def coassociativity_sides(self):
        p = self.p
        left_cube, right_cube, assoc = self._cube
        eye = identity(self.dim)
        d_left = tensor_maps(self.comult, eye, self.square, left_cube)
        d_right = matmul(assoc, tensor_maps(eye, self.comult, self.square, right_cube), p)
        return matmul(d_left, self.comult, p), matmul(d_right, self.comult, p)

    def counit_sides(self):
        p = self.p
        n = self.dim
        car = self.carrier
        full_left = zeros(n, n * n)
        full_right = zeros(n, n * n)
        for a in range(n):
            for b in range(n):
                full_left[:, a * n + b] = matmul(car.act_left(self.counit[:, a]), identity(n)[:, b], p)
                full_right[:, a * n + b] = matmul(car.act_right(self.counit[:, b]), identity(n)[:, a], p)
        left = self.square.descend(full_left)
        right = self.square.descend(full_right)
        return matmul(left, self.comult, p), matmul(right, self.comult, p)


def build_sweedler(ext: Extension) -> SweedlerCoring:
    return _require_coring(SweedlerCoring(ext))


class ComatrixCoring(GenericCoring):
    """Σ = M* ⊗_B M over A for a (B, A)-bimodule M with M_A projective."""

    def __init__(self, end: EndAlgebra):
        m = end.module
        if end.dual is None:
            raise NotInvertible("M_A is not finitely generated projective: no dual basis")
        self.end = end
        A = m.right_alg
        p = m.p
        mstar = end.dual_module
        sigma = tensor_over(mstar, m)
        square = tensor_over(sigma.space, sigma.space)
        r, n = mstar.dim, m.dim
        phis = end.dual_functionals
        dual_coords = _dual_coordinates(end)
        full_d = zeros(square.dim, r * n)
        full_e = zeros(A.dim, r * n)
        eye_r, eye_n = identity(r), identity(n)
        for u in range(r):
            for v in range(n):
                acc = zeros(square.dim, 1)[:, 0]
                for mi, fi in zip(end.dual.vectors, end.dual.functionals):
                    left = sigma.pure(eye_r[u], mi)
                    right = sigma.pure(dual_coords(fi), eye_n[v])
                    acc = (acc + square.pure(left, right)) % p
                full_d[:, u * n + v] = acc
                full_e[:, u * n + v] = phis[u][:, v]
        self.sigma = sigma
        super().__init__(A, sigma.space, square, sigma.descend(full_d), sigma.descend(full_e),
                         label=f"comatrix coring of {m.name or 'M'}")


def _dual_coordinates(end: EndAlgebra):
    phis = end.dual_functionals
    hom = Subspace.span(phis.reshape(phis.shape[0], -1), phis.shape[1] * phis.shape[2], end.S.p)

    def coords(f):
        return hom.coordinates(np.asarray(f).reshape(-1, 1))[:, 0]

    return coords


def build_comatrix(m: Bimodule, end: Optional[EndAlgebra] = None) -> ComatrixCoring:
    """Comatrix coring of m; ``end`` may pass a precomputed End_A(m)."""
    if end is None:
        end = end_algebra(m)
    elif end.module is not m:
        raise AlgebraMismatch("End algebra was computed for a different bimodule")
    return _require_coring(ComatrixCoring(end))


# --------------------------------------------------------------------------- endomorphisms


@dataclass(frozen=True, eq=False)
class CoringMorphism:
    coring: Coring
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", frozen(np.asarray(self.matrix, dtype=np.int64) % self.coring.p))

    @property
    def key(self) -> bytes:
        return self.matrix.tobytes()

    def compose(self, other: "CoringMorphism") -> "CoringMorphism":
        """``self ∘ other``."""
        return CoringMorphism(self.coring, matmul(self.matrix, other.matrix, self.coring.p))

    def __call__(self, v) -> np.ndarray:
        return matmul(self.matrix, np.asarray(v, dtype=np.int64), self.coring.p)

    def is_identity(self) -> bool:
        return np.array_equal(self.matrix, identity(self.coring.dim))

    def is_bijective(self) -> bool:
        return is_bijective(self.matrix, self.coring.p)


def morphism_violations(c: Coring, g: np.ndarray) -> list[Diagnostic]:
    p = c.p
    g = np.asarray(g, dtype=np.int64) % p
    out = list(map_violations(c.carrier, c.carrier, g))
    if not np.array_equal(matmul(c.counit, g, p), c.counit):
        out.append(Diagnostic("counit", (), "ε∘g != ε"))
    lhs = matmul(c.comult, g, p)
    rhs = square_columns(c, g, c.comult)
    if not np.array_equal(lhs, rhs):
        out.append(Diagnostic("comult", (), "Δ∘g != (g⊗g)∘Δ"))
    return out


def square_columns(c: Coring, g: np.ndarray, vs: np.ndarray) -> np.ndarray:
    """(g ⊗ g) applied to each column of ``vs``."""
    g = np.asarray(g, dtype=np.int64)[None]
    if vs.shape[1] == 0:
        return zeros(c.square_dim, 0)
    return np.stack([c.apply_square(g, vs[:, j])[0] for j in range(vs.shape[1])], axis=1)


def is_coring_morphism(c: Coring, g) -> bool:
    return not morphism_violations(c, g)


@dataclass(frozen=True, eq=False)
class EndomorphismMonoid:
    """End_cor(Σ): elements sorted by matrix entries, composition table, identity index."""

    coring: Coring
    elements: tuple
    table: tuple
    identity: int
    search_dim: int

    def __len__(self):
        return len(self.elements)

    def index(self, g) -> Optional[int]:
        key = (np.asarray(g.matrix if isinstance(g, CoringMorphism) else g, dtype=np.int64)
               % self.coring.p).tobytes()
        return self._lookup.get(key)

    @cached_property
    def _lookup(self) -> dict:
        return {g.key: k for k, g in enumerate(self.elements)}

    @cached_property
    def units(self) -> list[int]:
        return [k for k in range(len(self)) if any(
            self.table[k][j] == self.identity and self.table[j][k] == self.identity
            for j in range(len(self)))]


def endomorphism_search_space(c: Coring) -> AffineSolution:
    """Affine space of (A, A)-bimodule maps g with ε∘g = ε (g flattened row-major)."""
    p = c.p
    n = c.dim
    comm = commutant_system(c.carrier, c.carrier)
    counit_rows = np.kron(c.counit, identity(n)) % p
    a = np.vstack([comm, counit_rows])
    b = np.concatenate([np.zeros(comm.shape[0], dtype=np.int64), c.counit.reshape(-1)])
    sol = solve_linear(a, b, p)
    if sol is None:
        raise AxiomViolation("identity fails the linear endomorphism constraints")
    return sol


def coring_endomorphisms(c: Coring, budget: int = DEFAULT_ENDO_BUDGET,
                         batch: int = 2048) -> EndomorphismMonoid:
    """The complete monoid End_cor(c) by linear solve, enumeration, and quadratic filter."""
    p = c.p
    n = c.dim
    sol = endomorphism_search_space(c)
    total = sol.count(p)
    if total > budget:
        raise BudgetExceeded(f"endomorphism (affine dim {sol.kernel_dim})", total, budget)
    gens = c.generators()
    delta_gens = c.comult[:, gens]
    survivors = []
    for chunk in sol.batches(p, batch):
        gs = chunk.reshape(-1, n, n)
        ok = np.ones(gs.shape[0], dtype=bool)
        for j, gen in enumerate(gens):
            lhs = matmul(c.comult, gs[:, :, gen, None], p)[:, :, 0]
            rhs = c.apply_square(gs, delta_gens[:, j])
            ok &= np.all(lhs == rhs, axis=1)
        survivors.extend(gs[ok])
    survivors.sort(key=lambda g: tuple(int(x) for x in g.reshape(-1)))
    elements = []
    for g in survivors:
        bad = morphism_violations(c, g)
        if bad:
            raise AxiomViolation("candidate passed the generator filter but is not a coring morphism", bad)
        elements.append(CoringMorphism(c, g))
    lookup = {g.key: k for k, g in enumerate(elements)}
    table = []
    for g in elements:
        row = []
        for h in elements:
            key = g.compose(h).key
            if key not in lookup:
                raise AxiomViolation("End(Σ) not closed under composition")
            row.append(lookup[key])
        table.append(tuple(row))
    ident = lookup.get(identity(n).tobytes())
    if ident is None:
        raise AxiomViolation("identity missing from End(Σ)")
    return EndomorphismMonoid(c, tuple(elements), tuple(table), ident, sol.kernel_dim)


# --------------------------------------------------------------------------- comodules


@dataclass(frozen=True, eq=False)
class Comodule:
    """A comodule over the Sweedler coring of ``ext``.

    Left: Y a left S-module, coaction Y -> S ⊗_B Y.
    Right: Y a right S-module, coaction Y -> Y ⊗_B S.
    """

    ext: Extension
    carrier: Bimodule
    coaction: np.ndarray
    side: str = "left"

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        object.__setattr__(self, "coaction", frozen(np.asarray(self.coaction, dtype=np.int64) % self.ext.p))

    @property
    def p(self) -> int:
        return self.ext.p

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @cached_property
    def over_B(self) -> Bimodule:
        """The carrier with S restricted to B (on the comodule side)."""
        if self.side == "left":
            return restrict(self.carrier, left=self.ext.i)
        return restrict(self.carrier, right=self.ext.i)

    @cached_property
    def tensor(self) -> TensorSpace:
        if self.side == "left":
            return tensor_over(self.ext.S_SB, self.over_B)
        return tensor_over(self.over_B, self.ext.S_BS)

    @cached_property
    def eta(self) -> np.ndarray:
        """y ↦ 1 ⊗ y (left) or y ↦ y ⊗ 1 (right)."""
        u = self.ext.S.unit
        eye = identity(self.dim)
        if self.side == "left":
            return np.stack([self.tensor.pure(u, eye[:, c]) for c in range(self.dim)], axis=1) \
                if self.dim else zeros(self.tensor.dim, 0)
        return np.stack([self.tensor.pure(eye[:, c], u) for c in range(self.dim)], axis=1) \
            if self.dim else zeros(self.tensor.dim, 0)

    @cached_property
    def action(self) -> np.ndarray:
        """α_Y: s ⊗ y ↦ s y (left) or y ⊗ s ↦ y s (right)."""
        d, n = self.ext.S.dim, self.dim
        full = zeros(n, d * n)
        for a in range(d):
            for c in range(n):
                if self.side == "left":
                    full[:, a * n + c] = self.carrier.left_action[a][:, c]
                else:
                    full[:, c * d + a] = self.carrier.right_action[a][:, c]
        return self.tensor.descend(full)

    @cached_property
    def double(self) -> TensorSpace:
        """S ⊗_B (S ⊗_B Y) (left) or (Y ⊗_B S) ⊗_B S (right)."""
        if self.side == "left":
            return tensor_over(self.ext.S_SB, restrict(self.tensor.space, left=self.ext.i))
        return tensor_over(restrict(self.tensor.space, right=self.ext.i), self.ext.S_BS)

    def lift_pair(self, f: np.ndarray) -> np.ndarray:
        """S ⊗_B f (left) or f ⊗_B S (right) for f: Y -> S ⊗_B Y (resp. Y ⊗_B S)."""
        eye = identity(self.ext.S.dim)
        if self.side == "left":
            return tensor_maps(eye, f, self.tensor, self.double)
        return tensor_maps(f, eye, self.tensor, self.double)


def comodule_violations(y: Comodule) -> list[Diagnostic]:
    """Counit law α∘θ = id and the coassociativity square with η."""
    p = y.p
    out = []
    if not np.array_equal(matmul(y.action, y.coaction, p), identity(y.dim)):
        out.append(Diagnostic("counit", (), "α_Y∘θ_Y != id"))
    lhs = matmul(y.lift_pair(y.coaction), y.coaction, p)
    rhs = matmul(y.lift_pair(y.eta), y.coaction, p)
    if not np.array_equal(lhs, rhs):
        out.append(Diagnostic("coassociativity", (), "(S⊗θ)θ != (S⊗η)θ"))
    for d in map_violations(y.carrier, y.tensor.space, y.coaction,
                            "left" if y.side == "left" else "right"):
        out.append(Diagnostic("linearity", d.where, d.message))
    return out


def comodule_violations_generic(y: Comodule, coring: SweedlerCoring) -> list[Diagnostic]:
    """Comodule laws over Σ = S ⊗_B S on honest tensors Σ ⊗_S Y (left comodules)."""
    if y.side != "left":
        raise ValueError("generic check implemented for left comodules")
    ext = y.ext
    p = y.p
    n, d = y.dim, ext.S.dim
    sig = coring.carrier
    sy = tensor_over(sig, y.carrier)                       # Σ ⊗_S Y
    two = ext.power(2)
    # φ: S ⊗_B Y -> Σ ⊗_S Y, s ⊗ y ↦ (s ⊗ 1) ⊗ y
    full = zeros(sy.dim, d * n)
    for a in range(d):
        s1 = two.pure(np.eye(d, dtype=np.int64)[a], ext.S.unit)
        for c in range(n):
            full[:, a * n + c] = sy.pure(s1, np.eye(n, dtype=np.int64)[c])
    phi = y.tensor.descend(full)
    rho = matmul(phi, y.coaction, p)
    out = []
    # (ε ⊗ Y): σ ⊗ y ↦ ε(σ) y
    eps_full = zeros(n, sig.dim * n)
    for a in range(sig.dim):
        act = y.carrier.act_left(coring.counit[:, a])
        for c in range(n):
            eps_full[:, a * n + c] = act[:, c]
    if not np.array_equal(matmul(sy.descend(eps_full), rho, p), identity(n)):
        out.append(Diagnostic("counit", (), "(ε⊗Y)ρ != id"))
    sq = coring.honest_square
    sq_y = tensor_over(sq.space, y.carrier)                # (Σ⊗Σ)⊗Y
    s_sy = tensor_over(sig, sy.space)                      # Σ⊗(Σ⊗Y)
    comult_h = matmul(inverse(coring.square_identification, p), coring.comult, p)
    lhs = matmul(tensor_maps(comult_h, identity(n), sy, sq_y), rho, p)
    assoc = associator(sq, sq_y, sy, s_sy)
    rhs = matmul(matmul(assoc, tensor_maps(identity(sig.dim), rho, sy, s_sy), p), rho, p)
    if not np.array_equal(lhs, rhs):
        out.append(Diagnostic("coassociativity", (), "(Δ⊗Y)ρ != (Σ⊗ρ)ρ"))
    return out


def _require_comodule(y: Comodule) -> Comodule:
    diags = comodule_violations(y)
    if diags:
        raise AxiomViolation("comodule laws fail", diags)
    return y


def regular_comodule(ext: Extension, side: str = "left") -> Comodule:
    """(S, s ↦ s ⊗ 1) on the left or (S, s ↦ 1 ⊗ s) on the right."""
    S = ext.S
    d = S.dim
    eye = identity(d)
    if side == "left":
        carrier = restrict(ext.S_SS, right=unit_map(S))
        y = Comodule(ext, carrier, zeros(1, 1), "left")
        coaction = np.stack([y.tensor.pure(eye[:, a], S.unit) for a in range(d)], axis=1)
    else:
        carrier = restrict(ext.S_SS, left=unit_map(S))
        y = Comodule(ext, carrier, zeros(1, 1), "right")
        coaction = np.stack([y.tensor.pure(S.unit, eye[:, a]) for a in range(d)], axis=1)
    return _require_comodule(Comodule(ext, carrier, coaction, side))


def twist_map(coring: SweedlerCoring, g: np.ndarray, y: Comodule) -> np.ndarray:
    """g ⊗_S Y transported to S ⊗_B Y (left) or Y ⊗_S g to Y ⊗_B S (right)."""
    ext = y.ext
    p = y.p
    d, n = ext.S.dim, y.dim
    two = ext.power(2)
    gf = matmul(matmul(two.flat_lift, g, p), two.flat_project, p)
    eye_d = identity(d)
    u = ext.S.unit
    full = zeros(y.tensor.dim, d * n)
    for a in range(d):
        if y.side == "left":
            w = matmul(gf, np.kron(eye_d[a], u), p).reshape(d, d)
        else:
            w = matmul(gf, np.kron(u, eye_d[a]), p).reshape(d, d)
        for c in range(n):
            acc = np.zeros(d * n, dtype=np.int64)
            for s, t in zip(*np.nonzero(w)):
                if y.side == "left":
                    acc += w[s, t] * np.kron(eye_d[s], y.carrier.left_action[t][:, c])
                else:
                    acc += w[s, t] * np.kron(y.carrier.right_action[s][:, c], eye_d[t])
            col = matmul(y.tensor.project, acc % p, p)
            if y.side == "left":
                full[:, a * n + c] = col
            else:
                full[:, c * d + a] = col
    return y.tensor.descend(full)


def twist_comodule(g: CoringMorphism, y: Comodule, side: Optional[str] = None) -> Comodule:
    """_g(Y, θ) = (Y, (g ⊗ 1)θ) on the left, (Y, θ)_g = (Y, (1 ⊗ g)θ) on the right."""
    side = side or y.side
    if side != y.side:
        raise ValueError(f"cannot twist a {y.side} comodule on the {side}")
    c = g.coring
    if not isinstance(c, SweedlerCoring) or c.ext is not y.ext:
        raise AlgebraMismatch("g is not an endomorphism of this comodule's coring")
    coaction = matmul(twist_map(c, g.matrix, y), y.coaction, y.p)
    twisted = Comodule(y.ext, y.carrier, coaction, y.side)
    diags = comodule_violations(twisted)
    if diags:
        raise AxiomViolation("twisted coaction is not a comodule (g not a coring morphism?)", diags)
    return twisted


@dataclass(frozen=True, eq=False)
class InducedComodule:
    comodule: Comodule
    source: Bimodule
    tensor: TensorSpace
    eta: np.ndarray      # X -> S ⊗_B X


def comparison_functor(x: Bimodule, ext: Extension) -> InducedComodule:
    """K_S(X) = (S ⊗_B X, S ⊗_B η_X) for a left B-module X."""
    if not x.left_alg.same_as(ext.B):
        raise AlgebraMismatch("X must be a left B-module")
    t = tensor_over(ext.S_SB, x)
    eye = identity(x.dim)
    eta = np.stack([t.pure(ext.S.unit, eye[:, c]) for c in range(x.dim)], axis=1) \
        if x.dim else zeros(t.dim, 0)
    proto = Comodule(ext, t.space, zeros(1, 1))
    coaction = tensor_maps(identity(ext.S.dim), eta, t, proto.tensor) if t.dim else zeros(proto.tensor.dim, 0)
    y = _require_comodule(Comodule(ext, t.space, coaction))
    return InducedComodule(y, x, t, frozen(eta))


@dataclass(frozen=True, eq=False)
class Equalizer:
    subspace: Subspace     # R_S(Y) inside the carrier of Y
    module: Bimodule       # as a left (right) B-module
    inclusion: np.ndarray  # e: R_S(Y) -> Y


def equalizer_RS(y: Comodule) -> Equalizer:
    """R_S(Y, θ) = ker(η_Y − θ_Y) with its inclusion."""
    k = Subspace.kernel((y.eta - y.coaction) % y.p, y.p)
    return Equalizer(k, submodule(y.over_B, k), frozen(k.inclusion))


def counit_component(y: Comodule, eq: Optional[Equalizer] = None) -> tuple[np.ndarray, TensorSpace]:
    """ε_(Y,θ) = α_Y ∘ (S ⊗_B e): S ⊗_B R_S(Y) -> Y (left comodules)."""
    eq = eq or equalizer_RS(y)
    ext = y.ext
    t = tensor_over(ext.S_SB, eq.module)
    s_e = tensor_maps(identity(ext.S.dim), eq.inclusion, t, y.tensor)
    return matmul(y.action, s_e, y.p), t
