"""Checkable sufficient conditions for comonadicity of S ⊗_B - and - ⊗_B S.

Everything here is exact at finite scale: flatness of a finite-dimensional
module is projectivity (dual-basis test), faithfulness is tested against
every simple module B/L, and the two conditions of the Beck-style criterion
(conservativity, preservation of the relevant equalizers) are checked
directly on the finite family of comodules the descent checks consume.
Full comonadicity quantifies over all comodules and is not decided.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import Diagnostic, FiniteAlgebra
from .coring import Comodule, comparison_functor, equalizer_RS
from .extension import Extension
from .linalg import Subspace, enumerate_subspaces, frozen, identity, is_injective, matmul, solve_linear
from .modules import (Bimodule, DualBasis, EndAlgebra, commutant_system, dual_basis,
                      dual_basis_reconstructs, forget_left, forget_right, is_invariant,
                      map_violations, op_bimodule, quotient, tensor_over, tensor_maps)

DEFAULT_SUBSPACE_BUDGET = 10 ** 6

GAP_NOTE = ("comonadicity certified by sufficient conditions only; the conservativity and "
            "equalizer conditions are checked on the comodules used by the descent checks")
PURITY_NOTE = "purity of i is not tested independently; conservativity of S⊗_B- is checked instead"


# --------------------------------------------------------------------------- ideals


def left_ideals(alg: FiniteAlgebra, budget: int = DEFAULT_SUBSPACE_BUDGET,
                proper: bool = True) -> list[Subspace]:
    """All (proper) left ideals, in (dim, RREF) order."""
    reg = Bimodule.left_module(alg, alg.left_regular)
    dims = range(alg.dim) if proper else range(alg.dim + 1)
    return [v for v in enumerate_subspaces(alg.dim, alg.p, budget, dims)
            if is_invariant(reg, v, "left")]


def maximal_left_ideals(alg: FiniteAlgebra, budget: int = DEFAULT_SUBSPACE_BUDGET) -> list[Subspace]:
    ideals = left_ideals(alg, budget)
    return [l for l in ideals
            if not any(m.dim > l.dim and m.contains_subspace(l) for m in ideals)]


def cyclic_module(alg: FiniteAlgebra, ideal: Subspace) -> Bimodule:
    """The left module alg / ideal."""
    reg = Bimodule.left_module(alg, alg.left_regular)
    return quotient(reg, ideal)[0]


# --------------------------------------------------------------------------- flatness


@dataclass(frozen=True, eq=False)
class FlatnessWitness:
    """Projectivity (dual basis) plus one nonvanishing dimension per simple module."""

    module: Bimodule                    # the module as a right module over ``over``
    over: FiniteAlgebra
    dual: DualBasis
    ideals: tuple                       # maximal left ideals of ``over``
    tensor_dims: tuple                  # dim module ⊗ over/L for each ideal

    def verify(self) -> bool:
        if not dual_basis_reconstructs(self.module, self.dual):
            return False
        for ideal, d in zip(self.ideals, self.tensor_dims):
            if d == 0 or tensor_over(self.module, cyclic_module(self.over, ideal)).dim != d:
                return False
        return True


def _ff_right(x: Bimodule, budget: int) -> Optional[FlatnessWitness]:
    """Faithful flatness of a right module x over x.right_alg."""
    alg = x.right_alg
    db = dual_basis(x)
    if db is None:
        return None
    ideals = maximal_left_ideals(alg, budget)
    dims = []
    for ideal in ideals:
        d = tensor_over(x, cyclic_module(alg, ideal)).dim
        if d == 0:
            return None
        dims.append(d)
    return FlatnessWitness(x, alg, db, tuple(ideals), tuple(dims))


def is_faithfully_flat(m: Bimodule, side: str,
                       budget: int = DEFAULT_SUBSPACE_BUDGET) -> Optional[FlatnessWitness]:
    """Faithful flatness of ``m`` as a right (``side='right'``) or left module.

    For ``side='right'`` the ring is m.right_alg; for ``side='left'`` it is
    m.left_alg, handled through the opposite algebra.
    """
    if side == "right":
        return _ff_right(forget_left(m), budget)
    if side == "left":
        return _ff_right(op_bimodule(forget_right(m)), budget)
    raise ValueError("side must be 'left' or 'right'")


# --------------------------------------------------------------------------- retraction


@dataclass(frozen=True, eq=False)
class Retraction:
    ext: Extension
    matrix: np.ndarray      # π: S -> B

    def verify(self) -> bool:
        ext = self.ext
        if not np.array_equal(matmul(self.matrix, ext.i.matrix, ext.p), identity(ext.B.dim)):
            return False
        return not map_violations(ext.S_BB, Bimodule.regular(ext.B), self.matrix)


def is_direct_summand(ext: Extension) -> Optional[Retraction]:
    """A B-bimodule map π: S -> B with π∘i = id, or None."""
    p = ext.p
    b, d = ext.B.dim, ext.S.dim
    comm = commutant_system(ext.S_BB, Bimodule.regular(ext.B))
    # vec(π i) = kron(I_b, i^T) vec(π) for row-major vec
    split = np.kron(identity(b), ext.i.matrix.T) % p
    a = np.vstack([comm, split])
    rhs = np.concatenate([np.zeros(comm.shape[0], dtype=np.int64), identity(b).reshape(-1)])
    sol = solve_linear(a, rhs, p)
    if sol is None:
        return None
    r = Retraction(ext, frozen(sol.particular.reshape(b, d).copy()))
    if not r.verify():
        raise AssertionError("retraction from the linear solve does not re-verify")
    return r


# --------------------------------------------------------------------------- Beck conditions


@dataclass(frozen=True)
class ConservativityLog:
    holds: bool
    checked: tuple          # (ideal, dim S ⊗_B B/L)
    counterexample: Optional[Subspace] = None


def is_conservative(ext: Extension, budget: int = DEFAULT_SUBSPACE_BUDGET) -> ConservativityLog:
    """S ⊗_B (B/L) != 0 for every proper left ideal L of B."""
    checked = []
    for ideal in left_ideals(ext.B, budget):
        d = tensor_over(ext.S_SB, cyclic_module(ext.B, ideal)).dim
        checked.append((ideal, d))
        if d == 0:
            return ConservativityLog(False, tuple(checked), ideal)
    return ConservativityLog(True, tuple(checked))


@dataclass(frozen=True)
class EqualizerCheck:
    holds: bool             # S ⊗_B e is an equalizer of (S⊗θ, S⊗η)
    injective: bool         # S ⊗_B e is a monomorphism
    split_ok: bool          # θ_Y is an equalizer of (S⊗θ, S⊗η)
    diagnostics: tuple = ()


def preserves_equalizer(ext: Extension, y: Comodule) -> EqualizerCheck:
    """Apply S ⊗_B - to R_S(Y) -> Y ⇉ S ⊗_B Y and test the equalizer property."""
    if y.side != "left":
        raise ValueError("implemented for left comodules")
    p = ext.p
    eq = equalizer_RS(y)
    t = tensor_over(ext.S_SB, eq.module)
    s_e = tensor_maps(identity(ext.S.dim), eq.inclusion, t, y.tensor)
    pair = (y.lift_pair(y.coaction) - y.lift_pair(y.eta)) % p
    target = Subspace.kernel(pair, p)
    injective = is_injective(s_e, p)
    image = Subspace.column_space(s_e, p)
    holds = injective and image == target
    split_ok = is_injective(y.coaction, p) and Subspace.column_space(y.coaction, p) == target
    diags = []
    if not injective:
        diags.append(Diagnostic("equalizer", (), "S⊗e is not injective"))
    elif image != target:
        diags.append(Diagnostic("equalizer", (image.dim, target.dim), "image of S⊗e != ker(S⊗θ - S⊗η)"))
    if not split_ok:
        diags.append(Diagnostic("split-equalizer", (), "θ_Y is not an equalizer of (S⊗θ, S⊗η)"))
    return EqualizerCheck(holds, injective, split_ok, tuple(diags))


@dataclass(frozen=True)
class UnitCheck:
    ideal: Subspace
    bijective: bool


def unit_bijectivity(ext: Extension, budget: int = DEFAULT_SUBSPACE_BUDGET) -> list[UnitCheck]:
    """For every cyclic X = B/L: η_X maps X bijectively onto R_S(K_S(X))."""
    out = []
    for ideal in left_ideals(ext.B, budget, proper=False):
        x = cyclic_module(ext.B, ideal)
        k = comparison_functor(x, ext)
        eq = equalizer_RS(k.comodule)
        ok = is_injective(k.eta, ext.p) and Subspace.column_space(k.eta, ext.p) == eq.subspace
        out.append(UnitCheck(ideal, bool(ok)))
    return out


# --------------------------------------------------------------------------- certificates

EVIDENCE_ORDER = ("left-faithfully-flat", "right-faithfully-flat", "bimodule-retraction",
                  "left-ff-M", "right-ff-Mdual", "separable-bimodule-witness")


@dataclass(frozen=True, eq=False)
class Certificate:
    ext: Extension
    kind: str
    evidence: dict = field(default_factory=dict)    # kind -> witness (None when absent)

    def has(self, kind: str) -> bool:
        return self.evidence.get(kind) is not None

    @property
    def left(self) -> bool:
        """Evidence that S ⊗_B - is comonadic."""
        return self.has("left-faithfully-flat") or self.has("bimodule-retraction") \
            or self.has("right-ff-Mdual")

    @property
    def right(self) -> bool:
        """Evidence that - ⊗_B S is comonadic."""
        return self.has("right-faithfully-flat") or self.has("bimodule-retraction") \
            or self.has("left-ff-M")

    @property
    def either(self) -> bool:
        return self.left or self.right

    @property
    def comatrix_group(self) -> bool:
        return self.has("left-ff-M") or self.has("right-ff-Mdual") \
            or self.has("separable-bimodule-witness")

    def verify(self) -> bool:
        return all(w.verify() for w in self.evidence.values() if w is not None)

    def summary(self) -> dict:
        return {
            "kind": self.kind,
            "evidence": {k: self.has(k) for k in EVIDENCE_ORDER if k in self.evidence},
            "gates": {"left": self.left, "right": self.right, "comatrix_group": self.comatrix_group},
            "notes": [GAP_NOTE, PURITY_NOTE],
        }


def collect_evidence(ext: Extension, end: Optional[EndAlgebra] = None,
                     budget: int = DEFAULT_SUBSPACE_BUDGET) -> dict:
    """Every evidence kind, in the fixed order."""
    ev = {
        # S ⊗_B - is exact and faithful when S is faithfully flat as a right B-module
        "left-faithfully-flat": is_faithfully_flat(ext.S_SB, "right", budget),
        "right-faithfully-flat": is_faithfully_flat(ext.S_BS, "left", budget),
        "bimodule-retraction": is_direct_summand(ext),
    }
    if end is not None:
        ev["left-ff-M"] = is_faithfully_flat(end.module, "left", budget)
        ev["right-ff-Mdual"] = is_faithfully_flat(end.dual_module, "right", budget)
        ev["separable-bimodule-witness"] = is_direct_summand(Extension(end.i, ext.name))
    return ev


def certify(ext: Extension, end: Optional[EndAlgebra] = None,
            budget: int = DEFAULT_SUBSPACE_BUDGET) -> Optional[Certificate]:
    """First successful evidence kind in the fixed order; None when nothing applies."""
    ev = collect_evidence(ext, end, budget)
    for kind in EVIDENCE_ORDER:
        if ev.get(kind) is not None:
            return Certificate(ext, kind, ev)
    return None
