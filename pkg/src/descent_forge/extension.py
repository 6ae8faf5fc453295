"""Ring extensions i: B -> S and the iterated tensor powers S ⊗_B ... ⊗_B S."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import AlgebraMorphism, FiniteAlgebra, validate_morphism
from .errors import AxiomViolation
from .linalg import Subspace, frozen, identity, matmul, nullspace
from .modules import Bimodule, restrict, tensor_over


@dataclass(frozen=True)
class TensorPower:
    """k-fold S ⊗_B ... ⊗_B S as an (S, S)-bimodule, nested to the left.

    ``flat_project`` maps the field tensor power S^{⊗k} onto it and
    ``flat_lift`` is a section, so multilinear maps can be written on pure
    tensors of basis vectors and then descended.
    """

    k: int
    space: Bimodule
    tensor: object  # TensorSpace for k >= 2, None for k == 1
    flat_project: np.ndarray
    flat_lift: np.ndarray
    flat_kernel: np.ndarray  # rows spanning ker(flat_project)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def p(self) -> int:
        return self.space.p

    def descend(self, flat_map: np.ndarray, check: bool = True) -> np.ndarray:
        flat_map = np.asarray(flat_map, dtype=np.int64) % self.p
        if check and self.flat_kernel.shape[0]:
            if np.any(matmul(flat_map, self.flat_kernel.T, self.p)):
                raise AxiomViolation(f"map on S^⊗{self.k} is not balanced over B")
        return matmul(flat_map, self.flat_lift, self.p)

    def pure(self, *vecs) -> np.ndarray:
        flat = np.asarray(vecs[0], dtype=np.int64)
        for v in vecs[1:]:
            flat = np.kron(flat, np.asarray(v, dtype=np.int64))
        return matmul(self.flat_project, flat, self.p)


@dataclass(frozen=True, eq=False)
class Extension:
    """A unital algebra map i: B -> S."""

    i: AlgebraMorphism
    name: str = ""

    def __post_init__(self):
        diags = validate_morphism(self.i)
        if diags:
            raise AxiomViolation("extension map is not a unital algebra morphism", diags)

    @property
    def B(self) -> FiniteAlgebra:
        return self.i.source

    @property
    def S(self) -> FiniteAlgebra:
        return self.i.target

    @property
    def p(self) -> int:
        return self.B.p

    def __repr__(self):
        return f"Extension({self.name or '?'}: {self.B.name} -> {self.S.name})"

    def is_injective(self) -> bool:
        return self.i.is_injective()

    @cached_property
    def S_SS(self) -> Bimodule:
        return Bimodule.regular(self.S)

    @cached_property
    def S_SB(self) -> Bimodule:
        return restrict(self.S_SS, right=self.i)

    @cached_property
    def S_BS(self) -> Bimodule:
        return restrict(self.S_SS, left=self.i)

    @cached_property
    def S_BB(self) -> Bimodule:
        return restrict(self.S_SS, left=self.i, right=self.i)

    @cached_property
    def image(self) -> Subspace:
        """i(B) as a subspace of S."""
        return Subspace.column_space(self.i.matrix, self.p)

    @cached_property
    def multiplication(self) -> np.ndarray:
        """μ: S ⊗ S -> S on the field tensor product, shape (d, d*d)."""
        d = self.S.dim
        return frozen(self.S.struct_consts.reshape(d * d, d).T.copy())

    @cached_property
    def _powers(self) -> dict:
        return {}

    def power(self, k: int) -> TensorPower:
        if k in self._powers:
            return self._powers[k]
        d = self.S.dim
        p = self.p
        if k == 1:
            tp = TensorPower(1, self.S_SS, None, frozen(identity(d)), frozen(identity(d)),
                             frozen(np.zeros((0, d), dtype=np.int64)))
        else:
            prev = self.power(k - 1)
            ten = tensor_over(restrict(prev.space, right=self.i), self.S_BS)
            proj = matmul(ten.project, np.kron(prev.flat_project, identity(d)), p)
            lift = matmul(np.kron(prev.flat_lift, identity(d)), ten.lift, p)
            tp = TensorPower(k, ten.space, ten, frozen(proj), frozen(lift),
                             frozen(nullspace(proj, p)))
        self._powers[k] = tp
        return tp
