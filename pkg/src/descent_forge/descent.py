"""Subbimodules of an extension, the maps Γ, Γ', Γ₀, Γ'₀, ĝ and their inverses.

I_B(S) is the monoid of B-subbimodules of S under I·J = span{ij}.  I^l
(resp. I^r) collects those I for which S ⊗_B I -> S (resp. I ⊗_B S -> S)
is bijective, and each such I yields an endomorphism of the Sweedler coring
S ⊗_B S.  The checks here compare those assignments against the coring
endomorphisms found independently by enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .comonadicity import preserves_equalizer
from .coring import (ComatrixCoring, CoringMorphism, EndomorphismMonoid,
                     SweedlerCoring, coring_endomorphisms, counit_component, equalizer_RS,
                     morphism_violations, regular_comodule, twist_comodule)
from .errors import AxiomViolation, NotInvertible
from .extension import Extension
from .linalg import (Subspace, enumerate_subspaces, frozen, identity, inverse, is_bijective,
                     is_injective, matmul, zeros)
from .modules import (Bimodule, TensorSpace, is_invariant, submodule, tensor_maps,
                      tensor_over, xi_inverse)
from .monoid import MonoidTable

DEFAULT_SUBSPACE_BUDGET = 10 ** 6


@dataclass(frozen=True, eq=False)
class SubBimodule:
    ext: Extension
    subspace: Subspace

    def __post_init__(self):
        if not is_invariant(self.ext.S_BB, self.subspace):
            raise AxiomViolation("subspace is not closed under the B-actions")

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @property
    def basis(self) -> np.ndarray:
        """Basis elements of S as rows."""
        return self.subspace.basis

    def __eq__(self, other):
        if not isinstance(other, SubBimodule):
            return NotImplemented
        return self.ext is other.ext and self.subspace == other.subspace

    def __hash__(self):
        return hash(self.subspace)

    def __repr__(self):
        return f"SubBimodule({[tuple(int(x) for x in r) for r in self.basis]})"

    def label(self) -> str:
        return "span{" + ", ".join("(" + ",".join(str(int(x)) for x in r) + ")"
                                   for r in self.basis) + "}"

    @cached_property
    def bimodule(self) -> Bimodule:
        """I as a (B, B)-bimodule, basis = the RREF rows."""
        return submodule(self.ext.S_BB, self.subspace)


def unit_subbimodule(ext: Extension) -> SubBimodule:
    return SubBimodule(ext, ext.image)


def enumerate_subbimodules(ext: Extension,
                           budget: int = DEFAULT_SUBSPACE_BUDGET) -> list[SubBimodule]:
    """Every B-subbimodule of S, ordered by (dim, RREF entries)."""
    if not ext.is_injective():
        raise ValueError("subbimodule enumeration needs an injective extension")
    return [SubBimodule(ext, v) for v in enumerate_subspaces(ext.S.dim, ext.p, budget)
            if is_invariant(ext.S_BB, v)]


def subbimodule_product(a: SubBimodule, b: SubBimodule) -> SubBimodule:
    if a.ext is not b.ext:
        raise ValueError("subbimodules of different extensions")
    S = a.ext.S
    if a.dim == 0 or b.dim == 0:
        return SubBimodule(a.ext, Subspace.zero(S.dim, S.p))
    prods = np.einsum("ai,bj,ijk->abk", a.basis, b.basis, S.struct_consts) % S.p
    return SubBimodule(a.ext, Subspace.span(prods.reshape(-1, S.dim), S.dim, S.p))


# --------------------------------------------------------------------------- m-maps


@dataclass(frozen=True, eq=False)
class MMaps:
    sub: SubBimodule
    left_tensor: TensorSpace    # S ⊗_B I
    right_tensor: TensorSpace   # I ⊗_B S
    m_l: np.ndarray
    m_r: np.ndarray

    @property
    def left_invertible(self) -> bool:
        return is_bijective(self.m_l, self.sub.ext.p)

    @property
    def right_invertible(self) -> bool:
        return is_bijective(self.m_r, self.sub.ext.p)


def m_maps(sub: SubBimodule) -> MMaps:
    """m^l: S ⊗_B I -> S, s ⊗ x ↦ s x and m^r: I ⊗_B S -> S, x ⊗ s ↦ x s."""
    ext = sub.ext
    S = ext.S
    d, k = S.dim, sub.dim
    lt = tensor_over(ext.S_SB, sub.bimodule)
    rt = tensor_over(sub.bimodule, ext.S_BS)
    # prods[a, c] = e_a * x_c and prods_r[c, a] = x_c * e_a
    prods = np.einsum("ai,cj,ijk->ack", identity(d), sub.basis, S.struct_consts) % S.p
    prods_r = np.einsum("ci,aj,ijk->cak", sub.basis, identity(d), S.struct_consts) % S.p
    m_l = lt.descend(prods.reshape(d * k, d).T)
    m_r = rt.descend(prods_r.reshape(k * d, d).T)
    return MMaps(sub, lt, rt, frozen(m_l), frozen(m_r))


def _solve_unit(mm_map: np.ndarray, tensor: TensorSpace, p: int) -> np.ndarray:
    """Lifts (as full coefficient matrices) of m^{-1}(e_a) for each basis vector e_a of S."""
    inv = inverse(mm_map, p)
    lifted = matmul(tensor.lift, inv, p)          # (full, d)
    return lifted.T.reshape(-1, tensor.left.dim, tensor.right.dim)


def gamma(sub: SubBimodule, coring: SweedlerCoring) -> CoringMorphism:
    """Γ(I) = (1 ⊗ m^r_I) ∘ ((m^l_I)^{-1} ⊗ 1) on S ⊗_B S."""
    ext = sub.ext
    p = ext.p
    mm = m_maps(sub)
    if not mm.left_invertible:
        raise NotInvertible("I is not in I^l: m^l_I is not bijective")
    d = ext.S.dim
    w = _solve_unit(mm.m_l, mm.left_tensor, p)                        # (d, d, k): e_a -> Σ w[a,v,c] e_v ⊗ x_c
    r = np.einsum("ci,bj,ijk->cbk", sub.basis, identity(d), ext.S.struct_consts) % p  # x_c e_b
    t = np.einsum("avc,cbw->abvw", w, r) % p
    return _on_sweedler(coring, t)


def gamma_prime(sub: SubBimodule, coring: SweedlerCoring) -> CoringMorphism:
    """Γ'(I) = (m^l_I ⊗ 1) ∘ (1 ⊗ (m^r_I)^{-1}) on S ⊗_B S."""
    ext = sub.ext
    p = ext.p
    mm = m_maps(sub)
    if not mm.right_invertible:
        raise NotInvertible("I is not in I^r: m^r_I is not bijective")
    d = ext.S.dim
    w = _solve_unit(mm.m_r, mm.right_tensor, p)                       # (d, k, d): e_b -> Σ w[b,c,w] x_c ⊗ e_w
    l = np.einsum("ai,cj,ijk->ack", identity(d), sub.basis, ext.S.struct_consts) % p  # e_a x_c
    t = np.einsum("acv,bcw->abvw", l, w) % p
    return _on_sweedler(coring, t)


def _on_sweedler(coring: SweedlerCoring, t: np.ndarray) -> CoringMorphism:
    """Coring endomorphism from its values t[a, b] (flat d×d) on e_a ⊗ e_b."""
    ext = coring.ext
    d = ext.S.dim
    two = ext.power(2)
    flat = t.reshape(d * d, d * d).T
    g = two.descend(matmul(two.flat_project, flat, ext.p))
    bad = morphism_violations(coring, g)
    if bad:
        raise AxiomViolation("constructed map is not a coring endomorphism", bad)
    return CoringMorphism(coring, g)


def j_of(g: CoringMorphism, side: str = "left") -> SubBimodule:
    """J(g) = {s : g(s⊗1) = 1⊗s} (left) or J'(g) = {s : s⊗1 = g(1⊗s)} (right)."""
    c = g.coring
    ext = c.ext
    p = ext.p
    d = ext.S.dim
    eye = identity(d)
    one = ext.S.unit
    s1 = np.stack([c.pure(eye[a], one) for a in range(d)], axis=1)
    one_s = np.stack([c.pure(one, eye[a]) for a in range(d)], axis=1)
    if side == "left":
        op = matmul(g.matrix, s1, p) - one_s
    elif side == "right":
        op = s1 - matmul(g.matrix, one_s, p)
    else:
        raise ValueError("side must be 'left' or 'right'")
    return SubBimodule(ext, Subspace.kernel(op % p, p))


# --------------------------------------------------------------------------- twisted regular comodule


@dataclass(frozen=True)
class TwistConditions:
    j_left_invertible: bool       # (i)
    counit_bijective: bool        # (ii)
    preserves_equalizer: bool     # (iii)
    tensor_mono: bool             # (iv)
    counit_is_m_l: bool           # ε_(twist) == m^l_{J(g)} as matrices
    equalizer_is_j: bool          # R_S(twist) == J(g)

    @property
    def conditions(self) -> tuple[bool, bool, bool, bool]:
        return (self.j_left_invertible, self.counit_bijective, self.preserves_equalizer,
                self.tensor_mono)

    @property
    def agree(self) -> bool:
        return len(set(self.conditions)) == 1


def twist_conditions(g: CoringMorphism) -> TwistConditions:
    c = g.coring
    ext = c.ext
    p = ext.p
    j = j_of(g, "left")
    mm = m_maps(j)
    y = twist_comodule(g, regular_comodule(ext, "left"))
    eq = equalizer_RS(y)
    eps, t = counit_component(y, eq)
    pres = preserves_equalizer(ext, y)
    s_e = tensor_maps(identity(ext.S.dim), eq.inclusion, t, y.tensor)
    counit_is_m_l = eps.shape == mm.m_l.shape and np.array_equal(eps, mm.m_l)
    return TwistConditions(
        j_left_invertible=mm.left_invertible,
        counit_bijective=is_bijective(eps, p),
        preserves_equalizer=pres.holds,
        tensor_mono=is_injective(s_e, p),
        counit_is_m_l=bool(counit_is_m_l),
        equalizer_is_j=eq.subspace == j.subspace,
    )


# --------------------------------------------------------------------------- Γ witness


def product_table(subs: list) -> list[list[Optional[int]]]:
    """table[a][b] = index of subs[a]·subs[b] in ``subs`` (None if outside)."""
    index = {s.subspace: k for k, s in enumerate(subs)}
    return [[index.get(subbimodule_product(a, b).subspace) for b in subs] for a in subs]


def _closed_table(table, identity_index) -> Optional[MonoidTable]:
    if identity_index is None or any(x is None for row in table for x in row):
        return None
    return MonoidTable.from_rows(table, identity_index)


@dataclass(frozen=True, eq=False)
class GammaWitness:
    """Γ (or Γ') between a family of subbimodules and a coring endomorphism monoid."""

    domain: tuple                       # SubBimodule list (I^l or I^r, or Inv)
    codomain: tuple                     # CoringMorphism list (End or Aut)
    forward: tuple                      # forward[k] = index in codomain or None
    backward: tuple                     # backward[m] = index in domain or None
    homomorphism: bool                  # Γ(IJ) = Γ(I)Γ(J) (Γ'(IJ) = Γ'(J)Γ'(I) when anti)
    unit_ok: bool                       # Γ(i(B)) = id
    bijective: bool
    inverse_ok: bool                    # backward∘forward = id
    anti: bool = False
    counterexamples: tuple = ()

    @property
    def isomorphism(self) -> bool:
        return self.homomorphism and self.unit_ok and self.bijective and self.inverse_ok

    def summary(self) -> dict:
        return {
            "domain_size": len(self.domain),
            "codomain_size": len(self.codomain),
            "forward": list(self.forward),
            "backward": list(self.backward),
            "homomorphism": self.homomorphism,
            "anti": self.anti,
            "unit": self.unit_ok,
            "bijective": self.bijective,
            "inverse": self.inverse_ok,
            "counterexamples": [list(c) for c in self.counterexamples],
        }


def _witness(domain, codomain, images, back, mul_dom, mul_cod, unit_idx, cod_identity,
             anti=False) -> GammaWitness:
    """Assemble a witness from precomputed images; ``mul_*`` give product indices or None."""
    cex = []
    forward = tuple(images)
    hom = True
    n = len(domain)
    for a in range(n):
        for b in range(n):
            ab = mul_dom(a, b)
            if ab is None or forward[a] is None or forward[b] is None:
                continue
            lhs = forward[ab]
            rhs = mul_cod(forward[b], forward[a]) if anti else mul_cod(forward[a], forward[b])
            if lhs != rhs:
                hom = False
                cex.append(("homomorphism", a, b))
    unit_ok = unit_idx is not None and forward[unit_idx] == cod_identity
    if not unit_ok:
        cex.append(("unit", -1 if unit_idx is None else unit_idx))
    bij = None not in forward and sorted(forward) == list(range(len(codomain)))
    if not bij:
        cex.append(("bijection",))
    backward = tuple(back)
    inv = all(f is not None and backward[f] == k for k, f in enumerate(forward))
    if not inv:
        cex.append(("inverse",))
    return GammaWitness(tuple(domain), tuple(codomain), forward, backward, hom, unit_ok,
                        bij, inv, anti, tuple(cex))


@dataclass(frozen=True, eq=False)
class DescentData:
    """Everything computed once per extension for the Γ-family checks."""

    ext: Extension
    coring: SweedlerCoring
    subs: tuple
    table: tuple                        # product table over all subbimodules
    unit_index: int
    left: tuple                         # indices of I^l
    right: tuple                        # indices of I^r
    endos: EndomorphismMonoid

    @property
    def monoid(self) -> MonoidTable:
        return MonoidTable.from_rows(self.table, self.unit_index)


def descent_data(ext: Extension, coring: SweedlerCoring, subspace_budget: int = DEFAULT_SUBSPACE_BUDGET,
                 endo_budget: Optional[int] = None) -> DescentData:
    subs = enumerate_subbimodules(ext, subspace_budget)
    table = product_table(subs)
    unit = [k for k, s in enumerate(subs) if s.subspace == ext.image][0]
    mms = [m_maps(s) for s in subs]
    left = tuple(k for k, m in enumerate(mms) if m.left_invertible)
    right = tuple(k for k, m in enumerate(mms) if m.right_invertible)
    kw = {} if endo_budget is None else {"budget": endo_budget}
    endos = coring_endomorphisms(coring, **kw)
    return DescentData(ext, coring, tuple(subs), tuple(tuple(r) for r in table), unit, left, right, endos)


def _j_index(data: DescentData, g: CoringMorphism, family: tuple, side: str) -> Optional[int]:
    j = j_of(g, side).subspace
    for pos, k in enumerate(family):
        if data.subs[k].subspace == j:
            return pos
    return None


def verify_gamma_iso(data: DescentData, gamma_fn=None) -> GammaWitness:
    """Γ: I^l -> End(S⊗_BS) with inverse g ↦ J(g).

    ``gamma_fn`` replaces :func:`gamma` (used by the mutation self-test).
    """
    gamma_fn = gamma_fn or gamma
    fam = data.left
    images = [data.endos.index(gamma_fn(data.subs[k], data.coring)) for k in fam]
    back = [_j_index(data, g, fam, "left") for g in data.endos.elements]
    pos = {k: i for i, k in enumerate(fam)}
    return _witness([data.subs[k] for k in fam], data.endos.elements, images, back,
                    lambda a, b: pos.get(data.table[fam[a]][fam[b]]),
                    lambda x, y: data.endos.table[x][y],
                    pos.get(data.unit_index), data.endos.identity)


def verify_gamma_prime(data: DescentData) -> GammaWitness:
    """Γ': I^r -> End(S⊗_BS), expected to reverse products, with inverse g ↦ J'(g)."""
    fam = data.right
    images = [data.endos.index(gamma_prime(data.subs[k], data.coring)) for k in fam]
    back = [_j_index(data, g, fam, "right") for g in data.endos.elements]
    pos = {k: i for i, k in enumerate(fam)}
    return _witness([data.subs[k] for k in fam], data.endos.elements, images, back,
                    lambda a, b: pos.get(data.table[fam[a]][fam[b]]),
                    lambda x, y: data.endos.table[x][y],
                    pos.get(data.unit_index), data.endos.identity, anti=True)


def embedding_rigidity(data: DescentData) -> tuple[bool, list]:
    """Every I ⊆ J with S⊗_B(I -> J) bijective has I = J.  Returns (holds, offending pairs)."""
    ext = data.ext
    p = ext.p
    tensors = [tensor_over(ext.S_SB, s.bimodule) for s in data.subs]
    bad = []
    eye = identity(ext.S.dim)
    for a, sa in enumerate(data.subs):
        for b, sb in enumerate(data.subs):
            if a == b or sa.dim >= sb.dim or tensors[a].dim != tensors[b].dim:
                continue
            if not sb.subspace.contains_subspace(sa.subspace):
                continue
            incl = sb.subspace.coordinates(sa.subspace.inclusion) if sa.dim else zeros(sb.dim, 0)
            if is_bijective(tensor_maps(eye, incl, tensors[a], tensors[b]), p):
                bad.append((a, b))
    return not bad, bad


@dataclass(frozen=True, eq=False)
class InvData:
    members: tuple                 # indices into data.subs
    group: MonoidTable
    inverses: tuple
    witness: GammaWitness          # Γ restricted to Inv -> Aut
    equals_lr: bool                # Inv == I^l ∩ I^r on this instance
    contained_lr: bool             # Inv ⊆ I^l ∩ I^r


def inv_group(data: DescentData, gamma_fn=None) -> InvData:
    """Inv_B(S) = {I : IJ = JI = i(B) for some J} and Γ: Inv -> Aut(S⊗_BS)."""
    n = len(data.subs)
    u = data.unit_index
    t = data.table
    members = tuple(a for a in range(n) if any(t[a][b] == u and t[b][a] == u for b in range(n)))
    pos = {k: i for i, k in enumerate(members)}
    group = MonoidTable.from_rows([[pos[t[a][b]] for b in members] for a in members], pos[u])
    inverses = tuple(group.inverse(i) for i in range(len(members)))
    lr = set(data.left) & set(data.right)
    aut = data.endos.units
    aut_pos = {k: i for i, k in enumerate(aut)}
    gamma_fn = gamma_fn or gamma
    images = []
    for k in members:
        if k in data.left:
            idx = data.endos.index(gamma_fn(data.subs[k], data.coring))
            images.append(aut_pos.get(idx))
        else:
            images.append(None)
    back = [_j_index_in(data, data.endos.elements[k], members) for k in aut]
    w = _witness([data.subs[k] for k in members], [data.endos.elements[k] for k in aut], images, back,
                 lambda a, b: pos.get(t[members[a]][members[b]]),
                 lambda x, y: aut_pos.get(data.endos.table[aut[x]][aut[y]]),
                 pos[u], aut_pos.get(data.endos.identity))
    return InvData(members, group, inverses, w, set(members) == lr, set(members) <= lr)


def _j_index_in(data: DescentData, g: CoringMorphism, members: tuple) -> Optional[int]:
    j = j_of(g, "left").subspace
    for pos, k in enumerate(members):
        if data.subs[k].subspace == j:
            return pos
    return None


# --------------------------------------------------------------------------- comatrix


def _unit_preimage(mm_map: np.ndarray, tensor: TensorSpace, one: np.ndarray, p: int) -> np.ndarray:
    """Full coefficient matrix of a lift of m^{-1}(1)."""
    inv = inverse(mm_map, p)
    return matmul(tensor.lift, matmul(inv, one, p), p).reshape(tensor.left.dim, tensor.right.dim)


def gamma0(sub: SubBimodule, coring: ComatrixCoring, side: str = "left") -> CoringMorphism:
    """Γ₀(I): φ ⊗ m ↦ Σ φ·x ⊗ y·m with (m^l)^{-1}(1) = Σ x ⊗ y (left), or
    Γ'₀(I): φ ⊗ m ↦ Σ φ·y ⊗ x·m with (m^r)^{-1}(1) = Σ y ⊗ x (right)."""
    end = coring.end
    ext = sub.ext
    if not ext.S.same_as(end.S) or not ext.i.matrix.shape == end.i.matrix.shape \
            or not np.array_equal(ext.i.matrix, end.i.matrix):
        raise ValueError("subbimodule does not belong to B -> End_A(M)")
    if not ext.is_injective():
        raise ValueError("Γ₀ needs a faithful bimodule (injective B -> S)")
    p = ext.p
    mm = m_maps(sub)
    one = ext.S.unit
    basis_s = sub.basis                                    # (k, d) elements of I in S coordinates
    if side == "left":
        if not mm.left_invertible:
            raise NotInvertible("I is not in I^l")
        w = _unit_preimage(mm.m_l, mm.left_tensor, one, p)  # (d, k): Σ w[v,c] e_v ⊗ x_c
        pairs = [(identity(ext.S.dim)[v], basis_s[c], w[v, c]) for v, c in zip(*np.nonzero(w))]
    elif side == "right":
        if not mm.right_invertible:
            raise NotInvertible("I is not in I^r")
        w = _unit_preimage(mm.m_r, mm.right_tensor, one, p)  # (k, d): Σ w[c,v] x_c ⊗ e_v
        pairs = [(basis_s[c], identity(ext.S.dim)[v], w[c, v]) for c, v in zip(*np.nonzero(w))]
    else:
        raise ValueError("side must be 'left' or 'right'")
    sigma = coring.sigma
    r, n = sigma.left.dim, sigma.right.dim
    big = zeros(r * n, r * n)
    for on_dual, on_m, coeff in pairs:
        # φ ↦ φ·x is the right S-action on M*, m ↦ y·m the left S-action on M
        rd = end.dual_over_s.act_right(on_dual)
        lm = end.m_over_s.act_left(on_m)
        big = (big + int(coeff) * np.kron(rd, lm)) % p
    g = sigma.descend(matmul(sigma.project, big, p))
    bad = morphism_violations(coring, g)
    if bad:
        raise AxiomViolation("Γ₀(I) is not a coring endomorphism", bad)
    return CoringMorphism(coring, g)


@dataclass(frozen=True, eq=False)
class HatTransport:
    """g ↦ ĝ = (ξ⊗ξ)∘(M⊗g⊗M*)∘(ξ⁻¹⊗ξ⁻¹) from End(Σ) to End(S⊗_BS)."""

    coring: ComatrixCoring
    sweedler: SweedlerCoring

    @cached_property
    def _xi_data(self):
        end = self.coring.end
        p = end.S.p
        xt = end.xi_tensor
        n, r = xt.left.dim, xt.right.dim
        xi_full = matmul(end.xi, xt.project, p)                       # (d, n*r)
        xi_pairs = xi_full.T.reshape(n, r, -1)                        # ξ(m_j ⊗ φ_u)
        lifts = matmul(xt.lift, xi_inverse(end), p)                   # (n*r, d)
        xinv = lifts.T.reshape(-1, n, r)                              # ξ^{-1}(e_a)
        return xi_pairs, xinv

    def __call__(self, g: CoringMorphism) -> CoringMorphism:
        p = self.coring.p
        sigma = self.coring.sigma
        r, n = sigma.left.dim, sigma.right.dim
        xi_pairs, xinv = self._xi_data
        gfull = matmul(matmul(sigma.lift, g.matrix, p), sigma.project, p)   # rows (u,v), cols (k,l)
        gt = gfull.reshape(r, n, r, n)                                       # [u, v, k, l]
        t = np.einsum("ajk,blt,uvkl,jux,vty->abxy", xinv, xinv, gt, xi_pairs, xi_pairs) % p
        return _on_sweedler(self.sweedler, t)


@dataclass(frozen=True, eq=False)
class ComatrixData:
    descent: DescentData
    coring: ComatrixCoring
    endos: EndomorphismMonoid
    hat: HatTransport


def comatrix_data(data: DescentData, coring: ComatrixCoring,
                  endo_budget: Optional[int] = None) -> ComatrixData:
    kw = {} if endo_budget is None else {"budget": endo_budget}
    return ComatrixData(data, coring, coring_endomorphisms(coring, **kw),
                        HatTransport(coring, data.coring))


def verify_gamma0(cd: ComatrixData, side: str = "left") -> GammaWitness:
    """Γ₀: I^l -> End(Σ) (side='left') or Γ'₀: I^r -> End(Σ) reversing products."""
    data = cd.descent
    fam = data.left if side == "left" else data.right
    images = [cd.endos.index(gamma0(data.subs[k], cd.coring, side)) for k in fam]
    inv = {img: pos for pos, img in enumerate(images) if img is not None}
    back = [inv.get(m) for m in range(len(cd.endos))]
    pos = {k: i for i, k in enumerate(fam)}
    return _witness([data.subs[k] for k in fam], cd.endos.elements, images, back,
                    lambda a, b: pos.get(data.table[fam[a]][fam[b]]),
                    lambda x, y: cd.endos.table[x][y],
                    pos.get(data.unit_index), cd.endos.identity, anti=(side == "right"))


def verify_gamma0_group(cd: ComatrixData, inv: InvData) -> GammaWitness:
    """Γ₀ restricted to Inv -> Aut(Σ)."""
    data = cd.descent
    members = inv.members
    aut = cd.endos.units
    aut_pos = {k: i for i, k in enumerate(aut)}
    images = []
    for k in members:
        if k in data.left:
            images.append(aut_pos.get(cd.endos.index(gamma0(data.subs[k], cd.coring, "left"))))
        else:
            images.append(None)
    rev = {img: pos for pos, img in enumerate(images) if img is not None}
    back = [rev.get(m) for m in range(len(aut))]
    pos = {k: i for i, k in enumerate(members)}
    return _witness([data.subs[k] for k in members], [cd.endos.elements[k] for k in aut], images, back,
                    lambda a, b: pos.get(data.table[members[a]][members[b]]),
                    lambda x, y: aut_pos.get(cd.endos.table[aut[x]][aut[y]]),
                    pos[data.unit_index], aut_pos.get(cd.endos.identity))


@dataclass(frozen=True)
class HatReport:
    images: tuple               # index in End(S⊗_BS) of ĝ for each g in End(Σ)
    injective: bool
    multiplicative: bool
    unit_ok: bool


def hat_report(cd: ComatrixData) -> HatReport:
    sweedler_endos = cd.descent.endos
    images = tuple(sweedler_endos.index(cd.hat(g)) for g in cd.endos.elements)
    injective = None not in images and len(set(images)) == len(images)
    mult = None not in images and all(
        images[cd.endos.table[a][b]] == sweedler_endos.table[images[a]][images[b]]
        for a in range(len(images)) for b in range(len(images)))
    unit_ok = images[cd.endos.identity] == sweedler_endos.identity
    return HatReport(images, injective, mult, unit_ok)


@dataclass(frozen=True)
class TriangleReport:
    holds: bool
    violations: tuple           # indices into data.subs where Γ(I) != ĝ(Γ₀(I))


def triangle_check(cd: ComatrixData) -> TriangleReport:
    """Γ(I) = ĝ(Γ₀(I)) for every I in I^l."""
    data = cd.descent
    bad = []
    for k in data.left:
        sub = data.subs[k]
        lhs = gamma(sub, data.coring)
        rhs = cd.hat(gamma0(sub, cd.coring, "left"))
        if not np.array_equal(lhs.matrix, rhs.matrix):
            bad.append(k)
    return TriangleReport(not bad, tuple(bad))
