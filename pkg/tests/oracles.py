"""Brute-force reference computations, independent of the package's RREF/tensor code.

Everything here enumerates vectors or matrices over F_p directly, so it only
scales to the smallest instances.  Algebras are passed as raw structure
constants c[i, j] = e_i e_j.
"""

from __future__ import annotations

import itertools

import numpy as np


def all_vectors(n: int, p: int) -> np.ndarray:
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)


def span_set(vectors, p: int) -> frozenset:
    """All F_p-combinations of ``vectors`` as a frozenset of tuples."""
    vectors = [np.asarray(v, dtype=np.int64) for v in vectors]
    if not vectors:
        return frozenset()
    n = len(vectors[0])
    out = {tuple([0] * n)}
    for v in vectors:
        out = {tuple((np.array(w) + k * v) % p) for w in out for k in range(p)}
    return frozenset(out)


def all_subspaces(n: int, p: int) -> set:
    """Every subspace of F_p^n as a frozenset of its vectors, by closure under adding vectors."""
    vecs = [tuple(v) for v in all_vectors(n, p)]
    zero = frozenset({tuple([0] * n)})
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for sub in frontier:
            for v in vecs:
                if v in sub:
                    continue
                bigger = span_set([np.array(w) for w in sub] + [np.array(v)], p)
                if bigger not in seen:
                    seen.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    return seen


def solutions(a: np.ndarray, b: np.ndarray, p: int) -> list:
    """Every x with a x = b over F_p."""
    a = np.asarray(a, dtype=np.int64)
    xs = all_vectors(a.shape[1], p)
    ok = np.all((xs @ a.T - np.asarray(b)) % p == 0, axis=1)
    return [tuple(x) for x in xs[ok]]


def mul(c: np.ndarray, x, y, p: int) -> np.ndarray:
    return np.einsum("i,j,ijk->k", np.asarray(x), np.asarray(y), c) % p


def field_sweedler_endos(c: np.ndarray, p: int) -> list[np.ndarray]:
    """All coring endomorphisms of S ⊗_F S for S over the ground field F = F_p.

    Works in the kron basis e_a ⊗ e_b (index a*d + b) where S ⊗ S ⊗ S is plain
    F_p^{d^3}; tests every d^2 x d^2 matrix against S-bilinearity, the counit
    and the comultiplication written out by hand.
    """
    d = c.shape[0]
    n = d * d
    left = [np.kron(c[a].T, np.eye(d, dtype=np.int64)) % p for a in range(d)]   # s·(x⊗y)
    right = [np.kron(np.eye(d, dtype=np.int64), c[:, a, :].T) % p for a in range(d)]  # (x⊗y)·s
    counit = np.zeros((d, n), dtype=np.int64)
    for a in range(d):
        for b in range(d):
            counit[:, a * d + b] = c[a, b]
    unit = _unit_of(c, p)
    gs = all_vectors(n * n, p).reshape(-1, n, n)
    keep = np.ones(len(gs), dtype=bool)
    for m in left + right:
        keep &= np.all((gs @ m - m @ gs) % p == 0, axis=(1, 2))
    keep &= np.all((counit @ gs - counit) % p == 0, axis=(1, 2))
    out = [g for g in gs[keep] if _comult_ok(g, c, unit, p)]
    return out


def _unit_of(c: np.ndarray, p: int) -> np.ndarray:
    d = c.shape[0]
    for u in all_vectors(d, p):
        if all(np.array_equal(mul(c, u, e, p), e) and np.array_equal(mul(c, e, u, p), e)
               for e in np.eye(d, dtype=np.int64)):
            return u
    raise ValueError("no unit")


def _comult_ok(g: np.ndarray, c: np.ndarray, unit: np.ndarray, p: int) -> bool:
    """Δ∘g = (g ⊗_S g)∘Δ with Δ(x⊗y) = x⊗1⊗y, checked on basis tensors."""
    d = c.shape[0]
    gt = g.reshape(d, d, d, d)      # gt[a, b, x, y]: coefficient of e_a⊗e_b in g(e_x⊗e_y)
    gu = np.einsum("abxy,x->aby", gt, unit) % p     # g(1 ⊗ e_y)
    for x in range(d):
        for y in range(d):
            lhs = np.einsum("ab,u->aub", gt[:, :, x, y], unit) % p
            # (g ⊗_S g)(e_x⊗1⊗e_y) = Σ g(e_x⊗1)_{a,b} g(1⊗e_y)_{c,e} e_a ⊗ e_b e_c ⊗ e_e
            gx1 = np.einsum("abx,x->ab", gt[:, :, x, :], unit) % p
            rhs = np.einsum("ab,ce,bck->ake", gx1, gu[:, :, y], c) % p
            if not np.array_equal(lhs, rhs):
                return False
    return True
