import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from descent_forge.comonadicity import certify
from descent_forge.coring import build_comatrix, build_sweedler, twist_comodule, regular_comodule, \
    equalizer_RS
from descent_forge.descent import (SubBimodule, comatrix_data, descent_data, embedding_rigidity,
                                   enumerate_subbimodules, gamma, gamma0, gamma_prime, hat_report,
                                   inv_group, j_of, m_maps, subbimodule_product, triangle_check,
                                   twist_conditions, unit_subbimodule, verify_gamma0,
                                   verify_gamma0_group, verify_gamma_iso, verify_gamma_prime)
from descent_forge.errors import NotInvertible
from descent_forge.fuzz import random_instance_text
from descent_forge.instances import load_builtin, parse_instance
from descent_forge.linalg import Subspace, identity, inverse, matmul
from descent_forge.monoid import MonoidTable, cyclic_group, is_isomorphic, symmetric_group

from oracles import all_subspaces, span_set


def ext_of(name):
    return load_builtin(name).extension


def sub_of(ext, vectors):
    return SubBimodule(ext, Subspace.span(vectors, ext.S.dim, ext.p))


def subbimodule_oracle(ext) -> set:
    """Subspaces of S closed under i(b)· and ·i(b), by brute force over vector sets."""
    S, p = ext.S, ext.p
    images = [ext.i.matrix[:, k] for k in range(ext.B.dim)]
    out = set()
    for sub in all_subspaces(S.dim, p):
        vs = [np.array(v) for v in sub]
        if all(tuple(S.mul(b, v) % p) in sub and tuple(S.mul(v, b) % p) in sub
               for b in images for v in vs):
            out.add(sub)
    return out


def as_set(sub: SubBimodule) -> frozenset:
    zero = frozenset({tuple([0] * sub.ext.S.dim)})
    return span_set(list(sub.subspace.basis), sub.ext.p) or zero


def gl2(p=2):
    for flat in itertools.product(range(p), repeat=4):
        x = np.array(flat, dtype=np.int64)
        if (x[0] * x[3] - x[1] * x[2]) % p:
            yield x


def mat_inverse(x, p=2):
    return inverse(x.reshape(2, 2), p).reshape(-1)


@pytest.mark.parametrize("name,count", [("id-ext(2)", 2), ("split2(2)", 5), ("split2(3)", 6),
                                        ("dual-numbers(2)", 5), ("diag-mat2(2)", 16),
                                        ("mat2(2)", 67), ("field4", 5)])
def test_subbimodule_counts(name, count):
    ext = ext_of(name)
    subs = enumerate_subbimodules(ext)
    assert len(subs) == count
    assert {as_set(s) for s in subs} == subbimodule_oracle(ext)


def test_diag_subbimodules_are_coordinate_spans():
    ext = ext_of("diag-mat2(2)")
    coord = {Subspace.span(identity(4)[list(c)], 4, 2) if c else Subspace.zero(4, 2)
             for k in range(5) for c in itertools.combinations(range(4), k)}
    assert {s.subspace for s in enumerate_subbimodules(ext)} == coord


def test_products():
    ext = ext_of("split2(3)")
    i_b = unit_subbimodule(ext)
    x = sub_of(ext, [[1, 2]])
    assert subbimodule_product(x, x).subspace == i_b.subspace == ext.image
    assert subbimodule_product(x, i_b).subspace == x.subspace
    diag = ext_of("diag-mat2(2)")
    off = sub_of(diag, [[0, 1, 0, 0], [0, 0, 1, 0]])
    assert subbimodule_product(off, off).subspace == diag.image


def test_m_maps_examples():
    ext = ext_of("split2(2)")
    mm = m_maps(unit_subbimodule(ext))
    assert mm.left_invertible and mm.right_invertible
    bad = m_maps(sub_of(ext, [[1, 0]]))
    assert not bad.left_invertible
    mat = ext_of("mat2(2)")
    for x in gl2():
        mm = m_maps(sub_of(mat, [x]))
        assert mm.left_invertible and mm.right_invertible


def test_left_invertibles_match_rank_oracle():
    ext = ext_of("mat2(2)")
    S = ext.S
    data = descent_data(ext, build_sweedler(ext))
    # over a field base, m^l is bijective iff dim S·dim I = dim S and S·I spans S
    expected = set()
    for k, sub in enumerate(data.subs):
        prods = [S.mul(s, v) for s in identity(4) for v in sub.subspace.basis]
        if 4 * sub.dim == 4 and len(span_set(prods, 2)) == 16:
            expected.add(k)
    assert set(data.left) == expected and len(expected) == 6


def test_gamma_unit_is_identity():
    for name in ("split2(3)", "dual-numbers(2)", "diag-mat2(2)", "field4"):
        ext = ext_of(name)
        c = build_sweedler(ext)
        assert gamma(unit_subbimodule(ext), c).is_identity()
        assert gamma_prime(unit_subbimodule(ext), c).is_identity()


def test_gamma_split3_closed_form():
    ext = ext_of("split2(3)")
    c = build_sweedler(ext)
    x = np.array([1, 2])
    sub = sub_of(ext, [x])
    one = ext.S.unit
    assert np.array_equal(matmul(gamma(sub, c).matrix, c.pure(one, one), 3), c.pure(x, x))
    assert np.array_equal(matmul(gamma_prime(sub, c).matrix, c.pure(one, one), 3), c.pure(x, x))
    assert j_of(gamma(sub, c)).subspace == sub.subspace


def test_gamma_matrix_closed_forms():
    ext = ext_of("mat2(2)")
    S = ext.S
    c = build_sweedler(ext)
    basis = identity(4)
    for x in gl2():
        sub = sub_of(ext, [x])
        xi = mat_inverse(x)
        g, gp = gamma(sub, c).matrix, gamma_prime(sub, c).matrix
        for s in basis:
            for t in basis:
                v = c.pure(s, t)
                assert np.array_equal(matmul(g, v, 2), c.pure(S.mul(s, xi), S.mul(x, t)))
                assert np.array_equal(matmul(gp, v, 2), c.pure(S.mul(s, x), S.mul(xi, t)))


def test_gamma_rejects_non_member():
    ext = ext_of("split2(2)")
    with pytest.raises(NotInvertible):
        gamma(sub_of(ext, [[1, 0]]), build_sweedler(ext))


def test_j_of_identity():
    ext = ext_of("split2(2)")
    c = build_sweedler(ext)
    ident = next(g for g in descent_data(ext, c).endos.elements if g.is_identity())
    assert j_of(ident).subspace == ext.image
    for name in ("dual-numbers(2)", "diag-mat2(2)", "field4"):
        e = ext_of(name)
        cc = build_sweedler(e)
        idg = next(g for g in descent_data(e, cc).endos.elements if g.is_identity())
        assert j_of(idg).subspace.contains_subspace(e.image)


@pytest.mark.parametrize("name", ["split2(2)", "split2(3)", "dual-numbers(2)", "diag-mat2(2)"])
def test_twist_condition_rows(name):
    ext = ext_of(name)
    data = descent_data(ext, build_sweedler(ext))
    for g in data.endos.elements:
        row = twist_conditions(g)
        assert row.agree and row.counit_is_m_l and row.equalizer_is_j
        if g.is_identity():
            assert all(row.conditions)


def test_equalizer_of_twist_is_j():
    ext = ext_of("split2(3)")
    c = build_sweedler(ext)
    y = regular_comodule(ext)
    for g in descent_data(ext, c).endos.elements:
        assert equalizer_RS(twist_comodule(g, y)).subspace == j_of(g).subspace


def test_gamma_iso_split3():
    ext = ext_of("split2(3)")
    data = descent_data(ext, build_sweedler(ext))
    w = verify_gamma_iso(data)
    assert w.isomorphism and len(data.left) == len(data.endos) == 2


def test_gamma_iso_identity_extension():
    ext = ext_of("id-ext(2)")
    data = descent_data(ext, build_sweedler(ext))
    w = verify_gamma_iso(data)
    assert w.isomorphism and len(w.domain) == len(w.codomain) == 1
    inv = inv_group(data)
    assert len(inv.members) == 1


def test_gamma_mat2_symmetric_group():
    ext = ext_of("mat2(2)")
    data = descent_data(ext, build_sweedler(ext))
    w = verify_gamma_iso(data)
    assert w.isomorphism and len(w.domain) == 6
    assert is_isomorphic(MonoidTable.from_rows(data.endos.table, data.endos.identity), symmetric_group(3))
    wp = verify_gamma_prime(data)
    assert wp.isomorphism and wp.anti


def test_inv_dual_numbers():
    ext = ext_of("dual-numbers(2)")
    data = descent_data(ext, build_sweedler(ext))
    inv = inv_group(data)
    assert {data.subs[k].subspace for k in inv.members} == {ext.image, Subspace.span([[1, 1]], 2, 2)}
    assert is_isomorphic(inv.group, cyclic_group(2))
    assert inv.witness.isomorphism


def test_inv_diag():
    ext = ext_of("diag-mat2(2)")
    data = descent_data(ext, build_sweedler(ext))
    inv = inv_group(data)
    off = Subspace.span([[0, 1, 0, 0], [0, 0, 1, 0]], 4, 2)
    assert {data.subs[k].subspace for k in inv.members} == {ext.image, off}
    assert inv.witness.isomorphism and inv.equals_lr


@pytest.mark.parametrize("name", ["split2(3)", "dual-numbers(2)", "diag-mat2(2)", "field4"])
def test_embedding_rigidity(name):
    ext = ext_of(name)
    holds, bad = embedding_rigidity(descent_data(ext, build_sweedler(ext)))
    assert holds and bad == []


def comatrix_setup(name):
    spec = load_builtin(name)
    ext = spec.extension
    data = descent_data(ext, build_sweedler(ext))
    return data, comatrix_data(data, build_comatrix(spec.comatrix, spec.end))


def test_gamma0_unit_and_swap():
    data, cd = comatrix_setup("comatrix-diag-mat2(2)")
    ext = data.ext
    assert gamma0(unit_subbimodule(ext), cd.coring).is_identity()
    assert gamma0(unit_subbimodule(ext), cd.coring, "right").is_identity()
    off = sub_of(ext, [[0, 1, 0, 0], [0, 0, 1, 0]])
    g = gamma0(off, cd.coring)
    assert not g.is_identity() and g.is_bijective()
    # ĝ of the swap is Γ of the swap
    assert np.array_equal(cd.hat(g).matrix, gamma(off, data.coring).matrix)


def test_comatrix_diag_suite():
    data, cd = comatrix_setup("comatrix-diag-mat2(2)")
    assert len(cd.endos.units) == 2
    hat = hat_report(cd)
    assert hat.injective and hat.multiplicative and hat.unit_ok
    assert triangle_check(cd).holds
    assert verify_gamma0(cd).isomorphism and verify_gamma0(cd, "right").isomorphism
    assert verify_gamma0_group(cd, inv_group(data)).isomorphism


def test_triangle_on_all_of_left_family():
    data, cd = comatrix_setup("comatrix-mat2(2)")
    tri = triangle_check(cd)
    assert tri.holds and len(data.left) == 6


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_extensions_gamma(seed):
    text = random_instance_text(2, 2, 2, seed, 1)
    if text is None:
        return
    ext = parse_instance(text).extension
    if not ext.is_injective() or certify(ext) is None:
        return
    data = descent_data(ext, build_sweedler(ext))
    w = verify_gamma_iso(data)
    assert w.isomorphism
    assert inv_group(data).witness.isomorphism
    for g in data.endos.elements:
        assert twist_conditions(g).agree
