import numpy as np
import pytest

from descent_forge.algebra import AlgebraMorphism, ground, product_algebra
from descent_forge.comonadicity import (EVIDENCE_ORDER, certify, collect_evidence, cyclic_module,
                                        is_conservative, is_direct_summand, is_faithfully_flat,
                                        left_ideals, maximal_left_ideals, preserves_equalizer,
                                        unit_bijectivity)
from descent_forge.coring import build_sweedler, comparison_functor, coring_endomorphisms, \
    regular_comodule, twist_comodule
from descent_forge.extension import Extension
from descent_forge.instances import builtin_names, load_builtin
from descent_forge.linalg import Subspace, identity, matmul
from descent_forge.modules import Bimodule

from oracles import all_subspaces, all_vectors, span_set


def ext_of(name):
    return load_builtin(name).extension


def test_left_ideals_of_dual_numbers():
    a = ext_of("dual-numbers(2)").S
    ideals = left_ideals(a, proper=False)
    assert [v.dim for v in ideals] == [0, 1, 2]
    assert maximal_left_ideals(a) == [Subspace.span([[0, 1]], 2, 2)]


def test_left_ideals_against_brute_force():
    a = ext_of("mat2(2)").S
    found = {span_set(list(v.basis), 2) or frozenset({(0, 0, 0, 0)})
             for v in left_ideals(a, proper=False)}
    expected = set()
    for sub in all_subspaces(4, 2):
        if all(tuple(a.mul(s, np.array(v)) % 2) in sub for s in identity(4) for v in sub):
            expected.add(sub)
    assert found == expected and len(found) == 5


def test_field_base_is_faithfully_flat():
    f = ground(3)
    m = Bimodule(f, f, identity(3)[None], identity(3)[None])
    assert is_faithfully_flat(m, "right") is not None
    assert is_faithfully_flat(m, "left") is not None


def test_residue_field_is_not_flat():
    a = ext_of("dual-numbers(2)").S
    x = cyclic_module(a, Subspace.span([[0, 1]], 2, 2))
    assert is_faithfully_flat(x, "left") is None


def test_matrices_flat_over_diagonal():
    ext = ext_of("diag-mat2(2)")
    w = is_faithfully_flat(ext.S_BS, "left")
    assert w is not None and w.verify()
    assert is_faithfully_flat(ext.S_SB, "right") is not None


def test_retractions():
    ident = is_direct_summand(ext_of("id-ext(2)"))
    assert ident is not None and ident.matrix.tolist() == [[1]]
    dual = is_direct_summand(ext_of("dual-numbers(2)"))
    # π(a + b x) = a
    for a, b in all_vectors(2, 2):
        assert matmul(dual.matrix, np.array([a, b]), 2).tolist() == [a]
    split = is_direct_summand(ext_of("split2(2)"))
    assert split is not None and split.verify()


def test_conservativity():
    assert is_conservative(ext_of("mat2(2)")).holds
    assert is_conservative(ext_of("field4")).holds
    # projection F_2 x F_2 -> F_2 onto the first factor
    proj = AlgebraMorphism(product_algebra(2, 2), ground(2), [[1, 0]])
    log = is_conservative(Extension(proj))
    assert not log.holds
    assert log.counterexample == Subspace.span([[1, 0]], 2, 2)


@pytest.mark.parametrize("name", ["split2(3)", "dual-numbers(2)", "diag-mat2(2)"])
def test_equalizers_preserved(name):
    ext = ext_of(name)
    for ideal in left_ideals(ext.B, proper=False):
        k = comparison_functor(cyclic_module(ext.B, ideal), ext)
        chk = preserves_equalizer(ext, k.comodule)
        assert chk.holds and chk.split_ok
    y = regular_comodule(ext)
    for g in coring_endomorphisms(build_sweedler(ext)).elements:
        chk = preserves_equalizer(ext, twist_comodule(g, y))
        assert chk.holds and chk.split_ok


@pytest.mark.parametrize("name", builtin_names())
def test_certificates(name):
    spec = load_builtin(name)
    cert = certify(spec.extension, spec.end)
    assert cert is not None and cert.verify()
    assert cert.kind in ("left-faithfully-flat", "bimodule-retraction")
    assert all(u.bijective for u in unit_bijectivity(spec.extension))


def test_dual_numbers_has_both_kinds():
    ext = ext_of("dual-numbers(2)")
    ev = collect_evidence(ext)
    assert ev["left-faithfully-flat"] is not None and ev["bimodule-retraction"] is not None
    assert certify(ext).kind == "left-faithfully-flat" == EVIDENCE_ORDER[0]


def test_diag_certified_left_flat():
    cert = certify(ext_of("diag-mat2(2)"))
    assert cert.kind == "left-faithfully-flat" and cert.left and cert.right


def test_comatrix_gate():
    spec = load_builtin("comatrix-diag-mat2(2)")
    cert = certify(spec.extension, spec.end)
    assert cert.comatrix_group
    summary = cert.summary()
    assert summary["gates"]["comatrix_group"] and len(summary["notes"]) == 2
