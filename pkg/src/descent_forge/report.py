"""Run the full verification suite on an instance and assemble a JSON-ready report.

Top-level keys, in order: instance, certificate, monoids, gamma, gamma0,
prop31, verdicts, timing, version.  A verdict is "pass"/"fail" only when the
gating certificate is present, "observed" otherwise, and "skipped" when the
suite did not run it.  Timing is filled only on request so that reports stay
byte-identical across runs.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from typing import Callable, Optional

from . import __version__
from .comonadicity import (certify, is_conservative, preserves_equalizer, unit_bijectivity,
                           cyclic_module, left_ideals)
from .coring import (build_comatrix, build_sweedler, check_coring, comparison_functor,
                     regular_comodule, twist_comodule)
from .descent import (comatrix_data, descent_data, embedding_rigidity, hat_report, inv_group,
                      triangle_check, twist_conditions, verify_gamma0, verify_gamma0_group,
                      verify_gamma_iso, verify_gamma_prime)
from .errors import BudgetExceeded
from .instances import InstanceSpec

SUITES = ("all", "gamma", "comatrix", "prop31", "comonadicity")
CHECKS = ("equalizer-is-J", "twist-conditions", "gamma-iso-iff-conditions", "gamma-iso",
          "gamma-prime-anti-iso", "gamma-group-iso", "gamma0-iso", "gamma0-prime-anti-iso",
          "gamma0-group-iso", "gamma0-group-iso-comatrix-gate", "comonadicity-checks")


def _verdict(status: str, observed=None, gate: str = "") -> dict:
    return {"status": status, "observed": observed, "gate": gate}


def _gated(ok: bool, gate_open: bool, gate: str) -> dict:
    if gate_open:
        return _verdict("pass" if ok else "fail", ok, gate)
    return _verdict("observed", ok, gate)


def _table(rows) -> list:
    return [list(r) for r in rows]


class _Clock:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.stages: dict = {}

    @contextmanager
    def stage(self, name: str):
        t0 = time.perf_counter()
        yield
        if self.enabled:
            self.stages[name] = round(time.perf_counter() - t0, 4)


def run_suite(spec: InstanceSpec, which: str = "all", timing: bool = False,
              gamma_fn: Optional[Callable] = None) -> dict:
    """Deterministic report for ``spec``; ``gamma_fn`` substitutes Γ (mutation self-test)."""
    if which not in SUITES:
        raise ValueError(f"unknown suite {which!r}; choose from {SUITES}")
    clock = _Clock(timing)
    ext = spec.extension
    want = (lambda s: which in ("all", s))
    report: dict = {
        "instance": {
            "name": spec.name, "p": spec.p, "seed": spec.seed, "sha256": spec.digest,
            "dim_B": ext.B.dim, "dim_S": ext.S.dim, "injective": ext.is_injective(),
            "comatrix": spec.comatrix is not None,
            "coring_labels": ["B-coring", "S-coring"],
            "budgets": {"subspace": spec.budgets.subspace, "endo": spec.budgets.endo},
        },
        "certificate": None, "monoids": None, "gamma": None, "gamma0": None, "prop31": None,
        "verdicts": {k: _verdict("skipped") for k in CHECKS},
        "timing": {}, "version": __version__,
    }
    verdicts = report["verdicts"]
    try:
        _fill(report, spec, which, want, clock, gamma_fn)
    except BudgetExceeded as exc:
        report["instance"]["guard"] = {"guard": exc.guard, "requested": str(exc.requested),
                                       "limit": str(exc.limit)}
    report["timing"] = clock.stages
    report["verdicts"] = verdicts
    return report


def _fill(report, spec, which, want, clock, gamma_fn):
    ext = spec.extension
    budgets = spec.budgets
    verdicts = report["verdicts"]

    with clock.stage("coring"):
        sweedler = build_sweedler(ext)
        comatrix = build_comatrix(spec.comatrix, spec.end) if spec.comatrix is not None else None
        report["instance"]["coring_axioms"] = {
            "sweedler": not check_coring(sweedler),
            "comatrix": None if comatrix is None else not check_coring(comatrix),
        }
    with clock.stage("certificate"):
        cert = certify(ext, spec.end, budgets.subspace)
    report["certificate"] = None if cert is None else cert.summary()
    left = cert is not None and cert.left
    right = cert is not None and cert.right
    either = cert is not None and cert.either

    if not ext.is_injective():
        # Γ theory presumes an extension; only the certificate is reported
        return

    with clock.stage("descent"):
        data = descent_data(ext, sweedler, budgets.subspace, budgets.endo)
    endos = data.endos
    report["monoids"] = {
        "subbimodules": [s.label() for s in data.subs],
        "product_table": _table(data.table),
        "unit": data.unit_index,
        "I_l": list(data.left),
        "I_r": list(data.right),
        "End": {"size": len(endos), "search_dim": endos.search_dim, "identity": endos.identity,
                "table": _table(endos.table),
                "elements": [[int(x) for x in g.matrix.reshape(-1)] for g in endos.elements]},
        "Aut": list(endos.units),
    }

    if want("gamma"):
        with clock.stage("gamma"):
            w = verify_gamma_iso(data, gamma_fn)
            wp = verify_gamma_prime(data)
            inv = inv_group(data, gamma_fn)
            rigid, offending = embedding_rigidity(data)
        report["monoids"]["Inv"] = {"members": list(inv.members), "table": _table(inv.group.table),
                                    "identity": inv.group.identity,
                                    "equals_I_l_cap_I_r": inv.equals_lr,
                                    "contained_in_I_l_cap_I_r": inv.contained_lr}
        report["gamma"] = {"gamma": w.summary(), "gamma_prime": wp.summary(),
                           "gamma_inv": inv.witness.summary(),
                           "embedding_rigidity": {"holds": rigid, "offending": [list(x) for x in offending]},
                           "gamma_prime_domain": "I_r"}
        verdicts["gamma-iso"] = _gated(w.isomorphism, left, "left")
        verdicts["gamma-prime-anti-iso"] = _gated(wp.isomorphism, right, "right")
        verdicts["gamma-group-iso"] = _gated(inv.witness.isomorphism, either, "either")

    if want("prop31") or want("gamma"):
        with clock.stage("twist"):
            rows = [twist_conditions(g) for g in endos.elements]
        report["prop31"] = [
            {"g": k, "j_left_invertible": r.j_left_invertible, "counit_bijective": r.counit_bijective,
             "preserves_equalizer": r.preserves_equalizer, "tensor_mono": r.tensor_mono,
             "agree": r.agree, "counit_is_m_l": r.counit_is_m_l, "equalizer_is_j": r.equalizer_is_j}
            for k, r in enumerate(rows)]
        verdicts["equalizer-is-J"] = _verdict(_pf(all(r.equalizer_is_j for r in rows)),
                                        all(r.equalizer_is_j for r in rows), "none")
        ok_twist = all(r.agree and r.counit_is_m_l for r in rows)
        verdicts["twist-conditions"] = _verdict(_pf(ok_twist), ok_twist, "none")
        if report["gamma"] is not None:
            rigid = report["gamma"]["embedding_rigidity"]["holds"]
            all_hold = all(all(r.conditions) for r in rows)
            iso = report["gamma"]["gamma"]["bijective"] and report["gamma"]["gamma"]["homomorphism"]
            verdicts["gamma-iso-iff-conditions"] = _gated(iso == all_hold, rigid, "embedding-rigidity")

    if want("comonadicity"):
        with clock.stage("comonadicity"):
            cons = is_conservative(ext, budgets.subspace)
            units = unit_bijectivity(ext, budgets.subspace)
            eq_ok = []
            for ideal in left_ideals(ext.B, budgets.subspace, proper=False):
                k = comparison_functor(cyclic_module(ext.B, ideal), ext)
                eq_ok.append(preserves_equalizer(ext, k.comodule))
            base = regular_comodule(ext, "left")
            for g in endos.elements:
                eq_ok.append(preserves_equalizer(ext, twist_comodule(g, base)))
        checks = {"conservative": cons.holds,
                  "unit_bijective": [u.bijective for u in units],
                  "equalizers_preserved": all(e.holds for e in eq_ok),
                  "split_equalizers": all(e.split_ok for e in eq_ok),
                  "comodules_checked": len(eq_ok)}
        report["certificate"] = dict(report["certificate"] or {"kind": None}, checks=checks)
        ok = cons.holds and all(u.bijective for u in units) and checks["equalizers_preserved"] \
            and checks["split_equalizers"]
        verdicts["comonadicity-checks"] = _gated(ok, cert is not None, "any-certificate")

    if comatrix is not None and want("comatrix"):
        with clock.stage("comatrix"):
            cd = comatrix_data(data, comatrix, budgets.endo)
            w0 = verify_gamma0(cd, "left")
            w0p = verify_gamma0(cd, "right")
            inv = inv_group(data)
            wg = verify_gamma0_group(cd, inv)
            hat = hat_report(cd)
            tri = triangle_check(cd)
        report["gamma0"] = {
            "End_sigma": {"size": len(cd.endos), "table": _table(cd.endos.table),
                          "identity": cd.endos.identity, "Aut": list(cd.endos.units)},
            "xi_bijective": True,
            "gamma0": w0.summary(), "gamma0_prime": w0p.summary(), "gamma0_inv": wg.summary(),
            "hat": {"images": list(hat.images), "injective": hat.injective,
                    "multiplicative": hat.multiplicative, "unit": hat.unit_ok},
            "triangle": {"holds": tri.holds, "violations": list(tri.violations)},
        }
        hat_ok = hat.injective and hat.multiplicative and hat.unit_ok and tri.holds
        verdicts["gamma0-iso"] = _gated(w0.isomorphism and hat_ok, left, "left")
        verdicts["gamma0-prime-anti-iso"] = _gated(w0p.isomorphism, right, "right")
        verdicts["gamma0-group-iso"] = _gated(wg.isomorphism, either, "either")
        verdicts["gamma0-group-iso-comatrix-gate"] = _gated(wg.isomorphism, cert is not None and cert.comatrix_group,
                                  "comatrix-ff-or-separable")


def _pf(ok: bool) -> str:
    return "pass" if ok else "fail"


def failed(report: dict) -> list[str]:
    return [k for k, v in report["verdicts"].items() if v["status"] == "fail"]


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
