"""Seeded random instances and the check suite run over them.

Algebras are sampled with e_0 = 1 and random products among the other basis
vectors, rejected until associative.  Extensions B -> S are sampled by
sending 1 to 1 and the remaining basis vectors of B anywhere, rejected until
the map is an injective unital algebra morphism.  Each instance index has its
own generator seeded by (seed, index), so any reported violation can be
reproduced alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .algebra import AlgebraMorphism, FiniteAlgebra, validate_algebra, validate_morphism
from .coring import CoringMorphism
from .descent import gamma
from .errors import BudgetExceeded
from .instances import parse_instance, render
from .linalg import PrimeField
from .report import failed, run_suite

MAX_TRIES = 2000


def random_algebra(rng: np.random.Generator, p: int, dim: int, name: str = "") -> Optional[FiniteAlgebra]:
    """A random unital associative algebra with e_0 = 1, or None after MAX_TRIES rejections."""
    field_ = PrimeField(p)
    for _ in range(MAX_TRIES):
        c = np.zeros((dim, dim, dim), dtype=np.int64)
        for j in range(dim):
            c[0, j, j] = 1
            c[j, 0, j] = 1
        if dim > 1:
            c[1:, 1:, :] = rng.integers(0, p, size=(dim - 1, dim - 1, dim))
        alg = FiniteAlgebra(field_, c, np.eye(dim, dtype=np.int64)[0], name=name)
        if not validate_algebra(alg):
            return alg
    return None


def random_extension(rng: np.random.Generator, B: FiniteAlgebra, S: FiniteAlgebra) -> Optional[AlgebraMorphism]:
    p = B.p
    for _ in range(MAX_TRIES):
        m = rng.integers(0, p, size=(S.dim, B.dim))
        m[:, 0] = S.unit
        f = AlgebraMorphism(B, S, m)
        if not validate_morphism(f) and f.is_injective():
            return f
    return None


def random_instance_text(p: int, max_dim_s: int, max_dim_b: int, seed: int, index: int) -> Optional[str]:
    rng = np.random.default_rng([seed, index])
    ds = int(rng.integers(1, max_dim_s + 1))
    db = int(rng.integers(1, min(ds, max_dim_b) + 1))
    S = random_algebra(rng, p, ds, "S")
    B = random_algebra(rng, p, db, "B")
    if S is None or B is None:
        return None
    f = random_extension(rng, B, S)
    if f is None:
        return None
    return render(f"fuzz-{seed}-{index}", p, {"B": B, "S": S}, ("B", "S", f.matrix), seed=seed)


def corrupted_gamma(flip: tuple = (0, 0)) -> Callable:
    """Γ with one matrix entry incremented; a test hook for the mutation self-test."""

    def fn(sub, coring):
        g = gamma(sub, coring)
        m = np.array(g.matrix, copy=True)
        m[flip] = (m[flip] + 1) % coring.p
        return CoringMorphism(coring, m)

    return fn


@dataclass
class FuzzReport:
    p: int
    max_dim_s: int
    max_dim_b: int
    count: int
    seed: int
    attempted: int = 0
    certified: int = 0
    uncertified: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"p": self.p, "max_dim_S": self.max_dim_s, "max_dim_B": self.max_dim_b,
                "count": self.count, "seed": self.seed, "attempted": self.attempted,
                "certified": self.certified, "uncertified": self.uncertified,
                "violations": self.violations}


def _violations(report: dict) -> list:
    out = [{"verdict": k, "detail": report["verdicts"][k]} for k in failed(report)]
    g = report.get("gamma") or {}
    for key in ("gamma", "gamma_prime", "gamma_inv"):
        if key in g and g[key]["counterexamples"]:
            out.append({"map": key, "counterexamples": g[key]["counterexamples"],
                        "forward": g[key]["forward"]})
    return out


def fuzz(p: int = 2, max_dim_s: int = 2, max_dim_b: Optional[int] = None, count: int = 100,
         seed: int = 0, gamma_fn: Optional[Callable] = None, max_attempts: Optional[int] = None) -> FuzzReport:
    """Run the suite on ``count`` certified random instances; collect every failed verdict."""
    max_dim_b = max_dim_s if max_dim_b is None else max_dim_b
    rep = FuzzReport(p, max_dim_s, max_dim_b, count, seed)
    max_attempts = max_attempts if max_attempts is not None else 20 * count + 20
    index = 0
    while rep.certified < count and index < max_attempts:
        text = random_instance_text(p, max_dim_s, max_dim_b, seed, index)
        rep.attempted += 1
        if text is None:
            index += 1
            continue
        spec = parse_instance(text)
        try:
            report = run_suite(spec, gamma_fn=gamma_fn)
        except BudgetExceeded:
            rep.uncertified.append(index)
            index += 1
            continue
        if report["certificate"] is None:
            rep.uncertified.append(index)
        else:
            rep.certified += 1
            bad = _violations(report)
            if bad:
                rep.violations.append({"seed": seed, "index": index, "instance": text,
                                       "violations": bad})
        index += 1
    return rep
