from descent_forge.fuzz import corrupted_gamma, fuzz, random_algebra, random_instance_text
from descent_forge.algebra import validate_algebra
from descent_forge.instances import parse_instance

import numpy as np


def test_zero_count_is_empty():
    rep = fuzz(2, 2, count=0, seed=1)
    assert rep.attempted == rep.certified == 0 and rep.violations == []


def test_instances_are_reproducible_by_index():
    a = random_instance_text(2, 2, 2, seed=5, index=3)
    b = random_instance_text(2, 2, 2, seed=5, index=3)
    assert a == b
    assert a != random_instance_text(2, 2, 2, seed=5, index=4) or a is None


def test_random_algebras_are_valid():
    rng = np.random.default_rng(0)
    for dim in (1, 2, 3):
        alg = random_algebra(rng, 2, dim)
        assert alg is not None and validate_algebra(alg) == []


def test_fifty_instances_clean():
    rep = fuzz(2, 2, count=50, seed=11)
    assert rep.certified == 50 and rep.violations == []


def test_mutation_is_localized():
    rep = fuzz(2, 2, count=3, seed=11, gamma_fn=corrupted_gamma())
    assert len(rep.violations) == 3
    for v in rep.violations:
        assert parse_instance(v["instance"]).name == f"fuzz-11-{v['index']}"
        maps = {x["map"]: x for x in v["violations"] if "map" in x}
        assert "gamma" in maps
        # the corrupted image falls outside End, which the witness records per element
        assert None in maps["gamma"]["forward"]
        assert any(x.get("verdict") == "gamma-iso" for x in v["violations"])
