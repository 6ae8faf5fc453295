"""Instance files: TOML text describing algebras, an extension and an optional comatrix bimodule.

Schema::

    name = "split2"
    p = 2
    seed = 0

    [algebras.B]             # one table per algebra
    dim = 1
    unit = [1]
    struct_consts = [[[1]]]  # struct_consts[i][j] = coordinates of e_i e_j

    [extension]              # i: base -> top, columns are images of base basis vectors
    base = "B"
    top = "S"
    matrix = [[1], [1]]

    [comatrix]               # optional; replaces [extension], S = End_A(M)
    algebra = "A"
    base = "B"
    dim = 2
    left_action = [...]      # one dim x dim matrix per basis element of base
    right_action = [...]     # one dim x dim matrix per basis element of algebra

    [budgets]
    subspace = 1000000
    endo = 1048576
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np
import tomli

from .algebra import (AlgebraMorphism, FiniteAlgebra, diagonal_embedding, dual_numbers, ground,
                      matrix_algebra, polynomial_quotient, product_algebra, validate_algebra,
                      validate_morphism)
from .errors import InvalidInstance, NotInvertible
from .extension import Extension
from .linalg import PrimeField, identity, is_prime
from .modules import Bimodule, EndAlgebra, end_algebra, validate_bimodule

DEFAULT_SUBSPACE_BUDGET = 10 ** 6
DEFAULT_ENDO_BUDGET = 2 ** 20


@dataclass(frozen=True)
class Budgets:
    subspace: int = DEFAULT_SUBSPACE_BUDGET
    endo: int = DEFAULT_ENDO_BUDGET


@dataclass(frozen=True, eq=False)
class InstanceSpec:
    name: str
    p: int
    seed: int
    algebras: dict
    extension: Extension
    budgets: Budgets
    comatrix: Optional[Bimodule] = None
    end: Optional[EndAlgebra] = None
    text: str = ""

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.text.encode()).hexdigest()

    def with_budgets(self, subspace: Optional[int] = None, endo: Optional[int] = None) -> "InstanceSpec":
        b = Budgets(subspace if subspace is not None else self.budgets.subspace,
                    endo if endo is not None else self.budgets.endo)
        return InstanceSpec(self.name, self.p, self.seed, self.algebras, self.extension, b,
                            self.comatrix, self.end, self.text)


# --------------------------------------------------------------------------- parsing


def _int_array(value, shape: tuple, where: str, errors: list) -> Optional[np.ndarray]:
    try:
        arr = np.array(value, dtype=np.int64)
    except (ValueError, TypeError, OverflowError):
        errors.append(f"{where}: expected a nested list of integers")
        return None
    if arr.shape != shape:
        errors.append(f"{where}: expected shape {shape}, got {arr.shape}")
        return None
    return arr


def _get(table: dict, key: str, kind, where: str, errors: list, required: bool = True):
    if key not in table:
        if required:
            errors.append(f"{where}.{key}: missing")
        return None
    v = table[key]
    if kind is int and (not isinstance(v, int) or isinstance(v, bool)):
        errors.append(f"{where}.{key}: expected an integer")
        return None
    if kind is str and not isinstance(v, str):
        errors.append(f"{where}.{key}: expected a string")
        return None
    return v


def parse_instance(text: str) -> InstanceSpec:
    """Parse and fully validate instance text; raises InvalidInstance with located errors."""
    try:
        doc = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise InvalidInstance([f"syntax: {exc}"]) from None
    errors: list[str] = []
    name = _get(doc, "name", str, "<root>", errors, required=False) or "instance"
    p = _get(doc, "p", int, "<root>", errors)
    seed = _get(doc, "seed", int, "<root>", errors, required=False) or 0
    if p is not None and not is_prime(p):
        errors.append(f"p: modulus must be prime, got {p}")
    if errors:
        raise InvalidInstance(errors)
    field_ = PrimeField(p)

    algebras: dict[str, FiniteAlgebra] = {}
    for aname, block in (doc.get("algebras") or {}).items():
        where = f"algebras.{aname}"
        if not isinstance(block, dict):
            errors.append(f"{where}: expected a table")
            continue
        dim = _get(block, "dim", int, where, errors)
        if dim is None:
            continue
        if dim < 1:
            errors.append(f"{where}.dim: must be >= 1")
            continue
        unit = _int_array(block.get("unit"), (dim,), f"{where}.unit", errors)
        sc = _int_array(block.get("struct_consts"), (dim, dim, dim), f"{where}.struct_consts", errors)
        if unit is None or sc is None:
            continue
        alg = FiniteAlgebra(field_, sc, unit, name=aname)
        for d in validate_algebra(alg):
            errors.append(f"{where}: {d.kind} violated at basis {d.where}: {d.message}")
        algebras[aname] = alg
    if not algebras:
        errors.append("algebras: at least one algebra block is required")
    if errors:
        raise InvalidInstance(errors)

    def lookup(key: str, where: str) -> Optional[FiniteAlgebra]:
        if key not in algebras:
            errors.append(f"{where}: unknown algebra {key!r}")
            return None
        return algebras[key]

    ext = None
    comatrix = None
    end = None
    if "comatrix" in doc and "extension" in doc:
        errors.append("extension: give either [extension] or [comatrix], not both")
    elif "comatrix" in doc:
        block = doc["comatrix"]
        where = "comatrix"
        a_name = _get(block, "algebra", str, where, errors)
        b_name = _get(block, "base", str, where, errors)
        dim = _get(block, "dim", int, where, errors)
        A = lookup(a_name, f"{where}.algebra") if a_name else None
        B = lookup(b_name, f"{where}.base") if b_name else None
        if A is not None and B is not None and dim is not None:
            la = _int_array(block.get("left_action"), (B.dim, dim, dim), f"{where}.left_action", errors)
            ra = _int_array(block.get("right_action"), (A.dim, dim, dim), f"{where}.right_action", errors)
            if la is not None and ra is not None:
                comatrix = Bimodule(B, A, la, ra, name="M")
                diags = validate_bimodule(comatrix)
                for d in diags:
                    errors.append(f"{where}: {d.kind} violated at {d.where}: {d.message}")
                if not diags:
                    try:
                        end = end_algebra(comatrix)
                    except NotInvertible as exc:
                        errors.append(f"{where}: {exc}")
                    else:
                        ext = Extension(end.i, name=name)
    elif "extension" in doc:
        block = doc["extension"]
        where = "extension"
        b_name = _get(block, "base", str, where, errors)
        s_name = _get(block, "top", str, where, errors)
        B = lookup(b_name, f"{where}.base") if b_name else None
        S = lookup(s_name, f"{where}.top") if s_name else None
        if B is not None and S is not None:
            mat = _int_array(block.get("matrix"), (S.dim, B.dim), f"{where}.matrix", errors)
            if mat is not None:
                morph = AlgebraMorphism(B, S, mat)
                diags = validate_morphism(morph)
                for d in diags:
                    errors.append(f"{where}.matrix: {d.kind} violated at {d.where}: {d.message}")
                if not diags:
                    ext = Extension(morph, name=name)
    else:
        errors.append("extension: missing [extension] (or [comatrix]) table")

    budgets_block = doc.get("budgets") or {}
    sb = _get(budgets_block, "subspace", int, "budgets", errors, required=False)
    eb = _get(budgets_block, "endo", int, "budgets", errors, required=False)
    if errors:
        raise InvalidInstance(errors)
    budgets = Budgets(sb if sb is not None else DEFAULT_SUBSPACE_BUDGET,
                      eb if eb is not None else DEFAULT_ENDO_BUDGET)
    return InstanceSpec(name, p, seed, algebras, ext, budgets, comatrix, end, text)


# --------------------------------------------------------------------------- rendering


def _row(a) -> str:
    a = np.asarray(a)
    if a.ndim == 1:
        return "[" + ", ".join(str(int(x)) for x in a) + "]"
    return "[" + ", ".join(_row(x) for x in a) + "]"


def _block(a) -> str:
    """Outer list one entry per line, inner lists inline."""
    a = np.asarray(a)
    return "[\n" + "".join(f"  {_row(x)},\n" for x in a) + "]"


def render(name: str, p: int, algebras: dict, extension: Optional[tuple] = None,
           comatrix: Optional[dict] = None, seed: int = 0, budgets: Budgets = Budgets()) -> str:
    """Instance text.  ``extension`` is (base, top, matrix); ``comatrix`` holds the block fields."""
    out = [f'name = "{name}"', f"p = {p}", f"seed = {seed}", ""]
    for aname, alg in algebras.items():
        out += [f"[algebras.{aname}]", f"dim = {alg.dim}", f"unit = {_row(alg.unit)}",
                f"struct_consts = {_block(alg.struct_consts)}", ""]
    if extension is not None:
        base, top, mat = extension
        out += ["[extension]", f'base = "{base}"', f'top = "{top}"', f"matrix = {_block(mat)}", ""]
    if comatrix is not None:
        out += ["[comatrix]", f'algebra = "{comatrix["algebra"]}"', f'base = "{comatrix["base"]}"',
                f"dim = {comatrix['dim']}", f"left_action = {_block(comatrix['left_action'])}",
                f"right_action = {_block(comatrix['right_action'])}", ""]
    out += ["[budgets]", f"subspace = {budgets.subspace}", f"endo = {budgets.endo}", ""]
    return "\n".join(out)


# --------------------------------------------------------------------------- built-ins


def _scalar_ext(name: str, top: FiniteAlgebra) -> str:
    p = top.p
    return render(name, p, {"B": ground(p), "S": top}, ("B", "S", top.unit.reshape(-1, 1)))


def _diag_action(p: int, n: int) -> np.ndarray:
    """F_p^n acting on F_p^n by coordinatewise scaling."""
    out = np.zeros((n, n, n), dtype=np.int64)
    for k in range(n):
        out[k, k, k] = 1
    return out


def builtin_text(name: str, p: int = 2) -> str:
    if name == "id-ext":
        return render(f"id-ext({p})", p, {"B": ground(p)}, ("B", "B", identity(1)))
    if name == "split2":
        return _scalar_ext(f"split2({p})", product_algebra(p, 2))
    if name == "dual-numbers":
        return _scalar_ext(f"dual-numbers({p})", dual_numbers(p))
    if name == "field4":
        if p != 2:
            raise ValueError("field4 is defined over F_2")
        return _scalar_ext("field4", polynomial_quotient(2, [1, 1], name="F4"))
    if name == "mat2":
        return _scalar_ext(f"mat2({p})", matrix_algebra(p, 2))
    if name == "diag-mat2":
        f = diagonal_embedding(p, 2)
        return render(f"diag-mat2({p})", p, {"B": f.source, "S": f.target}, ("B", "S", f.matrix))
    if name == "comatrix-mat2":
        return render(f"comatrix-mat2({p})", p, {"A": ground(p), "B": ground(p)},
                      comatrix={"algebra": "A", "base": "B", "dim": 2,
                                "left_action": identity(2)[None], "right_action": identity(2)[None]})
    if name == "comatrix-diag-mat2":
        return render(f"comatrix-diag-mat2({p})", p, {"A": ground(p), "B": product_algebra(p, 2)},
                      comatrix={"algebra": "A", "base": "B", "dim": 2,
                                "left_action": _diag_action(p, 2), "right_action": identity(2)[None]})
    raise KeyError(f"unknown built-in instance {name!r}")


BUILTIN_FAMILIES = ("id-ext", "split2", "dual-numbers", "field4", "mat2", "diag-mat2",
                    "comatrix-mat2", "comatrix-diag-mat2")

# (family, p) pairs shipped as data files
SHIPPED = (("id-ext", 2), ("split2", 2), ("split2", 3), ("dual-numbers", 2), ("field4", 2),
           ("mat2", 2), ("diag-mat2", 2), ("comatrix-mat2", 2), ("comatrix-diag-mat2", 2))

_NAME = re.compile(r"^([a-z0-9-]+?)(?:\((\d+)\))?$")


def data_filename(family: str, p: int) -> str:
    return f"{family}_p{p}.toml" if family != "field4" else "field4.toml"


def split_builtin_name(name: str) -> tuple[str, int]:
    m = _NAME.match(name.strip())
    if not m or m.group(1) not in BUILTIN_FAMILIES:
        raise KeyError(f"unknown built-in instance {name!r}")
    return m.group(1), int(m.group(2)) if m.group(2) else 2


def builtin_names() -> list[str]:
    return [f"{fam}({p})" if fam != "field4" else "field4" for fam, p in SHIPPED]


def load_builtin(name: str) -> InstanceSpec:
    """A built-in by name, e.g. ``split2(3)``; shipped data file when present."""
    family, p = split_builtin_name(name)
    fname = data_filename(family, p)
    res = resources.files("descent_forge").joinpath("data", fname)
    if res.is_file():
        return parse_instance(res.read_text())
    if not is_prime(p):
        raise InvalidInstance([f"p: modulus must be prime, got {p}"])
    return parse_instance(builtin_text(family, p))


def load_instance(ref: str) -> InstanceSpec:
    """A path to an instance file, or a built-in name."""
    path = Path(ref)
    if path.is_file():
        return parse_instance(path.read_text())
    try:
        return load_builtin(ref)
    except KeyError:
        raise InvalidInstance([f"{ref}: no such file or built-in instance"]) from None


def write_data_files(directory: Path) -> list[Path]:
    """Regenerate the shipped built-in files."""
    out = []
    for fam, p in SHIPPED:
        path = Path(directory) / data_filename(fam, p)
        path.write_text(builtin_text(fam, p))
        out.append(path)
    return out
