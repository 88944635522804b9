"""Canonical text format for structures: parsing, validation, serialization.

A document is a single JSON object with sorted keys and decimal-string
coefficients. Algebras come either as a DGA (product + differential tables;
the A-infinity structure is derived) or as explicit operations per arity.
Bimodules, morphisms and diagonal cochains are optional sections. Parsing is
strict: unknown names, non-prime moduli and degree-violating table entries
are rejected with the offending location in the message.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .algebra import AInfinityAlgebra, from_dga
from .bimodules import AInfinityBimodule, BimoduleMorphism, bimodule_op
from .cochains import Cochain
from .errors import DocumentError, UnknownName
from .graded import GradedModule, MultilinearOp
from .rings import CoefficientRing, Z, Zp


@dataclass
class Options:
    length: int = 4
    max_r: int = 6
    max_rs: int = 4


@dataclass
class StructureDocument:
    ring: CoefficientRing
    algebra: AInfinityAlgebra
    bimodules: dict[str, AInfinityBimodule]
    morphisms: dict[str, BimoduleMorphism]
    cochain_specs: dict[str, dict]
    options: Options
    raw: dict = field(repr=False, default_factory=dict)

    def cochains(self, diagonal: AInfinityBimodule) -> dict[str, Cochain]:
        out = {}
        for name in sorted(self.cochain_specs):
            spec = self.cochain_specs[name]
            comps = {}
            where = f"cochains.{name}"
            for arity, entries in spec["components"].items():
                try:
                    table = comps.setdefault(int(arity), {})
                except ValueError:
                    raise DocumentError(f"{where}: bad arity key {arity!r}") from None
                for entry in entries:
                    table[tuple(entry["inputs"])] = {
                        k: _coeff(v, f"{where}.output.{k}")
                        for k, v in entry["output"].items()
                    }
            # documents carry the CH^*(A) degree; internally the generic one
            out[name] = Cochain(
                diagonal,
                _int_field(spec, "degree", None, where) - 1,
                comps,
                cutoff=self.options.length + 1,
            )
        return out


def _coeff(value, where: str) -> int:
    if isinstance(value, bool):
        raise DocumentError(f"{where}: coefficient must be an integer string")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise DocumentError(f"{where}: bad coefficient {value!r}") from None
    raise DocumentError(f"{where}: bad coefficient {value!r}")


def _entries_to_table(entries, where: str) -> dict:
    table = {}
    for k, entry in enumerate(entries):
        loc = f"{where}[{k}]"
        if not isinstance(entry, dict) or "inputs" not in entry or "output" not in entry:
            raise DocumentError(f"{loc}: entry needs 'inputs' and 'output'")
        key = tuple(str(n) for n in entry["inputs"])
        if key in table:
            raise DocumentError(f"{loc}: duplicate entry for {key}")
        table[key] = {
            str(n): _coeff(c, f"{loc}.output.{n}") for n, c in entry["output"].items()
        }
    return table


def _parse_ring(doc: dict) -> CoefficientRing:
    spec = doc.get("ring", {"kind": "Z"})
    kind = spec.get("kind")
    if kind == "Z":
        return Z
    if kind == "Zp":
        if "p" not in spec:
            raise DocumentError("ring: Zp needs a modulus p")
        return Zp(_int_field(spec, "p", None, "ring"))
    raise DocumentError(f"ring: unknown kind {kind!r}")


def _parse_basis(spec, ring, where: str) -> GradedModule:
    try:
        basis = tuple((str(n), int(d)) for n, d in spec)
    except (TypeError, ValueError):
        raise DocumentError(f"{where}: basis must be a list of [name, degree]") from None
    try:
        return GradedModule(basis, ring)
    except UnknownName as exc:
        raise DocumentError(f"{where}: {exc}") from None


def _parse_algebra(doc: dict, ring: CoefficientRing) -> AInfinityAlgebra:
    spec = doc.get("algebra")
    if not isinstance(spec, dict):
        raise DocumentError("document needs an 'algebra' section")
    module = _parse_basis(spec.get("basis", []), ring, "algebra.basis")
    kind = spec.get("kind", "ainfty")
    if kind == "dga":
        product = MultilinearOp(
            (module, module),
            module,
            0,
            _entries_to_table(spec.get("product", []), "algebra.product"),
            label="algebra.product",
        )
        diff_entries = _entries_to_table(
            spec.get("differential", []), "algebra.differential"
        )
        differential = (
            MultilinearOp((module,), module, 1, diff_entries, label="algebra.differential")
            if diff_entries
            else None
        )
        return from_dga(module, product, differential)
    if kind == "ainfty":
        ops = {}
        for key, entries in spec.get("operations", {}).items():
            try:
                n = int(key)
            except ValueError:
                raise DocumentError(f"algebra.operations: bad arity key {key!r}") from None
            table = _entries_to_table(entries, f"algebra.operations.{key}")
            ops[n] = MultilinearOp(
                (module,) * n, module, 2 - n, table, label=f"algebra.operations.{key}"
            )
        default_arity = max((int(k) for k in spec.get("operations", {})), default=1)
        max_arity = _int_field(spec, "max_arity", default_arity, "algebra")
        return AInfinityAlgebra(module, ops, max_arity=max_arity)
    raise DocumentError(f"algebra.kind: unknown kind {kind!r}")


def _parse_rs_key(key: str, where: str) -> tuple[int, int]:
    try:
        r, s = key.split(",")
        return int(r), int(s)
    except ValueError:
        raise DocumentError(f"{where}: bad (r,s) key {key!r}") from None


def _parse_bimodule(
    name: str, spec: dict, algebra: AInfinityAlgebra, max_rs: int
) -> AInfinityBimodule:
    where = f"bimodules.{name}"
    module = _parse_basis(spec.get("basis", []), algebra.ring, f"{where}.basis")
    ops = {}
    for key, entries in spec.get("operations", {}).items():
        r, s = _parse_rs_key(key, f"{where}.operations")
        table = _entries_to_table(entries, f"{where}.operations.{key}")
        ops[(r, s)] = bimodule_op(
            algebra, module, r, s, table, label=f"{where}.operations.{key}"
        )
    return AInfinityBimodule(algebra, module, ops, max_rs=max_rs, name=name)


def _parse_morphism(
    name: str, spec: dict, bimodules: dict[str, AInfinityBimodule], max_rs: int
) -> BimoduleMorphism:
    where = f"morphisms.{name}"
    for kind in ("source", "target"):
        if spec.get(kind) not in bimodules:
            raise DocumentError(f"{where}.{kind}: unknown bimodule {spec.get(kind)!r}")
    source = bimodules[spec["source"]]
    target = bimodules[spec["target"]]
    d = _int_field(spec, "degree", 0, where)
    amod = source.algebra.module
    maps = {}
    for key, entries in spec.get("components", {}).items():
        r, s = _parse_rs_key(key, f"{where}.components")
        table = _entries_to_table(entries, f"{where}.components.{key}")
        signature = (amod,) * r + (source.module,) + (amod,) * s
        maps[(r, s)] = MultilinearOp(
            signature, target.module, d - r - s, table, label=f"{where}.components.{key}"
        )
    return BimoduleMorphism(source, target, d, maps, max_rs=max_rs, name=name)


def _int_field(container, key, default, where):
    try:
        return int(container.get(key, default))
    except (TypeError, ValueError):
        raise DocumentError(f"{where}.{key}: expected an integer") from None


def parse(text: str) -> StructureDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    ring = _parse_ring(doc)
    algebra = _parse_algebra(doc, ring)
    opts = doc.get("options", {})
    options = Options(
        length=_int_field(opts, "length", 4, "options"),
        max_r=_int_field(opts, "max_r", 6, "options"),
        max_rs=_int_field(opts, "max_rs", 4, "options"),
    )
    bimodules = {}
    for name in sorted(doc.get("bimodules", {})):
        bimodules[name] = _parse_bimodule(
            name, doc["bimodules"][name], algebra, options.max_rs
        )
    morphisms = {}
    for name in sorted(doc.get("morphisms", {})):
        morphisms[name] = _parse_morphism(
            name, doc["morphisms"][name], bimodules, options.max_rs
        )
    cochain_specs = {}
    for name in sorted(doc.get("cochains", {})):
        spec = doc["cochains"][name]
        if "degree" not in spec or "components" not in spec:
            raise DocumentError(f"cochains.{name}: needs 'degree' and 'components'")
        cochain_specs[name] = spec
    return StructureDocument(
        ring, algebra, bimodules, morphisms, cochain_specs, options, raw=doc
    )


def _canonical_entries(entries):
    out = []
    for entry in entries:
        out.append(
            {
                "inputs": [str(n) for n in entry["inputs"]],
                "output": {
                    str(n): str(_coeff(c, "output"))
                    for n, c in sorted(entry["output"].items())
                },
            }
        )
    out.sort(key=lambda e: tuple(e["inputs"]))
    return out


def canonicalize(doc: dict) -> dict:
    """Normalize a raw document: sorted tables, string coefficients."""
    doc = json.loads(json.dumps(doc))
    algebra = doc.get("algebra", {})
    for key in ("product", "differential"):
        if key in algebra:
            algebra[key] = _canonical_entries(algebra[key])
    if "operations" in algebra:
        algebra["operations"] = {
            k: _canonical_entries(v) for k, v in sorted(algebra["operations"].items())
        }
    for section in ("bimodules",):
        for spec in doc.get(section, {}).values():
            if "operations" in spec:
                spec["operations"] = {
                    k: _canonical_entries(v)
                    for k, v in sorted(spec["operations"].items())
                }
    for spec in doc.get("morphisms", {}).values():
        if "components" in spec:
            spec["components"] = {
                k: _canonical_entries(v) for k, v in sorted(spec["components"].items())
            }
    for spec in doc.get("cochains", {}).values():
        if "components" in spec:
            spec["components"] = {
                k: _canonical_entries(v) for k, v in sorted(spec["components"].items())
            }
    return doc


def serialize(doc: dict) -> str:
    return json.dumps(canonicalize(doc), sort_keys=True, indent=2) + "\n"
