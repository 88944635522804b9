"""Built-in fixtures: small exact algebras used across the test batteries.

Each fixture is produced as a canonical structure document (see documents.py)
so that emission, parsing and validation all exercise the same path. The
graded ones come from exterior algebras; mu3_square_zero carries a genuine
arity-3 operation; quasi_iso_pair bundles two bimodules and a morphism whose
(0,0) piece is a quasi-isomorphism.
"""

from __future__ import annotations

from .errors import UnknownFixture

FIXTURE_NAMES = (
    "exterior1",
    "exterior2",
    "dual_numbers",
    "truncated_poly3",
    "mu3_square_zero",
    "quasi_iso_pair",
)


def _entry(inputs, output):
    return {"inputs": list(inputs), "output": {k: str(v) for k, v in output.items()}}


def _dga_doc(basis, product_entries, name):
    return {
        "name": name,
        "ring": {"kind": "Z"},
        "algebra": {
            "basis": [[n, d] for n, d in basis],
            "kind": "dga",
            "product": [_entry(i, o) for i, o in product_entries],
            "differential": [],
        },
        "options": {"length": 4, "max_r": 6, "max_rs": 4},
    }


def _exterior1_doc():
    basis = [("1", 0), ("x", 1)]
    prod = [
        (("1", "1"), {"1": 1}),
        (("1", "x"), {"x": 1}),
        (("x", "1"), {"x": 1}),
    ]
    return _dga_doc(basis, prod, "exterior1")


def _exterior2_doc():
    basis = [("1", 0), ("x", 1), ("y", 1), ("xy", 2)]
    prod = [
        (("1", "1"), {"1": 1}),
        (("1", "x"), {"x": 1}),
        (("1", "y"), {"y": 1}),
        (("1", "xy"), {"xy": 1}),
        (("x", "1"), {"x": 1}),
        (("y", "1"), {"y": 1}),
        (("xy", "1"), {"xy": 1}),
        (("x", "y"), {"xy": 1}),
        (("y", "x"), {"xy": -1}),
    ]
    return _dga_doc(basis, prod, "exterior2")


def _dual_numbers_doc():
    basis = [("1", 0), ("e", 0)]
    prod = [
        (("1", "1"), {"1": 1}),
        (("1", "e"), {"e": 1}),
        (("e", "1"), {"e": 1}),
    ]
    doc = _dga_doc(basis, prod, "dual_numbers")
    doc["cochains"] = {
        "dual_e": {"degree": 1, "components": {"1": [_entry(("e",), {"e": 1})]}},
        "unit_to_e": {"degree": 1, "components": {"1": [_entry(("1",), {"e": 1})]}},
    }
    return doc


def _truncated_poly3_doc():
    basis = [("1", 0), ("x", 0), ("x2", 0)]
    prod = [
        (("1", "1"), {"1": 1}),
        (("1", "x"), {"x": 1}),
        (("1", "x2"), {"x2": 1}),
        (("x", "1"), {"x": 1}),
        (("x2", "1"), {"x2": 1}),
        (("x", "x"), {"x2": 1}),
    ]
    return _dga_doc(basis, prod, "truncated_poly3")


def _mu3_doc():
    # c sits in degree -1 so that the arity-3 table respects deg mu_3 = -1;
    # every nested composite then vanishes on degree grounds.
    return {
        "name": "mu3_square_zero",
        "ring": {"kind": "Z"},
        "algebra": {
            "basis": [["a", 0], ["b", 0], ["c", -1]],
            "kind": "ainfty",
            "max_arity": 3,
            "operations": {"3": [_entry(("a", "a", "a"), {"c": 1})]},
        },
        "options": {"length": 4, "max_r": 6, "max_rs": 4},
    }


def _quasi_iso_doc():
    return {
        "name": "quasi_iso_pair",
        "ring": {"kind": "Z"},
        "algebra": {
            "basis": [["e", 0]],
            "kind": "dga",
            "product": [_entry(("e", "e"), {"e": 1})],
            "differential": [],
        },
        "bimodules": {
            "M": {
                "basis": [["m", 0]],
                "operations": {"1,0": [_entry(("e", "m"), {"m": 1})]},
            },
            "N": {
                "basis": [["u", 0], ["v", 0], ["w", 1]],
                "operations": {
                    "0,0": [_entry(("v",), {"w": 1})],
                    "1,0": [
                        _entry(("e", "u"), {"u": 1}),
                        _entry(("e", "v"), {"v": 1}),
                        _entry(("e", "w"), {"w": 1}),
                    ],
                },
            },
        },
        "morphisms": {
            "include": {
                "source": "M",
                "target": "N",
                "degree": 0,
                "components": {"0,0": [_entry(("m",), {"u": 1})]},
            }
        },
        "options": {"length": 4, "max_r": 6, "max_rs": 4},
    }


_BUILDERS = {
    "exterior1": _exterior1_doc,
    "exterior2": _exterior2_doc,
    "dual_numbers": _dual_numbers_doc,
    "truncated_poly3": _truncated_poly3_doc,
    "mu3_square_zero": _mu3_doc,
    "quasi_iso_pair": _quasi_iso_doc,
}


def fixture_document(name: str) -> dict:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownFixture(
            f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}"
        ) from None
    return builder()
