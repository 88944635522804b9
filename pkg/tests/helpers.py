"""Shared fixture loaders and independent oracles for the test batteries.

The oracles here are deliberately written from scratch (dense row reduction,
cofactor determinants, determinantal divisors, the classical Hochschild
boundary and cochain differential for degree-zero algebras) so that they
share no code path with the library routines they check.
"""

import itertools
from fractions import Fraction

from ainfty.documents import parse, serialize
from ainfty.fixtures import FIXTURE_NAMES, fixture_document


def load(name, p=None):
    """Parse a built-in fixture document, optionally switching the ring to Z/p."""
    doc = fixture_document(name)
    if p is not None:
        doc["ring"] = {"kind": "Zp", "p": p}
    return parse(serialize(doc))


ALGEBRA_FIXTURES = list(FIXTURE_NAMES)


def dense_rank_modp(rows, p):
    """Row-reduction rank over GF(p); oracle, independent of ainfty.homology."""
    mat = [[v % p for v in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        sel = None
        for i in range(rank, len(mat)):
            if mat[i][col] % p:
                sel = i
                break
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        mat[rank] = [(v * inv) % p for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def dense_rank_q(rows):
    """Rank over the rationals by fraction-free-ish Gaussian elimination."""
    mat = [[Fraction(v) for v in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        sel = None
        for i in range(rank, len(mat)):
            if mat[i][col]:
                sel = i
                break
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def det_int(rows):
    """Cofactor-expansion determinant; fine for the small oracle matrices."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * det_int(minor)
    return total


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def minor_gcd_invariants(rows):
    """Invariant factors via determinantal divisors (gcds of k x k minors)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rsel in itertools.combinations(range(m), k):
            for csel in itertools.combinations(range(n), k):
                minor = [[rows[i][j] for j in csel] for i in rsel]
                g = _gcd(g, det_int(minor))
        divisors.append(g)
        if g == 0:
            break
    out = []
    for k in range(1, len(divisors)):
        if divisors[k] == 0:
            break
        out.append(divisors[k] // divisors[k - 1])
    return out


def product_lookup(doc):
    """Raw product table of a DGA fixture document (pre-twist), as a dict."""
    table = {}
    for entry in doc.raw["algebra"]["product"]:
        table[tuple(entry["inputs"])] = {
            k: int(v) for k, v in entry["output"].items()
        }
    return table


def classical_hochschild_boundary(product, word):
    """Classical cyclic Hochschild boundary for a degree-zero algebra.

    word = (a_0, ..., a_n); returns a dict mapping output words to integers.
    b(a_0 x ... x a_n) = sum_i (-1)^i (... a_i a_{i+1} ...)
                        + (-1)^n (a_n a_0) x a_1 x ... x a_{n-1}.
    """
    n = len(word) - 1
    acc = {}

    def mul(a, b):
        return product.get((a, b), {})

    for i in range(n):
        s = (-1) ** i
        for name, c in mul(word[i], word[i + 1]).items():
            out = word[:i] + (name,) + word[i + 2 :]
            acc[out] = acc.get(out, 0) + s * c
    if n >= 1:
        s = (-1) ** n
        for name, c in mul(word[n], word[0]).items():
            out = (name,) + word[1:n]
            acc[out] = acc.get(out, 0) + s * c
    return {w: c for w, c in acc.items() if c}


def classical_cochain_delta(product, component, arity, names):
    """Classical Hochschild cochain differential for a degree-zero algebra.

    component maps arity-length words to dicts; returns the arity+1 table of
    (delta f)(a_1..a_{n+1}) = a_1 f(a_2..) + sum (-1)^i f(.. a_i a_{i+1} ..)
                             + (-1)^{n+1} f(a_1..a_n) a_{n+1}.
    """
    n = arity
    out = {}

    def mul(a, b):
        return product.get((a, b), {})

    def f(word):
        return component.get(word, {})

    def bump(word, name, c):
        if not c:
            return
        slot = out.setdefault(word, {})
        slot[name] = slot.get(name, 0) + c

    for word in itertools.product(names, repeat=n + 1):
        for t, ct in f(word[1:]).items():
            for name, c in mul(word[0], t).items():
                bump(word, name, ct * c)
        for i in range(1, n + 1):
            s = (-1) ** i
            for t, ct in mul(word[i - 1], word[i]).items():
                inner = word[: i - 1] + (t,) + word[i + 1 :]
                for name, c in f(inner).items():
                    bump(word, name, s * ct * c)
        s = (-1) ** (n + 1)
        for t, ct in f(word[:n]).items():
            for name, c in mul(t, word[n]).items():
                bump(word, name, s * ct * c)
    return {
        w: {k: v for k, v in slot.items() if v}
        for w, slot in out.items()
        if any(slot.values())
    }
