"""The truncated Hochschild cochain complex, its codifferential and duality.

A cochain of total degree j with coefficients in a bimodule M stores one
sparse table per arity n (components beyond the arity cutoff are dropped and
flagged). The codifferential raises the total degree by one and never lowers
arity, so every retained component is computed exactly.

Duality: phi turns a functional on the chain complex into a cochain with
coefficients in the dual bimodule, with the sign (-1)^{deg(m) * maltese_1^n}.
"""

from __future__ import annotations

import itertools
from typing import Mapping

from .algebra import AInfinityAlgebra
from .bimodules import (
    AInfinityBimodule,
    BimoduleMorphism,
    diagonal_bimodule,
    dual_bimodule,
    dual_name,
)
from .chains import Chain, HochschildComplex, InducedChainMap
from .errors import DegreeMismatch, ModuleMismatch, NotACocycle
from .graded import Word
from .signs import maltese, sign

# arity -> input word -> {output basis name: coefficient}
Components = dict[int, dict[Word, dict[str, int]]]


class Cochain:
    """Element of the arity-truncated complex CH^*(A;M) of one total degree."""

    def __init__(
        self,
        bimodule: AInfinityBimodule,
        degree: int,
        components: Mapping[int, Mapping[Word, Mapping[str, int]]],
        cutoff: int = 4,
        truncated: bool = False,
    ):
        self.M = bimodule
        self.A = bimodule.algebra
        self.degree = degree
        self.cutoff = cutoff
        self.truncated = truncated
        ring = bimodule.ring
        amod = self.A.module
        mmod = bimodule.module
        clean: Components = {}
        for n, table in components.items():
            if n > cutoff:
                raise DegreeMismatch(f"component arity {n} exceeds the cutoff {cutoff}")
            good: dict[Word, dict[str, int]] = {}
            for word, value in table.items():
                word = tuple(word)
                in_deg = sum(amod.degree_of(a) for a in word)
                out: dict[str, int] = {}
                for name, c in value.items():
                    c = ring.normalize(c)
                    if not c:
                        continue
                    if mmod.degree_of(name) != in_deg + degree - n:
                        raise DegreeMismatch(
                            f"cochain entry {word} -> {name} breaks the degree rule"
                        )
                    out[name] = c
                if out:
                    good[word] = out
            if good:
                clean[n] = good
        self.components = clean

    def is_zero(self) -> bool:
        return not self.components

    def component(self, n: int) -> dict[Word, dict[str, int]]:
        return self.components.get(n, {})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain)
            and self.M.module == other.M.module
            and self.components == other.components
        )

    def add(self, other: "Cochain") -> "Cochain":
        if self.M.module != other.M.module:
            raise ModuleMismatch("cochains over different coefficient modules")
        if not self.is_zero() and not other.is_zero() and self.degree != other.degree:
            raise DegreeMismatch("cochains of different total degree")
        acc: Components = {}
        for src in (self.components, other.components):
            for n, table in src.items():
                tgt = acc.setdefault(n, {})
                for w, val in table.items():
                    slot = tgt.setdefault(w, {})
                    for name, c in val.items():
                        slot[name] = slot.get(name, 0) + c
        deg = other.degree if self.is_zero() else self.degree
        return Cochain(
            self.M, deg, acc, self.cutoff, self.truncated or other.truncated
        )

    def scale(self, c: int) -> "Cochain":
        acc = {
            n: {w: {name: c * v for name, v in val.items()} for w, val in table.items()}
            for n, table in self.components.items()
        }
        return Cochain(self.M, self.degree, acc, self.cutoff, self.truncated)


def elementary_cochain(
    M: AInfinityBimodule, word: Word, out_name: str, cutoff: int = 4, coeff: int = 1
) -> Cochain:
    """The dual-basis cochain sending one input word to one basis element."""
    amod = M.algebra.module
    n = len(word)
    degree = M.module.degree_of(out_name) - sum(amod.degree_of(a) for a in word) + n
    return Cochain(M, degree, {n: {tuple(word): {out_name: coeff}}}, cutoff)


def codifferential(f: Cochain) -> Cochain:
    """beta(f): degree + 1, assembled sparsely from f's table entries.

    The first family precomposes f with an inserted algebra operation (walking
    preimages of each table key), the second wraps a bimodule operation around
    the value. Components that would exceed the arity cutoff are dropped and
    reported via the truncated flag.
    """
    A, M = f.A, f.M
    amod = A.module
    ring = M.ring
    acc: Components = {}
    truncated = f.truncated

    def bump(n: int, word: Word, name: str, c: int):
        slot = acc.setdefault(n, {}).setdefault(word, {})
        slot[name] = slot.get(name, 0) + c

    for n, table in f.components.items():
        for mu_arity, op in A.ops.items():
            l = mu_arity - 1
            if n == 0:
                continue
            if n + l > f.cutoff:
                if table:
                    truncated = True
                continue
            preimages: dict[str, list[tuple[Word, int]]] = {}
            for key, value in op.entries():
                for name, c in value.terms.items():
                    preimages.setdefault(name, []).append((key, c))
            for word, value in table.items():
                for i in range(1, n + 1):
                    for pre, pc in preimages.get(word[i - 1], ()):
                        target = word[: i - 1] + pre + word[i:]
                        s_exp = maltese(
                            [amod.degree_of(a) for a in target], 1, i - 1
                        )
                        sv = sign(s_exp) * pc
                        for name, c in value.items():
                            bump(n + l, target, name, sv * c)
        for (r, s), op in M.ops.items():
            l = r + s
            if n + l > f.cutoff:
                if table:
                    truncated = True
                continue
            for word, value in f.components[n].items():
                for prefix in itertools.product(amod.names, repeat=r):
                    for suffix in itertools.product(amod.names, repeat=s):
                        target = prefix + word + suffix
                        degs = [amod.degree_of(a) for a in target]
                        s_exp = f.degree * (maltese(degs, 1, r) + 1) + 1
                        sv = sign(s_exp)
                        for name, c in value.items():
                            out = op.on_word(prefix + (name,) + suffix)
                            for out_name, v in out.terms.items():
                                bump(n + l, target, out_name, sv * c * v)

    # drop ring-zero coefficients before validation
    cleaned: Components = {}
    for n, table in acc.items():
        good = {}
        for w, val in table.items():
            slot = {name: ring.normalize(c) for name, c in val.items()}
            slot = {name: c for name, c in slot.items() if c}
            if slot:
                good[w] = slot
        if good:
            cleaned[n] = good
    return Cochain(f.M, f.degree + 1, cleaned, f.cutoff, truncated)


class DualChainElement:
    """Functional on the truncated chain complex, spanned by word duals."""

    def __init__(self, complex_: HochschildComplex, terms: Mapping[Word, int]):
        self.complex = complex_
        ring = complex_.ring
        self.terms = {
            tuple(w): ring.normalize(c)
            for w, c in terms.items()
            if ring.normalize(c)
        }

    def evaluate(self, x: Chain) -> int:
        return self.complex.ring.normalize(
            sum(c * self.terms.get(w, 0) for w, c in x.items())
        )

    def degree(self) -> int | None:
        degs = {self.complex.degree(w) for w in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def __eq__(self, other):
        return isinstance(other, DualChainElement) and self.terms == other.terms


def b_star(psi: DualChainElement) -> DualChainElement:
    """Pull back a functional along the Hochschild differential."""
    cx = psi.complex
    acc: dict[Word, int] = {}
    for w in cx.all_words():
        v = psi.evaluate(cx.differential_word(w))
        if v:
            acc[w] = v
    return DualChainElement(cx, acc)


def duality_iso(
    psi: DualChainElement, dual: AInfinityBimodule | None = None, cutoff: int | None = None
) -> Cochain:
    """phi: functionals on CH_*(A;M) -> CH^*(A;M^{-*}), degree zero."""
    cx = psi.complex
    dual = dual if dual is not None else dual_bimodule(cx.M)
    cutoff = cx.L if cutoff is None else cutoff
    amod = cx.A.module
    comps: Components = {}
    for (m, *letters), c in psi.terms.items():
        word = tuple(letters)
        n = len(word)
        degs = [amod.degree_of(a) for a in word]
        s_exp = cx.M.module.degree_of(m) * maltese(degs, 1, n)
        slot = comps.setdefault(n, {}).setdefault(word, {})
        name = dual_name(m)
        slot[name] = slot.get(name, 0) + sign(s_exp) * c
    deg = psi.degree()
    if deg is None:
        deg = 0
    return Cochain(dual, deg, comps, cutoff)


def duality_iso_inverse(
    g: Cochain, complex_: HochschildComplex
) -> DualChainElement:
    """Inverse of phi on each finite block (the sign is its own inverse)."""
    amod = complex_.A.module
    acc: dict[Word, int] = {}
    for n, table in g.components.items():
        for word, value in table.items():
            degs = [amod.degree_of(a) for a in word]
            mal = maltese(degs, 1, n)
            for name, c in value.items():
                if not name.endswith("^"):
                    raise ModuleMismatch("cochain coefficients are not dual-basis names")
                m = name[:-1]
                s_exp = complex_.M.module.degree_of(m) * mal
                w = (m,) + word
                acc[w] = acc.get(w, 0) + sign(s_exp) * c
    return DualChainElement(complex_, acc)


def pullback(
    f: BimoduleMorphism,
    g: Cochain,
    length_cutoff: int = 4,
    duals: tuple[AInfinityBimodule, AInfinityBimodule] | None = None,
) -> Cochain:
    """f^* = phi_M . (f_*)^* . phi_N^{-1} on cochains over the dual of the target."""
    source_cx = HochschildComplex(f.source, length_cutoff)
    target_cx = HochschildComplex(f.target, length_cutoff)
    dual_M = duals[0] if duals else dual_bimodule(f.source)
    psi_N = duality_iso_inverse(g, target_cx)
    fstar = InducedChainMap(f, length_cutoff)
    acc: dict[Word, int] = {}
    for w in source_cx.all_words():
        v = psi_N.evaluate(fstar.on_word(w))
        if v:
            acc[w] = v
    psi_M = DualChainElement(source_cx, acc)
    out = duality_iso(psi_M, dual=dual_M, cutoff=g.cutoff)
    if out.is_zero():
        return Cochain(dual_M, g.degree + f.degree, {}, g.cutoff)
    return out


def cocycle_to_morphism(
    f: Cochain, max_rs: int = 4, diagonal: AInfinityBimodule | None = None
) -> BimoduleMorphism:
    """Reindex a beta-cocycle as a bimodule morphism A[1] -> M of the same degree.

    f_{r,s}(a_1..a_r, a_0, a_{r+1}..a_{r+s}) := f_{r+s+1}(same word); the
    arity-0 component has no morphism counterpart and must vanish.
    """
    if not codifferential(f).is_zero():
        raise NotACocycle("cochain is not closed under the codifferential")
    if f.component(0):
        raise NotACocycle("arity-0 component has no morphism counterpart")
    A = f.A
    source = diagonal if diagonal is not None else diagonal_bimodule(A, max_rs)
    maps = {}
    for n, table in f.components.items():
        for r in range(0, n):
            s = n - 1 - r
            if r + s > max_rs:
                continue
            op_table = {word: dict(value) for word, value in table.items()}
            maps[(r, s)] = bimodule_op_for_morphism(
                A, source, f.M, r, s, f.degree, op_table
            )
    target = f.M
    return BimoduleMorphism(source, target, f.degree, maps, max_rs=max_rs, name="cocycle")


def bimodule_op_for_morphism(A, source, target, r, s, d, table):
    from .graded import MultilinearOp

    amod = A.module
    signature = (amod,) * r + (source.module,) + (amod,) * s
    return MultilinearOp(signature, target.module, d - r - s, table, label=f"f_({r},{s})")


def regraded_chain_degree(A: AInfinityAlgebra, word: Word) -> int:
    """Degree in CH_*(A): n minus the sum of the unshifted degrees."""
    return len(word) - 1 - sum(A.module.degree_of(a) for a in word)


class RegradedComplexes:
    """CH_*(A) and CH^*(A): diagonal coefficients with shifted degree labels.

    The underlying data is the diagonal Hochschild complex; only the degree
    bookkeeping moves (chains sit one below the generic degree, cochains one
    above). chain_differential evaluates the specialized diagonal formula and
    codifferential the regraded explicit one; both agree with the generic
    operators term by term.
    """

    def __init__(self, algebra: AInfinityAlgebra, length_cutoff: int = 4):
        self.algebra = algebra
        self.diagonal = diagonal_bimodule(algebra)
        self.complex = HochschildComplex(self.diagonal, length_cutoff)

    def chain_degree(self, word: Word) -> int:
        return regraded_chain_degree(self.algebra, word)

    def chain_differential(self, word: Word) -> Chain:
        from .chains import diagonal_b_word

        return diagonal_b_word(self.algebra, word)

    def cochain_degree(self, f: Cochain) -> int:
        return f.degree + 1

    def codifferential(self, f: Cochain) -> Cochain:
        return regraded_codifferential(f)


def regrade_diagonal(A: AInfinityAlgebra, length_cutoff: int = 4) -> RegradedComplexes:
    return RegradedComplexes(A, length_cutoff)


def cochain_basis(
    M: AInfinityBimodule, cutoff: int
) -> dict[int, list[tuple[int, Word, str]]]:
    """Elementary cochains (arity, word, output) bucketed by total degree."""
    amod = M.algebra.module
    out: dict[int, list[tuple[int, Word, str]]] = {}
    for n in range(cutoff + 1):
        for word in itertools.product(amod.names, repeat=n):
            in_deg = sum(amod.degree_of(a) for a in word)
            for name, m_deg in M.module.basis:
                j = m_deg - in_deg + n
                out.setdefault(j, []).append((n, word, name))
    for bucket in out.values():
        bucket.sort(
            key=lambda t: (
                t[0],
                tuple(amod.position(a) for a in t[1]),
                M.module.position(t[2]),
            )
        )
    return out


def beta_matrix(M: AInfinityBimodule, cutoff: int, j: int, basis=None):
    """Matrix of the codifferential CH^j -> CH^{j+1} on elementary cochains."""
    from .homology import ExactMatrix

    basis = basis if basis is not None else cochain_basis(M, cutoff)
    src = basis.get(j, [])
    dst = basis.get(j + 1, [])
    index = {key: i for i, key in enumerate(dst)}
    cols = []
    for n, word, name in src:
        image = codifferential(elementary_cochain(M, word, name, cutoff))
        col: dict[int, int] = {}
        for arity, table in image.components.items():
            for w, value in table.items():
                for out_name, c in value.items():
                    i = index.get((arity, w, out_name))
                    if i is not None:
                        col[i] = col.get(i, 0) + c
        cols.append(col)
    return ExactMatrix.from_columns(len(dst), cols)


def regraded_codifferential(f: Cochain) -> Cochain:
    """Explicit codifferential on CH^*(A), coded from the diagonal formula.

    Independent of `codifferential`: the coefficient operations are read off
    the algebra tables as mu_{r+s+1} and the sign uses (deg - 1) in the
    regraded convention. The stored total degree remains the generic one, so
    deg_regraded = f.degree + 1 and the exponent (deg_regraded - 1)(...)+1
    equals the generic one; what is independent here is the assembly path.
    """
    A, M = f.A, f.M
    amod = A.module
    ring = M.ring
    acc: Components = {}
    truncated = f.truncated

    def bump(n: int, word: Word, name: str, c: int):
        slot = acc.setdefault(n, {}).setdefault(word, {})
        slot[name] = slot.get(name, 0) + c

    deg_regraded = f.degree + 1
    for n, table in f.components.items():
        for mu_arity, op in A.ops.items():
            # insertion family
            l = mu_arity - 1
            if n >= 1:
                if n + l > f.cutoff:
                    truncated = True
                else:
                    pre: dict[str, list[tuple[Word, int]]] = {}
                    for key, value in op.entries():
                        for name, c in value.terms.items():
                            pre.setdefault(name, []).append((key, c))
                    for word, value in table.items():
                        for i in range(1, n + 1):
                            for key, pc in pre.get(word[i - 1], ()):
                                target = word[: i - 1] + key + word[i:]
                                degs = [amod.degree_of(a) for a in target]
                                sv = sign(maltese(degs, 1, i - 1)) * pc
                                for name, c in value.items():
                                    bump(n + l, target, name, sv * c)
            # wrapping family: mu^{A[1]}_{r,s} = mu_{r+s+1}
            for r in range(0, mu_arity):
                s = mu_arity - 1 - r
                l = r + s
                if n + l > f.cutoff:
                    truncated = True
                    continue
                for word, value in table.items():
                    for prefix in itertools.product(amod.names, repeat=r):
                        for suffix in itertools.product(amod.names, repeat=s):
                            target = prefix + word + suffix
                            degs = [amod.degree_of(a) for a in target]
                            s_exp = (deg_regraded - 1) * (maltese(degs, 1, r) + 1) + 1
                            sv = sign(s_exp)
                            for name, c in value.items():
                                out = op.on_word(prefix + (name,) + suffix)
                                for out_name, v in out.terms.items():
                                    bump(n + l, target, out_name, sv * c * v)

    cleaned: Components = {}
    for n, table in acc.items():
        good = {}
        for w, val in table.items():
            slot = {k: ring.normalize(c) for k, c in val.items()}
            slot = {k: c for k, c in slot.items() if c}
            if slot:
                good[w] = slot
        if good:
            cleaned[n] = good
    return Cochain(f.M, f.degree + 1, cleaned, f.cutoff, truncated)
