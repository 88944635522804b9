"""The length-truncated Hochschild chain complex and its differential.

Chain elements are sparse dicts mapping words (m, a_1, ..., a_n) to
coefficients. The differential is the sum of components b_{i,l}: the i = 0
term acts on the coefficient slot, interior terms insert mu_l into the
algebra letters, and the overlapping terms wrap the word around the
coefficient slot with the star sign.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .bimodules import AInfinityBimodule, BimoduleMorphism
from .errors import Inhomogeneous, ModuleMismatch, ZeroElement
from .graded import Word
from .signs import maltese0, sign, star_sign

Chain = dict[Word, int]


def add_into(acc: Chain, word: Word, c: int) -> None:
    acc[word] = acc.get(word, 0) + c


def normalize(chain: Chain, ring) -> Chain:
    out = {}
    for w, c in chain.items():
        c = ring.normalize(c)
        if c:
            out[w] = c
    return out


def scale(chain: Chain, c: int) -> Chain:
    return {w: c * v for w, v in chain.items()}


def add(x: Chain, y: Chain, ring) -> Chain:
    acc = dict(x)
    for w, c in y.items():
        add_into(acc, w, c)
    return normalize(acc, ring)


class HochschildComplex:
    """F_L-truncated chain complex CH_*(A;M) with a fixed word enumeration."""

    def __init__(self, bimodule: AInfinityBimodule, length_cutoff: int = 4):
        self.M = bimodule
        self.A = bimodule.algebra
        self.L = length_cutoff
        self.ring = bimodule.ring
        self._b_cache: dict[Word, Chain] = {}

    def words(self, n: int) -> list[Word]:
        """Length-n words, ordered by (degree, slot positions)."""
        out = list(
            (m,) + rest
            for m in self.M.module.names
            for rest in itertools.product(self.A.module.names, repeat=n)
        )
        out.sort(key=lambda w: (self.degree(w), self._positions(w)))
        return out

    def _positions(self, word: Word) -> tuple[int, ...]:
        return (self.M.module.position(word[0]),) + tuple(
            self.A.module.position(n) for n in word[1:]
        )

    def all_words(self) -> Iterator[Word]:
        for n in range(self.L + 1):
            yield from self.words(n)

    def degree(self, word: Word) -> int:
        """Hochschild degree: n - deg(m) - sum of algebra degrees."""
        m_deg = self.M.module.degree_of(word[0])
        return -m_deg - sum(self.A.module.degree_of(n) - 1 for n in word[1:])

    def chain_degree(self, x: Chain) -> int:
        if not x:
            raise ZeroElement("degree of the zero chain is undefined")
        degs = {self.degree(w) for w in x}
        if len(degs) > 1:
            raise Inhomogeneous(f"mixed Hochschild degrees {sorted(degs)}")
        return degs.pop()

    def b_component(self, word: Word, i: int, l: int) -> Chain:
        """Single summand b_{i,l}; out-of-range indices give zero."""
        n = len(word) - 1
        if l < 1 or l > n + 1 or i < 0 or i > n:
            return {}
        m, letters = word[0], word[1:]
        a_degs = [self.A.module.degree_of(a) for a in letters]
        m_deg = self.M.module.degree_of(m)
        acc: Chain = {}
        if i == 0:
            out = self.M.op_word(0, l - 1, (m,) + letters[: l - 1])
            for name, c in out.terms.items():
                add_into(acc, (name,) + letters[l - 1 :], c)
        elif i <= n - l + 1:
            out = self.A.mu_word(l, letters[i - 1 : i - 1 + l])
            if not out.is_zero():
                s = sign(maltese0(m_deg, a_degs, i - 1))
                for name, c in out.terms.items():
                    add_into(
                        acc,
                        (m,) + letters[: i - 1] + (name,) + letters[i - 1 + l :],
                        s * c,
                    )
        else:
            # overlapping part: the coefficient slot is wrapped around
            r = n - i + 1
            s_idx = i + l - n - 2
            out = self.M.op_word(r, s_idx, letters[i - 1 :] + (m,) + letters[:s_idx])
            if not out.is_zero():
                s = sign(star_sign(m_deg, a_degs, i))
                suffix = letters[s_idx : i - 1]
                for name, c in out.terms.items():
                    add_into(acc, (name,) + suffix, s * c)
        return normalize(acc, self.ring)

    def differential_word(self, word: Word) -> Chain:
        cached = self._b_cache.get(word)
        if cached is None:
            n = len(word) - 1
            acc: Chain = {}
            for l in range(1, n + 2):
                for i in range(0, n + 1):
                    for w, c in self.b_component(word, i, l).items():
                        add_into(acc, w, c)
            cached = self._b_cache[word] = normalize(acc, self.ring)
        return dict(cached)

    def differential(self, x: Chain) -> Chain:
        acc: Chain = {}
        for word, c in x.items():
            if len(word) - 1 > self.L:
                raise ModuleMismatch("chain exceeds the length cutoff")
            for w, v in self.differential_word(word).items():
                add_into(acc, w, c * v)
        return normalize(acc, self.ring)

    def b1_word(self, word: Word) -> Chain:
        """Length-preserving part of b, built from mu_1 and mu_{0,0} only.

        Independent of b_component; used as the direct route to the zeroth
        page of the length filtration.
        """
        m, letters = word[0], word[1:]
        a_degs = [self.A.module.degree_of(a) for a in letters]
        m_deg = self.M.module.degree_of(m)
        acc: Chain = {}
        for name, c in self.M.op_word(0, 0, (m,)).terms.items():
            add_into(acc, (name,) + letters, c)
        mu1 = self.A.mu(1)
        if mu1 is not None:
            for i in range(1, len(letters) + 1):
                s = sign(maltese0(m_deg, a_degs, i - 1))
                for name, c in mu1.on_word((letters[i - 1],)).terms.items():
                    add_into(
                        acc, (m,) + letters[: i - 1] + (name,) + letters[i:], s * c
                    )
        return normalize(acc, self.ring)


def star_exponent(complex_: HochschildComplex, word: Word, i: int) -> int:
    letters = word[1:]
    a_degs = [complex_.A.module.degree_of(a) for a in letters]
    m_deg = complex_.M.module.degree_of(word[0])
    return star_sign(m_deg, a_degs, i + 1)


class InducedChainMap:
    """The chain map f_* of a bimodule morphism, applied word by word."""

    def __init__(self, f: BimoduleMorphism, length_cutoff: int = 4):
        self.f = f
        self.source = HochschildComplex(f.source, length_cutoff)
        self.target = HochschildComplex(f.target, length_cutoff)
        self.degree = -f.degree

    def on_word(self, word: Word) -> Chain:
        n = len(word) - 1
        m, letters = word[0], word[1:]
        deg = self.source.degree(word)
        a_degs = [self.source.A.module.degree_of(a) for a in letters]
        m_deg = self.source.M.module.degree_of(m)
        acc: Chain = {}
        for (r, s), op in self.f.maps.items():
            if r + s > n:
                continue
            key = letters[n - r :] + (m,) + letters[:s]
            out = op.on_word(key)
            if out.is_zero():
                continue
            dag = star_sign(m_deg, a_degs, n - r + 1) + self.f.degree * deg
            sv = sign(dag)
            suffix = letters[s : n - r]
            for name, c in out.terms.items():
                add_into(acc, (name,) + suffix, sv * c)
        return normalize(acc, self.target.ring)

    def __call__(self, x: Chain) -> Chain:
        acc: Chain = {}
        for word, c in x.items():
            for w, v in self.on_word(word).items():
                add_into(acc, w, c * v)
        return normalize(acc, self.target.ring)


def induced_chain_map(f: BimoduleMorphism, x: Chain, length_cutoff: int = 4) -> Chain:
    return InducedChainMap(f, length_cutoff)(x)


class ComposedChainMap:
    """Word-wise composite g_* . f_*; composition lives at the chain level."""

    def __init__(self, g: InducedChainMap, f: InducedChainMap):
        if f.f.target.module != g.f.source.module:
            raise ModuleMismatch("chain maps do not compose")
        self.g = g
        self.f = f
        self.source = f.source
        self.target = g.target
        self.degree = f.degree + g.degree

    def on_word(self, word: Word) -> Chain:
        return self.g(self.f.on_word(word))

    def __call__(self, x: Chain) -> Chain:
        return self.g(self.f(x))


def compose_induced(g: InducedChainMap, f: InducedChainMap) -> ComposedChainMap:
    return ComposedChainMap(g, f)


def diagonal_b_word(algebra, word: Word, ring=None) -> Chain:
    """Hochschild differential on CH_*(A) via the specialized diagonal formula.

    word = (a_0, a_1, ..., a_n) with all slots in A. This is an independent
    code path from HochschildComplex.differential_word and is compared with
    it term by term in the tests.
    """
    ring = ring or algebra.ring
    n = len(word) - 1
    degs = [algebra.module.degree_of(a) for a in word]
    red = [d - 1 for d in degs]
    acc: Chain = {}
    for l in range(1, n + 2):
        op = algebra.mu(l)
        if op is None:
            continue
        for i in range(0, n - l + 2):
            out = op.on_word(word[i : i + l])
            if out.is_zero():
                continue
            s = sign(sum(red[:i]))
            for name, c in out.terms.items():
                add_into(acc, word[:i] + (name,) + word[i + l :], s * c)
        for i in range(max(1, n - l + 2), n + 1):
            out = op.on_word(word[i:] + word[: i + l - n - 1])
            if out.is_zero():
                continue
            s = sign(sum(red[:i]) * sum(red[i:]))
            suffix = word[i + l - n - 1 : i]
            for name, c in out.terms.items():
                add_into(acc, (name,) + suffix, s * c)
    return normalize(acc, ring)
