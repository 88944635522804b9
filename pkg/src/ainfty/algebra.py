"""A-infinity algebras: operation bundles, defining equations, DGA embedding.

An algebra is a graded module with operations mu_n of degree 2 - n. The r-th
defining equation sums, over all splittings n1 + n2 = r + 1 and insertion
points i, the signed composites mu_{n2}(..., mu_{n1}(...), ...) and must
vanish on every basis word of length r.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import (
    DegreeMismatch,
    LeibnizFailure,
    NotADifferential,
    NotAssociative,
)
from .graded import Element, GradedModule, MultilinearOp, Word
from .signs import maltese, sign


@dataclass
class Verdict:
    """Outcome of one identity check; carries the first counterexample."""

    holds: bool
    word: Word | None = None
    residual: Element | None = None
    label: str = ""

    def __bool__(self) -> bool:
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return f"{self.label}: holds"
        return f"{self.label}: fails on {self.word} with residual {self.residual}"


class AInfinityAlgebra:
    """Graded module plus operations mu_n (n >= 1), zero beyond max_arity."""

    def __init__(
        self,
        module: GradedModule,
        ops: Mapping[int, MultilinearOp],
        max_arity: int | None = None,
    ):
        self.module = module
        self.ops = {}
        for n, op in ops.items():
            if n < 1:
                raise DegreeMismatch("operation arity must be >= 1")
            if op.degree != 2 - n:
                raise DegreeMismatch(f"mu_{n} must have degree {2 - n}, got {op.degree}")
            if op.arity != n:
                raise DegreeMismatch(f"mu_{n} has arity {op.arity}")
            if not op.is_zero():
                self.ops[n] = op
        self.max_arity = max_arity if max_arity is not None else max(self.ops, default=1)

    @property
    def ring(self):
        return self.module.ring

    def mu(self, n: int) -> MultilinearOp | None:
        return self.ops.get(n)

    def mu_word(self, n: int, word: Word) -> Element:
        op = self.ops.get(n)
        if op is None:
            return Element(self.module, {})
        return op.on_word(word)

    def words(self, length: int) -> Iterator[Word]:
        yield from itertools.product(self.module.names, repeat=length)

    def degrees(self, word: Word) -> list[int]:
        return [self.module.degree_of(n) for n in word]

    def default_bound(self) -> int:
        return max(2 * self.max_arity, 6)


def equation_residual(algebra: AInfinityAlgebra, word: Word) -> Element:
    """Left-hand side of the defining equation on one basis word."""
    r = len(word)
    degs = algebra.degrees(word)
    acc: dict[str, int] = {}
    for n1 in range(1, r + 1):
        n2 = r + 1 - n1
        inner_op = algebra.mu(n1)
        outer_op = algebra.mu(n2)
        if inner_op is None or outer_op is None:
            continue
        for i in range(1, r + 2 - n1):
            inner = inner_op.on_word(word[i - 1 : i - 1 + n1])
            if inner.is_zero():
                continue
            s = sign(maltese(degs, 1, i - 1))
            for name, c in inner.terms.items():
                outer = outer_op.on_word(word[: i - 1] + (name,) + word[i - 1 + n1 :])
                for out, v in outer.terms.items():
                    acc[out] = acc.get(out, 0) + s * c * v
    return Element(algebra.module, acc)


def check_defining_equation(algebra: AInfinityAlgebra, r: int) -> Verdict:
    """Verify the r-th defining equation on every basis word of length r."""
    label = f"A-infinity equation r={r}"
    pairs = [
        n1
        for n1 in range(1, r + 1)
        if algebra.mu(n1) is not None and algebra.mu(r + 1 - n1) is not None
    ]
    if not pairs:
        return Verdict(True, label=label)
    for word in algebra.words(r):
        residual = equation_residual(algebra, word)
        if not residual.is_zero():
            return Verdict(False, word, residual, label)
    return Verdict(True, label=label)


def validate(algebra: AInfinityAlgebra, r_max: int) -> dict[int, Verdict]:
    """Defining equations for r = 1..r_max; overall pass iff all hold."""
    return {r: check_defining_equation(algebra, r) for r in range(1, r_max + 1)}


def shift(algebra: AInfinityAlgebra) -> GradedModule:
    """The shifted module A[1]: same names, every degree lowered by one."""
    return algebra.module.shifted(-1)


def from_dga(
    module: GradedModule,
    product: MultilinearOp,
    differential: MultilinearOp | None = None,
) -> AInfinityAlgebra:
    """A-infinity structure of a differential graded algebra.

    Checks d*d = 0, associativity of the product and the graded Leibniz rule
    d(ab) = d(a)b + (-1)^{deg a} a d(b), then stores mu_1 = d and
    mu_2(a,b) = (-1)^{deg a} ab. The sign twist on mu_2 is what turns
    associativity into the third defining equation under these conventions.
    """
    names = module.names

    def d(e: Element) -> Element:
        if differential is None or e.is_zero():
            return Element(module, {})
        return differential(e)

    def prod(a: Element, b: Element) -> Element:
        return product(a, b)

    if differential is not None:
        if differential.degree != 1:
            raise NotADifferential("differential must have degree +1")
        for n in names:
            e = module.basis_element(n)
            if not d(d(e)).is_zero():
                raise NotADifferential(f"d(d({n})) != 0")
    if product.degree != 0:
        raise NotAssociative("product must have degree 0")
    for a, b, c in itertools.product(names, repeat=3):
        ea, eb, ec = (module.basis_element(n) for n in (a, b, c))
        left = prod(prod(ea, eb), ec)
        right = prod(ea, prod(eb, ec))
        if left != right:
            raise NotAssociative(f"({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}")
    if differential is not None:
        for a, b in itertools.product(names, repeat=2):
            ea, eb = module.basis_element(a), module.basis_element(b)
            lhs = d(prod(ea, eb))
            rhs = prod(d(ea), eb) + prod(ea, d(eb)).scale(sign(module.degree_of(a)))
            if lhs != rhs:
                raise LeibnizFailure(f"d({a}*{b}) = {lhs} but Leibniz gives {rhs}")

    mu2_table = {}
    for a, b in itertools.product(names, repeat=2):
        value = product.on_word((a, b)).scale(sign(module.degree_of(a)))
        if not value.is_zero():
            mu2_table[(a, b)] = value
    ops: dict[int, MultilinearOp] = {
        2: MultilinearOp((module, module), module, 0, mu2_table, label="mu_2")
    }
    if differential is not None and not differential.is_zero():
        ops[1] = MultilinearOp(
            (module,), module, 1, dict(differential.entries()), label="mu_1"
        )
    return AInfinityAlgebra(module, ops, max_arity=2)
