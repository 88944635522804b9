"""Exact linear algebra: Smith normal form over Z, ranks over Z/p, homology.

Matrices are sparse maps (row, col) -> coefficient but all eliminations run
on dense lists of Python ints, which are exact at any size. The SNF routine
re-verifies D = U*M*V by multiplication before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotAComplex, NotChainMap
from .rings import CoefficientRing


class ExactMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict[tuple[int, int], int] | None = None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        for (i, j), c in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i},{j}) outside {rows}x{cols}")
            if c:
                self.entries[(i, j)] = c

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]]) -> "ExactMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls(
            rows,
            cols,
            {(i, j): v for i, row in enumerate(dense) for j, v in enumerate(row) if v},
        )

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[dict[int, int]]) -> "ExactMatrix":
        entries = {}
        for j, col in enumerate(columns):
            for i, c in col.items():
                if c:
                    entries[(i, j)] = c
        return cls(rows, len(columns), entries)

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), c in self.entries.items():
            dense[i][j] = c
        return dense

    def column(self, j: int) -> dict[int, int]:
        return {i: c for (i, jj), c in self.entries.items() if jj == j}

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExactMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise IndexError("matrix shapes do not compose")
        by_row: dict[int, dict[int, int]] = {}
        for (i, k), c in self.entries.items():
            by_row.setdefault(i, {})[k] = c
        by_col: dict[int, dict[int, int]] = {}
        for (k, j), c in other.entries.items():
            by_col.setdefault(j, {})[k] = c
        entries = {}
        for i, row in by_row.items():
            for j, col in by_col.items():
                acc = 0
                for k, c in row.items():
                    v = col.get(k)
                    if v is not None:
                        acc += c * v
                if acc:
                    entries[(i, j)] = acc
        return ExactMatrix(self.rows, other.cols, entries)

    def mod(self, p: int) -> "ExactMatrix":
        return ExactMatrix(
            self.rows, self.cols, {k: c % p for k, c in self.entries.items() if c % p}
        )

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, {len(self.entries)} entries)"


def identity_matrix(n: int) -> ExactMatrix:
    return ExactMatrix(n, n, {(i, i): 1 for i in range(n)})


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m, src, dst, q):
    # dst += q * src
    ms, md = m[src], m[dst]
    for k in range(len(md)):
        md[k] += q * ms[k]


def _add_col(m, src, dst, q):
    for row in m:
        row[dst] += q * row[src]


def smith_normal_form(mat: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    """Return (D, U, V) with D = U @ mat @ V, D diagonal with d1 | d2 | ...

    Pivoting re-selects the entry of minimal absolute value on every
    elimination pass and reduces with symmetric (nearest) remainders: both
    are needed to keep intermediate entries from exploding. U and V are
    built from elementary row/column operations, hence unimodular; the
    identity D = U*M*V is re-verified by exact multiplication before
    returning.
    """
    m, n = mat.rows, mat.cols
    D = mat.to_dense()
    U = identity_matrix(m).to_dense()
    V = identity_matrix(n).to_dense()

    def move_min_pivot(t):
        best = None
        pivot = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            return False
        i, j = pivot
        if i != t:
            _swap_rows(D, t, i)
            _swap_rows(U, t, i)
        if j != t:
            _swap_cols(D, t, j)
            _swap_cols(V, t, j)
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
        return True

    t = 0
    while t < min(m, n):
        if not move_min_pivot(t):
            break
        while True:
            p = D[t][t]
            half = p // 2
            reduced = False
            for i in range(t + 1, m):
                a = D[i][t]
                if a:
                    q = (a + half) // p
                    if q:
                        _add_row(D, t, i, -q)
                        _add_row(U, t, i, -q)
                    reduced = reduced or bool(D[i][t])
            for j in range(t + 1, n):
                a = D[t][j]
                if a:
                    q = (a + half) // p
                    if q:
                        _add_col(D, t, j, -q)
                        _add_col(V, t, j, -q)
                    reduced = reduced or bool(D[t][j])
            row_clear = all(D[t][j] == 0 for j in range(t + 1, n))
            col_clear = all(D[i][t] == 0 for i in range(t + 1, m))
            if row_clear and col_clear:
                break
            # a nonzero remainder is strictly smaller than the pivot:
            # promote the smallest entry and keep reducing
            move_min_pivot(t)

        # pivot must divide the rest of the block for the divisibility chain
        p = D[t][t]
        offender = None
        for i in range(t + 1, m):
            row = D[i]
            for j in range(t + 1, n):
                if row[j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            _add_row(D, offender, t, 1)
            _add_row(U, offender, t, 1)
            continue
        t += 1

    def shaped(dense, rows, cols):
        return ExactMatrix(
            rows,
            cols,
            {(i, j): v for i, row in enumerate(dense) for j, v in enumerate(row) if v},
        )

    Dm = shaped(D, m, n)
    Um = shaped(U, m, m)
    Vm = shaped(V, n, n)
    if Um @ mat @ Vm != Dm:
        raise AssertionError("SNF self-check failed: D != U*M*V")
    return Dm, Um, Vm


def invariant_factors(mat: ExactMatrix) -> list[int]:
    D, _, _ = smith_normal_form(mat)
    out = []
    for t in range(min(mat.rows, mat.cols)):
        v = D.entries.get((t, t), 0)
        if v:
            out.append(abs(v))
    return out


def rank_z(mat: ExactMatrix) -> int:
    return len(invariant_factors(mat))


def kernel_basis_z(mat: ExactMatrix) -> ExactMatrix:
    """Columns form a Z-basis of the integer kernel lattice."""
    D, _, V = smith_normal_form(mat)
    zero_cols = [j for j in range(mat.cols) if D.entries.get((j, j), 0) == 0]
    entries = {}
    for new_j, j in enumerate(zero_cols):
        for i in range(V.rows):
            c = V.entries.get((i, j))
            if c:
                entries[(i, new_j)] = c
    return ExactMatrix(V.rows, len(zero_cols), entries)


def solve_in_lattice(K: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """Integral X with K @ X = B; K's columns must span a saturated lattice."""
    D, U, V = smith_normal_form(K)
    UB = U @ B
    entries: dict[tuple[int, int], int] = {}
    for jcol in range(B.cols):
        for i in range(K.rows):
            v = UB.entries.get((i, jcol), 0)
            d = D.entries.get((i, i), 0) if i < K.cols else 0
            if d == 0:
                if v:
                    raise NotAComplex("column is not in the span of the kernel lattice")
                continue
            if v % d:
                raise NotAComplex("column is not integrally in the lattice")
            if v // d:
                entries[(i, jcol)] = v // d
    W = ExactMatrix(K.cols, B.cols, entries)
    return V @ W


def _row_reduce_modp(dense: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form mod p; returns (matrix, pivot columns)."""
    mat = [[v % p for v in row] for row in dense]
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        sel = None
        for i in range(r, rows):
            if mat[i][c] % p:
                sel = i
                break
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [(v * inv) % p for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return mat, pivots


def rank_modp(mat: ExactMatrix, p: int) -> int:
    _, pivots = _row_reduce_modp(mat.to_dense(), p)
    return len(pivots)


def kernel_basis_modp(mat: ExactMatrix, p: int) -> ExactMatrix:
    red, pivots = _row_reduce_modp(mat.to_dense(), p)
    free = [j for j in range(mat.cols) if j not in pivots]
    entries = {}
    for new_j, j in enumerate(free):
        entries[(j, new_j)] = 1
        for r, c in enumerate(pivots):
            v = red[r][j] % p
            if v:
                entries[(c, new_j)] = (-v) % p
    return ExactMatrix(mat.cols, len(free), entries)


def rank(mat: ExactMatrix, ring: CoefficientRing) -> int:
    return rank_modp(mat, ring.p) if ring.is_field else rank_z(mat)


def kernel_basis(mat: ExactMatrix, ring: CoefficientRing) -> ExactMatrix:
    return kernel_basis_modp(mat, ring.p) if ring.is_field else kernel_basis_z(mat)


def determinant(mat: ExactMatrix) -> int:
    """Exact determinant via Bareiss elimination; used to audit unimodularity."""
    if mat.rows != mat.cols:
        raise IndexError("determinant of a non-square matrix")
    n = mat.rows
    a = mat.to_dense()
    signv = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            signv = -signv
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return signv * a[n - 1][n - 1]


@dataclass
class HomologySummary:
    """Free rank and torsion (over Z) or dimension (over Z/p) in one degree."""

    degree: int
    ring: CoefficientRing
    free_rank: int
    torsion: tuple[int, ...] = ()

    @property
    def dimension(self) -> int:
        return self.free_rank

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def invariants(self) -> tuple[int, tuple[int, ...]]:
        return (self.free_rank, self.torsion)

    def __str__(self):
        if self.ring.is_field:
            return f"dim {self.free_rank}"
        tor = ",".join(f"Z/{d}" for d in self.torsion)
        bits = [f"Z^{self.free_rank}"] if self.free_rank else []
        if tor:
            bits.append(tor)
        return " + ".join(bits) if bits else "0"


def homology_at(
    d_out: ExactMatrix, d_in: ExactMatrix, ring: CoefficientRing, degree: int = 0
) -> HomologySummary:
    """Homology ker(d_out)/im(d_in) with d_out: C_j -> C_{j-1}, d_in: C_{j+1} -> C_j."""
    if d_out.cols != d_in.rows:
        raise IndexError("boundary matrices do not line up")
    composite = d_out @ d_in
    if ring.is_field:
        composite = composite.mod(ring.p)
    if not composite.is_zero():
        raise NotAComplex("composite of boundary maps is nonzero")
    n = d_out.cols
    if ring.is_field:
        p = ring.p
        r_out = rank_modp(d_out.mod(p), p)
        r_in = rank_modp(d_in.mod(p), p)
        return HomologySummary(degree, ring, n - r_out - r_in)
    factors_in = invariant_factors(d_in)
    r_out = rank_z(d_out)
    torsion = tuple(d for d in factors_in if d > 1)
    return HomologySummary(degree, ring, n - r_out - len(factors_in), torsion)


@dataclass
class InducedMapResult:
    matrix: ExactMatrix  # on kernel-basis coordinates
    source: HomologySummary
    target: HomologySummary
    is_iso: bool


def induced_map_on_homology(
    F_j: ExactMatrix,
    F_jm1: ExactMatrix,
    source: tuple[ExactMatrix, ExactMatrix],
    target: tuple[ExactMatrix, ExactMatrix],
    ring: CoefficientRing,
    degree: int = 0,
) -> InducedMapResult:
    """Map induced on homology by a chain map, with an isomorphism verdict.

    source/target are (d_out, d_in) pairs at the matching degrees. The chain
    map identity d_out' @ F_j = F_{j-1} @ d_out is verified first. Over Z the
    verdict uses that finitely generated abelian groups are Hopfian: the map
    is an isomorphism iff both sides have equal invariants and the map is
    surjective, i.e. [Y | X_target] hits all of the target kernel lattice.
    """
    dA_s, dB_s = source
    dA_t, dB_t = target
    defect = _subtract(dA_t @ F_j, F_jm1 @ dA_s)
    if ring.is_field:
        defect = defect.mod(ring.p)
    if not defect.is_zero():
        raise NotChainMap("map does not commute with the boundary operators")

    h_source = homology_at(dA_s, dB_s, ring, degree)
    h_target = homology_at(dA_t, dB_t, ring, degree)

    if ring.is_field:
        p = ring.p
        K_s = kernel_basis_modp(dA_s.mod(p), p)
        K_t = kernel_basis_modp(dA_t.mod(p), p)
        X_t = _solve_modp(K_t, dB_t.mod(p), p)
        Y = _solve_modp(K_t, (F_j @ K_s).mod(p), p)
        stacked = _hstack(Y, X_t)
        surjective = rank_modp(stacked, p) == K_t.cols
        iso = surjective and h_source.invariants() == h_target.invariants()
        return InducedMapResult(Y, h_source, h_target, iso)

    K_s = kernel_basis_z(dA_s)
    K_t = kernel_basis_z(dA_t)
    X_t = solve_in_lattice(K_t, dB_t)
    Y = solve_in_lattice(K_t, F_j @ K_s)
    stacked = _hstack(Y, X_t)
    factors = invariant_factors(stacked)
    surjective = len(factors) == K_t.cols and all(d == 1 for d in factors)
    iso = surjective and h_source.invariants() == h_target.invariants()
    return InducedMapResult(Y, h_source, h_target, iso)


def _subtract(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    entries = dict(a.entries)
    for k, c in b.entries.items():
        entries[k] = entries.get(k, 0) - c
    return ExactMatrix(a.rows, a.cols, entries)


def _hstack(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if a.rows != b.rows:
        raise IndexError("hstack of mismatched row counts")
    entries = dict(a.entries)
    for (i, j), c in b.entries.items():
        entries[(i, j + a.cols)] = c
    return ExactMatrix(a.rows, a.cols + b.cols, entries)


def _solve_modp(K: ExactMatrix, B: ExactMatrix, p: int) -> ExactMatrix:
    """Solve K X = B mod p (K has full column rank on its kernel-basis use)."""
    aug = _hstack(K, B).to_dense()
    red, pivots = _row_reduce_modp(aug, p)
    k = K.cols
    entries = {}
    for r, c in enumerate(pivots):
        if c >= k:
            raise NotAComplex("column is not in the span mod p")
        for j in range(B.cols):
            v = red[r][k + j] % p
            if v:
                entries[(c, j)] = v
    return ExactMatrix(k, B.cols, entries)
