"""Finitely generated abelian groups and homomorphisms between presentations.

Everything is computed over the integers with Python ints.  A presentation
``Z^n / L`` is given by a generator count and a list of relation rows
spanning ``L``; a homomorphism is an integer matrix acting on generator
coordinates (column ``j`` is the image of source generator ``j``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

Matrix = list[list[int]]

__all__ = [
    "smith_normal_form",
    "FinAbGroup",
    "Presentation",
    "GroupHom",
    "IllDefinedHom",
    "CompositionNonzero",
    "InfiniteGroup",
    "Exactness",
    "cokernel",
    "image",
    "kernel",
    "exactness",
    "check_exact",
    "pontryagin_dual",
    "direct_sum",
]


class IllDefinedHom(ValueError):
    """The matrix does not carry source relations into target relations."""


class CompositionNonzero(ValueError):
    """``g o f`` is not zero, so exactness fails before comparing subgroups."""


class InfiniteGroup(ValueError):
    pass


# -- matrix helpers --------------------------------------------------------


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _copy(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(map(int, row)) for row in m]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(inner)) for j in range(cols)] for i in range(len(a))]


def transpose(m: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    a = _copy(m)
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# -- Smith normal form -----------------------------------------------------


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D`` in Smith normal form.

    ``U`` and ``V`` are unimodular and the diagonal of ``D`` is a
    non-negative divisibility chain.  The pivot at each stage is the
    nonzero entry of smallest absolute value, ties broken in row-major
    order, so the output is deterministic.
    """
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row dst += c * row src
        if c:
            a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, c):  # col dst += c * col src
        if c:
            for row in a:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    t = 0
    while t < min(rows, cols):
        # smallest nonzero |entry| in the remaining block, row-major ties
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remainder in row/column t to the pivot
                best = None
                for i in range(t, rows):
                    x = a[i][t]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, t)
                for j in range(t + 1, cols):
                    x = a[t][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), t, j)
                _, bi, bj = best
                swap_rows(t, bi)
                swap_cols(t, bj)
                continue
            # row and column cleared; enforce divisibility on the rest
            p = a[t][t]
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, a, V


def _diagonal(d: Matrix) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


# -- groups ----------------------------------------------------------------


@dataclass(frozen=True)
class FinAbGroup:
    """``Z^free_rank (+) Z/d1 (+) ... (+) Z/dm`` with ``d1 | d2 | ... | dm``."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        facs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", facs)
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        for d in facs:
            if d < 2:
                raise ValueError(f"invariant factors must be >= 2, got {d}")
        for a, b in zip(facs, facs[1:]):
            if b % a:
                raise ValueError(f"divisibility chain broken: {a} does not divide {b}")

    @classmethod
    def from_orders(cls, orders: Sequence[int], free_rank: int = 0) -> "FinAbGroup":
        """Normalise ``Z^free_rank (+) (+)_n Z/n``; an order of 0 means ``Z``."""
        n = len(orders)
        diag = [[orders[i] if i == j else 0 for j in range(n)] for i in range(n)]
        g = _group_from_relations(diag, n)
        return FinAbGroup(free_rank + g.free_rank, g.invariant_factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.invariant_factors

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def order(self) -> int | float:
        if self.free_rank:
            return math.inf
        return math.prod(self.invariant_factors)

    def presentation(self) -> "Presentation":
        """Standard presentation: free generators first, then cyclic ones."""
        n = self.free_rank + len(self.invariant_factors)
        rels = []
        for idx, d in enumerate(self.invariant_factors):
            row = [0] * n
            row[self.free_rank + idx] = d
            rels.append(row)
        return Presentation(n, tuple(tuple(r) for r in rels))

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.invariant_factors]
        return " (+) ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.invariant_factors)}


def direct_sum(*groups: FinAbGroup) -> FinAbGroup:
    orders = [d for g in groups for d in g.invariant_factors]
    return FinAbGroup.from_orders(orders, sum(g.free_rank for g in groups))


def _group_from_relations(rels: Sequence[Sequence[int]], ngens: int) -> FinAbGroup:
    if ngens == 0:
        return FinAbGroup()
    if not rels:
        return FinAbGroup(ngens)
    _, d, _ = smith_normal_form(rels)
    diag = [x for x in _diagonal(d) if x]
    rank = ngens - len(diag)
    return FinAbGroup(rank, tuple(x for x in diag if x != 1))


def pontryagin_dual(g: FinAbGroup) -> FinAbGroup:
    """``Hom(G, Q/Z)``; abstractly isomorphic to ``G`` for finite ``G``."""
    if not g.is_finite():
        raise InfiniteGroup(f"{g} is not finite")
    return FinAbGroup(0, g.invariant_factors)


# -- presentations and homomorphisms --------------------------------------


@dataclass(frozen=True)
class Presentation:
    """``Z^ngens`` modulo the row span of ``relations``."""

    ngens: int
    relations: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        rels = tuple(tuple(int(x) for x in r) for r in self.relations)
        for r in rels:
            if len(r) != self.ngens:
                raise ValueError(f"relation {r} has wrong length for {self.ngens} generators")
        object.__setattr__(self, "relations", rels)

    @classmethod
    def cyclic(cls, n: int) -> "Presentation":
        """``Z`` for ``n == 0``, the trivial group for ``n == 1``, else ``Z/n``."""
        if n == 0:
            return cls(1)
        return cls(1, ((n,),))

    def group(self) -> FinAbGroup:
        return _group_from_relations([list(r) for r in self.relations], self.ngens)

    def contains(self, v: Sequence[int]) -> bool:
        """Is the vector ``v`` in the relation lattice (i.e. zero in the group)?"""
        return _in_row_span(v, [list(r) for r in self.relations], self.ngens)


def _in_row_span(v: Sequence[int], rows: Matrix, n: int) -> bool:
    if not any(v):
        return True
    if not rows:
        return False
    # v = x R  <=>  v V = y D  with y = x U^-1
    _, d, V = smith_normal_form(rows)
    w = [sum(v[i] * V[i][j] for i in range(n)) for j in range(n)]
    diag = _diagonal(d)
    for j in range(n):
        dj = diag[j] if j < len(diag) else 0
        if dj == 0:
            if w[j]:
                return False
        elif w[j] % dj:
            return False
    return True


def _integer_kernel(a: Matrix, ncols: int) -> Matrix:
    """Basis (as rows) of ``{x in Z^ncols : a x = 0}``."""
    if not a:
        return _identity(ncols)
    _, d, V = smith_normal_form(a)
    diag = _diagonal(d)
    rank = sum(1 for x in diag if x)
    return [[V[i][j] for i in range(ncols)] for j in range(rank, ncols)]


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism of presented groups; ``matrix`` is ``target.ngens x source.ngens``."""

    source: Presentation
    target: Presentation
    matrix: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        mat = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if not mat and self.target.ngens:
            mat = tuple((0,) * self.source.ngens for _ in range(self.target.ngens))
        if len(mat) != self.target.ngens or any(len(r) != self.source.ngens for r in mat):
            raise ValueError(
                f"matrix shape must be {self.target.ngens}x{self.source.ngens}"
            )
        object.__setattr__(self, "matrix", mat)
        for rel in self.source.relations:
            if not self.target.contains(self.apply(rel)):
                raise IllDefinedHom(
                    f"relation {rel} maps to {self.apply(rel)}, which is nonzero in the target"
                )

    @classmethod
    def zero(cls, source: Presentation, target: Presentation) -> "GroupHom":
        return cls(source, target)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(row[j] * v[j] for j in range(self.source.ngens)) for row in self.matrix)

    def compose(self, first: "GroupHom") -> "GroupHom":
        """``self o first``."""
        if first.target != self.source:
            raise ValueError("presentations do not match for composition")
        return GroupHom(first.source, self.target, matmul([list(r) for r in self.matrix], [list(r) for r in first.matrix]) if self.matrix else ())

    def is_zero(self) -> bool:
        n = self.source.ngens
        for j in range(n):
            e = [int(i == j) for i in range(n)]
            if not self.target.contains(self.apply(e)):
                return False
        return True

    def image_lattice(self) -> Matrix:
        """Rows spanning ``L_target + image`` inside ``Z^target.ngens``."""
        rows = [list(r) for r in self.target.relations]
        for j in range(self.source.ngens):
            rows.append([self.matrix[i][j] for i in range(self.target.ngens)])
        return rows

    def kernel_lattice(self) -> Matrix:
        """Rows spanning ``{v : f(v) = 0 in target}`` inside ``Z^source.ngens``."""
        n, t = self.source.ngens, self.target.ngens
        rels = [list(r) for r in self.target.relations]
        # [M | -R^T] (v; x) = 0
        block = [
            [self.matrix[i][j] for j in range(n)] + [-rels[r][i] for r in range(len(rels))]
            for i in range(t)
        ]
        if not block:
            return _identity(n)
        ker = _integer_kernel(block, n + len(rels))
        return [row[:n] for row in ker]


def cokernel(f: GroupHom) -> FinAbGroup:
    return _group_from_relations(f.image_lattice(), f.target.ngens)


def image(f: GroupHom) -> FinAbGroup:
    """The image as an abstract group (image lattice over target relations)."""
    n = f.target.ngens
    img = f.image_lattice()
    rels = [list(r) for r in f.target.relations]
    # image ~= (L + im) / L ; compute as quotient of a lattice by a sublattice
    return _quotient_of_lattices(img, rels, n)


def kernel(f: GroupHom) -> FinAbGroup:
    n = f.source.ngens
    return _quotient_of_lattices(f.kernel_lattice(), [list(r) for r in f.source.relations], n)


def _quotient_of_lattices(big: Matrix, small: Matrix, n: int) -> FinAbGroup:
    """``span(big) / span(small)`` assuming ``span(small) <= span(big)``."""
    basis = _lattice_basis(big, n)
    if not basis:
        return FinAbGroup()
    # express small rows in the basis coordinates: solve x B = s
    coords = [_solve_in_basis(s, basis, n) for s in small if any(s)]
    return _group_from_relations(coords, len(basis))


def _lattice_basis(rows: Matrix, n: int) -> Matrix:
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    U, d, V = smith_normal_form(rows)
    diag = _diagonal(d)
    rank = sum(1 for x in diag if x)
    # rowspan(R) = rowspan(D V^-1); rows of D V^-1 with nonzero d give a basis
    Vinv = _unimodular_inverse(V)
    return [[diag[i] * Vinv[i][j] for j in range(n)] for i in range(rank)]


def _unimodular_inverse(V: Matrix) -> Matrix:
    n = len(V)
    aug = [list(V[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    # integer Gauss-Jordan is exact since det = +-1; do it with fractions for safety
    from fractions import Fraction

    a = [[Fraction(x) for x in row] for row in aug]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    out = [[a[i][n + j] for j in range(n)] for i in range(n)]
    assert all(x.denominator == 1 for row in out for x in row)
    return [[int(x) for x in row] for row in out]


def _solve_in_basis(s: Sequence[int], basis: Matrix, n: int) -> list[int]:
    from fractions import Fraction

    k = len(basis)
    # least-squares free exact solve of x B = s via normal equations on a full-rank B
    a = [[Fraction(basis[i][j]) for i in range(k)] + [Fraction(s[j])] for j in range(n)]
    row = 0
    piv_cols = []
    for c in range(k):
        p = next((r for r in range(row, n) if a[r][c] != 0), None)
        if p is None:
            continue
        a[row], a[p] = a[p], a[row]
        pv = a[row][c]
        a[row] = [x / pv for x in a[row]]
        for r in range(n):
            if r != row and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        piv_cols.append(c)
        row += 1
    x = [Fraction(0)] * k
    for r, c in enumerate(piv_cols):
        x[c] = a[r][k]
    for r in range(row, n):
        if a[r][k] != 0:
            raise ValueError("vector not in the lattice span")
    if any(v.denominator != 1 for v in x):
        raise ValueError("vector not in the integer lattice")
    return [int(v) for v in x]


class Exactness(Enum):
    EXACT = "exact"
    NOT_EXACT = "image strictly inside kernel"
    COMPOSITION_NONZERO = "composition nonzero"


def exactness(f: GroupHom, g: GroupHom) -> Exactness:
    """Classify the sequence ``. --f--> B --g--> .`` at ``B``."""
    if f.target != g.source:
        raise ValueError("target of f must be the source of g")
    im = f.image_lattice()
    ker = g.kernel_lattice() + [list(r) for r in g.source.relations]
    n = g.source.ngens
    if not all(_in_row_span(v, ker, n) for v in im):
        return Exactness.COMPOSITION_NONZERO
    if all(_in_row_span(v, im, n) for v in ker):
        return Exactness.EXACT
    return Exactness.NOT_EXACT


def check_exact(f: GroupHom, g: GroupHom) -> bool:
    """True iff ``image(f) == kernel(g)``.

    Raises :class:`CompositionNonzero` when ``g o f != 0``; returns False
    when the image is a proper subgroup of the kernel.
    """
    status = exactness(f, g)
    if status is Exactness.COMPOSITION_NONZERO:
        raise CompositionNonzero("g o f is not zero")
    return status is Exactness.EXACT
