"""Pairings between modular forms and classes in ``Z((q))`` modulo forms.

Two normalisations are in use and every function names the one it uses:

* ``alpha``: ``(1/2) * (D f g)|_{q^0}``, matching ``pi_{8k+4} KO = 2Z``;
* ``mf``:    ``(D f g)|_{q^0}``, the plain residue pairing.

Nothing converts between them implicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Union

from .modforms import (
    C4,
    C6,
    DELTA,
    MFElement,
    MFMonomial,
    e2_series,
    expand,
    j_series,
    max_nonneg_k,
    monomial_of_weight,
)
from .qseries import (
    InsufficientPrecision,
    QSeries,
    constant_term,
    constant_term_of_product,
)
from .tmfdata import A, WrongDegree, a_coefficient

__all__ = [
    "WeightMismatch",
    "ModZValue",
    "KOqClass",
    "pair_alpha",
    "pair_mf",
    "kl_matrix",
    "dual_basis_rows",
    "dual_basis_matrix",
    "bn_reduce",
    "bn_pair",
    "bn_generator",
    "UCMatrix",
    "pairing_matrix_U_C",
    "e2_pairing",
    "e2_pairings",
    "j_powers",
    "j_constant_terms",
    "j_divisibility",
    "torsion_duality_check",
]


class WeightMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ModZValue:
    """An element of ``Q/Z`` stored as its representative in ``[0, 1)``."""

    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        object.__setattr__(self, "value", v - math.floor(v))

    def order(self) -> int:
        return self.value.denominator

    def __add__(self, other: "ModZValue") -> "ModZValue":
        return ModZValue(self.value + other.value)

    def __mul__(self, n: int) -> "ModZValue":
        return ModZValue(self.value * n)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"{self.value} mod Z"


# -- classes modulo forms --------------------------------------------------


@dataclass(frozen=True)
class KOqClass:
    """A weight-``weight`` series modulo ``MF_weight`` (and modulo ``Z((q))`` if ``mod_z``).

    ``series`` is the canonical representative: every coefficient at an
    exponent that carries an ``i >= 0`` monomial has been eliminated
    (ascending in ``k``), and with ``mod_z`` the remaining coefficients
    lie in ``[0, 1)``.
    """

    series: QSeries
    weight: int
    mod_z: bool = False

    @classmethod
    def from_series(cls, s: QSeries, weight: int, mod_z: bool = False) -> "KOqClass":
        top = max_nonneg_k(weight)
        if s.prec <= top + 1:
            raise InsufficientPrecision(
                f"need coefficients past q^{top} to see anything modulo MF_{weight}"
            )
        residual = s
        for k in range(s.lead, top + 1):
            c = residual.coeff(k)
            if c:
                residual = residual - expand(monomial_of_weight(weight, k), s.prec).scale(c)
        coeffs = [residual.coeff(n) for n in range(top + 1, s.prec)]
        if mod_z:
            coeffs = [c - math.floor(c) for c in coeffs]
        return cls(QSeries(top + 1, s.prec, coeffs).normalized(), weight, mod_z)

    @classmethod
    def from_element(cls, e: MFElement, prec: int, mod_z: bool = False) -> "KOqClass":
        return cls.from_series(expand(e, prec), e.weight, mod_z)

    @property
    def prec(self) -> int:
        return self.series.prec

    def is_zero(self) -> bool:
        return self.series.is_zero()

    def order(self) -> int | None:
        """Order in ``Q((q)) / (MF_Q + Z((q)))``; ``None`` if not torsion (only for ``mod_z``)."""
        if not self.mod_z:
            return 1 if self.is_zero() else None
        return self.series.denominator

    def __add__(self, other: "KOqClass") -> "KOqClass":
        if self.weight != other.weight or self.mod_z != other.mod_z:
            raise WeightMismatch("classes live in different groups")
        return KOqClass.from_series(self.series + other.series, self.weight, self.mod_z)

    def scale(self, c: int | Fraction) -> "KOqClass":
        if self.mod_z and Fraction(c).denominator != 1:
            raise ValueError("only integer multiples are defined modulo Z")
        return KOqClass.from_series(self.series.scale(c), self.weight, self.mod_z)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KOqClass):
            return NotImplemented
        if (self.weight, self.mod_z) != (other.weight, other.mod_z):
            return False
        p = min(self.prec, other.prec)
        return self.series.truncate(p) == other.series.truncate(p)

    def __hash__(self):
        return hash((self.weight, self.mod_z))


Pairable = Union[MFElement, MFMonomial, KOqClass, QSeries]


def _lowest_k(x: Pairable) -> int:
    if isinstance(x, MFMonomial):
        return x.k
    if isinstance(x, MFElement):
        r = x.k_range()
        return 0 if r is None else r[0]
    if isinstance(x, KOqClass):
        return x.series.lead
    return x.lead


def _weight(x: Pairable) -> int | None:
    if isinstance(x, (MFElement, MFMonomial, KOqClass)):
        return x.weight
    return None


def _series(x: Pairable, prec: int) -> QSeries:
    if isinstance(x, (MFElement, MFMonomial)):
        return expand(x, prec)
    if isinstance(x, KOqClass):
        return x.series
    return x


def _residue(f: Pairable, g: Pairable, f_weight=None, g_weight=None, prec=None) -> Fraction:
    """``(D f g)|_{q^0}`` with weight checking.

    Forms are expanded to ``prec`` terms, or to just enough when ``prec``
    is None.
    """
    wf = _weight(f) if f_weight is None else f_weight
    wg = _weight(g) if g_weight is None else g_weight
    if wf is not None and wg is not None and wf + wg != -10:
        raise WeightMismatch(f"weights {wf} + {wg} != -10")
    kf, kg = _lowest_k(f), _lowest_k(g)
    # D*f*g at q^0 needs f up to q^(-1-kg) and g up to q^(-1-kf)
    need = max(1, -kf, -kg) + 1
    if prec is not None:
        if prec < need:
            raise InsufficientPrecision(f"pairing needs prec >= {need}, got {prec}")
        need = prec
    return constant_term_of_product(_delta_times(f, need), _series(g, need))


@lru_cache(maxsize=1024)
def _delta_times(f: Pairable, prec: int) -> QSeries:
    kf = _lowest_k(f)
    return _series(f, prec) * expand(DELTA, max(prec - kf + 1, 2))


def pair_mf(f: Pairable, g: Pairable, *, f_weight=None, g_weight=None, prec=None) -> Fraction:
    """Residue pairing ``(D f g)|_{q^0}``, no factor 1/2."""
    return _residue(f, g, f_weight, g_weight, prec)


def pair_alpha(f: Pairable, g: Pairable, *, f_weight=None, g_weight=None, prec=None) -> Fraction:
    """``(1/2)(D f g)|_{q^0}``, the normalisation where ``pi_{8k+4} KO = 2Z``."""
    return _residue(f, g, f_weight, g_weight, prec) / 2


def kl_matrix(n: int, prec: int | None = None) -> list[list[Fraction]]:
    """``pair_alpha(J^k / D, 2 (c6/c4) J^-l)`` for ``k, l = 0..n`` (rows ``k``)."""
    J = C4**3 * DELTA**-1
    c6_over_c4 = C6 * C4**-1
    rows = []
    for k in range(n + 1):
        f = J**k * DELTA**-1
        rows.append([pair_alpha(f, 2 * c6_over_c4 * J**-l, prec=prec) for l in range(n + 1)])
    return rows


# -- dual bases ------------------------------------------------------------


def dual_basis_rows(l: int, size: int) -> list[MFMonomial]:
    """The top ``size`` monomials of ``MF_{-2l-10}``, descending in ``k``."""
    w = -2 * l - 10
    top = max_nonneg_k(w)
    return [monomial_of_weight(w, top - a) for a in range(size)]


def dual_basis_matrix(l: int, size: int, prec: int | None = None) -> list[list[Fraction]]:
    """``M[a][b] = pair_mf(f_a, dual(f_b))``; lower unitriangular with ``k`` descending."""
    if size < 1:
        raise ValueError("size must be at least 1")
    rows = dual_basis_rows(l, size)
    return [[pair_mf(fa, fb.dual(), prec=prec) for fb in rows] for fa in rows]


def bn_reduce(x: QSeries, l: int) -> KOqClass:
    """Image of a rational weight-``2l`` series in ``Q((q)) / (MF_Q + Z((q)))``."""
    return KOqClass.from_series(x, 2 * l, mod_z=True)


def bn_pair(f: MFElement | MFMonomial, b: KOqClass) -> ModZValue:
    """Individual invariant ``<f, b>`` in ``Q/Z`` (residue convention)."""
    if b.weight + f.weight != -10:
        raise WeightMismatch(f"weights {f.weight} + {b.weight} != -10")
    return ModZValue(pair_mf(f, b))


def bn_generator(d: int, size: int = 8, prec: int | None = None) -> KOqClass:
    """The class detecting the generator of ``A_d`` for ``d = 24m + 3``.

    With ``k = -1 - m`` and ``a = 24/gcd(24, k)`` this is ``(1/a) sum z_b
    dual(f_b)`` where ``M z = e_0`` for the dual-basis matrix ``M``, so it
    pairs to ``1/a`` with ``D^k`` and to 0 with the next ``size - 1``
    basis forms.
    """
    if d % 24 != 3:
        raise WrongDegree(f"{d} is not 3 mod 24")
    m = (d - 3) // 24
    l = (d + 1) // 4
    k = -1 - m
    rows = dual_basis_rows(l, size)
    assert rows[0] == MFMonomial(0, 0, k)
    M = dual_basis_matrix(l, size)
    z: list[Fraction] = []
    for b in range(size):
        rhs = Fraction(int(b == 0)) - sum(M[b][c] * z[c] for c in range(b))
        z.append(rhs / M[b][b])
    a = a_coefficient(0, 0, k)
    if prec is None:
        prec = rows[-1].dual().k + 1
    x = MFElement({fb.dual(): zb / a for fb, zb in zip(rows, z)}, 2 * l)
    return bn_reduce(expand(x, prec), l)


# -- the free pairing U_d x C_{-d-20} ---------------------------------------


@dataclass(frozen=True)
class UCMatrix:
    d: int
    rows: list[str]
    cols: list[str]
    matrix: list[list[Fraction]]
    diagonal: list[Fraction]
    perfect: bool
    verdict: str

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "rows": self.rows,
            "cols": self.cols,
            "matrix": [[str(x) for x in row] for row in self.matrix],
            "diagonal": [str(x) for x in self.diagonal],
            "perfect": self.perfect,
            "verdict": self.verdict,
        }


def pairing_matrix_U_C(d: int, size: int) -> UCMatrix:
    """``pair_alpha`` between scaled generators of ``U_d`` and dual classes in degree ``-d-20``."""
    if d % 4:
        raise WrongDegree(f"{d} is not 0 mod 4")
    if size < 1:
        raise ValueError("size must be at least 1")
    w = d // 2
    top = max_nonneg_k(w)
    basis = [monomial_of_weight(w, top - a) for a in range(size)]
    row_scale = [a_coefficient(m.i, m.j, m.k) for m in basis]
    col_scale = 2 if (-d - 20) % 8 == 4 else 1
    mat = [
        [pair_alpha(MFElement({m: sa}), MFElement({n.dual(): col_scale})) for n in basis]
        for m, sa in zip(basis, row_scale)
    ]
    diag = [mat[a][a] for a in range(size)]
    upper_zero = all(mat[a][b] == 0 for a in range(size) for b in range(a + 1, size))
    integral = all(x.denominator == 1 for row in mat for x in row)
    defects = [(str(basis[a]), diag[a]) for a in range(size) if abs(diag[a]) != 1]
    perfect = upper_zero and integral and not defects
    if perfect:
        verdict = "unimodular triangular: perfect on this window"
        if d % 24 == 4:
            verdict += "; C_{-d-20} has torsion in this degree, so the splitting needs care"
    elif not upper_zero or not integral:
        verdict = "not triangular over Z"
    else:
        verdict = "diagonal defect " + ", ".join(f"{x} at {s}" for s, x in defects)
    return UCMatrix(
        d,
        [f"{s}*{m}" if s != 1 else str(m) for m, s in zip(basis, row_scale)],
        [f"{col_scale}*{n.dual()}" if col_scale != 1 else str(n.dual()) for n in basis],
        mat,
        diag,
        perfect,
        verdict,
    )


# -- degree-4 checks ---------------------------------------------------------


def j_powers(k_max: int, prec: int = 1) -> list[QSeries]:
    """``[J^1, ..., J^k_max]``, each known modulo ``q^prec``."""
    # J^k has lead -k; each product loses one term of relative precision
    J = j_series(prec + k_max)
    out = [J]
    for _ in range(1, k_max):
        out.append(out[-1] * J)
    return [p.truncate(prec) for p in out]


def e2_pairings(k_max: int, prec: int = 1) -> list[Fraction]:
    """``(J^k E2 / 24)|_{q^0}`` for ``k = 0..k_max``."""
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    e2 = e2_series(max(prec, 1) + k_max)
    out = [constant_term(e2) / 24]
    for jk in j_powers(k_max, prec) if k_max else []:
        out.append(constant_term_of_product(jk, e2) / 24)
    return out


def e2_pairing(k: int, prec: int = 1) -> Fraction:
    """``(J^k E2 / 24)|_{q^0}``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return e2_pairings(k, prec)[k]


def j_constant_terms(k_max: int, prec: int = 1) -> list[int]:
    """``J^k|_{q^0}`` for ``k = 1..k_max``."""
    out = []
    for jk in j_powers(k_max, prec):
        c = constant_term(jk)
        assert c.denominator == 1
        out.append(int(c))
    return out


def j_divisibility(k_max: int, prec: int = 1) -> list[int]:
    """``J^k|_{q^0} mod 24`` for ``k = 1..k_max``."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    return [c % 24 for c in j_constant_terms(k_max, prec)]


# -- torsion duality ---------------------------------------------------------


@dataclass(frozen=True)
class DualityReport:
    window: tuple[int, int]
    pairs: list[tuple[int, int, int, int]]  # d, |A_d|, -d-22, |A_{-d-22}|
    violations: list[tuple[int, int, int, int]]

    @property
    def ok(self) -> bool:
        return not self.violations


def torsion_duality_check(lo: int, hi: int) -> DualityReport:
    """Compare ``|A_d|`` and ``|A_{-d-22}|`` for ``lo <= d <= hi``, skipping ``d = 3, -1 mod 24``."""
    pairs, bad = [], []
    for d in range(lo, hi + 1):
        if d % 24 in (3, 23):
            continue
        e = -d - 22
        row = (d, A(d).order(), e, A(e).order())
        pairs.append(row)
        if row[1] != row[3]:
            bad.append(row)
    return DualityReport((lo, hi), pairs, bad)


def perfect_torsion_pairing(d: int) -> bool:
    """Abstract isomorphism ``A_d = Hom(A_{-d-22}, Q/Z)`` (finite groups are self-dual)."""
    return A(d) == A(-d - 22)
