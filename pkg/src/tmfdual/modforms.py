"""The rings mf and MF of (weakly holomorphic) level-one modular forms.

Elements are exact linear combinations of monomials ``c4^i c6^j D^k`` with
``j`` in {0, 1}; ``D`` is the discriminant.  Weights are modular weights
(``c4`` has weight 4), so a homogeneous element of weight ``w`` lives in
topological degree ``2w``.  Products are brought back to the ``j <= 1``
normal form with ``c6^2 = c4^3 - 1728 D``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .qseries import (
    QSeries,
    InsufficientPrecision,
    constant_term,
    divisor_sigma,
    eta_power_normalized,
    mul,
)

__all__ = [
    "MFMonomial",
    "MFElement",
    "OddWeight",
    "Reduction",
    "c4_series",
    "c6_series",
    "delta_series",
    "j_series",
    "e2_series",
    "theta_e8",
    "expand",
    "monomial_of_weight",
    "basis",
    "reduce_to_basis",
    "weight2_constant_terms",
    "C4",
    "C6",
    "DELTA",
    "ONE",
]


class OddWeight(ValueError):
    """Level-one forms only exist in even weight."""


@dataclass(frozen=True, order=True)
class MFMonomial:
    """``c4^i c6^j D^k`` with ``j`` in {0, 1}."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        if self.j not in (0, 1):
            raise ValueError(f"c6 exponent must be 0 or 1, got {self.j}")

    @property
    def weight(self) -> int:
        return 4 * self.i + 6 * self.j + 12 * self.k

    @property
    def nonneg(self) -> bool:
        """Member of the holomorphic-in-c4 half (``i >= 0``), i.e. of MF itself."""
        return self.i >= 0

    def dual(self) -> "MFMonomial":
        """The involution ``c4^i c6^j D^k -> c4^(-1-i) c6^(1-j) D^(-1-k)``.

        Maps weight ``w`` to ``-w - 10``.
        """
        return MFMonomial(-1 - self.i, 1 - self.j, -1 - self.k)

    def __str__(self) -> str:
        parts = []
        for name, e in (("c4", self.i), ("c6", self.j), ("D", self.k)):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


def monomial_of_weight(weight: int, k: int) -> MFMonomial:
    """The unique ``c4^i c6^j D^k`` of the given weight and ``D``-exponent."""
    if weight % 2:
        raise OddWeight(f"weight {weight} is odd")
    rest = weight - 12 * k
    j = 0 if rest % 4 == 0 else 1
    return MFMonomial((rest - 6 * j) // 4, j, k)


class MFElement:
    """Homogeneous exact combination of :class:`MFMonomial` terms."""

    __slots__ = ("_terms", "_weight")

    def __init__(self, terms: Mapping[MFMonomial, int | Fraction] | None = None, weight: int | None = None):
        clean: dict[MFMonomial, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, Fraction(0)) + c
        clean = {m: c for m, c in clean.items() if c}
        weights = {m.weight for m in clean}
        if len(weights) > 1:
            raise ValueError(f"inhomogeneous element, weights {sorted(weights)}")
        if weights:
            w = weights.pop()
            if weight is not None and weight != w:
                raise ValueError(f"declared weight {weight} but terms have weight {w}")
            weight = w
        if weight is None:
            raise ValueError("the zero element needs an explicit weight")
        self._terms = dict(sorted(clean.items(), key=lambda kv: kv[0].k))
        self._weight = weight

    @classmethod
    def from_monomial(cls, m: MFMonomial, coeff: int | Fraction = 1) -> "MFElement":
        return cls({m: coeff})

    @classmethod
    def scalar(cls, c: int | Fraction) -> "MFElement":
        return cls({MFMonomial(0, 0, 0): c}, weight=0)

    @property
    def weight(self) -> int:
        return self._weight

    @property
    def terms(self) -> dict[MFMonomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def in_mf(self) -> bool:
        """No term has a negative power of ``c4``."""
        return all(m.nonneg for m in self._terms)

    def k_range(self) -> tuple[int, int] | None:
        if not self._terms:
            return None
        ks = [m.k for m in self._terms]
        return min(ks), max(ks)

    def as_monomial(self) -> tuple[MFMonomial, Fraction] | None:
        if len(self._terms) != 1:
            return None
        (m, c), = self._terms.items()
        return m, c

    # ring structure

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MFElement.scalar(other)
        if not isinstance(other, MFElement):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self._weight != other._weight:
            raise ValueError(f"cannot add weights {self._weight} and {other._weight}")
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return MFElement(terms, self._weight)

    __radd__ = __add__

    def __neg__(self):
        return MFElement({m: -c for m, c in self._terms.items()}, self._weight)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MFElement.scalar(other)
        if not isinstance(other, MFElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MFElement({m: c * other for m, c in self._terms.items()}, self._weight)
        if not isinstance(other, MFElement):
            return NotImplemented
        terms: dict[MFMonomial, Fraction] = {}
        for m1, a in self._terms.items():
            for m2, b in other._terms.items():
                for m, c in _monomial_product(m1, m2):
                    terms[m] = terms.get(m, Fraction(0)) + a * b * c
        return MFElement(terms, self._weight + other._weight)

    __rmul__ = __mul__

    def inverse_monomial(self) -> "MFElement":
        """Inverse of a single ``c4^i D^k`` term (``c6`` is not invertible here)."""
        mc = self.as_monomial()
        if mc is None or mc[0].j != 0:
            raise ValueError("only scalar multiples of c4^i D^k are invertible")
        m, c = mc
        return MFElement({MFMonomial(-m.i, 0, -m.k): 1 / c})

    def __pow__(self, n: int) -> "MFElement":
        if n < 0:
            return self.inverse_monomial() ** (-n)
        out = MFElement.scalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MFElement.scalar(other)
        if not isinstance(other, MFElement):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self._weight == other._weight and self._terms == other._terms

    def __hash__(self):
        return hash((self._weight, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"MFElement({self}, weight={self._weight})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for m, c in self._terms.items():
            ms = str(m)
            if ms == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = ms
            else:
                body = f"{abs(c)}*{ms}"
            out.append(("-" if c < 0 else "+", body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def to_json(self) -> dict:
        return {
            "weight": self._weight,
            "terms": [
                {"i": m.i, "j": m.j, "k": m.k, "coeff": str(c)} for m, c in self._terms.items()
            ],
        }


def _monomial_product(m1: MFMonomial, m2: MFMonomial) -> list[tuple[MFMonomial, int]]:
    i, j, k = m1.i + m2.i, m1.j + m2.j, m1.k + m2.k
    if j < 2:
        return [(MFMonomial(i, j, k), 1)]
    # c6^2 = c4^3 - 1728 D
    return [(MFMonomial(i + 3, 0, k), 1), (MFMonomial(i, 0, k + 1), -1728)]


ONE = MFElement.scalar(1)
C4 = MFElement.from_monomial(MFMonomial(1, 0, 0))
C6 = MFElement.from_monomial(MFMonomial(0, 1, 0))
DELTA = MFElement.from_monomial(MFMonomial(0, 0, 1))


# -- q-expansions ----------------------------------------------------------


@lru_cache(maxsize=32)
def c4_series(prec: int) -> QSeries:
    """``1 + 240 sum sigma_3(n) q^n``."""
    return QSeries.from_ints(0, [1] + [240 * divisor_sigma(3, n) for n in range(1, prec)], prec)


@lru_cache(maxsize=32)
def c6_series(prec: int) -> QSeries:
    """``1 - 504 sum sigma_5(n) q^n``."""
    return QSeries.from_ints(0, [1] + [-504 * divisor_sigma(5, n) for n in range(1, prec)], prec)


def delta_series(prec: int) -> QSeries:
    """``q prod (1-q^n)^24`` modulo ``q^prec``."""
    if prec <= 1:
        return QSeries.zero(prec)
    return eta_power_normalized(24, prec - 1).shift(1)


@lru_cache(maxsize=32)
def j_series(prec: int) -> QSeries:
    """``J = c4^3 / D = q^-1 + 744 + 196884 q + ...`` modulo ``q^prec``."""
    n = prec + 1
    c4 = c4_series(n)
    return (c4 * c4 * c4) / delta_series(n + 1)


@lru_cache(maxsize=32)
def e2_series(prec: int) -> QSeries:
    """The quasi-modular ``E2 = 1 - 24 sum sigma_1(n) q^n``."""
    return QSeries.from_ints(0, [1] + [-24 * divisor_sigma(1, n) for n in range(1, prec)], prec)


def theta_e8(prec: int) -> QSeries:
    """Theta series of the E8 lattice, from Jacobi theta functions.

    ``(theta2^8 + theta3^8 + theta4^8) / 2`` in the variable ``x = q^(1/2)``;
    only even powers of ``x`` survive.
    """
    n = 2 * prec  # exponents in x
    m = 0
    while m * m < n:
        m += 1
    t3 = [0] * n
    t4 = [0] * n
    for a in range(-m, m + 1):
        e = a * a
        if e < n:
            t3[e] += 1
            t4[e] += -1 if a % 2 else 1
    # theta2 = sum x^((a+1/2)^2 * ... ) with x = q^(1/2):  (a+1/2)^2 = a^2 + a + 1/4,
    # so theta2^8 = x^2 * (sum_a x^(a^2+a))^8
    t2 = [0] * n
    for a in range(-m - 1, m + 1):
        e = a * a + a
        if 0 <= e < n:
            t2[e] += 1
    s3 = QSeries.from_ints(0, t3, n) ** 8
    s4 = QSeries.from_ints(0, t4, n) ** 8
    s2 = (QSeries.from_ints(0, t2, n) ** 8).shift(2).truncate(n)
    tot = (s2 + s3 + s4).scale(Fraction(1, 2))
    coeffs = []
    for e in range(0, n, 2):
        if tot.coeff(e + 1) != 0:
            raise AssertionError("odd power of q^(1/2) in the E8 theta series")
        coeffs.append(tot.coeff(e))
    return QSeries(0, prec, coeffs)


_BLOCK = 64


@lru_cache(maxsize=512)
def _c4_power(i: int, n: int) -> QSeries:
    if i == 0:
        return QSeries.one(n)
    if i == 1:
        return c4_series(n)
    if i == -1:
        return QSeries.one(n) / c4_series(n)
    step = 1 if i > 0 else -1
    half = _c4_power(i // 2 if i > 0 else -((-i) // 2), n)
    sq = mul(half, half)
    return mul(sq, _c4_power(step, n)) if i % 2 else sq


@lru_cache(maxsize=2048)
def _power_part(i: int, j: int, k: int, n: int) -> QSeries:
    s = _c4_power(i, n)
    if j:
        s = mul(s, c6_series(n))
    if k:
        s = mul(s, eta_power_normalized(24 * k, n))
    return s


def _monomial_series(m: MFMonomial, prec: int) -> QSeries:
    n = prec - m.k  # terms needed from the power-series part
    if n <= 0:
        return QSeries.zero(prec)
    # share work between nearby precisions
    block = -(-n // _BLOCK) * _BLOCK
    return _power_part(m.i, m.j, m.k, block).truncate(n).shift(m.k)


def expand(e: MFElement | MFMonomial, prec: int) -> QSeries:
    """Exact q-expansion of ``e`` modulo ``q^prec``."""
    if prec < 1:
        raise ValueError("prec must be at least 1")
    if isinstance(e, MFMonomial):
        return _monomial_series(e, prec)
    out = None
    lo = e.k_range()
    if lo is None:
        return QSeries.zero(prec)
    for m, c in e.items():
        s = _monomial_series(m, prec).extend_down(lo[0])
        s = s.scale(c)
        out = s if out is None else out + s
    return out


# -- weight-graded bases ---------------------------------------------------


def basis(weight: int, k_min: int, k_max: int) -> list[MFMonomial]:
    """One monomial per ``D``-exponent ``k_min..k_max``, ascending in ``k``."""
    if weight % 2:
        raise OddWeight(f"weight {weight} is odd")
    return [monomial_of_weight(weight, k) for k in range(k_min, k_max + 1)]


def max_nonneg_k(weight: int) -> int:
    """Largest ``k`` whose weight-``weight`` monomial has ``i >= 0``."""
    k = weight // 12 + 1
    while monomial_of_weight(weight, k).i < 0:
        k -= 1
    return k


@dataclass(frozen=True)
class Reduction:
    """Coordinates of a q-series in the monomial basis of one weight.

    ``coords[k]`` is the coefficient of the weight-``weight`` monomial with
    ``D``-exponent ``k``; the expansion is exact modulo ``q^prec``.
    """

    weight: int
    coords: dict[int, Fraction]
    prec: int

    def element(self) -> MFElement:
        return MFElement(
            {monomial_of_weight(self.weight, k): c for k, c in self.coords.items()}, self.weight
        )

    def mf_part(self) -> MFElement:
        return MFElement(
            {m: c for m, c in self.element().items() if m.nonneg}, self.weight
        )

    def non_mf_part(self) -> MFElement:
        return MFElement(
            {m: c for m, c in self.element().items() if not m.nonneg}, self.weight
        )

    def in_mf(self) -> bool:
        return self.non_mf_part().is_zero()


def reduce_to_basis(s: QSeries, weight: int, k_max: int | None = None) -> Reduction:
    """Triangular elimination of ``s`` against the weight-``weight`` monomials.

    The monomial with ``D``-exponent ``k`` starts ``q^k + ...``, so the
    coefficients are read off from the lowest exponent upwards.  Elimination
    stops at ``k_max`` (default: the last known exponent).
    """
    if weight % 2:
        raise OddWeight(f"weight {weight} is odd")
    if s.prec <= s.lead:
        raise InsufficientPrecision("series carries no known coefficients")
    top = s.prec - 1 if k_max is None else min(k_max, s.prec - 1)
    coords: dict[int, Fraction] = {}
    residual = s
    for k in range(s.lead, top + 1):
        c = residual.coeff(k)
        if c:
            coords[k] = c
            residual = residual - expand(monomial_of_weight(weight, k), s.prec).scale(c)
    return Reduction(weight, coords, top + 1)


def weight2_constant_terms(t_max: int, prec: int | None = None) -> list[Fraction]:
    """Constant terms of ``c4^(3t+2) c6 D^(-1-t)`` for ``t = 0..t_max``."""
    if t_max < 0:
        raise ValueError("t_max must be non-negative")
    out = []
    for t in range(t_max + 1):
        m = MFMonomial(3 * t + 2, 1, -1 - t)
        out.append(constant_term(expand(m, prec if prec is not None else 1)))
    return out
