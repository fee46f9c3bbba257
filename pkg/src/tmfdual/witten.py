"""Truncated characteristic-class algebra for the Witten genus integrand.

A real bundle of rank ``2r`` has formal Chern roots ``+-x_1 .. +-x_r``.
Everything here is symmetric in the ``x_i`` and even in each of them, so
classes up to cohomological degree 8 are polynomials in the power sums

    s2 = sum x_i^2   (= p1, degree 4)
    s4 = sum x_i^4   (= p1^2 - 2 p2, degree 8)

with q-series coefficients.  Both factors of the integrand are computed
as ``exp`` of a sum of per-root logarithms, which is exact and makes the
dependence on the rank explicit: with one root ``s4 = s2^2``, with none
everything above degree 0 vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .qseries import QSeries, divisor_sigma

__all__ = [
    "UnsupportedDegree",
    "NotDivisible",
    "CharSeries",
    "Factorization",
    "a_hat",
    "wit_ch",
    "genus_integrand",
    "factor_p1",
    "lambda_constant",
    "AHAT_LOG",
]

Monomial = tuple[int, int]  # (a, b) for s2^a s4^b

SUPPORTED_DEGREES = (0, 4, 8)

# log((x/2) / sinh(x/2)) = -x^2/24 + x^4/2880 - ...
AHAT_LOG = {1: Fraction(-1, 24), 2: Fraction(1, 2880)}


class UnsupportedDegree(ValueError):
    pass


class NotDivisible(ValueError):
    def __init__(self, monomial: str):
        super().__init__(f"{monomial} is not divisible by p1/2")
        self.monomial = monomial


def _degree(m: Monomial) -> int:
    return 4 * m[0] + 8 * m[1]


def _name(m: Monomial) -> str:
    parts = []
    for sym, e in (("s2", m[0]), ("s4", m[1])):
        if e == 1:
            parts.append(sym)
        elif e:
            parts.append(f"{sym}^{e}")
    return "*".join(parts) if parts else "1"


def _check_degree(D: int) -> None:
    if D not in SUPPORTED_DEGREES:
        raise UnsupportedDegree(f"degree {D} not in {SUPPORTED_DEGREES}")


@dataclass(frozen=True)
class CharSeries:
    """Class truncated above cohomological degree ``degree``.

    ``roots`` is the number ``r`` of root pairs, or ``None`` for the
    stable range where ``s2`` and ``s4`` are independent.
    """

    degree: int
    prec: int
    terms: dict[Monomial, QSeries] = field(default_factory=dict)
    roots: int | None = None

    def __post_init__(self):
        _check_degree(self.degree)
        clean = {}
        for m, s in self.terms.items():
            m = self._reduce_monomial(m)
            if m is None or _degree(m) > self.degree:
                continue
            s = s.truncate(self.prec)
            clean[m] = clean[m] + s if m in clean else s
        clean = {m: s for m, s in sorted(clean.items(), key=lambda kv: (_degree(kv[0]), kv[0])) if not s.is_zero()}
        object.__setattr__(self, "terms", clean)

    def _reduce_monomial(self, m: Monomial) -> Monomial | None:
        if self.roots == 0 and m != (0, 0):
            return None
        if self.roots == 1 and m[1]:
            return (m[0] + 2 * m[1], 0)
        return m

    @classmethod
    def constant(cls, degree: int, prec: int, c=1, roots: int | None = None) -> "CharSeries":
        return cls(degree, prec, {(0, 0): QSeries.monomial(0, prec, c)}, roots)

    def coefficient(self, m: Monomial) -> QSeries:
        return self.terms.get(m, QSeries.zero(self.prec))

    def part(self, deg: int) -> dict[Monomial, QSeries]:
        return {m: s for m, s in self.terms.items() if _degree(m) == deg}

    def _compatible(self, other: "CharSeries") -> tuple[int, int, int | None]:
        if self.roots is not None and other.roots is not None and self.roots != other.roots:
            raise ValueError("cannot combine classes for different numbers of roots")
        roots = self.roots if self.roots is not None else other.roots
        return min(self.degree, other.degree), min(self.prec, other.prec), roots

    def __add__(self, other: "CharSeries") -> "CharSeries":
        D, p, r = self._compatible(other)
        terms = dict(self.terms)
        for m, s in other.terms.items():
            terms[m] = terms[m] + s if m in terms else s
        return CharSeries(D, p, terms, r)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CharSeries(self.degree, self.prec, {m: s.scale(other) for m, s in self.terms.items()}, self.roots)
        D, p, r = self._compatible(other)
        terms: dict[Monomial, QSeries] = {}
        for m1, s1 in self.terms.items():
            for m2, s2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1])
                if _degree(m) > D:
                    continue
                prod = (s1 * s2).truncate(p)
                terms[m] = terms[m] + prod if m in terms else prod
        return CharSeries(D, p, terms, r)

    __rmul__ = __mul__

    def exp(self) -> "CharSeries":
        """``exp`` of a class with vanishing degree-0 part (a finite sum here)."""
        if (0, 0) in self.terms:
            raise ValueError("exp needs a nilpotent argument")
        out = CharSeries.constant(self.degree, self.prec, 1, self.roots)
        power = out
        for n in range(1, self.degree // 4 + 1):
            power = power * self
            out = out + power * Fraction(1, factorial(n))
        return out

    def restrict(self, roots: int) -> "CharSeries":
        return CharSeries(self.degree, self.prec, self.terms, roots)

    def pontryagin(self) -> dict[str, QSeries]:
        """Rewrite with ``s2 = p1`` and ``s4 = p1^2 - 2 p2``."""
        out: dict[str, QSeries] = {}

        def acc(key, s):
            out[key] = out[key] + s if key in out else s

        for (a, b), s in self.terms.items():
            if b == 0:
                acc("1" if a == 0 else ("p1" if a == 1 else f"p1^{a}"), s)
            elif (a, b) == (0, 1):
                acc("p1^2", s)
                acc("p2", s.scale(-2))
            else:  # pragma: no cover - outside degree 8
                raise UnsupportedDegree("only degree <= 8 is supported")
        return {k: v for k, v in out.items() if not v.is_zero()}

    def denominators(self) -> set[int]:
        return {s.denominator for s in self.terms.values()}

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "prec": self.prec,
            "roots": self.roots,
            "terms": [
                {"monomial": _name(m), "degree": _degree(m), "series": s.to_json()}
                for m, s in self.terms.items()
            ],
        }

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        return "\n".join(f"[{_name(m)}] {s.to_text()}" for m, s in self.terms.items())


def _roots(d_rank: int) -> int:
    if d_rank < 0 or d_rank % 2:
        raise ValueError(f"rank must be even and non-negative, got {d_rank}")
    return d_rank // 2


def a_hat(D: int, prec: int = 1, roots: int | None = None) -> CharSeries:
    """``prod (x_i/2)/sinh(x_i/2)``; constant in ``q``."""
    _check_degree(D)
    log = CharSeries(
        D,
        prec,
        {(1, 0): QSeries.monomial(0, prec, AHAT_LOG[1]), (0, 1): QSeries.monomial(0, prec, AHAT_LOG[2])},
        roots,
    )
    return log.exp()


def _wit_log(D: int, prec: int, roots: int | None) -> CharSeries:
    # per root pair: sum_{n,m} q^{nm} (2 cosh(m x) - 2) / m
    #   = sum_k x^{2k} * 2/(2k)! * sum_N sigma_{2k-1}(N) q^N
    terms = {}
    for k, m in ((1, (1, 0)), (2, (0, 1))):
        c = Fraction(2, factorial(2 * k))
        coeffs = [0] + [c * divisor_sigma(2 * k - 1, N) for N in range(1, prec)]
        terms[m] = QSeries(0, prec, coeffs)
    return CharSeries(D, prec, terms, roots)


def wit_ch(d_rank: int, D: int, prec: int) -> CharSeries:
    """``ch`` of ``prod_n (1-q^n)^d (+)_k q^(nk) Sym^k V`` for ``V`` of rank ``d_rank``."""
    _check_degree(D)
    if prec < 2:
        raise ValueError("prec must be at least 2")
    r = _roots(d_rank)
    return _wit_log(D, prec, r).exp()


def genus_integrand(d_rank: int, D: int, prec: int) -> CharSeries:
    """``A-hat * ch(Wit)`` truncated at degree ``D``."""
    r = _roots(d_rank)
    return a_hat(D, prec, r) * wit_ch(d_rank, D, prec)


@dataclass(frozen=True)
class Factorization:
    quotient: CharSeries
    remainder: CharSeries


def factor_p1(cs: CharSeries, strict: bool = False) -> Factorization:
    """Write ``cs = (p1/2) * quotient + remainder`` with ``remainder`` free of ``s2``.

    The quotient is known to four degrees less than ``cs``.  With ``strict``
    any positive-degree remainder raises :class:`NotDivisible`.
    """
    qdeg = max(cs.degree - 4, 0)
    quot: dict[Monomial, QSeries] = {}
    rem: dict[Monomial, QSeries] = {}
    for (a, b), s in cs.terms.items():
        if a >= 1:
            quot[(a - 1, b)] = s.scale(2)
        else:
            rem[(a, b)] = s
    if strict:
        for m, s in rem.items():
            if _degree(m) > 0:
                raise NotDivisible(_name(m))
    return Factorization(
        CharSeries(qdeg, cs.prec, quot, cs.roots),
        CharSeries(cs.degree, cs.prec, rem, cs.roots),
    )


def lambda_constant(d_rank: int = 4, prec: int = 32) -> Fraction:
    """The rational ``lambda`` with ``degree-4 part = lambda * E2 * p1``."""
    part = genus_integrand(d_rank, 4, prec).coefficient((1, 0))
    return part.coeff(0)
