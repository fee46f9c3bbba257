"""Truncated Laurent series in q with exact rational coefficients.

A :class:`QSeries` stores the coefficients of ``q^lead, ..., q^(prec-1)`` and
is known modulo ``q^prec``.  Coefficients below ``lead`` are exactly zero.
Internally the coefficients are kept as a tuple of integer numerators over a
single positive denominator, so integral series multiply with plain ``int``
arithmetic.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
from fractions import Fraction
from functools import lru_cache
from operator import mul as _mul
from typing import Iterable, Iterator, Sequence, Union

Number = Union[int, Fraction]

__all__ = [
    "QSeries",
    "InsufficientPrecision",
    "ZeroLeadingCoefficient",
    "add",
    "sub",
    "mul",
    "div",
    "pow",
    "constant_term",
    "constant_term_of_product",
    "eta_power_normalized",
    "divisor_sigma",
    "multiplication_algorithm",
    "DEFAULT_PREC",
]

DEFAULT_PREC = 256

_KARATSUBA_CUTOFF = 48
_mul_algorithm: contextvars.ContextVar[str] = contextvars.ContextVar(
    "tmfdual_mul_algorithm", default="naive"
)


class InsufficientPrecision(ValueError):
    """A requested coefficient lies at or beyond the known precision."""


class ZeroLeadingCoefficient(ZeroDivisionError):
    """The divisor's lowest stored coefficient is zero."""


@contextlib.contextmanager
def multiplication_algorithm(name: str) -> Iterator[None]:
    """Select the convolution used by :func:`mul` inside a ``with`` block.

    ``"naive"`` is the quadratic schoolbook product, ``"karatsuba"`` the
    divide-and-conquer one.  Both produce identical coefficients.
    """
    if name not in ("naive", "karatsuba"):
        raise ValueError(f"unknown multiplication algorithm {name!r}")
    token = _mul_algorithm.set(name)
    try:
        yield
    finally:
        _mul_algorithm.reset(token)


# -- integer convolution kernels -------------------------------------------


def _conv_naive(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of the product of ``a`` and ``b``."""
    la, lb = len(a), len(b)
    if not la or not lb or n <= 0:
        return [0] * max(n, 0)
    rb = list(reversed(b))
    out = []
    for m in range(n):
        lo = max(0, m - lb + 1)
        hi = min(m, la - 1)
        if lo > hi:
            out.append(0)
            continue
        # rb[lb-1-j] == b[j]; we need b[m-i] for i in lo..hi
        out.append(sum(map(_mul, a[lo : hi + 1], rb[lb - 1 - m + lo : lb - m + hi])))
    return out


def _karatsuba_full(a: list[int], b: list[int]) -> list[int]:
    la, lb = len(a), len(b)
    if la < _KARATSUBA_CUTOFF or lb < _KARATSUBA_CUTOFF:
        return _conv_naive(a, b, la + lb - 1) if la and lb else []
    h = max(la, lb) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _karatsuba_full(a0, b0)
    z2 = _karatsuba_full(a1, b1) if a1 and b1 else []
    sa = _padd(a0, a1)
    sb = _padd(b0, b1)
    z1 = _karatsuba_full(sa, sb)
    z1 = _psub(_psub(z1, z0), z2)
    out = [0] * (la + lb - 1)
    for i, v in enumerate(z0):
        out[i] += v
    for i, v in enumerate(z1):
        out[i + h] += v
    for i, v in enumerate(z2):
        out[i + 2 * h] += v
    return out


def _padd(x: list[int], y: list[int]) -> list[int]:
    if len(x) < len(y):
        x, y = y, x
    out = list(x)
    for i, v in enumerate(y):
        out[i] += v
    return out


def _psub(x: list[int], y: list[int]) -> list[int]:
    out = list(x) + [0] * max(0, len(y) - len(x))
    for i, v in enumerate(y):
        out[i] -= v
    return out


def _convolve(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    if _mul_algorithm.get() == "karatsuba":
        full = _karatsuba_full(list(a[:n]), list(b[:n]))
        full = full[:n]
        return full + [0] * (n - len(full))
    return _conv_naive(a, b, n)


# -- the series type -------------------------------------------------------


def _as_fraction(x: Number | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


class QSeries:
    """Truncated Laurent series ``sum c_n q^n + O(q^prec)``.

    Instances are immutable.  Arithmetic follows the pessimistic precision
    rules: sums are known to the smaller precision, products to
    ``min(a.lead + b.prec, b.lead + a.prec)``.
    """

    __slots__ = ("_lead", "_prec", "_num", "_den")

    def __init__(self, lead: int, prec: int, coeffs: Iterable[Number | str] = ()):
        fr = [_as_fraction(c) for c in coeffs]
        if prec < lead:
            raise ValueError(f"prec {prec} below lead {lead}")
        if len(fr) != prec - lead:
            raise ValueError(
                f"expected {prec - lead} coefficients for [{lead}, {prec}), got {len(fr)}"
            )
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = tuple(c.numerator * (den // c.denominator) for c in fr)
        self._set(lead, prec, num, den)

    def _set(self, lead: int, prec: int, num: tuple[int, ...], den: int) -> None:
        if den != 1:
            g = math.gcd(den, *num) if num else den
            if g > 1:
                num = tuple(x // g for x in num)
                den //= g
        object.__setattr__(self, "_lead", lead)
        object.__setattr__(self, "_prec", prec)
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    @classmethod
    def _raw(cls, lead: int, prec: int, num: Sequence[int], den: int = 1) -> "QSeries":
        obj = object.__new__(cls)
        obj._set(lead, prec, tuple(num), den)
        return obj

    # construction helpers

    @classmethod
    def from_ints(cls, lead: int, coeffs: Sequence[int], prec: int | None = None) -> "QSeries":
        """Integer series starting at ``q^lead``; ``prec`` defaults to the end of ``coeffs``."""
        coeffs = list(coeffs)
        if prec is None:
            prec = lead + len(coeffs)
        if prec - lead > len(coeffs):
            coeffs += [0] * (prec - lead - len(coeffs))
        return cls._raw(lead, prec, coeffs[: prec - lead])

    @classmethod
    def monomial(cls, n: int, prec: int, coeff: Number = 1) -> "QSeries":
        """``coeff * q^n + O(q^prec)``."""
        if prec <= n:
            return cls.zero(prec)
        c = _as_fraction(coeff)
        num = [0] * (prec - n)
        num[0] = c.numerator
        return cls._raw(n, prec, num, c.denominator)

    @classmethod
    def zero(cls, prec: int) -> "QSeries":
        """The series ``O(q^prec)``."""
        return cls._raw(prec, prec, ())

    @classmethod
    def one(cls, prec: int) -> "QSeries":
        return cls.monomial(0, prec)

    # accessors

    @property
    def lead(self) -> int:
        return self._lead

    @property
    def prec(self) -> int:
        return self._prec

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_integral(self) -> bool:
        return self._den == 1

    def is_zero(self) -> bool:
        """True if every known coefficient vanishes."""
        return not any(self._num)

    def __len__(self) -> int:
        return self._prec - self._lead

    def coeff(self, n: int) -> Fraction:
        """Coefficient of ``q^n``; exponents below ``lead`` are exactly zero."""
        if n >= self._prec:
            raise InsufficientPrecision(f"q^{n} is beyond the known precision O(q^{self._prec})")
        if n < self._lead:
            return Fraction(0)
        return Fraction(self._num[n - self._lead], self._den)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeff(n)

    def valuation(self) -> int | None:
        """Exponent of the first nonzero known coefficient, or ``None``."""
        for i, x in enumerate(self._num):
            if x:
                return self._lead + i
        return None

    def normalized(self) -> "QSeries":
        """Same series with leading stored zeros dropped."""
        v = self.valuation()
        if v is None:
            return QSeries.zero(self._prec)
        return QSeries._raw(v, self._prec, self._num[v - self._lead :], self._den)

    def truncate(self, prec: int) -> "QSeries":
        """Forget everything from ``q^prec`` on (no-op if already coarser)."""
        if prec >= self._prec:
            return self
        if prec <= self._lead:
            return QSeries.zero(prec)
        return QSeries._raw(self._lead, prec, self._num[: prec - self._lead], self._den)

    def extend_down(self, lead: int) -> "QSeries":
        """Same series with explicit zeros stored from ``q^lead`` on."""
        if lead >= self._lead:
            return self
        return QSeries._raw(lead, self._prec, (0,) * (self._lead - lead) + self._num, self._den)

    def shift(self, n: int) -> "QSeries":
        """Multiply by ``q^n`` exactly."""
        return QSeries._raw(self._lead + n, self._prec + n, self._num, self._den)

    # arithmetic

    def __add__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries._raw(self._lead, self._prec, tuple(-x for x in self._num), self._den)

    def __sub__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return NotImplemented
        return add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, QSeries):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        if isinstance(other, QSeries):
            return div(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return div(QSeries.monomial(0, self._prec - self._lead, other), self)
        return NotImplemented

    def __pow__(self, n: int) -> "QSeries":
        return pow(self, n)

    def scale(self, c: Number) -> "QSeries":
        c = _as_fraction(c)
        return QSeries._raw(
            self._lead, self._prec, tuple(x * c.numerator for x in self._num), self._den * c.denominator
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self._lead == other._lead
            and self._prec == other._prec
            and self._num == other._num
            and self._den == other._den
        )

    def __hash__(self) -> int:
        return hash((self._lead, self._prec, self._num, self._den))

    def agrees_with(self, other: "QSeries") -> bool:
        """Equal on every exponent both series know."""
        top = min(self._prec, other._prec)
        lo = min(self._lead, other._lead)
        return all(self.coeff(n) == other.coeff(n) for n in range(lo, top))

    # rendering

    def __repr__(self) -> str:
        return f"QSeries({self.to_text()})"

    def to_text(self) -> str:
        """``q^-1 + 744 + 196884*q + O(q^2)``."""
        parts: list[str] = []
        for i, x in enumerate(self._num):
            if not x:
                continue
            n = self._lead + i
            c = Fraction(x, self._den)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if n == 0:
                body = str(a)
            else:
                qpow = "q" if n == 1 else f"q^{n}"
                body = qpow if a == 1 else f"{a}*{qpow}"
            parts.append((sign, body))
        out = ""
        for idx, (sign, body) in enumerate(parts):
            if idx == 0:
                out = body if sign == "+" else f"-{body}"
            else:
                out += f" {sign} {body}"
        tail = f"O(q^{self._prec})" if self._prec != 1 else "O(q)"
        return f"{out} + {tail}" if out else tail

    def to_json(self) -> dict:
        return {
            "lead": self._lead,
            "prec": self._prec,
            "coeffs": [str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QSeries":
        return cls(data["lead"], data["prec"], [Fraction(c) for c in data["coeffs"]])


def _coerce(x, like: QSeries):
    if isinstance(x, QSeries):
        return x
    if isinstance(x, (int, Fraction)):
        return QSeries.monomial(0, like.prec, x) if like.prec > 0 else QSeries.zero(like.prec)
    return NotImplemented


# -- operations ------------------------------------------------------------


def add(a: QSeries, b: QSeries) -> QSeries:
    prec = min(a.prec, b.prec)
    lead = min(a.lead, b.lead, prec)
    den = a._den * b._den // math.gcd(a._den, b._den)
    fa, fb = den // a._den, den // b._den
    out = [0] * (prec - lead)
    for i, x in enumerate(a._num):
        n = a._lead + i
        if n >= prec:
            break
        out[n - lead] += x * fa
    for i, x in enumerate(b._num):
        n = b._lead + i
        if n >= prec:
            break
        out[n - lead] += x * fb
    return QSeries._raw(lead, prec, out, den)


def sub(a: QSeries, b: QSeries) -> QSeries:
    return add(a, -b)


def mul(a: QSeries, b: QSeries) -> QSeries:
    lead = a.lead + b.lead
    prec = min(a.lead + b.prec, b.lead + a.prec)
    n = prec - lead
    if n <= 0:
        return QSeries.zero(prec)
    num = _convolve(a._num, b._num, n)
    return QSeries._raw(lead, prec, num, a._den * b._den)


def _inverse_unit_part(num: Sequence[int], n: int) -> tuple[list[int], int]:
    """Inverse of the integer power series ``num`` to ``n`` terms.

    Returns numerators ``C`` and denominator ``num[0]**n`` (up to sign
    normalisation) such that ``sum C_k q^k / den`` inverts ``num``.
    """
    b0 = num[0]
    if abs(b0) == 1:
        c = [0] * n
        c[0] = b0
        for m in range(1, n):
            s = 0
            for k in range(1, min(m, len(num) - 1) + 1):
                bk = num[k]
                if bk:
                    s += bk * c[m - k]
            c[m] = -s * b0
        return c, 1
    # C_m = c_m * b0^(m+1);  C_0 = 1,  C_m = -sum_k b_k C_{m-k} b0^(k-1)
    powers = [1]
    for _ in range(n):
        powers.append(powers[-1] * b0)
    C = [0] * n
    C[0] = 1
    for m in range(1, n):
        s = 0
        for k in range(1, min(m, len(num) - 1) + 1):
            bk = num[k]
            if bk:
                s += bk * C[m - k] * powers[k - 1]
        C[m] = -s
    den = powers[n]
    # rescale each C_m (over b0^(m+1)) to the common denominator b0^n
    out = [C[m] * powers[n - m - 1] for m in range(n)]
    if den < 0:
        den = -den
        out = [-x for x in out]
    return out, den


def div(a: QSeries, b: QSeries) -> QSeries:
    if len(b) == 0 or b._num[0] == 0:
        raise ZeroLeadingCoefficient("divisor has zero leading stored coefficient")
    lead = a.lead - b.lead
    rel = min(len(a), len(b))
    prec = lead + rel
    inv, inv_den = _inverse_unit_part(b._num, rel)
    num = _convolve(a._num, inv, rel)
    # a/b = (A/da) * (den_b * inv / inv_den)
    num = [x * b._den for x in num]
    return QSeries._raw(lead, prec, num, a._den * inv_den)


def pow(a: QSeries, n: int) -> QSeries:  # noqa: A001 - mirrors the builtin on purpose
    """``a**n`` by binary powering; negative ``n`` inverts first."""
    if n == 0:
        return QSeries.one(len(a))
    if n < 0:
        a = div(QSeries.one(len(a)), a)
        n = -n
    result = None
    base = a
    while n:
        if n & 1:
            result = base if result is None else mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def constant_term(a: QSeries) -> Fraction:
    """Coefficient of ``q^0``."""
    if a.prec <= 0:
        raise InsufficientPrecision(f"constant term unknown in a series known only to O(q^{a.prec})")
    return a.coeff(0)


def constant_term_of_product(a: QSeries, b: QSeries) -> Fraction:
    """``(a*b)|_{q^0}`` without forming the whole product."""
    prec = min(a.lead + b.prec, b.lead + a.prec)
    if prec <= 0:
        raise InsufficientPrecision(f"product known only to O(q^{prec})")
    s = 0
    for i, x in enumerate(a._num):
        n = a._lead + i
        m = -n
        if m < b._lead:
            break
        if m >= b._prec:
            continue
        y = b._num[m - b._lead]
        if x and y:
            s += x * y
    return Fraction(s, a._den * b._den)


# -- arithmetic functions used to build the standard series ---------------


@lru_cache(maxsize=64)
def _sigma_table(power: int, n: int) -> tuple[int, ...]:
    table = [0] * n
    for d in range(1, n):
        dp = d**power
        for m in range(d, n, d):
            table[m] += dp
    return tuple(table)


def divisor_sigma(power: int, n: int) -> int:
    """``sum of d**power`` over the positive divisors ``d`` of ``n``."""
    return _sigma_table(power, n + 1)[n]


@lru_cache(maxsize=256)
def _eta_power_nums(d: int, prec: int) -> tuple[int, ...]:
    # F = prod (1-q^n)^d satisfies n a_n = -d sum_{m=1}^n sigma_1(m) a_{n-m}
    sig = _sigma_table(1, prec)
    a = [0] * prec
    a[0] = 1
    for n in range(1, prec):
        s = 0
        for m in range(1, n + 1):
            s += sig[m] * a[n - m]
        s *= -d
        q, r = divmod(s, n)
        assert r == 0
        a[n] = q
    return tuple(a)


def eta_power_normalized(d: int, prec: int) -> QSeries:
    """``prod_{n>=1} (1 - q^n)^d`` modulo ``q^prec``."""
    if prec < 1:
        raise ValueError("prec must be at least 1")
    return QSeries._raw(0, prec, _eta_power_nums(d, prec))
