"""Homotopy of TMF in the form used here: the torsion kernel ``A_d`` and the
image ``U_d`` of the map to ``KO((q))``.

``A_d`` is read from two checked-in tables (one per prime 2 and 3; there is
no torsion at larger primes) and validated on load.  ``U_d`` is infinitely
generated, so it is described by rules and only materialised on a finite
window of ``D``-exponents.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .abgroup import FinAbGroup, direct_sum
from .modforms import MFElement, max_nonneg_k, monomial_of_weight

__all__ = [
    "ADTable",
    "TableError",
    "NegativeI",
    "NotInMF",
    "WrongDegree",
    "load_table",
    "A",
    "a_coefficient",
    "in_image_weight",
    "in_image_eta",
    "ETA_COKERNEL",
    "ETA2_COKERNEL",
    "image_generators",
    "U",
    "pi_tmf",
    "default_window",
]

PERIODS = {2: 192, 3: 72}

# D-exponents mod 8 whose top class eta*D^k (resp. eta^2*D^k) is not hit
ETA_COKERNEL = frozenset({2, 3, 5, 6, 7})
ETA2_COKERNEL = frozenset({3, 6, 7})


class TableError(ValueError):
    """A shipped table failed validation."""


class NegativeI(ValueError):
    pass


class NotInMF(ValueError):
    pass


class WrongDegree(ValueError):
    pass


@dataclass(frozen=True)
class ADTable:
    """p-primary part of ``A_d`` for one period of degrees."""

    prime: int
    period: int
    entries: dict[int, FinAbGroup]

    def __getitem__(self, d: int) -> FinAbGroup:
        return self.entries.get(d % self.period, FinAbGroup())

    def nontrivial(self) -> dict[int, FinAbGroup]:
        return {r: g for r, g in sorted(self.entries.items()) if not g.is_trivial()}


def _parse(text: str, prime: int) -> ADTable:
    period = PERIODS[prime]
    entries: dict[int, FinAbGroup] = {}
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header[0].strip() != "d_mod_period":
        raise TableError(f"unexpected header {header}")
    for row in reader:
        if not row:
            continue
        r = int(row[0])
        if not 0 <= r < period or r in entries:
            raise TableError(f"bad or repeated residue {r} in the p={prime} table")
        facs = sorted(int(x) for x in row[1].split()) if len(row) > 1 else []
        for f in facs:
            if not _is_power(f, prime):
                raise TableError(f"factor {f} at d={r} is not a power of {prime}")
        entries[r] = FinAbGroup.from_orders(facs)
    return ADTable(prime, period, entries)


def _is_power(n: int, p: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


def _validate(t: ADTable) -> None:
    for d in range(t.period):
        g = t[d]
        if not g.is_finite():
            raise TableError(f"A_{d} must be torsion")
        if d % 24 == 23 and not g.is_trivial():
            raise TableError(f"A_{d} should vanish for d = -1 mod 24")
        if d % 24 not in (3, 23) and g.order() != t[-d - 22].order():
            raise TableError(f"|A_{d}| != |A_{-d - 22}| at p={t.prime}")


@lru_cache(maxsize=None)
def load_table(prime: int) -> ADTable:
    if prime not in PERIODS:
        raise ValueError("tables exist only for p = 2 and 3")
    text = resources.files("tmfdual").joinpath(f"data/ad_p{prime}.csv").read_text()
    t = _parse(text, prime)
    _validate(t)
    return t


def A(d: int) -> FinAbGroup:
    """The torsion group ``A_d``: kernel of ``pi_d TMF -> pi_d KO((q))``."""
    return direct_sum(load_table(2)[d], load_table(3)[d])


def _check_spot_values() -> None:
    expected = {3: 24, -31: 2, -28: 2, 0: 1}
    for d, n in expected.items():
        if A(d).order() != n:
            raise TableError(f"|A_{d}| = {A(d).order()}, expected {n}")
    if load_table(3)[10] != FinAbGroup(0, (3,)):
        raise TableError("3-primary part of A_10 should be Z/3")


# -- the image of pi_* TMF in weight-graded degrees -------------------------


def a_coefficient(i: int, j: int, k: int) -> int:
    """Index of the image in ``Z c4^i c6^j D^k``."""
    if i < 0:
        raise NegativeI(f"i = {i} < 0")
    if j not in (0, 1):
        raise ValueError("j must be 0 or 1")
    if i == 0 and j == 0:
        return 24 // math.gcd(24, k)
    return 2 if j == 1 else 1


def in_image_weight(e: MFElement) -> bool:
    """Is the integral form ``e`` the image of a class in ``pi_* TMF``?"""
    if not e.in_mf():
        raise NotInMF(f"{e} has terms outside MF")
    return all(
        (c / a_coefficient(m.i, m.j, m.k)).denominator == 1 for m, c in e.items()
    )


def _eta_power(d: int) -> int:
    if d % 8 == 1:
        return 1
    if d % 8 == 2:
        return 2
    raise WrongDegree(f"degree {d} is not 1 or 2 mod 8")


def in_image_eta(d: int, delta_exponent: int) -> bool:
    """Is ``eta^e c4^i D^k`` (``e`` = 1 or 2) in the image, for ``k = delta_exponent``?

    The classes ``eta D^k`` themselves are hit exactly when ``k mod 8`` is
    outside the cokernel sets.  When ``d`` pins down a monomial with a
    positive power of ``c4`` (the element is ``B^i`` times a lower class)
    it is always hit.
    """
    e = _eta_power(d)
    i8 = d - e - 24 * delta_exponent
    if i8 > 0 and i8 % 8 == 0:
        return True
    cok = ETA_COKERNEL if e == 1 else ETA2_COKERNEL
    return delta_exponent % 8 not in cok


def default_window(d: int, size: int = 10) -> tuple[int, int]:
    """The top ``size`` ``D``-exponents that carry an ``i >= 0`` monomial."""
    top = max_nonneg_k(_weight_of_degree(d))
    return top - size + 1, top


def _weight_of_degree(d: int) -> int:
    r = d % 8
    if d % 4 == 0:
        return d // 2
    if r in (1, 2):
        return (d - r) // 2
    raise WrongDegree(f"U_{d} vanishes; no weight attached to degree {d}")


def image_generators(d: int, window: tuple[int, int] | None = None) -> list[str]:
    """Generators of ``U_d`` with ``D``-exponent in ``window`` (inclusive), top first."""
    if d % 4 != 0 and d % 8 not in (1, 2):
        return []
    lo, hi = window if window is not None else default_window(d)
    w = _weight_of_degree(d)
    out = []
    for k in range(min(hi, max_nonneg_k(w)), lo - 1, -1):
        m = monomial_of_weight(w, k)
        if d % 4 == 0:
            a = a_coefficient(m.i, m.j, m.k)
            out.append(str(m) if a == 1 else f"{a}*{m}")
        elif in_image_eta(d, k):
            prefix = "eta" if d % 8 == 1 else "eta^2"
            out.append(prefix if str(m) == "1" else f"{prefix}*{m}")
    return out


def U(d: int, window: tuple[int, int] | None = None) -> FinAbGroup:
    """The image ``U_d`` restricted to a window of ``D``-exponents."""
    n = len(image_generators(d, window))
    if d % 4 == 0:
        return FinAbGroup(n)
    return FinAbGroup.from_orders([2] * n)


def pi_tmf(d: int, window: tuple[int, int] | None = None) -> FinAbGroup:
    """``A_d (+) U_d``; the extension splits, so this is the whole group on the window."""
    return direct_sum(A(d), U(d, window))


_check_spot_values()
