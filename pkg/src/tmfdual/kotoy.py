"""The KO / KU toy model of the duality, at the level of homotopy groups.

Generators: ``pi_8m KO = Z B^m``, ``pi_{8m+1} = Z/2 eta B^m``,
``pi_{8m+2} = Z/2 eta^2 B^m``, ``pi_{8m+4} = Z A_{8m+4}`` (the sign of ``A``
fixed by ``c(A) = 2 beta^(4m+2)``), all other groups zero; ``pi_2k KU = Z beta^k``.

The maps of the ``eta c R`` sequence

    pi_{n-1} KO --eta--> pi_n KO --c--> pi_n KU --R--> pi_{n-2} KO --eta--> ...

are encoded as integer matrices and checked with :mod:`tmfdual.abgroup`.
The bordism data of the spin^c / spin sequence in degrees 0..4 and the
Atiyah-Bott-Shapiro values of its generators are recorded constants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .abgroup import (
    Exactness,
    FinAbGroup,
    GroupHom,
    Presentation,
    cokernel,
    exactness,
)
from .duality import ModZValue

__all__ = [
    "DegreeMismatch",
    "ko_group",
    "ku_group",
    "eta_map",
    "c_map",
    "R_map",
    "ExactnessRow",
    "eta_c_R_exactness",
    "BordismStage",
    "TABLE3",
    "table3_sequence",
    "table3_exactness",
    "ABS",
    "gamma_ku",
    "gamma_free_pair",
    "free_pairing_ko",
    "TorsionCase",
    "gamma_torsion_pair",
]


class DegreeMismatch(ValueError):
    pass


_ZERO = Presentation(0)
_Z = Presentation.cyclic(0)
_Z2 = Presentation.cyclic(2)


def ko_group(n: int) -> tuple[Presentation, str | None]:
    m, r = divmod(n, 8)
    bm = "" if m == 0 else (f"B^{m}" if m != 1 else "B")
    if r == 0:
        return _Z, bm or "1"
    if r == 1:
        return _Z2, "eta" + (f"*{bm}" if bm else "")
    if r == 2:
        return _Z2, "eta^2" + (f"*{bm}" if bm else "")
    if r == 4:
        return _Z, f"A_{n}"
    return _ZERO, None


def ku_group(n: int) -> tuple[Presentation, str | None]:
    if n % 2:
        return _ZERO, None
    return _Z, f"beta^{n // 2}"


def _hom(src: Presentation, tgt: Presentation, value: int) -> GroupHom:
    if src.ngens == 0 or tgt.ngens == 0:
        return GroupHom.zero(src, tgt)
    return GroupHom(src, tgt, ((value,),))


def eta_map(n: int) -> GroupHom:
    """Multiplication by eta, ``pi_n KO -> pi_{n+1} KO``."""
    src, _ = ko_group(n)
    tgt, _ = ko_group(n + 1)
    return _hom(src, tgt, 1 if n % 8 in (0, 1) else 0)


def c_map(n: int, c_of_A: int = 2) -> GroupHom:
    """Complexification ``pi_n KO -> pi_n KU``: ``1 -> 1``, ``eta -> 0``,
    ``A -> c_of_A * beta^(n/2)``, ``B -> beta^4``."""
    src, _ = ko_group(n)
    tgt, _ = ku_group(n)
    r = n % 8
    value = {0: 1, 4: c_of_A}.get(r, 0)
    return _hom(src, tgt, value)


def _realification(k: int) -> tuple[int, int]:
    """``r(beta^k)`` as (degree, multiple of the generator)."""
    return 2 * k, {0: 2, 1: 1, 2: 1, 3: 0}[k % 4]


def R_map(n: int) -> GroupHom:
    """``pi_n KU -> pi_{n-2} KO``, ``beta^k -> r(beta^(k-1))``."""
    src, _ = ku_group(n)
    tgt, _ = ko_group(n - 2)
    if src.ngens == 0:
        return GroupHom.zero(src, tgt)
    _, mult = _realification(n // 2 - 1)
    return _hom(src, tgt, mult)


@dataclass(frozen=True)
class ExactnessRow:
    position: str
    status: Exactness

    @property
    def ok(self) -> bool:
        return self.status is Exactness.EXACT


def eta_c_R_exactness(lo: int = -8, hi: int = 8, c_of_A: int = 2) -> list[ExactnessRow]:
    """Exactness at ``pi_n KO``, ``pi_n KU`` and ``pi_{n-2} KO`` for ``lo <= n <= hi``."""
    rows = []
    for n in range(lo, hi + 1):
        rows.append(ExactnessRow(f"pi_{n} KO", exactness(eta_map(n - 1), c_map(n, c_of_A))))
        rows.append(ExactnessRow(f"pi_{n} KU", exactness(c_map(n, c_of_A), R_map(n))))
        rows.append(ExactnessRow(f"pi_{n - 2} KO (after R)", exactness(R_map(n), eta_map(n - 2))))
    return rows


# -- bordism: MSpin -> MSpin^c -> MSpin^c/MSpin ------------------------------


@dataclass(frozen=True)
class BordismStage:
    """One row: ``pi_n MSpin --iota'--> pi_n MSpin^c --C iota'--> pi_n (MSpin^c/MSpin)``.

    ``boundary`` is the matrix of ``pi_{n+1}(MSpin^c/MSpin) -> pi_n MSpin``
    into this row's spin group.
    """

    n: int
    spin: Presentation
    spin_names: tuple[str, ...]
    spinc: Presentation
    spinc_names: tuple[str, ...]
    rel: Presentation
    rel_names: tuple[str, ...]
    iota: tuple[tuple[int, ...], ...]
    c_iota: tuple[tuple[int, ...], ...]
    boundary: tuple[tuple[int, ...], ...] = field(default=())


TABLE3: dict[int, BordismStage] = {
    4: BordismStage(
        4,
        _Z, ("K3",),
        Presentation(2), ("CP2", "CP1xCP1"),
        Presentation(2, ((2, 0),)), ("[8 bar CP2 # CP1xCP1, empty]", "[CP2, empty]"),
        iota=((16,), (-2,)),
        c_iota=((0, 1), (1, 8)),
    ),
    3: BordismStage(
        3,
        _ZERO, (),
        _ZERO, (),
        _Z2, ("[D2 x S1, S1 x S1]",),
        iota=(),
        c_iota=(),
    ),
    2: BordismStage(
        2,
        _Z2, ("S1 x S1",),
        _Z, ("CP1",),
        _Z, ("[D2, S1]",),
        iota=((0,),),
        c_iota=((2,),),
        boundary=((1,),),  # from the degree-3 relative group, an isomorphism
    ),
    1: BordismStage(
        1,
        _Z2, ("S1",),
        _ZERO, (),
        _ZERO, (),
        iota=(),
        c_iota=(),
        boundary=((1,),),  # [D2, S1] -> [S1], reduction mod 2
    ),
    0: BordismStage(
        0,
        _Z, ("pt",),
        _Z, ("pt",),
        _ZERO, (),
        iota=((1,),),
        c_iota=(),
    ),
}


def table3_sequence() -> list[tuple[str, GroupHom]]:
    """The long exact sequence from ``pi_4 MSpin`` down to ``pi_0`` of the quotient."""
    maps: list[tuple[str, GroupHom]] = []
    for n in range(4, -1, -1):
        st = TABLE3[n]
        maps.append((f"iota'_{n}", GroupHom(st.spin, st.spinc, st.iota)))
        maps.append((f"C iota'_{n}", GroupHom(st.spinc, st.rel, st.c_iota)))
        if n > 0:
            below = TABLE3[n - 1]
            maps.append((f"boundary_{n}", GroupHom(st.rel, below.spin, below.boundary)))
    return maps


@dataclass(frozen=True)
class Table3Report:
    rows: list[tuple[str, Exactness]]
    cokernel_iota4: FinAbGroup

    @property
    def ok(self) -> bool:
        return all(s is Exactness.EXACT for _, s in self.rows) and self.cokernel_iota4 == FinAbGroup(1, (2,))


def table3_exactness() -> Table3Report:
    seq = table3_sequence()
    rows = []
    for (fname, f), (gname, g) in zip(seq, seq[1:]):
        rows.append((f"{fname} then {gname}", exactness(f, g)))
    iota4 = seq[0][1]
    return Table3Report(rows, cokernel(iota4))


# -- pairings ---------------------------------------------------------------

# ABS orientation on spin^c generators, as (power of beta, multiple)
ABS: dict[str, tuple[int, int]] = {
    "pt": (0, 1),
    "CP1": (1, 1),
    "CP2": (2, 1),
    "CP1xCP1": (2, 1),
}


def gamma_ku(a: int, b: int) -> int:
    """``<beta^a, beta^b>``: 1 when ``a + b = -1`` (``beta^-1 -> 1``)."""
    if a + b != -1:
        raise DegreeMismatch(f"beta^{a} and beta^{b} are not in complementary degrees")
    return 1


def gamma_free_pair(x: str, y: str, x_mult: int = 1, y_mult: int = 1) -> Fraction:
    """Free pairing ``pi_{-4} KO x pi_2(MSpin^c/MSpin) -> Z``.

    Only the pair (``A_-4``, ``[D2, S1]``) and multiples are modelled.  The
    value is found from ``C iota'[CP1] = 2 [D2, S1]`` and the compatibility
    ``<x, C iota'(z)> = <c(x), ABS(z)>``.
    """
    if x_mult == 0 or y_mult == 0:
        return Fraction(0)
    if (x, y) != ("A_-4", "[D2, S1]"):
        raise DegreeMismatch(f"no free pairing modelled between {x} and {y}")
    c_A = c_map(-4).matrix[0][0]  # c(A) = c_A * beta^-2
    c_iota = TABLE3[2].c_iota[0][0]  # C iota'[CP1] = c_iota * [D2, S1]
    power, mult = ABS["CP1"]
    lhs = c_A * mult * gamma_ku(-2, power)
    return Fraction(lhs, c_iota) * x_mult * y_mult


def free_pairing_ko(d: int) -> Fraction:
    """Pairing of generators of ``pi_{-d} KO`` and ``pi_{d-2}(KU/KO) = pi_{d-4} KO``.

    Computed as ``<c(x), z> / m`` for ``z = beta^((d-2)/2)`` with ``R(z) = m y``.
    """
    if d % 4:
        raise DegreeMismatch(f"free pairing only in degrees 0 mod 4, not {d}")
    n = -d
    cx = c_map(n).matrix[0][0]
    k = (d - 2) // 2
    m = R_map(d - 2).matrix[0][0]
    return Fraction(cx * gamma_ku(n // 2, k), m)


class TorsionCase(Enum):
    D7 = "d7"
    D6 = "d6"


@dataclass(frozen=True)
class TorsionPairing:
    value: ModZValue
    provenance: str


def gamma_torsion_pair(case: TorsionCase | str, scale: int = 1) -> TorsionPairing:
    """Torsion pairings with ``eta B^-1`` (d7) and ``eta^2 B^-1`` (d6).

    d7 is recomputed: ``(1/2) <beta^-3, ABS(-8 CP2 + CP1xCP1)>``.  d6 needs
    differential and equivariant input and is recorded.
    """
    case = TorsionCase(case)
    if case is TorsionCase.D7:
        p2, m2 = ABS["CP2"]
        p11, m11 = ABS["CP1xCP1"]
        assert p2 == p11
        total = -8 * m2 + m11
        v = Fraction(total * gamma_ku(-3, p2), 2) * scale
        return TorsionPairing(ModZValue(v), "computed from ABS values")
    return TorsionPairing(ModZValue(Fraction(scale, 2)), "recorded")
