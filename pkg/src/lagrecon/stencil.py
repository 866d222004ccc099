"""Stencils {-M-, ..., +M+} around a pivot cell and their Neville subdivisions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List


@dataclass(frozen=True, order=True)
class Stencil:
    """Contiguous stencil of pivot-relative points ``-m_minus .. +m_plus``.

    Either extent may be negative (the pivot then lies outside the stencil),
    as long as the total width ``M = m_minus + m_plus`` is non-negative.
    """

    m_minus: int
    m_plus: int

    def __post_init__(self):
        if not isinstance(self.m_minus, int) or not isinstance(self.m_plus, int):
            raise TypeError("stencil extents must be integers")
        if self.m_minus + self.m_plus < 0:
            raise ValueError(f"stencil width M = {self.m_minus + self.m_plus} < 0")

    @property
    def M(self) -> int:
        return self.m_minus + self.m_plus

    @property
    def points(self) -> range:
        return range(-self.m_minus, self.m_plus + 1)

    def __contains__(self, ell: int) -> bool:
        return -self.m_minus <= ell <= self.m_plus

    def label(self) -> str:
        return f"({self.m_minus},{self.m_plus})"

    def to_json(self) -> dict:
        return {"m_minus": self.m_minus, "m_plus": self.m_plus}


@dataclass(frozen=True, order=True)
class Subdivision:
    stencil: Stencil
    ks: int

    def __post_init__(self):
        if not 0 <= self.ks <= self.stencil.M - 1:
            raise ValueError(
                f"subdivision level ks={self.ks} outside 0..M-1 for M={self.stencil.M}")

    @classmethod
    def of(cls, m_minus: int, m_plus: int, ks: int) -> "Subdivision":
        return cls(Stencil(m_minus, m_plus), ks)

    @property
    def m_minus(self) -> int:
        return self.stencil.m_minus

    @property
    def m_plus(self) -> int:
        return self.stencil.m_plus

    @property
    def M(self) -> int:
        return self.stencil.M

    def label(self) -> str:
        return f"({self.m_minus},{self.m_plus},{self.ks})"

    def to_json(self) -> dict:
        return {"m_minus": self.m_minus, "m_plus": self.m_plus, "ks": self.ks}

    @classmethod
    def from_json(cls, data: dict) -> "Subdivision":
        return cls.of(int(data["m_minus"]), int(data["m_plus"]), int(data["ks"]))


def substencils(sd: Subdivision) -> List[Stencil]:
    """Entry k is the stencil (M- - k, M+ - Ks + k)."""
    K = sd.ks
    return [Stencil(sd.m_minus - k, sd.m_plus - K + k) for k in range(K + 1)]


def is_positive_subdivision(sd: Subdivision) -> bool:
    """True iff every substencil contains point 0 or point 1."""
    return (-sd.m_minus <= 0 < 1 <= sd.m_plus
            and 1 <= sd.ks <= min(sd.m_minus + 1, sd.m_plus))


def standard_subdivision(M: int) -> Subdivision:
    """The usual WENO arrangement: M- = floor(M/2), M+ = M - M-, Ks = ceil(M/2)."""
    mm = M // 2
    return Subdivision.of(mm, M - mm, (M + 1) // 2)


def stencils_of_width(M: int, nonnegative: bool = True) -> List[Stencil]:
    """All stencils of width M; with ``nonnegative`` only those with M-, M+ >= 0."""
    if nonnegative:
        return [Stencil(mm, M - mm) for mm in range(M + 1)]
    raise ValueError("unbounded family; enumerate explicitly")


def subdivisions_up_to(max_m: int, min_m: int = 2) -> List[Subdivision]:
    """Every (M-, M+ >= 0, Ks) with min_m <= M <= max_m and 1 <= Ks <= M-1."""
    out = []
    for M in range(min_m, max_m + 1):
        for s in stencils_of_width(M):
            for K in range(1, M):
                out.append(Subdivision(s, K))
    return out
