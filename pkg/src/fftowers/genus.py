"""Genus lower bounds: Hurwitz arithmetic with Dedekind bounds, the two-pole
recurrence for quadratic steps, Hasse-Weil, and finite-level ratios.

Every genus produced here is a lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .errors import LevelMismatch

FINITE_LEVEL_DISCLAIMER = "finite-level values, not limits"


@dataclass(frozen=True)
class RamificationDatum:
    e: int
    wild: bool = False

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("ramification index must be >= 1")

    @classmethod
    def for_char(cls, e: int, p: int) -> RamificationDatum:
        """Wild exactly when p divides e."""
        return cls(e, e % p == 0)

    @property
    def different_lb(self) -> int:
        return self.e if self.wild else self.e - 1

    @classmethod
    def parse(cls, text: str) -> RamificationDatum:
        """``"3"``, ``"2,tame"`` or ``"2,wild"``."""
        parts = [s.strip() for s in text.split(",")]
        if len(parts) > 2 or not parts[0].isdigit():
            raise ValueError(f"bad ramification datum {text!r}")
        wild = False
        if len(parts) == 2:
            if parts[1] not in ("wild", "tame"):
                raise ValueError(f"expected 'wild' or 'tame', got {parts[1]!r}")
            wild = parts[1] == "wild"
        return cls(int(parts[0]), wild)

    def __str__(self) -> str:
        return f"{self.e},{'wild' if self.wild else 'tame'}"


def _ceil_half(n: int) -> int:
    return -((-n) // 2)


def hurwitz_bound(m: int, g0: int, ram: Sequence[RamificationDatum]) -> int:
    """ceil((m(2 g0 - 2) + sum of different lower bounds + 2) / 2), clamped at 0."""
    if m < 2 or g0 < 0:
        raise ValueError("need m >= 2 and g0 >= 0")
    total = m * (2 * g0 - 2) + sum(r.different_lb for r in ram) + 2
    return max(0, _ceil_half(total))


def genus_recurrence(g: int, n_poles: int) -> int:
    """g' >= 2g - 2 + n + 1 for a quadratic step with n wild totally ramified poles."""
    if g < 0 or n_poles < 1:
        raise ValueError("need g >= 0 and n_poles >= 1")
    return max(0, 2 * g - 2 + n_poles + 1)


def hasse_weil_min_genus(N: int, q: int) -> int:
    """Smallest g >= 0 with N <= q + 1 + 2 g sqrt(q), decided in integers."""
    if N < 0 or q < 2:
        raise ValueError("need N >= 0 and q >= 2")
    d = N - q - 1
    if d <= 0:
        return 0
    # 4 g^2 q >= d^2
    g = isqrt(d * d // (4 * q))
    while 4 * g * g * q < d * d:
        g += 1
    return g


@dataclass(frozen=True)
class GenusLedger:
    bounds: tuple[int, ...]
    rules: tuple[str, ...]  # rules[i] produced bounds[i + 1]

    @property
    def levels(self) -> int:
        return len(self.bounds) - 1


def ledger_from_recurrence(n_poles: Sequence[int], g0: int = 0) -> GenusLedger:
    """g_{i+1} = genus_recurrence(g_i, n_poles[i]) from g_0 (0 for a rational base)."""
    g = [g0]
    rules = []
    for n in n_poles:
        g.append(genus_recurrence(g[-1], n))
        rules.append(f"recurrence(g={g[-2]}, n={n})")
    return GenusLedger(tuple(g), tuple(rules))


def ledger_from_hurwitz(m: int, ram_per_level: Sequence[Sequence[RamificationDatum]]) -> GenusLedger:
    """g_0 = 0, then g_{i+1} = hurwitz_bound(m, g_i, ram_per_level[i])."""
    g = [0]
    rules = []
    for ram in ram_per_level:
        g.append(hurwitz_bound(m, g[-1], ram))
        rules.append("hurwitz(" + " ".join(str(r) for r in ram) + ")")
    return GenusLedger(tuple(g), tuple(rules))


@dataclass(frozen=True)
class RatioReport:
    place_ratios: tuple[Fraction, ...]
    genus_ratios: tuple[Fraction, ...] | None
    disclaimer: str = FINITE_LEVEL_DISCLAIMER


def ratios(census, ledger: GenusLedger | None = None) -> RatioReport:
    """N_i / m^i and g_i / m^i per level as exact fractions."""
    if ledger is not None and ledger.levels != census.levels:
        raise LevelMismatch(f"census has {census.levels} levels, ledger has {ledger.levels}")
    degs = census.degrees
    places = tuple(Fraction(n, d) for n, d in zip(census.rational_places, degs))
    genus = None
    if ledger is not None:
        genus = tuple(Fraction(g, d) for g, d in zip(ledger.bounds, degs))
    return RatioReport(places, genus)
