"""Closed-form area bounds and the catalogue of cases where they are attained."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

SQRT3 = math.sqrt(3.0)
SQRT12 = math.sqrt(12.0)
# largest n for which a Wegner packing is known to exist (121 is exceptional)
MAX_NONEXCEPTIONAL = 120


def ceil_term(n: int) -> int:
    """Exact ``ceil(sqrt(12n - 3) - 3)`` via integer arithmetic.

    The smallest integer ``z`` with ``(z + 3)**2 >= 12n - 3``.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    q = 12 * n - 3
    s = math.isqrt(q)
    if s * s < q:
        s += 1
    return s - 3


def wegner_bound(n: int) -> float:
    """Lower bound on the hull area of ``n`` non-overlapping unit disks."""
    return SQRT12 * (n - 1) + (2.0 - SQRT3) * ceil_term(n) + math.pi


def cap_total(k: int) -> float:
    """Total cap area of the unit k-gon around its disk."""
    return k * math.tan(math.pi / k) - math.pi


def kgon_bound(n: int, k: int) -> float:
    """Lower bound on the area of a convex k-gon holding ``n`` unit disks."""
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    return SQRT12 * (n - 1) + (2.0 - SQRT3) * ceil_term(n) + k * math.tan(math.pi / k)


class Tightness(enum.Enum):
    TIGHT_SINGLE = "Tight_Single"  # n = 1, every k
    TIGHT_A = "Tight_A"  # n = 2, even k >= 4
    TIGHT_B = "Tight_B"  # n in {3, 6}, k divisible by 3
    TIGHT_C = "Tight_C"  # non-exceptional n != 2, k divisible by 6
    TIGHT_CENTERED_HEX = "Tight_CenteredHex"  # centred hexagonal n, k = 6
    NOT_TIGHT_KNOWN = "NotTightKnown"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value

    @property
    def is_tight(self) -> bool:
        return self.name.startswith("TIGHT")


def is_centered_hexagonal(n: int) -> bool:
    # n = 3m(m-1)+1  <=>  12n - 3 = (6m - 3)^2
    q = 12 * n - 3
    s = math.isqrt(q)
    return s * s == q and s % 6 == 3


def tightness(n: int, k: int) -> Tightness:
    """Which known case, if any, makes ``kgon_bound(n, k)`` attainable."""
    if n < 1 or k < 3:
        raise ValueError("need n >= 1 and k >= 3")
    if n == 2:
        return Tightness.TIGHT_A if k % 2 == 0 else Tightness.NOT_TIGHT_KNOWN
    if n in (3, 6) and k % 3 == 0:
        return Tightness.TIGHT_B
    if k == 6 and is_centered_hexagonal(n):
        return Tightness.TIGHT_CENTERED_HEX
    if k % 6 == 0 and n <= MAX_NONEXCEPTIONAL:
        return Tightness.TIGHT_C
    if n == 1:
        return Tightness.TIGHT_SINGLE
    if (n, k) == (3, 4):
        return Tightness.NOT_TIGHT_KNOWN
    return Tightness.UNKNOWN


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    ceil_term: int
    wegner_bound: float
    kgon_bound: float
    tightness: Tightness


def bound_report(n: int, k: int) -> BoundReport:
    return BoundReport(n, k, ceil_term(n), wegner_bound(n), kgon_bound(n, k), tightness(n, k))
