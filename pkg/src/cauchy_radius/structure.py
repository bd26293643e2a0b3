"""Gap indices and the leading-zero structure of multiplied polynomials.

Shared by the scalar and matrix code: both only need to know which
coefficients are exactly zero, so everything here works on a boolean mask
``nonzero[j]`` for ascending powers ``j = 0..n``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import NoGapError, UnsupportedMultiplierError


class Relation(enum.Enum):
    ELL_LT_K = "ell<k"
    ELL_GT_K = "ell>k"
    ELL_EQ_K = "ell=k"
    NO_ELL = "no ell"


class MultiplierKind(enum.Enum):
    Q1 = "Q1"
    Q2 = "Q2"
    Q3 = "Q3"
    RS = "RS"


class Strategy(enum.Enum):
    SELECTED = "selected"
    RS = "rs"


@dataclass(frozen=True)
class GapProfile:
    """Distances from the leading coefficient to the next two nonzero ones."""

    k: int
    ell: Optional[int]
    relation: Relation

    @property
    def is_trinomial(self) -> bool:
        """At least three nonzero coefficients."""
        return self.ell is not None


def gap_from_mask(nonzero: Sequence[bool]) -> GapProfile:
    """Compute ``k`` and ``ell`` from an ascending nonzero mask.

    ``nonzero[-1]`` must be true (the leading coefficient).
    """
    n = len(nonzero) - 1
    if n < 0 or not nonzero[n]:
        raise ValueError("leading coefficient must be nonzero")
    below = [j for j in range(n - 1, -1, -1) if nonzero[j]]
    if not below:
        raise NoGapError("monomial: no nonzero coefficient below the leading one")
    k = n - below[0]
    if len(below) == 1:
        return GapProfile(k, None, Relation.NO_ELL)
    ell = below[0] - below[1]
    if ell < k:
        rel = Relation.ELL_LT_K
    elif ell > k:
        rel = Relation.ELL_GT_K
    else:
        rel = Relation.ELL_EQ_K
    return GapProfile(k, ell, rel)


def select_kind(gap: GapProfile) -> MultiplierKind:
    """Q1 if ell < k, Q2 if ell > k, Q3 if ell = k; RS for binomials."""
    return {
        Relation.ELL_LT_K: MultiplierKind.Q1,
        Relation.ELL_GT_K: MultiplierKind.Q2,
        Relation.ELL_EQ_K: MultiplierKind.Q3,
        Relation.NO_ELL: MultiplierKind.RS,
    }[gap.relation]


def check_kind_admissible(gap: GapProfile, kind: MultiplierKind) -> None:
    """Raise :class:`UnsupportedMultiplierError` naming the failed hypothesis."""
    if kind is MultiplierKind.RS:
        return
    if gap.ell is None:
        raise UnsupportedMultiplierError(
            f"{kind.value} needs at least a trinomial (ell undefined, k={gap.k})"
        )
    if kind is MultiplierKind.Q3 and gap.ell != gap.k:
        raise UnsupportedMultiplierError(f"Q3 needs ell == k, got k={gap.k}, ell={gap.ell}")


def admissible_kinds(gap: GapProfile) -> list[MultiplierKind]:
    kinds = [MultiplierKind.RS]
    if gap.ell is not None:
        kinds += [MultiplierKind.Q1, MultiplierKind.Q2]
        if gap.ell == gap.k:
            kinds.append(MultiplierKind.Q3)
    return kinds


def factor_degree(gap: GapProfile, kind: MultiplierKind) -> int:
    if kind is MultiplierKind.Q1:
        return gap.k + gap.ell
    if kind is MultiplierKind.RS:
        return gap.k
    return 2 * gap.k


def guaranteed_leading_zeros(gap: GapProfile, kind: MultiplierKind) -> int:
    """Worst-case number of null coefficients right below the product's lead.

    For Q1-Q3 these are the counts tabulated for the three relations; for the
    RS factor ``A_n z^k - A_{n-k}`` the powers ``n..n+k-1`` all vanish.
    """
    k, ell = gap.k, gap.ell
    if kind is MultiplierKind.RS:
        return k
    check_kind_admissible(gap, kind)
    if kind is MultiplierKind.Q3:
        return 2 * k
    if kind is MultiplierKind.Q1:
        return k + ell if ell < k else 2 * k - 1
    # Q2
    if ell < k:
        return k + ell - 1
    if ell > k:
        return 2 * k
    return 2 * k - 1


def leading_zero_count_from_mask(nonzero: Sequence[bool]) -> int:
    """Zeros strictly between the leading coefficient and the next nonzero one."""
    n = len(nonzero) - 1
    count = 0
    for j in range(n - 1, -1, -1):
        if nonzero[j]:
            break
        count += 1
    return count
