from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .structure import MultiplierKind


@dataclass(frozen=True)
class TraceLevel:
    level: int
    radius: float
    kind: Optional[MultiplierKind]  # None at level 0
    degree: int
    leading_zeros: int
    seconds: float = field(default=0.0, compare=False)


@dataclass
class BoundTrace:
    """Radius ladder produced by repeated multiplication."""

    levels: list[TraceLevel] = field(default_factory=list)

    @property
    def radii(self) -> list[float]:
        return [lv.radius for lv in self.levels]

    @property
    def kinds(self) -> list[Optional[MultiplierKind]]:
        return [lv.kind for lv in self.levels]

    @property
    def degrees(self) -> list[int]:
        return [lv.degree for lv in self.levels]

    def __len__(self) -> int:
        return len(self.levels)

    def __getitem__(self, i: int) -> TraceLevel:
        return self.levels[i]

    def is_monotone(self, rel_tol: float = 1e-10) -> bool:
        r = self.radii
        return all(b <= a * (1.0 + rel_tol) for a, b in zip(r, r[1:]))
