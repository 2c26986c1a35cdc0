"""Height-based lower bounds for nonzero polynomial values at algebraic points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


__all__ = ["SeparationContext", "separation_bound"]


@dataclass(frozen=True)
class SeparationContext:
    """Data entering the Liouville-type bound for a fixed point ``lambda``.

    ``heights[j]`` must bound the absolute multiplicative height of the j-th
    coordinate and ``degree_bound`` the degree of Q(lambda) over Q.  Larger
    values only weaken the bound.
    """

    heights: tuple
    degree_bound: int

    def __post_init__(self):
        object.__setattr__(self, "heights", tuple(int(h) for h in self.heights))
        if any(h < 1 for h in self.heights):
            raise ValueError("heights must be >= 1")
        if self.degree_bound < 1:
            raise ValueError("degree bound must be >= 1")

    @property
    def nvars(self) -> int:
        return len(self.heights)

    @property
    def max_height(self) -> int:
        return max(self.heights, default=1)

    @classmethod
    def for_scalars(cls, scalars) -> "SeparationContext":
        scalars = list(scalars)
        distinct = []
        for x in scalars:
            if not x.is_rational and not any(x == y for y in distinct):
                distinct.append(x)
        degree = 1
        for x in distinct:
            degree *= x.degree
        return cls(tuple(x.weil_height_bound() for x in scalars), degree)


def separation_bound(ctx: SeparationContext, l: int, n: int) -> Fraction:
    """``(l * n**(m+1) * H**((m+1) n)) ** -D`` for the class P(l, n)."""
    if l < 1 or n < 1:
        raise ValueError("l and n must be >= 1")
    v = ctx.nvars
    base = l * n**v * ctx.max_height ** (v * n)
    return Fraction(1, base**ctx.degree_bound)
