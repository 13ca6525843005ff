"""Nonlinear sequence transforms for slowly converging partial sums.

Both transforms are exact on geometric tails: fed partial sums of
a + a*r + a*r^2 + ..., they recover the limit from a handful of terms.
Near the spectral band edge the Green-function series converges only
algebraically and the epsilon algorithm is the workhorse; iterated
Aitken is kept as a cheap cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegenerateDifference


@dataclass
class PartialSumSequence:
    """Partial sums S_0, S_1, ... of a series, tagged with their origin."""

    sums: list[float] = field(default_factory=list)
    source_method: str = "series5"

    def __post_init__(self) -> None:
        if len(self.sums) < 1:
            raise ValueError("need at least one partial sum")
        if not all(math.isfinite(s) for s in self.sums):
            raise ValueError("partial sums must be finite")


def _dedupe(sums: list[float]) -> list[float]:
    out = [sums[0]]
    for s in sums[1:]:
        if s != out[-1]:
            out.append(s)
    return out


def _wynn_even_columns(sums: list[float]) -> list[float]:
    """Last entry of every even epsilon column, in increasing column order.

    Builds Wynn's lozenge column by column; growth stops early at a zero
    or non-finite inverse difference, where deeper columns carry no
    information.
    """
    prev2 = [0.0] * (len(sums) + 1)  # epsilon_{-1}
    prev1 = list(sums)  # epsilon_0
    evens = [prev1[-1]]
    col = 0
    while len(prev1) >= 2:
        col += 1
        cur = []
        for idx in range(len(prev1) - 1):
            diff = prev1[idx + 1] - prev1[idx]
            if diff == 0.0 or not math.isfinite(diff):
                # equal entries inside an even column are a converged value
                if col % 2 == 1 and math.isfinite(prev1[idx]):
                    return evens + [prev1[idx]]
                return evens
            entry = prev2[idx + 1] + 1.0 / diff
            if not math.isfinite(entry):
                return evens
            cur.append(entry)
        if col % 2 == 0:
            evens.append(cur[-1])
        prev2, prev1 = prev1, cur
    return evens


def wynn_epsilon(seq: PartialSumSequence, raise_on_degenerate: bool = False) -> float:
    """Limit estimate from the deepest even column of Wynn's epsilon table.

    Exactly equal consecutive sums mean the raw series has stalled; the
    stalled value is returned (it is the limit whenever the stall is real
    convergence), unless ``raise_on_degenerate`` asks for the strict
    behaviour.
    """
    sums = _dedupe(seq.sums)
    if len(sums) < len(seq.sums) and raise_on_degenerate:
        raise DegenerateDifference("consecutive partial sums are equal")
    if len(sums) < 3:
        return sums[-1]
    return _wynn_even_columns(sums)[-1]


def wynn_epsilon_with_estimate(seq: PartialSumSequence) -> tuple[float, float]:
    """(limit estimate, heuristic error) from the epsilon table.

    The error heuristic is the absolute difference between the last two
    even-column entries; for a degenerate (stalled) input it is 0.
    """
    sums = _dedupe(seq.sums)
    if len(sums) < 3:
        return sums[-1], 0.0
    evens = _wynn_even_columns(sums)
    if len(evens) < 2:
        return evens[-1], abs(evens[-1] - sums[-1])
    return evens[-1], abs(evens[-1] - evens[-2])


def aitken_delta2(seq: PartialSumSequence, raise_on_degenerate: bool = False) -> float:
    """Iterated Aitken delta-squared extrapolation; returns the last entry.

    Each pass maps S_i -> S_{i+2} - (S_{i+2} - S_{i+1})^2 / (second
    difference) and shortens the sequence by two; passes repeat until
    fewer than three points remain.  Zero second differences stop the
    iteration at the current stage.
    """
    sums = _dedupe(seq.sums)
    if len(sums) < len(seq.sums) and raise_on_degenerate:
        raise DegenerateDifference("consecutive partial sums are equal")
    while len(sums) >= 3:
        nxt = []
        for i in range(len(sums) - 2):
            d2 = sums[i + 2] - sums[i + 1]
            d1 = sums[i + 1] - sums[i]
            denom = d2 - d1
            if denom == 0.0 or not math.isfinite(denom):
                return sums[-1]
            entry = sums[i + 2] - d2 * d2 / denom
            if not math.isfinite(entry):
                return sums[-1]
            nxt.append(entry)
        sums = nxt
    return sums[-1]
