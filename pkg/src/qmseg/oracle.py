"""Brute-force reference computations used to cross-check the fast paths.

Everything here is deliberately naive and bounded: the label oracle works
from the raw pair definition instead of a stack, and the segmentation oracle
enumerates every breakpoint subset.  Inputs beyond the caps raise instead of
being truncated.

Equal-valued extrema of the same sense make the pair definition ambiguous.
By default ties are broken symbolically: a later maximum counts as
infinitesimally higher than an earlier one of equal value, a later minimum
as infinitesimally lower.  The scale of a pair is still the plain value gap.
``relabel`` keeps the literal post-hoc rule for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

MAX_PAIR_LENGTH = 64
MAX_BRUTE_FORCE_LENGTH = 20


@dataclass(frozen=True)
class StarPair:
    """An index pair whose interior stays strictly inside its endpoint gap."""

    first: int
    second: int
    scale: float
    increasing: bool


@dataclass(frozen=True)
class OracleResult:
    best_error: float
    best_breakpoints: tuple[int, ...]


def extremum_kinds(values: Sequence[float]) -> dict[int, str]:
    """Map each extremum position to ``"max"`` or ``"min"`` (strict comparisons)."""
    n = len(values)
    kinds = {}
    for i, v in enumerate(values):
        left = values[i - 1] if i > 0 else None
        right = values[i + 1] if i < n - 1 else None
        if (left is None or v > left) and (right is None or v > right):
            kinds[i] = "max"
        elif (left is None or v < left) and (right is None or v < right):
            kinds[i] = "min"
    return kinds


def _order_keys(values, tie_break):
    if not tie_break:
        return [(v, 0) for v in values]
    kinds = extremum_kinds(values)
    offset = {"max": 1, "min": -1}
    return [(v, offset.get(kinds.get(i), 0) * i) for i, v in enumerate(values)]


def _pairs(values, tie_break):
    # (first, second, order key of the scale, increasing)
    n = len(values)
    if n > MAX_PAIR_LENGTH:
        raise ValueError(f"pair enumeration is capped at {MAX_PAIR_LENGTH} samples, got {n}")
    key = _order_keys(values, tie_break)
    out = []
    for i in range(n):
        ki = key[i]
        lo = hi = None  # interior extremes seen so far
        for j in range(i + 1, n):
            kj = key[j]
            if kj != ki:
                up = kj > ki
                inside = lo is None or (lo > ki and hi < kj if up else lo > kj and hi < ki)
                if inside:
                    a, b = (ki, kj) if up else (kj, ki)
                    out.append((i, j, (b[0] - a[0], b[1] - a[1]), up))
            if lo is None:
                lo = hi = kj
            elif kj < lo:
                lo = kj
            elif kj > hi:
                hi = kj
    return out


def enumerate_pairs(values: Sequence[float], *, tie_break: bool = True) -> list[StarPair]:
    """Every pair ``(i, j)`` whose interior values lie strictly between ``v[i]`` and ``v[j]``.

    This is the pair condition taken at its own gap: for ``delta = |v[j] - v[i]| > 0``
    every interior ``z`` has ``|v[z] - v[i]| < delta`` and ``|v[j] - v[z]| < delta``.
    """
    return [
        StarPair(i, j, abs(values[j] - values[i]), up)
        for i, j, _, up in _pairs(values, tie_break)
    ]


def _maximal(pairs):
    inc = [p for p in pairs if p[3]]
    dec = [p for p in pairs if not p[3]]
    result = []
    for same, opposite in ((inc, dec), (dec, inc)):
        for pi, pj, ps, up in same:
            maximal = True
            for qi, qj, qs, _ in same:
                if qs > ps and qi <= pi and pj <= qj:
                    # q must hold an opposite pair that in turn holds p
                    if not any(qi <= wi <= pi and pj <= wj <= qj for wi, wj, _, _ in opposite):
                        maximal = False
                        break
            if maximal:
                result.append((pi, pj, ps, up))
    return result


def maximal_pairs(values: Sequence[float], *, tie_break: bool = True) -> list[StarPair]:
    """Pairs not swallowed by a larger same-direction pair.

    ``p`` is maximal when each same-direction pair of strictly larger scale
    containing ``p`` also contains an opposite-direction pair containing ``p``.
    """
    found = _maximal(_pairs(values, tie_break))
    found.sort(key=lambda p: (p[0], p[1]))
    return [StarPair(i, j, abs(values[j] - values[i]), up) for i, j, _, up in found]


def raw_labels(values: Sequence[float], *, tie_break: bool = True) -> dict[int, float]:
    """Largest scale among maximal pairs ending at each position."""
    labels: dict[int, float] = {}
    for i, j, _, _ in _maximal(_pairs(values, tie_break)):
        gap = abs(values[j] - values[i])
        for end in (i, j):
            if labels.get(end, -1.0) < gap:
                labels[end] = gap
    return labels


def relabel(labels: dict[int, float], kinds: dict[int, str]) -> dict[int, float]:
    """Literal resolution of equal-valued same-sense extrema on untied labels.

    For same-sense ``z1 < z2`` with no extremum strictly between them labeled
    at least ``min(label(z1), label(z2))``, ``z1`` takes the largest label among
    the opposite-sense extrema between them.
    """
    positions = sorted(labels)
    out = dict(labels)
    for a, z1 in enumerate(positions):
        replacement = None
        for b in range(a + 1, len(positions)):
            z2 = positions[b]
            if kinds[z2] != kinds[z1]:
                continue
            inner = positions[a + 1:b]
            floor = min(labels[z1], labels[z2])
            if any(labels[z] >= floor for z in inner):
                continue
            opposite = max(labels[z] for z in inner if kinds[z] != kinds[z1])
            replacement = opposite if replacement is None else max(replacement, opposite)
        if replacement is not None:
            out[z1] = replacement
    return out


def oracle_labels(values: Sequence[float]) -> dict[int, float]:
    """Scale label of every extremum, derived from pair enumeration.

    ``values`` must not contain consecutive equal entries.
    """
    if any(values[i] == values[i + 1] for i in range(len(values) - 1)):
        raise ValueError("oracle_labels expects consecutive duplicates removed")
    return raw_labels(values, tie_break=True)


def _segment_error(values: Sequence[float], lo: int, hi: int) -> float:
    """Half the worst move against the endpoint direction, by double loop."""
    if values[hi] == values[lo]:
        chunk = values[lo:hi + 1]
        return (max(chunk) - min(chunk)) / 2
    sign = 1.0 if values[hi] > values[lo] else -1.0
    worst = 0.0
    for i in range(lo, hi + 1):
        for j in range(i, hi + 1):
            worst = max(worst, sign * (values[i] - values[j]))
    return worst / 2


def brute_force_omafe(values: Sequence[float], k: int) -> OracleResult:
    """Minimum segmentation error over alternating segmentations with <= k segments.

    Every subset of interior indices of size <= k - 1 is tried.  A segment's sign
    is taken from its endpoint difference with zero counting as positive, and
    consecutive signs must alternate.  Ties go to the lexicographically smallest
    breakpoint tuple.
    """
    n = len(values)
    if n > MAX_BRUTE_FORCE_LENGTH:
        raise ValueError(f"brute_force_omafe is capped at {MAX_BRUTE_FORCE_LENGTH} samples, got {n}")
    if n == 0:
        raise ValueError("empty input")
    if k < 1:
        raise ValueError("k must be >= 1")
    if n == 1:
        return OracleResult(0.0, (0, 0))

    error = {}
    for lo in range(n):
        for hi in range(lo + 1, n):
            error[lo, hi] = _segment_error(values, lo, hi)

    best: tuple[float, tuple[int, ...]] | None = None
    for size in range(0, min(k - 1, n - 2) + 1):
        for interior in combinations(range(1, n - 1), size):
            bps = (0, *interior, n - 1)
            signs = [values[b] >= values[a] for a, b in zip(bps, bps[1:])]
            if any(s == t for s, t in zip(signs, signs[1:])):
                continue
            total = max(error[a, b] for a, b in zip(bps, bps[1:]))
            if best is None or (total, bps) < best:
                best = (total, bps)
    assert best is not None
    return OracleResult(best[0], best[1])
