"""Partitions, compositions and cell statistics on bottom-justified diagrams.

Conventions (shared by every module): a partition is a weakly decreasing
tuple of positive ints; the diagram of ``lam`` has ``lam[c-1]`` cells in
column c; rows are indexed 1 = bottom upwards, columns 1 = leftmost
rightwards.  A cell is the pair (row, col).
"""

from __future__ import annotations

from functools import lru_cache

from .qtalg import POLY_ONE, t_bracket_factorial


def check_partition(lam):
    lam = tuple(lam)
    if any(p <= 0 for p in lam):
        raise ValueError(f"partition parts must be positive: {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"parts must be weakly decreasing: {lam}")
    return lam


def parse_partition(text):
    """Parse "4,3,3,1" (empty string = empty partition)."""
    text = text.strip()
    if not text:
        return ()
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse partition {text!r}") from None
    return check_partition(parts)


def format_partition(lam):
    return ",".join(str(p) for p in lam)


@lru_cache(maxsize=None)
def conjugate(lam):
    """lam'_j = #{i : lam_i >= j}; an involution."""
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1))


def n_stat(lam):
    """n(lam) = sum of C(lam'_i, 2); the total triple count of the shape."""
    return sum(c * (c - 1) // 2 for c in conjugate(lam))


def cells(lam):
    for c, height in enumerate(lam, start=1):
        for r in range(1, height + 1):
            yield (r, c)


def cells_above_bottom(lam):
    for c, height in enumerate(lam, start=1):
        for r in range(2, height + 1):
            yield (r, c)


def in_diagram(lam, cell):
    r, c = cell
    return 1 <= c <= len(lam) and 1 <= r <= lam[c - 1]


def _require(lam, cell):
    if not in_diagram(lam, cell):
        raise ValueError(f"cell {cell} outside diagram of {lam}")


def leg(lam, cell):
    """Number of cells above in the same column: lam_c - r."""
    _require(lam, cell)
    r, c = cell
    return lam[c - 1] - r


def arm(lam, cell):
    """Number of cells strictly right in the same row: lam'_r - c."""
    _require(lam, cell)
    r, c = cell
    return conjugate(lam)[r - 1] - c


def rarm(lam, cell):
    """Number of cells in the row below strictly to the right: lam'_{r-1} - c.

    Undefined on the bottom row; the formulas that use it only ever look at
    cells whose South neighbour exists.
    """
    _require(lam, cell)
    r, c = cell
    if r < 2:
        raise ValueError(f"rarm undefined on bottom-row cell {cell}")
    return conjugate(lam)[r - 2] - c


def compatible_indices(lam):
    """Indices i with lam_i = lam_{i+1} (columns i, i+1 swappable)."""
    return {i for i in range(1, len(lam)) if lam[i - 1] == lam[i]}


def comparable_blocks(lam):
    """Maximal runs [lo, hi] (1-based, inclusive) of equal column heights."""
    blocks = []
    i = 0
    while i < len(lam):
        j = i
        while j + 1 < len(lam) and lam[j + 1] == lam[i]:
            j += 1
        blocks.append((i + 1, j + 1))
        i = j + 1
    return blocks


def multiplicities(lam):
    """{part size: multiplicity}."""
    mult = {}
    for p in lam:
        mult[p] = mult.get(p, 0) + 1
    return mult


@lru_cache(maxsize=None)
def perm_lambda(lam):
    """The t-stabilizer of lam: product of [m_i]_t! over part multiplicities."""
    out = POLY_ONE
    for m in multiplicities(lam).values():
        out = out * t_bracket_factorial(m)
    return out


def sort_comp(alpha):
    """Weakly decreasing rearrangement, zero parts dropped."""
    return tuple(sorted((p for p in alpha if p), reverse=True))


def inc_comp(alpha):
    """Weakly increasing rearrangement, zero parts kept."""
    return tuple(sorted(alpha))


def dominance_leq(mu, lam):
    """mu <= lam in dominance order (equal sizes assumed)."""
    total_mu = total_lam = 0
    for k in range(max(len(mu), len(lam))):
        total_mu += mu[k] if k < len(mu) else 0
        total_lam += lam[k] if k < len(lam) else 0
        if total_mu > total_lam:
            return False
    return True


def partitions_of(n, max_part=None):
    """All partitions of n, largest part first, in lex-decreasing order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest
