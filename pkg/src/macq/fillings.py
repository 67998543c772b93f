"""Fillings of partition diagrams and their statistics.

Letters are plain ints: v > 0 is the ordinary letter v, v < 0 is the barred
letter |v| from the super alphabet, and two sentinels bound the order:

    ZERO < 1 < bar(1) < 2 < bar(2) < ... < INFINITY

Degenerate triples are evaluated through the same I/Q functions with a
sentinel in the missing slot (ZERO for L-triples, INFINITY for gamma
triples), so there is a single code path for all triple counting.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache

from . import shapes
from .qtalg import RAT_ONE, gaussian_multinomial

ZERO = 0
INFINITY = float("inf")


def bar(v):
    """The barred version of a positive letter."""
    if v <= 0:
        raise ValueError("only positive letters can be barred")
    return -v


def is_barred(a):
    return isinstance(a, int) and a < 0


def letter_key(a):
    """Rank in the total order ZERO < 1 < bar(1) < 2 < bar(2) < ... < INF."""
    if a is INFINITY or a == INFINITY:
        return INFINITY
    if a == 0:
        return 0
    return 2 * a - 1 if a > 0 else -2 * a


def I(a, b):
    """Generalised descent: 1 iff a > b, or a = b barred; 0 otherwise."""
    ka, kb = letter_key(a), letter_key(b)
    if ka != kb:
        return 1 if ka > kb else 0
    return 1 if is_barred(a) else 0


def Q(a, b, c):
    """Triple classifier: 0 iff exactly one of I(a,b)=1, I(c,b)=0, I(a,c)=0.

    On unbarred letters this is 0 exactly when a <= b < c, c < a <= b or
    b < c < a; an L-triple (or gamma triple) with Q = 0 is a (queue)
    inversion.
    """
    hits = (I(a, b) == 1) + (I(c, b) == 0) + (I(a, c) == 0)
    return 0 if hits == 1 else 1


class Filling:
    """An assignment of letters to the cells of a partition diagram.

    Entries are stored per column, bottom to top.  Immutable and hashable so
    fillings can key memo tables.
    """

    __slots__ = ("shape", "cols")

    def __init__(self, shape, cols):
        self.shape = shapes.check_partition(shape)
        cols = tuple(tuple(col) for col in cols)
        if len(cols) != len(self.shape):
            raise ValueError("column count does not match shape")
        for c, col in enumerate(cols):
            if len(col) != self.shape[c]:
                raise ValueError(f"column {c + 1} has wrong height")
            for v in col:
                if v == 0:
                    raise ValueError("fillings cannot contain sentinels")
        self.cols = cols

    def entry(self, r, c):
        return self.cols[c - 1][r - 1]

    def __eq__(self, other):
        return (
            isinstance(other, Filling)
            and self.shape == other.shape
            and self.cols == other.cols
        )

    def __hash__(self):
        return hash((self.shape, self.cols))

    def size(self):
        return sum(self.shape)

    def is_super(self):
        return any(v < 0 for col in self.cols for v in col)

    def absolute(self):
        """|sigma|: bars removed."""
        return Filling(self.shape, tuple(tuple(abs(v) for v in col) for col in self.cols))

    def positives(self):
        return sum(1 for col in self.cols for v in col if v > 0)

    def negatives(self):
        return sum(1 for col in self.cols for v in col if v < 0)

    def x_exponents(self, n_vars):
        """Exponent vector of x^sigma (bars ignored, as in x^{|sigma|})."""
        exps = [0] * n_vars
        for col in self.cols:
            for v in col:
                a = abs(v)
                if a > n_vars:
                    raise ValueError(f"entry {a} exceeds {n_vars} variables")
                exps[a - 1] += 1
        return tuple(exps)

    def with_cols(self, cols):
        out = Filling.__new__(Filling)
        out.shape = self.shape
        out.cols = tuple(tuple(col) for col in cols)
        return out

    def rows_top_first(self):
        conj = shapes.conjugate(self.shape)
        return [
            tuple(self.cols[c][r - 1] for c in range(conj[r - 1]))
            for r in range(self.shape[0], 0, -1)
        ]

    def __str__(self):
        return "\n".join(
            " ".join(str(v) for v in row) for row in self.rows_top_first()
        )

    def __repr__(self):
        return f"Filling({self.shape}, {self.cols})"

    def to_json_dict(self):
        return {"partition": list(self.shape), "columns": [list(c) for c in self.cols]}

    @staticmethod
    def from_json_dict(doc):
        return Filling(tuple(doc["partition"]), doc["columns"])

    @staticmethod
    def parse(text):
        """Parse either the columns JSON or the visual row layout."""
        text = text.strip()
        if text.startswith("{"):
            return Filling.from_json_dict(json.loads(text))
        rows = [
            tuple(int(v) for v in line.split())
            for line in text.splitlines()
            if line.strip()
        ]
        if not rows:
            raise ValueError("empty tableau")
        widths = [len(r) for r in rows]
        if any(widths[i] > widths[i + 1] for i in range(len(widths) - 1)):
            raise ValueError("row widths must widen towards the bottom")
        n_cols = widths[-1]
        shape = tuple(sum(1 for w in widths if w >= c) for c in range(1, n_cols + 1))
        rows.reverse()  # now bottom first
        cols = [
            tuple(rows[r][c] for r in range(shape[c]))
            for c in range(n_cols)
        ]
        return Filling(shape, cols)


@lru_cache(maxsize=None)
def triples(lam, kind):
    """All triples of the shape as (a_cell, b_cell, c_cell); None marks the
    degenerate slot (read as ZERO for L-triples, INFINITY for gamma).

    Including the degenerate ones there are exactly n(lam) triples of each
    kind.
    """
    conj = shapes.conjugate(lam)
    out = []
    if kind == "L":
        for r in range(2, lam[0] + 1 if lam else 1):
            for i in range(1, conj[r - 1] + 1):
                for j in range(i + 1, conj[r - 2] + 1):
                    out.append(((r, i), (r - 1, i), (r - 1, j)))
        for i in range(1, len(lam) + 1):
            for j in range(i + 1, len(lam) + 1):
                if lam[i - 1] == lam[j - 1]:
                    out.append((None, (lam[i - 1], i), (lam[i - 1], j)))
    elif kind == "gamma":
        for r in range(2, lam[0] + 1 if lam else 1):
            for i in range(1, conj[r - 1] + 1):
                for j in range(i + 1, conj[r - 1] + 1):
                    out.append(((r, i), (r - 1, i), (r, j)))
        for i in range(1, len(lam) + 1):
            for j in range(i + 1, len(lam) + 1):
                out.append(((1, i), None, (1, j)))
    else:
        raise ValueError(f"unknown triple kind {kind!r}")
    return tuple(out)


def _count_triples(f, kind, value):
    total = 0
    for a_cell, b_cell, c_cell in triples(f.shape, kind):
        a = ZERO if a_cell is None else f.entry(*a_cell)
        b = INFINITY if b_cell is None else f.entry(*b_cell)
        c = f.entry(*c_cell)
        if Q(a, b, c) == value:
            total += 1
    return total


def quinv(f):
    return _count_triples(f, "L", 0)


def coquinv(f):
    return _count_triples(f, "L", 1)


def inv(f):
    return _count_triples(f, "gamma", 0)


def coinv(f):
    return _count_triples(f, "gamma", 1)


def maj(f):
    """Sum of leg+1 over descents; bottom-row cells never contribute."""
    total = 0
    for c, height in enumerate(f.shape, start=1):
        col = f.cols[c - 1]
        for r in range(1, height + 1):
            below = col[r - 2] if r >= 2 else INFINITY
            if I(col[r - 1], below) == 1:
                total += shapes.leg(f.shape, (r, c)) + 1
    return total


def attacking_pairs(lam, kind):
    """All attacking cell pairs of the shape, left cell first."""
    conj = shapes.conjugate(lam)
    pairs = []
    for r in range(1, lam[0] + 1 if lam else 1):
        for i in range(1, conj[r - 1] + 1):
            for j in range(i + 1, conj[r - 1] + 1):
                pairs.append(((r, i), (r, j)))
    if kind == "quinv":
        for r in range(2, lam[0] + 1 if lam else 1):
            for i in range(1, conj[r - 1] + 1):
                for j in range(i + 1, conj[r - 2] + 1):
                    pairs.append(((r, i), (r - 1, j)))
    elif kind == "inv":
        for r in range(2, lam[0] + 1 if lam else 1):
            for i in range(1, conj[r - 2] + 1):
                for j in range(i + 1, conj[r - 1] + 1):
                    pairs.append(((r - 1, i), (r, j)))
    else:
        raise ValueError(f"unknown attack kind {kind!r}")
    return pairs


def attacking_violation(f, kind):
    """A pair of attacking cells sharing an entry, or None.

    Super fillings are tested through |sigma|.
    """
    g = f.absolute() if f.is_super() else f
    for x, y in attacking_pairs(f.shape, kind):
        if g.entry(*x) == g.entry(*y):
            return (x, y)
    return None


def is_quinv_nonattacking(f):
    return attacking_violation(f, "quinv") is None


def is_inv_nonattacking(f):
    return attacking_violation(f, "inv") is None


def top_border(f):
    """Entries at the tops of the columns, left to right."""
    return tuple(col[-1] for col in f.cols)


def bottom_border(f):
    return tuple(col[0] for col in f.cols)


def _blocks_of(w, lam):
    if len(w) != len(lam):
        raise ValueError("border length does not match shape")
    return shapes.comparable_blocks(lam)


def _check_block_distinct(w, lam):
    for lo, hi in _blocks_of(w, lam):
        block = w[lo - 1 : hi]
        if len(set(block)) != len(block):
            raise ValueError(f"repeated entry in comparable block {block}")


def inc_lambda(w, lam):
    """Blockwise increasing rearrangement of a border word."""
    _check_block_distinct(w, lam)
    out = list(w)
    for lo, hi in _blocks_of(w, lam):
        out[lo - 1 : hi] = sorted(out[lo - 1 : hi])
    return tuple(out)


def dec_lambda(w, lam):
    """Blockwise decreasing rearrangement of a border word."""
    _check_block_distinct(w, lam)
    out = list(w)
    for lo, hi in _blocks_of(w, lam):
        out[lo - 1 : hi] = sorted(out[lo - 1 : hi], reverse=True)
    return tuple(out)


def ell_lambda(w, lam):
    """Number of comparable inversions #{i<j : lam_i=lam_j, w_i>w_j}."""
    _check_block_distinct(w, lam)
    return sum(
        1
        for i in range(len(w))
        for j in range(i + 1, len(w))
        if lam[i] == lam[j] and w[i] > w[j]
    )


def ell_prime_lambda(w, lam):
    """Number of comparable coinversions #{i<j : lam_i=lam_j, w_i<w_j}."""
    _check_block_distinct(w, lam)
    return sum(
        1
        for i in range(len(w))
        for j in range(i + 1, len(w))
        if lam[i] == lam[j] and w[i] < w[j]
    )


def sym_lambda_orbit(w, lam):
    """All blockwise rearrangements of the border word w."""
    _check_block_distinct(w, lam)
    blocks = _blocks_of(w, lam)
    per_block = [
        sorted(set(itertools.permutations(w[lo - 1 : hi]))) for lo, hi in blocks
    ]
    out = []
    for choice in itertools.product(*per_block):
        word = []
        for piece in choice:
            word.extend(piece)
        out.append(tuple(word))
    return out


def is_coquinv_sorted(f):
    """Top border blockwise increasing; input must be quinv-non-attacking."""
    bad = attacking_violation(f, "quinv")
    if bad is not None:
        raise ValueError(f"not quinv-non-attacking: cells {bad[0]},{bad[1]}")
    w = top_border(f)
    return w == inc_lambda(w, f.shape)


def is_coinv_sorted(f, convention="dec"):
    """Bottom border blockwise decreasing; input must be inv-non-attacking.

    Decreasing is the convention under which the compact inv route
    reproduces P (exercised in the tests); convention="inc" keeps the
    opposite reading available for comparison.
    """
    bad = attacking_violation(f, "inv")
    if bad is not None:
        raise ValueError(f"not inv-non-attacking: cells {bad[0]},{bad[1]}")
    w = bottom_border(f)
    if convention == "dec":
        return w == dec_lambda(w, f.shape)
    if convention == "inc":
        return w == inc_lambda(w, f.shape)
    raise ValueError(f"unknown convention {convention!r}")


def is_quinv_sorted(f):
    """quinv(f) minimal under every quinv flip rho_i."""
    from . import flipops

    return all(
        quinv(f) <= quinv(flipops.rho(f, i))
        for i in shapes.compatible_indices(f.shape)
    )


def is_inv_sorted(f):
    """inv(f) minimal under every inv flip tau_i."""
    from . import flipops

    return all(
        inv(f) <= inv(flipops.tau(f, i))
        for i in shapes.compatible_indices(f.shape)
    )


def perm_sigma(f):
    """Product over column heights of the Gaussian multinomial of the
    multiplicities of the distinct columns of that height.

    Equals perm_lambda(t) whenever the filling is non-attacking.
    """
    by_height = {}
    for col in f.cols:
        by_height.setdefault(len(col), []).append(col)
    out = RAT_ONE
    for cols in by_height.values():
        mult = {}
        for col in cols:
            mult[col] = mult.get(col, 0) + 1
        out = out * gaussian_multinomial(len(cols), tuple(mult.values()))
    return out


FILTERS = (
    "all",
    "inv_na",
    "quinv_na",
    "inv_na_coinv_sorted",
    "quinv_na_coquinv_sorted",
    "inv_sorted",
    "quinv_sorted",
)


def enumerate_fillings(lam, n_vars, filt="all"):
    """Stream the fillings dg(lam) -> {1..n_vars} passing the filter.

    Cells are filled column-major (columns left to right, each bottom to
    top) with attack constraints checked incrementally, so the sequence is
    deterministic and heavily pruned.
    """
    if filt not in FILTERS:
        raise ValueError(f"unknown filter {filt!r}")
    if n_vars < 1:
        raise ValueError("need at least one variable")
    lam = shapes.check_partition(lam)
    if not lam:
        yield Filling((), ())
        return
    if filt in ("inv_sorted", "quinv_sorted"):
        check = is_inv_sorted if filt == "inv_sorted" else is_quinv_sorted
        for f in enumerate_fillings(lam, n_vars, "all"):
            if check(f):
                yield f
        return

    quinv_attack = filt in ("quinv_na", "quinv_na_coquinv_sorted")
    inv_attack = filt in ("inv_na", "inv_na_coinv_sorted")
    want_top_sorted = filt == "quinv_na_coquinv_sorted"
    want_bot_sorted = filt == "inv_na_coinv_sorted"
    k = len(lam)
    cols = [None] * k

    def fill_column(c):
        if c == k:
            yield Filling(lam, tuple(cols))
            return
        height = lam[c]
        same_block = c > 0 and lam[c - 1] == lam[c]

        def fill_cell(r, col):
            # r is 0-based within the column here
            if r == height:
                if want_top_sorted and same_block and cols[c - 1][-1] >= col[-1]:
                    return
                cols[c] = tuple(col)
                yield from fill_column(c + 1)
                cols[c] = None
                return
            for v in range(1, n_vars + 1):
                if quinv_attack or inv_attack:
                    row = r + 1
                    clash = False
                    for cp in range(c):
                        other = cols[cp]
                        if len(other) >= row and other[row - 1] == v:
                            clash = True
                            break
                        if quinv_attack and len(other) >= row + 1 and other[row] == v:
                            clash = True
                            break
                        if inv_attack and row >= 2 and other[row - 2] == v:
                            clash = True
                            break
                    if clash:
                        continue
                if (
                    want_bot_sorted
                    and r == 0
                    and same_block
                    and cols[c - 1][0] <= v
                ):
                    continue
                col.append(v)
                yield from fill_cell(r + 1, col)
                col.pop()

        yield from fill_cell(0, [])

    yield from fill_column(0)


def enumerate_superfillings(lam, n_vars, filt="all"):
    """Stream super fillings with letter values in 1..n_vars.

    The filter applies to |sigma|; cost grows like (2 n_vars)^cells, so this
    is only for tiny instances.
    """
    if filt not in ("all", "quinv_na", "inv_na"):
        raise ValueError(f"unknown super filter {filt!r}")
    lam = shapes.check_partition(lam)
    if not lam:
        yield Filling((), ())
        return
    letters = []
    for v in range(1, n_vars + 1):
        letters.extend((v, -v))
    cells = [(r, c) for c in range(1, len(lam) + 1) for r in range(1, lam[c - 1] + 1)]
    kind = "quinv" if filt == "quinv_na" else "inv"
    cols = [[] for _ in lam]

    def attack_ok(r, c, v):
        a = abs(v)
        for cp in range(c - 1):
            other = cols[cp]
            if len(other) >= r and abs(other[r - 1]) == a:
                return False
            if kind == "quinv" and len(other) >= r + 1 and abs(other[r]) == a:
                return False
            if kind == "inv" and r >= 2 and abs(other[r - 2]) == a:
                return False
        return True

    def rec(idx):
        if idx == len(cells):
            yield Filling(lam, tuple(tuple(col) for col in cols))
            return
        r, c = cells[idx]
        for v in letters:
            if filt != "all" and not attack_ok(r, c, v):
                continue
            cols[c - 1].append(v)
            yield from rec(idx + 1)
            cols[c - 1].pop()

    yield from rec(0)
