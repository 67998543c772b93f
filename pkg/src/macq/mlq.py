"""Martin's multiline queues and their correspondence with sorted
quinv-non-attacking tableaux.

A queue lives on an n-column cylindric lattice with one row per diagram row;
row r carries one particle per diagram cell in that row.  Pairings connect
each particle in row r to a particle in row r-1, are processed top row
first (within a row: taller columns first, left to right), and a particle
with an unpaired particle directly below it must pair trivially.  Weights
are computed by simulating exactly that queue discipline on the lattice,
which makes them an independent route to the tableau weights.
"""

from __future__ import annotations

from . import fillings, shapes
from .fillings import Q
from .qtalg import POLY_ONE, PolyQT, QTRat, XPoly, accumulate_term, binom_factor


class MultilineQueue:
    """Particle system plus pairing data.

    rows[r-1] is the tuple of occupied lattice columns of row r (ascending);
    pairs[r-2] aligns with rows[r-1] and gives each particle's partner
    column in row r-1.
    """

    __slots__ = ("n", "rows", "pairs")

    def __init__(self, n, rows, pairs):
        self.n = n
        self.rows = tuple(tuple(sorted(row)) for row in rows)
        self.pairs = tuple(tuple(p) for p in pairs)
        if len(self.pairs) != max(len(self.rows) - 1, 0):
            raise ValueError("need pairing data for every row above the first")
        for r, row in enumerate(self.rows, start=1):
            if len(set(row)) != len(row):
                raise ValueError(f"row {r} occupies a column twice")
            for c in row:
                if not 1 <= c <= n:
                    raise ValueError(f"column {c} outside 1..{n}")
        for r in range(2, len(self.rows) + 1):
            row = self.rows[r - 1]
            pr = self.pairs[r - 2]
            if len(pr) != len(row):
                raise ValueError(f"row {r} pairing data has wrong length")
            below = set(self.rows[r - 2])
            if any(c not in below for c in pr):
                raise ValueError(f"row {r} pairs to an unoccupied site")
            if len(set(pr)) != len(pr):
                raise ValueError(f"row {r} pairs to a site twice")

    def partner(self, r, col):
        """Partner column in row r-1 of the particle at (r, col)."""
        idx = self.rows[r - 1].index(col)
        return self.pairs[r - 2][idx]

    def __eq__(self, other):
        return (
            isinstance(other, MultilineQueue)
            and self.n == other.n
            and self.rows == other.rows
            and self.pairs == other.pairs
        )

    def __hash__(self):
        return hash((self.n, self.rows, self.pairs))

    def column_chains(self):
        """Pairing chains, one per tableau column, as lattice-column lists
        read top to bottom; ordered by height descending then top ascending."""
        n_rows = len(self.rows)
        targets = [set(p) for p in self.pairs]  # paired-to columns per row
        chains = []
        for r in range(n_rows, 0, -1):
            for c in self.rows[r - 1]:
                if r < n_rows and c in targets[r - 1]:
                    continue  # paired from above: not a chain top
                chain = [c]
                row = r
                while row >= 2:
                    chain.append(self.partner(row, chain[-1]))
                    row -= 1
                chains.append((r, chain))
        chains.sort(key=lambda rc: (-rc[0], rc[1][0]))
        return chains

    def labels(self):
        """{(row, column): label}; a particle's label is its chain height."""
        out = {}
        for height, chain in self.column_chains():
            for step, col in enumerate(chain):
                out[(height - step, col)] = height
        return out

    def to_json_dict(self):
        labels = self.labels()
        doc = {"n": self.n, "rows": []}
        for r, row in enumerate(self.rows, start=1):
            entry = {"columns": list(row), "labels": [labels[(r, c)] for c in row]}
            if r >= 2:
                entry["pairs"] = list(self.pairs[r - 2])
            doc["rows"].append(entry)
        return doc

    @staticmethod
    def from_json_dict(doc):
        rows = [tuple(entry["columns"]) for entry in doc["rows"]]
        pairs = [tuple(entry["pairs"]) for entry in doc["rows"][1:]]
        return MultilineQueue(doc["n"], rows, pairs)

    def render(self):
        """ASCII cylinder: one line per row (top first), labels at occupied
        sites, then one line per non-trivial pairing."""
        labels = self.labels()
        lines = []
        for r in range(len(self.rows), 0, -1):
            occupied = {c: labels[(r, c)] for c in self.rows[r - 1]}
            cells = " ".join(
                str(occupied.get(c, ".")) for c in range(1, self.n + 1)
            )
            lines.append(f"row {r} | {cells} |")
        for rec in simulate_pairings(self):
            if rec["trivial"]:
                continue
            lines.append(
                "pair row {r}->{below}: col {a}->{b}  s={s} f={f}".format(
                    r=rec["row"], below=rec["row"] - 1,
                    a=rec["from"], b=rec["to"], s=rec["s"], f=rec["f"],
                )
            )
        return "\n".join(lines)


def mlq_from_tableau(f, n=None):
    """The multiline queue of a coquinv-sorted quinv-non-attacking filling:
    row r occupies the lattice columns read from row r of the filling, and
    each cell pairs with the cell below it in the same tableau column."""
    bad = fillings.attacking_violation(f, "quinv")
    if bad is not None:
        raise ValueError(f"not quinv-non-attacking: cells {bad[0]},{bad[1]}")
    if not fillings.is_coquinv_sorted(f):
        raise ValueError("tableau is not coquinv-sorted")
    lam = f.shape
    conj = shapes.conjugate(lam)
    if n is None:
        n = max((v for col in f.cols for v in col), default=1)
    n_rows = lam[0] if lam else 0
    rows = [
        tuple(f.entry(r, k) for k in range(1, conj[r - 1] + 1))
        for r in range(1, n_rows + 1)
    ]
    pairs = []
    for r in range(2, n_rows + 1):
        row_sorted = tuple(sorted(rows[r - 1]))
        partner = {f.entry(r, k): f.entry(r - 1, k) for k in range(1, conj[r - 1] + 1)}
        pairs.append(tuple(partner[c] for c in row_sorted))
    return MultilineQueue(n, rows, pairs)


def tableau_from_mlq(m):
    """Inverse of :func:`mlq_from_tableau`; errors when the pairing data is
    not that of a sorted non-attacking tableau."""
    chains = m.column_chains()
    heights = tuple(h for h, _ in chains)
    if any(heights[i] < heights[i + 1] for i in range(len(heights) - 1)):
        raise ValueError("chain heights do not form a partition")
    lam = heights
    cols = [tuple(reversed(chain)) for _, chain in chains]
    f = fillings.Filling(lam, cols)
    bad = fillings.attacking_violation(f, "quinv")
    if bad is not None:
        raise ValueError(f"pairings give an attacking tableau at {bad[0]},{bad[1]}")
    if not fillings.is_coquinv_sorted(f):
        raise ValueError("pairings do not give a sorted tableau")
    for r in range(1, (lam[0] if lam else 0) + 1):
        expected = tuple(sorted(m.rows[r - 1]))
        got = tuple(sorted(f.entry(r, k) for k in range(1, shapes.conjugate(lam)[r - 1] + 1)))
        if expected != got:
            raise ValueError("row occupancy inconsistent with pairings")
    return f


def simulate_pairings(m):
    """Run the queue discipline on the lattice and return one record per
    pairing, in processing order.

    Rows are processed top down; within a row, pairings go in tableau-column
    order (taller chains first, left to right), which realises the pairing
    permutations prescribed by the tableau correspondence.  s counts the
    unpaired particles cyclically strictly between the endpoints looking
    right from the row-r particle, f the unpaired particles left in the row
    below after the pairing; a particle must pair trivially whenever its own
    column below is still unpaired.
    """
    chains = m.column_chains()
    records = []
    n_rows = len(m.rows)
    for r in range(n_rows, 1, -1):
        unpaired = set(m.rows[r - 2])
        for k, (height, chain) in enumerate(chains, start=1):
            if height < r:
                continue
            src = chain[height - r]
            dst = chain[height - r + 1]
            if dst not in unpaired:
                raise ValueError(f"column {dst} in row {r - 1} paired twice")
            if src in unpaired and dst != src:
                raise ValueError(
                    f"particle at row {r}, column {src} must pair trivially"
                )
            s = 0
            if dst != src:
                c = src % m.n + 1
                while c != dst:
                    if c in unpaired:
                        s += 1
                    c = c % m.n + 1
            unpaired.discard(dst)
            records.append({
                "row": r,
                "tableau_column": k,
                "label": height,
                "from": src,
                "to": dst,
                "trivial": dst == src,
                "s": s,
                "f": len(unpaired),
                "wraps": dst < src,
            })
    return records


def pairing_stats(m):
    """(row, tableau column, s, f) for each non-trivial pairing."""
    return [
        (rec["row"], rec["tableau_column"], rec["s"], rec["f"])
        for rec in simulate_pairings(m)
        if not rec["trivial"]
    ]


def coquinv_at_cell(f, r, k):
    """Number of coquinv L-triples whose upper cell is (r, k)."""
    conj = shapes.conjugate(f.shape)
    return sum(
        1
        for j in range(k + 1, conj[r - 2] + 1)
        if Q(f.entry(r, k), f.entry(r - 1, k), f.entry(r - 1, j)) == 1
    )


def wt_martin_t(m):
    """Product over non-trivial pairings of t^s (1-t) / (1-t^(f+1))."""
    num = POLY_ONE
    den = POLY_ONE
    for rec in simulate_pairings(m):
        if rec["trivial"]:
            continue
        num = num * PolyQT.monomial(0, rec["s"]) * binom_factor(0, 1)
        den = den * binom_factor(0, rec["f"] + 1)
    return QTRat(num, den)


def wt_martin_full(m):
    """Full x,q,t weight: x^M q^maj(M) times, per non-trivial pairing,
    t^s (1-t) / (1 - q^(label-row+1) t^(f+1)); maj(M) adds label-row+1 for
    each pairing that wraps around the cylinder."""
    exps = [0] * m.n
    for row in m.rows:
        for c in row:
            exps[c - 1] += 1
    maj = 0
    num = POLY_ONE
    den = POLY_ONE
    for rec in simulate_pairings(m):
        if rec["trivial"]:
            continue
        span = rec["label"] - rec["row"] + 1
        if rec["wraps"]:
            maj += span
        num = num * PolyQT.monomial(0, rec["s"]) * binom_factor(0, 1)
        den = den * binom_factor(span, rec["f"] + 1)
    return tuple(exps), QTRat(PolyQT.monomial(maj, 0) * num, den)


def enumerate_mlq(lam, n):
    """All multiline queues of the given type, via the sorted tableaux."""
    for f in fillings.enumerate_fillings(lam, n, "quinv_na_coquinv_sorted"):
        yield mlq_from_tableau(f, n)


def build_P_mlq(lam, n_vars):
    """P as the weighted sum over Martin's multiline queues.

    Every queue weight is re-based onto one common denominator (checked by
    exact division) so that accumulating thousands of terms stays linear.
    """
    from .formulas import rarm_product
    from .qtalg import divide_exact

    common = rarm_product(tuple(lam))
    terms = {}
    for m in enumerate_mlq(lam, n_vars):
        exps, coeff = wt_martin_full(m)
        cofactor = divide_exact(common, coeff.den)
        if cofactor is not None:
            coeff = QTRat(coeff.num * cofactor, common)
        accumulate_term(terms, exps, coeff)
    return XPoly(n_vars, terms)


def beta(alpha):
    """Words selecting the positions of the positive parts of alpha in
    weakly decreasing part order (all tie orders)."""
    positions = [i for i, p in enumerate(alpha, start=1) if p > 0]

    def rec(remaining, prev):
        if not remaining:
            yield ()
            return
        for idx, pos in enumerate(remaining):
            part = alpha[pos - 1]
            if prev is not None and part > prev:
                continue
            for rest in rec(remaining[:idx] + remaining[idx + 1 :], part):
                yield (pos,) + rest

    return set(rec(positions, None))


def f_alpha(alpha):
    """Conjectural ASEP component: the part of the compact quinv sum whose
    bottom row is compatible with the composition alpha.  Summing over all
    rearrangement classes of a partition recovers P."""
    from .formulas import wt_P_quinv

    alpha = tuple(alpha)
    if any(p < 0 for p in alpha):
        raise ValueError("composition parts must be nonnegative")
    n_vars = len(alpha)
    lam = shapes.sort_comp(alpha)
    words = beta(alpha)
    terms = {}
    if lam:
        for f in fillings.enumerate_fillings(lam, n_vars, "quinv_na_coquinv_sorted"):
            if fillings.bottom_border(f) in words:
                exps, coeff = wt_P_quinv(f, n_vars)
                accumulate_term(terms, exps, coeff)
    return XPoly(n_vars, terms)
