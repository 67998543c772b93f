"""Per-filling weights and whole-polynomial builders.

Five independent routes to the symmetric Macdonald polynomial P (two quinv
tableau sums, two inv tableau sums, one through multiline queues), two to
the modified polynomial H~ per statistic, the integral form J, super-filling
sums for J, Jack polynomials with two statistics, and a Schur oracle used to
cross-check specializations.  ``verify_suite`` wires all the identities into
one machine-readable report.
"""

from __future__ import annotations

import multiprocessing
import time
from fractions import Fraction
from functools import lru_cache

from . import fillings, flipops, shapes
from .qtalg import (
    POLY_ONE,
    PolyAlpha,
    PolyQT,
    QTRat,
    XPoly,
    accumulate_term,
    binom_factor,
    random_rationals,
)

ONE_MINUS_T = binom_factor(0, 1)


@lru_cache(maxsize=None)
def PR(lam):
    """prod over all cells of (1 - q^leg t^(arm+1)): the J/P scaling factor."""
    out = POLY_ONE
    for u in shapes.cells(lam):
        out = out * binom_factor(shapes.leg(lam, u), shapes.arm(lam, u) + 1)
    return out


@lru_cache(maxsize=None)
def PR_tilde(lam):
    """prod over cells above the bottom row of (1 - q^(leg+1) t^(arm+1))."""
    out = POLY_ONE
    for u in shapes.cells_above_bottom(lam):
        out = out * binom_factor(shapes.leg(lam, u) + 1, shapes.arm(lam, u) + 1)
    return out


@lru_cache(maxsize=None)
def rarm_product(lam):
    """prod over cells above the bottom row of (1 - q^(leg+1) t^(rarm+1))."""
    out = POLY_ONE
    for u in shapes.cells_above_bottom(lam):
        out = out * binom_factor(shapes.leg(lam, u) + 1, shapes.rarm(lam, u) + 1)
    return out


def Pi_lambda(lam):
    """prod over cells above the bottom row of
    (1 - q^(leg+1) t^(arm+1)) / (1 - q^(leg+1) t^(rarm+1))."""
    return QTRat(PR_tilde(lam), rarm_product(lam))


def pr_factorization(lam):
    """Both sides of the factorization of PR through perm and rarm:

        PR = (1-t)^len(lam) * perm_lambda(t) * rarm_product.

    The (1-t)^len factor is forced by the bottom row (check lam=(1): the
    left side is 1-t while perm and the rarm product are both 1); with it,
    dividing the J sum by PR reproduces the quinv P formula exactly.
    """
    rhs = shapes.perm_lambda(lam) * rarm_product(lam)
    rhs = rhs * ONE_MINUS_T ** len(lam)
    return PR(lam), rhs


# --------------------------------------------------------------------------
# Per-filling weights
# --------------------------------------------------------------------------

def _require_nonattacking(f, kind):
    bad = fillings.attacking_violation(f, kind)
    if bad is not None:
        raise ValueError(f"not {kind}-non-attacking: cells {bad[0]},{bad[1]}")


@lru_cache(maxsize=None)
def _one_minus_t_pow(k):
    return ONE_MINUS_T**k


@lru_cache(maxsize=None)
def _quinv_cell_table(lam):
    """Per cell above the bottom row: (row, col, 1 - q^(leg+1) t^(rarm+1))."""
    return tuple(
        (r, c, binom_factor(shapes.leg(lam, (r, c)) + 1, shapes.rarm(lam, (r, c)) + 1))
        for (r, c) in shapes.cells_above_bottom(lam)
    )


@lru_cache(maxsize=None)
def _inv_cell_table(lam, offset):
    out = []
    den = POLY_ONE
    for r, c in shapes.cells_above_bottom(lam):
        factor = binom_factor(
            shapes.leg(lam, (r, c)) + offset, shapes.arm(lam, (r, c)) + offset
        )
        den = den * factor
        out.append((r, c, factor))
    return tuple(out), den


def _equal_product(f, table):
    """(1-t)^unequal times the equal-cell factors from a shape table."""
    num = None
    unequal = 0
    for r, c, factor in table:
        col = f.cols[c - 1]
        if col[r - 1] != col[r - 2]:
            unequal += 1
        else:
            num = factor if num is None else num * factor
    poly = _one_minus_t_pow(unequal)
    if num is not None:
        poly = poly * num
    return poly


@lru_cache(maxsize=None)
def wt_P_quinv(f, n_vars):
    """Summand of the quinv formulas for P: exponent vector and the exact
    coefficient q^maj t^coquinv prod (1-t)/(1-q^(leg+1) t^(rarm+1)), the
    product over cells above the bottom row whose entry differs from the
    entry below."""
    _require_nonattacking(f, "quinv")
    lam = f.shape
    num = _equal_product(f, _quinv_cell_table(lam))
    num = num.shift(fillings.maj(f), fillings.coquinv(f))
    return f.x_exponents(n_vars), QTRat(num, rarm_product(lam))


@lru_cache(maxsize=None)
def wt_HHL(f, n_vars, offset=1):
    """Summand of the compact inv formula: q^maj t^coinv with the factor
    (1-t)/(1-q^(leg+offset) t^(arm+offset)) at each cell above the bottom
    row whose entry differs from the one below.

    offset=1 is the calibrated convention (it is the one under which the
    compact inv formula reproduces P); offset=0 hits a zero denominator on
    any cell with leg = arm = 0, which rules it out.
    """
    _require_nonattacking(f, "inv")
    table, den = _inv_cell_table(f.shape, offset)
    num = _equal_product(f, table)
    num = num.shift(fillings.maj(f), fillings.coinv(f))
    return f.x_exponents(n_vars), QTRat(num, den)


@lru_cache(maxsize=None)
def wt_P_inv(f, n_vars):
    """Summand of the full inv formula for P: wt_HHL with one extra (1-t)
    per bottom-row cell (the bottom row always counts as a difference
    against the South = infinity convention)."""
    exps, coeff = wt_HHL(f, n_vars)
    return exps, coeff * QTRat(ONE_MINUS_T ** len(f.shape))


def _j_weight(f, stat):
    """Polynomial summand of the integral form J for either statistic: the
    (1-t) factors run over every cell whose entry differs from its South
    (bottom-row cells always do), the binomial factors over the equal ones."""
    lam = f.shape
    if stat == "quinv":
        _require_nonattacking(f, "quinv")
        table = _quinv_cell_table(lam)
        stats = (fillings.maj(f), fillings.coquinv(f))
    else:
        _require_nonattacking(f, "inv")
        table, _ = _inv_cell_table(lam, 1)
        stats = (fillings.maj(f), fillings.coinv(f))
    num = _equal_product(f, table) * _one_minus_t_pow(len(lam))
    return num.shift(*stats)


def jack_weight(f, stat):
    """Z[alpha] weight: product of alpha(leg+1) + arm+1 (inv) or rarm+1
    (quinv) over cells above the bottom row with entry equal to the one
    below."""
    lam = f.shape
    out = PolyAlpha.const(1)
    for u in shapes.cells_above_bottom(lam):
        r, c = u
        if f.entry(r, c) == f.entry(r - 1, c):
            low = shapes.arm(lam, u) if stat == "inv" else shapes.rarm(lam, u)
            out = out * PolyAlpha.linear(low + 1, shapes.leg(lam, u) + 1)
    return out


# --------------------------------------------------------------------------
# Builders
# --------------------------------------------------------------------------

P_METHODS = ("quinv-compact", "quinv", "inv", "inv-compact", "mlq")
HTILDE_METHODS = ("inv", "quinv", "compact-inv", "compact-quinv")
J_METHODS = ("quinv", "inv")
JACK_METHODS = ("inv", "quinv")

_ROUTES = {
    ("P", "quinv-compact"): ("quinv_na_coquinv_sorted", "wt_P_quinv"),
    ("P", "quinv"): ("quinv_na", "wt_P_quinv"),
    ("P", "inv"): ("inv_na", "wt_P_inv"),
    ("P", "inv-compact"): ("inv_na_coinv_sorted", "wt_HHL"),
    ("Htilde", "inv"): ("all", "ht_inv"),
    ("Htilde", "quinv"): ("all", "ht_quinv"),
    ("Htilde", "compact-inv"): ("inv_sorted", "ht_compact_inv"),
    ("Htilde", "compact-quinv"): ("quinv_sorted", "ht_compact_quinv"),
    ("J", "quinv"): ("quinv_na", "j_quinv"),
    ("J", "inv"): ("inv_na", "j_inv"),
}


def _term(f, n_vars, term_name):
    if term_name == "wt_P_quinv":
        return wt_P_quinv(f, n_vars)
    if term_name == "wt_P_inv":
        return wt_P_inv(f, n_vars)
    if term_name == "wt_HHL":
        return wt_HHL(f, n_vars)
    if term_name == "ht_inv":
        mono = PolyQT.monomial(fillings.maj(f), fillings.inv(f))
        return f.x_exponents(n_vars), QTRat(mono)
    if term_name == "ht_quinv":
        mono = PolyQT.monomial(fillings.maj(f), fillings.quinv(f))
        return f.x_exponents(n_vars), QTRat(mono)
    if term_name == "ht_compact_inv":
        mono = PolyQT.monomial(fillings.maj(f), fillings.inv(f))
        return f.x_exponents(n_vars), fillings.perm_sigma(f) * QTRat(mono)
    if term_name == "ht_compact_quinv":
        mono = PolyQT.monomial(fillings.maj(f), fillings.quinv(f))
        return f.x_exponents(n_vars), fillings.perm_sigma(f) * QTRat(mono)
    if term_name == "j_quinv":
        return f.x_exponents(n_vars), QTRat(_j_weight(f, "quinv"))
    if term_name == "j_inv":
        return f.x_exponents(n_vars), QTRat(_j_weight(f, "inv"))
    raise ValueError(term_name)


def _sum_chunk(args):
    lam, n_vars, filt, term_name, first_value = args
    terms = {}
    for f in fillings.enumerate_fillings(lam, n_vars, filt):
        if first_value is not None and f.cols and f.cols[0][0] != first_value:
            continue
        exps, coeff = _term(f, n_vars, term_name)
        accumulate_term(terms, exps, coeff)
    return terms


def _sum_over_fillings(lam, n_vars, filt, term_name, workers=1):
    if workers <= 1 or not lam:
        terms = _sum_chunk((lam, n_vars, filt, term_name, None))
    else:
        # Partition the enumeration on the first cell's value; each chunk is
        # summed independently and the chunks are merged in a fixed order,
        # so the result is identical for every worker count.
        jobs = [
            (lam, n_vars, filt, term_name, v) for v in range(1, n_vars + 1)
        ]
        with multiprocessing.Pool(workers) as pool:
            chunks = pool.map(_sum_chunk, jobs)
        terms = {}
        for chunk in chunks:
            for exps, coeff in chunk.items():
                accumulate_term(terms, exps, coeff)
    return XPoly(n_vars, terms)


def build(lam, n_vars, family, method, workers=1):
    """Exact XPoly for the requested polynomial family and formula route."""
    lam = shapes.check_partition(lam)
    if family == "Jack":
        return jack(lam, n_vars, method, workers=workers)
    if family == "P" and method == "mlq":
        from . import mlq

        return mlq.build_P_mlq(lam, n_vars)
    try:
        filt, term_name = _ROUTES[(family, method)]
    except KeyError:
        raise ValueError(f"no method {method!r} for family {family!r}") from None
    poly = _sum_over_fillings(lam, n_vars, filt, term_name, workers=workers)
    if family == "P" and method == "quinv":
        poly = poly.scale(QTRat(POLY_ONE, shapes.perm_lambda(lam)))
    elif family == "P" and method == "inv":
        poly = poly.scale(QTRat(PR_tilde(lam), PR(lam)))
    elif family == "P" and method == "inv-compact":
        poly = poly.scale(Pi_lambda(lam))
    return poly


def jack(lam, n_vars, method, workers=1):
    """Jack polynomial J(X; alpha) via the tableau formula for the given
    statistic; coefficients are PolyAlpha."""
    if method not in JACK_METHODS:
        raise ValueError(f"no Jack method {method!r}")
    filt = "inv_na" if method == "inv" else "quinv_na"
    terms = {}
    for f in fillings.enumerate_fillings(lam, n_vars, filt):
        accumulate_term(terms, f.x_exponents(n_vars), jack_weight(f, method))
    return XPoly(n_vars, terms)


def build_J_super(lam, n_vars, stat):
    """Integral form J from the superized H~ sum over super fillings whose
    absolute value is non-attacking:

        J = t^(n(lam)+|lam|) * sum (-1)^negatives q^maj t^(-positives-stat).

    The global t power makes every exponent nonnegative, so the result is a
    polynomial.  Cost is (2 n_vars)^cells: tiny instances only.
    """
    lam = shapes.check_partition(lam)
    offset = shapes.n_stat(lam) + sum(lam)
    filt = "quinv_na" if stat == "quinv" else "inv_na"
    statfn = fillings.quinv if stat == "quinv" else fillings.inv
    terms = {}
    for f in fillings.enumerate_superfillings(lam, n_vars, filt):
        texp = offset - f.positives() - statfn(f)
        assert texp >= 0
        sign = -1 if f.negatives() % 2 else 1
        mono = QTRat(PolyQT.monomial(fillings.maj(f), texp, sign))
        accumulate_term(terms, f.x_exponents(n_vars), mono)
    return XPoly(n_vars, terms)


def schur_oracle(lam, n_vars):
    """Schur polynomial by direct semistandard-tableau enumeration.

    Uses the classical row-shape convention (row i has lam_i boxes, rows
    weakly increase left to right, columns strictly increase downward), so
    it shares no code with the filling machinery.
    """
    lam = shapes.check_partition(lam)
    terms = {}
    if not lam:
        return XPoly(n_vars, terms)
    rows = [None] * len(lam)

    def fill_row(r):
        if r == len(lam):
            exps = [0] * n_vars
            for row in rows:
                for v in row:
                    exps[v - 1] += 1
            accumulate_term(terms, tuple(exps), QTRat(1))
            return
        width = lam[r]

        def fill(c, row):
            if c == width:
                rows[r] = tuple(row)
                fill_row(r + 1)
                rows[r] = None
                return
            lo = row[c - 1] if c else 1
            if r:
                above = rows[r - 1][c]
                lo = max(lo, above + 1)
            for v in range(lo, n_vars + 1):
                row.append(v)
                fill(c + 1, row)
                row.pop()

        fill(0, [])

    fill_row(0)
    return XPoly(n_vars, terms)


def power_of_sum(n_vars, k):
    """(x_1 + ... + x_n)^k as {exponents: Fraction}; oracle for H~ at q=t=1."""
    terms = {tuple([0] * n_vars): Fraction(1)}
    for _ in range(k):
        new = {}
        for exps, coef in terms.items():
            for i in range(n_vars):
                key = exps[:i] + (exps[i] + 1,) + exps[i + 1 :]
                new[key] = new.get(key, Fraction(0)) + coef
        terms = new
    return terms


# --------------------------------------------------------------------------
# Verification suite
# --------------------------------------------------------------------------

OPERATOR_SHAPES = ((1, 1), (2, 2), (3, 3), (2, 2, 1), (2, 1, 1), (3, 3, 2))
MLQ_SHAPES = ((2, 2), (2, 1), (3, 1), (2, 2, 1))
SUPER_SHAPES = ((1,), (2,), (1, 1), (2, 1))


def _shapes_up_to(max_cells):
    out = []
    for size in range(1, max_cells + 1):
        out.extend(shapes.partitions_of(size))
    return out


def _check_pentagon(max_cells, n_vars):
    for lam in _shapes_up_to(max_cells):
        reference = build(lam, n_vars, "P", "quinv-compact")
        msym = reference.to_msym()  # symmetry gate
        if n_vars >= len(lam):
            lead = msym.get(lam)
            if lead is None or not lead == QTRat(1):
                return False, {"lambda": lam, "reason": "leading coefficient not 1"}
            for mu in msym:
                if sum(mu) != sum(lam) or not shapes.dominance_leq(mu, lam):
                    return False, {"lambda": lam, "reason": f"bad msym key {mu}"}
        for method in ("quinv", "inv", "inv-compact", "mlq"):
            other = build(lam, n_vars, "P", method)
            if not reference == other:
                return False, {"lambda": lam, "method": method}
    return True, None


def _check_htilde(max_cells, n_vars):
    for lam in _shapes_up_to(max_cells):
        for n in range(1, n_vars + 1):
            reference = build(lam, n, "Htilde", "inv")
            for method in ("quinv", "compact-inv", "compact-quinv"):
                other = build(lam, n, "Htilde", method)
                if not reference == other:
                    return False, {"lambda": lam, "n": n, "method": method}
            reference.to_msym()
            if reference.specialize(1, 1) != power_of_sum(n, sum(lam)):
                return False, {"lambda": lam, "n": n, "method": "q=t=1"}
    return True, None


def _check_pr_perm(max_cells):
    for lam in _shapes_up_to(max_cells):
        lhs, rhs = pr_factorization(lam)
        if not lhs == rhs:
            return False, {"lambda": lam}
    return True, None


def _check_jack(max_cells, n_vars):
    for lam in _shapes_up_to(min(max_cells, 5)):
        for n in range(1, min(n_vars, 4) + 1):
            via_inv = jack(lam, n, "inv")
            via_quinv = jack(lam, n, "quinv")
            if not via_inv == via_quinv:
                return False, {"lambda": lam, "n": n}
            n_inv = sum(1 for _ in fillings.enumerate_fillings(lam, n, "inv_na"))
            n_quinv = sum(1 for _ in fillings.enumerate_fillings(lam, n, "quinv_na"))
            if n_quinv > n_inv:
                return False, {"lambda": lam, "n": n, "reason": "quinv larger"}
    return True, None


def _check_normalization(n_vars, corrupt=False):
    one = QTRat(1)
    first = True
    for lam in OPERATOR_SHAPES:
        for f in fillings.enumerate_fillings(lam, n_vars, "quinv_na"):
            for i in sorted(shapes.compatible_indices(lam)):
                outs = flipops.rho_tilde(f, i)
                total = QTRat.zero()
                for g, p in outs:
                    if fillings.attacking_violation(g, "quinv") is not None:
                        return False, {"filling": f.to_json_dict(), "index": i,
                                       "reason": "outcome attacking"}
                    total = total + p
                if corrupt and first:
                    total = total * QTRat(PolyQT.monomial(0, 1))
                    first = False
                if not total == one:
                    return False, {"filling": f.to_json_dict(), "index": i,
                                   "reason": "probabilities do not sum to 1"}
        for f in fillings.enumerate_fillings(lam, n_vars, "inv_na"):
            for i in sorted(shapes.compatible_indices(lam)):
                total = QTRat.zero()
                for g, p in flipops.tau_tilde(f, i):
                    if fillings.attacking_violation(g, "inv") is not None:
                        return False, {"filling": f.to_json_dict(), "index": i,
                                       "reason": "outcome attacking"}
                    total = total + p
                if not total == one:
                    return False, {"filling": f.to_json_dict(), "index": i,
                                   "reason": "probabilities do not sum to 1"}
    return True, None


def _check_balance(n_vars):
    t = QTRat(PolyQT.monomial(0, 1))
    for lam in OPERATOR_SHAPES:
        for f in fillings.enumerate_fillings(lam, n_vars, "quinv_na"):
            top = fillings.top_border(f)
            _, wf = wt_P_quinv(f, n_vars)
            for i in sorted(shapes.compatible_indices(lam)):
                if not top[i - 1] < top[i]:
                    continue
                for g, p in flipops.rho_tilde(f, i):
                    back = flipops.outcome_prob(flipops.rho_tilde(g, i), f)
                    _, wg = wt_P_quinv(g, n_vars)
                    if not wg * back == t * wf * p:
                        return False, {"filling": f.to_json_dict(), "index": i}
        for f in fillings.enumerate_fillings(lam, n_vars, "inv_na"):
            bot = fillings.bottom_border(f)
            _, wf = wt_HHL(f, n_vars)
            for i in sorted(shapes.compatible_indices(lam)):
                if not bot[i - 1] > bot[i]:
                    continue
                for g, p in flipops.tau_tilde(f, i):
                    back = flipops.outcome_prob(flipops.tau_tilde(g, i), f)
                    _, wg = wt_HHL(g, n_vars)
                    if not wg * back == t * wf * p:
                        return False, {"filling": f.to_json_dict(), "index": i}
    return True, None


def _check_mlq(n_vars):
    from . import mlq

    for lam in MLQ_SHAPES:
        for f in fillings.enumerate_fillings(lam, n_vars, "quinv_na_coquinv_sorted"):
            m = mlq.mlq_from_tableau(f, n_vars)
            back = mlq.tableau_from_mlq(m)
            if back != f:
                return False, {"lambda": lam, "filling": f.to_json_dict()}
            exps, coeff = mlq.wt_martin_full(m)
            wexps, wcoeff = wt_P_quinv(f, m.n)
            if exps != wexps or not coeff == wcoeff:
                return False, {"lambda": lam, "filling": f.to_json_dict(),
                               "reason": "weight transport"}
            for (r, k, s, ff) in mlq.pairing_stats(m):
                if ff != shapes.rarm(lam, (r, k)):
                    return False, {"lambda": lam, "reason": "f(p) != rarm"}
                expected_s = mlq.coquinv_at_cell(f, r, k)
                if s != expected_s:
                    return False, {"lambda": lam, "reason": "s(p) mismatch"}
    return True, None


def _check_super(n_vars):
    for lam in SUPER_SHAPES:
        for n in range(1, min(n_vars, 2) + 1):
            target = build(lam, n, "P", "quinv-compact").scale(QTRat(PR(lam)))
            for stat in ("inv", "quinv"):
                if not build_J_super(lam, n, stat) == target:
                    return False, {"lambda": lam, "n": n, "stat": stat}
    return True, None


def _check_schur(max_cells, n_vars):
    points = random_rationals(5, seed=20250809)
    for lam in _shapes_up_to(min(max_cells, 5)):
        for n in range(1, min(n_vars, 4) + 1):
            p_poly = build(lam, n, "P", "quinv-compact")
            s_poly = schur_oracle(lam, n)
            for r in points:
                if p_poly.specialize(r, r) != s_poly.specialize(r, r):
                    return False, {"lambda": lam, "n": n, "point": str(r)}
            if p_poly.specialize(0, 0) != s_poly.specialize(0, 0):
                return False, {"lambda": lam, "n": n, "point": "0"}
    return True, None


SUITES = {
    "formulas": (
        ("P-pentagon", lambda mc, nv: _check_pentagon(mc, nv)),
        ("Htilde-equivalence", lambda mc, nv: _check_htilde(mc, nv)),
        ("PR-factorization", lambda mc, nv: _check_pr_perm(max(mc, 8))),
        ("Jack-equivalence", lambda mc, nv: _check_jack(mc, nv)),
        ("Schur-specializations", lambda mc, nv: _check_schur(mc, nv)),
        ("J-super-compression", lambda mc, nv: _check_super(nv)),
    ),
    "operators": (
        ("operator-normalization", lambda mc, nv: _check_normalization(nv)),
        ("operator-balance", lambda mc, nv: _check_balance(nv)),
    ),
    "mlq": (
        ("mlq-bijection-and-transport", lambda mc, nv: _check_mlq(nv)),
    ),
}


def verify_suite(max_cells=4, n_vars=3, suite="all", corrupt=False):
    """Run the identity checks and return a machine-readable report.

    ``corrupt=True`` deliberately perturbs one operator probability so the
    failure path (with its counterexample filling) can be exercised.
    """
    names = SUITES if suite == "all" else {suite: SUITES[suite]}
    report = {"max_cells": max_cells, "n_vars": n_vars, "checks": []}
    for suite_name, checks in names.items():
        for check_name, fn in checks:
            start = time.perf_counter()
            if corrupt and check_name == "operator-normalization":
                ok, detail = _check_normalization(n_vars, corrupt=True)
            else:
                ok, detail = fn(max_cells, n_vars)
            entry = {
                "suite": suite_name,
                "identity": check_name,
                "pass": ok,
                "seconds": round(time.perf_counter() - start, 3),
            }
            if detail is not None:
                entry["counterexample"] = detail
            report["checks"].append(entry)
    report["pass"] = all(c["pass"] for c in report["checks"])
    return report
