import json

import pytest

from macq import fillings, formulas, mlq, shapes
from macq.fillings import Filling
from macq.qtalg import PolyQT, QTRat, binom_factor as bf

# worked queue tableau; the grid it was transcribed from shows a second 4
# in the bottom row where the queue itself (and the non-attacking condition)
# require a 5 in column 4
QUEUE_SIGMA = Filling.parse(
    """
    1 6
    6 8 2 5
    4 8 2 1
    4 2 7 5 9
    """
)


def test_queue_sigma_weights():
    m = mlq.mlq_from_tableau(QUEUE_SIGMA, 9)
    t_weight = mlq.wt_martin_t(m)
    expected = QTRat(
        PolyQT.monomial(0, 7) * bf(0, 1) ** 7,
        bf(0, 4) ** 3 * bf(0, 3) ** 2 * bf(0, 2) * bf(0, 1),
    )
    assert t_weight == expected
    exps, full = mlq.wt_martin_full(m)
    wexps, wfull = formulas.wt_P_quinv(QUEUE_SIGMA, 9)
    assert exps == wexps and full == wfull
    claimed = QTRat(
        PolyQT.monomial(6, 7) * bf(0, 1) ** 7,
        bf(1, 4) * bf(1, 3) * bf(2, 4) * bf(1, 1) * bf(3, 4) * bf(2, 3) * bf(2, 2),
    )
    assert full == claimed


def test_queue_sigma_pairing_records():
    m = mlq.mlq_from_tableau(QUEUE_SIGMA, 9)
    recs = {
        (r["row"], r["from"]): (r["s"], r["f"], r["label"])
        for r in mlq.simulate_pairings(m)
        if not r["trivial"]
    }
    # the per-pairing statistics, grouped by (row, label) in lattice terms
    assert recs[(4, 1)] == (2, 3, 4)
    assert recs[(4, 6)] == (0, 2, 4)
    assert recs[(3, 6)] == (3, 3, 4)
    assert recs[(3, 5)] == (0, 0, 3)
    assert recs[(2, 8)] == (1, 3, 4)
    assert recs[(2, 2)] == (1, 2, 3)
    assert recs[(2, 1)] == (0, 1, 3)


def test_round_trip_exhaustive_small():
    for lam in ((2, 2), (2, 1)):
        for f in fillings.enumerate_fillings(lam, 3, "quinv_na_coquinv_sorted"):
            m = mlq.mlq_from_tableau(f, 3)
            assert mlq.tableau_from_mlq(m) == f


def test_pairing_stats_match_tableau_statistics():
    for f in fillings.enumerate_fillings((2, 2, 1), 3, "quinv_na_coquinv_sorted"):
        m = mlq.mlq_from_tableau(f, 3)
        for (r, k, s, ff) in mlq.pairing_stats(m):
            assert ff == shapes.rarm(f.shape, (r, k))
            assert s == mlq.coquinv_at_cell(f, r, k)


def test_single_column_and_trivial_queues():
    f = Filling((3,), ((2, 1, 2),))
    m = mlq.mlq_from_tableau(f, 2)
    assert mlq.tableau_from_mlq(m) == f
    constant = Filling((2, 2), ((1, 1), (3, 3)))
    m = mlq.mlq_from_tableau(constant, 3)
    assert all(rec["trivial"] for rec in mlq.simulate_pairings(m))
    assert mlq.wt_martin_t(m) == QTRat(1)
    assert mlq.tableau_from_mlq(m) == constant


def test_one_row_queue():
    m = mlq.MultilineQueue(5, ((1, 3, 4),), ())
    f = mlq.tableau_from_mlq(m)
    assert f.shape == (1, 1, 1)
    assert fillings.bottom_border(f) == (1, 3, 4)


def test_mlq_rejects_bad_input():
    with pytest.raises(ValueError):
        mlq.mlq_from_tableau(Filling((2, 2), ((2, 2), (1, 1))), 2)  # unsorted
    with pytest.raises(ValueError):
        mlq.mlq_from_tableau(Filling((2, 2), ((1, 2), (2, 1))), 2)  # attacking
    with pytest.raises(ValueError):
        mlq.MultilineQueue(3, ((1, 2), (1, 2)), ((1, 1),))  # pairs a site twice
    # forced trivial pairing violated: particle above an unpaired particle
    bad = mlq.MultilineQueue(3, ((1, 2), (1,)), ((2,),))
    with pytest.raises(ValueError):
        mlq.wt_martin_t(bad)


def test_enumerate_mlq_counts():
    queues = list(mlq.enumerate_mlq((2, 2), 4))
    assert len(queues) == 54  # one per sorted non-attacking tableau
    distinct_content = [
        m for m in queues
        if all(c <= 1 for c in mlq.wt_martin_full(m)[0])
    ]
    assert len(distinct_content) == 12  # the all-distinct block of P_{2,2}
    assert len(list(mlq.enumerate_mlq((1,), 3))) == 3


def test_build_P_mlq_tiny():
    from fractions import Fraction

    p = mlq.build_P_mlq((1,), 3)
    assert p.to_msym() == {(1,): QTRat(1)}
    # t-weights sum to P at x_1 = ... = x_n = q = 1
    total = QTRat.zero()
    for m in mlq.enumerate_mlq((2, 1), 3):
        total = total + mlq.wt_martin_t(m)
    P = formulas.build((2, 1), 3, "P", "quinv-compact")
    t0 = Fraction(1, 3)
    assert total.specialize(1, t0) == sum(P.specialize(1, t0).values())


def test_beta():
    assert mlq.beta((0, 2, 3, 1, 0, 2, 1)) == {
        (3, 2, 6, 4, 7), (3, 6, 2, 4, 7), (3, 2, 6, 7, 4), (3, 6, 2, 7, 4)
    }
    assert mlq.beta((3, 2, 1)) == {(1, 2, 3)}
    assert len(mlq.beta((2, 2, 2))) == 6


def test_f_alpha_decomposition():
    import itertools

    lam, n = (2, 2), 4
    total = None
    seen = set()
    for alpha in set(itertools.permutations((2, 2, 0, 0))):
        fa = mlq.f_alpha(alpha)
        seen.add(alpha)
        total = fa if total is None else total + fa
    assert total == formulas.build(lam, n, "P", "quinv-compact")
    assert len(seen) == 6


def test_f_alpha_strict_single_block():
    fa = mlq.f_alpha((2, 1))
    direct = None
    for f in fillings.enumerate_fillings((2, 1), 2, "quinv_na_coquinv_sorted"):
        if fillings.bottom_border(f) == (1, 2):
            exps, w = formulas.wt_P_quinv(f, 2)
            term = formulas.XPoly(2, {exps: w})
            direct = term if direct is None else direct + term
    assert fa == direct


def test_json_round_trip_and_render():
    m = mlq.mlq_from_tableau(QUEUE_SIGMA, 9)
    doc = json.loads(json.dumps(m.to_json_dict()))
    assert mlq.MultilineQueue.from_json_dict(doc) == m
    rendered = m.render()
    assert rendered == m.render()  # deterministic
    assert rendered.splitlines()[0].startswith("row 4")
