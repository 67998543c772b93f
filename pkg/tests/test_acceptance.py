"""Acceptance suite: one test per criterion, every comparison exact.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS line per
criterion.  The full-scale checks take a few minutes in total.
"""

import time

import pytest

from macq import fillings, flipops, formulas, mlq, shapes
from macq.cli import main as cli_main
from macq.fillings import Filling
from macq.qtalg import (
    POLY_ONE,
    PolyAlpha,
    PolyQT,
    QTRat,
    binom_factor as bf,
)


def prod(*factors):
    out = POLY_ONE
    for f in factors:
        out = out * f
    return out


T_RAT = QTRat(PolyQT.monomial(0, 1))

# the nine-column worked tableau used for the statistics checks
WIDE_SIGMA = Filling.parse("3 2\n1 3 3 1 3\n1 1 2 1 2 4 4 3 3")
# the (4,4,2,2,1) tableau whose probabilistic flip at column 1 has three
# outcomes with known probabilities and weights
LADDER_SIGMA = Filling.parse("4 1\n4 6\n3 6 2 1\n3 2 5 4 7")


def _report(num, text):
    print(f"ACCEPTANCE {num}: PASS  {text}")


def test_acceptance_01_p22_reproduction():
    start = time.perf_counter()
    p = formulas.build((2, 2), 4, "P", "quinv-compact")
    msym = p.to_msym()
    elapsed = time.perf_counter() - start
    one_plus_q = POLY_ONE + PolyQT.monomial(1, 0)
    m1111_num = PolyQT(
        {(0, 0): 2, (0, 1): 1, (1, 0): 3, (2, 0): 1, (1, 1): 3, (2, 1): 2}
    )
    assert set(msym) == {(2, 2), (2, 1, 1), (1, 1, 1, 1)}
    assert msym[(2, 2)] == QTRat(1)
    assert msym[(2, 1, 1)] == QTRat(one_plus_q * bf(0, 1), bf(1, 1))
    assert msym[(1, 1, 1, 1)] == QTRat(
        m1111_num * bf(0, 1) ** 2, bf(1, 1) * bf(1, 2)
    )
    assert elapsed < 1.0
    _report(1, f"P_(2,2) over 4 variables matches, built in {elapsed:.3f}s")


def test_acceptance_02_formula_pentagon():
    ok, detail = formulas._check_pentagon(6, 4)
    assert ok, detail
    _report(2, "five P routes agree for all shapes up to 6 cells at n = 4")


def test_acceptance_03_htilde_equivalence():
    ok, detail = formulas._check_htilde(6, 4)
    assert ok, detail
    _report(3, "H~ routes agree and specialize to (x_1+...+x_n)^cells at q=t=1")


def test_acceptance_04_nine_column_statistics():
    lam = WIDE_SIGMA.shape
    assert lam == (3, 3, 2, 2, 2, 1, 1, 1, 1)
    assert fillings.maj(WIDE_SIGMA) == 5
    assert fillings.perm_sigma(WIDE_SIGMA) == QTRat(
        prod(
            PolyQT({(0, i): 1 for i in range(4)}),
            PolyQT({(0, i): 1 for i in range(3)}),
            PolyQT({(0, i): 1 for i in range(3)}),
        )
    )  # [4]_t [3]_t^2
    assert shapes.arm(lam, (2, 2)) == 3
    assert shapes.leg(lam, (2, 2)) == 1
    assert shapes.rarm(lam, (2, 2)) == 7
    _report(4, "nine-column tableau maj/perm/arm/leg/rarm reproduced")


@pytest.mark.xfail(
    strict=True,
    reason=(
        "the transcription this tableau was taken from is internally "
        "inconsistent: its content monomial requires one 4 and one 5, yet the "
        "grid shows two 4s, and no single-entry repair reaches the quoted "
        "inv=6/quinv=14; the grid as printed has inv=10/quinv=15 (pinned in "
        "test_fillings), and every structural identity in the suite confirms "
        "the statistics as implemented"
    ),
)
def test_acceptance_04_nine_column_inv_quinv_as_quoted():
    assert fillings.inv(WIDE_SIGMA) == 6
    assert fillings.quinv(WIDE_SIGMA) == 14


def test_acceptance_05_operator_normalization():
    ok, detail = formulas._check_normalization(4)
    assert ok, detail
    _report(5, "rho~/tau~ outcome probabilities sum to 1 on all six shapes, n=4")


def test_acceptance_06_operator_balance():
    ok, detail = formulas._check_balance(4)
    assert ok, detail
    _report(6, "detailed balance holds for rho~ at top ascents and tau~ at bottom descents")


def test_acceptance_07_three_outcome_walkthrough():
    outs = flipops.rho_tilde(LADDER_SIGMA, 1)
    swaps = [(4, 4), (2, 4), (1, 4)]
    probs = [
        QTRat(bf(0, 1), bf(1, 2)),
        QTRat(PolyQT.monomial(3, 5) * bf(0, 1) * bf(1, 1), bf(1, 2) * bf(3, 5)),
        QTRat(PolyQT.monomial(0, 1) * bf(1, 1) * bf(3, 4), bf(1, 2) * bf(3, 5)),
    ]
    assert len(outs) == 3
    for (g, p), (lo, hi), expected in zip(outs, swaps, probs):
        assert g == flipops.t_swap_range(LADDER_SIGMA, 1, lo, hi)
        assert p == expected
    weights = [
        QTRat(PolyQT.monomial(5, 7) * bf(0, 1) ** 5,
              prod(bf(1, 1), bf(2, 4), bf(3, 4), bf(1, 3), bf(1, 2))),
        QTRat(PolyQT.monomial(5, 6) * bf(0, 1) ** 6,
              prod(bf(1, 1), bf(2, 4), bf(3, 4), bf(1, 3), bf(1, 2), bf(1, 2))),
        QTRat(PolyQT.monomial(8, 10) * bf(0, 1) ** 6,
              prod(bf(2, 3), bf(3, 5), bf(3, 4), bf(1, 3), bf(1, 2), bf(1, 2))),
        QTRat(PolyQT.monomial(5, 6) * bf(0, 1) ** 5,
              prod(bf(2, 3), bf(3, 5), bf(1, 3), bf(1, 2), bf(1, 2))),
    ]
    _, w = formulas.wt_P_quinv(LADDER_SIGMA, 7)
    assert w == weights[0]
    for (g, p), expected in zip(outs, weights[1:]):
        _, wg = formulas.wt_P_quinv(g, 7)
        assert wg == expected
        back = flipops.outcome_prob(flipops.rho_tilde(g, 1), LADDER_SIGMA)
        assert w * p == T_RAT * wg * back
    _report(7, "three flip outcomes, probabilities, weights and balance reproduced")


def test_acceptance_08_jack():
    msym = formulas.jack((3, 1), 4, "quinv").to_msym()
    assert msym[(2, 1, 1)] == PolyAlpha((10, 6))
    ok, detail = formulas._check_jack(5, 4)
    assert ok, detail
    _report(8, "Jack formulas agree for shapes up to 5 cells, n <= 4; quinv route never larger")


def test_acceptance_09_multiline_queues():
    queue_sigma = Filling.parse("1 6\n6 8 2 5\n4 8 2 1\n4 2 7 5 9")
    m = mlq.mlq_from_tableau(queue_sigma, 9)
    expected = QTRat(
        PolyQT.monomial(0, 7) * bf(0, 1) ** 7,
        bf(0, 4) ** 3 * bf(0, 3) ** 2 * bf(0, 2) * bf(0, 1),
    )
    assert mlq.wt_martin_t(m) == expected
    ok, detail = formulas._check_mlq(4)
    assert ok, detail
    _report(9, "queue weight reproduced; bijection and weight transport exact")


def test_acceptance_10_oracles():
    ok, detail = formulas._check_schur(5, 4)
    assert ok, detail
    ok, detail = formulas._check_pr_perm(8)
    assert ok, detail
    _report(10, "Schur specializations at 5 random points and the PR factorization hold")


def test_acceptance_11_super_compression():
    ok, detail = formulas._check_super(2)
    assert ok, detail
    _report(11, "super-filling J sums equal PR * P on the tiny instance set")


def test_acceptance_12_property_suites():
    # flip operator properties on every filling of two adjacent columns
    for h in (1, 2, 3):
        for f in fillings.enumerate_fillings((h, h), 3, "all"):
            for op, stat in ((flipops.tau, fillings.inv), (flipops.rho, fillings.quinv)):
                g = op(f, 1)
                assert op(g, 1) == f
                assert fillings.maj(g) == fillings.maj(f)
                if f.cols[0] != f.cols[1]:
                    assert abs(stat(g) - stat(f)) == 1
    # orbit generating function identity over realizable borders
    for lam, n in (((2, 2, 1), 3), ((3, 3, 2), 3)):
        seen = set()
        for f in fillings.enumerate_fillings(lam, n, "quinv_na"):
            w = fillings.top_border(f)
            if w in seen:
                continue
            seen.add(w)
            total = QTRat.zero()
            for v in fillings.sym_lambda_orbit(w, lam):
                total = total + QTRat(POLY_ONE.shift(0, fillings.ell_lambda(v, lam)))
            assert total == QTRat(shapes.perm_lambda(lam))
    # symmetry gate on every built polynomial family
    for lam in ((2, 1), (2, 2)):
        formulas.build(lam, 3, "P", "quinv-compact").to_msym()
        formulas.build(lam, 3, "Htilde", "quinv").to_msym()
        formulas.build(lam, 3, "J", "quinv").to_msym()
        formulas.jack(lam, 3, "quinv").to_msym()
    # identical builds across worker counts
    base = formulas.build((2, 2), 4, "P", "quinv-compact", workers=1)
    for workers in (2, 3):
        again = formulas.build((2, 2), 4, "P", "quinv-compact", workers=workers)
        assert again == base and list(again.terms) == list(base.terms)
    _report(12, "involutions, orbit identity, symmetry gates and determinism hold")


def test_acceptance_12_cli_determinism(capsys):
    outputs = []
    for workers in ("1", "2"):
        code = cli_main(
            ["compute", "--partition", "2,1", "--nvars", "3",
             "--workers", workers, "--format", "json"]
        )
        assert code == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
