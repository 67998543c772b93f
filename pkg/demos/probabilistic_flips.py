"""The probabilistic flip operator in action.

Starting from a quinv-non-attacking tableau of shape (4,4,2,2,1), the
operator at column 1 scans the two columns top-down, always swaps the
current row, and at each entry-repeat decides between stopping and
continuing with exact q,t-rational probabilities.  The outcome
probabilities sum to 1, and together with the tableau weights they satisfy
the detailed-balance identity that drives the compact formula for P.
"""

from macq import fillings, flipops, formulas
from macq.qtalg import PolyQT, QTRat, rational_str

sigma = fillings.Filling.parse(
    """
    4 1
    4 6
    3 6 2 1
    3 2 5 4 7
    """
)
print("sigma =")
print(sigma)
print(f"top border: {fillings.top_border(sigma)} (descent at column 1)\n")

outcomes = flipops.rho_tilde(sigma, 1)
total = QTRat.zero()
for k, (g, p) in enumerate(outcomes, start=1):
    print(f"outcome {k}, probability {rational_str(p)}:")
    print(g)
    print()
    total = total + p
print(f"probabilities sum to {rational_str(total)}\n")

t = QTRat(PolyQT.monomial(0, 1))
_, w_sigma = formulas.wt_P_quinv(sigma, 7)
print(f"wt(sigma) = {rational_str(w_sigma)}\n")
print("balance: wt(sigma) prob(sigma -> out) == t * wt(out) prob(out -> sigma)")
for k, (g, p) in enumerate(outcomes, start=1):
    back = flipops.outcome_prob(flipops.rho_tilde(g, 1), sigma)
    _, w_g = formulas.wt_P_quinv(g, 7)
    holds = w_sigma * p == t * w_g * back
    print(f"  outcome {k}: {holds}")
