"""From sorted tableaux to multiline queues and back.

Row r of the queue occupies the lattice columns read from row r of the
tableau, and each cell pairs with the cell below it in the same tableau
column.  Simulating the queue discipline (top row first, forced trivial
pairings, cyclic distance counts) recovers exactly the tableau weight, and
summing full weights over all queues gives P.
"""

from fractions import Fraction

from macq import fillings, formulas, mlq
from macq.qtalg import rational_str

sigma = fillings.Filling.parse(
    """
    1 6
    6 8 2 5
    4 8 2 1
    4 2 7 5 9
    """
)
print("sigma =")
print(sigma)
print()

m = mlq.mlq_from_tableau(sigma, 9)
print(m.render())
print()
print(f"wt(M)(t)      = {rational_str(mlq.wt_martin_t(m))}")
exps, full = mlq.wt_martin_full(m)
print(f"wt(M)(X;q,t)  = {rational_str(full)} times x^M")
_, tableau_weight = formulas.wt_P_quinv(sigma, 9)
print(f"tableau weight matches: {full == tableau_weight}")
print(f"round trip: {mlq.tableau_from_mlq(m) == sigma}")

print("\nsumming full queue weights reproduces P_(2,1) over three variables:")
p_mlq = mlq.build_P_mlq((2, 1), 3)
p_tab = formulas.build((2, 1), 3, "P", "quinv-compact")
print(f"  equal: {p_mlq == p_tab}")

print("\nnonsymmetric components f_alpha, summed over rearrangement classes:")
total = None
import itertools
for alpha in sorted(set(itertools.permutations((2, 1, 0)))):
    fa = mlq.f_alpha(alpha)
    n_terms = len(fa.terms)
    print(f"  f_{alpha}: {n_terms} monomials")
    total = fa if total is None else total + fa
print(f"  sum equals P: {total == p_tab}")

print("\nstationary-measure flavour: at x = q = 1 the t-weights of the queues")
t0 = Fraction(1, 3)
lhs = sum(mlq.wt_martin_t(q).specialize(1, t0) for q in mlq.enumerate_mlq((2, 1), 3))
rhs = sum(p_tab.specialize(1, t0).values())
print(f"  add up to P(1,1,1;1,t) at t={t0}: {lhs == rhs}")
