"""Integral forms and the Jack limit.

J is PR times P and carries polynomial coefficients; it also equals a
signed sum over super fillings (letters may be barred) whose absolute value
is non-attacking.  Replacing each binomial factor by its linear shadow
alpha*(leg+1) + rarm+1 (or arm+1 on the inv side) gives the two tableau
formulas for the Jack polynomial, which agree term by term in the monomial
basis.
"""

from macq import fillings, formulas
from macq.qtalg import QTRat

print("J_(2,1) = PR_(2,1) * P_(2,1), checked three ways over two variables:")
lam, n = (2, 1), 2
target = formulas.build(lam, n, "P", "quinv-compact").scale(QTRat(formulas.PR(lam)))
for label, poly in (
    ("quinv tableau sum  ", formulas.build(lam, n, "J", "quinv")),
    ("inv tableau sum    ", formulas.build(lam, n, "J", "inv")),
    ("super-filling sum  ", formulas.build_J_super(lam, n, "quinv")),
):
    print(f"  {label} equals PR*P: {poly == target}")

print("\nJack polynomial J_(3,1)(x_1..x_4; alpha), both statistics:")
j_quinv = formulas.jack((3, 1), 4, "quinv")
j_inv = formulas.jack((3, 1), 4, "inv")
print(f"  routes agree: {j_inv == j_quinv}")
for mu, coeff in sorted(j_quinv.to_msym().items(), reverse=True):
    print(f"  m[{','.join(map(str, mu))}]  {coeff}")

print("\nper-tableau weights behind m[2,1,1], quinv route (content x1^2 x2 x3):")
for f in fillings.enumerate_fillings((3, 1), 3, "quinv_na"):
    if f.x_exponents(3) == (2, 1, 1):
        rows = str(f).replace("\n", " / ")
        print(f"  {rows:22s} weight {formulas.jack_weight(f, 'quinv')}")

n_quinv = sum(1 for _ in fillings.enumerate_fillings((3, 1), 4, "quinv_na"))
n_inv = sum(1 for _ in fillings.enumerate_fillings((3, 1), 4, "inv_na"))
print(f"\nterm counts over four variables: quinv route {n_quinv}, inv route {n_inv}")
