"""Walk through the compact quinv formula for P_{(2,2)}(x_1..x_4; q, t).

The sum runs over coquinv-sorted quinv-non-attacking fillings; each carries
q^maj t^coquinv x^sigma and one factor (1-t)/(1-q^(leg+1) t^(rarm+1)) per
cell above the bottom row whose entry differs from the cell below.
"""

from macq import fillings, formulas
from macq.qtalg import rational_str

LAM = (2, 2)
N_VARS = 4

print(f"coquinv-sorted quinv-non-attacking fillings of {LAM}, entries <= {N_VARS}:\n")
for f in fillings.enumerate_fillings(LAM, N_VARS, "quinv_na_coquinv_sorted"):
    exps, coeff = formulas.wt_P_quinv(f, N_VARS)
    mono = "*".join(f"x{i+1}^{e}" if e > 1 else f"x{i+1}" for i, e in enumerate(exps) if e)
    rows = str(f).splitlines()
    print(f"  {rows[0]}")
    print(f"  {rows[1]}   maj={fillings.maj(f)} coquinv={fillings.coquinv(f)}"
          f"   weight {rational_str(coeff)} * {mono}")
    print()

print("monomial symmetric expansion:")
p = formulas.build(LAM, N_VARS, "P", "quinv-compact")
for mu, coeff in sorted(p.to_msym().items(), reverse=True):
    print(f"  m[{','.join(map(str, mu))}]  {rational_str(coeff)}")

print("\nthe other four routes produce the identical polynomial:")
for method in ("quinv", "inv", "inv-compact", "mlq"):
    same = formulas.build(LAM, N_VARS, "P", method) == p
    print(f"  {method:13s} agree: {same}")
