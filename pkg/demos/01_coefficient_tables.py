"""Coefficient tables of the derivative polynomials of exp(lam*x**m/m).

Differentiating g(x) = exp(lam*x**m/m) repeatedly gives p_k(x)*g(x) with

    p_k(x) = sum_n lam**(k-n) * x**((m-1)k - nm) * C[k][n],

and this script shows the exact integer tables C[k][n], the structure of
p_k, and the JSON export.
"""

import json

from gsmult import build_coeff_table, derivative_poly

# the cubic case: rows match what differentiating e^{lam x^3/3} by hand gives
table = build_coeff_table(m=3, k_max=8)
print("m = 3 coefficient rows:")
for k in range(1, 9):
    print("  k=%d: %s" % (k, list(table.row(k))))

print()
poly = derivative_poly(table, 4)
terms = " + ".join(
    "%d*lam^%d*x^%d" % (c, lp, e) for _, lp, e, c in poly.terms()
)
print("p_4 for m=3:  %s" % terms)
print("degree: %d (= k*(m-1))" % poly.degree)

# the quadratic table reproduces Hermite numbers: row k=4 is [1, 6, 3]
quad = build_coeff_table(m=2, k_max=4)
print("\nm = 2, row k=4:", list(quad.row(4)), " (Hermite: H_4 = 16x^4 - 48x^2 + 12)")

# exact JSON export: coefficients as decimal strings, arbitrary size
blob = json.loads(quad.to_json())
print("\nJSON export keys:", sorted(blob), "| row 4 =", blob["rows"][3])
