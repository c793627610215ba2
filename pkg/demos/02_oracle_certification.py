"""Certifying the coefficient tables against independent constructions.

Three ways to compute C[k][n] that share no code: the convolution table,
a composition-sum / generating-function formula, literal symbolic
differentiation, and (for m = 2) the classical Hermite recurrence.  The
certifier compares every cell; a deliberately corrupted cell is caught.
"""

from gsmult import build_coeff_table, certify, coeff_oracle, hermite_oracle, symbolic_recursion_oracle
from gsmult.derivpoly import CoeffTable

table = build_coeff_table(m=3, k_max=12)

print("three constructions of C[6][n] for m=3:")
print("  table row:        ", list(table.row(6)))
print("  composition sum:  ", [coeff_oracle(3, 6, n) for n in range(len(table.row(6)))])
print("  symbolic recursion:", symbolic_recursion_oracle(3, 6))

report = certify(table)
print("\ncertify m=3, k<=12:", "certified" if report.certified else report.discrepancies)

herm = build_coeff_table(m=2, k_max=20)
print("certify m=2, k<=20 (incl. Hermite cross-check):", certify(herm).certified)
print("hermite_oracle(6):", hermite_oracle(6))

# fault injection: corrupt one cell and watch it get flagged
rows = [list(r) for r in table.rows]
rows[5][2] += 1
corrupt = CoeffTable(m=3, k_max=12, rows=tuple(tuple(r) for r in rows))
bad = certify(corrupt)
print("\ncorrupted C[6][2] -> discrepancies:", list(bad.discrepancies))
