"""Genus 2: index enumeration, the Shimura operator and contraction against det.

Applying D_p twice to a q-expansion gives Sym^2-valued coefficients.
Contracting them against the determinant form recovers the theta
operator, which multiplies a(T) by det(T).
"""

from collections import Counter

from siegelq import (QQ, HalfIntegralMatrix, QExpansion, contract, det_form, dp_operator, enumerate_psd,
                     shimura_D, theta_op)

mats = enumerate_psd(2, 4)
print("PSD half-integral 2x2 indices by trace:", dict(sorted(Counter(T.trace for T in mats).items())))
print("trace <= 2:", [T.doubled_rows() for T in mats if T.trace <= 2])

T = HalfIntegralMatrix.from_doubled([[2, 1], [1, 2]])
f = QExpansion(2, 1, 3, QQ, {T: 1, HalfIntegralMatrix.diag(1, 1): -2, HalfIntegralMatrix.zero(2): 1})

print("\nD_det^10 on the index", T.doubled_rows(), "->", shimura_D(f, 10)[T])

Q = det_form(2)
F = dp_operator(f, 2)
th = theta_op(f)
for S, _ in f.items():
    print(f"a(T) for 2T = {S.doubled_rows()}:  <D_p^2 f, det> = {contract(F[S], Q)},  theta f = {th[S]}")
