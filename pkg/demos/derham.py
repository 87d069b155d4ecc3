"""De Rham realization in genus 2, degree 2.

Coefficients are tensors in omega_1, omega_2, eta_1, eta_2.  The Hodge map
sends eta_i to r_i1 omega_1 + r_i2 omega_2 and the unit-root map drops eta.
The rank computation shows the Hodge map is not injective on plain tensor
words: because r is symmetric, omega_1 eta_1 - eta_1 omega_1 + omega_2 eta_2
- eta_2 omega_2 maps to zero.
"""

from fractions import Fraction

from siegelq import (DeRhamCoefficient, DeRhamRing, HalfIntegralMatrix, QExpansion, phi_rank, phi_realize,
                     r_to_zero, unit_root_realize)
from siegelq.derham import phi_coefficient

for g, m in [(1, 1), (1, 2), (2, 1), (2, 2)]:
    print(f"genus {g}, degree {m}: rank {phi_rank(g, m)} of {(2 * g) ** m} tensor words")

w1, w2, n1, n2 = 1, 2, 3, 4
kernel = DeRhamCoefficient(2, 2, 0, {(w1, n1): 1, (n1, w1): -1, (w2, n2): 1, (n2, w2): -1})
print("\nHodge image of w1 n1 - n1 w1 + w2 n2 - n2 w2:", phi_coefficient(kernel))

T = HalfIntegralMatrix.diag(1, 1)
c = DeRhamCoefficient(2, 2, 0, {(w1, w2): Fraction(3), (n1, w2): Fraction(-1, 2), (n2, n1): Fraction(5)})
F = QExpansion(2, 1, 2, DeRhamRing(2, 2), {T: c})
print("\nHodge realization:    ", phi_realize(F)[T])
print("unit-root realization:", [str(x) for x in unit_root_realize(F)[T]])
print("unit root == (r -> 0) o Hodge:", unit_root_realize(F) == r_to_zero(phi_realize(F)))
