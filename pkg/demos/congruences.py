"""Kummer-type congruences between Eisenstein series, and the integrality gate.

E_k and E_k' agree modulo p^m once k = k' modulo (p-1) p^(m-1), provided
neither weight is divisible by p - 1.  The checks below survey small p.
"""

from siegelq import congruence_check, eisenstein_q, integrality_gate, weight_congruent

PREC = 30

for p in (5, 7, 11, 13):
    for m in (1, 2):
        pairs = [(k1, k2) for k1 in range(4, 40, 2) for k2 in range(k1 + 2, 60, 2)
                 if weight_congruent(k1, k2, p, m) and k1 % (p - 1) and k2 % (p - 1)]
        bad = [(k1, k2) for k1, k2 in pairs
               if not congruence_check(eisenstein_q(k1, PREC), eisenstein_q(k2, PREC), p, m)]
        print(f"p={p:2d} m={m}: {len(pairs):2d} weight pairs tested, {len(bad)} failures {bad or ''}")

print()
# 691 divides the numerator of B_12, so E_12 is not 691-integral
gate = integrality_gate(eisenstein_q(12, 3), 691)
print("E12 691-integral?", bool(gate), "witness:", gate.witness)
print("E12 5-integral?  ", bool(integrality_gate(eisenstein_q(12, 3), 5)))
