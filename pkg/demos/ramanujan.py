"""Ramanujan's differential equations, checked coefficient by coefficient.

    theta E2 = (E2^2 - E4) / 12
    theta E4 = (E2 E4 - E6) / 3
    theta E6 = (E2 E6 - E4^2) / 2

Run with ``python demos/ramanujan.py [precision]``.
"""

import sys

from siegelq import eisenstein_e2, eisenstein_q, qexp_add, qexp_mul, theta_op

prec = int(sys.argv[1]) if len(sys.argv) > 1 else 40
E2, E4, E6 = eisenstein_e2(prec), eisenstein_q(4, prec), eisenstein_q(6, prec)

print(f"E4 = {[int(c) for _, c in list(E4.items())[:6]]} ...")
print(f"E6 = {[int(c) for _, c in list(E6.items())[:6]]} ...")

checks = {
    "theta E2": (theta_op(E2), qexp_add(qexp_mul(E2, E2), E4, 1, -1), 12),
    "theta E4": (theta_op(E4), qexp_add(qexp_mul(E2, E4), E6, 1, -1), 3),
    "theta E6": (theta_op(E6), qexp_add(qexp_mul(E2, E6), qexp_mul(E4, E4), 1, -1), 2),
}
for name, (lhs, rhs, d) in checks.items():
    ok = lhs.scale(d) == rhs
    print(f"{name:9s} up to q^{prec}: {'holds' if ok else 'FAILS'}")

# the space of weight 8 forms is one-dimensional
print("E4^2 == E8:", qexp_mul(E4, E4) == eisenstein_q(8, prec))
