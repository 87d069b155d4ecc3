"""Nearly holomorphic Eisenstein series from the Maass-Shimura ladder.

Climbing from E_{h+2s} to weight h produces coefficients that are
polynomials in r = -1/(4 pi y).  Setting r = 0 recovers theta^{-s} E_{h+2s}
up to the normalizing constant built into the ladder.
"""

from siegelq import eisenstein_q, nearly_eisenstein, padic_realize, theta_op
from siegelq.qseries import coefficient_at
from siegelq.tmatrix import HalfIntegralMatrix

PREC = 6

for h, s in [(6, -1), (8, -2), (10, -1)]:
    F = nearly_eisenstein(h, s, PREC)
    print(f"weight {h} from E_{h + 2 * s}:")
    for n in range(3):
        print(f"   q^{n}: {coefficient_at(F, HalfIntegralMatrix.scalar(n))}")
    base = eisenstein_q(h + 2 * s, PREC)
    for _ in range(-s):
        base = theta_op(base)
    realized = padic_realize(F)
    ratio = {realized[T] / base[T] for T, _ in base.items() if T.trace > 0}
    print(f"   r -> 0 agrees with theta^{-s} E_{h + 2 * s} up to the factor {ratio.pop()}" if len(ratio) == 1
          else f"   ratios differ: {sorted(ratio)}")
