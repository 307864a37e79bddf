"""
Structural identities behind every formula in the package
=========================================================

Three families of exact operator identities are checked numerically:
the Yang-Baxter equation for the R-matrix, the reflection equation for
the boundary K-matrix, and the exchange relation of the column
operators.  Each residual should sit at rounding level.
"""
import numpy as np

from sixvertex_reflect import (
    exchange_residual,
    random_generic,
    reflection_residual,
    ybe_residual,
)
from sixvertex_reflect.onepoint import b_expansion_residual

rng = np.random.default_rng(0)

# R12(lam-mu) R13(lam) R23(mu) = R23(mu) R13(lam) R12(lam-mu)
# (kept away from the R-matrix poles at lam = -eta, mu = -eta,
# lam + mu = -eta)
worst = 0.0
done = 0
while done < 200:
    lam, mu = rng.uniform(-0.8, 0.8, 2)
    eta = rng.uniform(0.4, 1.1)
    if min(abs(lam + eta), abs(mu + eta), abs(lam + mu + eta)) < 0.1:
        continue
    done += 1
    worst = max(worst, ybe_residual(lam, mu, eta))
print(f"Yang-Baxter residual over 200 draws:   {worst:.2e}")

# R(lam1-lam2) K1(lam1) R(lam1+lam2) K2(lam2) = K2 R K1 R
# (the equation has poles at lam1 + lam2 = 0 and -lam1 + lam2 = -eta;
# draws are kept a little away from them)
worst = 0.0
done = 0
while done < 200:
    lam1, lam2, zeta = rng.uniform(-0.8, 0.8, 3)
    eta = rng.uniform(0.4, 1.1)
    if abs(lam1 + lam2) < 0.1 or abs(-lam1 + lam2 + eta) < 0.1:
        continue
    done += 1
    worst = max(worst, reflection_residual(lam1, lam2, eta, zeta))
print(f"reflection residual over 200 draws:    {worst:.2e}")

# c Bbar(mu) Dbar(nu) + b Dbar(mu) Bbar(nu) = Bbar(nu) Dbar(mu)
params = random_generic(4, seed=1)
worst = max(exchange_residual(params, mu, nu)
            for mu, nu in rng.uniform(-0.6, 0.6, (50, 2)))
print(f"column exchange residual, 50 pairs:    {worst:.2e}")

# the double-row creation operators expand over sign choices of their
# rapidities; the expansion must reproduce the operator chain exactly
worst = max(b_expansion_residual(params, m) for m in (1, 2, 3))
print(f"sign-expansion residual, m = 1..3:     {worst:.2e}")
