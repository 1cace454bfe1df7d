"""
How the cap c and the threshold eps shape the adaptive rules
============================================================

ASVD1 drops individual terms whose coefficient exceeds c||y||; ASVD2 keeps
the largest set of terms, smallest first, whose total coefficient norm stays
within c||y||. Caps below the sufficient thresholds can stall convergence,
and dropping the threshold eps lets the coefficient norm grow with N.
"""

import numpy as np

from frameapprox import ASVD1, ASVD2, SpectralFactorization, SweepConfig, run_sweep, select, solve_selected

# A two-term toy problem: ratios |<y,v_n>|/sigma_n are 1 and 50, while c||y|| is about 11.2.
fact = SpectralFactorization(np.array([1.0, 1e-2]), np.eye(2))
y = np.array([1.0, 0.5])
for rule in (ASVD1(1e-15, 10.0), ASVD2(1e-15, 10.0)):
    sel = select(rule, fact, y)
    print(rule.name, "keeps", sel.indices.tolist(), "x =", solve_selected(fact, y, sel))

config = SweepConfig(
    function="f2",
    methods=(ASVD1(1e-15, 0.5), ASVD1(1e-15, 15.0), ASVD2(1e-15, 1.0), ASVD2(1e-15, 15.0), ASVD1(0.0, 15.0)),
    N_list=(16, 64, 128),
)
print(f"\n{'N':>4} {'rule':>24} {'error':>10} {'||x||':>10} {'cap':>10}")
for r in run_sweep(config):
    label = f"{r.method}(eps={r.epsilon:g}, c={r.c:g})"
    cap = r.c * r.y_norm * (np.sqrt(r.N) if r.method == "ASVD1" else 1.0)
    print(f"{r.N:>4} {label:>24} {r.error_l2:10.2e} {r.coeff_norm:10.2e} {cap:10.2e}")
