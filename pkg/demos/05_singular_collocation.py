"""
A log-singular function with an augmented frame
===============================================

f(t) = exp(sin(15t + 0.5)) + log(t) cos(t) on (0, 1) is approximated from
M = 2N samples at Chebyshev points, using Legendre polynomials augmented
with K = 4 log-multiplied polynomials. Errors are measured in L2 with a
quadrature rule graded toward t = 0.
"""

from frameapprox import ASVD2, TSVD, AugmentedLogLegendre, SweepConfig, run_sweep

config = SweepConfig(
    family=AugmentedLogLegendre(K=4),
    function="singular",
    params={"alpha": 1.0},
    methods=(TSVD(1e-15), ASVD2(1e-15, 15.0)),
    N_list=(8, 16, 32, 64, 128),
    mode="collocation",
    oversampling=2.0,
)
print(f"{'N':>4} {'method':>6} {'error':>10} {'||x||':>10} {'c||y||':>10}")
for r in run_sweep(config):
    cap = r.c * r.y_norm if r.method == "ASVD2" else float("nan")
    print(f"{r.N:>4} {r.method:>6} {r.error_l2:10.2e} {r.coeff_norm:10.2e} {cap:10.2e}")
