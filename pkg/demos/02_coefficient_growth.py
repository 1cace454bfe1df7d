"""
Coefficient growth under TSVD and its adaptive fix
==================================================

For f1(t) = 1/(1+75t^2) on (-1/2, 1/2), the truncated SVD solution of the
Gram system has coefficient norms in the hundreds of thousands before the
error reaches its floor. ASVD1 keeps the coefficients of order one while
reaching the same final accuracy.
"""

from frameapprox import ASVD1, TSVD, SweepConfig, run_sweep

config = SweepConfig(
    function="f1",
    methods=(TSVD(1e-15), ASVD1(1e-15, 15.0)),
    N_list=(4, 8, 16, 32, 64, 128),
)
records = run_sweep(config)

print(f"{'N':>4} {'method':>6} {'|Lambda|':>8} {'error':>10} {'||x||':>10} {'error/||x||/sqrt(eps)':>22}")
for r in records:
    ratio = r.error_l2 / r.coeff_norm / 1e-15**0.5
    print(f"{r.N:>4} {r.method:>6} {r.lambda_size:>8} {r.error_l2:10.2e} {r.coeff_norm:10.2e} {ratio:22.2f}")
