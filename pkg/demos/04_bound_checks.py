"""
Checking the error and coefficient bounds
=========================================

Every bound holds for all candidate coefficient vectors z, so each check is
run for a concrete z. A report whose precondition fails passes vacuously and
is not counted as verified.
"""

import numpy as np

from frameapprox import (
    ASVD2,
    TSVD,
    CandidateCoefficients,
    L2Measure,
    RestrictedLegendre,
    StableApproxWitness,
    TruncatedFrame,
    builtin_function,
    check_coeff_bound,
    check_error_bound,
    check_projection_bounds,
    check_stable_approx,
    gauss_legendre_rule,
    gram_factorization,
    map_rule,
    select,
    solve_selected,
)

family = RestrictedLegendre()
N = 48
f = builtin_function("f3")
quad = map_rule(gauss_legendre_rule(N + 200), family.domain)
measure = L2Measure(TruncatedFrame(family, N), f, quad)
y = measure.analysis()
fact = gram_factorization(family, N)

for rule in (TSVD(1e-15), ASVD2(1e-15, 15.0)):
    sel = select(rule, fact, y)
    x = solve_selected(fact, y, sel)
    print(f"\n{rule.name}: |Lambda| = {sel.size}, error = {measure.residual(x):.3e}, ||x|| = {np.linalg.norm(x):.3e}")
    for label, z in (("z = 0", np.zeros(N)), ("z = a_N", y), ("z = x", x)):
        z = CandidateCoefficients(z, label)
        for rep in (check_error_bound(rule, measure, z, x, np.linalg.norm(y)), check_coeff_bound(rule, measure, z, x)):
            print(f"  {label:8s} {rep}")
        for rep in check_projection_bounds(sel, measure, z, x):
            print(f"  {label:8s} {rep}")
    witness = StableApproxWitness.tightest(measure, y)
    print(f"  witness a = {witness.a:.3f}, delta = {witness.delta:.2e}:", check_stable_approx(witness, rule, x))
