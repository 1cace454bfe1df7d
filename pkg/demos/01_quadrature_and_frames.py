"""
Quadrature rules and the two frame families
===========================================

Gauss-Legendre rules, the graded rule for log singularities, and the Gram
matrix of Legendre polynomials restricted to (-1/2, 1/2).
"""

import numpy as np

from frameapprox import (
    AugmentedLogLegendre,
    RestrictedLegendre,
    TruncatedFrame,
    gauss_legendre_rule,
    graded_log_rule,
    gram_matrix,
)

# A 3-point rule integrates polynomials up to degree 5 exactly.
rule = gauss_legendre_rule(3)
print("3-point nodes  :", rule.nodes)
print("3-point weights:", rule.weights)
print("integral of t^4 over (-1, 1):", rule.integrate(lambda t: t**4), "exact:", 2 / 5)

# Plain Gauss rules converge slowly for log(t) on (0, 1); geometric grading fixes that.
graded = graded_log_rule()
print("\nintegral of log(t) over (0, 1) with the graded rule:", graded.integrate(np.log))

# Orthonormal Legendre polynomials on (-1, 1), restricted to (-1/2, 1/2), form a
# Parseval frame. Its Gram matrix has eigenvalues clustered at 0 and 1.
family = RestrictedLegendre(-0.5, 0.5)
G = gram_matrix(TruncatedFrame(family, 40))
w = np.linalg.eigvalsh(G)
print("\nGram matrix N=40: entry (0,0) =", G[0, 0], ", entry (1,1) =", G[1, 1])
print("eigenvalues near 1:", int(np.sum(w > 1 - 1e-8)), " below 1e-15:", int(np.sum(w < 1e-15)))

# The augmented family puts K log-multiplied polynomials in front of the plain ones.
aug = TruncatedFrame(AugmentedLogLegendre(K=4), 8)
print("\naugmented frame at t = 0.5:", np.round(aug.evaluate(np.array(0.5)), 4))
