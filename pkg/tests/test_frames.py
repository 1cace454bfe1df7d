import math

import numpy as np
import pytest

from frameapprox import (
    AugmentedLogLegendre,
    RestrictedLegendre,
    TargetFunction,
    TruncatedFrame,
    analysis_vector,
    chebyshev_grid,
    collocation_system,
    element_eval,
    gauss_legendre_rule,
    gram_matrix,
    gram_system,
    map_rule,
    synthesis_eval,
)

HALF = RestrictedLegendre(-0.5, 0.5)


def quad(m=40):
    return map_rule(gauss_legendre_rule(m), HALF.domain)


def test_family_metadata():
    assert HALF.frame_bounds == (1.0, 1.0) and HALF.is_parseval
    aug = AugmentedLogLegendre()
    assert aug.K == 4 and aug.frame_bounds == (1.0, 9.0) and not aug.is_parseval
    with pytest.raises(ValueError):
        RestrictedLegendre(0.5, -0.5)
    with pytest.raises(ValueError):
        AugmentedLogLegendre(0)


def test_truncation_validation():
    with pytest.raises(ValueError):
        TruncatedFrame(HALF, 0)
    with pytest.raises(ValueError):
        TruncatedFrame(AugmentedLogLegendre(4), 4)


def test_element_eval_examples():
    assert element_eval(TruncatedFrame(HALF, 3), 0, 0.25) == pytest.approx(0.7071067811865476, abs=1e-16)
    aug = TruncatedFrame(AugmentedLogLegendre(4), 8)
    assert element_eval(aug, 0, 0.5) == pytest.approx(-0.6931471805599453, abs=1e-15)
    assert element_eval(aug, 4, 0.37) == pytest.approx(1.0, abs=1e-15)
    assert element_eval(aug, 4, 0.0) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        element_eval(aug, 1, 0.0)
    with pytest.raises(IndexError):
        element_eval(aug, 8, 0.5)
    with pytest.raises(ValueError):
        element_eval(TruncatedFrame(HALF, 2), 0, 0.75)


def test_augmented_ordering():
    fam = AugmentedLogLegendre(2)
    t = np.array([0.2, 0.9])
    vals = fam.evaluate(5, t)
    poly = math.sqrt(2) * np.sqrt([0.5, 1.5])
    np.testing.assert_allclose(vals[:, 0], np.log(t) * poly[0], atol=1e-15)
    np.testing.assert_allclose(vals[:, 3], poly[1] * (2 * t - 1), atol=1e-15)
    np.testing.assert_allclose(vals[:, 1], np.log(t) * vals[:, 3], atol=1e-15)


def test_gram_entries():
    G = gram_matrix(TruncatedFrame(HALF, 6))
    assert G[0, 0] == pytest.approx(0.5, abs=1e-15)
    assert abs(G[0, 1]) <= 1e-16
    assert G[1, 1] == pytest.approx(0.125, abs=1e-15)
    np.testing.assert_array_equal(G, G.T)


def test_gram_matches_high_order_quadrature():
    frame = TruncatedFrame(HALF, 30)
    q = quad(200)
    B = frame.evaluate(q.nodes)
    ref = B.T @ (q.weights[:, None] * B)
    np.testing.assert_allclose(gram_matrix(frame), ref, atol=1e-13)


def test_gram_rejects_short_rule_and_other_family():
    with pytest.raises(ValueError):
        gram_matrix(TruncatedFrame(HALF, 10), gauss_legendre_rule(5))
    with pytest.raises(TypeError):
        gram_matrix(TruncatedFrame(AugmentedLogLegendre(), 8))


def test_gram_eigenvalues_within_frame_bounds():
    w = np.linalg.eigvalsh(gram_matrix(TruncatedFrame(HALF, 40)))
    assert w.max() <= 1 + 1e-12 and w.min() >= -1e-14


def test_analysis_vector_examples():
    frame = TruncatedFrame(HALF, 5)
    q = quad()
    np.testing.assert_array_equal(analysis_vector(frame, lambda t: 0 * t, q), np.zeros(5))
    phi0 = lambda t: np.full_like(t, math.sqrt(0.5))
    y = analysis_vector(frame, phi0, q)
    np.testing.assert_allclose(y, gram_matrix(frame)[:, 0], atol=1e-15)
    assert y[0] == pytest.approx(0.5, abs=1e-15)
    y = analysis_vector(frame, lambda t: t, q)
    assert abs(y[0]) <= 1e-17
    assert y[1] == pytest.approx(math.sqrt(1.5) / 12, abs=1e-16)
    with pytest.raises(ValueError):
        analysis_vector(frame, lambda t: t, gauss_legendre_rule(10))
    odd = map_rule(gauss_legendre_rule(3), HALF.domain)  # middle node at t = 0
    with pytest.raises(ValueError), np.errstate(divide="ignore"):
        analysis_vector(TruncatedFrame(HALF, 3), lambda t: 1 / t, odd)


def test_gram_system_bundle():
    frame = TruncatedFrame(HALF, 4)
    sys = gram_system(frame, TargetFunction(lambda t: t * t, "t^2"), quad())
    assert sys.kind == "gram" and sys.matrix.shape == (4, 4) and sys.rhs.shape == (4,)


def test_chebyshev_grid_examples():
    assert chebyshev_grid(1).nodes.tolist() == pytest.approx([0.5], abs=1e-16)
    np.testing.assert_allclose(chebyshev_grid(2).nodes, [0.8535533905932737, 0.14644660940672624], atol=1e-16)
    for M in (3, 50, 257):
        g = chebyshev_grid(M).nodes
        assert g.min() > 0 and g.max() < 1 and g.size == M
    with pytest.raises(ValueError):
        chebyshev_grid(0)


def test_collocation_system_examples():
    fam = AugmentedLogLegendre(4)
    frame = TruncatedFrame(fam, 5)
    grid = chebyshev_grid(10)
    sys = collocation_system(frame, lambda t: np.ones_like(t), grid)
    np.testing.assert_allclose(sys.matrix[:, 4], 1.0, atol=1e-15)
    z = np.eye(5)[4]
    assert np.linalg.norm(sys.matrix @ z - sys.rhs) <= 1e-14
    zero = collocation_system(frame, lambda t: 0 * t, grid)
    assert not zero.rhs.any()
    with pytest.raises(ValueError):
        collocation_system(TruncatedFrame(fam, 12), lambda t: t, grid)


def test_synthesis_examples():
    frame = TruncatedFrame(HALF, 2)
    assert synthesis_eval(frame, [0.0, 0.0], 0.3) == 0.0
    assert synthesis_eval(frame, [1.0, 0.0], 0.3) == pytest.approx(math.sqrt(0.5))
    assert synthesis_eval(frame, [1.0, 1.0], 0.0) == pytest.approx(0.7071067811865476, abs=1e-16)
    with pytest.raises(ValueError):
        synthesis_eval(frame, [1.0], 0.0)
