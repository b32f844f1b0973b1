"""Kernel-layer tests: null spaces, structure maps, dichotomy, invariance."""

from __future__ import annotations

import math

import numpy as np
import pytest

from pairedops.kernels import (
    AmbiguousKernelError,
    _null_space,
    adjoint_inverse_report,
    adjoint_kernel_basis,
    adjoint_kernel_map,
    adjoint_kernel_map_inverse,
    coburn_check,
    invertible_on_circle,
    kernel_basis,
    kernel_conjugate,
    kernel_element_direct,
    kernel_element_from_inner_factor,
    kernel_projections,
    multiplier_invariance_test,
    pair_from_function,
    reciprocal_symbol,
    same_kernel_test,
    subspace_angle,
    toeplitz_kernel_bridge,
)
from pairedops.operators import DegeneratePairError, SymbolPair, apply_paired
from pairedops.symbols import LaurentPoly, parse_symbol


def lp(text: str) -> LaurentPoly:
    return parse_symbol(text)


def pair(a: str, b: str) -> SymbolPair:
    return SymbolPair(lp(a), lp(b))


# ---------------------------------------------------------------------------
# null-space machinery
# ---------------------------------------------------------------------------


def test_null_space_gap_guard():
    ambiguous = np.diag([1.0, 3e-8]).astype(complex)
    with pytest.raises(AmbiguousKernelError) as err:
        _null_space(ambiguous)
    assert len(err.value.singular_values) == 2
    clean_cols, svals = _null_space(np.diag([1.0, 1e-12]).astype(complex))
    assert clean_cols.shape[1] == 1
    assert svals == sorted(svals)


def test_kernel_basis_pinned_dimensions():
    k = kernel_basis(pair("z^-1", "z"), 4)
    assert k.dim == 2 and k.stabilized
    expected = [lp("1 - z^-2"), lp("z - z^-1")]
    assert subspace_angle(list(k.basis), expected) <= 1e-10

    k = kernel_basis(pair("z^-1", "1"), 4)
    assert k.dim == 1 and k.stabilized
    assert subspace_angle(list(k.basis), [lp("1 - z^-1")]) <= 1e-10

    for band in (32, 64):
        k = kernel_basis(pair("1", "1 - z"), band)
        assert k.dim == 0 and k.stabilized


def test_kernel_basis_membership_and_gram():
    k = kernel_basis(pair("z^-1", "z"), 6)
    for v in k.basis:
        assert apply_paired(k.pair, v).l2_norm() <= 1e-10
    mat = np.column_stack([v.to_dense(-6, 6) for v in k.basis])
    gram = mat.conj().T @ mat
    assert np.max(np.abs(gram - np.eye(k.dim))) <= 1e-12


def test_kernel_basis_rejects_degenerate():
    with pytest.raises(DegeneratePairError):
        kernel_basis(pair("1", "1"), 4)
    with pytest.raises(DegeneratePairError):
        kernel_basis(SymbolPair(LaurentPoly.zero(), lp("z")), 4)


def test_kernel_projections_pinned():
    k = kernel_basis(pair("z^-1", "1"), 4)
    proj = kernel_projections(k)
    # basis vector is a unit multiple of 1 - zbar
    scale = proj.plus[0].coeff(0)
    assert abs(abs(scale) - 1 / math.sqrt(2)) <= 1e-12
    assert (proj.plus[0] - LaurentPoly({0: scale})).max_abs_coeff() <= 1e-12
    assert (proj.minus[0] - LaurentPoly({-1: -scale})).max_abs_coeff() <= 1e-12
    for v, p, m in zip(k.basis, proj.plus, proj.minus):
        assert p + m == v


def test_kernel_projections_empty():
    k = kernel_basis(pair("1", "1 - z"), 8)
    proj = kernel_projections(k)
    assert proj.plus == () and proj.minus == ()


# ---------------------------------------------------------------------------
# Toeplitz bridge
# ---------------------------------------------------------------------------


def test_bridge_pinned():
    r = toeplitz_kernel_bridge(lp("z^-1"), 8)
    assert r.dim_toeplitz == 1 and r.dim_projected == 1
    assert r.angle <= 1e-8

    r = toeplitz_kernel_bridge(lp("z"), 8)
    assert r.dim_toeplitz == 0 and r.dim_projected == 0
    assert r.angle <= 1e-8

    r = toeplitz_kernel_bridge(lp("z^-2"), 8)
    assert r.dim_toeplitz == 2 and r.dim_projected == 2
    assert r.angle <= 1e-8


def bridge_with_escalation(g, band=12, cap=128):
    while band <= cap:
        try:
            return toeplitz_kernel_bridge(g, band)
        except AmbiguousKernelError:
            band *= 2
    raise AssertionError("bridge band escalation exhausted")


def test_bridge_random_symbols():
    rng = np.random.default_rng(61)
    for _ in range(10):
        k = int(rng.integers(1, 4))
        degree = int(rng.integers(0, 4))
        coeffs = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        g = LaurentPoly.from_dense(coeffs, 0).shift(-k)
        if g.is_zero or (g - LaurentPoly.one()).is_zero:
            continue
        r = bridge_with_escalation(g)
        assert r.dim_toeplitz == r.dim_projected
        assert r.angle <= 1e-8


# ---------------------------------------------------------------------------
# kernel equality criterion
# ---------------------------------------------------------------------------


def test_same_kernel_multiplied_pair():
    eta = lp("1 + 2*z")
    base = pair("z^-1", "1")
    scaled = SymbolPair(eta * base.a, eta * base.b)
    assert same_kernel_test(base, scaled)


def test_same_kernel_negative_case():
    assert not same_kernel_test(pair("z^-1", "z"), pair("z^-2", "z^2"))


def test_same_kernel_scalar_multiple():
    assert same_kernel_test(pair("1", "z"), pair("2", "2*z"))


def test_same_kernel_requires_nondegenerate():
    with pytest.raises(DegeneratePairError):
        same_kernel_test(pair("1", "1"), pair("1", "z"))


# ---------------------------------------------------------------------------
# explicit kernel elements
# ---------------------------------------------------------------------------


def test_kernel_element_direct_pinned():
    f = kernel_element_direct(lp("z^-1"), lp("1"))
    assert f == lp("1 - z^-1")
    assert apply_paired(pair("z^-1", "1"), f).is_zero

    f = kernel_element_direct(lp("z^-3"), lp("z^2 + 1"))
    assert apply_paired(pair("z^-3", "z^2 + 1"), f).l2_norm() <= 1e-13


def test_kernel_element_direct_shift_identity():
    base = pair("z^-1", "1")
    shifted = SymbolPair(lp("z") * base.a, lp("z") * base.b)
    assert same_kernel_test(base, shifted)
    f = kernel_element_direct(base.a, base.b)
    assert apply_paired(shifted, f).l2_norm() <= 1e-13


def test_kernel_element_direct_preconditions():
    with pytest.raises(ValueError):
        kernel_element_direct(lp("1"), lp("z"))  # first symbol not vanishing
    with pytest.raises(ValueError):
        kernel_element_direct(lp("z^-1"), lp("z^-1"))  # second not analytic


def test_kernel_element_inner_factor_monomial_cases():
    f = kernel_element_from_inner_factor(lp("z^-1"), lp("z"))
    assert f == lp("1 - z^-2")
    f = kernel_element_from_inner_factor(lp("z^-2"), lp("z^2"))
    assert f == lp("z - z^-3")


def test_kernel_element_inner_factor_blaschke_case():
    a = lp("z^-1 + 2")
    b = lp("z - 0.5")
    f = kernel_element_from_inner_factor(a, b)
    assert not f.is_zero
    assert apply_paired(SymbolPair(a, b), f).l2_norm() <= 1e-9


def test_kernel_element_inner_factor_rejects_trivial_inner():
    with pytest.raises(ValueError):
        kernel_element_from_inner_factor(lp("z^-1"), lp("z - 2"))
    with pytest.raises(ValueError):
        kernel_element_from_inner_factor(lp("z"), lp("z"))


# ---------------------------------------------------------------------------
# pair determined by one function
# ---------------------------------------------------------------------------


def test_pair_from_function_matches_known_kernels():
    kp = pair_from_function(lp("1 - z^-1"))
    assert kp.residual <= 1e-9
    assert same_kernel_test(kp, pair("z^-1", "1"))

    kp = pair_from_function(lp("1 - z^-2"))
    assert kp.residual <= 1e-9
    assert same_kernel_test(kp, pair("z^-1", "z"))


def test_pair_from_function_halfspace_conventions():
    kp = pair_from_function(lp("z - 0.5"))
    assert kp.provenance.convention == "analytic_halfspace"
    assert kp.a.num.is_zero and kp.b.num == LaurentPoly.one()
    # the degenerate pair still annihilates the source
    assert apply_paired(SymbolPair(kp.a.num, kp.b.num), lp("z - 0.5")).is_zero

    kp = pair_from_function(lp("z^-2 + z^-1"))
    assert kp.provenance.convention == "coanalytic_halfspace"
    assert apply_paired(SymbolPair(kp.a.num, kp.b.num), lp("z^-2 + z^-1")).is_zero


def test_pair_from_function_random_annihilation():
    rng = np.random.default_rng(67)
    for _ in range(15):
        plus = LaurentPoly.from_dense(rng.standard_normal(4) + 1j * rng.standard_normal(4), 0)
        minus = LaurentPoly.from_dense(rng.standard_normal(3) + 1j * rng.standard_normal(3), -3)
        phi = plus + minus
        if plus.is_zero or minus.is_zero:
            continue
        kp = pair_from_function(phi)
        assert kp.residual <= 1e-9


def test_pair_from_function_rejects_zero():
    with pytest.raises(ValueError):
        pair_from_function(LaurentPoly.zero())


# ---------------------------------------------------------------------------
# conjugation map between mirrored kernels
# ---------------------------------------------------------------------------


def test_kernel_conjugate_pinned():
    p = pair("z^-1", "1")
    phi = lp("1 - z^-1")
    image = kernel_conjugate(phi, p)
    assert image == lp("z^-1 - 1")
    assert apply_paired(p.conj_swapped(), image).is_zero


def test_kernel_conjugate_involution():
    p = pair("z^-1", "z")
    phi = lp("z - z^-1")
    image = kernel_conjugate(phi, p)
    back = kernel_conjugate(image, p.conj_swapped())
    assert back == phi


def test_kernel_conjugate_antilinear():
    p = pair("z^-1", "1")
    phi = lp("1 - z^-1")
    alpha = 2 + 3j
    lhs = kernel_conjugate(phi * alpha, p)
    rhs = kernel_conjugate(phi, p) * complex(alpha).conjugate()
    assert (lhs - rhs).max_abs_coeff() <= 1e-14


def test_kernel_conjugate_dimension_transfer():
    cases = [pair("z^-1", "z"), pair("z^-1", "1"), pair("z^-2", "z^2 + 1")]
    for p in cases:
        k = kernel_basis(p, 6)
        mirrored = kernel_basis(p.conj_swapped(), 7)
        assert mirrored.dim == k.dim
        images = [kernel_conjugate(v, p) for v in k.basis]
        if images:
            # images stay orthonormal and land in the mirrored kernel
            mat = np.column_stack([v.to_dense(-7, 7) for v in images])
            assert np.max(np.abs(mat.conj().T @ mat - np.eye(k.dim))) <= 1e-10
            assert subspace_angle(images, list(mirrored.basis)) <= 1e-8


def test_kernel_conjugate_zero_and_rejection():
    p = pair("z^-1", "1")
    assert kernel_conjugate(LaurentPoly.zero(), p).is_zero
    with pytest.raises(ValueError):
        kernel_conjugate(lp("1 + z"), p)


# ---------------------------------------------------------------------------
# adjoint kernel transfer
# ---------------------------------------------------------------------------


def test_adjoint_kernel_pinned_dimensions():
    k = adjoint_kernel_basis(pair("z", "1"), 6)
    assert k.dim == 1
    assert subspace_angle(list(k.basis), [lp("1")]) <= 1e-10

    assert adjoint_kernel_basis(pair("1", "z"), 6).dim == 0


def test_adjoint_kernel_map_pinned():
    p = pair("z", "1")
    psi = lp("1")
    image = adjoint_kernel_map(psi, p)
    assert image == lp("z^-1 - 1")
    assert apply_paired(p.conjugated(), image).l2_norm() <= 1e-12


def test_adjoint_inverse_cases_agree():
    p = pair("z", "1")
    phi = lp("z^-1 - 1")
    # a = z and b = 1 are invertible on the circle; a - b = z - 1 is not
    assert invertible_on_circle(p.a) and invertible_on_circle(p.b)
    assert not invertible_on_circle(p.a - p.b)
    via_a = adjoint_kernel_map_inverse(phi, p, "a")
    via_b = adjoint_kernel_map_inverse(phi, p, "b")
    assert (via_a - lp("1")).l2_norm() <= 1e-9
    assert (via_b - lp("1")).l2_norm() <= 1e-9
    report = adjoint_inverse_report(phi, p)
    assert report.applicable == ("a", "b")
    assert report.max_discrepancy <= 1e-9


def test_adjoint_round_trip():
    p = pair("z", "1")
    for psi in adjoint_kernel_basis(p, 6).basis:
        phi = adjoint_kernel_map(psi, p)
        for case in ("a", "b"):
            back = adjoint_kernel_map_inverse(phi, p, case)
            assert (back - psi).l2_norm() <= 1e-9


def test_adjoint_inverse_rejects_non_invertible_case():
    p = pair("z", "1")
    phi = lp("z^-1 - 1")
    from pairedops.symbols import ConditioningError

    with pytest.raises(ConditioningError):
        adjoint_kernel_map_inverse(phi, p, "difference")


def test_adjoint_trivial_kernel_all_invertible():
    p = pair("2", "1")
    k = adjoint_kernel_basis(p, 6)
    assert k.dim == 0
    assert invertible_on_circle(p.a) and invertible_on_circle(p.b)
    assert invertible_on_circle(p.a - p.b)


def test_reciprocal_symbol_exact_shift():
    r = reciprocal_symbol(lp("z^-1"))
    assert r.num == lp("z") and r.den == LaurentPoly.one()
    from pairedops.symbols import ConditioningError

    with pytest.raises(ConditioningError):
        reciprocal_symbol(lp("1 - z"))


# ---------------------------------------------------------------------------
# Coburn dichotomy
# ---------------------------------------------------------------------------


def test_coburn_pinned_cases():
    r = coburn_check(pair("1", "z"), 8)
    assert (r.dim_kernel, r.dim_swapped) == (1, 0)
    assert r.dichotomy_holds and r.conjugate_dims_match
    assert r.adjoint_dim_matches

    r = coburn_check(pair("z^-1", "z"), 8)
    assert (r.dim_kernel, r.dim_swapped) == (2, 0)
    assert r.dichotomy_holds and r.conjugate_dims_match

    r = coburn_check(pair("1", "1 - z"), 16)
    assert (r.dim_kernel, r.dim_swapped) == (0, 0)
    assert r.dichotomy_holds


def test_coburn_rejects_zero_symbol():
    with pytest.raises(DegeneratePairError):
        coburn_check(SymbolPair(LaurentPoly.zero(), lp("z")), 8)


def test_coburn_equal_symbols_special_case():
    r = coburn_check(pair("1 + z", "1 + z"), 8)
    assert r.degenerate_difference
    assert r.dim_kernel == 0 and r.dichotomy_holds


# ---------------------------------------------------------------------------
# multiplier invariance
# ---------------------------------------------------------------------------


def test_invariance_constant_multiplier():
    p = pair("z^-1", "z")
    report = multiplier_invariance_test(p, lp("3"), lp("z - z^-1"))
    assert report.multiplier_keeps_kernel and report.hankel_parts_vanish


def test_invariance_fails_consistently():
    p = pair("z^-1", "z")
    report = multiplier_invariance_test(p, lp("z^2"), lp("1 - z^-2"))
    assert not report.multiplier_keeps_kernel
    assert not report.hankel_parts_vanish
    assert report.hankel_plus_residual > 1e-8

    p = pair("z^-1", "1")
    report = multiplier_invariance_test(p, lp("z"), lp("1 - z^-1"))
    assert not report.multiplier_keeps_kernel and not report.hankel_parts_vanish


def test_invariance_member_case():
    # eta = z^2 with a kernel element whose parts clear both Hankel conditions
    p = pair("z^-3", "z^3")
    f = kernel_element_from_inner_factor(p.a, p.b)  # 1 - zbar^... deep parts
    report = multiplier_invariance_test(p, lp("z^2"), f)
    assert report.consistent
    report2 = multiplier_invariance_test(p, lp("1"), f)
    assert report2.multiplier_keeps_kernel


def test_invariance_requires_membership():
    with pytest.raises(ValueError):
        multiplier_invariance_test(pair("z^-1", "z"), lp("z"), lp("1 + z"))
