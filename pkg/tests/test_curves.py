import cmath
import math

import numpy as np
import pytest

from corpus import random_families
from rootlocus.curves import (
    AVanishesError,
    LocusSpec,
    f_map,
    interval_bound,
    one_sided_hausdorff,
    populated_hausdorff,
    quotient_locus_residual,
    quotients_at_root,
    ratio,
    root_locus_residual,
    sample_locus,
    verify_theorem,
    quartic_curve,
)
from rootlocus.genfun import TrinomialFamily, h_roots, h_sequence
from rootlocus.casework import example_family

cheb = TrinomialFamily.from_coeffs([1], [0, 1], 2)


def test_interval_bounds_exact():
    assert interval_bound(2) == 4
    assert interval_bound(3) == 27 / 4
    assert interval_bound(4) == 256 / 27
    assert interval_bound(5) == 3125 / 256


@pytest.mark.parametrize("family, z, want", [
    (cheb, 1, 1),
    (example_family(2), 1 + 1j, 0),
    (TrinomialFamily.from_coeffs([1], [1], 3), 0.3 - 2j, 1),
])
def test_ratio_examples(family, z, want):
    assert ratio(family, z) == pytest.approx(want, abs=1e-14)


def test_ratio_a_vanishes():
    with pytest.raises(AVanishesError, match="A vanishes"):
        ratio(example_family(2), 0)


@pytest.mark.parametrize("z, want", [(1, 0), (3, 5), (1j, 1)])
def test_root_locus_residual_examples(z, want):
    assert root_locus_residual(cheb, z) == pytest.approx(want)


@pytest.mark.parametrize("n, q", [
    (3, cmath.exp(2j * math.pi / 3)),
    (3, -0.5),
    (4, 1j),
    (2, cmath.exp(0.7j)),
])
def test_quotient_residual_zero(n, q):
    assert quotient_locus_residual(n, q) < 1e-15


def test_quotient_residual_positive_off_locus():
    assert quotient_locus_residual(2, 2) == pytest.approx(1)
    assert quotient_locus_residual(3, 0.5 + 0.1j) > 0.1
    assert quotient_locus_residual(4, -1) < 1e-15  # -1 lies on the quartic
    assert quotient_locus_residual(4, 2) > 0.3
    with pytest.raises(ValueError):
        quotient_locus_residual(5, 1)


@pytest.mark.parametrize("n, q, want", [
    (2, 1j, 2),
    (3, 1, -27 / 4),
    (4, 1, 256 / 27),
])
def test_f_map_examples(n, q, want):
    assert f_map(n, q) == pytest.approx(want)


@pytest.mark.parametrize("n, q", [(2, 0), (3, -1), (4, cmath.exp(2j * math.pi / 3))])
def test_f_map_poles(n, q):
    with pytest.raises(ZeroDivisionError):
        f_map(n, q)


def test_quotients_examples():
    q = quotients_at_root(cheb, 1.0)
    w = cmath.exp(2j * math.pi / 3)
    np.testing.assert_allclose(np.sort_complex(q), np.sort_complex([w, w.conjugate()]), atol=1e-12)
    q = quotients_at_root(TrinomialFamily.from_coeffs([1], [0], 2), 0.4 + 2j)
    np.testing.assert_allclose(q, [-1], atol=1e-12)


def test_quotients_constant_cubic_family():
    # H_m is constant here, so there are no roots to test; off the root set
    # the quotients need not lie on the locus
    f = TrinomialFamily.from_coeffs([1], [1], 3)
    assert h_sequence(f, 12)[12].degree <= 0
    q = quotients_at_root(f, 2 + 1j)
    assert q.size == 6
    assert np.max(quotient_locus_residual(3, q)) > 0.1


def test_quotients_at_roots_on_cubic_locus():
    f = TrinomialFamily.from_coeffs([1], [0, 1], 3)
    for z in h_roots(f, 30).roots:
        q = quotients_at_root(f, z)
        assert q.size == 6
        assert np.all(quotient_locus_residual(3, q) < 1e-9)


def test_quotient_samples_small():
    np.testing.assert_allclose(sample_locus(LocusSpec.quotient(2), 4), [1, 1j, -1, -1j], atol=1e-15)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_quotient_samples_on_locus(n):
    pts = sample_locus(LocusSpec.quotient(n), 1000)
    assert pts.size == 1000
    assert np.all(quotient_locus_residual(n, pts) <= 1e-8)


def test_cubic_samples_cover_branches():
    pts = sample_locus(LocusSpec.quotient(3), 600)
    x, y = pts.real, pts.imag
    on_c1 = (np.abs((x + 1) ** 2 + y ** 2 - 1) < 1e-9) & (x < -0.5 - 1e-3)
    on_c2 = (np.abs(x + 0.5) < 1e-12) & (np.abs(y) < math.sqrt(3) / 2 - 1e-3)
    on_c3 = (np.abs(x * x + y * y - 1) < 1e-9) & (x > -0.5 + 1e-3)
    assert on_c1.sum() > 50 and on_c2.sum() > 50 and on_c3.sum() > 50


@pytest.mark.parametrize("n", [2, 3, 4])
def test_f_map_reality(n):
    bound = interval_bound(n)
    for q in sample_locus(LocusSpec.quotient(n), 512):
        try:
            f = f_map(n, q)
        except ZeroDivisionError:
            continue
        assert abs(f.imag) <= 1e-8 * (1 + abs(f))
        v = (-1) ** n * f.real
        assert -1e-8 <= v <= bound + 1e-8


def test_quartic_pairing():
    pts = sample_locus(LocusSpec.quotient(4), 512)
    curve = pts[np.abs(quartic_curve(pts.real, pts.imag)) < 1e-10]
    curve = curve[np.abs(np.abs(curve) - 1) > 1e-6]
    assert curve.size > 100
    for q in curve:
        q1s = np.roots([1, q + 1, q * q + q + 1])
        arc = [q1 for q1 in q1s if abs(abs(q1) - 1) < 1e-9 and q1.real >= -1 / 3 - 1e-9]
        assert arc, q
        for q1 in arc:
            assert abs(q1 ** 3 + q1 ** 2 + q1 - (q ** 3 + q ** 2 + q)) <= 1e-9


def test_root_locus_samples():
    spec = LocusSpec.root(cheb, window=(-3, 3, -1, 1))
    pts = sample_locus(spec, 200)
    assert 0 < pts.size <= 200
    assert np.all(spec.residual(pts) <= 1e-8)
    assert pts.real.min() > -2 - 1e-6 and pts.real.max() < 2 + 1e-6


def test_hausdorff_examples():
    spec = LocusSpec.quotient(2)
    assert one_sided_hausdorff(sample_locus(spec, 64), spec, 64) == 0
    assert one_sided_hausdorff([1], spec, 4) == pytest.approx(2)
    with pytest.raises(ValueError):
        one_sided_hausdorff([], spec, 4)


@pytest.mark.parametrize("family, m", [
    (cheb, 10),
    (example_family(2), 30),
    (TrinomialFamily.from_coeffs([1], [1], 4), 20),
])
def test_verify_examples(family, m):
    rep = verify_theorem(family, m)
    assert rep.passed and rep.max_residual <= 1e-6
    assert rep.max_residual == max(rep.residuals, default=0.0)


def test_verify_rejects_large_n():
    with pytest.raises(ValueError):
        verify_theorem(TrinomialFamily.from_coeffs([1], [0, 1], 6), 5)


def test_verify_quintic_is_conjectural():
    rep = verify_theorem(TrinomialFamily.from_coeffs([1], [0, 1], 5), 12)
    assert rep.conjectural and rep.passed


def test_verify_counts_filtered_roots():
    # A = z^2 vanishes at 0; for a = 0 half of the roots sit there
    rep = verify_theorem(example_family(0.0), 20)
    assert rep.total_roots == 40 and rep.filtered_roots == 20
    assert len(rep.residuals) == 20


@pytest.mark.parametrize("n", [2, 3, 4])
def test_theorem_residuals_small_corpus(n):
    for f in random_families(n, 4, seed=50 + n, m_probe=25):
        seq = h_sequence(f, 25)
        for m in range(5, 26, 5):
            rep = verify_theorem(f, m, seq=seq, density_samples=None)
            assert rep.max_normalized_residual <= 1e-6
            for z in rep.roots:
                assert np.all(quotient_locus_residual(n, quotients_at_root(f, z)) <= 1e-6)


def test_chebyshev_density_improves():
    roots = {m: h_roots(cheb, m).roots for m in (20, 80)}
    out = populated_hausdorff(cheb, roots, reference_m=80)
    assert out[80] <= 0.7 * out[20]
    assert out["populated_components"] >= 1


def test_endpoints_near_discriminant_roots():
    f = example_family(2.0)
    rep = verify_theorem(f, 60, density_samples=None)
    disc_roots = np.polynomial.polynomial.polyroots(((f.B * f.B) - 4 * f.A).coeffs)
    z = rep.roots
    real = z[np.abs(z.imag) <= 1e-6].real
    arc = z[np.abs(z.imag) > 1e-6]
    # interval ends and the two arc ends next to the imaginary axis
    extremes = [real.min(), real.max(), arc[np.argmax(arc.imag)], arc[np.argmin(arc.imag)]]
    for e in extremes:
        assert np.min(np.abs(disc_roots - e)) <= 0.15
