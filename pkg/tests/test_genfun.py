import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import disc_sample
from rootlocus.genfun import (
    TrinomialFamily,
    h_roots,
    h_sequence,
    series_oracle,
    specialize_denominator,
)
from rootlocus.poly import ComplexPolynomial as P


def fam(A, B, n):
    return TrinomialFamily.from_coeffs(A, B, n)


def values(seq):
    return [complex(p(0.0)) if p.degree <= 0 else None for p in seq.polys]


def test_constant_family_examples():
    seq = h_sequence(fam([1], [1], 2), 4)
    assert values(seq) == [1, -1, 0, 1, -1]
    assert values(series_oracle(fam([1], [1], 2), 5)) == [1, -1, 0, 1, -1, 0]
    assert values(series_oracle(fam([1], [0], 3), 6)) == [1, 0, 0, -1, 0, 0, 1]


def test_chebyshev_family_second_term():
    f = fam([1], [0, 1], 2)
    assert h_sequence(f, 2)[2] == P([-1, 0, 1])
    assert series_oracle(f, 2)[2] == P([-1, 0, 1])
    assert h_sequence(f, 0)[0] == P([1])


def test_family_validation():
    with pytest.raises(ValueError):
        fam([1], [1], 1)
    with pytest.raises(ValueError):
        fam([0], [1], 2)
    with pytest.raises(ValueError):
        h_sequence(fam([1], [1], 2), -1)


def test_initial_terms_are_powers_of_minus_b():
    f = fam([0.3, 1j], [1, 2 - 1j, 0.5], 4)
    seq = h_sequence(f, 3)
    for m in range(4):
        np.testing.assert_allclose(((-f.B) ** m).coeffs, seq[m].coeffs, rtol=1e-14)


@pytest.mark.parametrize("z0, A, B, n, want", [
    (1.0, [1], [0, 1], 2, [1, 1, 1]),
    (1.0, [0, 0, 1], [2, -2, 1], 2, [1, 1, 1]),
    (0.7 + 2j, [1], [0], 4, [1, 0, 0, 0, 1]),
])
def test_specialize_denominator(z0, A, B, n, want):
    assert specialize_denominator(fam(A, B, n), z0) == P(want)


def test_oracle_equivalence_corpus():
    rng = np.random.default_rng(7)
    for i in range(50):
        n = 2 + i % 4
        da, db = rng.integers(0, 4, 2)
        f = fam(disc_sample(rng, da + 1), disc_sample(rng, db + 1), n)
        rec, ora = h_sequence(f, 25), series_oracle(f, 25)
        for m in range(26):
            a, b = rec[m].coeffs, ora[m].coeffs
            width = max(a.size, b.size)
            a, b = np.pad(a, (0, width - a.size)), np.pad(b, (0, width - b.size))
            scale = max(np.max(np.abs(a), initial=0.0), 1e-300)
            assert np.max(np.abs(a - b), initial=0.0) <= 1e-9 * max(scale, 1.0)


@given(st.integers(0, 3), st.integers(0, 3), st.integers(2, 5), st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_degree_bound(da, db, n, seed):
    rng = np.random.default_rng(seed)
    f = fam(disc_sample(rng, da + 1), disc_sample(rng, db + 1), n)
    seq = h_sequence(f, 30)
    for m, p in enumerate(seq.polys):
        assert p.degree <= m * max(f.B.degree, f.A.degree, 0)


@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_recurrence_exact_and_rescaled(n, seed):
    rng = np.random.default_rng(seed)
    f = fam(disc_sample(rng, 3) * 3, disc_sample(rng, 3) * 3, n)
    plain = h_sequence(f, 40, rescale=False)
    scaled = h_sequence(f, 120, rescale=True)
    for m in range(1, 41):
        ref = max(plain[m].max_abs(), plain[m - 1].max_abs(), 1.0)
        assert plain.recurrence_residual(m) <= 1e-13 * ref
    for m in range(121):
        assert scaled.recurrence_residual(m) <= 1e-10 * max(1.0, scaled[m].max_abs())
    for m in range(41):
        np.testing.assert_allclose(scaled.unscaled(m).coeffs, plain[m].coeffs,
                                   rtol=1e-10, atol=1e-10 * plain[m].max_abs())


def test_rescaling_default_threshold():
    f = fam([1], [3, 1], 2)
    assert all(s == 0 for s in h_sequence(f, 50).log_scales)
    seq = h_sequence(f, 51)
    assert all(abs(p.max_abs() - 1) < 1e-12 for p in seq.polys[1:])


def test_rescaled_sequence_survives_overflow():
    f = fam([1], [40, 1], 2)
    seq = h_sequence(f, 400)
    assert np.all(np.isfinite(seq[400].coeffs))
    assert seq.log_scales[400] > 700


@pytest.mark.parametrize("m", [5, 10, 20, 60, 160])
def test_h_roots_chebyshev(m):
    rs = h_roots(fam([1], [0, 1], 2), m)
    want = np.sort(2 * np.cos(np.arange(1, m + 1) * np.pi / (m + 1)))
    np.testing.assert_allclose(np.sort(rs.roots.real), want, atol=1e-10)
    assert np.max(np.abs(rs.roots.imag)) < 1e-10


def test_h_roots_zero_roots_deflated():
    # B = z gives H_m with a root at 0 for odd m in the Chebyshev family
    rs = h_roots(fam([1], [0, 1], 2), 7)
    assert np.sum(rs.roots == 0) == 1
