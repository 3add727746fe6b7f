"""Seeded random families shared by the theorem and acceptance tests."""

import numpy as np

from rootlocus.curves import a_filter_threshold
from rootlocus.genfun import TrinomialFamily, h_roots
from rootlocus.poly import evaluate

A_MARGIN = 1e3


def disc_sample(rng, k):
    r = np.sqrt(rng.uniform(0, 1, k))
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, k))


def _clear_of_a(family, m):
    """True when every root of H_m keeps |A| well above the filter threshold."""
    p_roots = h_roots(family, m).roots
    if p_roots.size == 0:
        return True
    a_abs = np.abs(evaluate(family.A, p_roots))
    return bool(np.all(a_abs > A_MARGIN * a_filter_threshold(family, p_roots)))


def random_families(n, count, seed, max_deg=2, m_probe=40):
    """
    ``count`` families with deg A, deg B <= max_deg and coefficients in
    the unit disc.  Families whose roots at ``m_probe`` crowd a zero of A
    are redrawn.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        da, db = rng.integers(0, max_deg + 1, 2)
        if da + db == 0:
            continue
        f = TrinomialFamily.from_coeffs(disc_sample(rng, da + 1), disc_sample(rng, db + 1), n)
        if f.A.degree < da or f.B.degree < db:
            continue
        if _clear_of_a(f, m_probe):
            out.append(f)
    return out
