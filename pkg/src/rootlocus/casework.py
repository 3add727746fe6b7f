"""
The family ``1 / (1 + (z^2 - 2z + a) t + z^2 t^2)`` with real ``a``.

Writing ``z = x + iy``, the roots of ``H_m`` lie on

* ``a <= 0``: the real set ``(x^2 + a)(x^2 - 4x + a) <= 0`` (two intervals);
* ``0 < a <= 4``: the half circle ``x^2 + y^2 = a, x >= 0`` and the real
  interval ``x^2 - 4x + a <= 0``;
* ``a > 4``: the two arcs of ``x^2 + y^2 = a`` with ``0 <= x <= 2``.

The regime changes at the roots ``a = 0, 4`` of the double discriminant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .curves import LocusReport, root_locus_residuals, verify_theorem
from .genfun import TrinomialFamily
from .poly import ComplexPolynomial, evaluate

__all__ = [
    "Regime",
    "CircleArc",
    "RealSet",
    "ExampleRegime",
    "ExampleReport",
    "example_family",
    "classify_regime",
    "example_locus_residual",
    "pq_parts",
    "cross_check",
]


class Regime(str, Enum):
    two_real_intervals = "TwoRealIntervals"
    half_circle_and_interval = "HalfCircleAndInterval"
    two_arcs = "TwoArcs"


@dataclass(frozen=True)
class CircleArc:
    """Points of ``|z|^2 = radius_sq`` with ``x_min <= Re z <= x_max``."""

    radius_sq: float
    x_min: float
    x_max: float

    def residual(self, z):
        z = np.asarray(z, dtype=np.complex128)
        x = z.real
        return (np.abs(np.abs(z) ** 2 - self.radius_sq)
                + np.maximum(0.0, self.x_min - x) + np.maximum(0.0, x - self.x_max))


@dataclass(frozen=True)
class RealSet:
    """
    Real points where ``poly(x) <= 0``; ``intervals`` lists the same set
    explicitly.
    """

    poly: ComplexPolynomial
    intervals: tuple

    def residual(self, z):
        z = np.asarray(z, dtype=np.complex128)
        val = evaluate(self.poly, z.real + 0j).real
        return np.abs(z.imag) + np.maximum(0.0, val)

    def contains(self, x, slack=0.0) -> bool:
        return any(lo - slack <= x <= hi + slack for lo, hi in self.intervals)


@dataclass(frozen=True)
class ExampleRegime:
    a: float
    regime: Regime
    components: tuple

    def describe(self) -> list:
        out = []
        for c in self.components:
            if isinstance(c, CircleArc):
                out.append({"kind": "circle", "radius": math.sqrt(c.radius_sq),
                            "x_min": c.x_min, "x_max": c.x_max})
            else:
                out.append({"kind": "real", "intervals": [list(iv) for iv in c.intervals]})
        return out


@dataclass(frozen=True)
class ExampleReport(LocusReport):
    a: float = math.nan
    regime: Regime | None = None
    example_residuals: tuple = ()
    example_max_residual: float = 0.0


def example_family(a: float) -> TrinomialFamily:
    return TrinomialFamily(
        A=ComplexPolynomial([0.0, 0.0, 1.0]),
        B=ComplexPolynomial([a, -2.0, 1.0]),
        n=2,
    )


def _merge(intervals):
    out = []
    for lo, hi in sorted(intervals):
        if out and lo <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return tuple(out)


def classify_regime(a: float) -> ExampleRegime:
    """Regime of the worked family and its predicted root-locus pieces."""
    a = float(a)
    x2_4x_a = ComplexPolynomial([a, -4.0, 1.0])
    if a <= 0:
        r = sorted([-math.sqrt(-a), math.sqrt(-a), 2 - math.sqrt(4 - a), 2 + math.sqrt(4 - a)])
        real = RealSet(ComplexPolynomial([a, 0.0, 1.0]) * x2_4x_a,
                       _merge([(r[0], r[1]), (r[2], r[3])]))
        return ExampleRegime(a, Regime.two_real_intervals, (real,))
    if a <= 4:
        s = math.sqrt(4 - a)
        return ExampleRegime(a, Regime.half_circle_and_interval, (
            CircleArc(a, 0.0, math.inf),
            RealSet(x2_4x_a, ((2 - s, 2 + s),)),
        ))
    return ExampleRegime(a, Regime.two_arcs, (CircleArc(a, 0.0, 2.0),))


def example_locus_residual(a: float, z):
    """Residual of ``z`` to the nearest predicted piece for this ``a``."""
    scalar = np.ndim(z) == 0
    comps = classify_regime(a).components
    res = np.min([c.residual(z) for c in comps], axis=0)
    return float(res) if scalar else res


def pq_parts(a: float, z):
    """
    ``P = ax - 2x^2 + x^3 - 2y^2 + xy^2`` and ``Q = y(x^2 + y^2 - a)``,
    the pieces of ``Im B^2/A`` and ``Re B^2/A`` after clearing ``|z|^4``.
    """
    z = np.asarray(z, dtype=np.complex128)
    x, y = z.real, z.imag
    P = a * x - 2 * x**2 + x**3 - 2 * y**2 + x * y**2
    Q = y * (x**2 + y**2 - a)
    return P, Q


def cross_check(a: float, m: int, tol: float = 1e-5) -> ExampleReport:
    """Roots of ``H_m`` against both the generic locus and the regime prediction."""
    if m < 1:
        raise ValueError("m must be at least 1")
    rep = verify_theorem(example_family(a), m, tol=tol)
    ex = example_locus_residual(a, rep.roots) if rep.roots.size else np.zeros(0)
    fields = {k: getattr(rep, k) for k in LocusReport.__dataclass_fields__}
    return ExampleReport(
        **fields,
        a=float(a),
        regime=classify_regime(a).regime,
        example_residuals=tuple(np.asarray(ex).tolist()),
        example_max_residual=float(np.max(ex, initial=0.0)),
    )


def generic_residuals(a: float, z):
    return root_locus_residuals(example_family(a), z)
