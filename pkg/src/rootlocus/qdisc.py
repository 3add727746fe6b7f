"""
q-discriminants of trinomials.

``Disc_x(P; q) = p**(2d-2) q**(d(d-1)/2) prod_{i<j} (q^-1/2 x_i - q^1/2 x_j)(q^1/2 x_i - q^-1/2 x_j)``
vanishes exactly when some root quotient ``x_i/x_j`` equals ``q`` and
reduces to the ordinary discriminant at ``q = 1``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .poly import ComplexPolynomial, discriminant
from .rootfind import SolverOptions, find_roots

__all__ = [
    "Method",
    "QDiscSample",
    "q_discriminant_definition",
    "q_discriminant_closed",
    "trinomial_discriminant",
    "double_discriminant_example",
    "example_discriminant_t",
]


class Method(str, Enum):
    definition = "definition"
    closed_form = "closed_form"


@dataclass(frozen=True)
class QDiscSample:
    q: complex
    value: complex
    method: Method

    def __post_init__(self):
        if not cmath.isfinite(self.value):
            raise ValueError("q-discriminant value is not finite")


def q_discriminant_definition(p: ComplexPolynomial, q: complex,
                              opts: SolverOptions | None = None) -> complex:
    """Evaluate the q-discriminant of ``p`` from its computed roots."""
    d = p.degree
    if d < 2:
        raise ValueError(f"q-discriminant needs degree >= 2, got {d}")
    q = complex(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    x = find_roots(p, opts).roots
    sq = cmath.sqrt(q)
    isq = 1 / sq
    i, j = np.triu_indices(d, k=1)
    factors = (isq * x[i] - sq * x[j]) * (sq * x[i] - isq * x[j])
    return complex(p.leading ** (2 * d - 2) * q ** (d * (d - 1) // 2) * np.prod(factors))


def q_discriminant_closed(A0: complex, B0: complex, n: int, q: complex) -> complex:
    """q-discriminant of ``1 + B0 t + A0 t**n`` in closed form, n in {2, 3, 4}."""
    q = complex(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    A, B = complex(A0), complex(B0)
    if n == 2:
        return q * (B**2 - (q + 1 / q + 2) * A)
    if n == 3:
        return -(B**3) * A * q**2 * (1 + q) ** 2 - A**2 * (1 + q + q**2) ** 3
    if n == 4:
        return -(A**2) * B**4 * q**3 * (1 + q + q**2) ** 3 + A**3 * (1 + q + q**2 + q**3) ** 4
    raise ValueError(f"closed form available only for n in {{2, 3, 4}}, got {n}")


def trinomial_discriminant(A0: complex, B0: complex, n: int) -> complex:
    """Ordinary discriminant of ``1 + B0 t + A0 t**n`` for n in {2, 3, 4}."""
    A, B = complex(A0), complex(B0)
    if n == 2:
        return B**2 - 4 * A
    if n == 3:
        return -4 * A * B**3 - 27 * A**2
    if n == 4:
        return -27 * A**2 * B**4 + 256 * A**3
    raise ValueError(f"closed form available only for n in {{2, 3, 4}}, got {n}")


def example_discriminant_t(a: float) -> ComplexPolynomial:
    """``Disc_t(1 + (z^2 - 2z + a) t + z^2 t^2) = (z^2 - 2z + a)^2 - 4 z^2`` in ``z``."""
    B = ComplexPolynomial([a, -2.0, 1.0])
    A = ComplexPolynomial([0.0, 0.0, 1.0])
    return B * B - 4 * A


def double_discriminant_example(a: float) -> float:
    """``Disc_z Disc_t`` of the worked family; equals ``4096 a^3 (a - 4)``."""
    dt = example_discriminant_t(a)
    if dt.degree < 2:
        raise ValueError("discriminant in t collapsed below degree 2 in z")
    val = discriminant(dt)
    if abs(val.imag) > 1e-6 * max(abs(val.real), 1.0):
        raise ArithmeticError(f"double discriminant has imaginary part {val.imag:.3e}")
    return float(val.real)
