"""
Dense univariate polynomials with complex coefficients.

Coefficients are stored in ascending order, ``coeffs[k]`` multiplies
``x**k``.  The zero polynomial is the empty coefficient vector and its
degree is ``-inf``.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "ComplexPolynomial",
    "UndefinedResultantError",
    "evaluate",
    "add",
    "multiply",
    "scale",
    "derivative",
    "power",
    "sylvester_matrix",
    "sylvester_resultant",
    "discriminant",
    "chebyshev_u",
]

ZERO_DEGREE = -math.inf


class UndefinedResultantError(ValueError):
    pass


def _canonical(coeffs) -> np.ndarray:
    c = np.array(coeffs, dtype=np.complex128).ravel()
    nz = np.flatnonzero(c)
    if nz.size == 0:
        c = c[:0]
    else:
        c = c[: nz[-1] + 1]
    c.setflags(write=False)
    return c


class ComplexPolynomial:
    """Immutable dense polynomial ``sum(coeffs[k] * x**k)``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=()):
        self._c = _canonical(coeffs)

    @classmethod
    def constant(cls, c) -> ComplexPolynomial:
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1.0) -> ComplexPolynomial:
        out = np.zeros(k + 1, dtype=np.complex128)
        out[k] = c
        return cls(out)

    @classmethod
    def from_roots(cls, roots, leading=1.0) -> ComplexPolynomial:
        p = cls([leading])
        for r in roots:
            p = p * cls([-r, 1.0])
        return p

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self):
        if self._c.size == 0:
            return ZERO_DEGREE
        return self._c.size - 1

    @property
    def leading(self) -> complex:
        if self._c.size == 0:
            return 0j
        return complex(self._c[-1])

    def is_zero(self) -> bool:
        return self._c.size == 0

    def max_abs(self) -> float:
        return float(np.max(np.abs(self._c))) if self._c.size else 0.0

    def __call__(self, x):
        return evaluate(self, x)

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return ComplexPolynomial(-self._c)

    def __sub__(self, other):
        return add(self, -_coerce(other))

    def __rsub__(self, other):
        return add(_coerce(other), -self)

    def __mul__(self, other):
        if isinstance(other, ComplexPolynomial):
            return multiply(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return power(self, k)

    def __eq__(self, other):
        if not isinstance(other, ComplexPolynomial):
            return NotImplemented
        return np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash(self._c.tobytes())

    def __len__(self):
        return self._c.size

    def __repr__(self):
        return f"ComplexPolynomial({self._c.tolist()!r})"


def _coerce(x) -> ComplexPolynomial:
    if isinstance(x, ComplexPolynomial):
        return x
    return ComplexPolynomial([x])


def evaluate(p: ComplexPolynomial, x):
    """Horner evaluation; ``x`` may be a scalar or an array."""
    c = p.coeffs
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=np.complex128)
    acc = np.zeros_like(x)
    for ck in c[::-1]:
        acc = acc * x + ck
    return complex(acc) if scalar else acc


def add(p: ComplexPolynomial, q: ComplexPolynomial) -> ComplexPolynomial:
    a, b = p.coeffs, q.coeffs
    if a.size < b.size:
        a, b = b, a
    out = a.copy()
    out[: b.size] += b
    return ComplexPolynomial(out)


def multiply(p: ComplexPolynomial, q: ComplexPolynomial) -> ComplexPolynomial:
    if p.is_zero() or q.is_zero():
        return ComplexPolynomial()
    return ComplexPolynomial(np.convolve(p.coeffs, q.coeffs))


def scale(p: ComplexPolynomial, c) -> ComplexPolynomial:
    return ComplexPolynomial(p.coeffs * complex(c))


def derivative(p: ComplexPolynomial) -> ComplexPolynomial:
    c = p.coeffs
    if c.size <= 1:
        return ComplexPolynomial()
    return ComplexPolynomial(c[1:] * np.arange(1, c.size))


def power(p: ComplexPolynomial, k: int) -> ComplexPolynomial:
    if k < 0:
        raise ValueError("negative power")
    out = ComplexPolynomial([1.0])
    base = p
    while k:
        if k & 1:
            out = out * base
        k >>= 1
        if k:
            base = base * base
    return out


def sylvester_matrix(p: ComplexPolynomial, q: ComplexPolynomial) -> np.ndarray:
    """
    Sylvester matrix of ``p`` (degree m) and ``q`` (degree n), size m+n.

    Rows hold shifted copies of the coefficient vectors in descending
    order, n rows for ``p`` followed by m rows for ``q``.
    """
    m, n = p.degree, q.degree
    size = m + n
    S = np.zeros((size, size), dtype=np.complex128)
    pd, qd = p.coeffs[::-1], q.coeffs[::-1]
    for i in range(n):
        S[i, i : i + m + 1] = pd
    for i in range(m):
        S[n + i, i : i + n + 1] = qd
    return S


def sylvester_resultant(p: ComplexPolynomial, q: ComplexPolynomial) -> complex:
    """
    Resultant of ``p`` and ``q`` as the Sylvester determinant.

    Equals ``lc(p)**deg(q) * lc(q)**deg(p) * prod(a_i - b_j)`` over the
    roots ``a_i`` of ``p`` and ``b_j`` of ``q``.
    """
    if p.is_zero() or q.is_zero():
        raise UndefinedResultantError("undefined resultant: zero polynomial")
    m, n = p.degree, q.degree
    if m == 0:
        return p.leading**n
    if n == 0:
        return q.leading**m
    # LAPACK getrf: LU with partial pivoting
    return complex(np.linalg.det(sylvester_matrix(p, q)))


def discriminant(p: ComplexPolynomial) -> complex:
    """Ordinary discriminant ``(-1)**(d(d-1)/2) Res(p, p') / lc(p)``."""
    d = p.degree
    if d < 2:
        raise ValueError(f"discriminant needs degree >= 2, got {d}")
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * sylvester_resultant(p, derivative(p)) / p.leading


def chebyshev_u(m: int, x):
    """Chebyshev polynomial of the second kind ``U_m(x)`` by three-term recurrence."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    x = np.asarray(x, dtype=np.complex128) if np.ndim(x) else complex(x)
    u_prev, u = 1.0 + 0 * x, 2 * x
    if m == 0:
        return u_prev
    for _ in range(m - 1):
        u_prev, u = u, 2 * x * u - u_prev
    return u
