"""
Polynomial sequences with generating function ``1 / (1 + B(z) t + A(z) t**n)``.

`h_sequence` runs the three-term recurrence
``H_m + B H_{m-1} + A H_{m-n} = 0`` from ``H_0 = 1``;
`series_oracle` reaches the same coefficients by Newton iteration on
the formal reciprocal in ``t`` and serves as the independent check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import convolve2d

from .poly import ComplexPolynomial, derivative, evaluate
from .rootfind import RootSet, SolverOptions, find_roots_with

__all__ = [
    "TrinomialFamily",
    "HSequence",
    "h_sequence",
    "series_oracle",
    "specialize_denominator",
    "RecurrenceEvaluator",
    "h_roots",
]

RESCALE_AFTER = 50


def _as_poly(p) -> ComplexPolynomial:
    if isinstance(p, ComplexPolynomial):
        return p
    if np.ndim(p) == 0:
        return ComplexPolynomial([p])
    return ComplexPolynomial(p)


@dataclass(frozen=True)
class TrinomialFamily:
    """The denominator ``D(t, z) = 1 + B(z) t + A(z) t**n``."""

    A: ComplexPolynomial
    B: ComplexPolynomial
    n: int

    def __post_init__(self):
        object.__setattr__(self, "A", _as_poly(self.A))
        object.__setattr__(self, "B", _as_poly(self.B))
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"degree gap n must be an integer >= 2, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        if self.A.is_zero():
            raise ValueError("A must not be the zero polynomial")

    @classmethod
    def from_coeffs(cls, A, B, n: int) -> TrinomialFamily:
        return cls(ComplexPolynomial(A), ComplexPolynomial(B), n)

    def describe(self) -> dict:
        def enc(p):
            return [[c.real, c.imag] for c in p.coeffs.tolist()]

        return {"n": self.n, "A": enc(self.A), "B": enc(self.B)}


@dataclass(frozen=True)
class HSequence:
    """
    ``H_0 .. H_{m_max}``, each stored as ``exp(log_scales[m]) * polys[m]``.

    Without rescaling every log scale is zero and ``polys`` are the
    sequence itself.
    """

    polys: tuple
    family: TrinomialFamily
    log_scales: tuple

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, m) -> ComplexPolynomial:
        return self.polys[m]

    def unscaled(self, m: int) -> ComplexPolynomial:
        return self.polys[m] * np.exp(self.log_scales[m])

    def recurrence_residual(self, m: int) -> float:
        """
        Max-coefficient residual of the recurrence at index ``m``,
        measured relative to the scale of ``H_{m-1}``.
        """
        if m == 0:
            return float(np.max(np.abs((self.polys[0] - 1).coeffs), initial=0.0))
        f = self.family
        s_prev = self.log_scales[m - 1]
        total = self.polys[m] * np.exp(self.log_scales[m] - s_prev) + f.B * self.polys[m - 1]
        if m >= f.n:
            total = total + f.A * self.polys[m - f.n] * np.exp(self.log_scales[m - f.n] - s_prev)
        return float(np.max(np.abs(total.coeffs), initial=0.0))


def h_sequence(family: TrinomialFamily, m_max: int, rescale: bool | None = None) -> HSequence:
    """
    Build ``H_0 .. H_{m_max}`` by the recurrence.

    ``rescale=None`` turns rescaling on when ``m_max`` exceeds 50; each
    rescaled ``H_m`` then has unit max coefficient and its log scale is
    recorded separately.
    """
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    if rescale is None:
        rescale = m_max > RESCALE_AFTER
    A, B, n = family.A, family.B, family.n
    polys = [ComplexPolynomial([1.0])]
    logs = [0.0]
    for m in range(1, m_max + 1):
        if rescale:
            s_prev = logs[m - 1]
            h = -(B * polys[m - 1])
            if m >= n:
                h = h - A * polys[m - n] * np.exp(logs[m - n] - s_prev)
            peak = h.max_abs()
            if peak > 0:
                polys.append(h * (1 / peak))
                logs.append(s_prev + float(np.log(peak)))
            else:
                polys.append(h)
                logs.append(s_prev)
        else:
            h = -(B * polys[m - 1])
            if m >= n:
                h = h - A * polys[m - n]
            polys.append(h)
            logs.append(0.0)
    return HSequence(polys=tuple(polys), family=family, log_scales=tuple(logs))


def _bivariate(family: TrinomialFamily) -> np.ndarray:
    """D(t, z) as a dense array indexed [t-degree, z-degree]."""
    width = max(len(family.A), len(family.B), 1)
    D = np.zeros((family.n + 1, width), dtype=np.complex128)
    D[0, 0] = 1
    D[1, : len(family.B)] += family.B.coeffs
    D[family.n, : len(family.A)] += family.A.coeffs
    return D


def series_oracle(family: TrinomialFamily, m_max: int) -> HSequence:
    """
    Coefficients of ``1/D(t, z)`` through ``t**m_max`` by Newton
    iteration ``R <- R (2 - D R) mod t**(2k)`` on bivariate arrays.
    """
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    D = _bivariate(family)
    order = m_max + 1
    R = np.ones((1, 1), dtype=np.complex128)
    k = 1
    while k < order:
        k = min(2 * k, order)
        DR = convolve2d(D[:k], R)[:k]
        corr = -DR
        corr[0, 0] += 2
        R = convolve2d(R, corr)[:k]
    R = R[:order]
    polys = tuple(ComplexPolynomial(row) for row in R)
    return HSequence(polys=polys, family=family, log_scales=(0.0,) * order)


def specialize_denominator(family: TrinomialFamily, z0: complex) -> ComplexPolynomial:
    """``D(t, z0)`` as a polynomial in ``t``."""
    c = np.zeros(family.n + 1, dtype=np.complex128)
    c[0] = 1
    c[1] += evaluate(family.B, z0)
    c[family.n] += evaluate(family.A, z0)
    return ComplexPolynomial(c)


class RecurrenceEvaluator:
    """
    Evaluates ``H_m`` and ``H_m'`` pointwise by running the recurrence.

    This avoids the monomial coefficients of ``H_m``, whose expansion is
    badly conditioned along the root curves; at those points the
    recurrence is neutrally stable.  Values are kept as a mantissa plus
    a per-point log scale so large ``m`` cannot overflow.
    ``log_shift`` is subtracted from ``log|H_m|`` so results match a
    rescaled coefficient vector.
    """

    def __init__(self, family: TrinomialFamily, m: int, log_shift: float = 0.0):
        self.family = family
        self.m = m
        self.log_shift = log_shift
        self._dA = derivative(family.A)
        self._dB = derivative(family.B)
        self.degree = None

    def _run(self, z):
        f = self.family
        n, m = f.n, self.m
        Az, Bz = evaluate(f.A, z), evaluate(f.B, z)
        dAz, dBz = evaluate(self._dA, z), evaluate(self._dB, z)
        # ring buffers of the last n values: h[k % n]
        h = np.zeros((n,) + z.shape, dtype=np.complex128)
        dh = np.zeros_like(h)
        h[0] = 1.0
        logscale = np.zeros(z.shape)
        for k in range(1, m + 1):
            prev = h[(k - 1) % n]
            dprev = dh[(k - 1) % n]
            new = -Bz * prev
            dnew = -dBz * prev - Bz * dprev
            if k >= n:
                back, dback = h[k % n], dh[k % n]
                new = new - Az * back
                dnew = dnew - dAz * back - Az * dback
            h[k % n] = new
            dh[k % n] = dnew
            big = np.maximum(np.abs(new), np.abs(dnew))
            over = big > 1e150
            if over.any():
                s = 1.0 / big[over]
                h[:, over] *= s
                dh[:, over] *= s
                logscale[over] += np.log(big[over])
        return h[m % n], dh[m % n], logscale

    def newton(self, z):
        z = np.asarray(z, dtype=np.complex128)
        p, dp, _ = self._run(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
        return ratio, np.full(z.shape, np.inf)

    def log_abs(self, z):
        z = np.asarray(z, dtype=np.complex128)
        p, _, ls = self._run(z)
        with np.errstate(divide="ignore"):
            return np.log(np.abs(p)) + ls - self.log_shift


def h_roots(family: TrinomialFamily, m: int, seq: HSequence | None = None,
            opts: SolverOptions | None = None) -> RootSet:
    """
    Roots of ``H_m`` using the recurrence for all point evaluations.

    The coefficients of ``H_m`` (from ``seq`` if given) fix the degree,
    the exact zero roots, the starting points and the certificate scale.
    """
    if seq is None:
        seq = h_sequence(family, m)
    p = seq[m]
    ev = RecurrenceEvaluator(family, m, log_shift=seq.log_scales[m])
    ev.degree = p.degree
    return find_roots_with(ev, p.coeffs, opts)
