"""
Simultaneous polynomial root finding by Aberth-Ehrlich iteration.

The iteration only needs the Newton ratio ``p/p'`` at a vector of
points, so it is written against a small evaluator interface.
`HornerEvaluator` works from monomial coefficients; callers with a
better-conditioned way to evaluate ``p`` (a recurrence, say) can pass
their own evaluator to `find_roots_with`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .poly import ComplexPolynomial

__all__ = [
    "SolverOptions",
    "RootSet",
    "RootFindError",
    "HornerEvaluator",
    "find_roots",
    "find_roots_with",
    "initial_guesses",
    "cluster_roots",
]

EPS = np.finfo(float).eps
MAX_DEGREE = 2000
STALL_STEPS = 5


class RootFindError(ArithmeticError):
    """Raised when the iteration fails to converge or to certify.

    Carries the best iterate and its residuals for inspection.
    """

    def __init__(self, message, best=None, residuals=None):
        super().__init__(message)
        self.best = best
        self.residuals = residuals


@dataclass(frozen=True)
class SolverOptions:
    max_iter: int = 200
    step_tol: float = 1e-14
    cluster_radius: float = 1e-6
    certify_tol: float = 1e-8
    polish_steps: int = 2


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    residuals: np.ndarray
    cluster_tags: tuple = field(default=())
    iterations: int = 0

    def __len__(self):
        return len(self.roots)

    def clusters(self):
        """Groups of root indices sharing a cluster tag."""
        groups = {}
        for i, t in enumerate(self.cluster_tags):
            groups.setdefault(t, []).append(i)
        return list(groups.values())


class HornerEvaluator:
    """Evaluates ``p`` from its coefficients, reversing the polynomial for |z| > 1."""

    def __init__(self, coeffs):
        self.c = np.asarray(coeffs, dtype=np.complex128)
        self.degree = self.c.size - 1
        self._rev = self.c[::-1]
        self._abs = np.abs(self.c)
        self._abs_rev = self._abs[::-1]

    @staticmethod
    def _horner(c, cabs, x):
        # c ascending; returns p, p', and sum |c_k| |x|^k
        ax = np.abs(x)
        p = np.zeros_like(x)
        dp = np.zeros_like(x)
        pa = np.zeros(x.shape)
        for ck, ak in zip(c[::-1], cabs[::-1]):
            dp = dp * x + p
            p = p * x + ck
            pa = pa * ax + ak
        return p, dp, pa

    def newton(self, z):
        """Newton ratio ``p/p'`` and relative size ``|p| / sum |c_k||z|^k``."""
        z = np.asarray(z, dtype=np.complex128)
        ratio = np.empty_like(z)
        rel = np.empty(z.shape)
        inner = np.abs(z) <= 1
        if inner.any():
            p, dp, pa = self._horner(self.c, self._abs, z[inner])
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio[inner] = p / dp
            rel[inner] = np.abs(p) / pa
        outer = ~inner
        if outer.any():
            zo = z[outer]
            w = 1 / zo
            r, dr, ra = self._horner(self._rev, self._abs_rev, w)
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio[outer] = zo / (self.degree - w * dr / r)
            rel[outer] = np.abs(r) / ra
        return ratio, rel

    def log_abs(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = np.empty(z.shape)
        inner = np.abs(z) <= 1
        with np.errstate(divide="ignore"):
            if inner.any():
                p, _, _ = self._horner(self.c, self._abs, z[inner])
                out[inner] = np.log(np.abs(p))
            outer = ~inner
            if outer.any():
                zo = z[outer]
                r, _, _ = self._horner(self._rev, self._abs_rev, 1 / zo)
                out[outer] = self.degree * np.log(np.abs(zo)) + np.log(np.abs(r))
        return out


class _DeflatedEvaluator:
    """Wraps an evaluator of ``p`` to act on ``p / z**k``."""

    def __init__(self, inner, k):
        self.inner = inner
        self.k = k
        self.degree = inner.degree - k

    def newton(self, z):
        ratio, rel = self.inner.newton(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = 1 / (1 / ratio - self.k / z)
        return ratio, rel

    def log_abs(self, z):
        return self.inner.log_abs(z) - self.k * np.log(np.abs(z))


def _upper_hull(x, y):
    hull = []
    for px, py in zip(x, y):
        while len(hull) >= 2:
            (ax, ay), (bx, by) = hull[-2], hull[-1]
            if (bx - ax) * (py - ay) - (by - ay) * (px - ax) >= 0:
                hull.pop()
            else:
                break
        hull.append((px, py))
    return hull


def initial_guesses(coeffs, offset: float = 0.4) -> np.ndarray:
    """
    Starting points from the Newton polygon of ``log|c_k|``.

    Each edge of the upper convex hull between indices i < j carries
    ``j - i`` points on a circle of radius ``(|c_i|/|c_j|)**(1/(j-i))``,
    equally spaced in angle and rotated by ``offset`` radians.
    """
    c = np.asarray(coeffs, dtype=np.complex128)
    d = c.size - 1
    idx = np.flatnonzero(c)
    logs = np.log(np.abs(c[idx]))
    hull = _upper_hull(idx.astype(float), logs)
    out = []
    for (i, li), (j, lj) in zip(hull[:-1], hull[1:]):
        count = int(round(j - i))
        radius = np.exp((li - lj) / (j - i))
        angles = 2 * np.pi * np.arange(count) / count + offset + 2 * np.pi * i / d
        out.append(radius * np.exp(1j * angles))
    return np.concatenate(out)


def _aberth(ev, z, opts: SolverOptions):
    d = z.size
    converged = np.zeros(d, dtype=bool)
    prev_step = np.full(d, np.inf)
    stall = np.zeros(d, dtype=int)
    noise = 4 * EPS * (d + 1)
    it = 0
    for it in range(1, opts.max_iter + 1):
        act = np.flatnonzero(~converged)
        if act.size == 0:
            break
        za = z[act]
        ratio, rel = ev.newton(za)
        at_noise = rel <= noise
        diff = za[:, None] - z[None, :]
        diff[np.arange(act.size), act] = np.inf
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.sum(1 / diff, axis=1)
            step = ratio / (1 - ratio * s)
        bad = ~np.isfinite(step)
        if bad.any():
            # exact hit on a root or a collision with a neighbour
            at_noise |= bad & (rel <= noise)
            step[bad] = 1e-3 * (1 + np.abs(za[bad])) * np.exp(1j * (0.7 + act[bad]))
        step[at_noise] = 0
        z[act] = za - step
        mag = np.abs(step)
        small = mag <= opts.step_tol * (1 + np.abs(z[act]))
        flat = (mag <= 1e-8 * (1 + np.abs(z[act]))) & (mag >= 0.9 * prev_step[act])
        stall[act] = np.where(flat, stall[act] + 1, 0)
        prev_step[act] = mag
        # several non-contracting tiny steps in a row: rounding noise around a cluster
        converged[act] = at_noise | small | (stall[act] >= STALL_STEPS)
    return z, converged, it


def _polish(ev, z, steps):
    if steps <= 0 or z.size == 0:
        return z
    for _ in range(steps):
        cur = ev.log_abs(z)
        ratio, _ = ev.newton(z)
        cand = z - ratio
        if z.size > 1:
            gap = np.abs(z[:, None] - z[None, :])
            np.fill_diagonal(gap, np.inf)
            sep = gap.min(axis=1)
        else:
            sep = np.full(1, np.inf)
        ok = np.isfinite(cand) & (np.abs(ratio) < 0.25 * sep)
        new = ev.log_abs(np.where(ok, cand, z))
        accept = ok & (new < cur)
        z = np.where(accept, cand, z)
    return z


def cluster_roots(roots, radius: float) -> tuple:
    """Single-linkage cluster tags for roots closer than ``radius``."""
    n = len(roots)
    tags = list(range(n))

    def find(i):
        while tags[i] != i:
            tags[i] = tags[tags[i]]
            i = tags[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(roots[i] - roots[j]) <= radius:
                ri, rj = find(i), find(j)
                if ri != rj:
                    tags[max(ri, rj)] = min(ri, rj)
    roots_of = [find(i) for i in range(n)]
    relabel = {}
    return tuple(relabel.setdefault(r, len(relabel)) for r in roots_of)


def find_roots_with(evaluator, coeffs, opts: SolverOptions | None = None) -> RootSet:
    """
    Roots of the polynomial with coefficients ``coeffs`` using ``evaluator``.

    ``coeffs`` (ascending, canonical) fixes the degree, the zero roots
    split off by deflation, the starting points and the certificate
    scale.  ``evaluator`` must expose ``degree``, ``newton(z)`` returning
    ``(p/p', relative noise estimate or inf)`` and ``log_abs(z)``
    returning ``log|p(z)|`` in the normalisation of ``coeffs``.
    """
    opts = opts or SolverOptions()
    c = np.asarray(coeffs, dtype=np.complex128)
    if c.size == 0 or not np.any(c):
        raise ValueError("zero polynomial has no well-defined roots")
    d = c.size - 1
    if d < 1:
        raise ValueError("constant polynomial has no roots")
    if d > MAX_DEGREE:
        raise ValueError(f"degree {d} exceeds the supported maximum {MAX_DEGREE}")
    k = int(np.flatnonzero(c)[0])
    ev = _DeflatedEvaluator(evaluator, k) if k else evaluator
    core = c[k:]
    dd = core.size - 1
    zeros = np.zeros(k, dtype=np.complex128)

    if dd == 0:
        found = np.zeros(0, dtype=np.complex128)
        its = 0
    elif dd == 1:
        found = np.array([-core[0] / core[1]])
        its = 0
    else:
        z0 = initial_guesses(core)
        found, conv, its = _aberth(ev, z0.copy(), opts)
        found = _polish(ev, found, opts.polish_steps)
        resid = _residuals(ev, core, found)
        if not conv.all() and not np.all(resid <= opts.certify_tol):
            raise RootFindError(
                f"Aberth iteration did not converge in {opts.max_iter} steps",
                best=found,
                residuals=resid,
            )

    resid = _residuals(ev, core, found)
    if np.any(~(resid <= opts.certify_tol)):
        raise RootFindError(
            f"root certificate failed: max residual {np.nanmax(resid):.3e}",
            best=found,
            residuals=resid,
        )
    roots = np.concatenate([zeros, found])
    residuals = np.concatenate([np.zeros(k), resid])
    order = np.lexsort((roots.imag, roots.real))
    roots, residuals = roots[order], residuals[order]
    roots.setflags(write=False)
    residuals.setflags(write=False)
    return RootSet(
        roots=roots,
        residuals=residuals,
        cluster_tags=cluster_roots(roots, opts.cluster_radius),
        iterations=its,
    )


def _residuals(ev, core, z):
    """``|p(z)| / (max|c| (1+|z|)**d)`` computed in log space."""
    if z.size == 0:
        return np.zeros(0)
    d = core.size - 1
    scale = np.log(np.max(np.abs(core))) + d * np.log1p(np.abs(z))
    return np.exp(ev.log_abs(z) - scale)


def find_roots(p: ComplexPolynomial, opts: SolverOptions | None = None) -> RootSet:
    """All ``deg p`` roots of ``p``, sorted by (real, imaginary) part."""
    if p.is_zero():
        raise ValueError("zero polynomial has no well-defined roots")
    if p.degree < 1:
        raise ValueError("constant polynomial has no roots")
    return find_roots_with(HornerEvaluator(p.coeffs), p.coeffs, opts)
