"""
Root loci in the z-plane and quotient loci in the q-plane.

A root of ``H_m`` with ``A(z) != 0`` is expected on the root locus

    Im B(z)**n / A(z) = 0,   0 <= (-1)**n Re B(z)**n / A(z) <= n**n / (n-1)**(n-1)

and every quotient ``t_i/t_j`` of roots of ``D(t, z)`` at such a point on
a fixed curve that does not depend on ``A`` and ``B`` (n = 2, 3, 4).
This module measures distances to those sets, samples them and checks
root sets against them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .genfun import HSequence, TrinomialFamily, h_roots, h_sequence, specialize_denominator
from .poly import evaluate
from .rootfind import RootFindError, SolverOptions, find_roots

__all__ = [
    "AVanishesError",
    "LocusKind",
    "LocusSpec",
    "LocusReport",
    "interval_bound",
    "a_filter_threshold",
    "accepted_mask",
    "ratio",
    "root_locus_residual",
    "root_locus_residuals",
    "quotient_locus_residual",
    "quartic_curve",
    "f_map",
    "quotients_at_root",
    "sample_locus",
    "one_sided_hausdorff",
    "populated_hausdorff",
    "verify_theorem",
]

A_FILTER = 1e-8
POLE_TOL = 1e-12
QUOTIENT_DEDUP = 1e-9
SQRT3_2 = math.sqrt(3) / 2


class AVanishesError(ZeroDivisionError):
    pass


class LocusKind(str, Enum):
    root = "root"
    quotient = "quotient"


@dataclass(frozen=True)
class LocusSpec:
    kind: LocusKind
    n: int
    family: TrinomialFamily | None = None
    # (xmin, xmax, ymin, ymax) for root loci; None means "derive from data"
    window: tuple | None = None

    @classmethod
    def root(cls, family: TrinomialFamily, window=None) -> LocusSpec:
        return cls(LocusKind.root, family.n, family, window)

    @classmethod
    def quotient(cls, n: int) -> LocusSpec:
        if n not in (2, 3, 4):
            raise ValueError(f"quotient locus known only for n in {{2, 3, 4}}, got {n}")
        return cls(LocusKind.quotient, n)

    def residual(self, z):
        if self.kind is LocusKind.quotient:
            return quotient_locus_residual(self.n, z)
        return root_locus_residuals(self.family, z)


@dataclass(frozen=True)
class LocusReport:
    m: int
    n: int
    total_roots: int
    filtered_roots: int
    roots: np.ndarray
    residuals: tuple
    normalized_residuals: tuple
    max_residual: float
    max_normalized_residual: float
    hausdorff_to_locus: float
    tol: float
    conjectural: bool = False
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.max_normalized_residual <= self.tol

    def summary(self) -> str:
        tag = " conjectural" if self.conjectural else ""
        status = "PASS" if self.passed else "FAIL"
        return (
            f"m={self.m} n={self.n}{tag} roots={self.total_roots} "
            f"filtered={self.filtered_roots} max_residual={self.max_residual:.3e} "
            f"max_normalized={self.max_normalized_residual:.3e} "
            f"hausdorff={self.hausdorff_to_locus:.4g} {status}"
        )


def interval_bound(n: int) -> float:
    """Right end ``n**n / (n-1)**(n-1)`` of the admissible interval."""
    return float(Fraction(n**n, (n - 1) ** (n - 1)))


def a_filter_threshold(family: TrinomialFamily, z):
    return A_FILTER * (1 + np.abs(z)) ** max(family.A.degree, 0)


def accepted_mask(family: TrinomialFamily, z) -> np.ndarray:
    z = np.asarray(z, dtype=np.complex128)
    return np.abs(evaluate(family.A, z)) > a_filter_threshold(family, z)


def _ratio_array(family, z):
    z = np.asarray(z, dtype=np.complex128)
    with np.errstate(divide="ignore", invalid="ignore"):
        return evaluate(family.B, z) ** family.n / evaluate(family.A, z)


def ratio(family: TrinomialFamily, z: complex) -> complex:
    """``B(z)**n / A(z)``."""
    a = evaluate(family.A, z)
    if abs(a) <= a_filter_threshold(family, z):
        raise AVanishesError(f"A vanishes at z={z}")
    return evaluate(family.B, z) ** family.n / a


def _interval_distance(v, hi):
    return np.maximum(0.0, -v) + np.maximum(0.0, v - hi)


def root_locus_residuals(family: TrinomialFamily, z) -> np.ndarray:
    """Vectorised raw residual; NaN where A is filtered out."""
    z = np.asarray(z, dtype=np.complex128)
    r = _ratio_array(family, z)
    v = (-1) ** family.n * r.real
    res = np.maximum(np.abs(r.imag), _interval_distance(v, interval_bound(family.n)))
    return np.where(accepted_mask(family, z), res, np.nan)


def root_locus_residual(family: TrinomialFamily, z: complex) -> float:
    """
    ``max(|Im r|, dist((-1)**n Re r, [0, n**n/(n-1)**(n-1)]))`` with
    ``r = B(z)**n / A(z)``.
    """
    r = ratio(family, z)
    v = (-1) ** family.n * r.real
    return float(max(abs(r.imag), _interval_distance(v, interval_bound(family.n))))


def quartic_curve(x, y):
    """Left-hand side of the quartic quotient curve (zero on the curve)."""
    return (1 + 2 * x + 2 * x**2 + 2 * x**3 + x**4 - 2 * y**2 + 2 * x * y**2
            + 2 * x**2 * y**2 + y**4)


def quotient_locus_residual(n: int, q):
    """Distance-like residual of ``q`` to the fixed quotient curve for ``n``."""
    scalar = np.ndim(q) == 0
    q = np.asarray(q, dtype=np.complex128)
    x, y = q.real, q.imag
    mod2 = x * x + y * y
    if n == 2:
        res = np.abs(np.abs(q) - 1)
    elif n == 3:
        c1 = np.abs((x + 1) ** 2 + y**2 - 1) + np.maximum(0.0, x + 0.5)
        c2 = np.abs(x + 0.5) + np.maximum(0.0, np.abs(y) - SQRT3_2)
        c3 = np.abs(mod2 - 1) + np.maximum(0.0, -0.5 - x)
        res = np.minimum(np.minimum(c1, c2), c3)
    elif n == 4:
        arc = np.abs(mod2 - 1) + np.maximum(0.0, -1.0 / 3.0 - x)
        res = np.minimum(np.abs(quartic_curve(x, y)), arc)
    else:
        raise ValueError(f"quotient locus known only for n in {{2, 3, 4}}, got {n}")
    return float(res) if scalar else res


def f_map(n: int, q: complex) -> complex:
    """The rational map sending a root quotient ``q`` to ``B**n / A``."""
    q = complex(q)
    if abs(q) <= POLE_TOL:
        raise ZeroDivisionError("f_map pole at q = 0")
    if n == 2:
        return q + 1 / q + 2
    if n == 3:
        if abs(1 + q) <= POLE_TOL:
            raise ZeroDivisionError("f_map pole at q = -1")
        return -((1 + q + q * q) ** 3) / (q * q * (1 + q) ** 2)
    if n == 4:
        s = 1 + q + q * q
        if abs(s) <= POLE_TOL:
            raise ZeroDivisionError("f_map pole at 1 + q + q^2 = 0")
        return (1 + q + q * q + q**3) ** 4 / (q**3 * s**3)
    raise ValueError(f"f_map defined only for n in {{2, 3, 4}}, got {n}")


def quotients_at_root(family: TrinomialFamily, z0: complex,
                      opts: SolverOptions | None = None) -> np.ndarray:
    """All ordered quotients ``t_i/t_j`` (i != j) of the roots of ``D(t, z0)``."""
    a = evaluate(family.A, z0)
    if abs(a) <= a_filter_threshold(family, z0):
        raise AVanishesError(f"A vanishes at z0={z0}")
    t = find_roots(specialize_denominator(family, z0), opts).roots
    i, j = np.nonzero(~np.eye(t.size, dtype=bool))
    q = t[i] / t[j]
    q = q[np.lexsort((q.imag, q.real))]
    keep = []
    for v in q:
        if all(abs(v - w) > QUOTIENT_DEDUP for w in keep):
            keep.append(v)
    return np.array(keep, dtype=np.complex128)


# --- sampling -------------------------------------------------------------


def _split(K, lengths):
    lengths = np.asarray(lengths, dtype=float)
    raw = K * lengths / lengths.sum()
    counts = np.floor(raw).astype(int)
    for i in np.argsort(-(raw - counts))[: K - counts.sum()]:
        counts[i] += 1
    return counts


def _by_arclength(param, lo, hi, count, dense=4096):
    """``count`` points of the curve ``param(s)``, s in [lo, hi], equally spaced in arc length."""
    if count <= 0:
        return np.zeros(0, dtype=np.complex128)
    s = np.linspace(lo, hi, dense)
    pts = param(s)
    arc = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(pts)))])
    if count == 1:
        target = np.array([arc[-1] / 2])
    else:
        target = np.linspace(0.0, arc[-1], count)
    return param(np.interp(target, arc, s))


def _quartic_branch(sign):
    def param(theta):
        e = np.exp(1j * theta)
        root = np.sqrt(np.maximum(6 * np.cos(theta) + 2, 0.0))
        return (-1 - e + sign * 1j * np.exp(0.5j * theta) * root) / 2

    return param


THETA_ARC4 = math.acos(-1.0 / 3.0)


def _quotient_samples(n, K):
    if n == 2:
        return np.exp(2j * np.pi * np.arange(K) / K)
    if n == 3:
        branches = [
            (lambda s: -1 + np.exp(1j * s), np.pi / 3, 5 * np.pi / 3),
            (lambda s: -0.5 + 1j * s, -SQRT3_2, SQRT3_2),
            (lambda s: np.exp(1j * s), -2 * np.pi / 3, 2 * np.pi / 3),
        ]
    elif n == 4:
        branches = [
            (lambda s: np.exp(1j * s), -THETA_ARC4, THETA_ARC4),
            (_quartic_branch(+1), -THETA_ARC4, THETA_ARC4),
            (_quartic_branch(-1), -THETA_ARC4, THETA_ARC4),
        ]
    else:
        raise ValueError(f"quotient locus known only for n in {{2, 3, 4}}, got {n}")
    lengths = []
    for param, lo, hi in branches:
        pts = param(np.linspace(lo, hi, 4096))
        lengths.append(np.sum(np.abs(np.diff(pts))))
    counts = _split(K, lengths)
    return np.concatenate([_by_arclength(p, lo, hi, c) for (p, lo, hi), c in zip(branches, counts)])


def window_around(points, inflate: float = 0.2) -> tuple:
    """Bounding box of ``points`` grown by ``inflate`` of its size per side."""
    points = np.asarray(points, dtype=np.complex128)
    x0, x1 = points.real.min(), points.real.max()
    y0, y1 = points.imag.min(), points.imag.max()
    span = max(x1 - x0, y1 - y0, 1e-3)
    # a degenerate (flat) box still gets a full-width margin in the thin direction
    dx = max(inflate * (x1 - x0), inflate * span)
    dy = max(inflate * (y1 - y0), inflate * span)
    return (x0 - dx, x1 + dx, y0 - dy, y1 + dy)


def _root_locus_points(family, window, grid):
    """
    Points of the root locus inside ``window`` from sign changes of
    ``Im r`` along the edges of a ``grid x grid`` lattice, refined by
    bisection; returns the points and the lattice spacing.
    """
    x0, x1, y0, y1 = window
    xs = np.linspace(x0, x1, grid)
    ys = np.linspace(y0, y1, grid)
    Z = xs[None, :] + 1j * ys[:, None]
    G = _ratio_array(family, Z).imag
    G = np.where(accepted_mask(family, Z), G, np.nan)

    starts, ends = [], []
    for a, b, ga, gb in (
        (Z[:, :-1], Z[:, 1:], G[:, :-1], G[:, 1:]),
        (Z[:-1, :], Z[1:, :], G[:-1, :], G[1:, :]),
    ):
        cross = (ga * gb) < 0
        starts.append(a[cross])
        ends.append(b[cross])
    za = np.concatenate(starts)
    zb = np.concatenate(ends)
    ga = _ratio_array(family, za).imag
    for _ in range(60):
        mid = 0.5 * (za + zb)
        gm = _ratio_array(family, mid).imag
        left = np.sign(gm) == np.sign(ga)
        za = np.where(left, mid, za)
        ga = np.where(left, gm, ga)
        zb = np.where(left, zb, mid)
    cand = np.concatenate([0.5 * (za + zb), Z[G == 0]])
    with np.errstate(invalid="ignore"):
        keep = root_locus_residuals(family, cand) <= 1e-10
    pts = cand[keep]
    pts = pts[np.lexsort((pts.imag, pts.real))]
    h = max((x1 - x0), (y1 - y0)) / (grid - 1)
    return pts, h


def _farthest_point_subset(pts, K):
    if pts.size <= K:
        return pts
    chosen = [0]
    dist = np.abs(pts - pts[0])
    for _ in range(K - 1):
        i = int(np.argmax(dist))
        chosen.append(i)
        dist = np.minimum(dist, np.abs(pts - pts[i]))
    out = pts[np.sort(chosen)]
    return out


def sample_locus(spec: LocusSpec, K: int, window=None, grid: int = 200) -> np.ndarray:
    """
    ``K`` points on the locus.

    Quotient loci are sampled from exact parametrisations.  Root loci
    need a window (argument or ``spec.window``) and may yield fewer than
    ``K`` points when little of the locus lies inside it.
    """
    if K < 2:
        raise ValueError("K must be at least 2")
    if spec.kind is LocusKind.quotient:
        return _quotient_samples(spec.n, K)
    window = window or spec.window
    if window is None:
        raise ValueError("root locus sampling needs a window")
    pts, _ = _root_locus_points(spec.family, window, grid)
    return _farthest_point_subset(pts, K)


def one_sided_hausdorff(points, spec: LocusSpec, K: int, window=None) -> float:
    """``max`` over locus samples of the distance to the nearest point."""
    points = np.asarray(points, dtype=np.complex128).ravel()
    if points.size == 0:
        raise ValueError("no points given")
    if spec.kind is LocusKind.root and window is None and spec.window is None:
        window = window_around(points)
    samples = sample_locus(spec, K, window=window)
    if samples.size == 0:
        raise ValueError("locus has no samples in the window")
    return _directed(samples, points)


def _directed(samples, points):
    tree = cKDTree(np.column_stack([points.real, points.imag]))
    d, _ = tree.query(np.column_stack([samples.real, samples.imag]))
    return float(d.max())


def populated_hausdorff(family: TrinomialFamily, root_sets: dict, reference_m: int,
                        grid: int = 240) -> dict:
    """
    One-sided Hausdorff distance from the populated part of the root
    locus to each root set in ``root_sets`` (``{m: roots}``).

    The locus is sampled in a window around the roots at
    ``reference_m`` and split into connected pieces; a piece counts as
    populated when some reference root lies within two lattice spacings
    of it.
    """
    ref = np.asarray(root_sets[reference_m])
    window = window_around(ref)
    pts, h = _root_locus_points(family, window, grid)
    if pts.size == 0:
        raise ValueError("root locus has no samples in the window")
    xy = np.column_stack([pts.real, pts.imag])
    pairs = cKDTree(xy).query_pairs(r=3 * h, output_type="ndarray")
    graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(pts.size,) * 2)
    n_comp, labels = connected_components(graph, directed=False)
    d_ref, _ = cKDTree(np.column_stack([ref.real, ref.imag])).query(xy)
    populated = np.unique(labels[d_ref <= 2 * h])
    mask = np.isin(labels, populated)
    out = {m: _directed(pts[mask], np.asarray(r)) for m, r in root_sets.items()}
    out["components"] = int(n_comp)
    out["populated_components"] = int(populated.size)
    return out


# --- theorem checks -------------------------------------------------------


def _empty_report(family, m, tol, note):
    return LocusReport(
        m=m, n=family.n, total_roots=0, filtered_roots=0,
        roots=np.zeros(0, dtype=np.complex128), residuals=(), normalized_residuals=(),
        max_residual=0.0, max_normalized_residual=0.0, hausdorff_to_locus=math.nan,
        tol=tol, conjectural=family.n >= 5, note=note,
    )


def verify_theorem(family: TrinomialFamily, m: int, tol: float = 1e-6,
                   seq: HSequence | None = None, opts: SolverOptions | None = None,
                   density_samples: int | None = 256) -> LocusReport:
    """
    Check that the roots of ``H_m`` with ``A != 0`` lie on the root locus.

    The pass criterion is ``residual <= tol * (1 + |B**n/A|)`` at every
    accepted root.  For ``n = 5`` the same inequality is the conjectured
    one and the report is flagged ``conjectural``.
    """
    if family.n not in (2, 3, 4, 5):
        raise ValueError(f"verify_theorem supports n in {{2, 3, 4, 5}}, got {family.n}")
    if seq is None or len(seq) <= m:
        seq = h_sequence(family, m)
    p = seq[m]
    if p.is_zero():
        return _empty_report(family, m, tol, "H_m vanishes identically")
    if p.degree < 1:
        return _empty_report(family, m, tol, "H_m is constant")
    try:
        rs = h_roots(family, m, seq=seq, opts=opts)
    except RootFindError as exc:
        raise RootFindError(f"root finding for H_{m} failed: {exc}", exc.best, exc.residuals) from exc
    roots = np.asarray(rs.roots)
    keep = accepted_mask(family, roots)
    acc = roots[keep]
    r = _ratio_array(family, acc)
    raw = root_locus_residuals(family, acc)
    norm = raw / (1 + np.abs(r))
    haus = math.nan
    if density_samples and acc.size:
        try:
            haus = one_sided_hausdorff(acc, LocusSpec.root(family), density_samples)
        except ValueError:
            haus = math.nan
    return LocusReport(
        m=m, n=family.n, total_roots=int(roots.size), filtered_roots=int((~keep).sum()),
        roots=acc, residuals=tuple(raw.tolist()), normalized_residuals=tuple(norm.tolist()),
        max_residual=float(raw.max(initial=0.0)), max_normalized_residual=float(norm.max(initial=0.0)),
        hausdorff_to_locus=haus, tol=tol, conjectural=family.n >= 5,
    )
