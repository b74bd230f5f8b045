"""Desk-scale exact Lagrangians: graphs of differentials and immersed curves in T*S^1.

A curve is a closed loop ``t -> (x(t), xi(t))`` with ``t`` in ``[0, 2 pi)``, ``x``
read modulo ``2 pi``, and primitive ``z`` with ``dz = xi dx``.  Reeb chords of
the Legendrian lift sit over the double points of the loop; a chord's length
is the jump of ``z`` between the two branches.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import math
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq, root

from .persistence import SimplicialComplex, circle_angles, sphere3_points, torus_angles
from .scalar import Scalar

TWO_PI = 2 * math.pi


class NotImmersed(ValueError):
    pass


# ---------------------------------------------------------------------------
# models

@dataclass
class GraphModel:
    """Graph of ``df`` for vertex samples ``f`` on a preset triangulated manifold."""

    complex: SimplicialComplex
    values: np.ndarray
    manifold: str                  # "s1", "t2", "s3" or "custom"
    shape: tuple = ()              # (k,), (m, n) or (k, l)
    positions: np.ndarray | None = None
    kind: str = field(default="graph", init=False)


@dataclass
class CurveModel:
    """Sampled closed curve; analytic callables (if given) are used to refine chords."""

    t: np.ndarray
    x: np.ndarray                  # unwrapped, x[-1] + step closes onto x[0] + 2 pi w
    xi: np.ndarray
    z: np.ndarray
    winding: int = 1
    x_fn: Callable | None = None
    xi_fn: Callable | None = None
    dx_fn: Callable | None = None
    dxi_fn: Callable | None = None
    kind: str = field(default="curve", init=False)


def graph_s1(f, k: int = 360) -> GraphModel:
    th = circle_angles(k)
    vals = np.asarray(f(th) if callable(f) else f, dtype=float)
    return GraphModel(SimplicialComplex.circle(k), vals, "s1", (k,))


def graph_t2(f, m: int = 32, n: int | None = None) -> GraphModel:
    n = m if n is None else n
    a, b = torus_angles(m, n)
    vals = np.asarray(f(a, b) if callable(f) else f, dtype=float)
    return GraphModel(SimplicialComplex.torus(m, n), vals, "t2", (m, n))


def graph_s3(f, k: int = 4, l: int = 4) -> GraphModel:
    pts = sphere3_points(k, l)
    vals = np.asarray(f(pts) if callable(f) else f, dtype=float)
    return GraphModel(SimplicialComplex.sphere3(k, l), vals, "s3", (k, l), pts)


def zero_section(manifold: str = "s1", size: int = 360) -> GraphModel:
    if manifold == "s1":
        return graph_s1(np.zeros(size), size)
    if manifold == "t2":
        return graph_t2(np.zeros(size * size), size)
    if manifold == "s3":
        return graph_s3(lambda p: np.zeros(len(p)))
    raise ValueError(f"unknown manifold {manifold!r}")


def curve_from_functions(x_fn, xi_fn, dx_fn, dxi_fn, n: int = 4096, z0: float = 0.0,
                         winding: int = 1) -> CurveModel:
    """Sample an analytic loop on ``[0, 2 pi)``; ``z`` is integrated exactly by quadrature."""
    t = TWO_PI * np.arange(n) / n
    x, xi = x_fn(t), xi_fn(t)
    z = np.empty(n)
    z[0] = z0
    for i in range(1, n):
        z[i] = z[i - 1] + quad(lambda u: xi_fn(u) * dx_fn(u), t[i - 1], t[i])[0]
    return CurveModel(t, x, xi, z, winding, x_fn, xi_fn, dx_fn, dxi_fn)


def curve_from_samples(s, x, xi, z0: float = 0.0) -> CurveModel:
    """Curve through raw samples of ``s`` in ``[0, 1)`` via periodic cubic splines.

    ``x`` is unwrapped and its winding removed before interpolation, so both
    coordinates are periodic; ``z`` is the spline integral of ``xi dx``.
    """
    s = np.asarray(s, dtype=float)
    x = np.unwrap(np.asarray(x, dtype=float), period=TWO_PI)
    xi = np.asarray(xi, dtype=float)
    if not (len(s) == len(x) == len(xi)) or len(s) < 4:
        raise ValueError("need at least four samples with s, x and xi")
    if np.any(np.diff(s) <= 0) or s[0] < 0 or s[-1] >= 1:
        raise ValueError("sample parameters must increase inside [0, 1)")
    t = TWO_PI * s
    span = x[-1] + (x[1] - x[0]) - x[0]
    winding = int(round(span / TWO_PI))
    knots = np.append(t, t[0] + TWO_PI)
    xs = CubicSpline(knots, np.append(x - winding * t, x[0] - winding * t[0]), bc_type="periodic")
    ys = CubicSpline(knots, np.append(xi, xi[0]), bc_type="periodic")
    dxs, dys = xs.derivative(), ys.derivative()

    def x_fn(u):
        return xs(u) + winding * np.asarray(u)

    def dx_fn(u):
        return dxs(u) + winding

    z = np.empty(len(t))
    z[0] = z0
    for i in range(1, len(t)):
        z[i] = z[i - 1] + quad(lambda u: ys(u) * dx_fn(u), t[i - 1], t[i])[0]
    return CurveModel(t, x, xi, z, winding, x_fn, ys, dx_fn, dys)


# ---------------------------------------------------------------------------
# validity

def closing_defects(L: CurveModel) -> tuple[float, float, float]:
    """(x mismatch mod 2 pi, xi mismatch, integral of xi dx) at the closing step."""
    x_end = L.x[0] + TWO_PI * L.winding
    if L.xi_fn is not None:
        t0, t1 = L.t[-1], L.t[0] + TWO_PI
        action = L.z[-1] + quad(lambda u: L.xi_fn(u) * L.dx_fn(u), t0, t1)[0] - L.z[0]
        return (float(abs(L.x_fn(t1) - x_end)), float(abs(L.xi_fn(t1) - L.xi[0])), float(action))
    dz = (x_end - L.x[-1]) * (L.xi[-1] + L.xi[0]) / 2
    return (0.0, 0.0, float(L.z[-1] + dz - L.z[0]))


def check_immersion(L: CurveModel, tol: float = 1e-9):
    """Raise :class:`NotImmersed` where the velocity is (numerically) zero."""
    if L.dx_fn is not None:
        speed = np.hypot(L.dx_fn(L.t), L.dxi_fn(L.t))
        bad = np.nonzero(speed < tol)[0]
    else:
        xs, ys = _closed(L)
        dt = np.diff(np.append(L.t, L.t[0] + TWO_PI))
        speed = np.hypot(np.diff(xs), np.diff(ys)) / dt
        bad = np.nonzero(speed < tol)[0]
    if len(bad):
        raise NotImmersed(f"not an immersion at s = {L.t[bad[0]] / TWO_PI:.6g}")


def _closed(L: CurveModel):
    xs = np.append(L.x, L.x[0] + TWO_PI * L.winding)
    ys = np.append(L.xi, L.xi[0])
    return xs, ys


# ---------------------------------------------------------------------------
# unit ball

def unit_ball_check(L) -> Scalar:
    """``1 - max |xi|`` (finite differences of ``f`` for graphs)."""
    if L.kind == "curve":
        return Scalar.from_float(1.0 - float(np.max(np.abs(L.xi))))
    f = np.asarray(L.values, dtype=float)
    if L.manifold == "s1":
        (k,) = L.shape
        grad = np.abs(np.roll(f, -1) - f) / (TWO_PI / k)
    elif L.manifold == "t2":
        m, n = L.shape
        g = f.reshape(m, n)
        gx = (np.roll(g, -1, axis=0) - g) / (TWO_PI / m)
        gy = (np.roll(g, -1, axis=1) - g) / (TWO_PI / n)
        grad = np.hypot(gx, gy)
    else:
        grad = _edge_ratios(L)
    return Scalar.from_float(1.0 - float(np.max(grad)) if len(grad) else 1.0)


def _edge_ratios(L: GraphModel) -> np.ndarray:
    if L.positions is None:
        raise ValueError("custom graphs need vertex positions for the unit-ball check")
    pts = L.positions
    out = []
    for s in L.complex.simplices:
        if len(s) != 2:
            continue
        u, w = s
        cos = np.clip(np.dot(pts[u], pts[w]) / (np.linalg.norm(pts[u]) * np.linalg.norm(pts[w])),
                      -1, 1)
        out.append(abs(L.values[u] - L.values[w]) / math.acos(cos))
    return np.array(out)


def lagrangian_to_function(L) -> np.ndarray:
    if L.kind != "graph":
        raise ValueError("only graph Lagrangians have a generating function on the base")
    return np.asarray(L.values, dtype=float)


# ---------------------------------------------------------------------------
# Reeb chords

@dataclass(frozen=True)
class Chord:
    s1: float
    s2: float
    length: float


@dataclass(frozen=True)
class ChordSet:
    chords: tuple

    @property
    def l_max(self) -> float:
        return max((c.length for c in self.chords), default=0.0)

    def __len__(self):
        return len(self.chords)


def _segments(L: CurveModel):
    xs, ys = _closed(L)
    return xs[:-1], ys[:-1], xs[1:], ys[1:]


def _candidate_pairs(x0, y0, x1, y1):
    """Pairs of segments whose boxes (x folded mod 2 pi) share a hash cell."""
    n = len(x0)
    lo_x = np.minimum(x0, x1)
    hi_x = np.maximum(x0, x1)
    lo_y = np.minimum(y0, y1)
    hi_y = np.maximum(y0, y1)
    size = max(float(np.max(hi_x - lo_x)), float(np.max(hi_y - lo_y)), 1e-12) * 2
    buckets: dict = {}
    for i in range(n):
        shift = math.floor(lo_x[i] / TWO_PI) * TWO_PI
        for wrap in (0.0, TWO_PI):
            a, b = lo_x[i] - shift - wrap, hi_x[i] - shift - wrap
            if b < -size or a > TWO_PI + size:
                continue
            for cx in range(math.floor(a / size), math.floor(b / size) + 1):
                for cy in range(math.floor(lo_y[i] / size), math.floor(hi_y[i] / size) + 1):
                    buckets.setdefault((cx, cy), []).append((i, shift + wrap))
    pairs = set()
    for items in buckets.values():
        for u in range(len(items)):
            for w in range(u + 1, len(items)):
                (i, si), (j, sj) = items[u], items[w]
                if i == j:
                    continue
                if i > j:
                    (i, si), (j, sj) = (j, sj), (i, si)
                pairs.add((i, j, round((sj - si) / TWO_PI)))
    return pairs


def _intersect(p0, p1, q0, q1):
    """Parameters ``(u, v)`` in ``[0, 1)`` of the crossing of two segments, or None."""
    d1 = (p1[0] - p0[0], p1[1] - p0[1])
    d2 = (q1[0] - q0[0], q1[1] - q0[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den == 0:
        return None
    r = (q0[0] - p0[0], q0[1] - p0[1])
    u = (r[0] * d2[1] - r[1] * d2[0]) / den
    v = (r[0] * d1[1] - r[1] * d1[0]) / den
    if 0 <= u < 1 and 0 <= v < 1:
        return u, v
    return None


def _z_at(L: CurveModel, i: int, u: float) -> float:
    # exact integral of xi dx along the straight segment up to fraction u
    x0, y0, x1, y1 = _segments(L)
    dx = x1[i] - x0[i]
    dy = y1[i] - y0[i]
    return L.z[i] + u * dx * (y0[i] + u * dy / 2)


def reeb_chords(L, tol: float = 1e-6) -> ChordSet:
    """All double points of the loop with the primitive jump across each."""
    if L.kind == "graph":
        return ChordSet(())
    check_immersion(L)
    x0, y0, x1, y1 = _segments(L)
    n = len(x0)
    found = []
    for i, j, k in sorted(_candidate_pairs(x0, y0, x1, y1)):
        if j == i + 1 or (i == 0 and j == n - 1):
            continue
        off = TWO_PI * k
        hit = _intersect((x0[i], y0[i]), (x1[i], y1[i]),
                         (x0[j] - off, y0[j]), (x1[j] - off, y1[j]))
        if hit is None:
            continue
        u, v = hit
        s1 = (L.t[i] + u * _dt(L, i)) / TWO_PI
        s2 = (L.t[j] + v * _dt(L, j)) / TWO_PI
        length = abs(_z_at(L, j, v) - _z_at(L, i, u))
        if L.x_fn is not None:
            s1, s2, length = _refine(L, s1, s2, k, tol)
        found.append(Chord(float(min(s1, s2)), float(max(s1, s2)), float(length)))
    return ChordSet(tuple(_merge(found, tol)))


def _dt(L: CurveModel, i: int) -> float:
    return (L.t[i + 1] if i + 1 < len(L.t) else TWO_PI + L.t[0]) - L.t[i]


def _refine(L: CurveModel, s1: float, s2: float, k: int, tol: float):
    """Newton refinement of a double point on the analytic curve (parameter error ~1e-12)."""
    def eqs(v):
        a, b = v
        return [L.x_fn(b) - L.x_fn(a) - TWO_PI * k, L.xi_fn(b) - L.xi_fn(a)]

    a, b = root(eqs, [TWO_PI * s1, TWO_PI * s2], tol=1e-14).x
    res = eqs([a, b])
    if max(abs(res[0]), abs(res[1])) > tol:
        raise ValueError("chord refinement did not converge")
    length = abs(_primitive(L, b) - _primitive(L, a))
    return float(a % TWO_PI) / TWO_PI, float(b % TWO_PI) / TWO_PI, float(length)


def _primitive(L: CurveModel, u: float) -> float:
    """``z`` at parameter ``u`` from the nearest sample to its left plus a short quadrature."""
    u = L.t[0] + (u - L.t[0]) % TWO_PI
    i = int(np.searchsorted(L.t, u, side="right")) - 1
    return float(L.z[i] + quad(lambda w: L.xi_fn(w) * L.dx_fn(w), L.t[i], u,
                               epsabs=1e-14, epsrel=1e-13)[0])


def _merge(chords, tol):
    out = []
    for c in sorted(chords, key=lambda c: (c.s1, c.s2)):
        if out and abs(out[-1].s1 - c.s1) < tol and abs(out[-1].s2 - c.s2) < tol:
            continue
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# designed immersed curves

@dataclass(frozen=True)
class FigureEight:
    """``x = t - R sin t``, ``xi = C (cos t + R/2)``: one double point when ``R > 1``."""

    R: float = 1.5
    C: float = 0.3

    def model(self, n: int = 4096) -> CurveModel:
        R, C = self.R, self.C
        return curve_from_functions(
            lambda t: t - R * np.sin(t), lambda t: C * (np.cos(t) + R / 2),
            lambda t: 1 - R * np.cos(t), lambda t: -C * np.sin(t), n)

    def designed_lengths(self) -> list[float]:
        R, C = self.R, self.C
        u = brentq(lambda t: t - R * math.sin(t), 1e-9, math.pi - 1e-12)
        return [abs(C * ((2 - R * R) * math.sin(u) - R / 2 * math.sin(2 * u)))]


@dataclass(frozen=True)
class TwoLobe:
    """``x = t - R sin 2t``, ``xi = C1 cos 2t + C2 cos t + R C1``.

    Two double points, at ``(u, -u)`` and ``(pi - u, pi + u)`` with
    ``u = R sin 2u``; the ``C2`` term makes the two chords differ in length.
    """

    R: float = 0.8
    C1: float = 0.3
    C2: float = 0.2

    def model(self, n: int = 4096) -> CurveModel:
        R, C1, C2 = self.R, self.C1, self.C2
        return curve_from_functions(
            lambda t: t - R * np.sin(2 * t),
            lambda t: C1 * np.cos(2 * t) + C2 * np.cos(t) + R * C1,
            lambda t: 1 - 2 * R * np.cos(2 * t),
            lambda t: -2 * C1 * np.sin(2 * t) - C2 * np.sin(t), n)

    def designed_lengths(self) -> list[float]:
        R, C1, C2 = self.R, self.C1, self.C2
        u = brentq(lambda t: t - R * math.sin(2 * t), 1e-9, math.pi / 2)
        even = C1 * ((1 - 2 * R * R) * math.sin(2 * u) - R / 2 * math.sin(4 * u))
        odd = C2 * (2 * math.sin(u) - 2 * R * math.sin(u) - 2 * R / 3 * math.sin(3 * u))
        return sorted([abs(even + odd), abs(even - odd)])
