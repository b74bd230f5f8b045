"""Readers for the JSON input files; every schema problem names its field."""
from __future__ import annotations

from decimal import Decimal
import json
import math

import numpy as np

from .barcode import Barcode, from_dict
from .bounds import GroupGeometry, geometry_from_dict, preset
from .lagrangian import CurveModel, GraphModel, curve_from_samples, closing_defects
from .persistence import SimplicialComplex, sphere3_points
from .scalar import S


class InputError(ValueError):
    pass


def _load(path) -> object:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh, parse_float=Decimal, parse_int=Decimal)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _field(data, key, path, kind=None):
    if not isinstance(data, dict) or key not in data:
        raise InputError(f"{path}: missing field {key!r}")
    val = data[key]
    if kind is not None and not isinstance(val, kind):
        raise InputError(f"{path}: field {key!r} has the wrong type")
    return val


def load_barcode(path) -> Barcode:
    data = _load(path)
    _field(data, "bars", path, list)
    try:
        return from_dict(data)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_grid_rep(path):
    """``{"breakpoints": [...], "prime": p, "dims": [...], "maps": {"i->j": matrix}}``.

    Arrows go from a point cell ``i`` (odd) to its neighbours ``i - 1`` and
    ``i + 1``; missing maps between nonzero spaces are an error.
    """
    from .oracle.grid import GridPoset
    from .oracle.poset import Rep

    data = _load(path)
    grid = GridPoset(S(t) for t in _field(data, "breakpoints", path, list))
    p = int(data.get("prime", 2))
    dims = [int(d) for d in _field(data, "dims", path, list)]
    maps = {}
    for key, M in _field(data, "maps", path, dict).items():
        try:
            i, j = (int(x) for x in key.split("->"))
        except ValueError:
            raise InputError(f"{path}: maps key {key!r} is not of the form 'i->j'") from None
        if not (0 <= i < len(dims) and 0 <= j < len(dims)):
            raise InputError(f"{path}: maps key {key!r} names a missing cell")
        try:
            maps[(i, j)] = np.array([[int(x) for x in row] for row in M],
                                    dtype=np.int64).reshape(dims[j], dims[i])
        except (TypeError, ValueError):
            raise InputError(f"{path}: map {key!r} must be a {dims[j]}x{dims[i]} matrix") from None
    try:
        rep = Rep(grid, p, dims, maps).check()
    except (ValueError, IndexError) as exc:
        raise InputError(f"{path}: {exc}") from None
    return rep, int(data.get("degree", 0))


def _floats(values, path, key):
    try:
        return np.array([float(x) for x in values], dtype=float)
    except (TypeError, ValueError):
        raise InputError(f"{path}: field {key!r} must hold numbers") from None


def load_graph(path, data=None) -> GraphModel:
    """``{"preset": "s1"|"t2"|"s3"|"custom", "values": [...], ...}``."""
    data = _load(path) if data is None else data
    kind = _field(data, "preset", path, str)
    vals = _floats(_field(data, "values", path, list), path, "values")
    n = len(vals)
    if kind == "s1":
        K, shape, pos = SimplicialComplex.circle(n), (n,), None
    elif kind == "t2":
        m, k = (int(x) for x in data.get("shape", [math.isqrt(n)] * 2))
        if m * k != n:
            raise InputError(f"{path}: t2 shape {m}x{k} does not match {n} values")
        K, shape, pos = SimplicialComplex.torus(m, k), (m, k), None
    elif kind == "s3":
        a, b = (int(x) for x in data.get("shape", [4, 4]))
        if a + b != n:
            raise InputError(f"{path}: s3 shape ({a},{b}) needs {a + b} values")
        K, shape, pos = SimplicialComplex.sphere3(a, b), (a, b), sphere3_points(a, b)
    elif kind == "custom":
        verts = _field(data, "vertices", path, list)
        pos = np.array([[float(c) for c in v] for v in verts]) if verts else None
        K = SimplicialComplex(len(verts), [[int(x) for x in s]
                                           for s in _field(data, "simplices", path, list)])
        shape = ()
        if K.n_vertices != n:
            raise InputError(f"{path}: {K.n_vertices} vertices but {n} values")
    else:
        raise InputError(f"{path}: unknown preset {kind!r}")
    return GraphModel(K, vals, kind, shape, pos)


def load_curve(path, data=None, exact_tol: float = 1e-6) -> CurveModel:
    """``{"samples": [{"s":..., "x":..., "xi":...}], "primitive_start": z0}``."""
    data = _load(path) if data is None else data
    rows = _field(data, "samples", path, list)
    try:
        s = [float(r["s"]) for r in rows]
        x = [float(r["x"]) for r in rows]
        xi = [float(r["xi"]) for r in rows]
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: samples need numeric 's', 'x' and 'xi' ({exc})") from None
    try:
        L = curve_from_samples(s, x, xi, float(data.get("primitive_start", 0)))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None
    action = closing_defects(L)[2]
    if abs(action) > exact_tol:
        raise InputError(f"{path}: curve is not exact (integral of xi dx = {action:.3g})")
    return L


def load_model(path):
    data = _load(path)
    if isinstance(data, dict) and "samples" in data:
        return load_curve(path, data)
    return load_graph(path, data)


def load_geometry(name: str) -> GroupGeometry:
    if name.endswith(".json"):
        data = _load(name)
        try:
            return geometry_from_dict(data)
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"{name}: {exc}") from None
    try:
        return preset(name)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def curve_to_dict(L: CurveModel) -> dict:
    return {"samples": [{"s": float(t / (2 * math.pi)), "x": float(a), "xi": float(b)}
                        for t, a, b in zip(L.t, L.x, L.xi)],
            "primitive_start": float(L.z[0])}


def graph_to_dict(L: GraphModel) -> dict:
    out = {"preset": L.manifold, "values": [float(x) for x in L.values]}
    if L.manifold in ("t2", "s3"):
        out["shape"] = list(L.shape)
    return out
