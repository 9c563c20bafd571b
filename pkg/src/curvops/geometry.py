"""Coordinate pseudo-Riemannian geometry over the exact scalar field.

Conventions: R(x,y) = nabla_x nabla_y - nabla_y nabla_x - nabla_[x,y],
R_ijkl = g(R(d_i, d_j) d_k, d_l) and, in coordinates,
R^l_kij = d_i G^l_jk - d_j G^l_ik + G^m_jk G^l_im - G^m_ik G^l_jm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from . import curvmodel as cm
from . import propcheck as pc
from .exactla import (
    DegenerateFormError,
    GramForm,
    SpectralProfile,
    as_matrix,
    char_poly_coefficients,
    invert,
    is_zero_matrix,
    mat_equal,
    qdot,
    qeinsum,
    spectral_profile,
    trace,
)
from .symkernel import Coordinate, PoleError, Polynomial, RatExpr, parse_expr

ZERO = RatExpr()


class InexactValueError(ValueError):
    pass


def _rx(x, names=None) -> RatExpr:
    if isinstance(x, RatExpr):
        return x
    if isinstance(x, str):
        return parse_expr(x, names)
    return RatExpr.coerce(x)


def _fmt_pt(names, pt) -> str:
    return "(" + ", ".join(f"{n}={v}" for n, v in zip(names, pt)) + ")"


# ---------------------------------------------------------------------------
# charts


@dataclass(frozen=True, eq=False)
class Chart:
    """Coordinate patch with a symmetric metric of RatExpr entries."""

    coords: tuple
    g: np.ndarray
    orientation: int = 1
    base_point: tuple | None = None
    name: str = ""
    domain_note: str = ""

    def __post_init__(self):
        m = len(self.coords)
        names = [c.name for c in self.coords]
        if len(set(names)) != m:
            raise ValueError("coordinate names must be unique")
        for i, c in enumerate(self.coords):
            if c.index != i:
                raise ValueError(f"coordinate {c.name} has index {c.index}, expected {i}")
        if self.g.shape != (m, m):
            raise ValueError("metric shape does not match the coordinates")
        for i in range(m):
            for j in range(i + 1, m):
                if self.g[i, j] != self.g[j, i]:
                    raise ValueError(f"metric is not symmetric at ({i + 1},{j + 1})")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        self.g.setflags(write=False)

    @classmethod
    def from_entries(cls, names: Sequence[str], entries: Mapping, **kw) -> "Chart":
        """entries maps (i, j) (0-based, either order) to expression text or RatExpr."""
        coords = tuple(Coordinate(index=i, name=n) for i, n in enumerate(names))
        m = len(coords)
        g = np.empty((m, m), dtype=object)
        g.fill(ZERO)
        for (i, j), v in entries.items():
            e = _rx(v, names)
            if (j, i) in entries and i != j and _rx(entries[(j, i)], names) != e:
                raise ValueError(f"metric is not symmetric at ({i + 1},{j + 1})")
            g[i, j] = g[j, i] = e
        return cls(coords, g, **kw)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.coords]

    def point(self, pt) -> dict:
        if len(pt) != self.dim:
            raise ValueError(f"point needs {self.dim} coordinates")
        return {n: Fraction(v) for n, v in zip(self.names, pt)}

    def _cache(self, key, build):
        val = self.__dict__.get(key)
        if val is None:
            val = build()
            object.__setattr__(self, key, val)
        return val

    @property
    def ginv(self) -> np.ndarray:
        def build():
            from .exactla import SingularMatrixError
            try:
                return invert(self.g)
            except SingularMatrixError:
                raise ValueError("metric is identically singular") from None
        return self._cache("_ginv", build)

    def det_is_constant(self):
        from .exactla import det
        d = det(np.array([[RatExpr.coerce(x) for x in row] for row in self.g], dtype=object))
        d = RatExpr.coerce(d)
        return d.constant_value() if d.is_constant() else None

    def metric_at(self, pt) -> np.ndarray:
        vals = self.point(pt)
        return _eval_array(self.g, vals, self.names)


def _eval(e, vals, names):
    if isinstance(e, Fraction):
        return e
    v = RatExpr.coerce(e).evaluate(vals)
    if not isinstance(v, Fraction):
        raise InexactValueError(
            f"value at {_fmt_pt(names, vals.values())} is not rational; use numeric evaluation")
    return v


def _eval_array(arr, vals, names):
    out = np.empty(arr.shape, dtype=object)
    for idx, e in np.ndenumerate(arr):
        out[idx] = _eval(e, vals, names)
    return out


def make_chart(names: Sequence[str], rows, **kw) -> Chart:
    m = len(names)
    entries = {}
    for i in range(m):
        for j in range(m):
            entries[(i, j)] = rows[i][j]
    return Chart.from_entries(names, entries, **kw)


# ---------------------------------------------------------------------------
# Levi-Civita pipeline (sparse dictionaries of nonzero RatExpr)


def _metric_derivatives(chart: Chart) -> dict:
    def build():
        m = chart.dim
        out = {}
        for l in range(m):
            for i in range(m):
                for j in range(i, m):
                    e = chart.g[i, j]
                    if e and not RatExpr.coerce(e).is_constant():
                        d = RatExpr.coerce(e).diff(chart.names[l])
                        if d:
                            out[(l, i, j)] = out[(l, j, i)] = d
        return out
    return chart._cache("_dg", build)


def christoffel(chart: Chart) -> dict:
    """Nonzero Gamma^k_ij keyed by (k, i, j), both (i, j) orders present."""
    def build():
        m = chart.dim
        dg = _metric_derivatives(chart)
        low = {}
        half = Fraction(1, 2)
        for l in range(m):
            for i in range(m):
                for j in range(i, m):
                    s = dg.get((i, j, l), ZERO) + dg.get((j, i, l), ZERO) - dg.get((l, i, j), ZERO)
                    if s:
                        low[(l, i, j)] = s * half
        gi = chart.ginv
        out = {}
        for (l, i, j), v in low.items():
            for k in range(m):
                if gi[k, l]:
                    out[(k, i, j)] = out.get((k, i, j), ZERO) + gi[k, l] * v
        res = {}
        for (k, i, j), v in out.items():
            if v:
                res[(k, i, j)] = res[(k, j, i)] = v
        return res
    return chart._cache("_gamma", build)


def christoffel_table(chart: Chart) -> np.ndarray:
    m = chart.dim
    out = np.empty((m, m, m), dtype=object)
    out.fill(ZERO)
    for k, v in christoffel(chart).items():
        out[k] = v
    return out


def metric_compatible(chart: Chart) -> bool:
    """d_k g_ij = Gamma^p_ki g_pj + Gamma^p_kj g_ip, checked symbolically."""
    m = chart.dim
    G = christoffel(chart)
    dg = _metric_derivatives(chart)
    for k, i, j in product(range(m), repeat=3):
        s = dg.get((k, i, j), ZERO)
        for p in range(m):
            s = s - G.get((p, k, i), ZERO) * chart.g[p, j] - G.get((p, k, j), ZERO) * chart.g[i, p]
        if s:
            return False
    return True


@dataclass(frozen=True, eq=False)
class CurvatureField:
    chart: Chart
    gamma: dict
    R: dict  # nonzero R_ijkl keyed by full index tuple

    def table(self) -> np.ndarray:
        m = self.chart.dim
        out = np.empty((m,) * 4, dtype=object)
        out.fill(ZERO)
        for k, v in self.R.items():
            out[k] = v
        return out

    def ricci(self) -> np.ndarray:
        return _cached(self, "_rho", lambda: cm.ricci_array(self.table(), self.chart.ginv))

    def ricci_tensor(self) -> np.ndarray:
        return self.ricci().T @ self.chart.g

    def tau(self) -> RatExpr:
        return RatExpr.coerce(trace(self.ricci()))

    def weyl(self) -> np.ndarray:
        return _cached(self, "_weyl", lambda: cm.weyl_array(self.table(), self.chart.g, self.chart.ginv))

    def is_flat(self) -> bool:
        return not self.R


def _cached(obj, key, build):
    val = obj.__dict__.get(key)
    if val is None:
        val = build()
        object.__setattr__(obj, key, val)
    return val


def curvature_field(chart: Chart) -> CurvatureField:
    def build():
        m = chart.dim
        names = chart.names
        G = christoffel(chart)
        by_li: dict = {}   # (l, i) -> {m: Gamma^l_im}
        by_jk: dict = {}   # (j, k) -> {m: Gamma^m_jk}
        for (k, i, j), v in G.items():
            by_li.setdefault((k, i), {})[j] = v
            by_jk.setdefault((i, j), {})[k] = v
        dG = {}
        for (k, i, j), v in G.items():
            if i <= j and not v.is_constant():
                for p in range(m):
                    d = v.diff(names[p])
                    if d:
                        dG[(p, k, i, j)] = dG[(p, k, j, i)] = d
        mixed = {}
        for i in range(m):
            for j in range(i + 1, m):
                for k in range(m):
                    jk, ik = by_jk.get((j, k), {}), by_jk.get((i, k), {})
                    for l in range(m):
                        s = dG.get((i, l, j, k), ZERO) - dG.get((j, l, i, k), ZERO)
                        li, lj = by_li.get((l, i), {}), by_li.get((l, j), {})
                        for mm, v in jk.items():
                            if mm in li:
                                s = s + v * li[mm]
                        for mm, v in ik.items():
                            if mm in lj:
                                s = s - v * lj[mm]
                        if s:
                            mixed[(i, j, k, l)] = s
        low = {}
        g = chart.g
        for (i, j, k, lp), v in mixed.items():
            for l in range(m):
                if g[lp, l]:
                    key = (i, j, k, l)
                    low[key] = low.get(key, ZERO) + v * g[lp, l]
        R = {}
        for (i, j, k, l), v in low.items():
            if v:
                R[(i, j, k, l)] = v
                R[(j, i, k, l)] = -v
        return CurvatureField(chart, G, R)
    return chart._cache("_curv", build)


def scalar_curvature(chart: Chart) -> RatExpr:
    return curvature_field(chart).tau()


def nabla_R(chart: Chart) -> dict:
    """Nonzero components of the covariant derivative, keyed (p, i, j, k, l)."""
    def build():
        m = chart.dim
        names = chart.names
        cf = curvature_field(chart)
        G = cf.gamma
        by_first: dict = {}  # (p, a) -> list of (q, Gamma^q_pa)
        for (q, p, a), v in G.items():
            by_first.setdefault((p, a), []).append((q, v))
        out: dict = {}

        def add(key, v):
            out[key] = out.get(key, ZERO) + v

        for idx, v in cf.R.items():
            if not v.is_constant():
                for p in range(m):
                    d = v.diff(names[p])
                    if d:
                        add((p,) + idx, d)
            # -Gamma^q_{p a} R(..q..) with q in slot s: contributes to index with a in slot s
            for s in range(4):
                q = idx[s]
                for (p, a), lst in by_first.items():
                    for qq, gv in lst:
                        if qq == q:
                            new = list(idx)
                            new[s] = a
                            add((p,) + tuple(new), -(gv * v))
        return {k: v for k, v in out.items() if v}
    return chart._cache("_nablaR", build)


def is_locally_symmetric(chart: Chart) -> bool:
    return not nabla_R(chart)


def contracted_bianchi_holds(chart: Chart) -> bool:
    """2 div(Ric) = d tau, symbolically."""
    m = chart.dim
    names = chart.names
    cf = curvature_field(chart)
    Ric = cf.ricci_tensor()
    tau = cf.tau()
    G = cf.gamma
    gi = chart.ginv
    for k in range(m):
        div = ZERO
        for i in range(m):
            for j in range(m):
                if not gi[i, j]:
                    continue
                t = RatExpr.coerce(Ric[j, k]).diff(names[i])
                for p in range(m):
                    gij, gik = G.get((p, i, j)), G.get((p, i, k))
                    if gij is not None:
                        t = t - gij * Ric[p, k]
                    if gik is not None:
                        t = t - gik * Ric[j, p]
                div = div + gi[i, j] * t
        if div * 2 - tau.diff(names[k]):
            return False
    return True


# ---------------------------------------------------------------------------
# pointwise models from the 2-jet of the metric


def _second_derivatives(chart: Chart) -> dict:
    def build():
        m = chart.dim
        out = {}
        for (l, i, j), v in _metric_derivatives(chart).items():
            if i <= j and not v.is_constant():
                for p in range(l, m):
                    d = v.diff(chart.names[p])
                    if d:
                        for key in ((p, l, i, j), (l, p, i, j), (p, l, j, i), (l, p, j, i)):
                            out[key] = d
        return out
    return chart._cache("_ddg", build)


def model_at(chart: Chart, pt) -> cm.Model:
    """Exact pointwise model (T_P M, g_P, R_P)."""
    m = chart.dim
    names = chart.names
    vals = chart.point(pt)
    g0 = _eval_array(chart.g, vals, names)
    try:
        gram = GramForm(g0)
    except DegenerateFormError as exc:
        raise ValueError(f"metric degenerate at {_fmt_pt(names, pt)}: radical dimension {exc.radical_dim}") from None
    gi = gram.inverse

    def dense(d, shape):
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        for k, v in d.items():
            try:
                out[k] = _eval(v, vals, names)
            except PoleError:
                raise PoleError(f"pole at point {_fmt_pt(names, pt)}") from None
        return out

    dg = dense(_metric_derivatives(chart), (m, m, m))
    ddg = dense(_second_derivatives(chart), (m, m, m, m))
    half = Fraction(1, 2)
    # low[l, i, j] = Gamma_{ij,l}
    low = (dg.transpose(2, 0, 1) + dg.transpose(2, 1, 0) - dg) * half
    gam = qdot(gi, low, axes=([1], [0]))  # [k, i, j]
    dlow = (ddg.transpose(0, 3, 1, 2) + ddg.transpose(0, 3, 2, 1) - ddg) * half  # [p, l, i, j]
    dgi = -qeinsum("ka,pab,bl->pkl", gi, dg, gi)
    dgam = qeinsum("pkl,lij->pkij", dgi, low) + qeinsum("kl,plij->pkij", gi, dlow)
    # mixed[i, j, k, l] = R^l_kij
    mixed = (dgam.transpose(0, 2, 3, 1) - dgam.transpose(2, 0, 3, 1)
             + qeinsum("mjk,lim->ijkl", gam, gam) - qeinsum("mik,ljm->ijkl", gam, gam))
    R = qdot(mixed, g0, axes=([3], [0]))
    return cm.Model(gram, R)


def model_at_symbolic(chart: Chart, pt) -> cm.Model:
    """Pointwise model by evaluating the symbolic curvature field (cross-check route)."""
    vals = chart.point(pt)
    gram = GramForm(_eval_array(chart.g, vals, chart.names))
    return cm.Model(gram, _eval_array(curvature_field(chart).table(), vals, chart.names))


def jordan_profile(chart: Chart, pt, operator: str = "conformal_jacobi", x=None) -> SpectralProfile:
    mdl = model_at(chart, pt)
    if operator in ("jacobi", "conformal_jacobi", "jw"):
        if x is None:
            raise ValueError(f"operator {operator} needs a direction vector")
        xv = as_matrix([[Fraction(v) for v in x]]).reshape(-1)
        M = cm.jacobi(mdl, xv) if operator == "jacobi" else cm.conformal_jacobi(mdl, xv)
    elif operator == "ricci":
        M = cm.ricci(mdl)
    else:
        raise ValueError(f"unknown operator {operator!r}")
    return spectral_profile(M, mdl.gram)


# ---------------------------------------------------------------------------
# Walker metrics and deformed Riemannian extensions

WALKER_COORDS = ("x1", "x2", "x3", "x4")


def walker(g33="0", g34="0", g44="0", name: str = "") -> Chart:
    e = {(0, 2): "1", (1, 3): "1", (2, 2): g33, (2, 3): g34, (3, 3): g44}
    return Chart.from_entries(WALKER_COORDS, e, name=name)


@dataclass(frozen=True)
class AffineConnection2D:
    """Torsion-free connection on (x3, x4); gamma[(i, j, k)] = Gamma_ij^k, indices 3 or 4."""

    gamma: tuple  # ((i, j, k), RatExpr) pairs, i <= j

    @classmethod
    def from_dict(cls, d: Mapping) -> "AffineConnection2D":
        out = {}
        for (i, j, k), v in d.items():
            if i not in (3, 4) or j not in (3, 4) or k not in (3, 4):
                raise ValueError("connection indices must be 3 or 4")
            e = _rx(v, ("x3", "x4"))
            if e.variables() - {"x3", "x4"}:
                raise ValueError("connection coefficients depend only on x3, x4")
            a, b = min(i, j), max(i, j)
            if (a, b, k) in out and out[(a, b, k)] != e:
                raise ValueError("connection must be torsion free (symmetric in the lower indices)")
            out[(a, b, k)] = e
        return cls(tuple(sorted((k, v) for k, v in out.items() if v)))

    def __call__(self, i, j, k) -> RatExpr:
        a, b = min(i, j), max(i, j)
        for key, v in self.gamma:
            if key == (a, b, k):
                return v
        return ZERO

    def curvature(self) -> dict:
        """R^l_kij keyed (l, k, i, j) over {3, 4}."""
        out = {}
        ix = (3, 4)
        name = {3: "x3", 4: "x4"}
        for l, k, i, j in product(ix, repeat=4):
            s = self(j, k, l).diff(name[i]) - self(i, k, l).diff(name[j])
            for mm in ix:
                s = s + self(j, k, mm) * self(i, mm, l) - self(i, k, mm) * self(j, mm, l)
            if s:
                out[(l, k, i, j)] = s
        return out


@dataclass(frozen=True)
class ExtensionSpec:
    connection: AffineConnection2D
    xi: tuple = ()  # ((i, j), RatExpr) with i <= j in {3, 4}

    def xi_entry(self, i, j) -> RatExpr:
        a, b = min(i, j), max(i, j)
        for key, v in self.xi:
            if key == (a, b):
                return v
        return ZERO


def extension_spec(connection, xi: Mapping | None = None) -> ExtensionSpec:
    conn = connection if isinstance(connection, AffineConnection2D) else AffineConnection2D.from_dict(connection)
    out = {}
    for (i, j), v in (xi or {}).items():
        a, b = min(i, j), max(i, j)
        e = _rx(v, ("x3", "x4"))
        if (a, b) in out and out[(a, b)] != e:
            raise ValueError("xi must be symmetric")
        out[(a, b)] = e
    return ExtensionSpec(conn, tuple(sorted(out.items())))


def riemannian_extension(spec: ExtensionSpec) -> Chart:
    x1, x2 = RatExpr(Polynomial.var("x1")), RatExpr(Polynomial.var("x2"))
    G = spec.connection

    def entry(i, j):
        return x1 * G(i, j, 3) * -2 + x2 * G(i, j, 4) * -2 + spec.xi_entry(i, j)

    e = {(0, 2): RatExpr(1), (1, 3): RatExpr(1),
         (2, 2): entry(3, 3), (2, 3): entry(3, 4), (3, 3): entry(4, 4)}
    return Chart.from_entries(WALKER_COORDS, e, name="deformed Riemannian extension")


def affine_ricci(conn: AffineConnection2D):
    """(rho, rho_sym, rho_alt) as 2x2 RatExpr tables indexed by (x3, x4)."""
    R = conn.curvature()
    ix = (3, 4)
    rho = np.empty((2, 2), dtype=object)
    for a, b in product(range(2), repeat=2):
        x, y = ix[a], ix[b]
        # rho(x, y) = Tr(z -> R(z, x) y) = sum_i R^i_{y i x}
        s = ZERO
        for i in ix:
            s = s + R.get((i, y, i, x), ZERO)
        rho[a, b] = s
    half = Fraction(1, 2)
    sym = (rho + rho.T) * half
    alt = (rho - rho.T) * half
    return rho, sym, alt


def affine_jacobi(conn: AffineConnection2D) -> np.ndarray:
    """J(u)[c, d] = coefficient of d_c in R(d_d, u) u, u = (u3, u4) symbolic."""
    R = conn.curvature()
    u = {3: RatExpr(Polynomial.var("u3")), 4: RatExpr(Polynomial.var("u4"))}
    ix = (3, 4)
    J = np.empty((2, 2), dtype=object)
    for c, d in product(range(2), repeat=2):
        s = ZERO
        for a, b in product(ix, repeat=2):
            v = R.get((ix[c], b, ix[d], a))
            if v is not None:
                s = s + v * u[a] * u[b]
        J[c, d] = s
    return J


def affine_osserman(conn: AffineConnection2D) -> bool:
    J = affine_jacobi(conn)
    return all(not RatExpr.coerce(c) for c in char_poly_coefficients(J))


# ---------------------------------------------------------------------------
# duality in dimension four

_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
# Calibrated so that the Walker family g34 = x1 p + x2 q + s reports self-dual.
_SD_SIGN = 1


def _levi_civita_pairs() -> np.ndarray:
    E = np.zeros((6, 6), dtype=object)
    E[:] = Fraction(0)
    for a, (i, j) in enumerate(_PAIRS):
        for b, (k, l) in enumerate(_PAIRS):
            idx = (i, j, k, l)
            if len(set(idx)) == 4:
                inv = sum(1 for p in range(4) for q in range(p + 1, 4) if idx[p] > idx[q])
                E[a, b] = Fraction((-1) ** inv)
    return E


def _bivector_forms(W, G):
    U = np.empty((6, 6), dtype=object)
    Wf = np.empty((6, 6), dtype=object)
    for a, (i, j) in enumerate(_PAIRS):
        for b, (k, l) in enumerate(_PAIRS):
            U[a, b] = G[i, k] * G[j, l] - G[i, l] * G[j, k]
            Wf[a, b] = W[i, j, l, k]
    return U, Wf


def _duality(W, G, orientation: int, volume: Fraction):
    U, Wf = _bivector_forms(W, G)
    star = (_levi_civita_pairs() @ U) * (Fraction(orientation) / volume)
    eye = np.eye(6, dtype=object) * Fraction(1)
    plus = Wf @ (eye - star * _SD_SIGN)
    minus = Wf @ (eye + star * _SD_SIGN)
    return star, is_zero_matrix(plus), is_zero_matrix(minus)


def _sqrt_rational(q: Fraction):
    from math import isqrt
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sd_asd_report(chart: Chart, pt=None) -> dict:
    """Self-duality verdicts; symbolic over the chart, or at a point when given."""
    if chart.dim != 4:
        raise ValueError("duality is defined here for dimension 4 only")
    if pt is not None:
        mdl = model_at(chart, pt)
        if mdl.gram.signature != (2, 2):
            raise ValueError("sd_asd_report expects neutral signature (2,2)")
        d = abs(_det4(mdl.G))
        vol = _sqrt_rational(d)
        if vol is None:
            raise ValueError("sqrt|det g| is irrational at this point")
        W = cm.weyl_model(mdl).R
        star, sd, asd = _duality(W, mdl.G, chart.orientation, vol)
    else:
        base = chart.base_point or _default_base(chart)
        if GramForm(chart.metric_at(base)).signature != (2, 2):
            raise ValueError("sd_asd_report expects neutral signature (2,2)")
        det = chart.det_is_constant()
        if det is None:
            raise ValueError("symbolic duality needs a constant metric determinant")
        vol = _sqrt_rational(abs(det))
        if vol is None:
            raise ValueError("sqrt|det g| is irrational")
        W = curvature_field(chart).weyl()
        star, sd, asd = _duality(W, chart.g, chart.orientation, vol)
    return {"self_dual": sd, "anti_self_dual": asd}


def _det4(G):
    from .exactla import det
    return det(G)


def _default_base(chart: Chart):
    return tuple(Fraction(0) for _ in range(chart.dim))


# ---------------------------------------------------------------------------
# warped cone


def warped_product_cone(fiber: Chart) -> Chart:
    """ds^2 = dt^2 + t^2 ds_N^2 on (0, inf) x N."""
    if fiber.dim != 2:
        raise ValueError("the fiber must be two-dimensional")
    if "t" in fiber.names:
        raise ValueError("fiber coordinates must not be named t")
    base = fiber.base_point or _default_base(fiber)
    if GramForm(fiber.metric_at(base)).signature != (0, 2):
        raise ValueError("the fiber metric must be positive definite")
    t = RatExpr(Polynomial.var("t"))
    names = ["t"] + fiber.names
    e = {(0, 0): RatExpr(1)}
    for i in range(2):
        for j in range(2):
            if fiber.g[i, j]:
                e[(i + 1, j + 1)] = t * t * fiber.g[i, j]
    bp = (Fraction(1),) + tuple(base)
    return Chart.from_entries(names, e, base_point=bp, name=f"cone over {fiber.name}".strip(),
                              domain_note="t > 0")


# ---------------------------------------------------------------------------
# pointwise verdict vector


def point_verdicts(chart: Chart, pt) -> dict:
    """Pointwise property verdicts of the chart's model at pt."""
    mdl = model_at(chart, pt)
    out = {k: r.holds for k, r in pc.all_properties(mdl).items()}
    out["einstein"] = pc.is_einstein(mdl)
    out["ricci_zero"] = is_zero_matrix(cm.ricci(mdl))
    out["osserman"] = pc.osserman_report(mdl, "jacobi").is_osserman
    if mdl.dim >= 3:
        out["conformal_osserman"] = pc.osserman_report(mdl, "conformal").is_osserman
    return out
