"""Explicit algebraic models used by the corpus and the tests."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import curvmodel as cm
from .exactla import GramForm, as_matrix, identity

_SX = np.array([[0, 1], [1, 0]], dtype=object)
_SZ = np.array([[1, 0], [0, -1]], dtype=object)
_EPS = np.array([[0, 1], [-1, 0]], dtype=object)
_I2 = np.eye(2, dtype=int).astype(object)


def _kron(*ms):
    out = np.array([[1]], dtype=object)
    for m in ms:
        out = np.kron(out, m)
    return as_matrix(out)


def clifford_generators():
    """Skew-adjoint e1..e4 on R^8 with e1^2 = e2^2 = id, e3^2 = e4^2 = -id, anticommuting."""
    gram = _kron(_EPS, _I2, _EPS)
    es = [_kron(_SX, _I2, _I2), _kron(_SZ, _I2, _I2), _kron(_EPS, _SX, _I2), _kron(_EPS, _SZ, _I2)]
    return GramForm(gram), es


def clifford_model() -> cm.Model:
    """R_phi1 + R_phi2 with phi1 = e1 + e3, phi2 = e2 + e4 (neutral signature on R^8)."""
    g, (e1, e2, e3, e4) = clifford_generators()
    return cm.add_models(cm.make_Rphi(g, e1 + e3), cm.make_Rphi(g, e2 + e4))


# basis order: a1 a2 a3 a1* a2* a3* b11 b12 b21 b22 b31 b32 b41 b42
M68_LABELS = ["a1", "a2", "a3", "a1*", "a2*", "a3*",
              "b11", "b12", "b21", "b22", "b31", "b32", "b41", "b42"]


def m68_gram() -> GramForm:
    ix = {s: i for i, s in enumerate(M68_LABELS)}
    G = np.zeros((14, 14), dtype=object)
    G[:] = Fraction(0)

    def put(a, b, v):
        G[ix[a], ix[b]] = G[ix[b], ix[a]] = Fraction(v)

    for i in (1, 2, 3):
        put(f"a{i}", f"a{i}*", 1)
        put(f"b{i}1", f"b{i}2", 1)
    put("b41", "b41", Fraction(-1, 2))
    put("b42", "b42", Fraction(-1, 2))
    put("b41", "b42", Fraction(1, 4))
    return GramForm(G)


def m68_entries() -> list:
    ix = {s: i for i, s in enumerate(M68_LABELS)}
    raw = [
        (("a2", "a1", "a1", "b21"), 1), (("a3", "a1", "a1", "b31"), 1), (("a3", "a2", "a2", "b32"), 1),
        (("a1", "a2", "a2", "b12"), 1), (("a1", "a3", "a3", "b11"), 1), (("a2", "a3", "a3", "b22"), 1),
        (("a1", "a2", "a3", "b41"), Fraction(-1, 2)), (("a1", "a3", "a2", "b41"), Fraction(-1, 2)),
        (("a2", "a3", "a1", "b42"), Fraction(-1, 2)), (("a2", "a1", "a3", "b42"), Fraction(-1, 2)),
    ]
    return [(tuple(ix[s] for s in key), v) for key, v in raw]


def m68_model() -> cm.Model:
    return cm.Model.from_entries(m68_gram(), m68_entries())


def hermitian_theta(m: int = 4):
    """Standard complex structure on R^m (m even), orthogonal for the identity Gram."""
    if m % 2:
        raise ValueError("a complex structure needs even dimension")
    T = np.zeros((m, m), dtype=object)
    T[:] = Fraction(0)
    for k in range(0, m, 2):
        T[k + 1, k] = Fraction(1)
        T[k, k + 1] = Fraction(-1)
    return as_matrix(T)


def theta_model(m: int = 4, c=1) -> cm.Model:
    mdl = cm.make_Rphi(identity(m), hermitian_theta(m))
    return cm.add_models(mdl, weights=[c])


# ---------------------------------------------------------------------------
# charts

def _geo():
    from . import geometry
    return geometry


EX5_COORDS = ["x1", "x2", "x3", "z1", "z2", "z3",
              "y11", "y12", "y21", "y22", "y31", "y32", "y41", "y42"]
EX5_DEFAULTS = {"a11": Fraction(1), "a22": Fraction(1), "a12": Fraction(2, 3), "a21": Fraction(2, 3),
                "a31": Fraction(0), "a32": Fraction(0)}


def ex5_chart(**params):
    """14-dimensional realisation of M_{6,8}; z_i stands for the starred x_i."""
    a = dict(EX5_DEFAULTS)
    for k, v in params.items():
        if k not in a:
            raise KeyError(f"unknown parameter {k}")
        a[k] = Fraction(v)
    f = lambda q: f"({q})"
    e = {}
    for i in (1, 2, 3):
        e[(f"x{i}", f"z{i}")] = "1"
        e[(f"y{i}1", f"y{i}2")] = "1"
    e[("y41", "y41")] = "-1/2"
    e[("y42", "y42")] = "-1/2"
    e[("y41", "y42")] = "1/4"
    e[("x1", "x1")] = f"-2*{f(a['a21'])}*x2*y21 - 2*{f(a['a31'])}*x3*y31"
    e[("x2", "x2")] = f"-2*{f(a['a32'])}*x3*y32 - 2*{f(a['a12'])}*x1*y12"
    e[("x3", "x3")] = f"-2*{f(a['a11'])}*x1*y11 - 2*{f(a['a22'])}*x2*y22"
    e[("x1", "x2")] = f"2*(1-{f(a['a21'])})*x1*y21 + 2*(1-{f(a['a12'])})*x2*y12"
    e[("x2", "x3")] = f"x1*y41 + 2*(1-{f(a['a32'])})*x2*y32 + 2*(1-{f(a['a22'])})*x3*y22"
    e[("x1", "x3")] = f"x2*y42 + 2*(1-{f(a['a31'])})*x1*y31 + 2*(1-{f(a['a11'])})*x3*y11"
    ix = {n: i for i, n in enumerate(EX5_COORDS)}
    return _geo().Chart.from_entries(EX5_COORDS, {(ix[p], ix[q]): v for (p, q), v in e.items()},
                                     name="EX5")


def ex6b_chart(beta=1):
    b = Fraction(beta)
    return _geo().Chart.from_entries(
        ["x1", "x2", "x3", "x4"],
        {(0, 0): "x3^2", (1, 1): f"(x3 + ({b})*x4)^2", (2, 2): "1", (3, 3): "1"},
        base_point=(0, 0, 1, 1), name="EX6b")


def flat_fiber():
    return _geo().Chart.from_entries(["u", "v"], {(0, 0): "1", (1, 1): "1"}, name="flat torus")


def round_fiber(K=1):
    """Stereographic metric of constant Gauss curvature K on the plane."""
    c = Fraction(4) / Fraction(K)
    e = f"({c})/(1 + u^2 + v^2)^2"
    return _geo().Chart.from_entries(["u", "v"], {(0, 0): e, (1, 1): e}, name="round sphere")


def ex3_chart(p: int = 2, gx=None):
    """(x_1..x_p, y_1..y_p) with g(dx_i, dy_j) = delta_ij and g(dx_i, dx_j) = g_ij(x)."""
    names = [f"x{i + 1}" for i in range(p)] + [f"y{i + 1}" for i in range(p)]
    if gx is None:
        gx = {(0, 0): "x2^2", (0, 1): "x1*x2 + x1^3", (1, 1): "x1^2*x2"} if p == 2 else {}
    e = {(i, p + i): "1" for i in range(p)}
    e.update(gx)
    return _geo().Chart.from_entries(names, e, name="EX3")


def ex7_chart(f="u1*u2", xi=None, m: int = 4):
    """(x, u_1..u_{m-2}, y): g(dx,dx) = -2f(u), g(dx,dy) = 1, g(du_a,du_b) = Xi_ab."""
    k = m - 2
    names = ["x"] + [f"u{i + 1}" for i in range(k)] + ["y"]
    xi = xi if xi is not None else [[int(i == j) for j in range(k)] for i in range(k)]
    e = {(0, 0): f"-2*({f})", (0, m - 1): "1"}
    for a in range(k):
        for b in range(k):
            if xi[a][b]:
                e[(a + 1, b + 1)] = str(Fraction(xi[a][b]))
    return _geo().Chart.from_entries(names, e, name="EX7")


def ex8_chart():
    return _geo().Chart.from_entries(
        ["x1", "x2", "x3", "x4"],
        {(0, 3): "1", (1, 1): "1", (2, 2): "1", (0, 2): "exp(x2)"}, name="EX8")


def ex9_chart(s=1):
    s = Fraction(s)
    return _geo().walker(g33=f"({s})*x1*x2", g44=f"-({s})*x1*x2",
                         g34=f"({s / 2})*(x2^2 - x1^2)", name="EX9")


def ex10_chart(s=1):
    s = Fraction(s)
    return _geo().walker(g33=f"({s / 2})*(x2^2 - x1^2)", g44=f"-({s / 2})*(x2^2 - x1^2)",
                         g34=f"-({s})*x1*x2", name="EX10")


def t13_chart(a0=1, a3=1, a4=1, s="x3*x4"):
    d = f"(({Fraction(a0)}) + ({Fraction(a3)})*x3 + ({Fraction(a4)})*x4)"
    p = f"-2*({Fraction(a4)})/{d}"
    q = f"-2*({Fraction(a3)})/{d}"
    return _geo().walker(g34=f"x1*({p}) + x2*({q}) + ({s})", name="T13-1d")


T15_METRICS = {
    "1a": "x1^2 - x2^2",
    "1b": "x1^2 + x2^2",
    "1c": "x1*x4 + x3*x4",
    "1d": "x1^2",
    "2a": "x2*x4^2 + x3^2*x4",
    "2b": "x2*x4^2 + x3*x4",
    "2c": "x1*x3^2",
    "2d": "x1*x3 + x2*x4",
    "3a": "x1^4 + x1^2 - x2^4 - x2^2",
    "3b": "x1^4 + x1^2 + x2^4 + x2^2",
    "3c": "x1^3 - x2^3",
}

# unit spacelike direction in every Walker chart with g33 = g44 = 0 at x3 = x4 = 0 slots
WALKER_UNIT = (Fraction(1), Fraction(0), Fraction(1, 2), Fraction(0))
