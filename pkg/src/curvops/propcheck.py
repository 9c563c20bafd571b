"""Exact decision procedures for the commutation and spectral properties.

Universally quantified conditions are reduced to finitely many exact zero
tests by multilinearity: J(x) = sum x^a x^b J_ab and R(x, y) = sum x^a y^b R_ab.
Sampling is used only to turn a failing index tuple into concrete vectors.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import curvmodel as cm
from .curvmodel import Model
from .exactla import (
    GramForm,
    UniPoly,
    as_matrix,
    char_poly,
    char_poly_coefficients,
    column_space,
    factor_rational,
    first_noncommuting,
    int_stack,
    invert,
    is_zero_matrix,
    mat_equal,
    nullspace,
    qdot,
    qeinsum,
    rank,
    render_factored,
    zeros,
)
from .symkernel import Polynomial, leading_monomial

COMMUTING_KINDS = ("jacobi_tsankov", "mixed_tsankov", "skew_tsankov", "jacobi_videv", "skew_videv")


def _q(x) -> str:
    return str(x)


def _vec_out(v) -> list[str]:
    return [_q(x) for x in v]


@dataclass
class PropertyReport:
    property: str
    holds: bool
    witness: dict | None = None
    notes: str = ""

    def as_dict(self) -> dict:
        return {"property": self.property, "holds": self.holds,
                "witness": self.witness, "notes": self.notes}

    def __bool__(self) -> bool:
        return self.holds


@dataclass
class OssermanReport:
    which: str
    is_osserman: bool
    coefficients: list | None
    nilpotent: bool
    failing_coefficient: int | None = None
    residual: str | None = None

    def as_dict(self) -> dict:
        return {
            "which": self.which,
            "is_osserman": self.is_osserman,
            "coefficients": None if self.coefficients is None else [_q(c) for c in self.coefficients],
            "nilpotent": self.nilpotent,
            "failing_coefficient": self.failing_coefficient,
            "residual": self.residual,
        }


@dataclass
class SplitReport:
    blocks: list  # [(basis vectors, Model)]
    exact: bool
    residual: str | None = None

    @property
    def dims(self) -> list[int]:
        return [len(b) for b, _ in self.blocks]

    def change_of_basis(self) -> np.ndarray:
        return np.column_stack([v for basis, _ in self.blocks for v in basis])

    def reassembled(self) -> Model:
        out = None
        for _, sub in self.blocks:
            out = sub if out is None else cm.direct_sum(out, sub)
        return out

    def as_dict(self) -> dict:
        return {"exact": self.exact, "dims": self.dims, "residual": self.residual,
                "blocks": [[_vec_out(v) for v in basis] for basis, _ in self.blocks]}


# ---------------------------------------------------------------------------
# operator families


def _is_rational(model: Model) -> bool:
    return all(isinstance(x, Fraction) for x in model.R.flat) and \
        all(isinstance(x, Fraction) for x in model.G.flat)


def skew_pairs(m: int):
    return [(a, b) for a in range(m) for b in range(a + 1, m)]


def sym_pairs(m: int):
    return [(a, b) for a in range(m) for b in range(a, m)]


def _families(model: Model):
    """(skew index list, jacobi index list, integer stacks) cached on the model."""
    def build():
        m = model.dim
        sp, jp = skew_pairs(m), sym_pairs(m)
        skew = [model.skew_family[a, b] for a, b in sp]
        jac = [model.polarized[a, b] for a, b in jp]
        rho = [cm.ricci(model)]
        if _is_rational(model):
            st = int_stack(skew + jac + rho)
            ns, nj = len(skew), len(jac)
            return sp, jp, st[:ns], st[ns:ns + nj], st[ns + nj:]
        obj = lambda ms: np.array(ms, dtype=object).reshape(len(ms), m, m)
        return sp, jp, obj(skew), obj(jac), obj(rho)
    return model._cache("_families", build)


def _commutes(a, b) -> bool:
    return is_zero_matrix(a @ b - b @ a)


def _witness_vectors_jacobi(model: Model, ab, cd, op_pair):
    """Concrete vectors realising a nonzero polarized commutator.

    A polynomial of degree <= 2 in each grid variable vanishing on {0,1,2}^2
    is zero, so the grid below always contains a witness.
    """
    m = model.dim
    e = np.eye(m, dtype=object) * Fraction(1)

    def line(pair, s):
        a, b = pair
        return e[b] + s * e[a] if a != b else e[a]

    for s, t in itertools.product((0, 1, 2), repeat=2):
        x, y = line(ab, s), line(cd, t)
        A, B = op_pair(x, y)
        if not _commutes(A, B):
            return x, y
    return None


def check_commuting(model: Model, kind: str) -> PropertyReport:
    if kind not in COMMUTING_KINDS:
        raise ValueError(f"unknown commuting property {kind!r}")
    sp, jp, S, J, P = _families(model)
    if kind == "jacobi_tsankov":
        hit = first_noncommuting(J, J, symmetric=True)
        pairs = (jp, jp)
    elif kind == "mixed_tsankov":
        hit = first_noncommuting(S, J)
        pairs = (sp, jp)
    elif kind == "skew_tsankov":
        hit = first_noncommuting(S, S, symmetric=True)
        pairs = (sp, sp)
    elif kind == "jacobi_videv":
        hit = first_noncommuting(J, P)
        pairs = (jp, [None])
    else:
        hit = first_noncommuting(S, P)
        pairs = (sp, [None])
    if hit is None:
        return PropertyReport(kind, True, notes="all polarized commutators vanish")
    i, j = hit
    ab, cd = pairs[0][i], pairs[1][j]
    idx = [k + 1 for k in ab] + ([k + 1 for k in cd] if cd is not None else [])
    witness: dict = {"indices": idx}
    e = np.eye(model.dim, dtype=object) * Fraction(1)
    rho = cm.ricci(model)
    if kind == "skew_tsankov":
        witness["vectors"] = {f"xi{n + 1}": _vec_out(e[k]) for n, k in enumerate(ab + cd)}
    elif kind == "skew_videv":
        witness["vectors"] = {f"xi{n + 1}": _vec_out(e[k]) for n, k in enumerate(ab)}
    elif kind == "jacobi_videv":
        for s in (0, 1, 2):
            x = e[ab[1]] + s * e[ab[0]] if ab[0] != ab[1] else e[ab[0]]
            if not _commutes(cm.jacobi(model, x), rho):
                witness["vectors"] = {"xi": _vec_out(x)}
                break
    elif kind == "jacobi_tsankov":
        w = _witness_vectors_jacobi(model, ab, cd,
                                    lambda x, y: (cm.jacobi(model, x), cm.jacobi(model, y)))
        if w:
            witness["vectors"] = {"xi1": _vec_out(w[0]), "xi2": _vec_out(w[1])}
    else:  # mixed: R(e_a, e_b) against J(x)
        Rab = cm.curv_op(model, e[ab[0]], e[ab[1]])
        for t in (0, 1, 2):
            x = e[cd[1]] + t * e[cd[0]] if cd[0] != cd[1] else e[cd[0]]
            if not _commutes(Rab, cm.jacobi(model, x)):
                witness["vectors"] = {"xi1": _vec_out(e[ab[0]]), "xi2": _vec_out(e[ab[1]]),
                                      "xi3": _vec_out(x)}
                break
    return PropertyReport(kind, False, witness, "nonzero commutator at the listed basis indices")


def recheck_witness(model: Model, report: PropertyReport) -> bool:
    """True iff the report's witness vectors give a nonzero commutator."""
    if report.holds or not report.witness or "vectors" not in report.witness:
        return False
    v = {k: as_matrix([[Fraction(s) for s in vals]]).reshape(-1)
         for k, vals in report.witness["vectors"].items()}
    p = report.property
    if p in ("jacobi_tsankov", "conformal_jacobi_tsankov"):
        return not _commutes(cm.jacobi(model, v["xi1"]), cm.jacobi(model, v["xi2"]))
    if p == "orthogonal_jacobi_tsankov":
        return not _commutes(cm.jacobi(model, v["x"]), cm.jacobi(model, v["y"]))
    if p == "mixed_tsankov":
        return not _commutes(cm.curv_op(model, v["xi1"], v["xi2"]), cm.jacobi(model, v["xi3"]))
    if p == "skew_tsankov":
        return not _commutes(cm.curv_op(model, v["xi1"], v["xi2"]),
                             cm.curv_op(model, v["xi3"], v["xi4"]))
    if p == "jacobi_videv":
        return not _commutes(cm.jacobi(model, v["xi"]), cm.ricci(model))
    if p == "skew_videv":
        return not _commutes(cm.curv_op(model, v["xi1"], v["xi2"]), cm.ricci(model))
    if p == "jacobi_square_zero":
        J = cm.jacobi(model, v["x"])
        return not is_zero_matrix(J @ J)
    raise ValueError(f"no witness recheck for {p}")


# ---------------------------------------------------------------------------
# orthogonality-restricted checks


def _elimination_index(G: np.ndarray) -> int:
    m = G.shape[0]
    return max(range(m), key=lambda j: (abs(G[j, j]), -j))


def _poly_matrix(M) -> np.ndarray:
    out = np.empty(M.shape, dtype=object)
    for idx, x in np.ndenumerate(M):
        out[idx] = x if isinstance(x, Polynomial) else Polynomial.const(x)
    return out


def check_orthogonal_jacobi_tsankov(model: Model, _name: str = "orthogonal_jacobi_tsankov") -> PropertyReport:
    """[J(x), J(y)] = 0 on the quadric <x, y> = 0, decided exactly.

    With D = (Gx)_j and N = -sum_{b != j} (Gx)_b y_b, the vector y~ with
    y~_j = N and y~_b = D y_b satisfies J(y~) = D^2 J(y) on the quadric, so
    the cleared commutator is the polynomial matrix [J(x), J(y~)].
    """
    m = model.dim
    G = model.G
    if model.is_flat():
        return PropertyReport(_name, True, notes="flat")
    x = cm.symbolic_vector(m, "x")
    y = cm.symbolic_vector(m, "y")
    j = _elimination_index(G)
    Gx = G @ x
    D = Gx[j]
    N = Polynomial()
    for b in range(m):
        if b != j:
            N = N - Gx[b] * y[b]
    yt = np.empty(m, dtype=object)
    for b in range(m):
        yt[b] = N if b == j else D * y[b]
    Jx = _poly_matrix(cm.jacobi(model, x))
    Jy = _poly_matrix(cm.jacobi(model, yt))
    C = Jx @ Jy - Jy @ Jx
    if is_zero_matrix(C):
        note = f"cleared commutator vanishes after eliminating y{j + 1}"
        if m == 2:
            note += "; in dimension 2 orthogonal pairs span complementary lines"
        return PropertyReport(_name, True, notes=note)
    # concrete orthogonal rational pair
    rng = random.Random(1234)
    for _ in range(2000):
        xv = np.array([Fraction(rng.randint(-2, 2)) for _ in range(m)], dtype=object)
        Gxv = G @ xv
        if not Gxv[j]:
            continue
        yv = np.array([Fraction(rng.randint(-2, 2)) for _ in range(m)], dtype=object)
        yv[j] = Fraction(0)
        yv[j] = -(Gxv @ yv) / Gxv[j]
        if not _commutes(cm.jacobi(model, xv), cm.jacobi(model, yv)):
            return PropertyReport(_name, False, {"vectors": {"x": _vec_out(xv), "y": _vec_out(yv)}},
                                  "nonzero commutator at an orthogonal rational pair")
    return PropertyReport(_name, False, None, "cleared commutator is a nonzero polynomial")


def check_conformal_variant(model: Model, orthogonal_only: bool) -> PropertyReport:
    if model.dim < 3:
        raise ValueError("conformal variants need dimension at least 3")
    W = cm.weyl_model(model)
    if orthogonal_only:
        return check_orthogonal_jacobi_tsankov(W, "orthogonal_conformal_jacobi_tsankov")
    rep = check_commuting(W, "jacobi_tsankov")
    rep.property = "conformal_jacobi_tsankov"
    return rep


# ---------------------------------------------------------------------------
# commutation of curvature and Jacobi operators with a self-adjoint operator


def check_commutes_T(model: Model, T) -> tuple[bool, bool, bool]:
    T = as_matrix(T)
    if not cm.is_self_adjoint(model, T):
        raise ValueError("T is not self-adjoint for the model's inner product")
    m = model.dim
    sp, jp = skew_pairs(m), sym_pairs(m)
    c1 = all(_commutes(model.skew_family[a, b], T) for a, b in sp)
    c2 = all(_commutes(model.polarized[a, b], T) for a, b in jp)
    R = model.R
    # R(T e_i, ...) = sum_p T[p, i] R[p, ...]
    r1 = qeinsum("pjkl,pi->ijkl", R, T)
    r2 = qeinsum("ipkl,pj->ijkl", R, T)
    r3 = qeinsum("ijpl,pk->ijkl", R, T)
    r4 = qeinsum("ijkp,pl->ijkl", R, T)
    flat = lambda t: t.reshape(m, -1)
    c3 = (mat_equal(flat(r1), flat(r2)) and mat_equal(flat(r2), flat(r3))
          and mat_equal(flat(r3), flat(r4)))
    return c1, c2, c3


# ---------------------------------------------------------------------------
# Osserman


def _norm_poly(model: Model, x) -> Polynomial:
    q = Polynomial()
    G = model.G
    m = model.dim
    for i in range(m):
        for j in range(m):
            if G[i, j]:
                q = q + x[i] * x[j] * G[i, j]
    return q


def osserman_report(model: Model, which: str = "jacobi") -> OssermanReport:
    if which not in ("jacobi", "conformal"):
        raise ValueError("which must be 'jacobi' or 'conformal'")
    target = model if which == "jacobi" else cm.weyl_model(model)
    m = model.dim
    x = cm.symbolic_vector(m, "x")
    J = _poly_matrix(cm.jacobi(target, x))
    coeffs = [Polynomial.coerce(c) for c in char_poly_coefficients(J)]
    q = _norm_poly(model, x)
    mus = []
    for k, ck in enumerate(coeffs, start=1):
        qk = q ** k
        lm = leading_monomial(qk)
        mu = ck.terms.get(lm, Fraction(0)) / qk.terms[lm]
        resid = ck - qk * mu
        if resid:
            return OssermanReport(which, False, None, all(not c for c in coeffs), k, resid.render())
        mus.append(mu)
    return OssermanReport(which, True, mus, all(mu == 0 for mu in mus))


def char_poly_at(model: Model, x, which: str = "jacobi") -> UniPoly:
    target = model if which == "jacobi" else cm.weyl_model(model)
    return char_poly(cm.jacobi(target, as_matrix([list(x)]).reshape(-1)))


# ---------------------------------------------------------------------------
# J(x)^2 = 0


_PERMS4 = list(itertools.permutations(range(4)))


def jacobi_square_zero(model: Model) -> PropertyReport:
    """J(x)^2 = sum x^a x^b x^c x^d J_ab J_cd; each monomial coefficient must vanish."""
    m = model.dim
    _, jp, _, J, _ = _families(model)
    full = np.zeros((m, m) + J.shape[1:], dtype=J.dtype)
    for n, (a, b) in enumerate(jp):
        full[a, b] = J[n]
        full[b, a] = J[n]
    P = np.einsum("abij,cdjk->abcdik", full, full)
    S = sum(P.transpose(p + (4, 5)) for p in _PERMS4)
    nz = np.argwhere(np.any(S.reshape(m, m, m, m, -1) != 0, axis=-1))
    if len(nz) == 0:
        return PropertyReport("jacobi_square_zero", True,
                              notes="all symmetrized products J_ab J_cd vanish")
    idx = tuple(int(i) for i in nz[0])
    rng = random.Random(7)
    for _ in range(500):
        xv = np.array([Fraction(rng.randint(-3, 3)) for _ in range(m)], dtype=object)
        Jx = cm.jacobi(model, xv)
        if not is_zero_matrix(Jx @ Jx):
            return PropertyReport("jacobi_square_zero", False,
                                  {"indices": [i + 1 for i in idx], "vectors": {"x": _vec_out(xv)}},
                                  "J(x)^2 is nonzero at x")
    return PropertyReport("jacobi_square_zero", False, {"indices": [i + 1 for i in idx]})


def jacobi_product_witness(model: Model):
    """Vectors x, y with J(x) J(y) != 0, or None when all such products vanish."""
    m = model.dim
    _, jp, _, J, _ = _families(model)
    for i in range(len(jp)):
        prods = np.matmul(J[i], J)
        nz = np.flatnonzero(np.any(prods.reshape(len(jp), -1) != 0, axis=1))
        if len(nz):
            ab, cd = jp[i], jp[int(nz[0])]
            w = _witness_vectors_jacobi(model, ab, cd, lambda x, y: (cm.jacobi(model, x), cm.jacobi(model, y)))
            # commutator grid may miss a nonzero product; search products directly
            e = np.eye(m, dtype=object) * Fraction(1)
            for s, t in itertools.product((0, 1, 2), repeat=2):
                x = e[ab[1]] + s * e[ab[0]] if ab[0] != ab[1] else e[ab[0]]
                y = e[cd[1]] + t * e[cd[0]] if cd[0] != cd[1] else e[cd[0]]
                if not is_zero_matrix(cm.jacobi(model, x) @ cm.jacobi(model, y)):
                    return x, y
            return w
    return None


# ---------------------------------------------------------------------------
# Ricci spectral properties


def pseudo_einstein(model: Model) -> PropertyReport:
    rho = cm.ricci(model)
    if not all(isinstance(x, Fraction) for x in rho.flat):
        raise ValueError("pseudo_einstein needs a rational model; evaluate the chart at a point")
    lead, facs = factor_rational(char_poly(rho))
    text = render_factored(lead, facs)
    if len(facs) == 1:
        f, _ = facs[0]
        if f.degree == 1:
            return PropertyReport("pseudo_einstein", True, {"char_poly": text}, "single real eigenvalue")
        if f.degree == 2:
            c0, c1, _ = f.coeffs
            if c1 * c1 - 4 * c0 < 0:
                return PropertyReport("pseudo_einstein", True, {"char_poly": text},
                                      "one complex-conjugate pair")
    return PropertyReport("pseudo_einstein", False, {"char_poly": text},
                          "Ricci operator has several eigenvalue classes")


def is_einstein(model: Model) -> bool:
    rho = cm.ricci(model)
    c = rho[0, 0]
    return all((rho[i, j] == (c if i == j else 0)) for i in range(model.dim) for j in range(model.dim))


def restrict(model: Model, basis: Sequence) -> Model:
    """Sub-model on span(basis), expressed in that basis."""
    B = np.column_stack(list(basis))
    G = B.T @ model.G @ B
    R = model.R
    for axis in range(4):
        R = qdot(R, B, axes=([0], [0]))
    return Model(GramForm(G), R)


def transform(model: Model, P) -> Model:
    """The same model in the basis given by the columns of P."""
    return restrict(model, [P[:, j] for j in range(P.shape[1])])


def _verify_blocks(model: Model, blocks: list) -> str | None:
    """None when the blocks are orthogonal and R has no cross components."""
    P = np.column_stack([v for b in blocks for v in b])
    if rank(P) != model.dim:
        return "blocks do not span V"
    G =P.T @ model.G @ P
    R = model.R
    for _ in range(4):
        R = qdot(R, P, axes=([0], [0]))
    label = []
    for n, b in enumerate(blocks):
        label += [n] * len(b)
    m = model.dim
    for i in range(m):
        for j in range(m):
            if label[i] != label[j] and G[i, j]:
                return f"blocks {label[i]} and {label[j]} are not orthogonal"
    for idx, x in np.ndenumerate(R):
        if x and len({label[k] for k in idx}) > 1:
            return f"cross curvature component at {tuple(k + 1 for k in idx)}"
    return None


def ricci_jordan_split(model: Model) -> SplitReport:
    if not check_commuting(model, "jacobi_videv").holds:
        raise ValueError("ricci_jordan_split requires a Jacobi-Videv model")
    rho = cm.ricci(model)
    if not all(isinstance(x, Fraction) for x in rho.flat):
        raise ValueError("non-rational Ricci operator; evaluate at a point first")
    _, facs = factor_rational(char_poly(rho))
    blocks = []
    for f, mult in facs:
        ker = nullspace((f ** mult)(rho))
        blocks.append(ker)
    resid = _verify_blocks(model, blocks)
    subs = [(b, restrict(model, b)) for b in blocks]
    return SplitReport(subs, resid is None, resid)


# ---------------------------------------------------------------------------
# skew-Tsankov splitting for definite inner products


def _split_by(subspaces: list, ops: list) -> list:
    """Refine subspaces into primary components of commuting operators over Q."""
    out = []
    for W in subspaces:
        parts = [W]
        for X in ops:
            nxt = []
            for U in parts:
                if len(U) <= 1:
                    nxt.append(U)
                    continue
                B = np.column_stack(U)
                # matrix of X on span(U): solve B C = X B
                XB = X @ B
                C = _coords(B, XB)
                _, facs = factor_rational(char_poly(C))
                if len(facs) == 1:
                    nxt.append(U)
                    continue
                for f, mult in facs:
                    ker = nullspace((f ** mult)(C))
                    nxt.append([B @ v for v in ker])
            parts = nxt
        out.extend(parts)
    return out


def _coords(B: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """C with B C = Y for B of full column rank."""
    BtB = B.T @ B
    return invert(BtB) @ (B.T @ Y)


def _invariant(U: list, ops: list) -> bool:
    B = np.column_stack(U)
    r = rank(B)
    for X in ops:
        if rank(np.column_stack([B, X @ B])) != r:
            return False
    return True


def _numeric_planes(U: list, ops: list, G: np.ndarray, rng: random.Random):
    """Common invariant 2-planes inside span(U) by a numeric eigen split, rationalised."""
    import mpmath

    with mpmath.workdps(50):
        B = np.column_stack(U)
        k = B.shape[1]
        A = zeros(B.shape[0])
        for X in ops:
            A = A + X * Fraction(rng.randint(1, 97), rng.randint(1, 13))
        C = _coords(B, A @ B)
        Cm = mpmath.matrix([[mpmath.mpf(x.numerator) / x.denominator for x in row] for row in C])
        ev, er = mpmath.eig(Cm)
        planes = []
        used = [False] * k
        for i in range(k):
            if used[i] or mpmath.im(ev[i]) <= 1e-30:
                continue
            used[i] = True
            v = er[:, i]
            re = [mpmath.re(v[j]) for j in range(k)]
            im = [mpmath.im(v[j]) for j in range(k)]
            plane = []
            for comp in (re, im):
                big = max(comp, key=lambda t: abs(t))
                if abs(big) < 1e-30:
                    return None
                q = [Fraction(str(mpmath.nstr(t / big, 40))).limit_denominator(10 ** 6) for t in comp]
                plane.append(B @ np.array(q, dtype=object))
            planes.append(plane)
        return planes


def skew_commutant_split(model: Model, seed: int = 0) -> SplitReport:
    m = model.dim
    sig = model.gram.signature
    if sig not in ((0, m), (m, 0)):
        raise ValueError("skew_commutant_split needs a definite inner product")
    if not check_commuting(model, "skew_tsankov").holds:
        raise ValueError("skew_commutant_split requires a skew-Tsankov model")
    ops = [model.skew_family[a, b] for a, b in skew_pairs(m)]
    ops = [X for X in ops if not is_zero_matrix(X)]
    e = np.eye(m, dtype=object) * Fraction(1)
    full = [e[i] for i in range(m)]
    if not ops:
        return SplitReport([(full, model)], True)
    # common kernel
    K = nullspace(np.vstack(ops))
    img = column_space([X[:, j] for X in ops for j in range(m)])
    sq = [X @ X for X in ops]
    prods = [ops[i] @ ops[j] for i in range(len(ops)) for j in range(i + 1, len(ops))]
    comps = _split_by([img], sq + prods)
    rng = random.Random(seed)
    blocks = []
    exact = True
    resid = None
    for U in comps:
        if len(U) == 2:
            blocks.append(U)
            continue
        # look for a rational plane span(v, X v) invariant under the family
        found = []
        rest = list(U)
        while rest:
            plane = None
            B = np.column_stack(rest)
            for j in range(B.shape[1]):
                v = B[:, j]
                for X in ops:
                    w = X @ v
                    if rank(np.column_stack([v, w])) == 2 and _invariant([v, w], ops):
                        plane = [v, w]
                        break
                if plane:
                    break
            if plane is None:
                break
            found.append(plane)
            # orthogonal complement within span(rest)
            Bp = np.column_stack(plane)
            comp = nullspace((Bp.T @ model.G) @ B)
            rest = [B @ c for c in comp]
        if rest:
            planes = _numeric_planes(rest, ops, model.G, rng)
            ok = planes is not None and sum(len(p) for p in planes) == len(rest) and \
                all(_invariant(p, ops) for p in planes)
            if ok:
                found.extend(planes)
            else:
                exact = False
                resid = f"no verified rational invariant planes in a block of dimension {len(rest)}"
                found.append(rest)
        blocks.extend(found)
    if K:
        blocks.append(K)
    if exact:
        r = _verify_blocks(model, blocks)
        if r is not None:
            exact, resid = False, r
    return SplitReport([(b, restrict(model, b)) for b in blocks], exact, resid)


# ---------------------------------------------------------------------------
# nilpotency of curvature operators


def _image_basis(ops: list, m: int) -> list:
    cols = [X[:, j] for X in ops for j in range(m)]
    cols = [c for c in cols if any(c)]
    return column_space(cols) if cols else []


def three_skew_nilpotent(model: Model) -> PropertyReport:
    m = model.dim
    ops = [model.skew_family[a, b] for a, b in skew_pairs(m)]
    im1 = _image_basis(ops, m)
    if not im1:
        return PropertyReport("three_skew_nilpotent", False, notes="all curvature operators vanish")
    B1 = np.column_stack(im1)
    im2 = _image_basis([X @ B1 for X in ops], len(im1))
    if not im2:
        return PropertyReport("three_skew_nilpotent", False,
                              notes="all products R(e_a,e_b)R(e_c,e_d) vanish")
    B2 = np.column_stack(im2)
    for (a, b), X in zip(skew_pairs(m), ops):
        if not is_zero_matrix(X @ B2):
            return PropertyReport("three_skew_nilpotent", False, {"indices": [a + 1, b + 1]},
                                  "a triple product of curvature operators is nonzero")
    return PropertyReport("three_skew_nilpotent", True,
                          {"image_dims": [len(im1), len(im2)]},
                          "double products nonzero, triple products vanish")


def curvature_image_isotropy(model: Model) -> PropertyReport:
    m = model.dim
    ops = [model.skew_family[a, b] for a, b in skew_pairs(m)]
    im = _image_basis(ops, m)
    if not im:
        return PropertyReport("curvature_image_isotropy", True, {"image_dim": 0}, "image is zero")
    B = np.column_stack(im)
    if not is_zero_matrix(B.T @ model.G @ B):
        return PropertyReport("curvature_image_isotropy", False, {"image_dim": len(im)},
                              "curvature image is not totally isotropic")
    for (a, b), X in zip(skew_pairs(m), ops):
        if not is_zero_matrix(X @ B):
            return PropertyReport("curvature_image_isotropy", False,
                                  {"image_dim": len(im), "indices": [a + 1, b + 1]},
                                  "some R(e_a,e_b)R(e_c,e_d) is nonzero")
    return PropertyReport("curvature_image_isotropy", True, {"image_dim": len(im)},
                          "image totally isotropic and annihilated by every R(e_a,e_b)")


# ---------------------------------------------------------------------------
# higher order Jacobi operators


def higher_jacobi_commute(model: Model, basis: Sequence) -> PropertyReport:
    basis = [as_matrix([list(v)]).reshape(-1) for v in basis]
    Jp = cm.higher_jacobi(model, basis)
    perp = cm.orthogonal_complement(model, basis) if basis else []
    if len(basis) == model.dim:
        perp = []
    elif not basis:
        perp = [np.eye(model.dim, dtype=object)[i] * Fraction(1) for i in range(model.dim)]
    Jq = cm.higher_jacobi(model, perp)
    ok = _commutes(Jp, Jq)
    return PropertyReport("higher_jacobi_commute", ok,
                          None if ok else {"plane": [_vec_out(v) for v in basis]},
                          "J(pi) and J(pi-perp) commute" if ok else "J(pi) and J(pi-perp) do not commute")


def subspace_signature(model: Model, basis: Sequence) -> tuple[int, int]:
    B = np.column_stack(list(basis))
    return GramForm(B.T @ model.G @ B).signature


def random_subspace(model: Model, k: int, rng: random.Random, signature=None, tries: int = 500):
    """Random nondegenerate k-dimensional subspace spanned by small integer vectors."""
    m = model.dim
    for _ in range(tries):
        vs = [np.array([Fraction(rng.randint(-3, 3)) for _ in range(m)], dtype=object) for _ in range(k)]
        B = np.column_stack(vs)
        if rank(B) < k:
            continue
        H = B.T @ model.G @ B
        if nullspace(H):
            continue
        if signature is not None and GramForm(H).signature != tuple(signature):
            continue
        return vs
    raise RuntimeError("no nondegenerate subspace found")


def admissible_pairs(model: Model) -> list[tuple[int, int]]:
    p, q = model.gram.signature
    m = model.dim
    return [(r, s) for r in range(p + 1) for s in range(q + 1) if 1 <= r + s <= m - 1]


def all_properties(model: Model) -> dict:
    """Pointwise verdicts used by the CLI and corpus."""
    out = {}
    for k in COMMUTING_KINDS:
        out[k] = check_commuting(model, k)
    out["jacobi_square_zero"] = jacobi_square_zero(model)
    out["three_skew_nilpotent"] = three_skew_nilpotent(model)
    out["curvature_image_isotropy"] = curvature_image_isotropy(model)
    return out
