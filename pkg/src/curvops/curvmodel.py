"""Algebraic curvature models and the operators derived from them.

Index conventions
-----------------
``R[i, j, k, l] = R(e_i, e_j, e_k, e_l) = <R(e_i, e_j) e_k, e_l>``.

Operators are matrices acting on column vectors: ``M[a, c]`` is the
``e_a`` coefficient of ``M(e_c)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exactla import (
    GramForm,
    as_matrix,
    identity,
    invert,
    is_zero_matrix,
    mat_equal,
    nullspace,
    qdot,
    trace,
    zeros,
)
from .symkernel import Polynomial


class CurvatureSymmetryError(ValueError):
    def __init__(self, identity: str, index: tuple, residual):
        self.identity = identity
        self.index = index
        self.residual = residual
        idx = ",".join(str(i + 1) for i in index)
        super().__init__(f"{identity} violated at ({idx}): residual {residual}")


class AdjointnessError(ValueError):
    pass


class DegenerateSubspaceError(ValueError):
    def __init__(self, radical: list):
        self.radical = radical
        vecs = "; ".join("(" + ", ".join(str(x) for x in v) + ")" for v in radical)
        super().__init__(f"degenerate subspace: radical spanned by {vecs}")


def _first_nonzero(arr: np.ndarray):
    for idx, x in np.ndenumerate(arr):
        if x:
            return idx, x
    return None


def _zero_table(m: int) -> np.ndarray:
    out = np.empty((m, m, m, m), dtype=object)
    out.fill(Fraction(0))
    return out


def symmetry_defects(R: np.ndarray):
    """First violated identity of an algebraic curvature tensor, or None."""
    checks = (
        ("antisymmetry in the first pair", R + R.transpose(1, 0, 2, 3)),
        ("antisymmetry in the last pair", R + R.transpose(0, 1, 3, 2)),
        ("pair symmetry", R - R.transpose(2, 3, 0, 1)),
        ("first Bianchi identity", R + R.transpose(2, 0, 1, 3) + R.transpose(1, 2, 0, 3)),
    )
    for name, resid in checks:
        hit = _first_nonzero(resid)
        if hit is not None:
            return name, hit[0], hit[1]
    return None


@dataclass(frozen=True, eq=False)
class Model:
    """A model (V, <.,.>, R) in a fixed basis, with R stored densely."""

    gram: GramForm
    R: np.ndarray

    def __post_init__(self):
        m = self.gram.dim
        if self.gram.degenerate:
            raise ValueError("model requires a nondegenerate inner product")
        if self.R.shape != (m, m, m, m):
            raise ValueError(f"curvature table has shape {self.R.shape}, expected {(m,) * 4}")
        bad = symmetry_defects(self.R)
        if bad is not None:
            raise CurvatureSymmetryError(*bad)
        self.R.setflags(write=False)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_entries(cls, gram, entries: Iterable | Mapping) -> "Model":
        """Dense model from nonzero components; the other slots follow by symmetry."""
        g = gram if isinstance(gram, GramForm) else GramForm(gram)
        m = g.dim
        R = _zero_table(m)
        filled: dict[tuple, Fraction] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (i, j, k, l), v in items:
            v = Fraction(v) if not hasattr(v, "is_zero") else v
            for idx, sgn in (((i, j, k, l), 1), ((j, i, k, l), -1), ((i, j, l, k), -1),
                             ((j, i, l, k), 1), ((k, l, i, j), 1), ((l, k, i, j), -1),
                             ((k, l, j, i), -1), ((l, k, j, i), 1)):
                val = v if sgn == 1 else -v
                prev = filled.get(idx)
                if prev is not None and prev != val:
                    raise CurvatureSymmetryError("consistency of listed components", idx, val - prev)
                filled[idx] = val
                R[idx] = val
        return cls(g, R)

    @property
    def dim(self) -> int:
        return self.gram.dim

    @property
    def G(self) -> np.ndarray:
        return self.gram.matrix

    def is_flat(self) -> bool:
        return is_zero_matrix(self.R.reshape(self.dim, -1))

    def equal_components(self, other: "Model") -> bool:
        return (mat_equal(self.G, other.G)
                and mat_equal(self.R.reshape(self.dim, -1), other.R.reshape(other.dim, -1)))

    def nonzero_entries(self) -> list[tuple[tuple[int, int, int, int], object]]:
        """Canonical representatives: i<j, k<l, (i,j)<=(k,l)."""
        out = []
        m = self.dim
        for i, j, k, l in product(range(m), repeat=4):
            if i < j and k < l and (i, j) <= (k, l) and self.R[i, j, k, l]:
                out.append(((i, j, k, l), self.R[i, j, k, l]))
        return out

    # -- cached contractions -------------------------------------------------

    def _cache(self, key, build):
        d = self.__dict__
        val = d.get(key)
        if val is None:
            val = build()
            if isinstance(val, np.ndarray):
                val.setflags(write=False)
            object.__setattr__(self, key, val)
        return val

    @property
    def Rup(self) -> np.ndarray:
        """Rup[i, j, k, a]: e_a coefficient of R(e_i, e_j) e_k."""
        return self._cache("_rup", lambda: qdot(self.R, self.gram.inverse, axes=([3], [0])))

    @property
    def skew_family(self) -> np.ndarray:
        """Matrices of R(e_a, e_b) for all (a, b), shape (m, m, m, m)."""
        return self._cache("_skew", lambda: self.Rup.transpose(0, 1, 3, 2))

    @property
    def polarized(self) -> np.ndarray:
        """J_ab as matrices, shape (m, m, m, m), symmetric in (a, b)."""
        def build():
            up = self.Rup  # [c, a, b, out]
            half = Fraction(1, 2)
            sym = (up + up.transpose(0, 2, 1, 3)) * half
            return sym.transpose(1, 2, 3, 0)
        return self._cache("_pol", build)


# ---------------------------------------------------------------------------
# canonical generators


def _gram(gram) -> GramForm:
    return gram if isinstance(gram, GramForm) else GramForm(gram)


def _pairing(g: GramForm, op) -> np.ndarray:
    """S[i, l] = <op e_i, e_l>."""
    op = as_matrix(op)
    if op.shape != g.matrix.shape:
        raise ValueError("operator and Gram sizes differ")
    return op.T @ g.matrix


def make_Rc(gram, c) -> Model:
    """Constant sectional curvature c."""
    g = _gram(gram)
    G = g.matrix
    c = Fraction(c)
    R = (np.einsum("il,jk->ijkl", G, G) - np.einsum("ik,jl->ijkl", G, G)) * c
    return Model(g, R)


def make_Rpsi(gram, psi) -> Model:
    g = _gram(gram)
    S = _pairing(g, psi)
    if not mat_equal(S, S.T):
        raise AdjointnessError("psi is not self-adjoint for the given inner product")
    R = np.einsum("il,jk->ijkl", S, S) - np.einsum("ik,jl->ijkl", S, S)
    return Model(g, R)


def make_Rphi(gram, phi) -> Model:
    g = _gram(gram)
    S = _pairing(g, phi)
    if not mat_equal(S, -S.T):
        raise AdjointnessError("phi is not skew-adjoint for the given inner product")
    R = (np.einsum("jk,il->ijkl", S, S) - np.einsum("ik,jl->ijkl", S, S)
         - 2 * np.einsum("ij,kl->ijkl", S, S))
    return Model(g, R)


def add_models(*models: Model, weights: Sequence | None = None) -> Model:
    """Linear combination of curvature tensors over one inner product."""
    if not models:
        raise ValueError("nothing to add")
    g = models[0].gram
    weights = weights or [1] * len(models)
    R = _zero_table(g.dim)
    for mdl, w in zip(models, weights):
        if mdl.gram != g:
            raise ValueError("models live on different inner products")
        R = R + mdl.R * Fraction(w)
    return Model(g, R)


def direct_sum(m1: Model, m2: Model) -> Model:
    a, b = m1.dim, m2.dim
    n = a + b
    G = zeros(n)
    G[:a, :a] = m1.G
    G[a:, a:] = m2.G
    R = _zero_table(n)
    R[:a, :a, :a, :a] = m1.R
    R[a:, a:, a:, a:] = m2.R
    return Model(GramForm(G), R)


def complexify(model: Model) -> Model:
    """Realification of the complexified model: basis e_1+..e_m+, e_1-..e_m-.

    The inner product is the real part, the curvature the imaginary part.
    """
    m = model.dim
    if not mat_equal(model.G, identity(m)):
        if model.gram.signature != (0, m):
            raise ValueError("complexify needs a positive definite input")
        raise ValueError("complexify needs an orthonormal basis (identity Gram)")
    G = zeros(2 * m)
    for i in range(m):
        G[i, i] = Fraction(1)
        G[m + i, m + i] = Fraction(-1)
    S = _zero_table(2 * m)
    for signs in product((0, 1), repeat=4):
        minus = sum(signs)
        if minus not in (1, 3):
            continue
        sl = tuple(slice(m * s, m * s + m) for s in signs)
        S[sl] = model.R if minus == 1 else -model.R
    return Model(GramForm(G), S)


# ---------------------------------------------------------------------------
# operators


def _vec(x):
    return np.array(list(x), dtype=object)


def curv_op(model: Model, x, y) -> np.ndarray:
    """Matrix of R(x, y)."""
    up = model.Rup
    t = qdot(_vec(x), up, axes=([0], [0]))
    t = qdot(_vec(y), t, axes=([0], [0]))  # [c, a]
    return t.T


def jacobi(model: Model, x) -> np.ndarray:
    """Matrix of J(x): y -> R(y, x) x."""
    x = _vec(x)
    t = qdot(model.Rup, x, axes=([1], [0]))
    t = qdot(t, x, axes=([1], [0]))  # [c, a]
    return t.T


def ricci_array(R: np.ndarray, Ginv: np.ndarray) -> np.ndarray:
    """Ricci operator matrix from a covariant table; works over any scalar field."""
    up = qdot(R, Ginv, axes=([3], [0]))
    return qdot(up, Ginv, axes=([1, 2], [0, 1])).T.copy()


def weyl_array(R: np.ndarray, G: np.ndarray, Ginv: np.ndarray) -> np.ndarray:
    """Weyl tensor W = R + tau/((m-1)(m-2)) A - 1/(m-2) B.

    A = g(y,z)g(x,w) - g(x,z)g(y,w) and
    B = g(rho y,z)g(x,w) - g(rho x,z)g(y,w) + g(y,z)g(rho x,w) - g(x,z)g(rho y,w).
    """
    m = G.shape[0]
    if m < 3:
        raise ValueError("the Weyl tensor needs dimension at least 3")
    rho = ricci_array(R, Ginv)
    Ric = rho.T @ G
    tau = trace(rho)
    A = np.einsum("jk,il->ijkl", G, G) - np.einsum("ik,jl->ijkl", G, G)
    B = (np.einsum("jk,il->ijkl", Ric, G) - np.einsum("ik,jl->ijkl", Ric, G)
         + np.einsum("jk,il->ijkl", G, Ric) - np.einsum("ik,jl->ijkl", G, Ric))
    return R + A * (tau * Fraction(1, (m - 1) * (m - 2))) - B * Fraction(1, m - 2)


def ricci(model: Model) -> np.ndarray:
    """Matrix of the Ricci operator."""
    return model._cache("_rho", lambda: ricci_array(model.R, model.gram.inverse))


def ricci_tensor(model: Model) -> np.ndarray:
    """Ric[a, b] = <rho e_a, e_b>."""
    return ricci(model).T @ model.G


def scalar_tau(model: Model):
    return trace(ricci(model))


def weyl_model(model: Model) -> Model:
    """Model whose tensor is the Weyl part of R."""
    if model.dim < 3:
        raise ValueError("the Weyl tensor needs dimension at least 3")
    return model._cache("_weyl", lambda: Model(model.gram, weyl_array(model.R, model.G, model.gram.inverse)))


def conformal_jacobi(model: Model, x) -> np.ndarray:
    return jacobi(weyl_model(model), x)


def higher_jacobi(model: Model, basis: Sequence) -> np.ndarray:
    """J(pi) = sum_ab H^ab R(., w_a) w_b, H the Gram of pi; an empty basis gives 0."""
    m = model.dim
    if len(basis) == 0:
        return zeros(m)
    W = np.column_stack([as_matrix([list(w)]).reshape(-1) for w in basis])
    H = W.T @ model.G @ W
    rad = nullspace(H)
    if rad:
        raise DegenerateSubspaceError([W @ v for v in rad])
    K = W @ invert(H) @ W.T
    t = qdot(model.Rup, K, axes=([1, 2], [0, 1]))  # [c, a]
    return t.T.copy()


def orthogonal_complement(model: Model, basis: Sequence) -> list[np.ndarray]:
    if len(basis) == 0:
        return [np.array([Fraction(int(i == j)) for i in range(model.dim)], dtype=object)
                for j in range(model.dim)]
    W = np.column_stack([as_matrix([list(w)]).reshape(-1) for w in basis])
    return nullspace(W.T @ model.G)


@dataclass(frozen=True, eq=False)
class PolarizedJacobi:
    """J(x) = sum_a sum_b x^a x^b J_ab with J_ab = J_ba."""

    J: np.ndarray  # (m, m, m, m); J[a, b] is a matrix

    def assemble(self, x) -> np.ndarray:
        x = _vec(x)
        t = qdot(x, self.J, axes=([0], [0]))
        return qdot(x, t, axes=([0], [0]))

    def __getitem__(self, ab):
        return self.J[ab]


def polarize_jacobi(model: Model) -> PolarizedJacobi:
    return PolarizedJacobi(model.polarized)


def symbolic_vector(m: int, prefix: str = "x") -> np.ndarray:
    return np.array([Polynomial.var(f"{prefix}{i + 1}") for i in range(m)], dtype=object)


def is_self_adjoint(model: Model, op: np.ndarray) -> bool:
    P = op.T @ model.G
    return mat_equal(P, P.T)


def is_skew_adjoint(model: Model, op: np.ndarray) -> bool:
    P = op.T @ model.G
    return mat_equal(P, -P.T)
