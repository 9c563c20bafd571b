"""Exact linear algebra over Q and over the RatExpr field.

Matrices are numpy arrays of dtype ``object`` holding exact scalars
(:class:`~fractions.Fraction`, :class:`~curvops.symkernel.Polynomial` or
:class:`~curvops.symkernel.RatExpr`).  numpy supplies shape handling and
object-dtype matmul; every arithmetic step stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .symkernel import Polynomial, RatExpr

LAMBDA = "lambda"


class NotSquareError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


class DegenerateFormError(ValueError):
    def __init__(self, radical_dim: int):
        self.radical_dim = radical_dim
        super().__init__(f"degenerate form: radical of dimension {radical_dim}")


# ---------------------------------------------------------------------------
# construction helpers


def _exact(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, Polynomial, RatExpr)):
        return x
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"inexact matrix entry {x!r}")


def as_matrix(rows) -> np.ndarray:
    """Object array of exact entries from nested sequences (ints become Fractions)."""
    if isinstance(rows, np.ndarray) and rows.dtype == object:
        arr = rows
    else:
        arr = np.array(rows, dtype=object)
    if arr.ndim != 2:
        raise ValueError("a matrix must be two-dimensional")
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = _exact(x)
    return out


def as_vector(v) -> np.ndarray:
    arr = np.array(list(v), dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for i, x in enumerate(arr):
        out[i] = _exact(x)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def zeros(n: int, m: int | None = None) -> np.ndarray:
    m = n if m is None else m
    out = np.empty((n, m), dtype=object)
    out.fill(Fraction(0))
    return out


def basis_vector(n: int, i: int) -> np.ndarray:
    v = np.empty(n, dtype=object)
    v.fill(Fraction(0))
    v[i] = Fraction(1)
    return v


def is_zero_matrix(a: np.ndarray) -> bool:
    return not any(a.flat)


def mat_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and is_zero_matrix(a - b)


def _square(a):
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquareError(f"matrix of shape {a.shape} is not square")
    return a.shape[0]


def trace(a: np.ndarray):
    n = _square(a)
    acc = a[0, 0] if n else Fraction(0)
    for i in range(1, n):
        acc = acc + a[i, i]
    return acc


def scalar_identity(c, n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = c
    return out


# ---------------------------------------------------------------------------
# elimination


def _cost(x) -> int:
    if isinstance(x, Fraction):
        return 0
    if isinstance(x, Polynomial):
        return 0 if x.is_constant() else len(x.terms)
    if isinstance(x, RatExpr):
        if x.is_constant():
            return 0
        return len(x.num.terms) + sum(len(f.terms) * e for f, e in x.factors)
    return 1


def _to_field(x):
    return RatExpr(x) if isinstance(x, Polynomial) else x


def row_echelon(a: np.ndarray):
    """Reduced row echelon form; returns (rref, pivot columns)."""
    m = np.array([[_to_field(x) for x in row] for row in a], dtype=object).reshape(a.shape)
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        cands = [i for i in range(r, rows) if m[i, c]]
        if not cands:
            continue
        p = min(cands, key=lambda i: _cost(m[i, c]))
        if p != r:
            m[[r, p]] = m[[p, r]]
        pv = m[r, c]
        if not (isinstance(pv, Fraction) and pv == 1):
            inv = Fraction(1) / pv if isinstance(pv, Fraction) else RatExpr(1) / pv
            for j in range(c, cols):
                if m[r, j]:
                    m[r, j] = m[r, j] * inv
        for i in range(rows):
            if i != r and m[i, c]:
                f = m[i, c]
                for j in range(c, cols):
                    if m[r, j]:
                        m[i, j] = m[i, j] - f * m[r, j]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return len(row_echelon(a)[1])


def nullspace(a: np.ndarray) -> list[np.ndarray]:
    """Basis of {v : a v = 0}, one vector per free column."""
    rows, cols = a.shape
    if rows == 0:
        return [basis_vector(cols, j) for j in range(cols)]
    red, piv = row_echelon(a)
    free = [j for j in range(cols) if j not in piv]
    out = []
    for f in free:
        v = np.empty(cols, dtype=object)
        v.fill(Fraction(0))
        v[f] = Fraction(1)
        for r, pc in enumerate(piv):
            v[pc] = -red[r, f]
        out.append(v)
    return out


def column_space(vectors: Sequence[np.ndarray]) -> list[np.ndarray]:
    """An independent subset spanning the same space (exact)."""
    if not vectors:
        return []
    a = np.column_stack(vectors)
    _, piv = row_echelon(a)
    return [vectors[j] for j in piv]


def invert(a: np.ndarray) -> np.ndarray:
    """Exact inverse over Q or the RatExpr field."""
    n = _square(a)
    aug = np.empty((n, 2 * n), dtype=object)
    aug[:, :n] = a
    aug[:, n:] = identity(n)
    red, piv = row_echelon(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise SingularMatrixError("matrix is singular")
    return red[:, n:]


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return invert(a) @ b


def det(a: np.ndarray):
    n = _square(a)
    if n == 0:
        return Fraction(1)
    cp = char_poly(a)
    c0 = cp.coeffs[0]
    return c0 if n % 2 == 0 else -c0


# ---------------------------------------------------------------------------
# univariate polynomials


def _zero_like(c):
    if isinstance(c, Polynomial):
        return Polynomial()
    if isinstance(c, RatExpr):
        return RatExpr()
    return Fraction(0)


@dataclass(frozen=True)
class UniPoly:
    """Polynomial in one variable; coeffs[k] multiplies lambda**k."""

    coeffs: tuple

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_roots(cls, roots) -> "UniPoly":
        out = cls((Fraction(1),))
        for r in roots:
            out = out * cls((-Fraction(r), Fraction(1)))
        return out

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "UniPoly":
        lc = self.coeffs[-1]
        return UniPoly(tuple(c / lc for c in self.coeffs))

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if not self.coeffs or not other.coeffs:
            return UniPoly(())
        out = [_zero_like(self.coeffs[0])] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(tuple(out))

    def __pow__(self, n: int) -> "UniPoly":
        out = UniPoly((Fraction(1),))
        for _ in range(n):
            out = out * self
        return out

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return UniPoly(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return UniPoly(tuple(x - y for x, y in zip(a, b)))

    def divmod(self, other: "UniPoly"):
        """Division with remainder over a field of rationals."""
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(()), self
        quot = [Fraction(0)] * (dq + 1)
        lc = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lc
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return UniPoly(tuple(quot)), UniPoly(tuple(rem[: len(other.coeffs) - 1]))

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while b.coeffs:
            a, b = b, a.divmod(b)[1]
        return a.monic() if a.coeffs else a

    def lcm(self, other: "UniPoly") -> "UniPoly":
        g = self.gcd(other)
        return (self * other).divmod(g)[0].monic()

    def divides(self, other: "UniPoly") -> bool:
        return not other.divmod(self)[1].coeffs

    def __call__(self, a):
        """Horner evaluation at a scalar or a square matrix."""
        if isinstance(a, np.ndarray):
            n = _square(a)
            acc = zeros(n, n)
            for c in reversed(self.coeffs):
                acc = acc @ a + scalar_identity(c, n)
            return acc
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def to_polynomial(self, var: str = LAMBDA) -> Polynomial:
        x = Polynomial.var(var)
        acc = Polynomial()
        for k, c in enumerate(self.coeffs):
            if c:
                acc = acc + Polynomial.coerce(c) * x ** k
        return acc

    @classmethod
    def from_polynomial(cls, p: Polynomial, var: str = LAMBDA) -> "UniPoly":
        if p.variables() - {var}:
            raise ValueError(f"not univariate in {var}: {p}")
        deg = max(p.degree(), 0)
        cs = [Fraction(0)] * (deg + 1)
        for m, c in p.terms.items():
            cs[dict(m).get(var, 0)] = c
        return cls(tuple(cs))

    def render(self, var: str = LAMBDA) -> str:
        return self.to_polynomial(var).render([var])

    def __str__(self) -> str:
        return self.render()


def char_poly(a: np.ndarray) -> UniPoly:
    """det(lambda*I - a) by the Faddeev-LeVerrier trace recursion.

    Only divisions by the integers 1..n occur, so this works over any
    Q-algebra, including polynomial rings.
    """
    a = np.asarray(a, dtype=object)
    n = _square(a)
    coeffs = [None] * (n + 1)
    coeffs[n] = Fraction(1)
    m = zeros(n, n)
    for k in range(1, n + 1):
        m = a @ m if k > 1 else m
        c = coeffs[n - k + 1]
        for i in range(n):
            m[i, i] = m[i, i] + c
        am = a @ m
        coeffs[n - k] = -trace(am) * Fraction(1, k)
    return UniPoly(tuple(coeffs))


def char_poly_coefficients(a: np.ndarray) -> list:
    """Elementary symmetric functions e_1..e_n of the eigenvalues of a."""
    cp = char_poly(a)
    n = a.shape[0]
    cs = list(cp.coeffs) + [Fraction(0)] * (n + 1 - len(cp.coeffs))
    return [cs[n - k] * (-1) ** k for k in range(1, n + 1)]


def _krylov_min_poly(a: np.ndarray, v: np.ndarray) -> UniPoly:
    vecs = [v]
    while True:
        nxt = a @ vecs[-1]
        k = len(vecs)
        mat = np.column_stack(vecs + [nxt])
        ns = nullspace(mat)
        if ns:
            c = ns[0]
            lead = c[k]
            return UniPoly(tuple(x / lead for x in c))
        vecs.append(nxt)


def minimal_poly(a: np.ndarray) -> UniPoly:
    """Monic minimal polynomial: lcm of Krylov minimal polynomials of basis vectors."""
    a = as_matrix(a)
    n = _square(a)
    out = UniPoly((Fraction(1),))
    for i in range(n):
        if out.degree == n:
            break
        p = _krylov_min_poly(a, basis_vector(n, i))
        out = out.lcm(p)
    return out


def power_ranks(a: np.ndarray, kmax: int) -> tuple[int, ...]:
    """(rank a, rank a^2, ..., rank a^kmax)."""
    a = np.asarray(a, dtype=object)
    _square(a)
    out = []
    p = a
    for k in range(1, kmax + 1):
        if k > 1:
            p = p @ a
        out.append(rank(p))
    return tuple(out)


# ---------------------------------------------------------------------------
# symmetric forms


def signature(g) -> tuple[int, int]:
    """(p, q): counts of negative and positive squares under congruence."""
    g = as_matrix(g)
    n = _square(g)
    if not mat_equal(g, g.T):
        raise ValueError("form is not symmetric")
    m = g.copy()
    neg = pos = 0
    radical = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i, i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and m[i, j]), None)
            if pair is None:
                radical += len(active)
                break
            i, j = pair
            # e_i <- e_i + e_j makes the diagonal entry 2 m_ij != 0
            m[i, :] = m[i, :] + m[j, :]
            m[:, i] = m[:, i] + m[:, j]
            piv = i
        d = m[piv, piv]
        if d < 0:
            neg += 1
        else:
            pos += 1
        active.remove(piv)
        for r in active:
            if m[r, piv]:
                f = m[r, piv] / d
                m[r, :] = m[r, :] - f * m[piv, :]
                m[:, r] = m[:, r] - f * m[:, piv]
    if radical:
        raise DegenerateFormError(radical)
    return neg, pos


@dataclass(frozen=True)
class GramForm:
    """A symmetric rational bilinear form with its cached signature."""

    matrix: np.ndarray = field(compare=False)
    signature: tuple[int, int] | None = None
    degenerate: bool = False

    def __init__(self, matrix, allow_degenerate: bool = False):
        m = as_matrix(matrix)
        if not all(isinstance(x, Fraction) for x in m.flat):
            raise TypeError("Gram entries must be rational")
        if not mat_equal(m, m.T):
            raise ValueError("Gram matrix is not symmetric")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        try:
            sig = signature(m)
            deg = False
        except DegenerateFormError:
            if not allow_degenerate:
                raise
            sig, deg = None, True
        object.__setattr__(self, "signature", sig)
        object.__setattr__(self, "degenerate", deg)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def inverse(self) -> np.ndarray:
        inv = self.__dict__.get("_inv")
        if inv is None:
            inv = invert(self.matrix)
            inv.setflags(write=False)
            object.__setattr__(self, "_inv", inv)
        return inv

    def inner(self, x, y):
        return x @ self.matrix @ y

    def __eq__(self, other):
        return isinstance(other, GramForm) and mat_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(tuple(self.matrix.flat))


# ---------------------------------------------------------------------------
# factorisation and spectral profiles


def factor_rational(p: UniPoly) -> tuple[Fraction, list[tuple[UniPoly, int]]]:
    """Factor over Q into monic irreducibles: (leading coefficient, [(factor, mult)])."""
    import sympy

    if not p.coeffs:
        raise ValueError("cannot factor the zero polynomial")
    x = sympy.Symbol("x")
    sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)],
                    x, domain="QQ")
    content, facs = sp.factor_list()
    out = []
    lead = Fraction(int(sympy.numer(content)), int(sympy.denom(content)))
    for f, mult in facs:
        cs = [Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in reversed(f.all_coeffs())]
        u = UniPoly(tuple(cs))
        lead *= u.coeffs[-1] ** mult
        out.append((u.monic(), mult))
    out.sort(key=lambda fm: (fm[0].degree, [c for c in fm[0].coeffs]))
    return lead, out


def render_factored(lead: Fraction, factors, var: str = LAMBDA) -> str:
    parts = []
    for f, mult in factors:
        body = f.render(var)
        if len([c for c in f.coeffs if c]) > 1:
            body = f"({body})"
        parts.append(body if mult == 1 else f"{body}^{mult}")
    s = "*".join(parts) if parts else "1"
    if lead != 1:
        s = f"{lead}*{s}"
    return s


@dataclass(frozen=True)
class SpectralProfile:
    """Exact spectral data of one operator at one point."""

    char_poly: UniPoly
    minimal_poly: UniPoly
    power_ranks: tuple[int, ...]
    factors: tuple[tuple[UniPoly, int], ...]
    factor_ranks: tuple[tuple[int, ...], ...]

    @property
    def factored(self) -> str:
        return render_factored(Fraction(1), self.factors)

    @property
    def is_nilpotent(self) -> bool:
        return all(f.coeffs == (0, 1) for f, _ in self.factors)

    def as_dict(self) -> dict:
        return {
            "char_poly": self.char_poly.render(),
            "char_poly_factored": self.factored,
            "minimal_poly": self.minimal_poly.render(),
            "minimal_poly_factored": render_factored(Fraction(1), factor_rational(self.minimal_poly)[1]),
            "power_ranks": list(self.power_ranks),
            "factors": [{"factor": f.render(), "multiplicity": k, "power_ranks": list(r)}
                        for (f, k), r in zip(self.factors, self.factor_ranks)],
        }

    def render(self) -> str:
        d = self.as_dict()
        lines = [
            f"characteristic polynomial: {d['char_poly_factored']}",
            f"minimal polynomial:        {d['minimal_poly_factored']}",
            f"power ranks:               {', '.join(map(str, self.power_ranks))}",
        ]
        for item in d["factors"]:
            lines.append(f"  factor {item['factor']} (multiplicity {item['multiplicity']}): "
                         f"ranks {item['power_ranks']}")
        return "\n".join(lines)


def spectral_profile(a, gram: GramForm | None = None) -> SpectralProfile:
    """Characteristic and minimal polynomials, power ranks, factor-image ranks.

    gram is accepted for interface symmetry; the profile itself is basis-free.
    """
    a = as_matrix(a)
    n = _square(a)
    if not all(isinstance(x, Fraction) for x in a.flat):
        raise TypeError("spectral profiles need rational entries; evaluate at a point first")
    cp = char_poly(a)
    mp = minimal_poly(a)
    _, facs = factor_rational(cp)
    franks = []
    for f, mult in facs:
        fa = f(a)
        franks.append(power_ranks(fa, mult))
    return SpectralProfile(cp, mp, power_ranks(a, n), tuple(facs), tuple(franks))


# ---------------------------------------------------------------------------
# batched exact commutation tests


_INT64_SAFE = 1 << 62


def _scaled(a: np.ndarray):
    """(integer array, denominator) with a == ints / den, or None if a is not rational."""
    den = 1
    for x in a.flat:
        if isinstance(x, int):
            continue
        if not isinstance(x, Fraction):
            return None
        den = math.lcm(den, x.denominator)
    ints = np.empty(a.shape, dtype=object)
    flat = ints.reshape(-1)
    for i, x in enumerate(a.flat):
        flat[i] = int(x * den)
    return ints, den


def qdot(a, b, axes):
    """np.tensordot for rational object arrays, done in integer arithmetic.

    Falls back to the plain object tensordot when either side holds
    non-rational scalars.
    """
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    sa, sb = _scaled(a), _scaled(b)
    if sa is None or sb is None:
        return np.tensordot(a, b, axes=axes)
    (ia, da), (ib, db) = sa, sb
    if isinstance(axes, int):
        ax_a = list(range(a.ndim - axes, a.ndim))
    else:
        ax_a = [axes[0]] if isinstance(axes[0], int) else list(axes[0])
    length = math.prod(a.shape[i] for i in ax_a) or 1
    ma = max((abs(v) for v in ia.flat), default=0)
    mb = max((abs(v) for v in ib.flat), default=0)
    if ma * mb * length < _INT64_SAFE:
        r = np.tensordot(ia.astype(np.int64), ib.astype(np.int64), axes=axes)
    else:
        r = np.tensordot(ia, ib, axes=axes)
    den = da * db
    out = np.empty(r.shape, dtype=object)
    of = out.reshape(-1)
    for i, v in enumerate(r.flat):
        of[i] = Fraction(int(v), den)
    return out


def qeinsum(subscripts: str, *operands):
    """np.einsum over rational object arrays via integer arithmetic (explicit output only)."""
    ops = [np.asarray(o, dtype=object) for o in operands]
    scaled = [_scaled(o) for o in ops]
    if any(x is None for x in scaled):
        return np.einsum(subscripts, *ops)
    lhs, out_idx = subscripts.replace(" ", "").split("->")
    terms = lhs.split(",")
    sizes = {}
    for t, o in zip(terms, ops):
        sizes.update(zip(t, o.shape))
    summed = set("".join(terms)) - set(out_idx)
    length = math.prod(sizes[c] for c in summed) or 1
    bound = length
    den = 1
    for ints, d in scaled:
        bound *= max((abs(v) for v in ints.flat), default=0)
        den *= d
    if bound < _INT64_SAFE:
        r = np.einsum(subscripts, *[i.astype(np.int64) for i, _ in scaled])
    else:
        r = np.einsum(subscripts, *[i for i, _ in scaled])
    out = np.empty(np.shape(r), dtype=object)
    of = out.reshape(-1)
    for i, v in enumerate(np.asarray(r).flat):
        of[i] = Fraction(int(v), den)
    return out


def int_stack(mats: Sequence[np.ndarray]) -> np.ndarray:
    """Stack rational matrices as one integer array, scaled by a common denominator.

    Scaling preserves zero-ness of products and commutators.  int64 is used
    when every entry of every product is guaranteed to fit, else Python ints.
    """
    if not mats:
        return np.zeros((0, 0, 0), dtype=np.int64)
    den = 1
    for m in mats:
        for x in m.flat:
            den = math.lcm(den, x.denominator)
    n = mats[0].shape[0]
    big = 0
    scaled = []
    for m in mats:
        s = [[int(x * den) for x in row] for row in m]
        for row in s:
            for v in row:
                if abs(v) > big:
                    big = abs(v)
        scaled.append(s)
    # a commutator entry is bounded by 2 n big^2; products of three by n^2 big^3
    if 2 * n * n * big ** 3 < _INT64_SAFE:
        return np.array(scaled, dtype=np.int64)
    return np.array(scaled, dtype=object)


def first_noncommuting(xs: np.ndarray, ys: np.ndarray, symmetric: bool = False):
    """Index pair (i, j) with xs[i] ys[j] != ys[j] xs[i], or None.

    With symmetric=True, xs and ys are the same family and only i <= j is checked.
    """
    if len(xs) == 0 or len(ys) == 0:
        return None
    for i in range(len(xs)):
        sub = ys[i:] if symmetric else ys
        off = i if symmetric else 0
        d = np.matmul(xs[i], sub) - np.matmul(sub, xs[i])
        nz = np.flatnonzero(np.any(d.reshape(len(sub), -1) != 0, axis=1))
        if len(nz):
            return i, int(nz[0]) + off
    return None


def first_nonzero_product(xs: np.ndarray, ys: np.ndarray):
    for i in range(len(xs)):
        d = np.matmul(xs[i], ys)
        nz = np.flatnonzero(np.any(d.reshape(len(ys), -1) != 0, axis=1))
        if len(nz):
            return i, int(nz[0])
    return None
