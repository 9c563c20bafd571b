"""Exact scalar field: rational functions over Q in coordinate symbols, with exp atoms.

Polynomials are sparse maps from monomials to :class:`~fractions.Fraction`
coefficients.  A monomial is a sorted tuple of ``(generator, power)`` pairs.
Generators are strings: coordinate names, or an exponential atom encoded as
``"~" + rendered exponent``.  The ``~`` prefix sorts after every identifier,
so a monomial carries at most one atom, always in last position, and all
products of atoms are folded into it (``exp(a)*exp(b) -> exp(a+b)``).  That
keeps exp-polynomials in a normal form where equality is coefficientwise.

:class:`RatExpr` stores a numerator polynomial over a *factored* denominator.
Factors are normalised (primitive, leading coefficient 1 under graded-lex
order, monomial content split into single-variable factors) and cancelled by
exact division whenever the numerator changes.  No multivariate GCD is
computed; equality is decided by cross multiplication.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

import mpmath

Rational = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[str, int], ...]

ATOM_PREFIX = "~"
DEFAULT_DPS = int(os.environ.get("CURVOPS_DPS", "64"))

_ONE_MONO: Monomial = ()


class PoleError(ZeroDivisionError):
    """A denominator vanished, identically or at an evaluation point."""


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class UnknownSymbolError(ExprSyntaxError):
    pass


@dataclass(frozen=True, order=True)
class Coordinate:
    """A chart coordinate: a symbol name and its position in the chart ordering."""

    index: int
    name: str

    def __str__(self) -> str:
        return self.name


def _name(c) -> str:
    return c.name if isinstance(c, Coordinate) else c


# ---------------------------------------------------------------------------
# monomials


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    if a[-1][0][0] == ATOM_PREFIX and b[-1][0][0] == ATOM_PREFIX:
        atom = _combine_atoms(a[-1][0], b[-1][0])
        a, b = a[:-1], b[:-1]
        base = _mono_mul(a, b)
        if atom is None:
            return base
        return base + ((atom, 1),)
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_div(a: Monomial, b: Monomial):
    """a / b as a monomial, or None when b does not divide a.

    Exp atoms are units: their exponents simply subtract.
    """
    if not b:
        return a
    atom_a = _mono_atom(a)
    atom_b = _mono_atom(b)
    if atom_a is not None:
        a = a[:-1]
    if atom_b is not None:
        b = b[:-1]
    d = dict(a)
    for v, e in b:
        r = d.get(v, 0) - e
        if r < 0:
            return None
        if r:
            d[v] = r
        else:
            del d[v]
    out = tuple(sorted(d.items()))
    if atom_a is None and atom_b is None:
        return out
    ex = Polynomial()
    if atom_a is not None:
        ex = ex + atom_exponent(atom_a)
    if atom_b is not None:
        ex = ex - atom_exponent(atom_b)
    g = _atom_gen(ex)
    return out if g is None else out + ((g, 1),)


def _mono_degree(m: Monomial) -> int:
    return sum(e for v, e in m if v[0] != ATOM_PREFIX)


def _mono_atom(m: Monomial):
    if m and m[-1][0][0] == ATOM_PREFIX:
        return m[-1][0]
    return None


@lru_cache(maxsize=4096)
def atom_exponent(gen: str) -> "Polynomial":
    """The exponent polynomial of an atom generator string."""
    from .exprparse import _parse_poly_text

    return _parse_poly_text(gen[1:])


def _atom_gen(exponent: "Polynomial"):
    if exponent.is_zero():
        return None
    return ATOM_PREFIX + exponent.render()


def _combine_atoms(g1: str, g2: str):
    return _atom_gen(atom_exponent(g1) + atom_exponent(g2))


# ---------------------------------------------------------------------------
# polynomials


def _coerce_coeff(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class Polynomial:
    """Sparse multivariate polynomial with rational coefficients (immutable)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None, _clean: bool = False):
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            self.terms = {m: _coerce_coeff(c) for m, c in terms.items() if c != 0}
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "Polynomial":
        c = _coerce_coeff(c)
        return cls({_ONE_MONO: c} if c else {}, _clean=True)

    @classmethod
    def var(cls, name) -> "Polynomial":
        return cls({((_name(name), 1),): Fraction(1)}, _clean=True)

    @classmethod
    def exp(cls, exponent: "Polynomial") -> "Polynomial":
        if any(_mono_atom(m) for m in exponent.terms):
            raise ValueError("exp() of an expression containing exp() is not supported")
        gen = _atom_gen(exponent)
        if gen is None:
            return cls.const(1)
        return cls({((gen, 1),): Fraction(1)}, _clean=True)

    @classmethod
    def coerce(cls, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        return cls.const(x)

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        t = self.terms
        return not t or (len(t) == 1 and _ONE_MONO in t)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(_ONE_MONO, Fraction(0))

    def has_atoms(self) -> bool:
        return any(_mono_atom(m) for m in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables(self) -> set[str]:
        out = set()
        for m in self.terms:
            for v, _ in m:
                if v[0] == ATOM_PREFIX:
                    out |= atom_exponent(v).variables()
                else:
                    out.add(v)
        return out

    def degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=-1)

    def degree_in(self, name) -> int:
        name = _name(name)
        return max((dict(m).get(name, 0) for m in self.terms), default=-1)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                other = Polynomial.const(other)
            else:
                return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                other = Polynomial.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = _coerce_coeff(c)
        if not c:
            return Polynomial()
        if c == 1:
            return self
        return Polynomial({m: v * c for m, v in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                return self.scale(other)
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial()
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            if mb == _ONE_MONO:
                return self.scale(cb) if a is self.terms else other.scale(cb)
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = _mono_mul(ma, mb)
                s = get(m)
                out[m] = ca * cb if s is None else s + ca * cb
        return Polynomial({m: c for m, c in out.items() if c}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise PoleError("division by zero")
            return self.scale(Fraction(1) / other)
        return RatExpr(self) / other

    def __rtruediv__(self, other):
        return RatExpr(Polynomial.coerce(other)) / RatExpr(self)

    # comparison / hashing ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({_ONE_MONO: other} if other else {})
        if isinstance(other, RatExpr):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sort_key(self):
        return tuple(sorted(self.terms.items()))

    # calculus -----------------------------------------------------------
    def diff(self, var) -> "Polynomial":
        """Partial derivative; atoms obey d exp(p) = (dp) exp(p)."""
        var = _name(var)
        out: dict = {}
        atom_terms = []
        for m, c in self.terms.items():
            for i, (v, e) in enumerate(m):
                if v == var:
                    if e == 1:
                        nm = m[:i] + m[i + 1:]
                    else:
                        nm = m[:i] + ((v, e - 1),) + m[i + 1:]
                    out[nm] = out.get(nm, 0) + c * e
            atom = _mono_atom(m)
            if atom is not None:
                atom_terms.append((m, c))
        result = Polynomial({k: v for k, v in out.items() if v}, _clean=True)
        for m, c in atom_terms:
            dp = atom_exponent(m[-1][0]).diff(var)
            if dp:
                result = result + Polynomial({m: c}, _clean=True) * dp
        return result

    # evaluation ---------------------------------------------------------
    def evaluate(self, values: Mapping[str, Fraction], dps: int = DEFAULT_DPS):
        """Value at a point; exact Fraction unless an atom has nonzero exponent there."""
        total = Fraction(0)
        numeric = None
        for m, c in self.terms.items():
            t = c
            atom_val = None
            for v, e in m:
                if v[0] == ATOM_PREFIX:
                    ex = atom_exponent(v).evaluate(values)
                    if ex != 0:
                        atom_val = ex
                    continue
                try:
                    val = values[v]
                except KeyError:
                    raise KeyError(f"no value supplied for coordinate {v!r}") from None
                t = t * (val ** e)
            if atom_val is None:
                total += t
            else:
                with mpmath.workdps(dps):
                    contrib = mpmath.mpf(t.numerator) / t.denominator * mpmath.exp(
                        mpmath.mpf(atom_val.numerator) / atom_val.denominator)
                numeric = contrib if numeric is None else numeric + contrib
        if numeric is None:
            return total
        with mpmath.workdps(dps):
            return numeric + mpmath.mpf(total.numerator) / total.denominator

    def partial_evaluate(self, values: Mapping[str, Fraction]) -> "Polynomial":
        """Substitute rational values for some coordinates (atoms must stay exact)."""
        out: dict = {}
        for m, c in self.terms.items():
            t = c
            rest = []
            for v, e in m:
                if v[0] == ATOM_PREFIX:
                    ex = atom_exponent(v).partial_evaluate(values)
                    if ex.is_constant():
                        if ex.constant_value() != 0:
                            raise ValueError("exp atom does not evaluate to a rational here")
                        continue
                    if ex.has_atoms():
                        raise ValueError("nested exp atom")
                    g = _atom_gen(ex)
                    rest.append((g, 1))
                elif v in values:
                    t = t * (values[v] ** e)
                else:
                    rest.append((v, e))
            if not t:
                continue
            key = tuple(sorted(rest))
            out[key] = out.get(key, 0) + t
        return Polynomial({k: v for k, v in out.items() if v}, _clean=True)

    # division -----------------------------------------------------------
    def divexact(self, other: "Polynomial"):
        """Exact quotient self/other, or None if other does not divide self.

        Single-divisor division under graded lex order: the remainder is zero
        iff the divisor divides, so the first undivisible leading term decides.
        """
        if other.is_zero():
            raise PoleError("division by zero polynomial")
        if self.is_zero():
            return Polynomial()
        if other.is_constant():
            return self.scale(Fraction(1) / other.constant_value())
        if other.degree() > self.degree():
            return None
        if len(other.terms) == 1:
            (mo, co), = other.terms.items()
            out = {}
            for m, c in self.terms.items():
                q = _mono_div(m, mo)
                if q is None:
                    return None
                out[q] = c / co
            return Polynomial(out, _clean=True)
        if other.has_atoms():
            return None
        gkey = _order_key([self.terms, other.terms])
        lm_g = max(other.terms, key=gkey)
        lc_g = other.terms[lm_g]
        rem = dict(self.terms)
        quot: dict = {}
        g_rest = [(m, c) for m, c in other.terms.items() if m != lm_g]
        while rem:
            lm = max(rem, key=gkey)
            q = _mono_div(lm, lm_g)
            if q is None:
                return None
            coef = rem[lm] / lc_g
            quot[q] = quot.get(q, 0) + coef
            del rem[lm]
            for m, c in g_rest:
                mm = _mono_mul(q, m)
                s = rem.get(mm, 0) - coef * c
                if s:
                    rem[mm] = s
                else:
                    rem.pop(mm, None)
        return Polynomial({k: v for k, v in quot.items() if v}, _clean=True)

    def monomial_content(self) -> Monomial:
        """Largest coordinate monomial dividing every term."""
        it = iter(self.terms)
        try:
            first = next(it)
        except StopIteration:
            return _ONE_MONO
        common = {v: e for v, e in first if v[0] != ATOM_PREFIX}
        for m in it:
            if not common:
                break
            d = dict(m)
            for v in list(common):
                e = d.get(v, 0)
                if e < common[v]:
                    if e:
                        common[v] = e
                    else:
                        del common[v]
        return tuple(sorted(common.items()))

    def subs(self, var, value: "RatExpr") -> "RatExpr":
        """Replace a coordinate by a rational expression (Horner in that variable)."""
        var = _name(var)
        if any(_mono_atom(m) and var in atom_exponent(_mono_atom(m)).variables() for m in self.terms):
            raise ValueError("cannot substitute into an exp atom exponent")
        buckets: dict[int, dict] = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.pop(var, 0)
            rest = tuple(sorted(d.items()))
            buckets.setdefault(e, {})[rest] = c
        if set(buckets) <= {0}:
            return RatExpr(self)
        value = RatExpr.coerce(value)
        top = max(buckets)
        acc = RatExpr(Polynomial(buckets.get(top, {}), _clean=True))
        for e in range(top - 1, -1, -1):
            acc = acc * value + RatExpr(Polynomial(buckets.get(e, {}), _clean=True))
        return acc

    # rendering ----------------------------------------------------------
    def render(self, order: Iterable[str] | None = None) -> str:
        if not self.terms:
            return "0"
        rank = _order_rank(order)
        items = sorted(self.terms.items(), key=lambda mc: _display_key(mc[0], rank))
        parts = []
        for i, (m, c) in enumerate(items):
            body = _render_mono(m, order)
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if not body:
                s = str(a)
            elif a == 1:
                s = body
            else:
                s = f"{a}*{body}"
            if i == 0:
                parts.append(("-" + s) if sign == "-" else s)
            else:
                parts.append(f" {sign} {s}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Polynomial({self.render()!r})"


def _order_key(terms_iterables):
    """Graded-lex key over the coordinates present, atoms as final tie-break.

    For a fixed atom this is a monomial order on the coordinate part, which
    is all the division loop needs (a divisor never carries atoms there).
    """
    gens = sorted({v for terms in terms_iterables for m in terms for v, _ in m
                   if v[0] != ATOM_PREFIX})
    idx = {g: i for i, g in enumerate(gens)}
    n = len(gens)

    def key(m):
        dense = [0] * n
        atom = ""
        deg = 0
        for v, e in m:
            if v[0] == ATOM_PREFIX:
                atom = v
            else:
                dense[idx[v]] = e
                deg += e
        return (deg, tuple(dense), atom)

    return key


def leading_monomial(p: Polynomial) -> Monomial:
    """Leading monomial under graded lex (coordinates in ascending name order)."""
    return max(p.terms, key=_order_key([p.terms]))


def _natural_key(name: str):
    out = []
    num = ""
    word = ""
    for ch in name:
        if ch.isdigit():
            if word:
                out.append((1, word))
                word = ""
            num += ch
        else:
            if num:
                out.append((0, int(num)))
                num = ""
            word += ch
    if word:
        out.append((1, word))
    if num:
        out.append((0, int(num)))
    return tuple(out)


def _order_rank(order):
    if order is None:
        return None
    return {_name(n): i for i, n in enumerate(order)}


def _gen_rank(v: str, rank):
    if v[0] == ATOM_PREFIX:
        return (2, v)
    if rank is not None and v in rank:
        return (0, rank[v])
    return (1, _natural_key(v))


def _display_key(m: Monomial, rank):
    # descending total degree, then graded-lex by coordinate rank
    exps = sorted(((_gen_rank(v, rank), e) for v, e in m))
    return (-_mono_degree(m), tuple((g, -e) for g, e in exps), len(exps))


def _render_mono(m: Monomial, order=None) -> str:
    rank = _order_rank(order)
    parts = []
    for v, e in sorted(m, key=lambda ve: _gen_rank(ve[0], rank)):
        if v[0] == ATOM_PREFIX:
            base = f"exp({atom_exponent(v).render(order)})"
        else:
            base = v
        parts.append(base if e == 1 else f"{base}^{e}")
    return "*".join(parts)


# ---------------------------------------------------------------------------
# rational expressions


def _normalize_factor(p: Polynomial):
    """Split a nonzero polynomial into (unit, monomial-part, list of factors).

    unit is a Polynomial (rational constant times an exp monomial) to be moved
    to the numerator as its inverse; factors are monic primitive polynomials.
    """
    content = p.monomial_content()
    if content:
        p = p.divexact(Polynomial({content: Fraction(1)}, _clean=True))
    factors = [(Polynomial.var(v), e) for v, e in content]
    # an exp monomial alone is a unit in the scalar field
    if len(p.terms) == 1:
        (m, c), = p.terms.items()
        atom = _mono_atom(m)
        inv_unit = Polynomial.const(Fraction(1) / c)
        if atom is not None:
            inv_unit = inv_unit * Polynomial.exp(-atom_exponent(atom))
        return inv_unit, factors
    lm = leading_monomial(p)
    lc = p.terms[lm]
    if lc != 1:
        p = p.scale(Fraction(1) / lc)
    factors.append((p, 1))
    return Polynomial.const(Fraction(1) / lc), factors


class RatExpr:
    """Quotient of a polynomial by a product of normalised polynomial factors."""

    __slots__ = ("num", "factors")

    def __init__(self, num=None, factors: tuple = ()):
        if num is None:
            num = Polynomial()
        elif not isinstance(num, Polynomial):
            num = Polynomial.const(num)
        self.num = num
        self.factors = factors  # tuple of (Polynomial, exponent), sorted, exponents > 0

    @classmethod
    def coerce(cls, x) -> "RatExpr":
        if isinstance(x, RatExpr):
            return x
        return cls(Polynomial.coerce(x))

    @classmethod
    def fraction(cls, num, den) -> "RatExpr":
        return cls.coerce(num) / cls.coerce(den)

    @classmethod
    def _build(cls, num: Polynomial, fac: dict) -> "RatExpr":
        if num.is_zero():
            return cls(Polynomial())
        fac = {f: e for f, e in fac.items() if e > 0}
        for f in list(fac):
            e = fac[f]
            while e:
                q = num.divexact(f)
                if q is None:
                    break
                num = q
                e -= 1
            if e:
                fac[f] = e
            else:
                del fac[f]
        return cls(num, tuple(sorted(fac.items(), key=lambda fe: fe[0].sort_key())))

    @property
    def den(self) -> Polynomial:
        out = Polynomial.const(1)
        for f, e in self.factors:
            out = out * f ** e
        return out

    def is_polynomial(self) -> bool:
        return not self.factors

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return not self.factors and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("expression is not constant")
        return self.num.constant_value()

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RatExpr):
            if isinstance(other, (int, Fraction, Polynomial)):
                other = RatExpr.coerce(other)
            else:
                return NotImplemented
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if not self.factors and not other.factors:
            return RatExpr(self.num + other.num)
        fa = dict(self.factors)
        fb = dict(other.factors)
        lcm = dict(fa)
        for f, e in fb.items():
            if e > lcm.get(f, 0):
                lcm[f] = e
        na = self.num
        for f, e in lcm.items():
            d = e - fa.get(f, 0)
            if d:
                na = na * f ** d
        nb = other.num
        for f, e in lcm.items():
            d = e - fb.get(f, 0)
            if d:
                nb = nb * f ** d
        return RatExpr._build(na + nb, lcm)

    __radd__ = __add__

    def __neg__(self):
        return RatExpr(-self.num, self.factors)

    def __sub__(self, other):
        if not isinstance(other, RatExpr):
            if isinstance(other, (int, Fraction, Polynomial)):
                other = RatExpr.coerce(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatExpr):
            if isinstance(other, (int, Fraction)):
                return RatExpr(self.num.scale(other), self.factors) if other else RatExpr()
            if isinstance(other, Polynomial):
                other = RatExpr(other)
            else:
                return NotImplemented
        if not self.factors and not other.factors:
            return RatExpr(self.num * other.num)
        num = self.num * other.num
        if num.is_zero():
            return RatExpr()
        fac = dict(self.factors)
        for f, e in other.factors:
            fac[f] = fac.get(f, 0) + e
        if not self.factors or not other.factors:
            # only cross cancellation can occur
            if self.factors and other.num.is_constant():
                return RatExpr(num, self.factors)
            if other.factors and self.num.is_constant():
                return RatExpr(num, other.factors)
        return RatExpr._build(num, fac)

    __rmul__ = __mul__

    def inverse(self) -> "RatExpr":
        if self.num.is_zero():
            raise PoleError("division by an identically zero expression")
        unit, facs = _normalize_factor(self.num)
        num = self.den * unit
        fac: dict = {}
        for f, e in facs:
            fac[f] = fac.get(f, 0) + e
        return RatExpr._build(num, fac)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise PoleError("division by zero")
            return RatExpr(self.num.scale(Fraction(1) / Fraction(other)), self.factors)
        other = RatExpr.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatExpr.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise ValueError("integer powers only")
        if n < 0:
            return self.inverse() ** (-n)
        if not self.factors:
            return RatExpr(self.num ** n)
        if n == 0:
            return RatExpr(Polynomial.const(1))
        return RatExpr(self.num ** n, tuple((f, e * n) for f, e in self.factors))

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RatExpr.coerce(other)
        if not isinstance(other, RatExpr):
            return NotImplemented
        if self.factors == other.factors:
            return self.num == other.num
        return (self - other).num.is_zero()

    def __hash__(self):
        # Invariant under representation: value at a fixed point mod a prime,
        # with atoms sent to 1 (a ring homomorphism on exp-polynomials).
        p = _HASH_PRIME
        n = _modeval(self.num, p)
        d = 1
        for f, e in self.factors:
            d = d * pow(_modeval(f, p), e, p) % p
        if d == 0:
            return 0
        return hash(n * pow(d, -1, p) % p)

    # calculus / evaluation ---------------------------------------------
    def diff(self, var) -> "RatExpr":
        var = _name(var)
        dn = self.num.diff(var)
        if not self.factors:
            return RatExpr(dn)
        # d(N / prod f^e) = (N' prod f - N sum e f' prod_{g != f} g) / prod f^(e+1)
        fs = [f for f, _ in self.factors]
        prod_all = Polynomial.const(1)
        for f in fs:
            prod_all = prod_all * f
        acc = dn * prod_all
        for i, (f, e) in enumerate(self.factors):
            df = f.diff(var)
            if df.is_zero():
                continue
            others = Polynomial.const(1)
            for j, g in enumerate(fs):
                if j != i:
                    others = others * g
            acc = acc - self.num * df * others * e
        fac = {f: e + 1 for f, e in self.factors}
        return RatExpr._build(acc, fac)

    def evaluate(self, values: Mapping, dps: int = DEFAULT_DPS):
        vals = {_name(k): Fraction(v) for k, v in values.items()}
        den = Fraction(1)
        numeric = False
        dvals = []
        for f, e in self.factors:
            fv = f.evaluate(vals, dps)
            if fv == 0:
                raise PoleError(f"pole at point {_fmt_point(vals)}")
            dvals.append(fv ** e)
        nv = self.num.evaluate(vals, dps)
        for dv in dvals:
            if not isinstance(dv, Fraction):
                numeric = True
        if numeric or not isinstance(nv, Fraction):
            with mpmath.workdps(dps):
                out = mpmath.mpf(nv) if not isinstance(nv, Fraction) else mpmath.mpf(nv.numerator) / nv.denominator
                for dv in dvals:
                    dv = dv if not isinstance(dv, Fraction) else mpmath.mpf(dv.numerator) / dv.denominator
                    out = out / dv
                return out
        for dv in dvals:
            den *= dv
        return nv / den

    def partial_evaluate(self, values: Mapping) -> "RatExpr":
        vals = {_name(k): Fraction(v) for k, v in values.items()}
        out = RatExpr(self.num.partial_evaluate(vals))
        for f, e in self.factors:
            fv = f.partial_evaluate(vals)
            if fv.is_zero():
                raise PoleError(f"pole at point {_fmt_point(vals)}")
            out = out / RatExpr(fv ** e)
        return out

    def subs(self, var, value) -> "RatExpr":
        value = RatExpr.coerce(value)
        out = self.num.subs(var, value)
        for f, e in self.factors:
            fv = f.subs(var, value)
            if fv.is_zero():
                raise PoleError("substitution makes a denominator identically zero")
            out = out / fv ** e
        return out

    def variables(self) -> set[str]:
        out = self.num.variables()
        for f, _ in self.factors:
            out |= f.variables()
        return out

    def render(self, order=None) -> str:
        n = self.num.render(order)
        if not self.factors:
            return n
        parts = []
        for f, e in sorted(self.factors, key=lambda fe: (fe[0].degree(), fe[0].render(order))):
            body = f.render(order)
            if len(f.terms) > 1:
                body = f"({body})"
            parts.append(body if e == 1 else f"{body}^{e}")
        den = "*".join(parts)
        if len(self.factors) > 1:
            den = f"({den})"
        if len(self.num.terms) > 1:
            n = f"({n})"
        return f"{n}/{den}"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RatExpr({self.render()!r})"


_HASH_PRIME = (1 << 61) - 1


def _var_hash_value(v: str, p: int) -> int:
    h = 1469598103934665603
    for ch in v.encode():
        h = ((h ^ ch) * 1099511628211) % p
    return h or 7


def _modeval(poly: Polynomial, p: int) -> int:
    total = 0
    for m, c in poly.terms.items():
        t = c.numerator % p * pow(c.denominator % p, -1, p) % p
        for v, e in m:
            if v[0] == ATOM_PREFIX:
                continue
            t = t * pow(_var_hash_value(v, p), e, p) % p
        total = (total + t) % p
    return total


def _fmt_point(vals) -> str:
    return "(" + ", ".join(f"{k}={v}" for k, v in sorted(vals.items(), key=lambda kv: _natural_key(kv[0]))) + ")"


Scalar = Union[int, Fraction, Polynomial, RatExpr]


# ---------------------------------------------------------------------------
# public functional interface


def diff(e, c) -> RatExpr:
    return RatExpr.coerce(e).diff(c)


def is_zero(e) -> bool:
    if isinstance(e, (int, Fraction)):
        return e == 0
    return e.is_zero()


def evaluate(e, pt: Mapping, dps: int = DEFAULT_DPS):
    """Exact rational value if every exp exponent vanishes at pt, else an mpf."""
    return RatExpr.coerce(e).evaluate(pt, dps)


def substitute(e, c, r) -> RatExpr:
    return RatExpr.coerce(e).subs(c, r)


def as_ratexpr(x) -> RatExpr:
    return RatExpr.coerce(x)


def var(name) -> RatExpr:
    return RatExpr(Polynomial.var(name))


def exp(e) -> RatExpr:
    e = RatExpr.coerce(e)
    if not e.is_polynomial():
        raise ValueError("exp() argument must be a polynomial")
    return RatExpr(Polynomial.exp(e.num))


# ---------------------------------------------------------------------------
# parsing

def parse_expr(text: str, coords=None) -> RatExpr:
    from .exprparse import parse_expr as _parse

    return _parse(text, coords)

__all__ = [
    "Coordinate", "Polynomial", "RatExpr", "PoleError", "ExprSyntaxError",
    "UnknownSymbolError", "parse_expr", "diff", "is_zero", "evaluate",
    "substitute", "var", "exp", "as_ratexpr", "leading_monomial",
]
