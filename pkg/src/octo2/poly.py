"""Multivariate polynomials over GF(2^n) with exact gcd.

Coefficients are ints interpreted by a base-field object exposing
``mul``, ``inv`` and ``sqrt`` on int representations (addition is xor).
Monomials are exponent tuples; the monomial order is graded
lexicographic with the first variable largest, which fixes the
normal forms used for rational-function equality tests.
"""

from __future__ import annotations


class PolyError(Exception):
    pass


class NotASquare(PolyError):
    pass


def _grlex_key(exps):
    return (sum(exps), exps)


class Poly:
    """Immutable multivariate polynomial; ``terms`` maps exponent tuples
    to nonzero int coefficients of the base field."""

    __slots__ = ("base", "nvars", "terms", "_hash")

    def __init__(self, base, nvars, terms):
        self.base = base
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    @classmethod
    def const(cls, base, nvars, c):
        return cls(base, nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def zero(cls, base, nvars):
        return cls(base, nvars, {})

    @classmethod
    def one(cls, base, nvars):
        return cls.const(base, nvars, 1)

    @classmethod
    def var(cls, base, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(base, nvars, {tuple(e): 1})

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0,) * self.nvars: 1}

    def is_const(self):
        return all(not any(e) for e in self.terms)

    def const_value(self):
        return self.terms.get((0,) * self.nvars, 0)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i):
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def leading(self):
        """(exps, coeff) of the grlex-leading term."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def __add__(self, other):
        t = dict(self.terms)
        for e, c in other.terms.items():
            r = t.get(e, 0) ^ c
            if r:
                t[e] = r
            else:
                t.pop(e, None)
        return Poly(self.base, self.nvars, t)

    # characteristic 2: subtraction is addition
    __sub__ = __add__

    def __mul__(self, other):
        if not self.terms or not other.terms:
            return Poly.zero(self.base, self.nvars)
        mul = self.base.mul
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) ^ mul(c1, c2)
        return Poly(self.base, self.nvars, t)

    def scale(self, c):
        if not c:
            return Poly.zero(self.base, self.nvars)
        mul = self.base.mul
        return Poly(self.base, self.nvars,
                    {e: mul(c, v) for e, v in self.terms.items()})

    def shift(self, exps):
        """Multiply by the monomial with exponent tuple ``exps``."""
        return Poly(self.base, self.nvars,
                    {tuple(a + b for a, b in zip(e, exps)): c
                     for e, c in self.terms.items()})

    def square(self):
        sq = self.base.mul
        return Poly(self.base, self.nvars,
                    {tuple(2 * x for x in e): sq(c, c)
                     for e, c in self.terms.items()})

    def is_square(self):
        return all(all(x % 2 == 0 for x in e) for e in self.terms)

    def sqrt(self):
        if not self.is_square():
            raise NotASquare(f"not a square: {self}")
        return Poly(self.base, self.nvars,
                    {tuple(x // 2 for x in e): self.base.sqrt(c)
                     for e, c in self.terms.items()})

    def monic(self):
        if not self.terms:
            return self
        _, c = self.leading()
        if c == 1:
            return self
        return self.scale(self.base.inv(c))

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"Poly({self.terms!r})"


def exact_div(f, g):
    """Return q with f = q*g; g must divide f exactly."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    base = f.base
    q = {}
    r = f
    ge, gc = g.leading()
    gcinv = base.inv(gc)
    while not r.is_zero():
        re, rc = r.leading()
        de = tuple(a - b for a, b in zip(re, ge))
        if any(x < 0 for x in de):
            raise PolyError("inexact polynomial division")
        qc = base.mul(rc, gcinv)
        q[de] = qc
        r = r + g.scale(qc).shift(de)
    return Poly(f.base, f.nvars, q)


def _to_uni(f, var):
    """View f as univariate in ``var`` with Poly coefficients."""
    coeffs = {}
    for e, c in f.terms.items():
        d = e[var]
        rest = e[:var] + (0,) + e[var + 1:]
        t = coeffs.setdefault(d, {})
        t[rest] = t.get(rest, 0) ^ c
    out = {}
    for d, t in coeffs.items():
        p = Poly(f.base, f.nvars, t)
        if not p.is_zero():
            out[d] = p
    return out


def _from_uni(coeffs, var, base, nvars):
    t = {}
    for d, p in coeffs.items():
        for e, c in p.terms.items():
            ee = e[:var] + (d,) + e[var + 1:]
            t[ee] = t.get(ee, 0) ^ c
    return Poly(base, nvars, t)


def _uni_deg(coeffs):
    return max(coeffs) if coeffs else -1


def _uni_scale(coeffs, p):
    out = {}
    for d, c in coeffs.items():
        r = c * p
        if not r.is_zero():
            out[d] = r
    return out


def _uni_add(a, b):
    out = dict(a)
    for d, c in b.items():
        r = out.get(d)
        r = c if r is None else r + c
        if r.is_zero():
            out.pop(d, None)
        else:
            out[d] = r
    return out


def _uni_shift(coeffs, k):
    return {d + k: c for d, c in coeffs.items()}


def _prem(f, g):
    """Pseudo-remainder of univariate f by g (Poly coefficients)."""
    df, dg = _uni_deg(f), _uni_deg(g)
    lg = g[dg]
    r = f
    while _uni_deg(r) >= dg and r:
        dr = _uni_deg(r)
        lr = r[dr]
        r = _uni_add(_uni_scale(r, lg), _uni_shift(_uni_scale(g, lr), dr - dg))
    return r


def gcd(f, g):
    """Monic gcd via content/primitive-part recursion on the last
    variable that actually occurs."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    var = None
    for i in reversed(range(f.nvars)):
        if f.degree_in(i) > 0 or g.degree_in(i) > 0:
            var = i
            break
    if var is None:
        return Poly.one(f.base, f.nvars)
    fu, gu = _to_uni(f, var), _to_uni(g, var)
    cf = _content(fu, f.base, f.nvars)
    cg = _content(gu, f.base, f.nvars)
    c = gcd(cf, cg)
    fp = {d: exact_div(p, cf) for d, p in fu.items()}
    gp = {d: exact_div(p, cg) for d, p in gu.items()}
    if _uni_deg(fp) < _uni_deg(gp):
        fp, gp = gp, fp
    while gp:
        r = _prem(fp, gp)
        if r:
            rc = _content(r, f.base, f.nvars)
            r = {d: exact_div(p, rc) for d, p in r.items()}
        fp, gp = gp, r
    h = c * _from_uni(fp, var, f.base, f.nvars)
    return h.monic()


def _content(coeffs, base, nvars):
    c = Poly.zero(base, nvars)
    for p in coeffs.values():
        c = gcd(c, p)
        if c.is_one():
            break
    return c
