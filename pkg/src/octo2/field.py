"""Exact arithmetic in characteristic-2 fields.

Two kinds of field are supported: GF(2^n) for 1 <= n <= 16, and
rational function fields GF(2^n)(x1) or GF(2^n)(x1, x2).  Elements are
immutable values; all operations are pure, so they are safe to share
across threads.
"""

from __future__ import annotations

from . import poly
from .poly import Poly


class FieldError(Exception):
    pass


class ZeroInverse(FieldError):
    pass


class DescriptorMismatch(FieldError):
    pass


class NotASquare(FieldError):
    pass


class UnsupportedField(FieldError):
    pass


class ZeroArgument(FieldError):
    pass


# Fixed primitive polynomials (lexicographically smallest) for GF(2^n),
# so element printouts are reproducible across runs.
PRIMITIVE_POLYS = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100000000101011,
    15: 0b1000000000000011,
    16: 0b10000000000101101,
}


class GF:
    """GF(2^n) with elements represented as coefficient bit-vectors in
    the polynomial basis of a fixed primitive modulus."""

    is_finite = True

    def __init__(self, n, modulus=None):
        if not 1 <= n <= 16:
            raise FieldError(f"extension degree {n} out of range 1..16")
        self.n = n
        self.modulus = PRIMITIVE_POLYS[n] if modulus is None else modulus
        self.order = 1 << n

    # --- int-level arithmetic -------------------------------------------
    def add(self, a, b):
        return a ^ b

    def mul(self, a, b):
        r = 0
        top = 1 << self.n
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= self.modulus
        return r

    def pow(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a):
        if not a:
            raise ZeroInverse("inverse of zero")
        return self.pow(a, self.order - 2)

    def sqrt(self, a):
        # Frobenius is bijective: sqrt(a) = a^(2^(n-1))
        return self.pow(a, 1 << (self.n - 1))

    def trace(self, a):
        t = 0
        x = a
        for _ in range(self.n):
            t ^= x
            x = self.mul(x, x)
        # trace lands in GF(2)
        return t

    # --- element API ----------------------------------------------------
    def element(self, rep):
        if isinstance(rep, FieldElement):
            if rep.field != self:
                raise DescriptorMismatch("element from a different field")
            return rep
        return FieldElement(self, rep & (self.order - 1))

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    def generator(self):
        return FieldElement(self, 2 if self.n > 1 else 1)

    def elements(self):
        for v in range(self.order):
            yield FieldElement(self, v)

    def random_element(self, rng):
        return FieldElement(self, rng.randrange(self.order))

    def __eq__(self, other):
        return (isinstance(other, GF) and self.n == other.n
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash(("gf", self.n, self.modulus))

    def __repr__(self):
        return f"gf(2^{self.n})" if self.n > 1 else "gf(2)"


class RationalFunctionField:
    """GF(2^n)(x1[, x2]): fractions of multivariate polynomials, kept
    reduced with a monic (grlex) denominator."""

    is_finite = False

    def __init__(self, base, names):
        names = tuple(names)
        if not 1 <= len(names) <= 2:
            raise FieldError("rational kind supports 1 or 2 indeterminates")
        if len(set(names)) != len(names):
            raise FieldError("indeterminate names must be distinct")
        self.base = base
        self.names = names
        self.nvars = len(names)

    def _poly_const(self, c):
        return Poly.const(self.base, self.nvars, c)

    def element_from_polys(self, num, den=None):
        if den is None:
            den = Poly.one(self.base, self.nvars)
        return FieldElement(self, _normalize(self, num, den))

    def element(self, rep):
        if isinstance(rep, FieldElement):
            if rep.field != self:
                raise DescriptorMismatch("element from a different field")
            return rep
        if isinstance(rep, int):
            return self.element_from_polys(self._poly_const(rep & (self.base.order - 1)))
        raise FieldError(f"cannot coerce {rep!r}")

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    def indeterminate(self, i):
        return self.element_from_polys(Poly.var(self.base, self.nvars, i))

    def random_element(self, rng, degree=1, terms=3):
        t = {}
        for _ in range(terms):
            e = tuple(rng.randrange(degree + 1) for _ in range(self.nvars))
            t[e] = rng.randrange(self.base.order)
        return self.element_from_polys(Poly(self.base, self.nvars, t))

    def __eq__(self, other):
        return (isinstance(other, RationalFunctionField)
                and self.base == other.base and self.names == other.names)

    def __hash__(self):
        return hash(("ratfunc", self.base, self.names))

    def __repr__(self):
        return f"ratfunc({self.base!r}; {', '.join(self.names)})"


def _normalize(field, num, den):
    if den.is_zero():
        raise ZeroInverse("zero denominator")
    if num.is_zero():
        return (num, Poly.one(field.base, field.nvars))
    if not den.is_one():
        g = poly.gcd(num, den)
        if not g.is_one():
            num = poly.exact_div(num, g)
            den = poly.exact_div(den, g)
        _, lc = den.leading()
        if lc != 1:
            c = field.base.inv(lc)
            num = num.scale(c)
            den = den.scale(c)
    return (num, den)


class FieldElement:
    """An exact element of GF(2^n) or a rational function field.

    ``rep`` is an int (finite kind) or a reduced (num, den) pair of
    Poly (rational kind)."""

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    def _check(self, other):
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise DescriptorMismatch(
                f"operands from different fields: {self.field!r} vs "
                f"{getattr(other, 'field', type(other))!r}")

    def is_zero(self):
        if isinstance(self.field, GF):
            return self.rep == 0
        return self.rep[0].is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        self._check(other)
        f = self.field
        if isinstance(f, GF):
            return FieldElement(f, self.rep ^ other.rep)
        p1, q1 = self.rep
        p2, q2 = other.rep
        if q1.is_one() and q2.is_one():
            return FieldElement(f, _normalize(f, p1 + p2, q1))
        return FieldElement(f, _normalize(f, p1 * q2 + p2 * q1, q1 * q2))

    # characteristic 2
    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        self._check(other)
        f = self.field
        if isinstance(f, GF):
            return FieldElement(f, f.mul(self.rep, other.rep))
        p1, q1 = self.rep
        p2, q2 = other.rep
        return FieldElement(f, _normalize(f, p1 * p2, q1 * q2))

    def __truediv__(self, other):
        return self * other.inverse()

    def inverse(self):
        f = self.field
        if isinstance(f, GF):
            return FieldElement(f, f.inv(self.rep))
        p, q = self.rep
        if p.is_zero():
            raise ZeroInverse("inverse of zero")
        return FieldElement(f, _normalize(f, q, p))

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        r = self.field.element(1)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def is_square(self):
        if isinstance(self.field, GF):
            return True
        p, q = self.rep
        return (p * q).is_square()

    def sqrt(self):
        f = self.field
        if isinstance(f, GF):
            return FieldElement(f, f.sqrt(self.rep))
        p, q = self.rep
        pq = p * q
        if not pq.is_square():
            raise NotASquare(f"{self} is not a square")
        return FieldElement(f, _normalize(f, pq.sqrt(), q))

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.rep == other.rep

    def __hash__(self):
        if isinstance(self.field, GF):
            return hash((self.field, self.rep))
        return hash((self.field, self.rep[0], self.rep[1]))

    def __str__(self):
        from .literals import format_element
        return format_element(self)

    def __repr__(self):
        return f"<{self} in {self.field!r}>"


# --- operations beyond plain arithmetic ---------------------------------

class ASResult:
    """Outcome of an Artin-Schreier solvability test."""

    __slots__ = ("kind", "witness")

    def __init__(self, kind, witness=None):
        self.kind = kind  # "yes" | "no" | "unknown"
        self.witness = witness

    def __repr__(self):
        return f"ASResult({self.kind}, {self.witness})"


def artin_schreier_solvable(a, degree_bound=8):
    """Decide a in wp(k) = {x^2 + x}.  Exact over finite fields; over
    rational fields exact whenever the forced witness degree fits the
    bound (otherwise Unknown)."""
    f = a.field
    if isinstance(f, GF):
        if f.trace(a.rep) != 0:
            return ASResult("no")
        for v in range(f.order):
            if f.mul(v, v) ^ v == a.rep:
                return ASResult("yes", FieldElement(f, v))
        return ASResult("no")  # unreachable: trace 0 guarantees a witness
    p, q = a.rep
    # x = f/g in lowest terms forces g^2 = q, so q must be a square.
    if not q.is_square():
        return ASResult("no")
    g = q.sqrt()
    dmax = max(g.total_degree(), p.total_degree() // 2, 0)
    if dmax > degree_bound:
        return ASResult("unknown")
    sol = _solve_frobenius_affine(f, g, p, dmax)
    if sol is None:
        return ASResult("no")
    return ASResult("yes", f.element_from_polys(sol, g))


def _monomials_up_to(nvars, d):
    if nvars == 1:
        return [(i,) for i in range(d + 1)]
    return [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]


def _solve_frobenius_affine(field, g, p, dmax):
    """Solve h^2 + h*g = p for a polynomial h of total degree <= dmax.
    The map h -> h^2 + h*g is GF(2)-linear in the coefficient bits."""
    base = field.base
    n = base.n
    monos = _monomials_up_to(field.nvars, dmax)
    cols = []
    images = set(p.terms)
    basis_polys = []
    for e in monos:
        for bit in range(n):
            h = Poly(base, field.nvars, {e: 1 << bit})
            img = h.square() + h * g
            basis_polys.append(h)
            cols.append(img)
            images.update(img.terms)
    idx = {e: i for i, e in enumerate(sorted(images))}
    nbits = len(idx) * n
    # rows of the GF(2) system, one per (monomial, bit) of the image space
    ncols = len(cols)
    rows = [0] * nbits
    for j, img in enumerate(cols):
        for e, c in img.terms.items():
            k = idx[e] * n
            for bit in range(n):
                if (c >> bit) & 1:
                    rows[k + bit] |= 1 << j
    rhs = [0] * nbits
    for e, c in p.terms.items():
        k = idx[e] * n
        for bit in range(n):
            rhs[k + bit] = (c >> bit) & 1
    sol_bits = _gf2_solve(rows, rhs, ncols)
    if sol_bits is None:
        return None
    h = Poly.zero(base, field.nvars)
    for j in range(ncols):
        if (sol_bits >> j) & 1:
            h = h + basis_polys[j]
    return h


def _gf2_solve(rows, rhs, ncols):
    """Solve the GF(2) system rows[i] . x = rhs[i]; rows are bitmasks
    over ncols unknowns.  Returns one solution bitmask or None."""
    aug = [(rows[i] << 1) | rhs[i] for i in range(len(rows))]
    pivots = []
    r = 0
    for c in range(ncols):
        bit = 1 << (c + 1)
        pr = next((i for i in range(r, len(aug)) if aug[i] & bit), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        for i in range(len(aug)):
            if i != r and aug[i] & bit:
                aug[i] ^= aug[r]
        pivots.append(c)
        r += 1
    for i in range(r, len(aug)):
        if aug[i] & 1:
            return None
    x = 0
    for i, c in enumerate(pivots):
        if aug[i] & 1:
            x |= 1 << c
    return x


def variable_valuation(a, j):
    """Order of vanishing of a at x_j = 0 (can be negative)."""
    f = a.field
    if isinstance(f, GF):
        raise UnsupportedField("valuations need a rational function field")
    p, q = a.rep
    if p.is_zero():
        raise ZeroArgument("valuation of zero")
    return min(e[j] for e in p.terms) - min(e[j] for e in q.terms)


def residue_field(field, j):
    """The field obtained by setting x_j = 0: the base field if x_j is
    the only indeterminate, one fewer indeterminate otherwise."""
    names = field.names[:j] + field.names[j + 1:]
    if not names:
        return field.base
    return RationalFunctionField(field.base, names)


def variable_residue(a, j, target=None):
    """Value of a at x_j = 0 as an element of residue_field(field, j).
    Requires variable_valuation(a, j) = 0 (a is a unit at x_j = 0)."""
    f = a.field
    if target is None:
        target = residue_field(f, j)
    p, q = a.rep
    if p.is_zero():
        return target.element(0)
    vp = min(e[j] for e in p.terms)
    vq = min(e[j] for e in q.terms)
    if vp - vq != 0:
        raise ZeroArgument("residue needs valuation 0")

    def drop(poly, v):
        t = {}
        for e, c in poly.terms.items():
            if e[j] == v:
                t[e[:j] + e[j + 1:]] = c
        return t

    pt, qt = drop(p, vp), drop(q, vq)
    if isinstance(target, GF):
        pn = pt.get((), 0)
        qn = qt.get((), 0)
        return FieldElement(target, target.mul(pn, target.inv(qn)))
    pn = Poly(target.base, target.nvars, pt)
    qn = Poly(target.base, target.nvars, qt)
    return target.element_from_polys(pn, qn)


def k2_coordinates(a):
    """Coordinates of a in k = sum over parities eps of k^2 * x^eps.

    Returns {eps tuple: FieldElement in k^2}, zero coordinates omitted."""
    f = a.field
    if isinstance(f, GF):
        raise UnsupportedField("k^2 = k for finite fields; use is_square")
    p, q = a.rep
    if p.is_zero():
        return {}
    pq = p * q
    q2 = q.square()
    parts = {}
    for e, c in pq.terms.items():
        eps = tuple(x % 2 for x in e)
        even = tuple(x - y for x, y in zip(e, eps))
        t = parts.setdefault(eps, {})
        t[even] = t.get(even, 0) ^ c
    out = {}
    for eps, t in parts.items():
        m = Poly(f.base, f.nvars, t)
        if not m.is_zero():
            out[eps] = f.element_from_polys(m, q2)
    return out


def k2_extension_degree(beta, gamma):
    """k^2-dimension of span_{k^2}{1, beta, gamma, beta*gamma} in k;
    1, 2 or 4 (beta^2, gamma^2 lie in k^2)."""
    if not beta or not gamma:
        raise ZeroArgument("beta, gamma must be nonzero")
    f = beta.field
    if isinstance(f, GF):
        return 1
    vecs = [k2_coordinates(x) for x in (f.one, beta, gamma, beta * gamma)]
    keys = sorted({e for v in vecs for e in v})
    from .linalg import Matrix
    rows = [[v.get(e, f.zero) for e in keys] for v in vecs]
    return Matrix.from_rows(f, rows).rank()
