"""ASCII literals for fields, elements, forms and algebra configs.

Grammars:
  field    gf(2^n) | ratfunc(gf(2^n); x1[, x2])
  element  polynomial fractions, e.g. (x1^2)/(x1^2+x2); finite-field
           coefficients as powers g^k of the fixed generator
  form     [a,b] P [c,d] P <e,f>  with P the orthogonal-sum separator;
           shorthand qp(b,g) for the quasi-Pfister form <1,b,g,b*g>
  algebra  algebra{field=..., dim=8, alpha=..., beta=..., gamma=...}

Formatting and parsing round-trip: parse(format(x)) == x.
"""

from __future__ import annotations

import re

from .field import GF, RationalFunctionField
from .poly import Poly, _grlex_key


class LiteralError(Exception):
    pass


# --- formatting -----------------------------------------------------------

def _format_gf_rep(field, rep):
    """Bit-vector rep as a polynomial in the generator g."""
    if rep == 0:
        return "0"
    parts = []
    for k in reversed(range(field.n)):
        if (rep >> k) & 1:
            if k == 0:
                parts.append("1")
            elif k == 1:
                parts.append("g")
            else:
                parts.append(f"g^{k}")
    return "+".join(parts)


def _format_monomial(exps, names):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _format_poly(p, names, base):
    if p.is_zero():
        return "0"
    out = []
    for exps in sorted(p.terms, key=_grlex_key, reverse=True):
        c = p.terms[exps]
        mono = _format_monomial(exps, names)
        cs = _format_gf_rep(base, c)
        if not mono:
            out.append(f"({cs})" if "+" in cs else cs)
        elif cs == "1":
            out.append(mono)
        else:
            cs = f"({cs})" if "+" in cs or "^" in cs else cs
            out.append(f"{cs}*{mono}")
    return "+".join(out)


def format_element(a):
    f = a.field
    if isinstance(f, GF):
        return _format_gf_rep(f, a.rep)
    num, den = a.rep
    ns = _format_poly(num, f.names, f.base)
    if den.is_one():
        return ns
    ds = _format_poly(den, f.names, f.base)
    return f"({ns})/({ds})"


def format_field(f):
    if isinstance(f, GF):
        return f"gf(2^{f.n})" if f.n > 1 else "gf(2)"
    return f"ratfunc({format_field(f.base)}; {', '.join(f.names)})"


def format_form(q):
    parts = [f"[{format_element(a)},{format_element(b)}]"
             for a, b in q.blocks]
    if q.diagonal:
        parts.append(
            "<" + ",".join(format_element(c) for c in q.diagonal) + ">")
    return " P ".join(parts) if parts else "<>"


def format_algebra(algebra):
    ps = [f"field={format_field(algebra.field)}",
          f"dim={algebra.dim}",
          f"alpha={format_element(algebra.alpha)}"]
    if algebra.dim >= 4:
        ps.append(f"beta={format_element(algebra.beta)}")
    if algebra.dim == 8:
        ps.append(f"gamma={format_element(algebra.gamma)}")
    return "algebra{" + ", ".join(ps) + "}"


# --- field descriptors ----------------------------------------------------

_GF_RE = re.compile(r"^gf\(2(?:\^(\d+))?\)$")
_RF_RE = re.compile(r"^ratfunc\((gf\(2(?:\^\d+)?\))\s*;\s*([^)]+)\)$")
_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def parse_field(text):
    text = text.strip()
    m = _GF_RE.match(text)
    if m:
        n = int(m.group(1)) if m.group(1) else 1
        return GF(n)
    m = _RF_RE.match(text)
    if m:
        base = parse_field(m.group(1))
        names = [s.strip() for s in m.group(2).split(",")]
        for name in names:
            if not _NAME_RE.match(name) or name == "g":
                raise LiteralError(f"bad indeterminate name {name!r}")
        return RationalFunctionField(base, names)
    raise LiteralError(f"cannot parse field descriptor {text!r}")


# --- element expressions --------------------------------------------------

_TOKEN_RE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|\d+|[-+*/^()])")


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise LiteralError(f"bad character at {text[pos:]!r}")
        toks.append(m.group(1))
        pos = m.end()
    toks.append(None)  # end marker
    return toks


class _ExprParser:
    def __init__(self, field, text):
        self.field = field
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def parse(self):
        v = self.expr()
        if self.peek() is not None:
            raise LiteralError(f"trailing input at {self.peek()!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            self.next()
            v = v + self.term()  # char 2: - is +
        return v

    def term(self):
        v = self.factor()
        while self.peek() in ("*", "/"):
            op = self.next()
            rhs = self.factor()
            v = v * rhs if op == "*" else v / rhs
        return v

    def factor(self):
        v = self.atom()
        while self.peek() == "^":
            self.next()
            e = self.next()
            if e is None or not e.isdigit():
                raise LiteralError("exponent must be a non-negative integer")
            v = v ** int(e)
        return v

    def atom(self):
        t = self.next()
        if t == "(":
            v = self.expr()
            if self.next() != ")":
                raise LiteralError("unbalanced parentheses")
            return v
        if t is None:
            raise LiteralError("unexpected end of expression")
        if t.isdigit():
            n = int(t)
            if n not in (0, 1):
                raise LiteralError(
                    f"integer literal {n} not allowed; use g^k powers")
            return self.field.element(n)
        f = self.field
        if t == "g":
            if isinstance(f, GF):
                return f.generator()
            c = 2 if f.base.n > 1 else 1
            return f.element_from_polys(Poly.const(f.base, f.nvars, c))
        if isinstance(f, RationalFunctionField) and t in f.names:
            return f.indeterminate(f.names.index(t))
        raise LiteralError(f"unknown name {t!r} in {self.field!r}")


def parse_element(field, text):
    return _ExprParser(field, text).parse()


# --- form literals --------------------------------------------------------

def _split_top(text, sep):
    """Split on sep at paren/bracket depth 0."""
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch in "([<":
            depth += 1
        elif ch in ")]>":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_form(field, text):
    from .quadform import QuadraticForm, quasi_pfister

    text = text.strip()
    if text.startswith("qp(") and text.endswith(")"):
        args = _split_top(text[3:-1], ",")
        if len(args) != 2:
            raise LiteralError("qp takes exactly two arguments")
        return quasi_pfister(field, parse_element(field, args[0]),
                             parse_element(field, args[1]))
    blocks = []
    diagonal = []
    for raw in re.split(r"\s+P\s+", text):
        part = raw.strip()
        if part.startswith("[") and part.endswith("]"):
            args = _split_top(part[1:-1], ",")
            if len(args) != 2:
                raise LiteralError(f"block needs two entries: {part!r}")
            if diagonal:
                raise LiteralError("blocks must precede the diagonal part")
            blocks.append((parse_element(field, args[0]),
                           parse_element(field, args[1])))
        elif part.startswith("<") and part.endswith(">"):
            for arg in _split_top(part[1:-1], ","):
                diagonal.append(parse_element(field, arg))
        else:
            raise LiteralError(f"cannot parse form part {part!r}")
    return QuadraticForm(field, blocks, diagonal)


# --- algebra configs ------------------------------------------------------

_ALG_RE = re.compile(r"^algebra\{(.*)\}$")


def parse_algebra(text):
    from .composition import Algebra

    m = _ALG_RE.match(text.strip())
    if not m:
        raise LiteralError(f"cannot parse algebra config {text!r}")
    kv = {}
    for part in _split_top(m.group(1), ","):
        if "=" not in part:
            raise LiteralError(f"bad config entry {part!r}")
        k, v = part.split("=", 1)
        kv[k.strip()] = v.strip()
    for key in ("field", "dim", "alpha"):
        if key not in kv:
            raise LiteralError(f"algebra config missing {key!r}")
    field = parse_field(kv["field"])
    dim = int(kv["dim"])
    alpha = parse_element(field, kv["alpha"])
    beta = parse_element(field, kv["beta"]) if "beta" in kv else None
    gamma = parse_element(field, kv["gamma"]) if "gamma" in kv else None
    return Algebra(field, dim, alpha, beta, gamma)
