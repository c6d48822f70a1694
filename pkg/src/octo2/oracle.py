"""Brute-force verification layer over small finite fields.

Everything here is independent of the constructive modules: exhaustive
element/pair sweeps of the algebra axioms, isometry search for small
quadratic forms, enumeration of the involution families with an exact
conjugacy-class partition, and subgroup closure for order counts.
Domains are hard-capped; OCTO2_MAX_SWEEP can lower (never raise) the
caps.
"""

from __future__ import annotations

import os
import random
import time

from .composition import is_automorphism, make_subalgebra, CompositionError
from .field import GF, RationalFunctionField
from .linalg import Matrix

HARD_SWEEP_CAP = 1 << 24
HARD_CLOSURE_CAP = 10 ** 6

PROPERTIES = ("composition", "min_eq", "min_eq_linearized", "gram_rank",
              "conj_involutive")
_PAIR_PROPS = ("composition", "min_eq_linearized")


class OracleError(Exception):
    pass


class DomainTooLarge(OracleError):
    pass


class TooLarge(OracleError):
    pass


class CapExceeded(OracleError):
    pass


def _capped(hard):
    raw = os.environ.get("OCTO2_MAX_SWEEP")
    if raw is None:
        return hard
    try:
        env = int(raw)
    except ValueError:
        return hard
    return min(hard, env) if env > 0 else hard


class SweepReport:
    __slots__ = ("name", "domain", "violations", "first", "elapsed")

    def __init__(self, name, domain, violations, first, elapsed):
        self.name = name
        self.domain = domain
        self.violations = violations
        self.first = first  # first counterexample, or None
        self.elapsed = elapsed

    @property
    def ok(self):
        return self.violations == 0

    def to_dict(self):
        return {"property": self.name, "domain": self.domain,
                "violations": self.violations,
                "first_counterexample":
                    None if self.first is None else repr(self.first),
                "elapsed_seconds": round(self.elapsed, 3)}

    def __repr__(self):
        return (f"SweepReport({self.name}, domain={self.domain}, "
                f"violations={self.violations})")


def exhaustive_check(algebra, prop):
    """Sweep one axiom over every element (or pair) of a finite
    algebra."""
    if prop not in PROPERTIES:
        raise OracleError(f"unknown property {prop!r}")
    f = algebra.field
    if not isinstance(f, GF):
        raise DomainTooLarge("exhaustive sweeps need a finite field")
    nelems = f.order ** algebra.dim
    domain = nelems ** 2 if prop in _PAIR_PROPS else nelems
    if prop == "gram_rank":
        domain = 1
    if domain > _capped(HARD_SWEEP_CAP):
        raise DomainTooLarge(f"{domain} sweep points exceed the cap")
    start = time.monotonic()
    if prop == "gram_rank":
        rank = algebra.gram_matrix().rank()
        bad = 0 if rank == algebra.dim else 1
        first = None if not bad else f"gram rank {rank} != {algebra.dim}"
        return SweepReport(prop, 1, bad, first, time.monotonic() - start)
    if f.order == 2:
        return _gf2_sweep(algebra, prop, domain, start)
    return _generic_sweep(algebra, prop, domain, start)


def _gf2_sweep(algebra, prop, domain, start):
    from . import gf2fast

    tables = gf2fast.Tables(algebra)
    n = tables.norms
    mul = tables.mul
    size = 1 << algebra.dim

    def bil_e(x):
        return n[x ^ 1] ^ n[x] ^ n[1]

    violations = 0
    first = None

    def record(x, y=None):
        nonlocal violations, first
        violations += 1
        if first is None:
            first = (x,) if y is None else (x, y)

    if prop == "composition":
        for x in range(size):
            nx = n[x]
            for y in range(size):
                if n[mul(x, y)] != (nx & n[y]):
                    record(x, y)
    elif prop == "min_eq":
        for x in range(size):
            acc = mul(x, x)
            if bil_e(x):
                acc ^= x
            if n[x]:
                acc ^= 1
            if acc:
                record(x)
    elif prop == "min_eq_linearized":
        for x in range(size):
            bx = bil_e(x)
            for y in range(size):
                acc = mul(x, y) ^ mul(y, x)
                if bx:
                    acc ^= y
                if bil_e(y):
                    acc ^= x
                if n[x ^ y] ^ n[x] ^ n[y]:
                    acc ^= 1
                if acc:
                    record(x, y)
    else:  # conj_involutive
        for x in range(size):
            cx = x ^ (1 if bil_e(x) else 0)
            ccx = cx ^ (1 if bil_e(cx) else 0)
            if ccx != x or mul(x, cx) != (1 if n[x] else 0):
                record(x)
    return SweepReport(prop, domain, violations, first,
                       time.monotonic() - start)


def _generic_sweep(algebra, prop, domain, start):
    elems = list(algebra.elements())
    e = algebra.e
    zero = algebra.zero_element()
    violations = 0
    first = None

    def record(*args):
        nonlocal violations, first
        violations += 1
        if first is None:
            first = args

    if prop == "composition":
        for x in elems:
            nx = x.norm()
            for y in elems:
                if (x * y).norm() != nx * y.norm():
                    record(x, y)
    elif prop == "min_eq":
        for x in elems:
            if x * x + x.bil(e) * x + x.norm() * e != zero:
                record(x)
    elif prop == "min_eq_linearized":
        for x in elems:
            bx = x.bil(e)
            for y in elems:
                if (x * y + y * x + bx * y + y.bil(e) * x
                        + x.bil(y) * e != zero):
                    record(x, y)
    else:  # conj_involutive
        for x in elems:
            if x.conj().conj() != x or x * x.conj() != x.norm() * e:
                record(x)
    return SweepReport(prop, domain, violations, first,
                       time.monotonic() - start)


def random_pair_check(algebra, pairs=10000, seed=0):
    """Randomized spot check of the composition law, the minimum
    equation and its linearization; used where exhaustion is
    infeasible."""
    f = algebra.field
    rng = random.Random(seed)
    e = algebra.e
    zero = algebra.zero_element()
    start = time.monotonic()
    violations = 0
    first = None

    def sample():
        if isinstance(f, GF):
            return algebra.element([f.random_element(rng)
                                    for _ in range(algebra.dim)])
        # sparse rational coordinates keep the exact arithmetic fast
        coords = [f.one if rng.random() < 0.4 else f.zero
                  for _ in range(algebra.dim)]
        for _ in range(2):
            coords[rng.randrange(algebra.dim)] = f.random_element(
                rng, degree=1, terms=2)
        return algebra.element(coords)

    for _ in range(pairs):
        x = sample()
        y = sample()
        ok = ((x * y).norm() == x.norm() * y.norm()
              and x * x + x.bil(e) * x + x.norm() * e == zero
              and (x * y + y * x + x.bil(e) * y + y.bil(e) * x
                   + x.bil(y) * e == zero))
        if not ok:
            violations += 1
            if first is None:
                first = (x, y)
    return SweepReport("random_pairs", pairs, violations, first,
                       time.monotonic() - start)


# --- quadratic form isometry search -----------------------------------------

def isometry_search(q1, q2):
    """Exhaustive isometry witness between two small forms, or None."""
    if q1.dim != q2.dim:
        raise OracleError("forms of different dimensions")
    f = q1.field
    if not isinstance(f, GF) or f.order > 4 or q1.dim > 4:
        raise TooLarge("isometry search is limited to dim <= 4 over "
                       "gf(2)/gf(4)")
    n = q1.dim
    felems = list(f.elements())
    vectors = [v for v in _all_vectors(felems, n)]
    vals1 = sorted(q1.evaluate(v).rep for v in vectors)
    vals2 = sorted(q2.evaluate(v).rep for v in vectors)
    if vals1 != vals2:
        return None
    basis = _standard_vectors(f, n)
    targets_q = [q1.evaluate(b) for b in basis]
    targets_b = [[q1.bilinear(basis[i], basis[j]) for j in range(i)]
                 for i in range(n)]
    nonzero = [v for v in vectors if any(v)]

    chosen = []

    def independent(cand):
        rows = [list(c) for c in chosen] + [list(cand)]
        return Matrix(f, rows).rank() == len(rows)

    def extend(i):
        if i == n:
            return True
        for v in nonzero:
            if q2.evaluate(v) != targets_q[i]:
                continue
            if any(q2.bilinear(chosen[j], v) != targets_b[i][j]
                   for j in range(i)):
                continue
            if not independent(v):
                continue
            chosen.append(v)
            if extend(i + 1):
                return True
            chosen.pop()
        return False

    if not extend(0):
        return None
    M = Matrix(f, [list(c) for c in chosen]).transpose()
    for v in vectors:  # re-verify exhaustively before emitting
        if q2.evaluate(M * tuple(v)) != q1.evaluate(v):
            return None
    return M


def _all_vectors(felems, n):
    if n == 0:
        yield ()
        return
    for rest in _all_vectors(felems, n - 1):
        for c in felems:
            yield (c,) + rest


def _standard_vectors(f, n):
    return [tuple(f.one if j == i else f.zero for j in range(n))
            for i in range(n)]


# --- involution enumeration ---------------------------------------------------

class InvolutionClass:
    """One conjugacy class: representative, members, verified witnesses
    (member matrix entries -> conjugating Matrix)."""

    __slots__ = ("type_label", "representative", "members", "witnesses")

    def __init__(self, type_label, representative, members, witnesses):
        self.type_label = type_label
        self.representative = representative
        self.members = members
        self.witnesses = witnesses

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return (f"InvolutionClass(type {self.type_label}, "
                f"{len(self.members)} members)")


class EnumerationResult:
    __slots__ = ("classes", "involutions", "fixed_dimensions", "elapsed")

    def __init__(self, classes, involutions, fixed_dimensions, elapsed):
        self.classes = classes
        self.involutions = involutions
        self.fixed_dimensions = fixed_dimensions
        self.elapsed = elapsed

    def class_counts(self):
        out = {}
        for c in self.classes:
            out[c.type_label] = out.get(c.type_label, 0) + 1
        return out


def enumerate_involutions(algebra):
    """All involutions arising from the two construction families, with
    an exact conjugacy partition against the full automorphism group.

    Type labels come from the conjugation-invariant fixed-space
    dimension: 6 -> "I" (fixes quaternion subalgebras elementwise; this
    includes every (B, b) construction with q(b) = 0), 4 -> "II"."""
    from . import gf2fast
    from .involution import (find_admissible_r, make_type_I, make_type_II,
                             bhat, _gf2_automorphisms, InvolutionError)

    f = algebra.field
    if not isinstance(f, GF) or f.n > 2 or algebra.dim != 8:
        raise DomainTooLarge("enumeration needs a dim-8 algebra over "
                             "gf(2) or gf(4)")
    if (f.order ** algebra.dim) ** 2 > _capped(HARD_SWEEP_CAP):
        raise DomainTooLarge("subalgebra pair scan exceeds the sweep cap")
    start = time.monotonic()
    tables = gf2fast.Tables(algebra)
    n = tables.norms
    mul = tables.mul

    def bil(x, y):
        return n[x ^ y] ^ n[x] ^ n[y]

    def span4(gens):
        out = {0}
        for g in gens:
            out |= {x ^ g for x in out}
        return out

    def closed(span):
        return all(mul(x, y) in span for x in span for y in span)

    quat_spans = {}
    ts_spans = {}
    seen_spans = set()
    for a in range(2, 256):
        for b in range(a + 1, 256):
            gens = (1, a, b, mul(a, b))
            span = span4(gens)
            if len(span) != 16:
                continue
            key = frozenset(span)
            if key in seen_spans:
                continue
            seen_spans.add(key)
            pairs = [bil(x, y) for i, x in enumerate(gens)
                     for y in gens[i + 1:]]
            if not any(pairs):
                if closed(span):
                    ts_spans[key] = gens
            else:
                # quaternion iff the bilinear form is nondegenerate
                rank = Matrix(f, [[f.element(bil(x, y)) for y in gens]
                                  for x in gens]).rank()
                if rank == 4 and closed(span):
                    quat_spans[key] = gens

    def to_rows(gens):
        return [[f.element((g >> i) & 1) for i in range(8)] for g in gens]

    involutions = {}
    for gens in quat_spans.values():
        try:
            D = make_subalgebra(algebra, to_rows(gens))
        except CompositionError:
            continue
        if D.tag != "Quaternion":
            continue
        verdict = find_admissible_r(D)
        if verdict.kind != "yes":
            continue
        for r in verdict.witness:
            t = make_type_I(D, r)
            involutions.setdefault(gf2fast.from_matrix(t.matrix), t)
    for gens in ts_spans.values():
        try:
            B = make_subalgebra(algebra, to_rows(gens))
        except CompositionError:
            continue
        if B.tag != "TotallySingular":
            continue
        try:
            bh = bhat(B)
        except InvolutionError:
            continue
        for b in bh.elements():
            if not b:
                continue
            t = make_type_II(B, b)
            involutions.setdefault(gf2fast.from_matrix(t.matrix), t)

    auts = _gf2_automorphisms(algebra)
    ident = gf2fast.identity_mat(8)
    assigned = {}
    classes = []
    fixed_dims = {}
    for bm, t in involutions.items():
        fixed_dims[bm] = 8 - (t.matrix
                              + Matrix.identity(f, 8)).rank()
    for bm, t in involutions.items():
        if bm in assigned:
            continue
        members = []
        witnesses = {}
        for g in auts:
            gi = gf2fast.mat_inverse(g, 8)
            img = gf2fast.mat_mul(gf2fast.mat_mul(g, bm), gi)
            if img in involutions and img not in assigned:
                assigned[img] = True
                gm = gf2fast.to_matrix(f, g)
                s = involutions[img]
                # verified merge: g t g^-1 = s as exact matrices
                if (gm * t.matrix * gm.inverse() != s.matrix
                        or not is_automorphism(algebra, gm)):
                    raise OracleError("witness verification failed")
                members.append(s)
                witnesses[img] = gm
        label = "I" if fixed_dims[bm] == 6 else "II"
        classes.append(InvolutionClass(label, t, members, witnesses))
    return EnumerationResult(classes, list(involutions.values()),
                             fixed_dims, time.monotonic() - start)


# --- group closure --------------------------------------------------------------

def group_closure(generators, cap=HARD_CLOSURE_CAP):
    """Closure of a set of invertible matrices under multiplication."""
    cap = min(cap, _capped(HARD_CLOSURE_CAP))
    if not generators:
        return set()
    closure = {}
    for g in generators:
        closure[g.entries] = g
    frontier = list(closure.values())
    while frontier:
        nxt = []
        for a in frontier:
            for g in generators:
                for prod in (a * g, g * a):
                    if prod.entries not in closure:
                        closure[prod.entries] = prod
                        nxt.append(prod)
                        if len(closure) > cap:
                            raise CapExceeded(
                                f"closure exceeded {cap} elements")
        frontier = nxt
    return set(closure.values())
