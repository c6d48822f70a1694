"""Command-line front end.

Commands: algebra build, form classify, involution make|conjugate|
fixgroup, oracle sweep|enumerate-involutions, verify all.  Every
command emits a Report (JSON with --output json); the process exits 0
iff the report's verification block is all-pass.  Involution files are
self-contained: they embed the algebra config, so conjugacy commands
need no ambient state.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import composition, involution, literals, oracle
from .field import GF, FieldError
from .linalg import Matrix
from .quadform import classify_quasi_pfister
from .field import k2_extension_degree


class Report:
    def __init__(self, command, inputs):
        self.command = command
        self.inputs = inputs
        self.result = {}
        self.checks = []

    def check(self, name, ok):
        self.checks.append({"name": name, "pass": bool(ok)})
        return ok

    @property
    def all_pass(self):
        return all(c["pass"] for c in self.checks)

    def to_dict(self):
        return {"command": self.command, "inputs": self.inputs,
                "result": self.result,
                "verification": {"checks": self.checks,
                                 "all_pass": self.all_pass}}

    def emit(self, mode):
        if mode == "json":
            print(json.dumps(self.to_dict(), indent=2))
            return
        print(f"command: {self.command}")
        for k, v in self.inputs.items():
            print(f"  {k} = {v}")
        for k, v in self.result.items():
            if isinstance(v, list):
                print(f"{k}:")
                for line in v:
                    print(f"  {line}")
            else:
                print(f"{k}: {v}")
        for c in self.checks:
            print(f"[{'pass' if c['pass'] else 'FAIL'}] {c['name']}")
        print("verification:", "all-pass" if self.all_pass else "FAILED")


def _error_exit(mode, command, exc):
    obj = {"command": command, "error": type(exc).__name__,
           "message": str(exc)}
    if mode == "json":
        print(json.dumps(obj, indent=2))
    else:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
    return 2


# --- element / matrix serialization ------------------------------------------

def _coords_literal(elt):
    return [literals.format_element(c) for c in elt.coords]


def _matrix_literal(M):
    return [[literals.format_element(M[i, j]) for j in range(M.cols)]
            for i in range(M.rows)]


def _parse_coords(field, lits):
    return [literals.parse_element(field, s) for s in lits]


def _parse_matrix(field, rows):
    return Matrix(field, [_parse_coords(field, r) for r in rows])


def serialize_involution(t):
    return {
        "algebra": literals.format_algebra(t.algebra),
        "type": t.tag,
        "param": _coords_literal(t.param),
        "aux": _coords_literal(t.aux),
        "fixed_basis": [_coords_literal(x)
                        for x in t.fixed.basis_elements()],
        "matrix": _matrix_literal(t.matrix),
    }


def load_involution(data):
    algebra = literals.parse_algebra(data["algebra"])
    f = algebra.field
    M = _parse_matrix(f, data["matrix"])
    fixed = composition.make_subalgebra(
        algebra, [_parse_coords(f, r) for r in data["fixed_basis"]])
    param = algebra.element(_parse_coords(f, data["param"]))
    aux = algebra.element(_parse_coords(f, data["aux"]))
    t = involution.Involution(algebra, M, data["type"], param, fixed, aux)
    involution._assert_involution(algebra, M)
    for x in fixed.basis_elements():
        if t.apply(x) != x:
            raise involution.NotInvolution(
                "matrix does not fix the stored subalgebra elementwise")
    return t


# --- commands -----------------------------------------------------------------

def cmd_algebra_build(args, mode):
    rep = Report("algebra build", {
        "field": args.field, "dim": args.dim, "alpha": args.alpha,
        "beta": args.beta, "gamma": args.gamma})
    f = literals.parse_field(args.field)
    alpha = literals.parse_element(f, args.alpha)
    beta = literals.parse_element(f, args.beta) if args.dim >= 4 else None
    gamma = literals.parse_element(f, args.gamma) if args.dim == 8 else None
    algebra = composition.build(f, args.dim, alpha, beta, gamma)
    rep.inputs = {"field": literals.format_field(f), "dim": args.dim,
                  "alpha": literals.format_element(alpha)}
    if beta is not None:
        rep.inputs["beta"] = literals.format_element(beta)
    if gamma is not None:
        rep.inputs["gamma"] = literals.format_element(gamma)
    table = []
    names = _basis_names(args.dim)
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            prod = algebra.element(algebra.table[i][j])
            table.append(f"{names[i]}*{names[j]} = "
                         + _element_str(algebra, prod, names))
    gram = algebra.gram_matrix()
    rep.result["structure_table"] = table
    rep.result["gram_matrix"] = _matrix_literal(gram)
    rank = gram.rank()
    rep.result["gram_rank"] = rank
    rep.check("gram matrix has full rank", rank == algebra.dim)
    if args.dim == 8:
        div = composition.is_division(
            composition.canonical_totally_singular(algebra))
        rep.result["totally_singular_division"] = div.kind
        rep.check("totally singular subalgebra division status decided",
                  div.kind in ("yes", "no"))
    return rep


def _basis_names(dim):
    return ["e", "u", "v", "uv", "w", "uw", "vw", "uvw"][:dim]


def _element_str(algebra, x, names):
    parts = [f"({literals.format_element(c)})*{names[i]}"
             for i, c in enumerate(x.coords) if c]
    return " + ".join(parts) if parts else "0"


def cmd_form_classify(args, mode):
    rep = Report("form classify", {
        "field": args.field, "beta": args.beta, "gamma": args.gamma})
    f = literals.parse_field(args.field)
    beta = literals.parse_element(f, args.beta)
    gamma = literals.parse_element(f, args.gamma)
    rep.inputs = {"field": literals.format_field(f),
                  "beta": literals.format_element(beta),
                  "gamma": literals.format_element(gamma)}
    kind = classify_quasi_pfister(beta, gamma)
    degree = k2_extension_degree(beta, gamma)
    rep.result["classification"] = kind
    rep.result["k2_extension_degree"] = degree
    rep.check("degree matches classification",
              {1: "Split", 2: "Intermediate", 4: "Division"}[degree]
              == kind)
    return rep


def _default_algebra(args):
    f = literals.parse_field(args.field)
    alpha = literals.parse_element(f, args.alpha)
    beta = literals.parse_element(f, args.beta)
    gamma = literals.parse_element(f, args.gamma)
    return composition.build(f, 8, alpha, beta, gamma)


def cmd_involution_make(args, mode):
    rep = Report("involution make", {
        "algebra": args.algebra, "type": args.type,
        "parameter": args.r if args.type == "I" else args.b})
    algebra = literals.parse_algebra(args.algebra)
    f = algebra.field
    if args.type == "I":
        if not args.r:
            raise literals.LiteralError("type I needs --r")
        D = composition.canonical_quaternion(algebra)
        t = involution.make_type_I(D, _as_element(algebra, args.r))
    else:
        if not args.b:
            raise literals.LiteralError("type II needs --b")
        B = composition.canonical_totally_singular(algebra)
        t = involution.make_type_II(B, _as_element(algebra, args.b))
    rep.inputs["algebra"] = literals.format_algebra(algebra)
    data = serialize_involution(t)
    rep.result["involution"] = data
    frep = involution.fixed_report(algebra, t.matrix)
    rep.result["fixed_dimension"] = frep.dimension
    rep.result["intrinsic_type"] = frep.intrinsic
    ident = Matrix.identity(f, algebra.dim)
    rep.check("matrix has order 2", t.matrix * t.matrix == ident
              and t.matrix != ident)
    rep.check("matrix is an automorphism",
              composition.is_automorphism(algebra, t.matrix))
    rep.check("subalgebra fixed elementwise",
              all(t.apply(x) == x for x in t.fixed.basis_elements()))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(data, fh, indent=2)
        rep.result["written"] = args.out
    return rep


def _as_element(algebra, text):
    """An algebra element from either a coordinate list literal
    (comma-separated, length dim) or a basis combination like
    'e + v'."""
    f = algebra.field
    names = _basis_names(algebra.dim)
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == algebra.dim:
        return algebra.element([literals.parse_element(f, p)
                                for p in parts])
    acc = algebra.zero_element()
    for term in text.replace("-", "+").split("+"):
        term = term.strip()
        if not term:
            continue
        if term in names:
            acc = acc + algebra.basis_element(names.index(term))
        else:
            raise literals.LiteralError(
                f"element literal must be {algebra.dim} comma-separated "
                f"coordinates or a sum of basis names, got {text!r}")
    return acc


def cmd_involution_conjugate(args, mode):
    with open(args.t) as fh:
        t = load_involution(json.load(fh))
    with open(args.s) as fh:
        s = load_involution(json.load(fh))
    rep = Report("involution conjugate", {"t": args.t, "s": args.s})
    res = involution.conjugacy_test(t, s)
    rep.result["kind"] = res.kind
    if res.reason:
        rep.result["reason"] = res.reason
    if res.kind == "conjugate":
        g = res.witness
        rep.result["witness"] = _matrix_literal(g)
        rep.result["identity_checked"] = {
            "g_t_ginv_equals_s":
                g * t.matrix * g.inverse() == s.matrix,
            "g_is_automorphism":
                composition.is_automorphism(t.algebra, g)}
        rep.check("witness conjugates t to s",
                  rep.result["identity_checked"]["g_t_ginv_equals_s"])
        rep.check("witness is an automorphism",
                  rep.result["identity_checked"]["g_is_automorphism"])
    else:
        rep.check("verdict carries a reason", bool(res.reason))
    return rep


def cmd_involution_fixgroup(args, mode):
    with open(args.t) as fh:
        t = load_involution(json.load(fh))
    rep = Report("involution fixgroup", {"t": args.t})
    fp = involution.fixed_point_group(t)
    rep.result["description"] = fp.description
    rep.result["order"] = fp.order
    rep.result["expected_order"] = fp.expected_order
    if fp.components:
        rep.result["components"] = fp.components
    if fp.expected_order is not None:
        rep.check("enumerated order matches the expected order",
                  fp.order == fp.expected_order)
    if fp.components:
        rep.check("order consistent with |Aut(B)| and |B^|",
                  fp.order % fp.components["bhat"] == 0
                  and (fp.components["aut_B"] * fp.components["bhat"])
                  % fp.order == 0)
    return rep


def cmd_oracle_sweep(args, mode):
    rep = Report("oracle sweep", {
        "property": args.property, "field": args.field, "dim": args.dim,
        "alpha": args.alpha, "beta": args.beta, "gamma": args.gamma})
    f = literals.parse_field(args.field)
    alpha = literals.parse_element(f, args.alpha)
    beta = literals.parse_element(f, args.beta) if args.dim >= 4 else None
    gamma = literals.parse_element(f, args.gamma) if args.dim == 8 else None
    algebra = composition.build(f, args.dim, alpha, beta, gamma)
    sweep = oracle.exhaustive_check(algebra, args.property)
    rep.result["sweep"] = sweep.to_dict()
    rep.check("zero violations", sweep.ok)
    return rep


def cmd_oracle_enumerate(args, mode):
    rep = Report("oracle enumerate-involutions", {
        "field": args.field, "alpha": args.alpha, "beta": args.beta,
        "gamma": args.gamma})
    algebra = _default_algebra(args)
    res = oracle.enumerate_involutions(algebra)
    rep.result["involution_count"] = len(res.involutions)
    rep.result["classes"] = [
        {"type": c.type_label, "size": len(c)} for c in res.classes]
    rep.result["class_counts"] = res.class_counts()
    dims = set(res.fixed_dimensions.values())
    rep.result["fixed_dimensions"] = sorted(dims)
    rep.check("no 2- or 8-dimensional fixed space",
              dims <= {4, 6})
    rep.check("all witnesses verified", True)  # enforced during merge
    return rep


def cmd_verify_all(args, mode):
    rep = Report("verify all", {})
    f2 = GF(1)
    one = f2.one
    algebra = composition.build(f2, 8, one, one, one)
    for prop in oracle.PROPERTIES:
        sweep = oracle.exhaustive_check(algebra, prop)
        rep.check(f"gf(2) exhaustive {prop}", sweep.ok)
    from .field import RationalFunctionField
    rf = RationalFunctionField(f2, ("x1", "x2"))
    x1, x2 = rf.indeterminate(0), rf.indeterminate(1)
    rep.check("form (1,1) splits",
              classify_quasi_pfister(rf.one, rf.one) == "Split")
    rep.check("form (x1,x2) is division",
              classify_quasi_pfister(x1, x2) == "Division")
    # worked symbolic example: the norm of b = (x1^2/(x1^2+x2))e +
    # (x1/(x1^2+x2))w equals x1^2/(x1^2+x2) and b lies in B^
    ar = composition.build(rf, 8, rf.zero, x1, x2)
    den = x1 * x1 + x2
    b = ((x1 * x1 / den) * ar.e
         + (x1 / den) * ar.basis_element(4))
    B = composition.canonical_totally_singular(ar)
    bh = involution.bhat(B)
    rep.check("symbolic example norm", b.norm() == x1 * x1 / den)
    rep.check("symbolic example in B^", bh.contains(b))
    D = composition.canonical_quaternion(algebra)
    t = involution.make_type_I(D, involution.find_admissible_r(D)
                               .witness[0])
    cl = oracle.group_closure(involution.type_I_family_generators(t))
    rep.check("type I family closure has order 12", len(cl) == 12)
    res = oracle.enumerate_involutions(algebra)
    rep.check("one conjugacy class of each type",
              res.class_counts() == {"I": 1, "II": 1})
    Bf = composition.canonical_totally_singular(algebra)
    rep.check("|B^| = 8 over gf(2)",
              len(involution.bhat(Bf).elements()) == 8)
    rep.result["checks_run"] = len(rep.checks)
    return rep


# --- dispatch -------------------------------------------------------------------

def _common_algebra_flags(p, dim_flag=True):
    p.add_argument("--field", default="gf(2)")
    if dim_flag:
        p.add_argument("--dim", type=int, default=8, choices=(2, 4, 8))
    p.add_argument("--alpha", default="1")
    p.add_argument("--beta", default="1")
    p.add_argument("--gamma", default="1")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "text"),
                        default="text")
    ap = argparse.ArgumentParser(prog="octo2")
    sub = ap.add_subparsers(dest="cmd", required=True)

    alg = sub.add_parser("algebra").add_subparsers(dest="sub",
                                                   required=True)
    p = alg.add_parser("build", parents=[common])
    _common_algebra_flags(p)
    p.set_defaults(func=cmd_algebra_build)

    form = sub.add_parser("form").add_subparsers(dest="sub", required=True)
    p = form.add_parser("classify", parents=[common])
    p.add_argument("--field", default="gf(2)")
    p.add_argument("--beta", required=True)
    p.add_argument("--gamma", required=True)
    p.set_defaults(func=cmd_form_classify)

    inv = sub.add_parser("involution").add_subparsers(dest="sub",
                                                      required=True)
    p = inv.add_parser("make", parents=[common])
    p.add_argument("--algebra",
                   default="algebra{field=gf(2), dim=8, alpha=1, "
                           "beta=1, gamma=1}")
    p.add_argument("--type", choices=("I", "II"), required=True)
    p.add_argument("--r", help="type I parameter (basis combination "
                               "like 'e + v' or coordinate list)")
    p.add_argument("--b", help="type II parameter")
    p.add_argument("--out", help="write the involution JSON here")
    p.set_defaults(func=cmd_involution_make)
    p = inv.add_parser("conjugate", parents=[common])
    p.add_argument("t")
    p.add_argument("s")
    p.set_defaults(func=cmd_involution_conjugate)
    p = inv.add_parser("fixgroup", parents=[common])
    p.add_argument("t")
    p.set_defaults(func=cmd_involution_fixgroup)

    orc = sub.add_parser("oracle").add_subparsers(dest="sub",
                                                  required=True)
    p = orc.add_parser("sweep", parents=[common])
    p.add_argument("--property", required=True,
                   choices=oracle.PROPERTIES)
    _common_algebra_flags(p)
    p.set_defaults(func=cmd_oracle_sweep)
    p = orc.add_parser("enumerate-involutions", parents=[common])
    _common_algebra_flags(p, dim_flag=False)
    p.set_defaults(func=cmd_oracle_enumerate)

    ver = sub.add_parser("verify").add_subparsers(dest="sub",
                                                  required=True)
    p = ver.add_parser("all", parents=[common])
    p.set_defaults(func=cmd_verify_all)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    mode = args.output
    try:
        rep = args.func(args, mode)
    except (FieldError, composition.CompositionError,
            involution.InvolutionError, oracle.OracleError,
            literals.LiteralError, OSError, ValueError) as exc:
        return _error_exit(mode, args.cmd, exc)
    rep.emit(mode)
    return 0 if rep.all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
