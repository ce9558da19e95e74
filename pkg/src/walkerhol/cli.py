"""Command-line front end.

Exit status: 0 on success, 1 when a mathematical check fails, 2 on usage,
parse or input errors.  ``--format json`` emits a versioned document whose
numbers are exact strings.
"""

import argparse
import json
import sys

from gmpy2 import mpq

from .errors import Mismatch, NotStabilized, WalkerholError

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _q(x):
    return str(mpq(x))


def _expr(f):
    from .exact import format_expr

    return format_expr(f)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from None


def _load_metric(path):
    from .walker import WalkerMetric

    return WalkerMetric.from_dict(_load_json(path))


def _point(text, n):
    if text is None or text.strip() == "0":
        return (mpq(0),) * (n + 2)
    try:
        vals = tuple(mpq(t.strip()) for t in text.split(","))
    except ValueError:
        raise UsageError(f"bad point {text!r}") from None
    if len(vals) != n + 2:
        raise UsageError(f"point needs {n + 2} coordinates (v, x1..x{n}, u)")
    return vals


def _rational(text, what):
    try:
        return mpq(text)
    except ValueError:
        raise UsageError(f"bad {what} {text!r}") from None


# --- verbs -------------------------------------------------------------------

def _pspace(args):
    from .curvspaces import pspace, split_p0_p1, weak_berger
    from .liealg import parse_algebra

    h = parse_algebra(args.algebra)
    ps = pspace(h)
    p0, p1 = split_p0_p1(ps)
    _, ok = weak_berger(h, ps)
    text = (
        f"{args.algebra} in so({h.n}): dim P = {ps.dim}, P1 = {p1.dim}, "
        f"weak-Berger: {'yes' if ok else 'no'}"
    )
    doc = {"algebra": args.algebra, "n": h.n, "dim_P": ps.dim, "dim_P0": p0.dim,
           "dim_P1": p1.dim, "weak_berger": ok}
    return EXIT_OK, text, doc


def _weakberger(args):
    from .curvspaces import weak_berger
    from .liealg import identify, parse_algebra

    h = parse_algebra(args.algebra)
    L, ok = weak_berger(h)
    name = identify(L) or f"dim {L.dim}"
    text = f"L(P({args.algebra})) = {name} (dim {L.dim} of {h.dim}): weak-Berger {'PASS' if ok else 'FAIL'}"
    doc = {"algebra": args.algebra, "dim_h": h.dim, "dim_L": L.dim, "L": name, "weak_berger": ok}
    return EXIT_OK, text, doc


def _rspace(args):
    from .curvspaces import rspace
    from .liealg import SimSubalgebraSpec, parse_algebra, sim_embed

    h = parse_algebra(args.algebra)
    if args.type is None:
        g, label = h, args.algebra
    else:
        if args.type not in (1, 2):
            raise UsageError("--type must be 1 or 2")
        spec = SimSubalgebraSpec(args.type, h)
        g, label = sim_embed(spec), spec.label(args.algebra)
    d = rspace(g).dim
    return EXIT_OK, f"dim R({label}) = {d}", {"algebra": label, "dim_R": d}


def _realization_input(d):
    from .curvspaces import build_P
    from .holonomy import Thm18Input

    try:
        P_spec = d["P"]
        kind = P_spec["kind"]
        params = P_spec.get("params", {})
        type_tag = int(d.get("type", 2))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed build spec: {exc}") from None
    P = build_P(kind, **params)
    phi = d.get("phi")
    psi = d.get("psi")
    if phi is not None:
        phi = [mpq(x) for x in phi]
    if psi is not None:
        psi = [[mpq(x) for x in row] for row in psi]
    return Thm18Input(P.h, P, type_tag, phi=phi, m=d.get("m"), psi=psi)


def _build(args):
    from .holonomy import build_metric_thm18

    inp = _realization_input(_load_json(args.input))
    g = build_metric_thm18(inp)
    doc = g.to_dict()
    if args.metric_out:
        with open(args.metric_out, "w") as fh:
            fh.write(g.to_json() + "\n")
    text = f"{inp.spec.label()}: n = {g.n}\n" + g.to_json()
    return EXIT_OK, text, {"target": inp.spec.label(), "metric": doc}


def _curvature(args):
    from .walker import extract_components, geometry_of

    g = _load_metric(args.metric)
    c = extract_components(g)
    s = geometry_of(g).scalar
    doc = {
        "lambda": _expr(c.lam),
        "v": [_expr(x) for x in c.v_low],
        "T": [[_expr(x) for x in row] for row in c.T],
        "P_low": {",".join(map(str, k)): _expr(v) for k, v in sorted(c.P_low.items()) if v},
        "scalar": _expr(s),
    }
    lines = [f"lambda = {doc['lambda']}", f"v = {doc['v']}"]
    lines += [f"T[{i}] = {row}" for i, row in enumerate(doc["T"])]
    lines += [f"P{k} = {v}" for k, v in doc["P_low"].items()]
    lines.append(f"scalar = {doc['scalar']}")
    return EXIT_OK, "\n".join(lines), doc


def _holonomy(args):
    from .holonomy import classify_span, holonomy_span
    from .liealg import identify

    g = _load_metric(args.metric)
    pt = _point(args.point, g.n)
    try:
        hs = holonomy_span(g, pt, args.max_order)
    except NotStabilized as exc:
        doc = {"stabilized": False, "dim": exc.partial.dim if exc.partial else None,
               "message": str(exc)}
        return EXIT_FAIL, f"not stabilized: {exc}", doc
    spec = classify_span(hs)
    label = spec.label(identify(spec.h) or spec.h.name) if hs.dim else "0"
    text = f"{label}, dim {hs.dim}"
    doc = {"algebra": label, "dim": hs.dim, "order": hs.order, "stabilized": hs.stabilized}
    code = EXIT_OK
    if args.expect is not None:
        doc["expected"] = args.expect
        if args.expect != label:
            text += f" (expected {args.expect})"
            code = EXIT_FAIL
    return code, text, doc


def _einstein(args):
    from .einstein import einstein_residuals

    if args.Lambda is None:
        raise UsageError("einstein needs --lambda")
    g = _load_metric(args.metric)
    r = einstein_residuals(g, _rational(args.Lambda, "lambda"))
    items = [(name, val) for name, val in r.items()]
    doc = {"Lambda": _q(r.Lambda), "residuals": {name: _expr(v) for name, v in items if v},
           "einstein": r.all_zero}
    lines = [f"{name}: {'0' if not v else _expr(v)}" for name, v in items]
    lines.append("Einstein: " + ("yes" if r.all_zero else "no"))
    return (EXIT_OK if r.all_zero else EXIT_FAIL), "\n".join(lines), doc


def _petrov(args):
    from .einstein import petrov_type_4d

    g = _load_metric(args.metric)
    L = None if args.Lambda is None else _rational(args.Lambda, "lambda")
    pf = petrov_type_4d(g, L)
    doc = {"detT": _expr(pf.detT), "locus_D": pf.locus_D()}
    text = f"det T = {doc['detT']}\ntype D on {doc['locus_D']}, type II elsewhere"
    if args.point is not None:
        t = pf.type_at(_point(args.point, g.n))
        doc["type_at_point"] = t
        text += f"\ntype at point: {t}"
    return EXIT_OK, text, doc


def _cf_spec(d):
    from .specialgeom import ConformallyFlatSpec

    try:
        return ConformallyFlatSpec(
            int(d["n"]), d["branch"], lam=d.get("lambda", 0), a=d.get("a", 0),
            C=d.get("C"), D=d.get("D"), D0=d.get("D0", 0), K=d.get("K", 0),
        )
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed conformally flat spec: {exc}") from None


def _confflat(args):
    from .specialgeom import build_conformally_flat, check_conformally_flat, classify_cf_holonomy

    spec = _cf_spec(_load_json(args.input))
    g = build_conformally_flat(spec)
    rep = check_conformally_flat(g)
    doc = {"metric": g.to_dict(), "weyl_zero": rep.weyl_zero, "scalar": _expr(rep.scalar),
           "scalar_matches": rep.scalar_matches, "nordstrom": rep.nordstrom}
    lines = [f"Weyl zero: {rep.weyl_zero}", f"scalar = {doc['scalar']} (matches: {rep.scalar_matches})"]
    if rep.nordstrom is not None:
        lines.append(f"Nordstrom solution: {rep.nordstrom}")
    ok = rep.ok
    if not args.no_holonomy:
        hol = classify_cf_holonomy(spec, max_order=args.max_order)
        doc.update(expected_holonomy=hol.expected, holonomy_dim=hol.computed.dim,
                   holonomy_confirmed=hol.confirmed)
        lines.append(f"holonomy: {hol.expected}, computed dim {hol.computed.dim}, confirmed: {hol.confirmed}")
        ok = ok and hol.confirmed is not False
    return (EXIT_OK if ok else EXIT_FAIL), "\n".join(lines), doc


def _twosym(args):
    from .specialgeom import TwoSymmetricSpec, build_2symmetric, check_2symmetric

    d = _load_json(args.input)
    try:
        spec = TwoSymmetricSpec(int(d["n"]), d["Hdiag"], d["F"])
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed 2-symmetric spec: {exc}") from None
    g = build_2symmetric(spec)
    rep = check_2symmetric(g, max_order=args.max_order)
    S = [[_q(x) for x in row] for row in rep.S] if rep.S is not None else None
    doc = {"metric": g.to_dict(), "nabla2_R_zero": rep.nabla2_zero, "nabla_R_nonzero": rep.nabla_nonzero,
           "S": S, "f": None if rep.scalar_f is None else _q(rep.scalar_f),
           "holonomy_Rn": rep.holonomy_Rn}
    lines = [
        f"nabla^2 R = 0: {rep.nabla2_zero}",
        f"nabla R != 0: {rep.nabla_nonzero}",
        f"nabla R = du (x) S_ij (p^d_i)(x)(p^d_j), S = {S}",
        "single scalar f = " + (doc["f"] if doc["f"] is not None else "none"),
        f"holonomy R^n: {rep.holonomy_Rn}",
    ]
    return (EXIT_OK if rep.ok else EXIT_FAIL), "\n".join(lines), doc


def _report_dimensions(args):
    from .curvspaces.dimension_table import dimension_report

    rows = dimension_report(args.rows)
    lines, out, failing = [], [], []
    for r in rows:
        c = r.claim
        mark = "ok" if r.matches else f"MISMATCH (expected {c.dim_P}/{c.dim_P0}/{c.dim_P1})"
        lines.append(f"{c.label:<14} n={r.n:<2} dim P = {r.dim_P:<4} P0 = {r.dim_P0:<4} P1 = {r.dim_P1:<3} {mark}")
        out.append({"row": c.label, "n": r.n, "dim_P": r.dim_P, "dim_P0": r.dim_P0, "dim_P1": r.dim_P1,
                    "expected": [c.dim_P, c.dim_P0, c.dim_P1], "matches": r.matches,
                    "weak_berger": r.weak_berger})
        if not r.matches:
            failing.append(c.label)
    if failing:
        lines.append("failing rows: " + ", ".join(failing))
    return (EXIT_FAIL if failing else EXIT_OK), "\n".join(lines), {"rows": out, "failing": failing}


VERBS = {
    "pspace": _pspace,
    "weakberger": _weakberger,
    "rspace": _rspace,
    "build": _build,
    "curvature": _curvature,
    "holonomy": _holonomy,
    "einstein": _einstein,
    "petrov": _petrov,
    "confflat": _confflat,
    "twosym": _twosym,
    "report-table1": _report_dimensions,
}


def make_parser():
    p = _Parser(prog="walkerhol", description="Exact holonomy computations for Walker metrics.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in ("pspace", "weakberger"):
        s = sub.add_parser(verb, parents=[common])
        s.add_argument("--algebra", required=True)
    s = sub.add_parser("rspace", parents=[common])
    s.add_argument("--algebra", required=True)
    s.add_argument("--type", type=int)
    s = sub.add_parser("build", parents=[common])
    s.add_argument("--input", required=True)
    s.add_argument("--metric-out")
    s = sub.add_parser("curvature", parents=[common])
    s.add_argument("--metric", required=True)
    s = sub.add_parser("holonomy", parents=[common])
    s.add_argument("--metric", required=True)
    s.add_argument("--point")
    s.add_argument("--max-order", type=int)
    s.add_argument("--expect")
    s = sub.add_parser("einstein", parents=[common])
    s.add_argument("--metric", required=True)
    s.add_argument("--lambda", dest="Lambda")
    s = sub.add_parser("petrov", parents=[common])
    s.add_argument("--metric", required=True)
    s.add_argument("--lambda", dest="Lambda")
    s.add_argument("--point")
    s = sub.add_parser("confflat", parents=[common])
    s.add_argument("--input", required=True)
    s.add_argument("--max-order", type=int)
    s.add_argument("--no-holonomy", action="store_true")
    s = sub.add_parser("twosym", parents=[common])
    s.add_argument("--input", required=True)
    s.add_argument("--max-order", type=int)
    s = sub.add_parser("report-table1", parents=[common])
    s.add_argument("--rows", nargs="*")
    return p


def _render(fmt, verb, code, text, doc):
    if fmt == "json":
        body = {"schema": SCHEMA, "verb": verb, "status": ["ok", "fail"][code], **doc}
        return json.dumps(body, indent=2, sort_keys=True)
    return text


def run(argv, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = make_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        code, text, doc = VERBS[args.verb](args)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except Mismatch as exc:
        print(f"FAIL: {exc}", file=stderr)
        return EXIT_FAIL
    except WalkerholError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_USAGE
    report = _render(args.format, args.verb, code, text, doc)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(report + "\n")
    else:
        print(report, file=stdout)
    return code


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))
