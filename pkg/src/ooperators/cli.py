"""Command-line front end.

Exit codes: 0 when the checked property holds or the computation succeeded,
1 when a checked property fails (a witness is printed), 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

import numpy as np

from . import fixtures
from .algebra import adjoint_bimodule, validate_algebra, validate_bimodule
from .cochains import NotAnOOperator
from .cohomology import DEFAULT_DEGREE_CAP, DegreeCapExceeded, cohomology_report
from .deformation import (DEFAULT_ORDER_CAP, InvalidDeformation, TruncatedDeformation,
                          certificate_verifies, check_order, formal_equivalence_check,
                          infinitesimal, obstruction)
from .exactla import rational_str, to_rational
from .operators import (Operator, defect_witnesses, is_left_averaging, is_nijenhuis_element,
                        is_right_averaging, is_rota_baxter)
from .problem import ProblemError, ProblemFile
from .rmatrix import (NotAnRMatrix, Wedge2, bialgebra_weak_morphism_check, induced_coproduct,
                      infinitesimal_bialgebra_check, is_r_matrix, weak_morphism_check, yb_bracket)
from .tensor import nonzero_entries, qarray

FIXTURE_NAMES = ("poly3_R", "poly3_D", "dual2", "abelian2", "ut2", "proj2_averaging")
OP_KINDS = ("o-operator", "rota-baxter", "left-averaging", "right-averaging", "averaging")


# -- fixtures ------------------------------------------------------------------

def fixture_problem(name: str) -> ProblemFile:
    if name not in FIXTURE_NAMES:
        raise ProblemError("fixture", f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    op, triples = fixtures.CATALOG[name]()
    kind = "left" if name == "proj2_averaging" else "adjoint"
    pf = ProblemFile(op.algebra, kind, op.bimodule, op.matrix, name=name)
    if triples:
        pf.r_matrix = Wedge2.from_triples(op.algebra, triples)
    if name == "ut2":
        pf.r_matrix = Wedge2.from_triples(op.algebra, [(0, 1, 1)])
        pf.task["nijenhuis_candidates"] = {"E11": qarray([1, 0, 0]), "E12": qarray([0, 1, 0])}
    if name == "poly3_R":
        pf.deformation = [op.matrix]
    return pf


def load_problem(source: str) -> ProblemFile:
    """A path, the same path with ``.json`` appended, or a fixture name."""
    path = Path(source)
    for cand in (path, path.with_name(path.name + ".json")):
        if cand.is_file():
            try:
                return ProblemFile.load(cand)
            except OSError as exc:
                raise ProblemError("<file>", str(exc)) from exc
    if path.stem in FIXTURE_NAMES:
        return fixture_problem(path.stem)
    raise ProblemError("<file>", f"no such file: {source}")


# -- formatting ----------------------------------------------------------------

def fmt_vector(v, labels) -> str:
    terms = []
    for (i,), c in nonzero_entries(qarray(v)):
        lab = labels[i] if labels else f"e{i}"
        c = rational_str(c)
        if lab == "1":
            terms.append(c)
        elif c == "1":
            terms.append(lab)
        elif c == "-1":
            terms.append(f"-{lab}")
        else:
            terms.append(f"{c}*{lab}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def fmt_matrix(m) -> list[list[str]]:
    return [[rational_str(x) for x in row] for row in m]


def _labels(mod):
    return mod.labels or (mod.algebra.labels if mod.dim == mod.algebra.dim else None)


def _label(labels, i):
    return labels[i] if labels else f"e{i}"


def parse_element(text: str, pf: ProblemFile) -> np.ndarray:
    """A named candidate, a basis label, or comma-separated coordinates."""
    alg = pf.algebra
    cands = pf.candidates()
    if text in cands:
        return cands[text]
    if alg.labels and text in alg.labels:
        out = qarray([0] * alg.dim)
        out[alg.labels.index(text)] = to_rational(1)
        return out
    parts = [p.strip() for p in text.strip("[]").split(",")]
    if len(parts) != alg.dim:
        raise ProblemError("--element", f"expected a candidate name, a basis label or {alg.dim} coordinates")
    try:
        return qarray([to_rational(p) for p in parts])
    except (ValueError, ZeroDivisionError) as exc:
        raise ProblemError("--element", f"not a rational vector: {text!r}") from exc


# -- commands ------------------------------------------------------------------

def cmd_validate(pf, args):
    alg_bad = validate_algebra(pf.algebra)
    mod_bad = validate_bimodule(pf.bimodule)
    rep = {"command": "validate", "algebra_dim": pf.algebra.dim, "module_dim": pf.bimodule.dim,
           "associativity_violations": [list(idx) for idx, _, _ in alg_bad],
           "bimodule_violations": [[axiom, list(idx)] for axiom, idx, _, _ in mod_bad]}
    rep["ok"] = not alg_bad and not mod_bad
    rep["summary"] = "structure is valid" if rep["ok"] else "structure axioms fail"
    return rep


def _op_o_operator(pf):
    op = pf.require_operator()
    labels_m, labels_a = _labels(op.bimodule), pf.algebra.labels
    wit = defect_witnesses(op)
    rep = {"kind": "o-operator", "ok": not wit,
           "witnesses": [{"pair": [_label(labels_m, u), _label(labels_m, v)],
                          "T(u)T(v)": fmt_vector(lhs, labels_a),
                          "T(uT(v) + T(u)v)": fmt_vector(rhs, labels_a)}
                         for (u, v), lhs, rhs in wit]}
    rep["summary"] = "defect = 0" if not wit else f"defect != 0 at {len(wit)} basis pairs"
    return rep


def cmd_check_op(pf, args):
    kind = args.kind
    if kind == "o-operator":
        rep = _op_o_operator(pf)
    else:
        mat = pf.operator
        n = pf.algebra.dim
        if mat is None:
            raise ProblemError("operator", "section missing")
        if mat.shape != (n, n):
            raise ProblemError("operator.matrix", f"{kind} needs a square {n}x{n} matrix")
        weight = args.weight if args.weight is not None else pf.task.get("weight", 0)
        if kind == "rota-baxter":
            ok = is_rota_baxter(mat, pf.algebra, weight)
            extra = {"weight": rational_str(weight)}
            adj = Operator(adjoint_bimodule(pf.algebra), mat)
            if to_rational(weight) == 0 and ok != adj.is_o_operator:
                raise ArithmeticError("Rota-Baxter test and adjoint O-operator test disagree")
        else:
            left, right = is_left_averaging(mat, pf.algebra), is_right_averaging(mat, pf.algebra)
            ok = {"left-averaging": left, "right-averaging": right, "averaging": left and right}[kind]
            extra = {"left": left, "right": right}
        rep = {"kind": kind, "ok": ok, **extra,
               "summary": f"{kind} identity {'holds' if ok else 'fails'}"}
    rep["command"] = "check-op"
    return rep


def cmd_cohomology(pf, args):
    op = pf.require_operator()
    cap = pf.task.get("degree_cap", DEFAULT_DEGREE_CAP)
    if args.degree_cap is not None:
        cap = args.degree_cap
    if not op.is_o_operator:
        rep = _op_o_operator(pf)
        rep.update(command="cohomology", summary="not an O-operator: " + rep["summary"])
        return rep
    r = cohomology_report(op, args.degree, cap)
    reps = [[rational_str(x) for x in np.asarray(v).ravel()] for v in r.representatives]
    return {"command": "cohomology", "ok": True, "degree": r.degree, "dim_Z": r.dim_Z,
            "dim_B": r.dim_B, "dim_H": r.dim_H, "representatives": reps,
            "summary": f"dim H^{r.degree} = {r.dim_H}"}


def cmd_nijenhuis(pf, args):
    op = pf.require_operator()
    a = parse_element(args.element, pf)
    if not op.is_o_operator:
        rep = _op_o_operator(pf)
        rep.update(command="nijenhuis", summary="not an O-operator: " + rep["summary"])
        return rep
    r = is_nijenhuis_element(op, a)
    conds = {k: [list(map(int, w)) for w in v] for k, v in r.conditions.items()}
    return {"command": "nijenhuis", "ok": r.ok, "element": fmt_vector(a, pf.algebra.labels),
            "conditions": conds,
            "summary": "Nijenhuis element" if r.ok else f"not Nijenhuis: {', '.join(r.failed())}"}


def _deformation(pf) -> TruncatedDeformation:
    op = pf.require_operator()
    if not pf.deformation:
        raise ProblemError("deformation.terms", "section missing or empty")
    return TruncatedDeformation(op, tuple(pf.deformation))


def cmd_deform(pf, args):
    d = _deformation(pf)
    if not d.base.is_o_operator:
        rep = _op_o_operator(pf)
        rep.update(command=f"deform {args.action}", summary="base is not an O-operator: " + rep["summary"])
        return rep
    if args.action == "check":
        r = check_order(d, args.order if args.order is not None else d.order)
        _, cocycle = infinitesimal(d)
        rep = {"ok": r.ok, "order": d.order, "infinitesimal_is_cocycle": cocycle,
               "summary": "deformation equations hold" if r.ok
               else f"deformation equation fails at order {r.failing_order}"}
        if not r.ok:
            rep["failing_order"] = r.failing_order
            rep["residual"] = [[*map(int, i), rational_str(v)] for i, v in nonzero_entries(r.residual)]
    elif args.action == "extend":
        cap = pf.task.get("order_cap", DEFAULT_ORDER_CAP)
        target = args.order if args.order is not None else d.order + 1
        if target > cap:
            raise ProblemError("--order", f"order {target} is above the cap {cap}")
        rep = {"ok": True, "extensions": []}
        while d.order < target:
            res = obstruction(d)
            if not res.class_trivial:
                rep.update(ok=False, obstructed_at=d.order + 1,
                           obstruction=[[*map(int, i), rational_str(v)] for i, v in nonzero_entries(res.cocycle)],
                           certificate=[rational_str(x) for x in res.certificate],
                           certificate_verifies=certificate_verifies(d, res),
                           summary=f"obstructed at order {d.order + 1}")
                break
            d = d.extended(res.extension)
            rep["extensions"].append(fmt_matrix(res.extension))
        else:
            if not check_order(d):
                raise ArithmeticError("extended deformation fails its own equations")
            rep["summary"] = f"extended to order {d.order}"
        rep["terms"] = [fmt_matrix(t) for t in d.terms]
    else:
        eq = pf.equivalence or {}
        a = parse_element(args.element, pf) if args.element else eq.get("element")
        if a is None:
            raise ProblemError("equivalence.element", "no element given (use --element)")
        target = pf.target_deformation if pf.target_deformation is not None else []
        d2 = TruncatedDeformation(d.base, tuple(target))
        order = args.order if args.order is not None else max(d.order, d2.order)
        r = formal_equivalence_check(d, d2, a, eq.get("phi_tail", ()), eq.get("psi_tail", ()), order)
        rep = {"ok": r.ok, "order": order, "failed": r.failed(),
               "witness": list(map(str, r.first_witness() or ())),
               "summary": f"equivalent modulo t^{order + 1}" if r.ok else "equivalence fails"}
    rep["command"] = f"deform {args.action}"
    return rep


def _random_wedge(alg, seed):
    rng = random.Random(seed)
    return Wedge2.from_triples(alg, [(i, j, rng.randint(-2, 2))
                                     for i in range(alg.dim) for j in range(i + 1, alg.dim)])


def cmd_rmatrix(pf, args):
    alg = pf.algebra
    r = pf.r_matrix
    if args.seed is not None or r is None:
        if args.action != "check":
            raise ProblemError("r_matrix", "section missing")
        r = _random_wedge(alg, args.seed if args.seed is not None else 0)
    entries = [[i, j, rational_str(v)] for i, j, v in r.triples()]
    if args.action == "check":
        ok = is_r_matrix(r)
        yb = yb_bracket(r)
        rep = {"ok": ok, "r": entries,
               "yb_nonzero": [[*map(int, i), rational_str(v)] for i, v in nonzero_entries(yb)],
               "summary": "[[r, r]] = 0" if ok else "[[r, r]] != 0"}
    elif args.action == "coproduct":
        if not is_r_matrix(r):
            rep = {"ok": False, "r": entries, "summary": "[[r, r]] != 0, no induced coproduct"}
        else:
            cop = induced_coproduct(r)
            bi = infinitesimal_bialgebra_check(alg, cop)
            lab = alg.labels or [f"e{i}" for i in range(alg.dim)]
            delta = {lab[k]: " + ".join(f"{rational_str(c)} {lab[i]}(x){lab[j]}"
                                         for (i, j), c in nonzero_entries(cop.delta[k])) or "0"
                     for k in range(alg.dim)}
            rep = {"ok": bi.ok, "r": entries, "coproduct": delta, "failed": bi.failed(),
                   "summary": "infinitesimal bialgebra" if bi.ok else "bialgebra check fails"}
    else:
        if pf.r_matrix_2 is None:
            raise ProblemError("r_matrix_2", "section missing")
        if pf.phi is None or pf.psi is None:
            raise ProblemError("morphism", "phi and psi are both required")
        if pf.psi.shape != (alg.dim, alg.dim):
            raise ProblemError("morphism.psi", f"expected a {alg.dim}x{alg.dim} matrix")
        r2 = pf.r_matrix_2
        w = weak_morphism_check(r, r2, pf.phi, pf.psi)
        rep = {"ok": w.ok, "failed": w.failed(), "witness": list(map(str, w.first_witness() or ()))}
        if w.ok and is_r_matrix(r) and is_r_matrix(r2):
            bi = bialgebra_weak_morphism_check(alg, induced_coproduct(r), induced_coproduct(r2), pf.phi, pf.psi)
            rep["bialgebra_weak_morphism"] = bi.ok
            if not bi.ok:
                raise ArithmeticError("weak morphism of r-matrices does not transport")
        rep["summary"] = "weak morphism" if w.ok else "not a weak morphism"
    rep["command"] = f"rmatrix {args.action}"
    return rep


def cmd_fixture(args):
    pf = fixture_problem(args.name)
    if args.output:
        pf.dump(args.output)
    else:
        sys.stdout.write(pf.dumps())
    return 0


# -- driver --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ooperators", description="Exact checks for O-operators and their deformations.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, actions=None, **kw):
        sp = sub.add_parser(name, **kw)
        if actions:
            sp.add_argument("action", choices=actions)
        sp.add_argument("file", help="problem file (JSON), or a fixture name")
        sp.add_argument("--json", action="store_true", help="print the report as JSON")
        return sp

    with_file("validate", help="check the algebra and bimodule axioms")
    sp = with_file("check-op", help="O-operator, Rota-Baxter or averaging identity")
    sp.add_argument("--kind", choices=OP_KINDS, default="o-operator")
    sp.add_argument("--weight", type=to_rational, default=None)
    sp = with_file("cohomology", help="dimensions of Z^n, B^n and H^n")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--degree-cap", type=int, default=None)
    sp = with_file("nijenhuis", help="test a Nijenhuis element")
    sp.add_argument("--element", required=True, help="candidate name, basis label or coordinates")
    sp = with_file("deform", ("check", "extend", "equiv"),
                   help="deformation equations, extension and equivalence")
    sp.add_argument("--order", type=int, default=None)
    sp.add_argument("--element", default=None)
    sp = with_file("rmatrix", ("check", "coproduct", "weak-morphism"),
                   help="r-matrices, coproducts and weak morphisms")
    sp.add_argument("--seed", type=int, default=None, help="check a random r drawn with this seed")
    sp = sub.add_parser("fixture", help="write a catalog fixture")
    sp.add_argument("name")
    sp.add_argument("-o", "--output", default=None)
    return p


COMMANDS = {"validate": cmd_validate, "check-op": cmd_check_op, "cohomology": cmd_cohomology,
            "nijenhuis": cmd_nijenhuis, "deform": cmd_deform, "rmatrix": cmd_rmatrix}


def render(rep: dict) -> str:
    lines = [rep["summary"]]
    for k, v in rep.items():
        if k in ("summary", "command", "ok"):
            continue
        if k == "witnesses":
            for w in v:
                a, b = w["pair"]
                lines.append(f"witness ({a}, {b}): T(u)T(v) = {w['T(u)T(v)']}, "
                             f"T(uT(v) + T(u)v) = {w['T(uT(v) + T(u)v)']}")
        else:
            lines.append(f"{k}: {json.dumps(v)}")
    return "\n".join(lines)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        if args.command == "fixture":
            return cmd_fixture(args)
        pf = load_problem(args.file)
        rep = COMMANDS[args.command](pf, args)
    except (ProblemError, DegreeCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidDeformation, NotAnOOperator, NotAnRMatrix) as exc:
        rep = {"command": args.command, "ok": False, "summary": str(exc)}
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out.write((json.dumps(rep, indent=2) if args.json else render(rep)) + "\n")
    return 0 if rep["ok"] else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
