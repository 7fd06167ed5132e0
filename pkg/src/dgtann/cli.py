"""Command-line front end.

    dgtann cohomology --space RP2_6 --coeff V- --weight-cap 8
    dgtann tdr-hom --space RP2_6 --source 1 --target V-
    dgtann t-hom --cdga M --source 1 --target V- --degree-bound 7
    dgtann tannaka --group S3
    dgtann verify --check regular-iso --cdga M --degree-bound 7

Every command reads the built-in workspace (standard fixtures) merged with
an optional --workspace JSON file.  Exit codes: 0 success, 1 verification
failure, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .derham import LocalSystem, TdrHomComplex, adr_cohomology, constant_system
from .eqcdga import (CdgaError, HomotopyCandidate, PresentedGCdga, VerificationError,
                     phi_comparison, pushout_square_check, regular_iso_check, rp2_model, t_cohomology,
                     verify_right_homotopy)
from .exactla import format_rational
from .groups import FiniteGroup, GroupError
from .repcat import RepError, Representation, regular_representation, sign_rep, tensor_automorphisms
from .simpset import (BudgetExceeded, EdgeLabeling, FinSimplicialSet, SimplicialError, boundary_simplex,
                      rp2_6, standard_simplex, torus_3x3, universal_labeling)
from .wordcat import WordError, evaluate_word, parse_word

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# workspace


def _group_from_json(obj, groups):
    if "cyclic" in obj:
        return FiniteGroup.cyclic(int(obj["cyclic"]))
    if "symmetric" in obj:
        return FiniteGroup.symmetric(int(obj["symmetric"]))
    if "product" in obj:
        a, b = obj["product"]
        return groups[a].direct_product(groups[b])
    return FiniteGroup.from_json(obj)


_FIXTURES = {
    "Delta0": lambda: standard_simplex(0),
    "Delta1": lambda: standard_simplex(1),
    "Delta2": lambda: standard_simplex(2),
    "dDelta2": lambda: boundary_simplex(2),
    "RP2_6": rp2_6,
    "T2": torus_3x3,
}


def _transport_labeling(lab: EdgeLabeling, G: FiniteGroup) -> EdgeLabeling:
    iso = lab.group.find_isomorphism(G)
    if iso is None:
        raise InputError("pi_1 is not isomorphic to the requested group")
    return EdgeLabeling(lab.K, G, {e: iso[g] for e, g in lab.labels.items()})


class Workspace:
    def __init__(self):
        self.groups = {}
        self.reps = {}          # name -> Representation
        self.spaces = {}
        self.labelings = {}
        self.systems = {}       # (space, name) -> LocalSystem
        self.cdgas = {}
        self.homotopies = {}

    @classmethod
    def builtin(cls):
        ws = cls()
        for n in (1, 2, 3):
            ws.groups["Z%d" % n] = FiniteGroup.cyclic(n)
        ws.groups["Z2xZ2"] = FiniteGroup.cyclic(2).direct_product(FiniteGroup.cyclic(2))
        ws.groups["S3"] = FiniteGroup.symmetric(3)
        Z2 = ws.groups["Z2"]
        ws.reps["1"] = Representation.trivial(Z2)
        ws.reps["V-"] = sign_rep(Z2, [1, -1])
        ws.reps["Vr"] = regular_representation(Z2).rep
        for name, make in _FIXTURES.items():
            ws.spaces[name] = make()
        K = ws.spaces["RP2_6"]
        lab = _transport_labeling(universal_labeling(K), Z2)
        ws.labelings["RP2_6/pi1"] = lab
        for r in ("1", "V-"):
            ws.systems["RP2_6", r] = LocalSystem(K, ws.reps[r], lab, name=r)
        S = ws.spaces["dDelta2"]
        e = S.simplices(1)[0]
        slab = EdgeLabeling(S, Z2, {e: 1})
        ws.labelings["dDelta2/sign"] = slab
        ws.systems["dDelta2", "sign"] = LocalSystem(S, ws.reps["V-"], slab, name="sign")
        ws.cdgas["M"] = rp2_model(Z2)
        ws.cdgas["Q"] = PresentedGCdga(Z2, [], name="Q")
        return ws

    def load(self, obj):
        try:
            for name, g in obj.get("groups", {}).items():
                self.groups[name] = _group_from_json(g, self.groups)
            for name, r in obj.get("representations", {}).items():
                self.reps[name] = Representation.from_json(r, self.group(r["group"]), name=name)
            for name, s in obj.get("spaces", {}).items():
                if "fixture" in s:
                    self.spaces[name] = _FIXTURES[s["fixture"]]()
                elif "facets" in s:
                    self.spaces[name] = FinSimplicialSet.from_facets(s["facets"], s.get("base"))
                else:
                    self.spaces[name] = FinSimplicialSet.from_json(s)
            for name, lab in obj.get("labelings", {}).items():
                K = self.space(lab["space"])
                if lab.get("universal"):
                    u = universal_labeling(K)
                    self.labelings[name] = _transport_labeling(u, self.group(lab["group"])) if "group" in lab else u
                else:
                    self.labelings[name] = EdgeLabeling(K, self.group(lab["group"]), lab.get("labels", {}))
            for name, ls in obj.get("local_systems", {}).items():
                K = self.space(ls["space"])
                lab = self.labeling(ls["labeling"])
                if lab.K is not K:
                    raise InputError("labeling %r is not on space %r" % (ls["labeling"], ls["space"]))
                L = LocalSystem(K, self.rep(ls["representation"]), lab, name=name)
                L.check()
                self.systems[ls["space"], name] = L
            for name, c in obj.get("cdgas", {}).items():
                self.cdgas[name] = PresentedGCdga.from_json(c, self.group(c["group"]), name=name)
            for name, h in obj.get("homotopies", {}).items():
                self.homotopies[name] = h
        except KeyError as exc:
            raise InputError("missing field or unknown name: %s" % exc) from None
        return self

    def _get(self, table, name, what):
        if name not in table:
            raise InputError("unknown %s %r" % (what, name))
        return table[name]

    def group(self, name):
        return self._get(self.groups, name, "group")

    def rep(self, name):
        return self._get(self.reps, name, "representation")

    def space(self, name):
        return self._get(self.spaces, name, "space")

    def labeling(self, name):
        return self._get(self.labelings, name, "labeling")

    def cdga(self, name):
        return self._get(self.cdgas, name, "cdga")

    def system(self, space, name):
        if (space, name) in self.systems:
            return self.systems[space, name]
        if name in ("Q", "1"):
            # the constant system, sharing the labeling of any other system on this space
            for (sp, _), L in sorted(self.systems.items(), key=lambda kv: kv[0]):
                if sp == space:
                    return LocalSystem(L.K, Representation.trivial(L.labeling.group), L.labeling, name=name)
            return constant_system(self.space(space))
        raise InputError("unknown local system %r on %r" % (name, space))

    def reps_for(self, G):
        return {n: r for n, r in self.reps.items() if r.group is G or r.group.same_as(G)}


# ---------------------------------------------------------------------------
# output


def _fmt(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, bool):
        return "yes" if x else "no"
    if x is None:
        return "-"
    return str(x)


def emit(payload, rows, mode, out):
    """payload: JSON-able dict; rows: list of tuples, first is the header."""
    if mode == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    elif mode == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for r in rows:
            w.writerow([_fmt(x) for x in r])
        out.write(buf.getvalue())
    else:
        cells = [[_fmt(x) for x in r] for r in rows]
        if cells:
            widths = [max(len(r[i]) for r in cells if i < len(r)) for i in range(len(cells[0]))]
            for k, r in enumerate(cells):
                out.write("  ".join(c.rjust(widths[i]) for i, c in enumerate(r)).rstrip() + "\n")
                if k == 0:
                    out.write("  ".join("-" * w for w in widths) + "\n")
        for line in payload.get("_notes", []):
            out.write(line + "\n")


def _strip(payload):
    return {k: v for k, v in payload.items() if not k.startswith("_")}


# ---------------------------------------------------------------------------
# commands


def cmd_cohomology(ws, args, out):
    K = ws.space(args.space)
    L = ws.system(args.space, args.coeff)
    rep = adr_cohomology(K, L, args.weight_cap)
    payload = rep.to_json()
    payload["space"] = args.space
    payload["_notes"] = [
        "stabilized at weight %d: H = %s" % (rep.weight, _dims_str(rep.dims)) if rep.stabilized
        else "NOT stabilized up to weight cap %d (oracle %s)" % (args.weight_cap, _dims_str(rep.oracle))
    ]
    emit(_strip(payload) if args.emit == "json" else payload, rep.csv_rows(), args.emit, out)
    return EXIT_OK if rep.stabilized else EXIT_FAIL


def _dims_str(d):
    return "{" + ", ".join("%d: %d" % (k, v) for k, v in sorted(d.items())) + "}"


def cmd_tdr_hom(ws, args, out):
    L = ws.system(args.space, args.source)
    Lp = ws.system(args.space, args.target)
    T = TdrHomComplex(L, Lp)
    rep = T.cohomology(args.weight_cap)
    N = args.degree_bound
    payload = rep.to_json()
    payload.update({"space": args.space, "source": args.source, "target": args.target})
    rows = [r for r in rep.csv_rows() if r[0] == "weight" or N is None or r[1] <= N]
    payload["_notes"] = [
        "stabilized at weight %d: H = %s" % (rep.weight, _dims_str(rep.dims)) if rep.stabilized
        else "NOT stabilized up to weight cap %d" % args.weight_cap
    ]
    emit(_strip(payload) if args.emit == "json" else payload, rows, args.emit, out)
    return EXIT_OK if rep.stabilized else EXIT_FAIL


def _resolve_word(ws, G, text):
    ctx = ws.reps_for(G)
    try:
        return evaluate_word(ctx, parse_word(text, set(ctx)), G)
    except WordError as exc:
        raise InputError(str(exc)) from None


def cmd_t_hom(ws, args, out):
    A = ws.cdga(args.cdga)
    V = _resolve_word(ws, A.group, args.source)
    W = _resolve_word(ws, A.group, args.target)
    res = t_cohomology(A, V, W, args.degree_bound)
    payload = res.to_json()
    payload.update({"cdga": args.cdga, "source": args.source, "target": args.target})
    rows = [("degree", "cochain_dim", "cohomology")]
    for n in range(args.degree_bound + 1):
        rows.append((n, res.cochain_dims[n], res.cohomology[n]))
    payload["_notes"] = ["degree bound N = %d (cohomology exact through N)" % args.degree_bound]
    emit(_strip(payload) if args.emit == "json" else payload, rows, args.emit, out)
    return EXIT_OK


def cmd_tannaka(ws, args, out):
    G = ws.group(args.group)
    res = tensor_automorphisms(G, budget=args.budget)
    iso = G.find_isomorphism(res.group)
    ok = iso is not None and res.order == len(G)
    payload = {"check": "tannaka", "group": args.group, "order": res.order, "pass": ok,
               "isomorphism": None if iso is None else {G.names[a]: res.group.names[iso[a]] for a in G}}
    rows = [("element", "automorphism")] + [(G.names[a], res.group.names[res.iso[a]]) for a in G]
    payload["_notes"] = ["Aut(omega) has order %d; %s" % (res.order, "isomorphic to G" if ok else "NOT isomorphic")]
    emit(_strip(payload) if args.emit == "json" else payload, rows, args.emit, out)
    return EXIT_OK if ok else EXIT_FAIL


def _parse_path_poly(B, obj):
    out = {}
    for term in obj:
        p = B.parse_poly([{"coeff": term["coeff"], "monomial": term.get("monomial", [])}])
        w = (int(term.get("t", 0)), int(term.get("dt", 0)))
        for m, c in p.items():
            out[m, w] = out.get((m, w), 0) + c
    return {k: v for k, v in out.items() if v}


def cmd_verify(ws, args, out):
    check = args.check
    if check == "regular-iso":
        A = ws.cdga(args.cdga)
        rep = regular_iso_check(A, args.degree_bound, strict=False)
        payload = rep.to_json()
        rows = [("degree", "dim_A", "dim_invariants", "rank", "chain_map")] + list(rep.rows)
        ok = rep.ok
    elif check == "pushout":
        A = ws.cdga(args.cdga)
        names = args.objects.split(",")
        objs = {n: _resolve_word(ws, A.group, n) for n in names}
        rep = pushout_square_check(A, args.degree_bound, objs)
        payload = rep.to_json()
        rows = [("source", "target", "degree", "dim_invariant", "square_commutes")]
        rows += [(r["source"], r["target"], r["degree"], r["dim_invariant"], r["square_commutes"])
                 for r in rep.rows if "degree" in r]
        ok = rep.ok
    elif check == "phi":
        K = ws.space(args.space)
        L = ws.system(args.space, args.source)
        Lp = ws.system(args.space, args.target)
        rep = phi_comparison(K, L, Lp, args.degree_bound, args.weight_cap)
        payload = rep.to_json()
        rows = [("degree", "weight", "dim_source", "rank_image", "dim_invariants", "ok")]
        rows += [(r.degree, r.weight, r.dim_source, r.rank_image, r.dim_invariants, r.ok) for r in rep.rows]
        ok = rep.ok
    elif check == "homotopy":
        h = ws.homotopies.get(args.homotopy)
        if h is None:
            raise InputError("unknown homotopy %r" % args.homotopy)
        try:
            A, B = ws.cdga(h["source"]), ws.cdga(h["target"])
            cand = HomotopyCandidate(
                A, B,
                {x: B.parse_poly(p) for x, p in h.get("f1", {}).items()},
                {x: B.parse_poly(p) for x, p in h.get("f2", {}).items()},
                {x: _parse_path_poly(B, p) for x, p in h.get("H", {}).items()},
                tuple(h["group_map1"]) if "group_map1" in h else None,
                tuple(h["group_map2"]) if "group_map2" in h else None,
            )
        except KeyError as exc:
            raise InputError("homotopy is missing %s" % exc) from None
        ok, problems = verify_right_homotopy(cand)
        payload = {"check": "homotopy", "pass": ok, "diagnostics": problems}
        rows = [("diagnostic",)] + [(p,) for p in problems]
    else:
        raise InputError("unknown check %r" % check)
    payload["_notes"] = ["%s: %s" % (check, "PASS" if ok else "FAIL")]
    emit(_strip(payload) if args.emit == "json" else payload, rows, args.emit, out)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="dgtann", description=__doc__.split("\n")[0])
    p.add_argument("--workspace", help="JSON workspace file merged over the built-in fixtures")
    p.add_argument("--emit", choices=("json", "csv", "pretty"), default="pretty")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cohomology", help="weight-stabilized cohomology of A_dR(K, L)")
    c.add_argument("--space", required=True)
    c.add_argument("--coeff", default="Q")
    c.add_argument("--weight-cap", type=int, default=8)

    c = sub.add_parser("tdr-hom", help="Hom complex of T_dR(K) between two local systems")
    c.add_argument("--space", required=True)
    c.add_argument("--source", required=True)
    c.add_argument("--target", required=True)
    c.add_argument("--weight-cap", type=int, default=8)
    c.add_argument("--degree-bound", type=int)

    c = sub.add_parser("t-hom", help="Hom complex of T(G, A) between two words")
    c.add_argument("--cdga", required=True)
    c.add_argument("--source", required=True)
    c.add_argument("--target", required=True)
    c.add_argument("--degree-bound", type=int, required=True)

    c = sub.add_parser("tannaka", help="reconstruct G from the fiber functor")
    c.add_argument("--group", required=True)
    c.add_argument("--budget", type=int, default=24)

    c = sub.add_parser("verify", help="run one of the structural checks")
    c.add_argument("--check", required=True, choices=("regular-iso", "phi", "pushout", "homotopy"))
    c.add_argument("--cdga", default="M")
    c.add_argument("--degree-bound", type=int, default=4)
    c.add_argument("--weight-cap", type=int, default=2)
    c.add_argument("--space", default="RP2_6")
    c.add_argument("--source", default="1")
    c.add_argument("--target", default="V-")
    c.add_argument("--objects", default="1,V-,Vr")
    c.add_argument("--homotopy")
    for sp in sub.choices.values():
        sp.add_argument("--emit", choices=("json", "csv", "pretty"), default=argparse.SUPPRESS)
        sp.add_argument("--workspace", default=argparse.SUPPRESS)
    return p


COMMANDS = {"cohomology": cmd_cohomology, "tdr-hom": cmd_tdr_hom, "t-hom": cmd_t_hom,
            "tannaka": cmd_tannaka, "verify": cmd_verify}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        ws = Workspace.builtin()
        if args.workspace:
            try:
                with open(args.workspace) as fh:
                    obj = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise InputError("cannot read workspace: %s" % exc) from None
            ws.load(obj)
        return COMMANDS[args.command](ws, args, out)
    except BudgetExceeded as exc:
        err.write("budget exceeded: %s\n" % exc)
        return EXIT_BUDGET
    except VerificationError as exc:
        err.write("verification failed: %s\n" % exc)
        return EXIT_FAIL
    except (InputError, SimplicialError, RepError, CdgaError, GroupError, WordError, ValueError, KeyError, TypeError) as exc:
        err.write("input error: %s\n" % exc)
        return EXIT_INPUT


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
