"""Command-line interface.

    zassenhaus series --family free --rank 2 --p 2 --order 8
    zassenhaus dims --family demushkin --rank 4 --p 3 --upto 6
    zassenhaus hall --rank 2 --weight 3 --list
    zassenhaus mobius --group d4
    zassenhaus pgroup --group unipotent:4:2 --p 2 --upto 5
    zassenhaus count d4-local --p 2
    zassenhaus verify --all

Exit status: 0 on success, 2 on usage errors, 1 on computation errors
(and from ``verify`` when any check fails).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import checks
from . import dims as D
from . import extensions as X
from . import families as F
from . import hall as Hl
from . import local as L
from . import pgroups as pg
from .errors import ZassenhausError

MAX_ORDER = 64
WORKERS_ENV = "ZASSENHAUS_WORKERS"


@dataclass
class OutputRecord:
    command: str
    parameters: dict = field(default_factory=dict)
    results: list = field(default_factory=list)
    provenance: list = field(default_factory=list)

    def add(self, name: str, value) -> None:
        self.results.append((name, _fmt(value)))

    def to_json(self) -> str:
        obj = {
            "command": self.command,
            "parameters": {k: _fmt(v) for k, v in sorted(self.parameters.items())},
            "results": [{"name": n, "value": v} for n, v in self.results],
            "provenance": list(self.provenance),
        }
        return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "value"])
        w.writerows(self.results)
        return buf.getvalue()

    def to_table(self) -> str:
        width = max((len(n) for n, _ in self.results), default=0)
        return "".join(f"{n.ljust(width)}  {v}\n" for n, v in self.results)


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


class UsageError(Exception):
    pass


def workers_from_env() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"{WORKERS_ENV} must be >= 1, got {n}")
    return n


# -- argument helpers -----------------------------------------------------------

FAMILIES = ("free", "demushkin", "cyclic-free-product", "superpyth", "mixed", "cp-free")


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--rank", type=int, help="rank d (free, demushkin, superpyth, cp-free)")
    p.add_argument("--copies", type=int, help="number of C_p factors (cyclic-free-product)")
    p.add_argument("--ranks", help="comma-separated Demushkin ranks (mixed)")
    p.add_argument("--free-rank", type=int, default=0, help="free rank (mixed)")
    p.add_argument("--case", choices=F.RELATION_CASES, help="Demushkin relation case")
    p.add_argument("--p", type=int, required=True)


def _need(args, name):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for family {args.family}")
    return v


def _family(args) -> F.GroupFamily:
    fam = args.family
    if fam == "free":
        return F.FreeProP(_need(args, "rank"))
    if fam == "demushkin":
        return F.Demushkin(_need(args, "rank"), args.case)
    if fam == "cyclic-free-product":
        return F.FreeProdCyclicP(args.p, _need(args, "copies"))
    if fam == "superpyth":
        return F.SuperPyth(_need(args, "rank"))
    if fam == "cp-free":
        return F.CyclicPFree(args.p, _need(args, "rank"))
    ranks = _need(args, "ranks")
    try:
        rs = tuple(int(x) for x in ranks.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"--ranks must be comma-separated integers, got {ranks!r}") from None
    return F.MixedFreeProd(rs, args.free_rank)


def _order(args, value: int) -> int:
    if value < 1:
        raise UsageError("order must be >= 1")
    if value > MAX_ORDER and not args.unsafe_order:
        raise UsageError(f"order {value} exceeds {MAX_ORDER}; pass --unsafe-order to allow it")
    return value


def parse_group(spec: str) -> pg.FiniteGroup:
    """Built-in groups: d4, dihedral:n, cyclic:k, elem:p:k, unipotent:n:p,
    superpyth:d:K, c4xc2, u3-3."""
    parts = spec.lower().split(":")
    name, rest = parts[0], parts[1:]
    try:
        nums = [int(x) for x in rest]
    except ValueError:
        raise UsageError(f"bad group specification {spec!r}") from None
    table = {
        ("d4", 0): lambda: pg.d4(),
        ("c4xc2", 0): lambda: pg.direct_product(pg.cyclic_group(4), pg.cyclic_group(2)),
        ("u3-3", 0): lambda: pg.unipotent_group(3, 3),
        ("dihedral", 1): lambda: pg.dihedral_group(*nums),
        ("cyclic", 1): lambda: pg.cyclic_group(*nums),
        ("elem", 2): lambda: pg.elementary_abelian(*nums),
        ("unipotent", 2): lambda: pg.unipotent_group(*nums),
        ("superpyth", 2): lambda: pg.superpyth_quotient(*nums),
    }
    key = (name, len(nums))
    if key not in table:
        raise UsageError(f"unknown group {spec!r}")
    return table[key]()


def _group_prime(G: pg.FiniteGroup) -> int:
    from .mobius import factorize

    f = factorize(G.order) if G.order > 1 else {2: 0}
    if len(f) != 1:
        raise UsageError(f"group of order {G.order} is not a p-group")
    return next(iter(f))


# -- commands -------------------------------------------------------------------

def cmd_series(args) -> OutputRecord:
    fam = _family(args)
    N = _order(args, args.order)
    P = F.family_series(fam, args.p, N)
    rec = OutputRecord("series", {"family": fam, "p": args.p, "order": N})
    rec.add("series", str(P))
    rec.add("coefficients", list(P.coefficients))
    rec.provenance.append("rational-function expansion")
    return rec


def cmd_dims(args) -> OutputRecord:
    fam = _family(args)
    N = _order(args, args.upto)
    tab = D.family_table(fam, args.p, N)
    rec = OutputRecord("dims", {"family": fam, "p": args.p, "upto": N})
    rec.add("b", list(tab.b))
    rec.add("w", list(tab.w))
    rec.add("c", list(tab.c))
    rec.provenance.append("log coefficients, Möbius inversion, p-adic regrouping")
    return rec


def cmd_hall(args) -> OutputRecord:
    d, n = args.rank, args.weight
    rec = OutputRecord("hall", {"rank": d, "weight": n, "p": args.p})
    if args.p is None:
        rec.add("count", Hl.hall_count(d, n))
        if args.list:
            for i, c in enumerate(Hl.hall_basis(d, n), start=1):
                rec.add(f"C{n}[{i}]", str(c))
    else:
        basis = Hl.zassenhaus_basis(d, args.p, n)
        rec.add("count", len(basis))
        if args.list:
            for i, (c, e) in enumerate(basis, start=1):
                rec.add(f"B{n}[{i}]", Hl.format_power(c, e))
    rec.provenance.append("Hall commutator enumeration")
    return rec


def _subgroup_name(G: pg.FiniteGroup, H: pg.Subgroup) -> str:
    gens = pg.minimal_generators(G, H)
    if not gens:
        return "<1>"
    return "<" + ", ".join(str(G.labels[g]) for g in gens) + ">"


def cmd_mobius(args) -> OutputRecord:
    G = parse_group(args.group)
    mu = pg.subgroup_mobius(G)
    rec = OutputRecord("mobius", {"group": args.group})
    rec.add("order", G.order)
    rec.add("subgroups", len(mu))
    for H, v in mu.items():
        if v != 0 or args.all:
            rec.add(f"mu {_subgroup_name(G, H)} (order {H.order})", v)
    rec.provenance.append("subgroup lattice Möbius recursion")
    return rec


def cmd_pgroup(args) -> OutputRecord:
    G = parse_group(args.group)
    p = args.p if args.p is not None else _group_prime(G)
    rec = OutputRecord("pgroup", {"group": args.group, "p": p, "upto": args.upto})
    rec.add("order", G.order)
    rec.add("frattini order", pg.frattini(G, p).order)
    rec.add("lower central orders", [H.order for H in pg.lower_central_chain(G)])
    chain = pg.zassenhaus_chain(G, p, args.upto)
    rec.add("zassenhaus orders", [H.order for H in chain])
    rec.add("zassenhaus dims", pg.zassenhaus_dims(G, p, args.upto))
    if args.automorphisms:
        rec.add("automorphisms", pg.automorphism_count(G))
    rec.provenance.append("Cayley-table closure")
    return rec


def _parse_f(raw: str):
    if raw.lower() in ("inf", "infinity"):
        return F.INF
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"--f must be an integer or 'inf', got {raw!r}") from None


def cmd_count(args) -> OutputRecord:
    kind = args.kind
    rec = OutputRecord("count", {"kind": kind})
    if kind == "sap":
        n = _need_int(args, "n")
        rec.parameters["n"] = n
        rec.add("pairs", X.sap_pair_count(n))
        rec.add("d4 extensions", X.sap_d4_count(n))
    elif kind == "d4-local":
        p = _need_int(args, "p")
        rec.parameters["p"] = p
        pairs = L.d4_admissible_pairs(p)
        rec.add("admissible pairs", ["{" + f"{a},{b}" + "}" for a, b in pairs])
        rec.add("d4 extensions", L.d4_extension_count_qp(p))
    elif kind == "u3":
        p, n, q = _need_int(args, "p"), _need_int(args, "n"), _need_int(args, "q")
        rec.parameters.update(p=p, n=n, q=q)
        rec.add("u3 extensions", X.nu_u3(p, n, q))
        rec.add("via cup-product pairs", X.nu_u3_from_pairs(p, n, q))
    elif kind == "shafarevich":
        p, n = _need_int(args, "p"), _need_int(args, "n")
        G = parse_group(_need(args, "group"))
        rec.parameters.update(p=p, n=n, group=args.group)
        rec.add("extensions", X.nu_shafarevich(p, n, G))
    else:  # yamagishi
        p, n = _need_int(args, "p"), _need_int(args, "n")
        G = parse_group(_need(args, "group"))
        params = X.LocalFieldParams(p, n, args.q, _parse_f(args.f), args.case)
        rec.parameters.update(p=p, n=n, q=args.q, f=args.f, case=params.relation_case, group=args.group)
        if params.relation_case != "free":
            rec.add("relation", pg.word_str(X.demushkin_relation(params)))
        rec.add("extensions", X.nu_yamagishi(params, G, workers=args.workers))
    rec.provenance.append(f"{kind} count")
    return rec


def _need_int(args, name):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name} is required for count {args.kind}")
    return v


def cmd_verify(args) -> int:
    results = checks.run_all() if args.all else [checks.ALL_CHECKS[args.check - 1]()]
    rec = OutputRecord("verify", {"all": bool(args.all)})
    for r in results:
        rec.add(f"{r.number}", f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}")
    if args.json:
        print(rec.to_json())
    elif args.csv:
        sys.stdout.write(rec.to_csv())
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return 0 if all(r.passed for r in results) else 1


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zassenhaus", description="Zassenhaus filtration toolkit")
    fmt = argparse.ArgumentParser(add_help=False)
    g = fmt.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", help="one JSON record")
    g.add_argument("--csv", action="store_true", help="CSV rows")
    fmt.add_argument("--unsafe-order", action="store_true", help=f"allow orders above {MAX_ORDER}")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("series", parents=[fmt], help="Hilbert–Poincaré series of a family")
    _add_family_args(s)
    s.add_argument("--order", type=int, default=10)

    s = sub.add_parser("dims", parents=[fmt], help="b, w and c tables")
    _add_family_args(s)
    s.add_argument("--upto", type=int, default=10)

    s = sub.add_parser("hall", parents=[fmt], help="Hall commutators and Zassenhaus bases")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--p", type=int, help="list the basis of S_(n)/S_(n+1) instead")
    s.add_argument("--list", action="store_true")

    s = sub.add_parser("mobius", parents=[fmt], help="subgroup Möbius function of a built-in group")
    s.add_argument("--group", required=True)
    s.add_argument("--all", action="store_true", help="also list subgroups with mu = 0")

    s = sub.add_parser("pgroup", parents=[fmt], help="filtrations of a built-in group")
    s.add_argument("--group", required=True)
    s.add_argument("--p", type=int)
    s.add_argument("--upto", type=int, default=8)
    s.add_argument("--automorphisms", action="store_true")

    s = sub.add_parser("count", parents=[fmt], help="extension counts")
    s.add_argument("kind", choices=("shafarevich", "yamagishi", "u3", "sap", "d4-local"))
    s.add_argument("--p", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--f", default="2")
    s.add_argument("--case", choices=X.CASES)
    s.add_argument("--group")

    s = sub.add_parser("verify", parents=[fmt], help="run the cross-checks")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--all", action="store_true")
    g.add_argument("--check", type=int, choices=range(1, len(checks.ALL_CHECKS) + 1))
    return parser


COMMANDS = {
    "series": cmd_series,
    "dims": cmd_dims,
    "hall": cmd_hall,
    "mobius": cmd_mobius,
    "pgroup": cmd_pgroup,
    "count": cmd_count,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.workers = workers_from_env()
        if args.command == "verify":
            return cmd_verify(args)
        rec = COMMANDS[args.command](args)
    except UsageError as e:
        parser.error(str(e))
    except ZassenhausError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.json:
        print(rec.to_json())
    elif args.csv:
        sys.stdout.write(rec.to_csv())
    else:
        sys.stdout.write(rec.to_table())
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
