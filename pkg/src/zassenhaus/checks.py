"""Cross-checks between independent routes, one per acceptance criterion.

Each check returns a :class:`CheckResult`.  The CLI ``verify`` command and
``tests/test_acceptance.py`` both run these.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import dims as D
from . import extensions as X
from . import families as F
from . import hall as Hl
from . import local as L
from . import pgroups as pg


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} [{self.number:2d}] {self.name}: {self.detail}"


# -- stated closed forms for free and Demushkin groups -------------------------

def free_c_formula(d: int, p: int, n: int) -> Fraction:
    d = Fraction(d)
    table = {
        1: lambda: d,
        2: lambda: (d**2 + d) / 2 if p == 2 else (d**2 - d) / 2,
        3: lambda: (d**3 + 2 * d) / 3 if p == 3 else (d**3 - d) / 3,
        4: lambda: (d**4 + d**2 + 2 * d) / 4 if p == 2 else (d**4 - d**2) / 4,
        5: lambda: (d**5 + 4 * d) / 5 if p == 5 else (d**5 - d) / 5,
    }
    return table[n]()


def demushkin_c_formula(d: int, p: int, n: int) -> Fraction:
    d = Fraction(d)
    table = {
        1: lambda: d,
        2: lambda: (d**2 + d - 2) / 2 if p == 2 else (d**2 - d - 2) / 2,
        3: lambda: (d**3 - d) / 3 if p == 3 else (d**3 - 4 * d) / 3,
        4: lambda: (d**4 - 3 * d**2 + 2 * d) / 4 if p == 2 else (d**4 - 5 * d**2 + 4) / 4,
        5: lambda: (d**5 - 5 * d**3 + 9 * d) / 5 if p == 5 else (d**5 - 5 * d**3 + 4 * d) / 5,
    }
    return table[n]()


def superpyth_stated_c(d: int, n: int) -> int:
    """c_n of Z_2^d ⋊ C_2 in the form stated alongside the series
    (1+t)/(1-t)^d * prod 1/(1-t^(2i+1)): d+1, d at powers of 2, else 1."""
    if n == 1:
        return d + 1
    return d if n & (n - 1) == 0 else 1


def superpyth_stated_w(d: int, n: int) -> int:
    if n == 1:
        return d + 1
    if n == 2:
        return -1
    return 1 if n % 2 else 0


def mu_closed(G: pg.FiniteGroup, H: pg.Subgroup, p: int, phi: pg.Subgroup) -> int:
    """(-1)^i p^(i(i-1)/2) if Phi(G) <= H, where [G:H] = p^i; else 0."""
    if not phi <= H:
        return 0
    i = round(math.log(G.order // H.order, p))
    return (-1) ** i * p ** (i * (i - 1) // 2)


def _families_for_roundtrip():
    out = []
    for d in range(0, 5):
        for p in (2, 3, 5):
            out.append((F.FreeProP(d), p))
    for d in (2, 3, 4, 5):
        for p in ((2,) if d % 2 else (2, 3, 5)):
            out.append((F.Demushkin(d), p))
    for p in (2, 3):
        for copies in range(1, 5):
            out.append((F.FreeProdCyclicP(p, copies), p))
        for d in range(0, 4):
            out.append((F.CyclicPFree(p, d), p))
    for d in range(0, 4):
        out.append((F.SuperPyth(d), 2))
    for p in (2, 3, 5):
        out.append((F.MixedFreeProd((2, 2), 1), p))
    return out


# -- the criteria ---------------------------------------------------------------

def check_jennings_roundtrip() -> CheckResult:
    N = 24
    bad = []
    fams = _families_for_roundtrip()
    for fam, p in fams:
        P = F.family_series(fam, p, N)
        c = D.c_sequence(P, p, N)
        if F.jennings_product(c, p, N) != P:
            bad.append(f"{fam} p={p}")
    return CheckResult(1, "Jennings round trip", not bad,
                       f"{len(fams) - len(bad)}/{len(fams)} series reproduced at order {N}"
                       + (f"; mismatches: {bad}" if bad else ""))


def _formula_check(number, name, family_of, formula, ranks) -> CheckResult:
    bad = []
    count = 0
    for d in ranks:
        for p in (2, 3, 5):
            fam = family_of(d)
            piped = D.c_sequence(F.family_series(fam, p, 5), p, 5)
            for n in range(1, 6):
                want = formula(d, p, n)
                got = D.c_closed(fam, p, n)
                count += 1
                if not (want == got == piped[n - 1]):
                    bad.append((d, p, n, str(want), got, piped[n - 1]))
    return CheckResult(number, name, not bad,
                       f"{count - len(bad)}/{count} entries agree (formula, closed form, series pipeline)"
                       + (f"; mismatches (d,p,n,formula,closed,series): {bad[:5]}" if bad else ""))


def check_free_formulas() -> CheckResult:
    return _formula_check(2, "free c_n closed forms", F.FreeProP, free_c_formula, range(1, 6))


def check_demushkin_formulas() -> CheckResult:
    return _formula_check(3, "Demushkin c_n closed forms", F.Demushkin, demushkin_c_formula, (2, 4, 6))


def check_hall() -> CheckResult:
    bad = []
    for d in range(1, 5):
        w = D.w_sequence(F.family_series(F.FreeProP(d), 2, 10), 10)
        for n in range(1, 11):
            if Hl.hall_count(d, n) != w[n - 1]:
                bad.append(("count", d, n))
    for d in range(1, 4):
        for p in (2, 3):
            for n in range(1, 11):
                if len(Hl.zassenhaus_basis(d, p, n)) != D.c_closed(F.FreeProP(d), p, n):
                    bad.append(("basis", d, p, n))
    return CheckResult(4, "Hall commutators vs Witt numbers and c_n", not bad,
                       "hall_count = w_n for d<=4, n<=10; |basis| = c_n for d<=3, p in {2,3}, n<=10"
                       + (f"; mismatches: {bad}" if bad else ""))


def check_unipotent() -> CheckResult:
    parts = []
    ok = True
    for n, p in ((2, 2), (3, 2), (2, 3)):
        U = pg.unipotent_group(n + 1, p)
        chain = pg.zassenhaus_chain(U, p, n + 2)
        deepest = max(i + 1 for i, H in enumerate(chain) if not H.is_trivial())
        index = chain[n - 1].order // chain[n].order
        good = deepest == n and index == p
        ok &= good
        parts.append(f"U_{n + 1}(F_{p}): deepest level {deepest}, index {index}")
    return CheckResult(5, "unipotent Zassenhaus filtration", ok, "; ".join(parts))


def check_mobius_lattice() -> CheckResult:
    groups = {
        "D_4": (pg.d4(), 2),
        "U_3(F_3)": (pg.unipotent_group(3, 3), 3),
        "C_2^3": (pg.elementary_abelian(2, 3), 2),
        "C_4xC_2": (pg.direct_product(pg.cyclic_group(4), pg.cyclic_group(2)), 2),
    }
    ok = True
    parts = []
    for name, (G, p) in groups.items():
        mu = pg.subgroup_mobius(G)
        phi = pg.frattini(G, p)
        good = all(v == mu_closed(G, H, p, phi) for H, v in mu.items())
        ok &= good
        parts.append(f"{name} {len(mu)} subgroups {'ok' if good else 'MISMATCH'}")
    G = pg.d4()
    mu = pg.subgroup_mobius(G)
    values = sorted(mu.values())
    r2 = pg.generated_subgroup(G, [G.index_of("r^2")])
    d4_ok = values == sorted([1, -1, -1, -1, 2] + [0] * 5) and mu[r2] == 2
    ok &= d4_ok
    parts.append(f"D_4 values {values}, mu(<r^2>) = {mu[r2]}")
    return CheckResult(6, "subgroup Möbius function", ok, "; ".join(parts))


def check_nu_d4() -> CheckResult:
    G = pg.d4()
    y1 = X.nu_yamagishi(X.LocalFieldParams(2, 1, 2), G)
    c1 = X.nu_d4_closed(1)
    l1 = L.d4_extension_count_qp(2)
    y3 = X.nu_yamagishi(X.LocalFieldParams(2, 3, 2), G)
    c3 = X.nu_d4_closed(3)
    ok = y1 == c1 == l1 == 18 and y3 == c3 == 1800
    return CheckResult(7, "nu(Q_2, D_4) three ways", ok,
                       f"n=1: Möbius sum {y1}, closed form {c1}, Hilbert symbols {l1}; "
                       f"n=3: Möbius sum {y3}, closed form {c3}")


def _alpha_params(n: int) -> X.LocalFieldParams:
    # n odd: the x_1^2 x_2^4 [x_2,x_3]... relation; n even: x_1^6 [x_1,x_2][x_3,x_4]...
    return X.LocalFieldParams(2, n, 2, 2, "r2" if n % 2 else "r3")


def check_alpha_d4() -> CheckResult:
    G = pg.d4()
    ok = True
    parts = []
    for n in (1, 2):
        params = _alpha_params(n)
        brute = X.alpha_bruteforce(params, G)
        want = X.alpha_d4_closed(n)
        ok &= brute == want
        parts.append(f"n={n} ({params.relation_case}): brute {brute}, closed {want}")
    subs, _ = pg.subgroup_lattice(G)
    n_abelian = 0
    for H in subs:
        sub = pg.subgroup_as_group(G, H)
        if not sub.is_abelian():
            continue
        n_abelian += 1
        for n in (1, 2):
            params = _alpha_params(n)
            torsion = int((sub.power_map(2) == sub.identity).sum())
            if X.alpha_bruteforce(params, sub) != sub.order ** (n + 1) * torsion:
                ok = False
                parts.append(f"abelian mismatch at order {sub.order}, n={n}")
    parts.append(f"{n_abelian} abelian subgroups match |H|^(n+1)|H[2]|")
    return CheckResult(8, "alpha(D_4) and abelian alpha", ok, "; ".join(parts))


LA_PAIRS = ((2, 3), (2, 4), (2, 5), (3, 3), (3, 4))


def cup_pair_cases():
    """(p, d, case, diagonal) for every combination, with diagonal None when
    no non-degenerate skew form of that shape exists."""
    out = []
    for p, d in LA_PAIRS:
        for case in (1, 2):
            diag = [0] * d if case == 1 else [1] + [0] * (d - 1)
            try:
                X.cup_product_gram(p, d, diag)
            except X.ContractError:
                diag = None
            out.append((p, d, case, diag))
    return out


def check_cup_pairs() -> CheckResult:
    ok = True
    parts = []
    skipped = []
    for p, d, case, diag in cup_pair_cases():
        if diag is None:
            skipped.append(f"({p},{d}) case {case}")
            continue
        closed = X.cp_pair_count(p, d, case == 2)
        brute = X.cp_pair_count_bruteforce(p, d, diag)
        ok &= closed == brute
        parts.append(f"({p},{d}) case {case}: {closed}/{brute}")
    u3 = []
    for p in (2, 3):
        for n in range(1, 5):
            for q in ((2, 4) if p == 2 else (3, 9)):
                try:
                    X._check_u3(p, n, q)
                except X.ContractError:
                    continue
                a = X.nu_u3(p, n, q)
                b = X.nu_u3_from_pairs(p, n, q, pg.automorphism_count(pg.unipotent_group(3, p)))
                ok &= a == b
                u3.append(f"{a}" if a == b else f"{a}!={b}")
    detail = "closed/brute " + "; ".join(parts)
    if skipped:
        detail += f"; no non-degenerate skew form for {', '.join(skipped)}"
    detail += f"; nu_u3 both routes: {', '.join(u3)}"
    return CheckResult(9, "cup-product pair counts and nu_u3", ok, detail)


def check_shafarevich() -> CheckResult:
    bad = [(p, d, n) for d in range(1, 5) for p in (2, 3, 5) for n in range(1, 5)
           if len(set(X.shafarevich_identity(p, d, n))) != 1]
    V4 = pg.elementary_abelian(2, 2)
    aut = pg.automorphism_count(V4)
    nu = X.nu_shafarevich(2, 1, V4, aut)
    ok = not bad and aut == 6 and nu == 1
    return CheckResult(10, "Shafarevich count", ok,
                       f"binomial identity holds in {48 - len(bad)}/48 cases; |Aut(C_2^2)| = {aut}; nu = {nu}")


SAP_TABLE = (1, 12, 100, 720, 4816, 30912, 193600)


def check_sap() -> CheckResult:
    got = tuple(X.sap_d4_count(n) for n in range(2, 9))
    return CheckResult(11, "SAP D_4 counts", got == SAP_TABLE, f"n=2..8: {list(got)}")


def check_superpyth() -> CheckResult:
    # (a) the stated w/c pattern against the series pipeline
    pattern_bad = []
    for d in range(1, 4):
        P = F.family_series(F.SuperPyth(d), 2, 12)
        w = D.w_sequence(P, 12)
        c = D.c_sequence(P, 2, 12)
        for n in range(1, 13):
            if w[n - 1] != superpyth_stated_w(d, n) or c[n - 1] != superpyth_stated_c(d, n):
                pattern_bad.append((d, n, w[n - 1], c[n - 1]))
    # (b) finite quotients (Z/2^K)^d ⋊ C_2
    quotient_bad = []
    for d in (1, 2):
        for K in range(1, 5):
            G = pg.superpyth_quotient(d, K)
            chain = pg.zassenhaus_chain(G, 2, 9)
            for n in range(2, 9):
                s = (n - 1).bit_length()
                want = pg.generated_subgroup(
                    G, [i for i, (v, t) in enumerate(G.labels) if t == 0 and all(x % 2**s == 0 for x in v)])
                if chain[n - 1].mask != want.mask:
                    quotient_bad.append((d, K, n))
            dims = pg.zassenhaus_dims(G, 2, 8)
            for n in range(1, 9):
                if 2 ** (n - 1).bit_length() < 2**K and dims[n - 1] != D.c_closed(F.SuperPyth(d), 2, n):
                    quotient_bad.append((d, K, n, "dim"))
    ok = not pattern_bad and not quotient_bad
    detail = (f"stated pattern: {'ok' if not pattern_bad else f'{len(pattern_bad)} mismatches, first (d,n,w,c) = {pattern_bad[:3]}'}"
              f"; finite quotients G_(n) = H^(2^s): {'ok' if not quotient_bad else quotient_bad[:5]}")
    return CheckResult(12, "SuperPyth patterns and finite quotients", ok, detail)


def check_comparison() -> CheckResult:
    N = 24
    same = F.family_series(F.FreeProdCyclicP(2, 2), 2, N) == F.family_series(F.SuperPyth(1), 2, N)
    bad = []
    for d in range(0, 5):
        G, H = F.FreeProdCyclicP(2, d + 1), F.FreeProP(d)
        if D.c_closed(G, 2, 1) != D.c_closed(H, 2, 1) + 1:
            bad.append((d, 1))
        for n in range(2, 17):
            if D.c_closed(G, 2, n) != D.c_closed(H, 2, n):
                bad.append((d, n))
    return CheckResult(13, "C_2*C_2 = Z_2 ⋊ C_2 and the comparison of c_n", same and not bad,
                       f"series equal to order {N}: {same}; c_n comparison mismatches: {bad or 'none'}")


def check_automorphisms() -> CheckResult:
    cases = {
        "D_4": (pg.d4(), 8),
        "U_3(F_3)": (pg.unipotent_group(3, 3), 432),
        "C_4": (pg.cyclic_group(4), 2),
        "C_2^2": (pg.elementary_abelian(2, 2), 6),
    }
    got = {k: pg.automorphism_count(G) for k, (G, _) in cases.items()}
    ok = all(got[k] == want for k, (_, want) in cases.items())
    return CheckResult(14, "automorphism counts", ok, ", ".join(f"{k} -> {v}" for k, v in got.items()))


LOCAL_PRIMES = (2, 3, 5, 7, 11, 13)
LOCAL_COUNTS = (18, 1, 0, 1, 1, 0)


def check_local() -> CheckResult:
    got = tuple(L.d4_extension_count_qp(p) for p in LOCAL_PRIMES)
    return CheckResult(15, "D_4-extensions of Q_p", got == LOCAL_COUNTS,
                       f"p={list(LOCAL_PRIMES)} -> {list(got)}")


ALL_CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_jennings_roundtrip,
    check_free_formulas,
    check_demushkin_formulas,
    check_hall,
    check_unipotent,
    check_mobius_lattice,
    check_nu_d4,
    check_alpha_d4,
    check_cup_pairs,
    check_shafarevich,
    check_sap,
    check_superpyth,
    check_comparison,
    check_automorphisms,
    check_local,
)


def run_all() -> list[CheckResult]:
    return [check() for check in ALL_CHECKS]
