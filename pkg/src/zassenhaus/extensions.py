"""Counting Galois extensions with prescribed p-group via subgroup Möbius sums.

``nu(K, G) = (1/|Aut G|) * sum_{H <= G} mu_G(H) * alpha(H)`` where alpha(H)
counts tuples in H satisfying the defining relation of G_K(p).
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import pgroups as pg
from .errors import ContractError, ResourceError
from .families import INF, check_demushkin_case
from .mobius import gaussian_binomial, is_prime
from .pgroups import Commutator, Concat, FiniteGroup, Gen, RelationWord

CASES = ("r1", "r2", "r3", "r4", "free")


def _is_power_of(q: int, p: int) -> bool:
    if q < p:
        return False
    while q % p == 0:
        q //= p
    return q == 1


@dataclass(frozen=True)
class LocalFieldParams:
    """A p-adic field K of degree n over Q_p, described by the data that
    determine G_K(p).

    ``q`` is the largest p-power with a primitive q-th root of unity in K,
    or None when K has no primitive p-th root of unity (then G_K(p) is free
    of rank n + 1).
    """

    p: int
    n: int
    q: int | None = None
    f: object = 2
    relation_case: str | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ContractError(f"{self.p} is not prime")
        if self.n < 1:
            raise ContractError("degree must be >= 1")
        case = self.relation_case
        if case is None:
            if self.q is None:
                case = "free"
            elif self.q != 2:
                case = "r1"
            else:
                case = "r2" if self.n % 2 else "r3"
            object.__setattr__(self, "relation_case", case)
        if case not in CASES:
            raise ContractError(f"unknown relation case {case!r}")
        if case == "free":
            if self.q is not None:
                raise ContractError("the free case has no root of unity (q must be None)")
            return
        if self.q is None or not _is_power_of(self.q, self.p):
            raise ContractError(f"q={self.q} must be a power of p={self.p}")
        check_demushkin_case(self.n + 2, case, self.q, self.f, self.p)

    @property
    def rank(self) -> int:
        return self.n + 1 if self.relation_case == "free" else self.n + 2


def _pairs(start: int, stop: int) -> list[RelationWord]:
    """[x_start, x_start+1][x_start+2, x_start+3]... up to symbol stop-1 (0-based)."""
    return [Commutator(Gen(i), Gen(i + 1)) for i in range(start, stop, 2)]


def demushkin_relation(params: LocalFieldParams) -> RelationWord:
    """The defining relation of G_K(p) on n + 2 symbols (x_1 is symbol 0)."""
    case = params.relation_case
    if case == "free":
        raise ContractError("the free case has no relation")
    d = params.n + 2
    two_f = 0 if params.f is INF else 2**params.f
    if case == "r1":
        parts = [Gen(0, params.q)] + _pairs(0, d)
    elif case == "r2":
        parts = [Gen(0, 2), Gen(1, two_f)] + _pairs(1, d)
    elif case == "r3":
        parts = [Gen(0, 2 + two_f)] + _pairs(0, d)
    else:
        parts = [Gen(0, 2), Commutator(Gen(0), Gen(1)), Gen(2, two_f)] + _pairs(2, d)
    return Concat(tuple(parts))


def alpha_abelian(params: LocalFieldParams, H: FiniteGroup) -> int:
    """|Hom(G_K(p), H)| for abelian H: |H|^(n+1) * #{h : h^q = 1}."""
    if not H.is_abelian():
        raise ContractError("closed form needs an abelian group")
    if params.relation_case == "free":
        return H.order ** (params.n + 1)
    torsion = int((H.power_map(params.q) == H.identity).sum())
    return H.order ** (params.n + 1) * torsion


def alpha_bruteforce(params: LocalFieldParams, H: FiniteGroup) -> int:
    if params.relation_case == "free":
        return H.order ** (params.n + 1)
    return pg.count_word_solutions(H, demushkin_relation(params), params.rank)


def alpha(params: LocalFieldParams, H: FiniteGroup) -> int:
    if H.is_abelian():
        return alpha_abelian(params, H)
    return alpha_bruteforce(params, H)


def nu_yamagishi(params: LocalFieldParams, G: FiniteGroup, workers: int = 1,
                 check_abelian: bool = False) -> int:
    """Number of Galois extensions L/K with Gal(L/K) isomorphic to G."""
    if not pg.is_p_group(G, params.p):
        raise ContractError(f"G is not a {params.p}-group")
    if workers < 1:
        raise ContractError("workers must be >= 1")
    mu = pg.subgroup_mobius(G)
    # only subgroups containing the Frattini subgroup have mu != 0
    terms = [(H, m) for H, m in mu.items() if m != 0]

    def one(item):
        H, m = item
        sub = pg.subgroup_as_group(G, H)
        a = alpha(params, sub)
        if check_abelian and sub.is_abelian():
            assert a == alpha_bruteforce(params, sub), "abelian closed form disagrees"
        return m * a

    if workers == 1:
        values = [one(t) for t in terms]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            values = list(ex.map(one, terms))
    total = Fraction(sum(values), pg.automorphism_count(G))
    assert total.denominator == 1, f"nu = {total} is not an integer"
    return total.numerator


def nu_d4_closed(n: int) -> int:
    return 2**n * (2 ** (n + 1) - 1) ** 2


# -- the free case ------------------------------------------------------------

def nu_shafarevich(p: int, n: int, G: FiniteGroup, aut: int | None = None) -> int:
    """nu(K, G) when G_K(p) is free of rank n + 1."""
    if not pg.is_p_group(G, p):
        raise ContractError(f"G is not a {p}-group")
    d = pg.frattini_rank(G, p)
    aut = pg.automorphism_count(G) if aut is None else aut
    prod = math.prod(p ** (n + 1) - p**i for i in range(d))
    total = Fraction((G.order // p**d) ** (n + 1) * prod, aut)
    assert total.denominator == 1, f"nu = {total} is not an integer"
    return total.numerator


def shafarevich_identity(p: int, d: int, n: int) -> tuple[int, int]:
    """Both sides of prod_{i<d}(p^(n+1)-p^i) = sum_i [d,i]_p (-1)^i p^(i(i-1)/2) p^((n+1)(d-i))."""
    lhs = math.prod(p ** (n + 1) - p**i for i in range(d))
    rhs = sum(
        gaussian_binomial(d, i, p) * (-1) ** i * p ** (i * (i - 1) // 2) * p ** ((n + 1) * (d - i))
        for i in range(d + 1)
    )
    return lhs, rhs


# -- U_3(F_p) via cup products ------------------------------------------------

def cp_pair_count(p: int, d: int, q_is_2: bool) -> int:
    """Ordered pairs of independent vectors orthogonal under the cup-product form."""
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")
    if d < 3:
        raise ContractError("need d >= 3")
    if q_is_2:
        if p != 2:
            raise ContractError("q = 2 only occurs for p = 2")
        h = 2 ** (d - 1)
        return (h - 1) * (h - 2) + h * (h - 1)
    return (p**d - 1) * (p ** (d - 1) - p)


def cup_product_gram(p: int, d: int, diagonal) -> np.ndarray:
    """Gram matrix of the standard form with the given diagonal.

    Even d: hyperbolic pairs (1,2), (3,4), ...; odd d: coordinate 1 on its
    own and pairs (2,3), (4,5), ....  The form must be skew and
    non-degenerate, otherwise a ContractError is raised.
    """
    diagonal = [int(x) % p for x in diagonal]
    if len(diagonal) != d:
        raise ContractError("diagonal length must equal d")
    B = np.zeros((d, d), dtype=np.int64)
    for i in range(d % 2, d - 1, 2):
        B[i, i + 1] = 1
        B[i + 1, i] = p - 1
    for i, x in enumerate(diagonal):
        B[i, i] = x
    if ((B + B.T) % p).any():
        raise ContractError(f"the form with diagonal {diagonal} is not skew over F_{p}")
    if _rank_mod_p(B, p) < d:
        raise ContractError(f"the form with diagonal {diagonal} is degenerate over F_{p}")
    return B


def _rank_mod_p(A: np.ndarray, p: int) -> int:
    A = A.copy() % p
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        r += 1
    return r


def cp_pair_count_bruteforce(p: int, d: int, diagonal) -> int:
    if p**d > 2**16:
        raise ResourceError(f"{p}^{d} vectors exceed the budget")
    B = cup_product_gram(p, d, diagonal)
    V = np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64)
    N = V.shape[0]
    # index of c*x for each scalar c, to exclude dependent pairs
    weights = p ** np.arange(d - 1, -1, -1)
    count = 0
    chunk = max(1, 2**22 // N)
    for start in range(1, N, chunk):
        X = V[start:start + chunk]
        ortho = (X @ B @ V.T) % p == 0
        ortho_count = ortho.sum(axis=1)
        dep = 0
        for c in range(p):
            idx = ((c * X) % p) @ weights
            dep = dep + ortho[np.arange(X.shape[0]), idx]
        count += int((ortho_count - dep).sum())
    return count


def aut_u3_order(p: int) -> int:
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")
    return 8 if p == 2 else p**3 * (p**2 - 1) * (p - 1)


def _check_u3(p: int, n: int, q: int) -> None:
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")
    if n < 1:
        raise ContractError("degree must be >= 1")
    if not _is_power_of(q, p):
        raise ContractError(f"q={q} must be a power of p={p} (a primitive p-th root of unity is required)")
    if p > 2 and n % (p - 1):
        raise ContractError(f"Q_{p}(zeta_{p}) has degree {p - 1}, which must divide n={n}")
    if p == 2 and q > 2 and n % 2:
        raise ContractError("q > 2 forces an even degree over Q_2")


def nu_u3(p: int, n: int, q: int) -> int:
    """Number of U_3(F_p)-extensions of K (closed form)."""
    _check_u3(p, n, q)
    if p > 2:
        num = p**n * (p ** (n + 2) - 1) * (p**n - 1)
        den = (p**2 - 1) * (p - 1)
        assert num % den == 0
        return num // den
    if q > 2:
        return 2**n * (2**n - 1) * (2 ** (n + 2) - 1)
    return 2**n * (2 ** (n + 1) - 1) ** 2


def nu_u3_from_pairs(p: int, n: int, q: int, aut: int | None = None) -> int:
    """The same count as ``cp_pair_count * p^(n+2) / |Aut U_3(F_p)|``."""
    _check_u3(p, n, q)
    aut = aut_u3_order(p) if aut is None else aut
    total = Fraction(cp_pair_count(p, n + 2, q == 2) * p ** (n + 2), aut)
    assert total.denominator == 1, f"{total} is not an integer"
    return total.numerator


# -- SAP fields ---------------------------------------------------------------

def sap_pair_count(n: int) -> int:
    if n < 2:
        raise ContractError("need n >= 2")
    return 3**n - 2 ** (n + 1) + 1


def sap_pair_count_bruteforce(n: int) -> int:
    """Ordered pairs of disjoint non-empty subsets of an n-set."""
    if n < 2:
        raise ContractError("need n >= 2")
    if n > 12:
        raise ResourceError("brute force limited to n <= 12")
    masks = np.arange(1, 2**n)
    return int(((masks[:, None] & masks[None, :]) == 0).sum())


def sap_pair_count_binomial(n: int) -> int:
    return sum(math.comb(n, k) * (2**k - 2) for k in range(2, n + 1))


def sap_d4_count(n: int) -> int:
    """D_4-extensions of a SAP field with n orderings."""
    total = Fraction(sap_pair_count(n), 2) * 2 ** (n - 2)
    assert total.denominator == 1
    return total.numerator


# -- the D_4 character table --------------------------------------------------

# rows: trivial, three linear characters, the 2-dimensional one; columns are
# the classes {1}, {s, r^2 s}, {rs, r^3 s}, {r, r^3}, {r^2}
D4_CHARACTERS = (
    (1, 1, 1, 1, 1),
    (1, -1, -1, 1, 1),
    (1, 1, -1, -1, 1),
    (1, -1, 1, -1, 1),
    (2, 0, 0, 0, -2),
)


def _d4_class(label: str) -> int:
    i, j = pg.dihedral_exponents(label)
    if j == 0:
        return {0: 0, 2: 4}.get(i, 3)
    return 1 if i % 2 == 0 else 2


def alpha_d4_character_sum(n: int) -> Fraction:
    """alpha(D_4) for the q = 2 relation with an odd number of commutators,
    evaluated through the character table:

        |G|^(n-1) sum_chi chi(1)^(1-n) sum_{g,h} chi(g^2 h^3) chi(h)
    """
    G = pg.d4()
    cls = [_d4_class(lab) for lab in G.labels]
    T = G.table
    sq = G.power_map(2)
    cube = G.power_map(3)
    total = Fraction(0)
    for chi in D4_CHARACTERS:
        inner = 0
        for g in range(8):
            for h in range(8):
                inner += chi[cls[T[sq[g], cube[h]]]] * chi[cls[h]]
        total += Fraction(inner, chi[0] ** (n - 1))
    return G.order ** (n - 1) * total


def alpha_d4_closed(n: int) -> Fraction:
    return 8 ** (n + 1) * (4 + Fraction(1, 2**n))
