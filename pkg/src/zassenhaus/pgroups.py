"""Finite p-groups given by Cayley tables.

Elements are indices ``0..m-1``; a subgroup is a bitmask over those
indices.  Everything here is brute force on purpose: these routines are
the oracles the closed-form counts get checked against.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence, Union

import numpy as np

from .errors import ContractError, ResourceError
from .mobius import FinitePoset, MAX_POSET_SIZE, factorize, is_prime

MAX_GROUP_ORDER = 2**12
MAX_LATTICE_GROUP_ORDER = 512
WORD_BUDGET = 2**26
AUT_BUDGET = 2**20


def _dtype(m: int):
    return np.int16 if m < 2**15 else np.int32


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Group on ``0..m-1`` with multiplication table ``table[a, b] = a*b``."""

    table: np.ndarray
    generators: tuple[int, ...]
    labels: tuple = field(default=())

    def __post_init__(self):
        T = np.asarray(self.table)
        if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
            raise ContractError("multiplication table must be a non-empty square array")
        m = T.shape[0]
        if m > MAX_GROUP_ORDER:
            raise ResourceError(f"group of order {m} exceeds {MAX_GROUP_ORDER}")
        T = T.astype(_dtype(m))
        if T.min() < 0 or T.max() >= m:
            raise ContractError("table entries out of range")
        idx = np.arange(m)
        ids = [e for e in range(m) if (T[e] == idx).all() and (T[:, e] == idx).all()]
        if len(ids) != 1:
            raise ContractError("table has no two-sided identity")
        e = ids[0]
        # Latin square: each row and column is a permutation
        if not (np.sort(T, axis=1) == idx).all() or not (np.sort(T, axis=0) == idx[:, None]).all():
            raise ContractError("table is not a Latin square")
        inv = np.argmax(T == e, axis=1).astype(T.dtype)
        gens = tuple(int(g) for g in self.generators)
        if any(g < 0 or g >= m for g in gens):
            raise ContractError("generator index out of range")
        if self.labels and len(self.labels) != m:
            raise ContractError("labels length does not match group order")
        T.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "table", T)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverse", inv)
        if _closure_mask(T, [e], gens).sum() != m:
            raise ContractError("generators do not generate the group")
        # Light's test: associativity only needs checking with generators in the middle
        for g in gens:
            if not (T[T[:, g], :] == T[:, T[g, :]]).all():
                raise ContractError("table is not associative")

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def power_map(self, k: int) -> np.ndarray:
        """Array whose x-th entry is x^k."""
        T = self.table
        if k < 0:
            return self.power_map(-k)[self.inverse]
        result = np.full(self.order, self.identity, dtype=T.dtype)
        base = np.arange(self.order, dtype=T.dtype)
        while k:
            if k & 1:
                result = T[result, base]
            base = T[base, base]
            k >>= 1
        return result

    def element_orders(self) -> np.ndarray:
        T = self.table
        idx = np.arange(self.order, dtype=T.dtype)
        orders = np.zeros(self.order, dtype=np.int64)
        cur = idx.copy()
        k = 1
        while (orders == 0).any():
            orders[(cur == self.identity) & (orders == 0)] = k
            cur = T[cur, idx]
            k += 1
        return orders

    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in set(self.element_orders().tolist())))

    def commutator_table(self) -> np.ndarray:
        """``C[a, b] = a^-1 b^-1 a b``."""
        T, inv = self.table, self.inverse
        return T[T[inv[:, None], inv[None, :]], T]

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def index_of(self, label) -> int:
        return self.labels.index(label)

    def permuted(self, perm: Sequence[int]) -> "FiniteGroup":
        """Isomorphic copy in which old element ``x`` gets index ``perm[x]``."""
        perm = np.asarray(perm)
        if sorted(perm.tolist()) != list(range(self.order)):
            raise ContractError("perm is not a permutation")
        inv_perm = np.argsort(perm)
        T = perm[self.table[inv_perm[:, None], inv_perm[None, :]]]
        labels = tuple(self.labels[i] for i in inv_perm) if self.labels else ()
        return FiniteGroup(T, tuple(int(perm[g]) for g in self.generators), labels)


def _closure_mask(T: np.ndarray, seeds: Iterable[int], gens: Sequence[int]) -> np.ndarray:
    """Boolean membership of the subgroup generated by ``gens`` (seeds must include it)."""
    m = T.shape[0]
    member = np.zeros(m, dtype=bool)
    frontier = np.unique(np.asarray(list(seeds), dtype=np.int64))
    member[frontier] = True
    gens = np.asarray(list(gens), dtype=np.int64)
    if gens.size == 0:
        return member
    while frontier.size:
        nxt = np.unique(T[frontier[:, None], gens[None, :]].ravel())
        nxt = nxt[~member[nxt]]
        member[nxt] = True
        frontier = nxt
    return member


def group_from_generators(gens: Sequence[Hashable], mul: Callable, identity: Hashable,
                          labeler: Callable | None = None) -> FiniteGroup:
    """Close ``gens`` under ``mul`` and return the Cayley table.

    Elements are indexed in breadth-first order from the identity, so index
    0 is always the identity and the result is deterministic.
    """
    gens = list(gens)
    elements = [identity]
    index = {identity: 0}
    parent: list[tuple[int, int]] = [(-1, -1)]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for k, g in enumerate(gens):
            y = mul(elements[i], g)
            if y not in index:
                if len(elements) >= MAX_GROUP_ORDER:
                    raise ResourceError(f"closure exceeds {MAX_GROUP_ORDER} elements")
                index[y] = len(elements)
                elements.append(y)
                parent.append((i, k))
                queue.append(index[y])
    m = len(elements)
    dt = _dtype(m)
    # right multiplication by each generator, as permutations of indices
    right = np.array([[index[mul(x, g)] for x in elements] for g in gens], dtype=dt).reshape(len(gens), m)
    T = np.empty((m, m), dtype=dt)
    T[:, 0] = np.arange(m)
    for j in range(1, m):
        pj, k = parent[j]
        T[:, j] = right[k][T[:, pj]]
    gen_idx = tuple(index[g] for g in gens)
    labels = tuple(labeler(x) for x in elements) if labeler else tuple(elements)
    return FiniteGroup(T, gen_idx, labels)


# -- constructors -------------------------------------------------------------

def cyclic_group(k: int) -> FiniteGroup:
    if k < 1:
        raise ContractError("order must be positive")
    idx = np.arange(k)
    return FiniteGroup((idx[:, None] + idx[None, :]) % k, (1 % k,), tuple(range(k)))


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    m, n = G.order, H.order
    if m * n > MAX_GROUP_ORDER:
        raise ResourceError(f"product of order {m * n} exceeds {MAX_GROUP_ORDER}")
    a = np.repeat(np.arange(m), n)
    b = np.tile(np.arange(n), m)
    T = G.table[a[:, None], a[None, :]].astype(np.int64) * n + H.table[b[:, None], b[None, :]]
    gens = tuple(g * n + H.identity for g in G.generators) + tuple(G.identity * n + h for h in H.generators)
    labels = tuple((G.labels[i] if G.labels else i, H.labels[j] if H.labels else j) for i, j in zip(a, b))
    return FiniteGroup(T, gens, labels)


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")
    G = cyclic_group(p)
    for _ in range(k - 1):
        G = direct_product(G, cyclic_group(p))
    return G


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n, elements labelled like ``r^2s`` for r^2 s."""
    if n < 2:
        raise ContractError("need n >= 2")

    def mul(a, b):
        (i, j), (k, l) = a, b
        return ((i + (k if j == 0 else -k)) % n, (j + l) % 2)

    return group_from_generators([(1, 0), (0, 1)], mul, (0, 0), labeler=dihedral_label)


def dihedral_label(x: tuple[int, int]) -> str:
    i, j = x
    r = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
    return (r + ("s" if j else "")) or "1"


def dihedral_exponents(label: str) -> tuple[int, int]:
    """Inverse of :func:`dihedral_label`."""
    if label == "1":
        return (0, 0)
    j = 1 if label.endswith("s") else 0
    r = label[:-1] if j else label
    i = 0 if r == "" else (1 if r == "r" else int(r[2:]))
    return (i, j)


def d4() -> FiniteGroup:
    return dihedral_group(4)


def unipotent_group(n: int, p: int) -> FiniteGroup:
    """Upper unitriangular n×n matrices over F_p, generated by elementary matrices."""
    if not 2 <= n <= 5:
        raise ContractError("n must be between 2 and 5")
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")
    if p ** (n * (n - 1) // 2) > MAX_GROUP_ORDER:
        raise ResourceError(f"U_{n}(F_{p}) has order above {MAX_GROUP_ORDER}")

    def mat_mul(a, b):
        A = np.array(a).reshape(n, n)
        B = np.array(b).reshape(n, n)
        return tuple(int(x) for x in ((A @ B) % p).ravel())

    eye = tuple(int(x) for x in np.eye(n, dtype=int).ravel())
    gens = []
    for i in range(n - 1):
        E = np.eye(n, dtype=int)
        E[i, i + 1] = 1
        gens.append(tuple(int(x) for x in E.ravel()))
    return group_from_generators(gens, mat_mul, eye)


def superpyth_quotient(d: int, K: int) -> FiniteGroup:
    """(Z/2^K)^d ⋊ C_2 with C_2 acting by inversion; elements ``(v, s)``."""
    if d < 1 or K < 1:
        raise ContractError("need d >= 1 and K >= 1")
    mod = 2**K

    def mul(a, b):
        (v, s), (w, t) = a, b
        sign = 1 if s == 0 else -1
        return (tuple((x + sign * y) % mod for x, y in zip(v, w)), (s + t) % 2)

    zero = tuple([0] * d)
    gens = [(zero, 1)]
    for i in range(d):
        e = [0] * d
        e[i] = 1
        gens.append((tuple(e), 0))
    return group_from_generators(gens, mul, (zero, 0))


def permutation_group(perms: Sequence[Sequence[int]]) -> FiniteGroup:
    perms = [tuple(p) for p in perms]
    if not perms:
        raise ContractError("need at least one permutation")
    n = len(perms[0])
    # (a*b)(x) = b(a(x)): apply a first
    return group_from_generators(perms, lambda a, b: tuple(b[a[x]] for x in range(n)), tuple(range(n)))


# -- subgroups ----------------------------------------------------------------

def _to_mask(member: np.ndarray) -> int:
    return int.from_bytes(np.packbits(member, bitorder="little").tobytes(), "little")


@dataclass(frozen=True)
class Subgroup:
    mask: int
    group: FiniteGroup = field(compare=False, hash=False, repr=False)

    @classmethod
    def from_members(cls, G: FiniteGroup, member: np.ndarray) -> "Subgroup":
        return cls(_to_mask(np.asarray(member, dtype=bool)), G)

    def member_array(self) -> np.ndarray:
        m = self.group.order
        raw = np.frombuffer(self.mask.to_bytes((m + 7) // 8, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[:m].astype(bool)

    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.member_array())

    @property
    def order(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> int(x) & 1)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & other.mask == self.mask

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.mask != other.mask

    def is_trivial(self) -> bool:
        return self.order == 1


def generated_subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    elements = list({int(x) for x in elements})
    return Subgroup.from_members(G, _closure_mask(G.table, [G.identity], elements))


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup((1 << G.order) - 1, G)


def trivial(G: FiniteGroup) -> Subgroup:
    return Subgroup(1 << G.identity, G)


def commutator_subgroup(G: FiniteGroup, A: Subgroup, B: Subgroup, comm: np.ndarray | None = None) -> Subgroup:
    comm = G.commutator_table() if comm is None else comm
    vals = comm[A.elements()[:, None], B.elements()[None, :]]
    return generated_subgroup(G, np.unique(vals))


def power_subgroup(G: FiniteGroup, A: Subgroup, k: int) -> Subgroup:
    """Subgroup generated by the k-th powers of all elements of A."""
    return generated_subgroup(G, np.unique(G.power_map(k)[A.elements()]))


def join(G: FiniteGroup, parts: Iterable[Subgroup]) -> Subgroup:
    els: set[int] = set()
    for H in parts:
        els.update(H.elements().tolist())
    return generated_subgroup(G, els)


def minimal_generators(G: FiniteGroup, H: Subgroup | None = None) -> list[int]:
    """A generating tuple of H found greedily (largest element order first)."""
    H = whole(G) if H is None else H
    orders = G.element_orders()
    candidates = sorted(H.elements().tolist(), key=lambda x: (-int(orders[x]), x))
    # prefer the group's own generators when they lie in H
    pref = [g for g in G.generators if g in H]
    gens: list[int] = []
    current = trivial(G)
    for x in pref + candidates:
        if current.mask == H.mask:
            break
        if x not in current:
            gens.append(int(x))
            current = generated_subgroup(G, gens)
    # drop redundant generators
    for g in list(gens):
        rest = [h for h in gens if h != g]
        if generated_subgroup(G, rest).mask == H.mask:
            gens = rest
    return gens


def subgroup_as_group(G: FiniteGroup, H: Subgroup) -> FiniteGroup:
    els = H.elements()
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[els] = np.arange(els.size)
    T = pos[G.table[els[:, None], els[None, :]]]
    gens = tuple(int(pos[g]) for g in minimal_generators(G, H))
    labels = tuple(G.labels[i] for i in els) if G.labels else tuple(int(i) for i in els)
    return FiniteGroup(T, gens, labels)


def is_p_group(G: FiniteGroup, p: int) -> bool:
    return G.order == 1 or factorize(G.order) == {p: int(round(math.log(G.order, p)))}


def _require_p_group(G: FiniteGroup, p: int) -> None:
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")
    if not is_p_group(G, p):
        raise ContractError(f"group of order {G.order} is not a {p}-group")


def subgroup_lattice(G: FiniteGroup) -> tuple[list[Subgroup], FinitePoset]:
    """All subgroups of G (sorted by order, then mask) and the inclusion poset."""
    if G.order > MAX_LATTICE_GROUP_ORDER:
        raise ResourceError(f"lattice enumeration is limited to order {MAX_LATTICE_GROUP_ORDER}")
    cyclic: dict[int, Subgroup] = {}
    for x in range(G.order):
        H = generated_subgroup(G, [x])
        cyclic.setdefault(H.mask, H)
    found: dict[int, Subgroup] = dict(cyclic)
    frontier = list(cyclic.values())
    cyc = list(cyclic.values())
    while frontier:
        new = []
        for H in frontier:
            for C in cyc:
                if C <= H:
                    continue
                J = generated_subgroup(G, list(H.elements()) + list(C.elements()))
                if J.mask not in found:
                    found[J.mask] = J
                    new.append(J)
                    if len(found) > MAX_POSET_SIZE:
                        raise ResourceError("subgroup lattice too large")
        frontier = new
    subs = sorted(found.values(), key=lambda H: (H.order, H.mask))
    M = np.array([H.member_array() for H in subs], dtype=np.int64)
    leq = (M @ (1 - M).T) == 0
    return subs, FinitePoset(leq, tuple(subs))


def subgroup_mobius(G: FiniteGroup, lattice=None) -> dict[Subgroup, int]:
    """mu_G(H) = mu(H, G) in the subgroup lattice."""
    subs, P = subgroup_lattice(G) if lattice is None else lattice
    top = len(subs) - 1
    mu: dict[int, int] = {top: 1}
    leq = P.leq
    for i in range(top - 1, -1, -1):
        above = np.flatnonzero(leq[i])
        mu[i] = -sum(mu[j] for j in above if j != i)
    return {subs[i]: mu[i] for i in range(len(subs))}


def frattini(G: FiniteGroup, p: int) -> Subgroup:
    """Phi(G) = G^p [G, G] for a p-group."""
    _require_p_group(G, p)
    powers = np.unique(G.power_map(p))
    comms = np.unique(G.commutator_table())
    return generated_subgroup(G, np.concatenate([powers, comms]))


def frattini_rank(G: FiniteGroup, p: int) -> int:
    return round(math.log(G.order // frattini(G, p).order, p))


def lower_central_chain(G: FiniteGroup) -> list[Subgroup]:
    comm = G.commutator_table()
    chain = [whole(G)]
    while True:
        nxt = commutator_subgroup(G, chain[-1], chain[0], comm)
        if nxt.mask == chain[-1].mask:
            return chain
        chain.append(nxt)


def zassenhaus_chain(G: FiniteGroup, p: int, max_n: int) -> list[Subgroup]:
    """[G_(1), ..., G_(max_n)] for a p-group G."""
    _require_p_group(G, p)
    if max_n < 1:
        raise ContractError("max_n must be >= 1")
    comm = G.commutator_table()
    pmap = G.power_map(p)
    chain = [whole(G)]
    for n in range(2, max_n + 1):
        prev = chain[-(-n // p) - 1]
        gens = set(np.unique(pmap[prev.elements()]).tolist())
        for i in range(1, n // 2 + 1):
            A, B = chain[i - 1], chain[n - i - 1]
            gens.update(np.unique(comm[A.elements()[:, None], B.elements()[None, :]]).tolist())
        chain.append(generated_subgroup(G, gens))
    return chain


def zassenhaus_dims(G: FiniteGroup, p: int, max_n: int) -> list[int]:
    """log_p [G_(n) : G_(n+1)] for n = 1..max_n."""
    chain = zassenhaus_chain(G, p, max_n + 1)
    out = []
    for a, b in zip(chain, chain[1:]):
        k = round(math.log(a.order // b.order, p)) if a.order != b.order else 0
        assert p**k * b.order == a.order
        out.append(k)
    return out


def lazard_chain(G: FiniteGroup, p: int, max_n: int) -> list[Subgroup]:
    """prod over i p^j >= n of G_i^{p^j}, with G_i the lower central series."""
    _require_p_group(G, p)
    gamma = lower_central_chain(G)
    out = []
    for n in range(1, max_n + 1):
        parts = []
        for i in range(1, n + 1):
            Gi = gamma[i - 1] if i <= len(gamma) else trivial(G)
            j = 0
            while i * p**j < n:
                j += 1
            parts.append(power_subgroup(G, Gi, p**j))
        out.append(join(G, parts))
    return out


# -- automorphisms ------------------------------------------------------------

def automorphism_count(G: FiniteGroup) -> int:
    """|Aut(G)| by enumerating images of a greedy generating tuple."""
    if G.order > 1024:
        raise ResourceError("automorphism counting is limited to order 1024")
    gens = minimal_generators(G)
    if not gens:
        return 1
    if len(gens) > 3:
        raise ResourceError(f"generating tuple of length {len(gens)} exceeds 3")
    orders = G.element_orders()
    choices = [np.flatnonzero(orders == orders[g]) for g in gens]
    total = math.prod(c.size for c in choices)
    if total > AUT_BUDGET:
        raise ResourceError(f"{total} candidate images exceed the budget")
    T = G.table
    m = G.order
    # BFS tree: element j = parent[j] * gens[k]
    parent = np.full(m, -1)
    via = np.full(m, -1)
    seen = np.zeros(m, dtype=bool)
    seen[G.identity] = True
    queue = deque([G.identity])
    order_list = [G.identity]
    while queue:
        a = queue.popleft()
        for k, g in enumerate(gens):
            b = int(T[a, g])
            if not seen[b]:
                seen[b] = True
                parent[b], via[b] = a, k
                queue.append(b)
                order_list.append(b)
    right = [T[:, g] for g in gens]
    count = 0
    for imgs in itertools.product(*choices):
        phi = np.empty(m, dtype=np.int64)
        phi[G.identity] = G.identity
        for b in order_list[1:]:
            phi[b] = T[phi[parent[b]], imgs[via[b]]]
        if all((phi[right[k]] == T[phi, imgs[k]]).all() for k in range(len(gens))):
            if np.unique(phi).size == m:
                count += 1
    return count


# -- relation words -----------------------------------------------------------

@dataclass(frozen=True)
class Gen:
    symbol: int
    exponent: int = 1


@dataclass(frozen=True)
class Commutator:
    left: "RelationWord"
    right: "RelationWord"


@dataclass(frozen=True)
class Concat:
    parts: tuple["RelationWord", ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))


RelationWord = Union[Gen, Commutator, Concat]


def symbols(word: RelationWord) -> frozenset[int]:
    if isinstance(word, Gen):
        if word.symbol < 0:
            raise ContractError("symbol indices must be non-negative")
        return frozenset([word.symbol])
    if isinstance(word, Commutator):
        return symbols(word.left) | symbols(word.right)
    if isinstance(word, Concat):
        return frozenset().union(*(symbols(w) for w in word.parts))
    raise ContractError(f"not a relation word: {word!r}")


def arity(word: RelationWord) -> int:
    s = symbols(word)
    return max(s) + 1 if s else 0


def word_str(word: RelationWord) -> str:
    if isinstance(word, Gen):
        e = "" if word.exponent == 1 else f"^{word.exponent}"
        return f"x{word.symbol + 1}{e}"
    if isinstance(word, Commutator):
        return f"[{word_str(word.left)},{word_str(word.right)}]"
    return "".join(word_str(w) for w in word.parts)


def relabel(word: RelationWord, mapping: dict[int, int]) -> RelationWord:
    if isinstance(word, Gen):
        return Gen(mapping.get(word.symbol, word.symbol), word.exponent)
    if isinstance(word, Commutator):
        return Commutator(relabel(word.left, mapping), relabel(word.right, mapping))
    return Concat(tuple(relabel(w, mapping) for w in word.parts))


def _evaluate(G: FiniteGroup, word: RelationWord, values: dict[int, np.ndarray], cache: dict) -> np.ndarray:
    T = G.table
    if isinstance(word, Gen):
        k = word.exponent % G.exponent()
        if k not in cache:
            cache[k] = G.power_map(k)
        return cache[k][values[word.symbol]]
    if isinstance(word, Commutator):
        a = _evaluate(G, word.left, values, cache)
        b = _evaluate(G, word.right, values, cache)
        return T[T[G.inverse[a], G.inverse[b]], T[a, b]]
    acc = None
    for part in word.parts:
        v = _evaluate(G, part, values, cache)
        acc = v if acc is None else T[acc, v]
    if acc is None:
        n = len(next(iter(values.values()))) if values else 1
        return np.full(n, G.identity, dtype=T.dtype)
    return acc


def _blocks(word: RelationWord) -> list[RelationWord]:
    """Split a top-level product into consecutive factors with disjoint symbols."""
    parts = list(word.parts) if isinstance(word, Concat) else [word]
    blocks: list[list[RelationWord]] = []
    cur: list[RelationWord] = []
    for i, part in enumerate(parts):
        cur.append(part)
        seen = frozenset().union(*(symbols(w) for w in cur))
        rest = frozenset().union(*(symbols(w) for w in parts[i + 1:])) if i + 1 < len(parts) else frozenset()
        if not seen & rest:
            blocks.append(cur)
            cur = []
    return [b[0] if len(b) == 1 else Concat(tuple(b)) for b in blocks]


def _histogram(G: FiniteGroup, word: RelationWord, cache: dict) -> np.ndarray:
    syms = sorted(symbols(word))
    m = G.order
    if m ** len(syms) > WORD_BUDGET:
        raise ResourceError(f"{m}^{len(syms)} tuples exceed the enumeration budget")
    grids = np.indices((m,) * len(syms)).reshape(len(syms), -1) if syms else np.zeros((0, 1), dtype=np.int64)
    values = {s: grids[i] for i, s in enumerate(syms)}
    vals = _evaluate(G, word, values, cache)
    return np.bincount(vals.astype(np.int64), minlength=m).astype(np.int64)


def count_word_solutions(G: FiniteGroup, word: RelationWord, n_symbols: int | None = None) -> int:
    """Number of tuples in G^n_symbols on which ``word`` evaluates to 1.

    The word is split into consecutive factors over disjoint symbol sets;
    each factor's value distribution is enumerated separately and the
    distributions are convolved over the group.
    """
    n_symbols = arity(word) if n_symbols is None else n_symbols
    used = symbols(word)
    if used and max(used) >= n_symbols:
        raise ContractError("word uses a symbol beyond n_symbols")
    T = G.table
    m = G.order
    cache: dict = {}
    dist = None
    # int64 is exact while the total number of tuples stays below 2^62
    dt = np.int64 if m ** len(used) < 2**62 else object
    for block in _blocks(word):
        h = _histogram(G, block, cache).astype(dt)
        if dist is None:
            dist = h
        else:
            out = np.zeros(m, dtype=dt)
            np.add.at(out, T.ravel().astype(np.int64), np.outer(dist, h).ravel())
            dist = out
    hits = 1 if dist is None else int(dist[G.identity])
    return hits * m ** (n_symbols - len(used))
