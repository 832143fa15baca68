import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zassenhaus import pgroups as pg
from zassenhaus.errors import ContractError, ResourceError


def orders(chain):
    return [H.order for H in chain]


def test_d4_basics():
    G = pg.d4()
    assert G.order == 8 and not G.is_abelian() and G.exponent() == 4
    assert sorted(G.element_orders().tolist()) == [1, 2, 2, 2, 2, 2, 4, 4]
    assert G.labels[G.identity] == "1"
    assert pg.dihedral_exponents("r^2s") == (2, 1)
    assert pg.dihedral_label((3, 1)) == "r^3s"


def test_invalid_tables():
    with pytest.raises(ContractError):
        pg.FiniteGroup(np.array([[0, 1], [1, 1]]), (1,))
    with pytest.raises(ContractError):
        # the identity alone does not generate C2
        pg.FiniteGroup(np.array([[0, 1], [1, 0]]), (0,))
    assert pg.FiniteGroup(np.array([[1, 0], [0, 1]]), (0,)).identity == 1
    # Latin square with identity but not associative (order 5 loop)
    loop = np.array([
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ])
    with pytest.raises(ContractError):
        pg.FiniteGroup(loop, (1, 2))


def test_order_cap():
    with pytest.raises(ResourceError):
        pg.cyclic_group(2**13)


def test_group_from_generators():
    assert pg.permutation_group([(1, 2, 3, 0)]).order == 4
    assert pg.permutation_group([(1, 0, 2, 3), (0, 1, 3, 2)]).order == 4
    assert pg.permutation_group([(1, 0, 2, 3), (0, 1, 3, 2)]).exponent() == 2
    assert pg.superpyth_quotient(2, 3).order == 128
    assert pg.unipotent_group(3, 3).order == 27
    assert pg.unipotent_group(4, 2).order == 64


def test_subgroup_helpers():
    G = pg.d4()
    r = G.index_of("r")
    R = pg.generated_subgroup(G, [r])
    assert R.order == 4 and R <= pg.whole(G)
    assert pg.commutator_subgroup(G, pg.whole(G), pg.whole(G)).order == 2
    assert pg.power_subgroup(G, pg.whole(G), 2).order == 2
    assert pg.frattini(G, 2).order == 2 and pg.frattini_rank(G, 2) == 2
    assert len(pg.minimal_generators(G)) == 2
    assert pg.join(G, [R, pg.generated_subgroup(G, [G.index_of("s")])]) == pg.whole(G)
    assert pg.subgroup_as_group(G, R).is_abelian()


def test_d4_lower_central_series():
    assert orders(pg.lower_central_chain(pg.d4())) == [8, 2, 1]


def test_unipotent_chain():
    G = pg.unipotent_group(4, 2)
    chain = pg.zassenhaus_chain(G, 2, 6)
    assert orders(chain) == [64, 8, 2, 1, 1, 1]
    assert pg.zassenhaus_dims(G, 2, 3) == [3, 2, 1]


def test_zassenhaus_chain_cyclic():
    assert orders(pg.zassenhaus_chain(pg.cyclic_group(8), 2, 5)) == [8, 4, 2, 2, 1]


def test_lazard_chain_is_descending_and_normal():
    G = pg.unipotent_group(3, 3)
    chain = pg.lazard_chain(G, 3, 4)
    assert all(b <= a for a, b in zip(chain, chain[1:]))
    assert chain[0].order == 27


@pytest.mark.parametrize("G, want", [
    (pg.d4(), 8),
    (pg.cyclic_group(8), 4),
    (pg.elementary_abelian(2, 3), 168),
    (pg.direct_product(pg.cyclic_group(4), pg.cyclic_group(2)), 8),
    (pg.unipotent_group(3, 3), 432),
    (pg.elementary_abelian(3, 2), 48),
])
def test_automorphism_count(G, want):
    assert pg.automorphism_count(G) == want


def test_lattice_sizes():
    subs, _ = pg.subgroup_lattice(pg.d4())
    assert len(subs) == 10
    subs, _ = pg.subgroup_lattice(pg.elementary_abelian(2, 3))
    assert len(subs) == 16


def test_mobius_elementary_abelian():
    # mu(1, V) for V of dimension k over F_p is (-1)^k p^(k(k-1)/2)
    for p, k in [(2, 2), (2, 3), (3, 2)]:
        G = pg.elementary_abelian(p, k)
        mu = pg.subgroup_mobius(G)
        assert mu[pg.trivial(G)] == (-1) ** k * p ** (k * (k - 1) // 2)
        assert sum(mu.values()) == 0


def brute_count(G, word, n):
    cnt = 0
    cache = {}
    for tup in itertools.product(range(G.order), repeat=n):
        values = {i: np.array([v]) for i, v in enumerate(tup)}
        cnt += int(pg._evaluate(G, word, values, cache)[0] == G.identity)
    return cnt


WORDS = [
    pg.Concat((pg.Gen(0, 2), pg.Commutator(pg.Gen(0), pg.Gen(1)))),
    pg.Concat((pg.Gen(0, 2), pg.Gen(1, 2), pg.Commutator(pg.Gen(1), pg.Gen(2)))),
    pg.Commutator(pg.Gen(0), pg.Gen(1)),
    pg.Concat((pg.Gen(0, 4), pg.Commutator(pg.Gen(0), pg.Gen(1)), pg.Commutator(pg.Gen(2), pg.Gen(3)))),
]


@pytest.mark.parametrize("word", WORDS, ids=pg.word_str)
def test_word_count_vs_bruteforce(word):
    G = pg.d4()
    n = pg.arity(word)
    assert pg.count_word_solutions(G, word) == brute_count(G, word, n)


def test_word_str_and_unused_symbols():
    w = pg.Concat((pg.Gen(0, 2), pg.Gen(1, 4), pg.Commutator(pg.Gen(1), pg.Gen(2))))
    assert pg.word_str(w) == "x1^2x2^4[x2,x3]"
    G = pg.d4()
    base = pg.count_word_solutions(G, pg.Commutator(pg.Gen(0), pg.Gen(1)))
    assert base == 40
    assert pg.count_word_solutions(G, pg.Commutator(pg.Gen(0), pg.Gen(1)), 3) == 8 * base
    with pytest.raises(ContractError):
        pg.count_word_solutions(G, w, 2)


@settings(max_examples=25, deadline=None)
@given(st.permutations(range(4)), st.sampled_from(WORDS))
def test_word_count_invariant_under_relabeling(perm, word):
    G = pg.d4()
    n = 4
    moved = pg.relabel(word, dict(enumerate(perm)))
    assert pg.count_word_solutions(G, moved, n) == pg.count_word_solutions(G, word, n)


@settings(max_examples=25, deadline=None)
@given(st.permutations(range(8)), st.sampled_from(WORDS[:3]))
def test_word_count_invariant_under_element_renaming(perm, word):
    G = pg.d4()
    H = G.permuted(list(perm))
    assert pg.count_word_solutions(H, word) == pg.count_word_solutions(G, word)
    assert pg.automorphism_count(H) == 8


def test_is_p_group():
    assert pg.is_p_group(pg.d4(), 2)
    assert not pg.is_p_group(pg.cyclic_group(6), 2)
    with pytest.raises(ContractError):
        pg.zassenhaus_chain(pg.cyclic_group(6), 2, 3)
