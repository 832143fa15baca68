import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zassenhaus import mobius as M
from zassenhaus.errors import ContractError


def test_chain():
    P = M.chain_poset(2)
    mu = M.mobius_table(P)
    assert mu[0, 1] == -1 and mu[0, 2] == 0 and mu[0, 0] == 1


def test_boolean_rank_two():
    P = M.boolean_poset(2)
    assert M.mobius_table(P)[0, 3] == 1


@pytest.mark.parametrize("rank", range(0, 5))
def test_boolean_lattice_sign(rank):
    mu = M.mobius_table(M.boolean_poset(rank))
    for a in range(1 << rank):
        for b in range(1 << rank):
            if a & b == a:
                assert mu[a, b] == (-1) ** bin(b & ~a).count("1")


def test_subspace_lattice_f2_squared():
    P = M.subspace_poset(2, 2)
    mu = M.mobius_table(P)
    assert P.size == 5
    assert mu[0, P.size - 1] == 2


@pytest.mark.parametrize("n, q", [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (3, 3)])
def test_subspace_lattice_closed_form(n, q):
    P = M.subspace_poset(n, q)
    assert P.size == sum(M.gaussian_binomial(n, k, q) for k in range(n + 1))
    mu = M.mobius_table(P)
    assert mu[0, P.size - 1] == (-1) ** n * q ** (n * (n - 1) // 2)


def test_divisor_poset_matches_classical():
    P = M.divisor_poset(360)
    mu = M.mobius_table(P)
    for i, a in enumerate(P.labels):
        for j, b in enumerate(P.labels):
            if b % a == 0:
                assert mu[i, j] == M.classical_mobius(b // a)


@pytest.mark.parametrize("n, want", [(1, 1), (2, -1), (6, 1), (12, 0), (30, -1), (49, 0)])
def test_classical(n, want):
    assert M.classical_mobius(n) == want


def test_classical_rejects_zero():
    with pytest.raises(ContractError):
        M.classical_mobius(0)


def test_gaussian_examples():
    assert M.gaussian_binomial(4, 2, 2) == 35
    assert M.gaussian_binomial(7, 0, 5) == 1
    assert M.gaussian_binomial(3, 5, 2) == 0
    with pytest.raises(ContractError):
        M.gaussian_binomial(3, 1, 1)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_gaussian_identities(q):
    for n in range(0, 9):
        for k in range(0, n + 1):
            assert M.gaussian_binomial(n, k, q) == M.gaussian_binomial(n, n - k, q)
            if k >= 1:
                assert M.gaussian_binomial(n + 1, k, q) == (
                    M.gaussian_binomial(n, k - 1, q) + q**k * M.gaussian_binomial(n, k, q)
                )


def test_gaussian_counts_subspaces():
    # oracle: count k-subspaces of F_2^4 by enumerating spans
    P = M.subspace_poset(4, 2)
    sizes = [len(s) for s in P.labels]
    for k in range(5):
        assert sizes.count(2**k) == M.gaussian_binomial(4, k, 2)


def test_invalid_relations():
    with pytest.raises(ContractError):
        M.FinitePoset(np.array([[True, True], [True, True]]))
    with pytest.raises(ContractError):
        M.FinitePoset(np.array([[False]]))
    cyc = np.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]], dtype=bool)
    with pytest.raises(ContractError):
        M.FinitePoset(cyc)


@st.composite
def random_poset(draw):
    # a random order: random DAG on a fixed linear order, then transitive closure
    m = draw(st.integers(1, 7))
    rel = np.eye(m, dtype=bool)
    for i, j in itertools.combinations(range(m), 2):
        rel[i, j] = draw(st.booleans())
    for k in range(m):
        rel |= rel[:, [k]] & rel[[k], :]
    perm = draw(st.permutations(range(m)))
    rel = rel[np.ix_(perm, perm)]
    return M.FinitePoset(rel)


@settings(max_examples=80, deadline=None)
@given(random_poset(), st.data())
def test_inversion_round_trip(P, data):
    f = data.draw(st.lists(st.integers(-20, 20), min_size=P.size, max_size=P.size))
    g = [sum(f[y] for y in range(P.size) if P.leq[y, x]) for x in range(P.size)]
    assert M.mobius_inversion(P, g) == f


@settings(max_examples=80, deadline=None)
@given(random_poset())
def test_mu_inverts_zeta(P):
    mu = M.mobius_table(P)
    zeta = P.leq.astype(object)
    assert (zeta.dot(mu) == np.eye(P.size, dtype=object)).all()
