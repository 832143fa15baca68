import itertools

import pytest
from hypothesis import given, strategies as st

from zassenhaus import local as L
from zassenhaus.errors import ContractError

PRIMES = [2, 3, 5, 7, 11, 13]


def H(p, a, b):
    return L.hilbert_symbol(L.SquareClass.from_int(p, a), L.SquareClass.from_int(p, b))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_against_bruteforce(p):
    reps = [c.value() for c in L.square_class_reps(p)]
    k = 5 if p == 2 else 2
    for a, b in itertools.product(reps, repeat=2):
        assert H(p, a, b) == _solvable(p, a, b, k)


def _solvable(p, a, b, k):
    """Primitive solution of a x^2 + b y^2 = z^2 modulo p^k (enough for Hensel here)."""
    m = p**k
    for x, y, z in itertools.product(range(m), repeat=3):
        if min(_val(p, t) for t in (x, y, z)) > 0:
            continue
        if (a * x * x + b * y * y - z * z) % m == 0:
            return 1
    return -1


def _val(p, t):
    if t == 0:
        return 99
    v = 0
    while t % p == 0:
        t //= p
        v += 1
    return v


@pytest.mark.parametrize("p", PRIMES)
def test_symmetric_bilinear_nondegenerate(p):
    reps = L.square_class_reps(p)
    assert len(reps) == (8 if p == 2 else 4)
    for a, b, c in itertools.product(reps, repeat=3):
        assert L.hilbert_symbol(a, b) == L.hilbert_symbol(b, a)
        assert L.hilbert_symbol(a, b * c) == L.hilbert_symbol(a, b) * L.hilbert_symbol(a, c)
    for a in reps:
        if not a.is_trivial():
            assert any(L.hilbert_symbol(a, b) == -1 for b in reps)


@given(st.sampled_from(PRIMES), st.integers(-10**6, 10**6).filter(bool))
def test_standard_identities(p, a):
    assert H(p, a, -a) == 1
    assert H(p, a, a) == H(p, a, -1)
    if a != 1:
        assert H(p, a, 1 - a) == 1


@given(st.sampled_from(PRIMES[1:]), st.integers(1, 10**4), st.integers(-10**4, 10**4).filter(bool))
def test_nonresidue_choice_is_irrelevant(p, k, b):
    # any non-residue unit gives the same class, hence the same symbols
    nonres = [u for u in range(1, 4 * p) if u % p and L.legendre(u, p) == -1]
    u = nonres[k % len(nonres)]
    assert L.SquareClass.from_int(p, u) == L.SquareClass.from_int(p, L.smallest_nonresidue(p))
    assert H(p, u, b) == H(p, L.smallest_nonresidue(p), b)


def test_square_classes():
    assert L.smallest_nonresidue(3) == 2
    assert L.SquareClass.from_int(3, 2) == L.SquareClass.from_int(3, -1)
    assert L.SquareClass.from_int(2, 17).is_trivial()
    assert str(L.SquareClass.from_int(2, -40)) == "-10"
    with pytest.raises(ContractError):
        L.SquareClass.from_int(2, 0)
    with pytest.raises(ContractError):
        L.smallest_nonresidue(2)


def test_q2_pairs():
    got = {frozenset((a.value(), b.value())) for a, b in L.d4_admissible_pairs(2)}
    assert len(got) == 9
    assert frozenset((-5, -10)) in got
    assert frozenset((5, -10)) not in got
    assert H(2, 5, -10) == -1 and H(2, -5, -10) == 1
    for a, b in got:
        assert H(2, a, b) == 1


def test_d4_count_qp():
    assert L.d4_extension_count_qp(2) == 18
    # tame only: inertia C4 with Frobenius inverting it, since 3 = -1 mod 4
    assert L.d4_extension_count_qp(3) == 1
