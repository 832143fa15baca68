import pytest

from zassenhaus import dims as D
from zassenhaus import families as F
from zassenhaus import hall as Hl
from zassenhaus.errors import ContractError


def names(terms):
    return [str(t) for t in terms]


def test_weight_one():
    assert names(Hl.hall_basis(2, 1)) == ["x2", "x1"]


def test_weight_three_rank_two():
    assert names(Hl.hall_basis(2, 3)) == ["[[x1,x2],x2]", "[[x1,x2],x1]"]


def test_weight_two_rank_three():
    basis = Hl.hall_basis(3, 2)
    assert len(basis) == 3
    assert all(isinstance(b.left, Hl.Generator) and b.left.index < b.right.index for b in basis)


def test_c3_description():
    # weight 3: [[x_i,x_j],x_k] with i < j and k <= j
    for d in range(1, 5):
        want = {f"[[x{i},x{j}],x{k}]" for i in range(1, d + 1) for j in range(i + 1, d + 1) for k in range(1, j + 1)}
        assert set(names(Hl.hall_basis(d, 3))) == want


@pytest.mark.parametrize("d, n, want", [(2, 6, 9), (1, 2, 0), (1, 7, 0), (3, 3, 8)])
def test_counts(d, n, want):
    assert Hl.hall_count(d, n) == want


@pytest.mark.parametrize("d", range(1, 5))
def test_count_equals_witt(d):
    for n in range(1, 13):
        assert Hl.hall_count(d, n) == Hl.witt_number(d, n)


def test_count_beyond_enumeration_limit():
    assert Hl.hall_count(2, 20) == Hl.witt_number(2, 20)


@pytest.mark.parametrize("d", range(1, 4))
def test_basis_sorted_and_admissible(d):
    for n in range(1, 8):
        basis = Hl.hall_basis(d, n)
        keys = [Hl.sort_key(c) for c in basis]
        assert keys == sorted(keys) and len(set(keys)) == len(keys)
        assert all(Hl.is_hall(c) and c.weight == n for c in basis)
        assert len(basis) == Hl.hall_count(d, n)


def test_non_hall_terms_rejected():
    x1, x2 = Hl.Generator(1), Hl.Generator(2)
    assert not Hl.is_hall(Hl.Bracket(x2, x1))
    assert not Hl.is_hall(Hl.Bracket(x1, x1))
    # [[x1,x2],x3]: x3 < x2 violates c2 >= c4
    assert not Hl.is_hall(Hl.Bracket(Hl.Bracket(x1, x2), Hl.Generator(3)))


def test_zassenhaus_basis_examples():
    b = Hl.zassenhaus_basis(2, 2, 2)
    assert [Hl.format_power(c, e) for c, e in b] == ["x2^2", "x1^2", "[x1,x2]"]
    assert len(Hl.zassenhaus_basis(2, 2, 4)) == 6
    assert [e for _, e in Hl.zassenhaus_basis(2, 2, 4)] == [4, 4, 2, 1, 1, 1]
    assert len(Hl.zassenhaus_basis(2, 3, 3)) == 4


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("d", range(1, 4))
def test_zassenhaus_basis_size(d, p):
    for n in range(1, 11):
        assert len(Hl.zassenhaus_basis(d, p, n)) == D.c_closed(F.FreeProP(d), p, n)


def test_contracts():
    with pytest.raises(ContractError):
        Hl.hall_basis(0, 1)
    with pytest.raises(ContractError):
        Hl.zassenhaus_basis(2, 4, 2)
