from fractions import Fraction
from itertools import product

import pytest

from mhnumbers.partitions import (
    Partition,
    c,
    c_AB,
    c_prime,
    c_prime_AB,
    conjugate,
    dominance_leq,
    enumerate_partitions,
    hook_product,
    j,
    j_AB,
    lex_cmp,
    z,
    z_qt,
)
from mhnumbers.qtfield import ONE, eta_limit, q, substitute_eta, t

PARTITION_NUMBERS = [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_enumerate_counts():
    for d, n in enumerate(PARTITION_NUMBERS):
        assert len(enumerate_partitions(d)) == n


def test_enumerate_order():
    assert enumerate_partitions(0) == (Partition(()),)
    assert [tuple(p) for p in enumerate_partitions(4)] == [
        (4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1),
    ]


def test_parse_and_str():
    assert Partition.parse("3,1,1") == Partition((3, 1, 1))
    assert Partition.parse("") == Partition(())
    assert str(Partition((2, 2, 1))) == "2,2,1"
    for bad in ("1,2", "3,,1", "a", "2,0"):
        with pytest.raises(ValueError):
            Partition.parse(bad)


def test_conjugate():
    assert conjugate((3, 1)) == Partition((2, 1, 1))
    for d in range(9):
        for lam in enumerate_partitions(d):
            assert conjugate(conjugate(lam)) == lam


def test_orders():
    assert lex_cmp((3, 1), (2, 2)) == 1
    assert dominance_leq((2, 2), (3, 1))
    assert not dominance_leq((3, 1), (2, 2))
    # lex refines dominance
    for d in range(1, 8):
        for lam, mu in product(enumerate_partitions(d), repeat=2):
            if dominance_leq(lam, mu):
                assert lex_cmp(lam, mu) <= 0
    with pytest.raises(ValueError):
        lex_cmp((2,), (1,))


def test_cells():
    for d in range(1, 9):
        for lam in enumerate_partitions(d):
            conj = conjugate(lam)
            for i, jj in lam.cells():
                assert lam.hook(i, jj) == lam.arm(i, jj) + lam.leg(i, jj) + 1
                assert lam.arm(i, jj) == conj.leg(jj, i)
                assert lam.leg(i, jj) == conj.arm(jj, i)


def test_z_values():
    assert z((2, 1)) == 2
    assert z((1, 1, 1)) == 6
    assert z(()) == 1
    assert z_qt((1,)) == (1 - q) / (1 - t)
    for d in range(1, 7):
        assert z_qt((d,)) == d * (1 - q**d) / (1 - t**d)
    assert z_qt(()) == ONE


def test_z_qt_at_q_equals_t():
    for d in range(1, 7):
        for lam in enumerate_partitions(d):
            assert z_qt(lam).subs_q_eq_t() == z(lam)


def test_j_values():
    assert j((1,)) == (1 - t) * (1 - q)
    assert j((2,)) == (1 - t) * (1 - q * t) * (1 - q) * (1 - q**2)
    assert j((1, 1)) == (1 - t) * (1 - t**2) * (1 - q * t) * (1 - q)
    assert j(()) == ONE
    for lam in enumerate_partitions(4):
        assert j(lam) == c(lam) * c_prime(lam)


def test_ab_values():
    assert c_AB((1,), 1, 1) == 1
    assert c_AB((2,), 1, 2) == 3
    for d in range(1, 7):
        for lam in enumerate_partitions(d):
            assert j_AB(lam, 1, 1) == hook_product(lam) ** 2


def test_ab_cell_products_match_limits():
    for d in range(1, 6):
        for lam in enumerate_partitions(d):
            for A, B in product((1, 2, 3), repeat=2):
                via_limit = eta_limit(substitute_eta(j(lam), A, B), 2 * d)
                assert j_AB(lam, A, B) == via_limit
                assert isinstance(c_prime_AB(lam, A, B), Fraction)
