from fractions import Fraction
from itertools import permutations, product
from math import factorial

import pytest

from mhnumbers.macdonald import (
    MacdonaldTable,
    character_MN,
    classical_dim,
    coeff_a,
    dim_q_equals_t_expected,
    dim_qt,
    integral_J,
    jack_J,
    jack_limit,
    macdonald_P,
    macdonald_table,
    schur_check,
)
from mhnumbers.partitions import (
    Partition,
    dominance_leq,
    enumerate_partitions,
    hook_product_qt,
    j,
    z_qt,
)
from mhnumbers.qtfield import ONE, ZERO, q, t
from mhnumbers.symfun import SymFunD, inner_qt, monomial, power_sum

P11, P2 = Partition((1, 1)), Partition((2,))


def test_degree_one():
    assert macdonald_P((1,)) == monomial((1,))
    assert macdonald_P((1,)) == power_sum((1,))
    assert integral_J((1,)) == power_sum((1,), 1 - t)
    assert coeff_a((1,), (1,)) == 1 - t


def test_degree_two_values():
    half = ONE / 2
    J2 = SymFunD(2, "p", {P11: half * (1 + q) * (1 - t) ** 2, P2: half * (1 - q) * (1 - t**2)})
    J11 = SymFunD(2, "p", {P11: half * (1 - t) * (1 - t**2), P2: -half * (1 - t) * (1 - t**2)})
    assert integral_J((2,)) == J2
    assert integral_J((1, 1)) == J11
    assert coeff_a((2,), (2,)) == half * (1 - q) * (1 - t**2)
    assert dim_qt((1, 1)) == half * (1 - t) * (1 - t**2)


def test_weight_mismatch():
    with pytest.raises(ValueError):
        coeff_a((2,), (1,))
    with pytest.raises(ValueError):
        character_MN((2,), (1,))


@pytest.mark.parametrize("d", range(1, 6))
def test_P_is_unitriangular_in_dominance(d):
    for lam in enumerate_partitions(d):
        P = macdonald_P(lam)
        assert P[lam] == ONE
        for mu, v in P.coeffs.items():
            assert dominance_leq(mu, lam), f"m_{mu} appears in P_{lam}"
        for mu in enumerate_partitions(d):
            if mu < lam:
                assert inner_qt(P, monomial(mu)) == ZERO


@pytest.mark.parametrize("d", range(1, 6))
def test_P_pairwise_orthogonal(d):
    parts = enumerate_partitions(d)
    for lam, mu in product(parts, repeat=2):
        if lam != mu:
            assert inner_qt(macdonald_P(lam), macdonald_P(mu)) == ZERO


@pytest.mark.parametrize("d", range(1, 7))
def test_orthogonality_lemmas(d):
    tab = macdonald_table(d)
    parts = tab.partitions
    for lam, mu in product(parts, repeat=2):
        want = j(lam) if lam == mu else ZERO
        assert inner_qt(tab.J_in_p[lam], tab.J_in_p[mu]) == want
        assert sum((tab.a[lam][x] * z_qt(x) * tab.a[mu][x] for x in parts), ZERO) == want
    for x, y in product(parts, repeat=2):
        s = sum((tab.a[lam][x] * tab.a[lam][y] / j(lam) for lam in parts), ZERO)
        assert s == (ONE / z_qt(x) if x == y else ZERO)


# --- characters -----------------------------------------------------------


def _cycle_type(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i not in seen:
            n, k = 0, i
            while k not in seen:
                seen.add(k)
                k = perm[k]
                n += 1
            out.append(n)
    return Partition(out)


def test_character_by_regular_representation_s3():
    # χ_λ(e) = dim and Σ dim² = |S_3|
    assert character_MN((2, 1), (1, 1, 1)) == 2
    dims = [character_MN(lam, (1, 1, 1)) for lam in enumerate_partitions(3)]
    assert sum(x * x for x in dims) == 6


@pytest.mark.parametrize("d", range(1, 7))
def test_character_oracles(d):
    parts = enumerate_partitions(d)
    for dl in parts:
        assert character_MN((d,), dl) == 1
        assert character_MN((1,) * d, dl) == (-1) ** (d - len(dl))
    # column orthogonality against class sizes counted by brute force
    if d <= 5:
        sizes = {}
        for perm in permutations(range(d)):
            ct = _cycle_type(perm)
            sizes[ct] = sizes.get(ct, 0) + 1
        for lam, mu in product(parts, repeat=2):
            s = sum(sizes[x] * character_MN(lam, x) * character_MN(mu, x) for x in parts)
            assert s == (factorial(d) if lam == mu else 0)


def test_schur_small():
    assert schur_check((1,)) == power_sum((1,))
    assert schur_check((2,)) == SymFunD(2, "p", {P11: ONE / 2, P2: ONE / 2})


@pytest.mark.parametrize("d", range(1, 7))
def test_J_at_q_equals_t_is_scaled_schur(d):
    for lam in enumerate_partitions(d):
        s = schur_check(lam)
        for dl in enumerate_partitions(d):
            assert coeff_a(lam, dl).subs_q_eq_t() == (hook_product_qt(lam) * s[dl]).subs_q_eq_t()
        assert dim_qt(lam).subs_q_eq_t() == dim_q_equals_t_expected(lam)
        assert classical_dim(lam) == character_MN(lam, (1,) * d)


def test_dim_never_zero():
    for d in range(1, 7):
        for lam in enumerate_partitions(d):
            assert dim_qt(lam)


# --- Jack side ------------------------------------------------------------


@pytest.mark.parametrize("A,B", [(1, 1), (1, 2), (2, 1), (2, 3)])
def test_jack_degree_two(A, B):
    alpha = Fraction(B, A)
    assert jack_limit((2,), A, B) == {P11: 1, P2: alpha}
    assert jack_limit((1, 1), A, B) == {P11: 1, P2: -1}
    raw = jack_limit((2,), A, B, raw=True)
    assert raw[P11] == A**2


def test_jack_at_alpha_one_is_hook_times_schur():
    for d in range(1, 5):
        for lam in enumerate_partitions(d):
            J = jack_J(lam, 1)
            hooks = 1
            for _, _, h in lam.cell_data():
                hooks *= h
            for dl, v in schur_check(lam).coeffs.items():
                assert J.get(dl, 0) == hooks * v.to_fraction()


@pytest.mark.parametrize("A,B", [(1, 1), (1, 2), (2, 1), (2, 3)])
def test_jack_limits_match_gram_schmidt(A, B):
    for d in range(1, 5):
        for lam in enumerate_partitions(d):
            assert jack_limit(lam, A, B) == jack_J(lam, Fraction(B, A))


# --- serialization --------------------------------------------------------


def test_table_json_round_trip():
    tab = macdonald_table(3)
    back = MacdonaldTable.from_json(tab.to_json())
    assert back.a == tab.a
    assert back.dim == tab.dim
    assert back.to_json() == tab.to_json()
