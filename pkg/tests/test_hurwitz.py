from fractions import Fraction
from itertools import permutations, product
from math import factorial

import pytest

from mhnumbers.hurwitz import (
    character_sum,
    classical_hurwitz,
    cutting_sides,
    disconnected_components,
    exponential_relation,
    genus_from_profile,
    mh,
    mh_disconnected,
    verify_cutting,
    verify_genus_reduction,
)
from mhnumbers.partitions import enumerate_partitions
from mhnumbers.qtfield import ZERO, q, serialize, t

GEOM = (1 - t) / (1 - q)


def test_genus_from_profile():
    assert genus_from_profile(0, 1, ((1,), (1,))) == 0
    assert genus_from_profile(0, 2, ((2,),)) is None
    for d in range(1, 6):
        ones = (1,) * d
        assert genus_from_profile(0, d, (ones, ones, ones)) == 1 - d


def test_closed_forms():
    assert mh(0, 1, ((1,), (1,))).value == GEOM
    assert mh(0, 1, ((1,),)).value == GEOM
    for d in range(1, 7):
        assert mh(0, d, ((d,), (d,))).value == (1 - t**d) / (d * (1 - q**d))


def test_result_fields():
    res = mh(0, 2, ((2,),))
    assert (res.value, res.genus, res.constraint_ok) == (ZERO, None, False)
    res = mh(0, 2, ((1, 1), (1, 1)), require_nonneg_genus=True)
    assert res.genus == -1 and res.value == ZERO and res.constraint_ok
    assert mh(0, 2, ((1, 1), (1, 1))).value != ZERO
    assert mh(0, 0, ()).value == ZERO
    assert mh(0, 1, ((1,), (1,))).to_json() == {
        "value": serialize(GEOM), "genus": 0, "constraint_ok": True,
    }


def test_bad_profile_weight():
    with pytest.raises(ValueError):
        mh(0, 3, ((2,),))


def test_parity_failure_is_not_zero_for_bare_sum():
    # the bare λ-sum survives where the genus relation has no integer solution
    profs = ((2,), (2,), (2,))
    assert mh(0, 2, profs).value == ZERO
    assert character_sum(0, 2, profs) != ZERO
    assert character_sum(0, 2, profs).subs_q_eq_t() == ZERO
    assert character_sum(0, 2, ((2,),)) == ZERO


def test_symmetry_under_permutation():
    profs = ((2, 1), (3,), (1, 1, 1), (2, 1))
    want = mh(1, 3, profs).value
    for perm in set(permutations(profs)):
        assert mh(1, 3, perm).value == want


def test_identity_points_drop_out():
    for d in range(1, 5):
        ones = (1,) * d
        for p in enumerate_partitions(d):
            assert character_sum(0, d, (p, ones)) == character_sum(0, d, (p,))


@pytest.mark.parametrize("d", range(1, 5))
def test_q_equals_t_is_classical(d):
    parts = enumerate_partitions(d)
    for h in (0, 1):
        for k in (1, 2, 3):
            for profs in product(parts, repeat=k):
                v = mh(h, d, profs).value.subs_q_eq_t()
                assert v.is_constant()
                assert v.to_fraction() == classical_hurwitz(h, d, profs)


def test_classical_hurwitz_counts_s3():
    # (1/3!) #{(σ1, σ2, σ3) 3-cycles with σ1 σ2 σ3 = e}
    threecycles = [(1, 2, 0), (2, 0, 1)]

    def mul(a, b):
        return tuple(a[b[i]] for i in range(3))

    count = sum(1 for x, y, z in product(threecycles, repeat=3) if mul(mul(x, y), z) == (0, 1, 2))
    assert classical_hurwitz(0, 3, ((3,), (3,), (3,))) == Fraction(count, 6)


# --- identities ----------------------------------------------------------


def test_genus_reduction_examples():
    assert verify_genus_reduction(1, 2, ())
    assert verify_genus_reduction(2, 2, ())
    assert verify_genus_reduction(1, 3, ((2, 1),))
    with pytest.raises(ValueError):
        verify_genus_reduction(0, 2, ())


@pytest.mark.parametrize("d", range(1, 5))
def test_genus_reduction_sweep(d):
    parts = enumerate_partitions(d)
    for h in (1, 2):
        for m in range(3):
            for profs in product(parts, repeat=m):
                assert verify_genus_reduction(h, d, profs)
                assert verify_genus_reduction(h, d, profs, parity_gate=False)


def test_cutting_examples():
    lhs, rhs = cutting_sides(0, 0, 2, ((2,), (2,)), 1)
    assert lhs == rhs == (1 - t**2) / (2 * (1 - q**2))
    assert verify_cutting(0, 0, 3, ((2, 1), (3,), (2, 1)), 2)
    assert verify_cutting(0, 0, 2, ((1, 1), (2,), (2,)), 1)
    with pytest.raises(ValueError):
        verify_cutting(0, 0, 2, ((2,), (2,)), 2)


@pytest.mark.parametrize("d", range(1, 5))
def test_cutting_three_points(d):
    for profs in product(enumerate_partitions(d), repeat=3):
        for split in (1, 2):
            assert verify_cutting(0, 0, d, profs, split)
            assert verify_cutting(0, 0, d, profs, split, parity_gate=False)


def test_cutting_with_higher_genus_halves():
    for h1, h2 in ((1, 0), (0, 1), (1, 1)):
        for profs in product(enumerate_partitions(3), repeat=2):
            assert verify_cutting(h1, h2, 3, profs, 1, parity_gate=False)


def test_gated_cutting_breaks_with_four_points():
    # the gate drops the odd-parity intermediate terms that the bare sum keeps
    profs = ((2,),) * 4
    assert not verify_cutting(0, 0, 2, profs, 2)
    assert verify_cutting(0, 0, 2, profs, 2, parity_gate=False)


# --- disconnected --------------------------------------------------------


@pytest.mark.parametrize("d", range(1, 5))
def test_example_all_simple_points(d):
    assert mh_disconnected(0, d, ((1,) * d,), 1 - d) == GEOM**d / factorial(d)


def test_disconnected_degree_two_hand_count():
    # connected g=-1 is excluded; only two degree-1 spheres remain
    assert mh_disconnected(0, 2, ((1, 1), (1, 1)), -1) == GEOM**2 / 2
    comps = list(disconnected_components(2, ((1, 1), (1, 1))))
    assert len(comps) == 2


def test_single_component_reproduces_connected():
    for d in range(1, 4):
        for profs in product(enumerate_partitions(d), repeat=2):
            res = mh(0, d, profs, require_nonneg_genus=True)
            if res.constraint_ok:
                assert mh_disconnected(0, d, profs, res.genus, max_components=1) == res.value


def test_exponential_relation_reports_pairs():
    rep = exponential_relation(0, 2, 1)
    assert rep
    for key, (lhs, rhs) in rep.items():
        assert lhs == rhs, key
    with pytest.raises(ValueError):
        exponential_relation(0, 2, 0)
