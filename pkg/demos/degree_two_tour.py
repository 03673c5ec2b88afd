"""A short walk through degree 2: the integral table, a few MH numbers, and
the operator that generates them."""

from mhnumbers import cutjoin as cj
from mhnumbers import hurwitz as hw
from mhnumbers.macdonald import macdonald_table
from mhnumbers.partitions import j
from mhnumbers.qtfield import serialize


def main():
    tab = macdonald_table(2)
    print("a_λ(Δ) in degree 2")
    for lam in tab.partitions:
        for dl in tab.partitions:
            print(f"  λ={lam}  Δ={dl}  {serialize(tab.a[lam][dl])}")
        print(f"  j_{lam} = {serialize(j(lam))}")

    print("\nMH numbers, genus 0")
    for profs in (((2,), (2,)), ((1, 1), (1, 1)), ((2,), (2,), (2,))):
        r = hw.mh(0, 2, profs)
        bare = hw.character_sum(0, 2, profs)
        print(f"  {profs}: gated {serialize(r.value)}   λ-sum {serialize(bare)}")

    print("\nD((2), ħ) on the class basis")
    D = cj.cut_and_join((2,), 2)
    for (row, col), v in sorted(D.entries.items()):
        print(f"  [{row} <- {col}] {v}")


if __name__ == "__main__":
    main()
