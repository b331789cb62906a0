"""Which monomials lie in the image of I - phi for phi = x + c.

Prints the residue-row table next to exact membership. The table rule is
exact below degree p^2; from there on, further monomials enter the image.

Run: python3 demos/translation_tables.py
"""

from __future__ import annotations

from mzlab import Poly, ederivation_monomial_table, translation_sum_certificate
from mzlab.cli import render_monomial_table
from mzlab.span import translation_member


def main() -> None:
    for p in (3, 5):
        T = ederivation_monomial_table(1, p * p + p, p)
        print(render_monomial_table(T))
        exact = [n for n in range(p * p + p + 1) if translation_member(1, Poly.monomial(p, n))]
        extra = sorted(set(exact) - set(T.members()))
        print(f"exact members: {exact}")
        print(f"members the table misses: {extra}\n")

    print("translation sums, certifying x^(p-1) outside the image:")
    for p in (2, 3, 5, 7):
        print(f"  p={p}: " + ", ".join(
            f"c={c} -> {translation_sum_certificate(c, p).to_list()}" for c in range(1, p)))


if __name__ == "__main__":
    main()
