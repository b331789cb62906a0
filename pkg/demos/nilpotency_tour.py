"""Local nilpotency of f d/dx and the two-slot coefficient recurrence.

Run: python3 demos/nilpotency_tour.py
"""

from __future__ import annotations

from mzlab import Poly, UnivariateDerivation, coeff_table, is_ln_derivation, orbit


def main() -> None:
    for p, coeffs in ((3, [0, 0, 1]), (3, [0, 0, 0, 0, 1]), (5, [1, 0, 1]), (2, [1, 0, 1, 1])):
        f = Poly(p, coeffs)
        v = is_ln_derivation(f)
        extra = f" index {v.index}" if v.index is not None else ""
        cert = f" certificate {v.certificate.kind}" if v.certificate is not None else ""
        print(f"p={p} f={coeffs}: {v.status.value}{extra}{cert} [{v.citation}]")

    print("\norbit of x under (1 + x^2) d/dx at p = 5:")
    for k, g in enumerate(orbit(UnivariateDerivation(Poly(5, [1, 0, 1])), Poly.x(5), 5)):
        print(f"  D^{k}(x) = {g.to_list()}")

    print("\ncoefficients of D^(k+1)(x) for f = x + x^7 at p = 5 (slots 1 and 2):")
    print(coeff_table(5, 1, 2, 1, 1, 5).to_csv(), end="")


if __name__ == "__main__":
    main()
