"""Verdicts for images of f d/dx, and the oracle that checks them.

Run: python3 demos/image_verdicts.py
"""

from __future__ import annotations

from mzlab import (IdealSpec, Poly, ProbeConfig, UnivariateDerivation, classify_ideal_derivation,
                   classify_image_derivation, image_span, radical_probe, verify_witness)


def show(p: int, coeffs: list[int]) -> None:
    f = Poly(p, coeffs)
    v = classify_image_derivation(f)
    print(f"p={p} f={f.to_list()}: {v.decision.value} [{v.citation}] {v.notes}")
    if v.witness is not None:
        res = verify_witness(UnivariateDerivation(f), None, v.witness)
        print(f"    witness a={v.witness.a.to_list()} b={v.witness.b.to_list()} -> "
              f"{res.to_dict()['status']}")


def main() -> None:
    print("-- single slot: the residue of the exponent decides")
    show(3, [0, 1])
    show(3, [0, 0, 1])
    show(5, [0, 0, 0, 0, 0, 0, 1])

    print("\n-- several slots: cartier(f^(p-1)) decides, not the slot count")
    show(2, [1, 1, 1])
    show(3, [1, 1, 1])  # (x - 1)^2 spreads over three slots

    print("\n-- a radical probe over a truncated image")
    S = image_span(UnivariateDerivation(Poly(2, [0, 0, 1])), None, 20)
    rep = radical_probe(S, ProbeConfig(2, 20, 1))
    print(f"p=2 f=x^2: candidates {[g.to_list() for g in rep.candidates]} "
          f"after scanning {rep.scanned}")

    print("\n-- images of ideals")
    f = Poly.monomial(5, 3)
    for gen in ([1, 0, 1], [1, 0, 0, 1], [1, 1]):
        ideal = IdealSpec(Poly(5, gen))
        v = classify_ideal_derivation(f, ideal)
        ok = verify_witness(UnivariateDerivation(f), ideal, v.witness).verified \
            if v.witness else None
        print(f"p=5 f=x^3 u={gen}: {v.decision.value} [{v.citation}] witness ok: {ok}")


if __name__ == "__main__":
    main()
