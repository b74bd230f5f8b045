"""The closed-form hom* and torsion rules next to their brute-force grid computations."""
from tamcalc.barcode import Barcode, bar, tau_vanishes
from tamcalc.homstar import hom_star
from tamcalc.oracle import oracle_hom_star, tau_is_zero
from tamcalc.oracle.suites import SUITES

pairs = [
    (bar(0, 1), bar(0, 1)),
    (bar(0, 1), bar(2, 3)),
    (bar(0, "inf"), bar(2, 3)),
    (bar(0, "inf"), bar(3, "inf")),
]
for x, y in pairs:
    F, G = Barcode([x]), Barcode([y])
    closed, grid = hom_star(F, G).barcode, oracle_hom_star(F, G)
    print(f"hom*({x}, {y})")
    print(f"    closed form: {closed}")
    print(f"    grid oracle: {grid}   agree: {closed == grid}")

print()
for b in (bar(0, 2), bar(0, 2, lo_open=True, hi_open=False), bar(0, 2, hi_open=False),
          bar(0, "inf")):
    F = Barcode([b])
    row = [(c, tau_vanishes(F, c), tau_is_zero(F, c)) for c in (0, 1, 2, 3)]
    print(f"tau_c on {b}: " + ", ".join(f"c={c}: {'0' if r else 'nonzero'}"
                                        + ("" if r == o else " (oracle disagrees)")
                                        for c, r, o in row))

print()
for name, suite in SUITES.items():
    print(suite(10, seed=1).summary())
