"""Cartesian products and the two candidate lower bounds.

For factor graphs G and H the laboratory checks, exactly:

    gamma_t2(G x H) >= ceil(gamma_t2(G) * gamma_t2(H) / 3)      (always held)
    gamma_t2(G x H) >= rho(G) * gamma_t2(H)                     (falsifiable!)

The second, packing-based bound FAILS on a five-edge instance: the product
of the 4-path with a single edge.  The witness below is small enough to
check by hand; the lone member over the left half of the packing partition
has its distance-2 partner across the boundary, which is exactly the case a
slab-by-slab counting argument cannot see.
"""

from fractions import Fraction
from math import ceil

from semitotal import cartesian_product, generate, lexleast_min_semitotal_set, solve_bnb


def show_pair(lf, ln, rf, rn):
    g, h = generate(lf, ln), generate(rf, rn)
    kg = solve_bnb(g, "gamma_t2").value
    kh = solve_bnb(h, "gamma_t2").value
    rho = solve_bnb(g, "rho").value
    prod = cartesian_product(g, h)
    kp = solve_bnb(prod.graph, "gamma_t2").value
    third = ceil(kg * kh / 3)
    packing = rho * kh
    ratio = Fraction(kp, kg * kh)
    flag1 = "ok " if kp >= third else "VIOLATED"
    flag2 = "ok " if kp >= packing else "VIOLATED"
    print(
        f"{lf}:{ln} x {rf}:{rn}   gamma_t2={kp:<3} third-bound={third:<3}{flag1} "
        f"packing-bound={packing:<3}{flag2} ratio={ratio}"
    )
    return prod, kp


def main():
    for pair in [
        ("path", 2, "path", 2),
        ("path", 3, "cycle", 6),
        ("cycle", 6, "cycle", 6),
        ("star", 5, "path", 4),
        ("complete", 4, "complete", 4),
    ]:
        show_pair(*pair)

    print()
    print("the packing-based bound fails here:")
    prod, kp = show_pair("path", 4, "path", 2)
    witness = lexleast_min_semitotal_set(prod.graph)
    coords = [prod.decode(v) for v in witness.vertices()]
    print(f"  minimum set of size {kp}: {coords}  (as (g,h) coordinates)")
    print("  rho(path:4) = 2 via the end vertices {0,3}, gamma_t2(path:2) = 2,")
    print("  so the bound demands 4; three vertices suffice, check it by hand.")


if __name__ == "__main__":
    main()
