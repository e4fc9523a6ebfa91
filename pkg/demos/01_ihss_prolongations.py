"""Symmetries of rank-one cones and their first prolongations.

For each cone in the zoo we compute aut, the Lie algebra of linear maps
tangent to the cone, and its first prolongation.  For the VMRT cones of the
irreducible Hermitian symmetric spaces the prolongation has exactly the
dimension of the space itself; for the symplectic Grassmannian VMRT it does
not fill the ambient space.
"""

from __future__ import annotations

from vmrtkit.aut import prolong_k_report
from vmrtkit.zoo import ihss_vmrt_zoo, parse_variety


def main() -> None:
    print(f"{'cone':<12} {'N':>3} {'dim aut':>8} {'aut^(1)':>8} {'aut^(2)':>8}  field")
    for X in ihss_vmrt_zoo():
        kmax = 2 if X.N <= 10 else 1
        rep = prolong_k_report(X, kmax)
        second = rep.dims[2] if kmax == 2 else "-"
        field = "Q" if rep.certified else "F_p x 2"
        print(f"{X.name:<12} {X.N:>3} {rep.dims[0]:>8} {rep.dims[1]:>8} {second:>8}  {field}")

    print("\nThe symplectic Grassmannian VMRT prolongs only to Sym^2 W:")
    for spec in ("sympl:2,1", "sympl:2,2", "sympl:3,1"):
        X = parse_variety(spec)
        rep = prolong_k_report(X, 1)
        print(f"  {spec:<10} ambient {X.N:>2}, aut^(1) {rep.dims[1]}")


if __name__ == "__main__":
    main()
