"""Graded models built from symbol systems.

A symbol system such as the minors of a generic matrix gives a graded vector
space V and an embedding of W as f(u) = sum of the forms evaluated at u.  Two
commuting vector groups act on V: one translating the chart and its dual
under the grading-reversing duality.  Their brackets recover the prolongation
of the VMRT cone, whose points are the base locus of the quadratic level.
"""

from __future__ import annotations

import numpy as np

from vmrtkit.aut import aut_from_quadrics, prolong
from vmrtkit.euler import (base_locus, build_model, embed, lambda_image, pair_action, shipped_tube_models,
                           verify_representations, vmrt_variety)
from vmrtkit.linalg import PRIMES
from vmrtkit.zoo import sample_point


def main() -> None:
    M = build_model(shipped_tube_models()[0])
    print(f"{M.symbol.name}: V dims {M.V_dims}, f(1,2,3,4) = {[str(x) for x in embed(M, [1, 2, 3, 4])]}")

    for S in shipped_tube_models():
        M = build_model(S)
        rep = verify_representations(M, seed=0, n_points=5)
        img, ker = lambda_image(M)
        X = vmrt_variety(S)
        if X.N <= 10:
            same = prolong(aut_from_quadrics(X)).basis == img
        else:
            same = prolong(aut_from_quadrics(X, PRIMES[0])).basis == img.reduce_mod(PRIMES[0])
        bl = base_locus(M)
        rng = np.random.default_rng(0)
        inside = sum(bl(sample_point(X, rng)[1]) for _ in range(20))
        n = M.W_dim
        pa = pair_action(M, rng.integers(-3, 4, n).tolist(), rng.integers(-3, 4, n).tolist())
        print(f"  {S.name:<14} identities {rep.ok}, lambda = aut^(1) of {X.name} {same} "
              f"(kernel {ker}), VMRT in base locus {inside}/20, Euler pair {pa.euler}")


if __name__ == "__main__":
    main()
