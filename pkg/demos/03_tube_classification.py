"""Which homogeneous spaces carry an equalized C*-action with isolated Euler source and sink?

For every cominuscule marking up to rank 7 and every simple cocharacter we
list the torus-fixed points of G/P with their tangent weights.  The markings
that admit such an action are exactly those fixed by the opposition
involution, i.e. the tube-type ones.
"""

from __future__ import annotations

from vmrtkit.roots import (Cocharacter, Marking, bb_poset, build, classify_action,
                           equalized_extremal_markings, tube_family)


def main() -> None:
    for r in equalized_extremal_markings(7):
        print(f"  {r.kind}{r.rank}/P{r.node:<2} {tube_family(r.kind, r.rank, r.node):<10} betas {r.betas}")

    print("\nThe Cayley plane E6/P1 is Hermitian symmetric but not of tube type:")
    mk = Marking(build("E", 6), 1)
    for beta in range(1, 7):
        cl = classify_action(mk, beta)
        print(f"  beta {beta}: equalized {cl.equalized}, sources {len(cl.euler_sources)}, "
              f"sinks {len(cl.euler_sinks)}")

    print("\nOn E7/P7 the source has a unique successor whose points have one negative weight:")
    res = bb_poset(Marking(build("E", 7), 7), Cocharacter.sigma(7, 7))
    print(f"  ok {res.ok}, successor size {len(res.components[res.successor])}, v^- {set(res.v_minus)}")


if __name__ == "__main__":
    main()
