"""Gallery of hypothesis checks over the nonlinearity families.

Shows the sampled structural checks holding and failing:
  * the gradient-system growth condition with its sharp alpha threshold,
  * the initial-data energy conditions under Neumann vs Robin walls,
  * the polynomial growth conditions used by the lower bound,
  * the case classifier for the cooperative absorption system.
"""

import numpy as np

from rdblowup.geometry import DomainSpec, build_mesh
from rdblowup.nonlinearity import (
    check_A2prime,
    check_H1,
    check_H2_H3,
    classify_absorption,
    make_absorption,
    make_power_product,
)


def show(rep):
    state = "holds" if rep.holds else "FAILS"
    line = f"  {rep.hypothesis}: {state}, margin {rep.margin:+.3e}"
    if not rep.holds and rep.witness is not None:
        line += f", witness {rep.witness}"
    print(line)


def main():
    nl = make_power_product(1.0, 2.0, 3.0)
    print("F = u^2 v^3, growth condition at the alpha threshold 3/2:")
    show(check_H1(nl, 1.5))
    show(check_H1(nl, 1.6))

    spec = DomainSpec("box", 2, half_extents=(1.0, 1.0))
    mesh = build_mesh(spec, 32)
    g = np.full(mesh.n_cells, 1.0)
    print("\ninitial-data energy conditions, g = 1 on [-1,1]^2:")
    print(" Neumann (gamma = 0):")
    for rep in check_H2_H3(nl, g, g, mesh, 0.0, 0.0):
        show(rep)
    print(" Robin (gamma = 5): the boundary drain wins")
    for rep in check_H2_H3(nl, g, g, mesh, 5.0, 5.0):
        show(rep)

    print("\npolynomial growth condition for the lower bound (p = 2):")
    nl22 = make_power_product(1.0, 2.0, 2.0)
    print(" F = u^2 v^2 with k = 2:")
    show(check_A2prime(nl22, 2.0, 2.0, 2.0))
    print(" F = u^2 v^3 with k = 2 (degree too high):")
    show(check_A2prime(nl, 2.0, 2.0, 2.0))

    print("\nabsorption system classifier (f1 = v^p - a u^r, f2 = u^q - b v^s):")
    for args in [(3, 3, 2, 2, 1.0, 1.0),
                 (2, 2, 3, 3, 1.0, 1.0),
                 (3, 3, 3, 3, 0.01, 0.01),
                 (3, 3, 3, 3, 2.0, 2.0)]:
        print(f"  (p,q,r,s,a,b) = {args}: {classify_absorption(*args)}")

    print("\nA2' for the absorption example (3,3,3,3, a=b=0.01), k = 1:")
    show(check_A2prime(make_absorption(3, 3, 3, 3, 0.01, 0.01), 1.0, 1.0, 2.0))


if __name__ == "__main__":
    main()
