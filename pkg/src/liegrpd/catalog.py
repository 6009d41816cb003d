"""Named small algebras, modules and groupoids used by tests and demos."""
from __future__ import annotations

from fractions import Fraction as Q

from .exact import Matrix, gaussian
from .lie import LieAlgebra, LieModule, from_brackets, make_module, realify, semidirect_sum


def heisenberg() -> LieAlgebra:
    """3-dim nilpotent algebra [Y1, Y2] = Y3."""
    return from_brackets(3, {(0, 1): {2: 1}})


def axb() -> LieAlgebra:
    """2-dim solvable algebra [Y1, Y2] = Y2 (affine line)."""
    return from_brackets(2, {(0, 1): {1: 1}})


def euclid2() -> LieAlgebra:
    """Euclidean motions of the plane: [A, X] = Y, [A, Y] = -X."""
    return from_brackets(3, {(0, 1): {2: 1}, (0, 2): {1: -1}}, basis=("A", "X", "Y"))


def filiform4() -> LieAlgebra:
    """4-dim filiform nilpotent algebra [Y1,Y2] = Y3, [Y1,Y3] = Y4."""
    return from_brackets(4, {(0, 1): {2: 1}, (0, 2): {3: 1}})


def abelian(n: int) -> LieAlgebra:
    return from_brackets(n, {})


def complex_borel() -> LieAlgebra:
    """Borel of sl(2) over the Gaussian rationals: [H, E] = 2E."""
    return from_brackets(2, {(0, 1): {1: 2}}, basis=("H", "E"), field="Qi")


def realified_borel() -> LieAlgebra:
    """The 4-dim real solvable algebra underlying the complex Borel."""
    return realify(complex_borel())


def complex_heisenberg() -> LieAlgebra:
    return from_brackets(3, {(0, 1): {2: 1}}, field="Qi")


def realified_heisenberg() -> LieAlgebra:
    return realify(complex_heisenberg())


def irrational_spectrum_algebra() -> LieAlgebra:
    """Rank-one extension of an abelian plane whose weights are 1 +- sqrt(2).

    The exact spectrum search cannot split the characteristic polynomial over
    the Gaussian rationals, forcing the float fallback.
    """
    return from_brackets(3, {(0, 1): {1: 1, 2: 1}, (0, 2): {1: 2, 2: 1}})


def axb_tautological_module() -> LieModule:
    """The affine line acting on the plane by traceless 2x2 matrices."""
    L = axb()
    a1 = Matrix([[Q(1, 2), 0], [0, Q(-1, 2)]])
    a2 = Matrix([[0, 1], [0, 0]])
    return make_module(L, [a1, a2])


def axb_semidirect_plane() -> LieAlgebra:
    """4-dim solvable semidirect sum of the affine line with its plane module."""
    return semidirect_sum(axb(), axb_tautological_module())


LIE_CATALOG = {
    "heisenberg": heisenberg,
    "axb": axb,
    "e2": euclid2,
    "filiform4": filiform4,
    "complex_borel": complex_borel,
    "realified_borel": realified_borel,
    "axb_semidirect_plane": axb_semidirect_plane,
}


# ---------------------------------------------------------------------------
# groupoid corpus (constructors live in groupoids.py; imported lazily to keep
# the Lie-only import path light)


def negation_action():
    """Z/2 acting on {-1, 0, 1} by negation."""
    from .groupoids import FiniteGroup, FiniteGroupAction

    group = FiniteGroup.cyclic(2)
    act = {}
    for g in group.elements:
        for x in (-1, 0, 1):
            act[(g, x)] = -x if g == 1 else x
    return FiniteGroupAction.make(group, (-1, 0, 1), act)


def z4_parity_action():
    """Z/4 acting on {0, 1} through its parity quotient."""
    from .groupoids import FiniteGroup, FiniteGroupAction

    group = FiniteGroup.cyclic(4)
    act = {(g, x): (x + g) % 2 for g in group.elements for x in (0, 1)}
    return FiniteGroupAction.make(group, (0, 1), act)


def s3_natural_action():
    """S3 acting on {0, 1, 2} by permutations."""
    from .groupoids import FiniteGroup, FiniteGroupAction

    group = FiniteGroup.symmetric(3)
    act = {(g, x): g[x] for g in group.elements for x in (0, 1, 2)}
    return FiniteGroupAction.make(group, (0, 1, 2), act)


def negation_groupoid():
    from .groupoids import transformation_groupoid

    return transformation_groupoid(negation_action())


def z4_parity_groupoid():
    from .groupoids import transformation_groupoid

    return transformation_groupoid(z4_parity_action())


def s3_natural_groupoid():
    from .groupoids import transformation_groupoid

    return transformation_groupoid(s3_natural_action())


GROUPOID_CATALOG = {
    "negation_groupoid": negation_groupoid,
    "z4_parity": z4_parity_groupoid,
    "s3_natural": s3_natural_groupoid,
}
