"""Stratification of coadjoint space and module orbit layers.

For a nilpotent algebra a full flag of ideals is built by refining the
ascending central series deterministically (standard basis vectors in
descending index order), every intermediate space between consecutive central
terms being automatically an ideal.  Each functional gets a jump set: the
flag steps not absorbed by its isotropy.  The size of the jump set always
equals the rank of the skew form, and the generic jump set is the unique
minimum in the index order.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .coadjoint import bform, isotropy_algebra
from .exact import Matrix, rank_kernel
from .lie import LieAlgebra, LieModule, Subspace, ad_matrix, structure_series


def _residual_matrix(space: Subspace, dim: int) -> Matrix:
    """Linear map whose kernel is exactly `space` (reduction mod its rows)."""
    cols = []
    for k in range(dim):
        v = [Fraction(1) if j == k else Fraction(0) for j in range(dim)]
        for row in space.rows:
            pivot = next(i for i, x in enumerate(row) if x != 0)
            if v[pivot] != 0:
                c = v[pivot] / row[pivot]
                v = [a - c * b for a, b in zip(v, row)]
        cols.append(v)
    return Matrix([[cols[k][j] for k in range(dim)] for j in range(dim)])


def ascending_central_series(L: LieAlgebra) -> tuple:
    """0 = z_0 < z_1 < ... terminating; reaches the whole algebra iff nilpotent."""
    m = L.dim
    ads = [ad_matrix(L, L.basis_vector(i)) for i in range(m)]
    chain = [Subspace.zero(m)]
    while True:
        res = _residual_matrix(chain[-1], m)
        stacked = []
        for a in ads:
            prod = res @ a
            stacked.extend(prod.data)
        _, kernel = rank_kernel(Matrix(stacked))
        nxt = Subspace.from_vectors(m, kernel)
        if nxt.dim == chain[-1].dim:
            return tuple(chain)
        chain.append(nxt)
        if nxt.dim == m:
            return tuple(chain)


def _is_ideal(L: LieAlgebra, s: Subspace) -> bool:
    for i in range(L.dim):
        for v in s.rows:
            if not s.contains(L.bracket(L.basis_vector(i), v)):
                return False
    return True


def jordan_holder_flag(L: LieAlgebra) -> tuple:
    """Full flag of ideals 0 = g_0 < g_1 < ... < g_m, one dimension at a time.

    Built by refining the ascending central series; within each central step
    standard basis vectors are inserted in descending index order (falling
    back to the step's own reduced basis rows when the standard vectors do
    not lie in the step).  Only nilpotent algebras admit this construction
    over the rationals in general.
    """
    series = structure_series(L)
    if not series.is_nilpotent:
        raise ValueError("full ideal flags are constructed for nilpotent algebras")
    chain = ascending_central_series(L)
    m = L.dim
    flag = [Subspace.zero(m)]
    for upper in chain[1:]:
        cur = flag[-1]
        candidates = [
            tuple(Fraction(1) if j == idx else Fraction(0) for j in range(m))
            for idx in range(m - 1, -1, -1)
        ] + list(upper.rows)
        for v in candidates:
            if cur.dim == upper.dim:
                break
            if upper.contains(v) and not cur.contains(v):
                cur = Subspace.from_vectors(m, cur.rows + (v,))
                flag.append(cur)
        if cur.dim != upper.dim:
            raise AssertionError("flag refinement failed to reach the next term")
    for sub in flag:
        if not _is_ideal(L, sub):
            raise AssertionError("flag member failed its ideal check")
    return tuple(flag)


def jump_indices(L: LieAlgebra, flag: tuple, xi) -> tuple:
    """1-based flag steps not absorbed by the isotropy of xi.

    j is a jump when g_j is not inside g_{j-1} + g(xi).  The number of jumps
    equals the rank of the skew form at xi.
    """
    iso = isotropy_algebra(L, xi)
    jumps = []
    for j in range(1, len(flag)):
        absorbed = iso.sum(flag[j - 1])
        if not absorbed.contains_subspace(flag[j]):
            jumps.append(j)
    rank, _ = rank_kernel(bform(L, xi))
    if len(jumps) != rank:
        raise AssertionError("jump count disagrees with the skew-form rank")
    return tuple(jumps)


def index_order_leq(e: tuple, f: tuple) -> bool:
    """Partial order on jump sets: smaller sets dominate at earlier indices."""
    if tuple(e) == tuple(f):
        return True
    se, sf = set(e), set(f)
    left = min(se - sf) if se - sf else float("inf")
    right = min(sf - se) if sf - se else float("inf")
    return left <= right


@dataclass(frozen=True)
class CoadjointStratum:
    jump_set: tuple
    rank: int
    sample_count: int
    representative: tuple


@dataclass(frozen=True)
class CoadjointStratification:
    flag_dims: tuple
    strata: tuple  # CoadjointStratum, generic first
    generic_jump_set: tuple
    generic_rank: int
    exhaustive: bool  # True when the integer grid was fully enumerated
    notes: tuple


def _sample_points(dim, grid_radius, extra_samples, seed, bound=9):
    grid_size = (2 * grid_radius + 1) ** dim
    if grid_size <= 4000:
        pts = [
            tuple(Fraction(v) for v in p)
            for p in itertools.product(range(-grid_radius, grid_radius + 1), repeat=dim)
        ]
        return pts, True
    rng = random.Random(seed)
    pts, seen = [], set()
    while len(pts) < extra_samples:
        p = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(dim))
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return pts, False


def coadjoint_stratification(
    L: LieAlgebra, grid_radius: int = 2, samples: int = 400, seed: int = 0
) -> CoadjointStratification:
    """Group sample functionals by jump set and identify the generic stratum.

    When the integer grid is small enough it is enumerated exhaustively and
    the generic set is cross-checked against the index-order minimum; any
    disagreement is a hard error rather than a silent repair.
    """
    flag = jordan_holder_flag(L)
    pts, exhaustive = _sample_points(L.dim, grid_radius, samples, seed)
    buckets: dict = {}
    for p in pts:
        js = jump_indices(L, flag, p)
        if js not in buckets:
            buckets[js] = [0, p]
        buckets[js][0] += 1
    strata = [
        CoadjointStratum(js, len(js), count, rep)
        for js, (count, rep) in buckets.items()
    ]
    strata.sort(key=lambda s: (-s.rank, s.jump_set))
    max_rank = strata[0].rank
    top_sets = [s.jump_set for s in strata if s.rank == max_rank]
    minima = [
        e for e in top_sets if all(index_order_leq(e, f) for f in top_sets)
    ]
    if len(minima) != 1:
        raise AssertionError(
            f"no unique index-order minimum among top jump sets {top_sets}"
        )
    generic = minima[0]
    all_sets = [s.jump_set for s in strata]
    if not all(index_order_leq(generic, f) for f in all_sets):
        raise AssertionError(
            "generic jump set is not an index-order lower bound of the census"
        )
    strata.sort(key=lambda s: (s.jump_set != generic, -s.rank, s.jump_set))
    notes = (
        f"{len(pts)} sample functionals, "
        + ("exhaustive integer grid" if exhaustive else "seeded integer samples"),
    )
    return CoadjointStratification(
        tuple(s.dim for s in flag),
        tuple(strata),
        generic,
        max_rank,
        exhaustive,
        notes,
    )


# ---------------------------------------------------------------------------
# module orbit layers


@dataclass(frozen=True)
class ModuleStratum:
    orbit_dim: int
    isotropy_dim: int
    sample_count: int
    representative: tuple
    isotropy_basis: tuple  # basis of the stabilizer subalgebra at the representative
    open_layer: bool  # top layer whose perturbation probes stay in the layer


@dataclass(frozen=True)
class ModuleStratification:
    algebra_dim: int
    module_dim: int
    generic_dim: int
    strata: tuple  # ModuleStratum, descending orbit dimension
    exhaustive: bool
    notes: tuple


def orbit_tangent_rank(M: LieModule, v) -> int:
    """Dimension of the orbit through v: rank of x -> a(x) v."""
    cols = [M.actions[i].apply(v) for i in range(M.algebra.dim)]
    rank, _ = rank_kernel(Matrix([[c[j] for c in cols] for j in range(M.dim)]))
    return rank


def point_isotropy(M: LieModule, v) -> Subspace:
    """Stabilizer subalgebra {x : a(x) v = 0}; verified closed under bracket."""
    cols = [M.actions[i].apply(v) for i in range(M.algebra.dim)]
    _, kernel = rank_kernel(Matrix([[c[j] for c in cols] for j in range(M.dim)]))
    iso = Subspace.from_vectors(M.algebra.dim, kernel)
    for u in iso.rows:
        for w in iso.rows:
            if not iso.contains(M.algebra.bracket(u, w)):
                raise AssertionError("point stabilizer failed its subalgebra check")
    return iso


def stratify_module(
    M: LieModule, grid_radius: int = 2, samples: int = 400, seed: int = 0
) -> ModuleStratification:
    """Layer module points by orbit dimension with openness probes.

    Each layer representative is perturbed by +/- 1/16 along every coordinate;
    rank lower semicontinuity demands the perturbed dimension never drops
    below the layer on a small enough step, and the top layer is flagged open
    when all its probes stay in the layer.
    """
    pts, exhaustive = _sample_points(M.dim, grid_radius, samples, seed)
    buckets: dict = {}
    for p in pts:
        d = orbit_tangent_rank(M, p)
        if d not in buckets:
            buckets[d] = [0, p]
        buckets[d][0] += 1
    eps = Fraction(1, 16)
    strata = []
    generic_dim = max(buckets)
    for d in sorted(buckets, reverse=True):
        count, rep = buckets[d]
        iso = point_isotropy(M, rep)
        probes = []
        for k in range(M.dim):
            for s in (eps, -eps):
                q = tuple(
                    rep[j] + s if j == k else rep[j] for j in range(M.dim)
                )
                probes.append(orbit_tangent_rank(M, q))
        open_layer = d == generic_dim and all(pd == d for pd in probes)
        strata.append(
            ModuleStratum(d, iso.dim, count, rep, iso.rows, open_layer)
        )
    notes = (
        f"{len(pts)} sample points, "
        + ("exhaustive integer grid" if exhaustive else "seeded integer samples"),
    )
    return ModuleStratification(
        M.algebra.dim, M.dim, generic_dim, tuple(strata), exhaustive, notes
    )
