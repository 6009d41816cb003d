"""Finite groupoids: validation, transformation groupoids, pullback structure.

A finite groupoid is stored with explicit source/target/composition tables
and validated exhaustively.  `compose(g, h)` is "h then g" and is defined
exactly when d(g) = r(h).  The central constructions: canonical sections onto
orbit representatives, the pullback of the isotropy bundle along the
orbit-representative map together with an exhaustively verified isomorphism,
a linking bimodule witnessing the equivalence with the bundle, the piecewise
version over an invariant filtration, the block profile of the groupoid
algebra, and the regular representation rank test at a base object.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .exact import Matrix, rank_kernel


class AxiomError(ValueError):
    """A groupoid/group/action table violates an axiom; args carry a witness."""


class NotInvariant(ValueError):
    """A subset of objects is not closed under the morphisms."""


# ---------------------------------------------------------------------------
# finite groups


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Finite group with explicit element list and callable operations."""

    name: str
    elements: tuple
    op: object  # callable (a, b) -> ab
    inv: object  # callable a -> a^{-1}
    identity: object

    @property
    def order(self) -> int:
        return len(self.elements)

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        if n < 1:
            raise ValueError("cyclic group needs n >= 1")
        return FiniteGroup(
            f"C{n}",
            tuple(range(n)),
            lambda a, b: (a + b) % n,
            lambda a: (-a) % n,
            0,
        )

    @staticmethod
    def symmetric(n: int) -> "FiniteGroup":
        if n < 1:
            raise ValueError("symmetric group needs n >= 1")
        elements = tuple(sorted(itertools.permutations(range(n))))
        return FiniteGroup(
            f"S{n}",
            elements,
            lambda p, q: tuple(p[q[i]] for i in range(n)),
            lambda p: tuple(sorted(range(n), key=lambda i: p[i])),
            tuple(range(n)),
        )

    @staticmethod
    def from_permutations(generators, n: int, name: str = "perm") -> "FiniteGroup":
        """Subgroup of the symmetric group generated by the given permutations."""
        identity = tuple(range(n))
        compose = lambda p, q: tuple(p[q[i]] for i in range(n))
        gens = [tuple(g) for g in generators]
        for g in gens:
            if sorted(g) != list(range(n)):
                raise AxiomError("generator is not a permutation", g)
        closure = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = compose(g, a)
                    if b not in closure:
                        closure.add(b)
                        nxt.append(b)
            frontier = nxt
        return FiniteGroup(
            name,
            tuple(sorted(closure)),
            compose,
            lambda p: tuple(sorted(range(n), key=lambda i: p[i])),
            identity,
        )

    def conjugacy_class_count(self) -> int:
        seen = set()
        count = 0
        for a in self.elements:
            if a in seen:
                continue
            count += 1
            for h in self.elements:
                seen.add(self.op(self.op(h, a), self.inv(h)))
        return count

    def is_abelian(self) -> bool:
        return all(
            self.op(a, b) == self.op(b, a)
            for a in self.elements
            for b in self.elements
        )


def validate_group(G: FiniteGroup) -> None:
    """Exhaustive closure/associativity/identity/inverse check."""
    elems = set(G.elements)
    if G.identity not in elems:
        raise AxiomError("identity not an element", G.identity)
    for a in G.elements:
        if G.op(G.identity, a) != a or G.op(a, G.identity) != a:
            raise AxiomError("identity law fails", a)
        b = G.inv(a)
        if b not in elems or G.op(a, b) != G.identity or G.op(b, a) != G.identity:
            raise AxiomError("inverse law fails", a)
        for c in G.elements:
            if G.op(a, c) not in elems:
                raise AxiomError("not closed", (a, c))
    for a in G.elements:
        for b in G.elements:
            for c in G.elements:
                if G.op(G.op(a, b), c) != G.op(a, G.op(b, c)):
                    raise AxiomError("associativity fails", (a, b, c))


# ---------------------------------------------------------------------------
# group actions


@dataclass(frozen=True, eq=False)
class FiniteGroupAction:
    group: FiniteGroup
    points: tuple
    table: dict  # (element, point) -> point

    def act(self, g, x):
        return self.table[(g, x)]

    @staticmethod
    def make(group: FiniteGroup, points, act) -> "FiniteGroupAction":
        """Build and validate the action table from a callable or a mapping."""
        points = tuple(points)
        fn = act if callable(act) else lambda g, x: act[(g, x)]
        table = {
            (g, x): fn(g, x) for g in group.elements for x in points
        }
        pointset = set(points)
        for (g, x), y in table.items():
            if y not in pointset:
                raise AxiomError("action leaves the point set", (g, x, y))
        for x in points:
            if table[(group.identity, x)] != x:
                raise AxiomError("identity moves a point", x)
        for g in group.elements:
            for h in group.elements:
                gh = group.op(g, h)
                for x in points:
                    if table[(g, table[(h, x)])] != table[(gh, x)]:
                        raise AxiomError("action is not compatible", (g, h, x))
        return FiniteGroupAction(group, points, table)


# ---------------------------------------------------------------------------
# finite groupoids


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    """Explicit-table groupoid; `compose(g, h)` means "h then g"."""

    objects: tuple
    morphisms: tuple
    source: dict  # d
    target: dict  # r
    composition: dict  # (g, h) -> g o h, defined iff d(g) = r(h)
    identities: dict  # object -> morphism
    inverses: dict  # morphism -> morphism

    def d(self, g):
        return self.source[g]

    def r(self, g):
        return self.target[g]

    def compose(self, g, h):
        return self.composition[(g, h)]

    def can_compose(self, g, h) -> bool:
        return self.source[g] == self.target[h]

    def identity(self, x):
        return self.identities[x]

    def inverse(self, g):
        return self.inverses[g]

    def hom(self, x, y) -> tuple:
        """Morphisms from x to y (d = x, r = y) in input order."""
        return tuple(
            g for g in self.morphisms
            if self.source[g] == x and self.target[g] == y
        )

    def isotropy_elements(self, x) -> tuple:
        return self.hom(x, x)

    def isotropy_group(self, x) -> FiniteGroup:
        elems = self.isotropy_elements(x)
        return FiniteGroup(
            f"iso@{x!r}",
            elems,
            lambda a, b: self.compose(a, b),
            lambda a: self.inverse(a),
            self.identity(x),
        )


def validate_groupoid(G: FiniteGroupoid, triple_cap: int = 2_000_000) -> None:
    """Exhaustive axiom check; AxiomError carries a witness tuple."""
    objs = set(G.objects)
    mors = set(G.morphisms)
    if len(objs) != len(G.objects) or len(mors) != len(G.morphisms):
        raise AxiomError("duplicate object or morphism labels")
    for g in G.morphisms:
        if G.source.get(g) not in objs or G.target.get(g) not in objs:
            raise AxiomError("source/target outside objects", g)
    for x in G.objects:
        e = G.identities.get(x)
        if e not in mors or G.source[e] != x or G.target[e] != x:
            raise AxiomError("bad identity", x)
    for (g, h), k in G.composition.items():
        if g not in mors or h not in mors or k not in mors:
            raise AxiomError("composition table mentions unknown morphism", (g, h))
        if G.source[g] != G.target[h]:
            raise AxiomError("composition defined for non-composable pair", (g, h))
        if G.source[k] != G.source[h] or G.target[k] != G.target[g]:
            raise AxiomError("composite has wrong endpoints", (g, h, k))
    for g in G.morphisms:
        for h in G.morphisms:
            if G.source[g] == G.target[h] and (g, h) not in G.composition:
                raise AxiomError("composable pair missing from table", (g, h))
    for g in G.morphisms:
        e_d, e_r = G.identities[G.source[g]], G.identities[G.target[g]]
        if G.composition[(g, e_d)] != g or G.composition[(e_r, g)] != g:
            raise AxiomError("identity law fails", g)
        ginv = G.inverses.get(g)
        if ginv not in mors:
            raise AxiomError("missing inverse", g)
        if (
            G.composition[(g, ginv)] != e_r
            or G.composition[(ginv, g)] != e_d
        ):
            raise AxiomError("inverse law fails", g)
    by_target: dict = {}
    for h in G.morphisms:
        by_target.setdefault(G.target[h], []).append(h)
    triples = 0
    for g in G.morphisms:
        for h in by_target.get(G.source[g], ()):
            gh = G.composition[(g, h)]
            for k in by_target.get(G.source[h], ()):
                triples += 1
                if triples > triple_cap:
                    raise ValueError("too many composable triples for exhaustive check")
                if G.composition[(gh, k)] != G.composition[(g, G.composition[(h, k)])]:
                    raise AxiomError("associativity fails", (g, h, k))


def transformation_groupoid(A: FiniteGroupAction) -> FiniteGroupoid:
    """Morphisms (g, x): x -> g.x; (g2, g1.x) o (g1, x) = (g2 g1, x)."""
    mors = tuple((g, x) for g in A.group.elements for x in A.points)
    source = {m: m[1] for m in mors}
    target = {m: A.act(m[0], m[1]) for m in mors}
    composition = {}
    for g2, x2 in mors:
        for g1, x1 in mors:
            if x2 == A.act(g1, x1):
                composition[((g2, x2), (g1, x1))] = (A.group.op(g2, g1), x1)
    identities = {x: (A.group.identity, x) for x in A.points}
    inverses = {
        (g, x): (A.group.inv(g), A.act(g, x)) for g, x in mors
    }
    return FiniteGroupoid(
        A.points, mors, source, target, composition, identities, inverses
    )


def pair_groupoid(objects) -> FiniteGroupoid:
    """Exactly one morphism (y, x): x -> y between any two objects."""
    objects = tuple(objects)
    mors = tuple((y, x) for y in objects for x in objects)
    source = {m: m[1] for m in mors}
    target = {m: m[0] for m in mors}
    composition = {
        ((z, y), (w, x)): (z, x)
        for (z, y) in mors
        for (w, x) in mors
        if y == w
    }
    identities = {x: (x, x) for x in objects}
    inverses = {(y, x): (x, y) for (y, x) in mors}
    return FiniteGroupoid(objects, mors, source, target, composition, identities, inverses)


def group_bundle(groups: dict, objects) -> FiniteGroupoid:
    """Disjoint union of groups sitting over the given objects (d = r)."""
    objects = tuple(objects)
    mors = tuple((x, a) for x in objects for a in groups[x].elements)
    source = {m: m[0] for m in mors}
    target = {m: m[0] for m in mors}
    composition = {
        ((x, a), (y, b)): (x, groups[x].op(a, b))
        for (x, a) in mors
        for (y, b) in mors
        if x == y
    }
    identities = {x: (x, groups[x].identity) for x in objects}
    inverses = {(x, a): (x, groups[x].inv(a)) for (x, a) in mors}
    return FiniteGroupoid(objects, mors, source, target, composition, identities, inverses)


# ---------------------------------------------------------------------------
# orbits, reductions, classification


@dataclass(frozen=True)
class OrbitReport:
    representatives: tuple  # least object of each orbit, in object input order
    orbits: tuple  # tuple of object tuples, aligned with representatives
    representative_of: tuple  # (object, representative) pairs
    isotropy_orders: tuple


def orbits_isotropy(G: FiniteGroupoid) -> OrbitReport:
    order = {x: i for i, x in enumerate(G.objects)}
    parent = {x: x for x in G.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in G.morphisms:
        a, b = find(G.source[g]), find(G.target[g])
        if a != b:
            if order[a] < order[b]:
                parent[b] = a
            else:
                parent[a] = b
    groups: dict = {}
    for x in G.objects:
        groups.setdefault(find(x), []).append(x)
    reps = sorted(groups, key=order.get)
    orbits = tuple(tuple(groups[rep]) for rep in reps)
    rep_of = tuple((x, find(x)) for x in G.objects)
    iso_orders = tuple(len(G.isotropy_elements(rep)) for rep in reps)
    return OrbitReport(tuple(reps), orbits, rep_of, iso_orders)


def reduce_invariant(G: FiniteGroupoid, subset) -> FiniteGroupoid:
    """Full subgroupoid over an invariant object subset."""
    subset_list = tuple(x for x in G.objects if x in set(subset))
    sub = set(subset_list)
    for g in G.morphisms:
        if (G.source[g] in sub) != (G.target[g] in sub):
            raise NotInvariant("subset is not invariant", g, G.source[g], G.target[g])
    mors = tuple(g for g in G.morphisms if G.source[g] in sub)
    morset = set(mors)
    return FiniteGroupoid(
        subset_list,
        mors,
        {g: G.source[g] for g in mors},
        {g: G.target[g] for g in mors},
        {
            (g, h): k
            for (g, h), k in G.composition.items()
            if g in morset and h in morset
        },
        {x: G.identities[x] for x in subset_list},
        {g: G.inverses[g] for g in mors},
    )


@dataclass(frozen=True)
class Classification:
    is_group_bundle: bool  # every morphism fixes its object
    is_transitive: bool  # a single orbit
    is_pair: bool  # exactly one morphism between any two objects
    is_principal: bool  # transitive with trivial isotropy
    orbit_count: int


def classify(G: FiniteGroupoid) -> Classification:
    rep = orbits_isotropy(G)
    bundle = all(G.source[g] == G.target[g] for g in G.morphisms)
    transitive = len(rep.representatives) == 1
    pair = all(
        len(G.hom(x, y)) == 1 for x in G.objects for y in G.objects
    )
    principal = transitive and all(n == 1 for n in rep.isotropy_orders)
    return Classification(bundle, transitive, pair, principal, len(rep.representatives))


# ---------------------------------------------------------------------------
# canonical sections, pullback isomorphism


def canonical_sections(G: FiniteGroupoid):
    """(representative map theta, section sigma) with sigma(x): x -> theta(x).

    sigma(x) is the first morphism in input order from x to its orbit
    representative; on representatives the identity is chosen.
    """
    rep_of = dict(orbits_isotropy(G).representative_of)
    sigma = {}
    for x in G.objects:
        rep = rep_of[x]
        if x == rep:
            sigma[x] = G.identity(x)
        else:
            arrows = G.hom(x, rep)
            if not arrows:
                raise AxiomError("no morphism from object to its representative", x)
            sigma[x] = arrows[0]
    return rep_of, sigma


def build_pullback(G: FiniteGroupoid):
    """Pullback of the isotropy bundle along the representative map.

    Objects are those of G; a morphism (x, h, y): y -> x carries an isotropy
    element h at the shared representative of x and y.
    """
    theta, _ = canonical_sections(G)
    iso_elems = {rep: G.isotropy_elements(rep) for rep in set(theta.values())}
    mors = tuple(
        (x, h, y)
        for x in G.objects
        for y in G.objects
        if theta[x] == theta[y]
        for h in iso_elems[theta[x]]
    )
    source = {m: m[2] for m in mors}
    target = {m: m[0] for m in mors}
    composition = {}
    for x, h, y in mors:
        for y2, k, z in mors:
            if y == y2:
                composition[((x, h, y), (y2, k, z))] = (x, G.compose(h, k), z)
    identities = {x: (x, G.identity(theta[x]), x) for x in G.objects}
    inverses = {(x, h, y): (y, G.inverse(h), x) for (x, h, y) in mors}
    return FiniteGroupoid(
        G.objects, mors, source, target, composition, identities, inverses
    )


@dataclass(frozen=True)
class PullbackReport:
    ok: bool
    morphism_count: int
    pullback_count: int
    bijective: bool
    functorial: bool
    identities_match: bool
    inverses_match: bool
    round_trip: bool
    failure: tuple = ()


def pullback_isomorphism_verify(G: FiniteGroupoid) -> PullbackReport:
    """Exhaustively verify G ~ pullback of its isotropy bundle.

    Phi(g) = (r(g), sigma(r(g)) o g o sigma(d(g))^{-1}, d(g)) and the inverse
    map is (x, h, y) -> sigma(x)^{-1} o h o sigma(y); both directions, the
    functor law, identities, and inverses are checked on every morphism.
    """
    theta, sigma = canonical_sections(G)
    P = build_pullback(G)

    def phi(g):
        a = G.compose(sigma[G.target[g]], g)
        h = G.compose(a, G.inverse(sigma[G.source[g]]))
        return (G.target[g], h, G.source[g])

    def phi_inv(m):
        x, h, y = m
        return G.compose(G.inverse(sigma[x]), G.compose(h, sigma[y]))

    images = [phi(g) for g in G.morphisms]
    image_set = set(images)
    bijective = (
        len(image_set) == len(G.morphisms) and image_set == set(P.morphisms)
    )
    failure = ()
    functorial = True
    for g in G.morphisms:
        for h in G.morphisms:
            if G.can_compose(g, h):
                lhs = phi(G.compose(g, h))
                rhs = P.compose(phi(g), phi(h))
                if lhs != rhs:
                    functorial = False
                    failure = ("functor", g, h)
                    break
        if not functorial:
            break
    identities_match = all(
        phi(G.identity(x)) == P.identity(x) for x in G.objects
    )
    inverses_match = all(
        phi(G.inverse(g)) == P.inverse(phi(g)) for g in G.morphisms
    )
    round_trip = all(phi_inv(phi(g)) == g for g in G.morphisms) and all(
        phi(phi_inv(m)) == m for m in P.morphisms
    )
    ok = bijective and functorial and identities_match and inverses_match and round_trip
    return PullbackReport(
        ok,
        len(G.morphisms),
        len(P.morphisms),
        bijective,
        functorial,
        identities_match,
        inverses_match,
        round_trip,
        failure,
    )


# ---------------------------------------------------------------------------
# linking bimodule


@dataclass(frozen=True)
class BimoduleReport:
    ok: bool
    checks: tuple  # (name, bool) pairs
    element_count: int
    failure: tuple = ()


def equivalence_bimodule_verify(G: FiniteGroupoid) -> BimoduleReport:
    """Verify the linking set between G and its isotropy bundle.

    Z is the set of morphisms whose source is an orbit representative.  G
    acts on the left by composition with moment map r; the bundle acts on
    the right at the source representative.  Checked exhaustively:
      1. the two actions commute;
      2. the left moment map r: Z -> objects is surjective;
      3. the right moment map d: Z -> representatives is surjective;
      4. G acts freely and transitively on the fibers of d restricted to
         each orbit (one arrow between any two Z-elements sharing a source);
      5. the bundle acts freely and transitively on the fibers of r.
    """
    theta, _ = canonical_sections(G)
    reps = sorted(set(theta.values()), key=list(G.objects).index)
    Z = tuple(g for g in G.morphisms if G.source[g] in set(reps))
    iso = {rep: G.isotropy_elements(rep) for rep in reps}
    failure = ()

    def check_commute():
        for z in Z:
            for g in G.morphisms:
                if not G.can_compose(g, z):
                    continue
                for b in iso[G.source[z]]:
                    left_then_right = G.compose(G.compose(g, z), b)
                    right_then_left = G.compose(g, G.compose(z, b))
                    if left_then_right != right_then_left:
                        return False, ("commute", g, z, b)
        return True, ()

    def check_left_moment_onto():
        targets = {G.target[z] for z in Z}
        ok = targets == set(G.objects)
        return ok, () if ok else ("left-moment", tuple(set(G.objects) - targets))

    def check_right_moment_onto():
        sources = {G.source[z] for z in Z}
        ok = sources == set(reps)
        return ok, () if ok else ("right-moment", tuple(set(reps) - sources))

    def check_left_free_transitive():
        by_source: dict = {}
        for z in Z:
            by_source.setdefault(G.source[z], []).append(z)
        for zs in by_source.values():
            for z1 in zs:
                for z2 in zs:
                    arrows = [
                        g
                        for g in G.hom(G.target[z1], G.target[z2])
                        if G.compose(g, z1) == z2
                    ]
                    if len(arrows) != 1:
                        return False, ("left-torsor", z1, z2, len(arrows))
        return True, ()

    def check_right_free_transitive():
        by_target: dict = {}
        for z in Z:
            by_target.setdefault(G.target[z], []).append(z)
        for zs in by_target.values():
            for z1 in zs:
                for z2 in zs:
                    if G.source[z1] != G.source[z2]:
                        return False, ("right-torsor-sources", z1, z2)
                    arrows = [
                        b for b in iso[G.source[z1]] if G.compose(z1, b) == z2
                    ]
                    if len(arrows) != 1:
                        return False, ("right-torsor", z1, z2, len(arrows))
        return True, ()

    names = (
        "actions-commute",
        "left-moment-onto",
        "right-moment-onto",
        "left-free-transitive",
        "right-free-transitive",
    )
    funcs = (
        check_commute,
        check_left_moment_onto,
        check_right_moment_onto,
        check_left_free_transitive,
        check_right_free_transitive,
    )
    results = []
    for name, fn in zip(names, funcs):
        ok, wit = fn()
        results.append((name, ok))
        if not ok and not failure:
            failure = wit
    return BimoduleReport(
        all(ok for _, ok in results), tuple(results), len(Z), failure
    )


# ---------------------------------------------------------------------------
# piecewise decomposition


@dataclass(frozen=True)
class PiecewiseReport:
    representatives: tuple
    orbit_sizes: tuple
    ideal_dims: tuple  # morphism counts of the increasing invariant pieces
    layer_pullback_ok: tuple  # pullback verification per single-orbit layer
    total_morphisms: int


def piecewise_decompose(G: FiniteGroupoid) -> PiecewiseReport:
    """Filter by unions of orbits; each layer is transitive, hence a pullback.

    The increasing invariant subsets give a chain of ideals in the groupoid
    algebra whose dimensions are the morphism counts reported here.
    """
    rep = orbits_isotropy(G)
    ideal_dims = []
    layer_ok = []
    cumulative: list = []
    for orbit in rep.orbits:
        cumulative.extend(orbit)
        piece = reduce_invariant(G, cumulative)
        ideal_dims.append(len(piece.morphisms))
        layer = reduce_invariant(G, orbit)
        layer_ok.append(pullback_isomorphism_verify(layer).ok)
    return PiecewiseReport(
        rep.representatives,
        tuple(len(o) for o in rep.orbits),
        tuple(ideal_dims),
        tuple(layer_ok),
        len(G.morphisms),
    )


# ---------------------------------------------------------------------------
# algebra profile and the regular representation


@dataclass(frozen=True)
class AlgebraProfile:
    blocks: tuple  # (representative, orbit_size, isotropy_order, block_dim, irrep_count)
    total_dim: int
    matches_morphism_count: bool
    dual_total: int  # number of matrix blocks of the groupoid algebra


def algebra_profile(G: FiniteGroupoid) -> AlgebraProfile:
    """Per-orbit block data: |orbit|^2 * |isotropy| sums to |morphisms|."""
    rep = orbits_isotropy(G)
    blocks = []
    total = 0
    dual = 0
    for r, orbit in zip(rep.representatives, rep.orbits):
        iso = G.isotropy_group(r)
        block_dim = len(orbit) ** 2 * iso.order
        irreps = iso.conjugacy_class_count()
        blocks.append((r, len(orbit), iso.order, block_dim, irreps))
        total += block_dim
        dual += irreps
    return AlgebraProfile(
        tuple(blocks), total, total == len(G.morphisms), dual
    )


@dataclass(frozen=True)
class RegularRepReport:
    base_object: object
    faithful: bool
    rank: int
    morphism_count: int
    orbit_covers_objects: bool


def regular_representation_faithful(G: FiniteGroupoid, x) -> RegularRepReport:
    """Left regular representation at x: faithful iff the orbit of x is everything.

    Each morphism g becomes a 0/1 matrix on the arrows out of x (a(g)[u, v] = 1
    iff u = g o v); the representation of the groupoid algebra is faithful
    exactly when these matrices are linearly independent, which is decided by
    an exact rank computation and cross-checked against orbit coverage.
    """
    arrows = [g for g in G.morphisms if G.source[g] == x]
    index = {a: i for i, a in enumerate(arrows)}
    n = len(arrows)
    rows = []
    for g in G.morphisms:
        flat = [Fraction(0)] * (n * n)
        for v in arrows:
            if G.can_compose(g, v):
                u = G.compose(g, v)
                flat[index[u] * n + index[v]] = Fraction(1)
        rows.append(flat)
    if rows and any(any(v != 0 for v in row) for row in rows):
        rank, _ = rank_kernel(Matrix(rows))
    else:
        rank = 0
    faithful = rank == len(G.morphisms)
    orbit = {G.target[g] for g in G.morphisms if G.source[g] == x} | {x}
    covers = orbit == set(G.objects)
    if faithful != covers:
        raise AssertionError(
            "regular representation rank disagrees with orbit coverage"
        )
    return RegularRepReport(x, faithful, rank, len(G.morphisms), covers)


# ---------------------------------------------------------------------------
# random instances


def random_permutation_group(rng: random.Random, max_points: int = 6,
                             max_order: int = 8) -> FiniteGroup:
    """Small subgroup of a symmetric group from random generators."""
    for _ in range(200):
        n = rng.randint(2, max_points)
        gens = []
        for _ in range(rng.randint(1, 2)):
            p = list(range(n))
            rng.shuffle(p)
            gens.append(tuple(p))
        group = FiniteGroup.from_permutations(gens, n, name=f"rand{n}")
        if group.order <= max_order:
            return group
    return FiniteGroup.cyclic(rng.randint(2, 4))


def random_transformation_groupoid(rng: random.Random) -> FiniteGroupoid:
    """Transformation groupoid of a random permutation group action.

    The group permutes its natural points plus a few fixed points, so both
    transitive and multi-orbit shapes occur.
    """
    group = random_permutation_group(rng)
    n = len(group.identity) if isinstance(group.identity, tuple) else 0
    extra = rng.randint(0, 2)
    if n:
        points = list(range(n + extra))
        act = lambda g, x: g[x] if x < n else x
    else:
        m = group.order
        points = list(range(m + extra))
        act = lambda g, x: (x + g) % m if x < m else x
    action = FiniteGroupAction.make(group, points, act)
    return transformation_groupoid(action)


# ---------------------------------------------------------------------------
# JSON serialization


def _element_to_json(e):
    return list(e) if isinstance(e, tuple) else e


def group_to_json(G: FiniteGroup) -> dict:
    if G.name.startswith("C") and G.name[1:].isdigit():
        return {"family": "cyclic", "n": int(G.name[1:])}
    if G.name.startswith("S") and G.name[1:].isdigit():
        return {"family": "symmetric", "n": int(G.name[1:])}
    n = len(G.identity)
    gens = [list(e) for e in G.elements]
    return {"family": "permutations", "n": n, "generators": gens}


def group_from_json(data: dict) -> FiniteGroup:
    family = data["family"]
    if family == "cyclic":
        return FiniteGroup.cyclic(data["n"])
    if family == "symmetric":
        return FiniteGroup.symmetric(data["n"])
    if family == "permutations":
        return FiniteGroup.from_permutations(data["generators"], data["n"])
    raise ValueError(f"unknown group family {family!r}")


def action_to_json(A: FiniteGroupAction) -> dict:
    pt_index = {x: i for i, x in enumerate(A.points)}
    table = [
        [pt_index[A.act(g, x)] for x in A.points] for g in A.group.elements
    ]
    return {
        "kind": "group_action",
        "group": group_to_json(A.group),
        "points": list(A.points),
        "table": table,
    }


def action_from_json(data: dict) -> FiniteGroupAction:
    if data.get("kind") != "group_action":
        raise ValueError("not a group action document")
    group = group_from_json(data["group"])
    points = [tuple(p) if isinstance(p, list) else p for p in data["points"]]
    table = data["table"]
    if len(table) != group.order or any(len(row) != len(points) for row in table):
        raise AxiomError("action table has wrong shape")
    lookup = {
        (g, points[xi]): points[yi]
        for gi, g in enumerate(group.elements)
        for xi, yi in enumerate(table[gi])
    }
    action = FiniteGroupAction(group, tuple(points), lookup)
    # revalidate through the factory to reject invalid tables
    return FiniteGroupAction.make(group, points, lambda g, x: lookup[(g, x)])


def groupoid_to_json(G: FiniteGroupoid) -> dict:
    mor_index = {m: i for i, m in enumerate(G.morphisms)}
    obj_index = {x: i for i, x in enumerate(G.objects)}
    return {
        "kind": "groupoid",
        "objects": [_element_to_json(x) for x in G.objects],
        "morphism_count": len(G.morphisms),
        "source": [obj_index[G.source[m]] for m in G.morphisms],
        "target": [obj_index[G.target[m]] for m in G.morphisms],
        "composition": [
            [mor_index[g], mor_index[h], mor_index[k]]
            for (g, h), k in sorted(
                G.composition.items(),
                key=lambda kv: (mor_index[kv[0][0]], mor_index[kv[0][1]]),
            )
        ],
        "identities": [mor_index[G.identities[x]] for x in G.objects],
        "inverses": [mor_index[G.inverses[m]] for m in G.morphisms],
    }


def groupoid_from_json(data: dict) -> FiniteGroupoid:
    if data.get("kind") != "groupoid":
        raise ValueError("not a groupoid document")
    objects = tuple(tuple(x) if isinstance(x, list) else x for x in data["objects"])
    count = data["morphism_count"]
    mors = tuple(range(count))
    source = {m: objects[data["source"][m]] for m in mors}
    target = {m: objects[data["target"][m]] for m in mors}
    composition = {(g, h): k for g, h, k in data["composition"]}
    identities = {
        objects[i]: data["identities"][i] for i in range(len(objects))
    }
    inverses = {m: data["inverses"][m] for m in mors}
    G = FiniteGroupoid(objects, mors, source, target, composition, identities, inverses)
    validate_groupoid(G)
    return G
