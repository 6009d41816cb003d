"""Oracles for groupoid axioms, pullback isomorphisms, and bimodule checks.

Reference values, computed by hand from the action tables:
- sign flip of Z/2 on {-1, 0, 1}: 6 morphisms, orbits {-1, 1} and {0} with
  isotropy orders 1 and 2, algebra blocks 4 + 2, ideal chain (4, 6);
- Z/4 on {0, 1} by parity shift: one orbit, isotropy {0, 2} of order 2,
  single block of dimension 2^2 * 2 = 8, two dual classes;
- S3 on {0, 1, 2}: 18 morphisms, one orbit, isotropy of order 2.
"""
import random

import pytest

from liegrpd.catalog import (
    negation_action,
    negation_groupoid,
    s3_natural_action,
    s3_natural_groupoid,
    z4_parity_action,
    z4_parity_groupoid,
)
from liegrpd.groupoids import (
    AxiomError,
    FiniteGroup,
    FiniteGroupAction,
    FiniteGroupoid,
    NotInvariant,
    action_from_json,
    action_to_json,
    algebra_profile,
    build_pullback,
    canonical_sections,
    classify,
    equivalence_bimodule_verify,
    group_bundle,
    groupoid_from_json,
    groupoid_to_json,
    orbits_isotropy,
    pair_groupoid,
    piecewise_decompose,
    pullback_isomorphism_verify,
    random_transformation_groupoid,
    reduce_invariant,
    regular_representation_faithful,
    transformation_groupoid,
    validate_group,
    validate_groupoid,
)


class TestGroups:
    def test_cyclic(self):
        G = FiniteGroup.cyclic(6)
        validate_group(G)
        assert G.order == 6 and G.op(4, 5) == 3 and G.inv(2) == 4
        assert G.is_abelian() and G.conjugacy_class_count() == 6

    def test_symmetric(self):
        G = FiniteGroup.symmetric(3)
        validate_group(G)
        assert G.order == 6
        assert not G.is_abelian()
        assert G.conjugacy_class_count() == 3  # id, transpositions, 3-cycles
        a, b = (1, 0, 2), (0, 2, 1)
        assert G.op(a, b) == (1, 2, 0)  # apply b first, then a

    def test_from_permutations_closure(self):
        G = FiniteGroup.from_permutations([(1, 2, 0)], 3)
        validate_group(G)
        assert G.order == 3

    def test_bad_generator(self):
        with pytest.raises(AxiomError):
            FiniteGroup.from_permutations([(0, 0, 1)], 3)


class TestActions:
    def test_validated_construction(self):
        A = negation_action()
        assert A.act(1, -1) == 1 and A.act(1, 0) == 0 and A.act(0, 1) == 1

    def test_incompatible_action_rejected(self):
        G = FiniteGroup.cyclic(4)
        # x -> x + g mod 3 is not an action of C4 on {0,1,2}: 4 !~ 0 mod 3
        with pytest.raises(AxiomError):
            FiniteGroupAction.make(G, (0, 1, 2), lambda g, x: (x + g) % 3)

    def test_identity_must_fix(self):
        G = FiniteGroup.cyclic(2)
        with pytest.raises(AxiomError):
            FiniteGroupAction.make(G, (0, 1), lambda g, x: 1 - x)


class TestGroupoidConstruction:
    def test_negation_counts(self):
        G = negation_groupoid()
        assert G.objects == (-1, 0, 1)
        assert len(G.morphisms) == 6
        validate_groupoid(G)

    def test_z4_counts(self):
        G = z4_parity_groupoid()
        assert len(G.morphisms) == 8
        validate_groupoid(G)

    def test_s3_counts(self):
        G = s3_natural_groupoid()
        assert len(G.morphisms) == 18
        validate_groupoid(G)

    def test_composition_convention(self):
        # (g2, g1.x) o (g1, x) = (g2 g1, x): apply the right factor first
        G = z4_parity_groupoid()
        first, second = (1, 0), (1, 1)  # 0 -> 1 -> 0
        assert G.can_compose(second, first)
        assert G.compose(second, first) == (2, 0)

    def test_pair_groupoid(self):
        P = pair_groupoid(("a", "b", "c"))
        validate_groupoid(P)
        assert len(P.morphisms) == 9
        c = classify(P)
        assert c.is_pair and c.is_transitive and c.is_principal
        assert not c.is_group_bundle

    def test_group_bundle(self):
        B = group_bundle(
            {"x": FiniteGroup.cyclic(2), "y": FiniteGroup.cyclic(3)}, ("x", "y")
        )
        validate_groupoid(B)
        assert len(B.morphisms) == 5
        c = classify(B)
        assert c.is_group_bundle and not c.is_transitive and c.orbit_count == 2

    def test_tampered_composition_caught(self):
        G = negation_groupoid()
        bad = dict(G.composition)
        key = next(iter(bad))
        # replace one entry by a morphism with the wrong endpoints
        other = next(m for m in G.morphisms if G.source[m] != G.source[bad[key]])
        bad[key] = other
        broken = FiniteGroupoid(
            G.objects, G.morphisms, G.source, G.target, bad,
            G.identities, G.inverses,
        )
        with pytest.raises(AxiomError):
            validate_groupoid(broken)


class TestOrbitsAndReduction:
    def test_negation_orbits(self):
        rep = orbits_isotropy(negation_groupoid())
        assert rep.representatives == (-1, 0)
        assert rep.orbits == ((-1, 1), (0,))
        assert rep.isotropy_orders == (1, 2)

    def test_transitive_cases(self):
        for G, iso in [(z4_parity_groupoid(), 2), (s3_natural_groupoid(), 2)]:
            rep = orbits_isotropy(G)
            assert len(rep.representatives) == 1
            assert rep.isotropy_orders == (iso,)

    def test_reduce_invariant(self):
        G = negation_groupoid()
        R = reduce_invariant(G, {-1, 1})
        validate_groupoid(R)
        assert len(R.morphisms) == 4
        assert classify(R).is_pair  # free transitive Z/2 on two points

    def test_reduce_non_invariant_rejected(self):
        G = negation_groupoid()
        with pytest.raises(NotInvariant):
            reduce_invariant(G, {-1, 0})

    def test_classification_flags(self):
        c = classify(negation_groupoid())
        assert not c.is_group_bundle and not c.is_transitive
        assert not c.is_pair and not c.is_principal and c.orbit_count == 2
        c = classify(z4_parity_groupoid())
        assert c.is_transitive and not c.is_principal and not c.is_pair


class TestPullback:
    def test_sections_negation(self):
        G = negation_groupoid()
        theta, sigma = canonical_sections(G)
        assert theta == {-1: -1, 1: -1, 0: 0}
        assert sigma[-1] == G.identity(-1)
        assert sigma[1] == (1, 1)  # the flip 1 -> -1

    def test_pullback_counts_match_profile(self):
        for G in (negation_groupoid(), z4_parity_groupoid(), s3_natural_groupoid()):
            P = build_pullback(G)
            validate_groupoid(P)
            assert len(P.morphisms) == len(G.morphisms)

    def test_isomorphism_reports(self):
        for G in (
            negation_groupoid(),
            z4_parity_groupoid(),
            s3_natural_groupoid(),
            pair_groupoid((0, 1, 2, 3)),
        ):
            rep = pullback_isomorphism_verify(G)
            assert rep.ok, rep
            assert rep.bijective and rep.functorial and rep.round_trip
            assert rep.morphism_count == rep.pullback_count

    def test_bundle_is_its_own_pullback(self):
        B = group_bundle(
            {0: FiniteGroup.cyclic(3), 1: FiniteGroup.cyclic(2)}, (0, 1)
        )
        rep = pullback_isomorphism_verify(B)
        assert rep.ok


class TestBimodule:
    def test_reports(self):
        # |Z| = sum over orbits of |orbit| * |isotropy|
        for G, z_count in [
            (negation_groupoid(), 4),
            (z4_parity_groupoid(), 4),
            (s3_natural_groupoid(), 6),
        ]:
            rep = equivalence_bimodule_verify(G)
            assert rep.ok, rep
            assert dict(rep.checks) == {
                "actions-commute": True,
                "left-moment-onto": True,
                "right-moment-onto": True,
                "left-free-transitive": True,
                "right-free-transitive": True,
            }
            assert rep.element_count == z_count

    def test_z_size_formula(self):
        # Z collects arrows out of the representatives: sum |orbit| * |iso|
        G = negation_groupoid()
        rep = equivalence_bimodule_verify(G)
        orbs = orbits_isotropy(G)
        expected = sum(
            len(o) * n for o, n in zip(orbs.orbits, orbs.isotropy_orders)
        )
        assert rep.element_count == expected


class TestPiecewise:
    def test_negation_ideal_chain(self):
        rep = piecewise_decompose(negation_groupoid())
        assert rep.representatives == (-1, 0)
        assert rep.orbit_sizes == (2, 1)
        assert rep.ideal_dims == (4, 6)
        assert rep.layer_pullback_ok == (True, True)
        assert rep.total_morphisms == 6

    def test_transitive_single_layer(self):
        rep = piecewise_decompose(s3_natural_groupoid())
        assert rep.ideal_dims == (18,)
        assert rep.layer_pullback_ok == (True,)


class TestAlgebraProfile:
    def test_negation(self):
        p = algebra_profile(negation_groupoid())
        assert p.blocks == ((-1, 2, 1, 4, 1), (0, 1, 2, 2, 2))
        assert p.total_dim == 6 and p.matches_morphism_count
        assert p.dual_total == 3

    def test_z4_parity(self):
        p = algebra_profile(z4_parity_groupoid())
        assert p.blocks == ((0, 2, 2, 8, 2),)
        assert p.total_dim == 8 and p.matches_morphism_count
        assert p.dual_total == 2

    def test_s3(self):
        p = algebra_profile(s3_natural_groupoid())
        assert p.blocks == ((0, 3, 2, 18, 2),)
        assert p.matches_morphism_count

    def test_pair_is_single_full_block(self):
        p = algebra_profile(pair_groupoid((0, 1, 2)))
        assert len(p.blocks) == 1 and p.blocks[0][4] == 1
        assert p.total_dim == 9


class TestRegularRepresentation:
    def test_faithful_iff_orbit_covers(self):
        G = negation_groupoid()
        for x, expect in [(-1, False), (1, False), (0, False)]:
            rep = regular_representation_faithful(G, x)
            assert rep.faithful is expect
            assert rep.orbit_covers_objects is expect

    def test_transitive_always_faithful(self):
        for G in (z4_parity_groupoid(), s3_natural_groupoid(), pair_groupoid((0, 1))):
            for x in G.objects:
                rep = regular_representation_faithful(G, x)
                assert rep.faithful and rep.rank == len(G.morphisms)

    def test_rank_of_unfaithful_case(self):
        rep = regular_representation_faithful(negation_groupoid(), 1)
        # morphisms touching the orbit {-1, 1} act independently; the two
        # arrows fixing 0 act as zero
        assert rep.rank == 4


class TestRandomGroupoids:
    def test_thirty_random_instances(self):
        rng = random.Random(2026)
        for _ in range(30):
            G = random_transformation_groupoid(rng)
            validate_groupoid(G)
            assert pullback_isomorphism_verify(G).ok
            assert equivalence_bimodule_verify(G).ok
            assert algebra_profile(G).matches_morphism_count
            c = classify(G)
            single_full_block = (
                len(algebra_profile(G).blocks) == 1
                and algebra_profile(G).blocks[0][4] == 1
            )
            assert single_full_block == c.is_pair


class TestJson:
    def test_action_round_trip(self):
        for make in (negation_action, z4_parity_action, s3_natural_action):
            A = make()
            doc = action_to_json(A)
            B = action_from_json(doc)
            assert B.points == A.points
            assert B.table == A.table

    def test_action_rejects_bad_table(self):
        doc = action_to_json(z4_parity_action())
        doc["table"][1] = [0, 0]  # g=1 would merge the two points
        with pytest.raises(AxiomError):
            action_from_json(doc)

    def test_groupoid_round_trip(self):
        G = negation_groupoid()
        doc = groupoid_to_json(G)
        H = groupoid_from_json(doc)
        assert len(H.morphisms) == 6
        assert algebra_profile(H).blocks == ((-1, 2, 1, 4, 1), (0, 1, 2, 2, 2))
        assert pullback_isomorphism_verify(H).ok

    def test_wrong_kind_rejected(self):
        with pytest.raises(ValueError):
            action_from_json({"kind": "groupoid"})
        with pytest.raises(ValueError):
            groupoid_from_json({"kind": "group_action"})
