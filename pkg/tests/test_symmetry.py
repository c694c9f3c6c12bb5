"""Symmetry counting, colour swaps, signatures, weights.

The extension-based counts are checked against two independent oracles:
exhaustive automorphism search on the explicit 2n-node coloured graph, and
the explicitly generated redrawing group (re-orderings, rotations, point
reflection) acting on sigma.
"""

from fractions import Fraction
from itertools import permutations as iter_permutations
from random import Random

import pytest

from gemsurf import (
    Partition,
    Permutation,
    StandardFormGem,
    are_colour_preserving_isomorphic,
    canonical_representative,
    centralizer_order,
    colour_preserving_signature,
    colour_swap,
    colour_swap_images,
    compute_weight,
    count_colour_preserving_symmetries,
    is_connected,
    isomorphism_signature,
    partitions,
    sample_permutation,
)

from conftest import (
    apply_redrawing,
    brute_force_symmetries,
    closure_class,
    cp_class_of,
    redrawings,
)


def gem(lam_text, sigma_text):
    return StandardFormGem.from_partition(
        Partition.parse(lam_text), Permutation.parse(sigma_text)
    )


def connected_gems(n):
    for parts in partitions(n):
        lam = Partition(parts)
        mu = canonical_representative(lam)
        for images in iter_permutations(range(n)):
            sigma = Permutation(images)
            if is_connected(mu, sigma):
                yield StandardFormGem.from_partition(lam, sigma)


class TestRedrawingGroup:
    def test_order_is_twice_centralizer(self):
        # the group of standard-form redrawings has order exactly 2 |c|
        for n in range(1, 6):
            for parts in partitions(n):
                lam = Partition(parts)
                group = redrawings(lam)
                assert len(group) == 2 * centralizer_order(lam)
                assert len(set(group)) == len(group)

    def test_every_redrawing_preserves_standard_form(self):
        for n in range(1, 6):
            for parts in partitions(n):
                lam = Partition(parts)
                mu = canonical_representative(lam)
                for pi, flip in redrawings(lam):
                    src = mu.inverse() if flip else mu
                    assert src.conjugate(Permutation(pi)) == mu


class TestSymmetryCount:
    def test_known_two_one_example(self):
        assert count_colour_preserving_symmetries(gem("2+1", "(0,2)(1)")) == 2

    def test_torus(self):
        assert count_colour_preserving_symmetries(gem("3", "(0,2,1)")) == 6

    def test_identity_always_counted(self):
        rng = Random(2)
        for _ in range(30):
            n = rng.randint(1, 10)
            parts = rng.choice(list(partitions(n)))
            mu = canonical_representative(Partition(parts))
            sigma = sample_permutation(n, rng)
            if is_connected(mu, sigma):
                g = StandardFormGem.from_partition(Partition(parts), sigma)
                assert count_colour_preserving_symmetries(g) >= 1

    def test_rejects_disconnected(self):
        with pytest.raises(ValueError):
            count_colour_preserving_symmetries(gem("1+1+1", "(0)(1)(2)"))

    def test_against_graph_brute_force_n_le_3(self):
        for n in (1, 2, 3):
            for g in connected_gems(n):
                assert count_colour_preserving_symmetries(g) == (
                    brute_force_symmetries(g.mu, g.sigma)
                )

    def test_against_graph_brute_force_n4_spot(self):
        rng = Random(8)
        gems = list(connected_gems(4))
        for g in rng.sample(gems, 12):
            assert count_colour_preserving_symmetries(g) == (
                brute_force_symmetries(g.mu, g.sigma)
            )

    def test_against_redrawing_oracle(self):
        # |Sym| = number of redrawings fixing sigma
        for n in range(1, 6):
            for g in connected_gems(n):
                fixing = sum(
                    apply_redrawing(pi, flip, g.sigma) == g.sigma
                    for pi, flip in redrawings(g.lam)
                )
                assert count_colour_preserving_symmetries(g) == fixing

    def test_divides_redrawing_group_order(self):
        for n in range(1, 6):
            for g in connected_gems(n):
                s = count_colour_preserving_symmetries(g)
                assert (2 * centralizer_order(g.lam)) % s == 0


class TestColourSwap:
    def test_identity_tau(self):
        g = gem("2+1", "(0,2)(1)")
        assert colour_swap(g, (0, 1, 2)).image == g

    def test_swap_one_two_known_image(self):
        g = gem("2+1", "(0,2)(1)")
        img = colour_swap(g, (1, 0, 2)).image
        assert img == gem("2+1", "(0,1,2)")

    def test_swap_two_three_is_symmetry_here(self):
        g = gem("2+1", "(0,2)(1)")
        assert colour_swap(g, (0, 2, 1)).image == g

    def test_swap_one_three_lands_in_expected_class(self):
        # ((0,1,2),(0,2)(1)) is another standard-form copy of this class;
        # our deterministic relabelling picks (0,1)(2)
        g = gem("2+1", "(0,2)(1)")
        img = colour_swap(g, (2, 1, 0)).image
        assert img == gem("3", "(0,1)(2)")
        other_copy = gem("3", "(0,2)(1)")
        assert colour_preserving_signature(img) == colour_preserving_signature(
            other_copy
        )

    def test_rejects_bad_tau(self):
        with pytest.raises(ValueError):
            colour_swap(gem("1", "(0)"), (0, 1, 1))

    def test_images_are_isomorphic_copies(self):
        # every image must be in the closure class of the source
        rng = Random(4)
        gems = list(connected_gems(4))
        for g in rng.sample(gems, 10):
            cls = closure_class(g, colour_swap_images)
            for img in colour_swap_images(g):
                assert (img.image.lam.parts, img.image.sigma.images) in cls

    def test_symmetry_count_invariant_under_swap(self):
        for n in range(1, 5):
            for g in connected_gems(n):
                s = count_colour_preserving_symmetries(g)
                for img in colour_swap_images(g):
                    assert count_colour_preserving_symmetries(img.image) == s


class TestColourPreservingIsomorphism:
    def test_line_swap_copy(self):
        a = gem("2+1", "(0,2)(1)")
        b = gem("2+1", "(0)(1,2)")
        assert are_colour_preserving_isomorphic(a, b)
        assert colour_preserving_signature(a) == colour_preserving_signature(b)

    def test_sphere_vs_torus_distinct(self):
        a = gem("3", "(0,1,2)")
        b = gem("3", "(0,2,1)")
        assert not are_colour_preserving_isomorphic(a, b)
        assert colour_preserving_signature(a) != colour_preserving_signature(b)

    def test_signature_deterministic(self):
        g = gem("2+1", "(0,2)(1)")
        assert colour_preserving_signature(g) == colour_preserving_signature(g)

    def test_matches_redrawing_orbits_exhaustively(self):
        # same lam: cp-isomorphic iff sigma lies in the redrawing orbit;
        # signatures must agree exactly with that relation
        for n in range(1, 5):
            for parts in partitions(n):
                lam = Partition(parts)
                mu = canonical_representative(lam)
                gems = [
                    StandardFormGem.from_partition(lam, Permutation(im))
                    for im in iter_permutations(range(n))
                    if is_connected(mu, Permutation(im))
                ]
                for a in gems:
                    orbit = cp_class_of(lam, a.sigma)
                    for b in gems:
                        expected = b.sigma.images in orbit
                        assert are_colour_preserving_isomorphic(a, b) == expected
                        assert (
                            colour_preserving_signature(a)
                            == colour_preserving_signature(b)
                        ) == expected


class TestIsomorphismSignature:
    def test_invariant_under_all_swaps(self):
        for n in range(1, 5):
            for g in connected_gems(n):
                sig = isomorphism_signature(g)
                for img in colour_swap_images(g):
                    assert isomorphism_signature(img.image) == sig

    def test_three_classes_at_n3(self):
        sigs = {isomorphism_signature(g) for g in connected_gems(3)}
        assert len(sigs) == 3

    def test_matches_closure_classes(self):
        for n in range(1, 5):
            by_sig = {}
            for g in connected_gems(n):
                by_sig.setdefault(isomorphism_signature(g), []).append(g)
            for sig, gems in by_sig.items():
                cls = closure_class(gems[0], colour_swap_images)
                members = {(g.lam.parts, g.sigma.images) for g in gems}
                assert members == cls


class TestComputeWeight:
    def test_example_golden(self):
        w, rep = compute_weight(gem("2+1", "(0,2)(1)"))
        assert 1 / w.value == 7
        assert rep.colour_preserving_count == 2
        assert rep.colour_swap_count == 2

    def test_figure_caption_weights(self):
        assert compute_weight(gem("3", "(0,2,1)"))[0].value == 1
        assert compute_weight(gem("3", "(0,1,2)"))[0].value == Fraction(1, 4)
        assert compute_weight(gem("2+1", "(0)(1,2)"))[0].value == Fraction(1, 7)

    def test_two_triangle_gem(self):
        w, rep = compute_weight(gem("1", "(0)"))
        assert w.value == 1
        assert rep.colour_preserving_count == 2
        assert rep.colour_swap_count == 6

    def test_weight_is_class_function(self):
        for n in range(1, 5):
            weights = {}
            for g in connected_gems(n):
                sig = isomorphism_signature(g)
                w, _ = compute_weight(g)
                weights.setdefault(sig, set()).add(w.value)
            for values in weights.values():
                assert len(values) == 1

    def test_inverse_weight_counts_class_exactly(self):
        # the central correctness property, against closure-class sizes
        for n in range(1, 5):
            for g in connected_gems(n):
                w, _ = compute_weight(g)
                assert 1 / w.value == len(closure_class(g, colour_swap_images))

    def test_symmetry_budget(self):
        for n in range(1, 5):
            for g in connected_gems(n):
                _, rep = compute_weight(g)
                assert rep.total <= 12 * n
                assert rep.colour_swap_count in (1, 2, 3, 6)

    def test_log_value_matches_exact(self):
        import math

        w, _ = compute_weight(gem("2+1", "(0,2)(1)"))
        assert abs(w.log_value - math.log(1 / 7)) < 1e-12

    def test_rejects_disconnected(self):
        with pytest.raises(ValueError):
            compute_weight(gem("2+1", "(0)(1)(2)"))
