"""Gem construction, connectivity, vertex counts, genus."""

from itertools import permutations as iter_permutations
from random import Random

import pytest

from gemsurf import (
    Partition,
    Permutation,
    StandardFormGem,
    canonical_representative,
    genus,
    is_connected,
    max_genus,
    num_vertices,
    partitions,
    sample_permutation,
)
from gemsurf.symmetry import colour_swap_images

from conftest import graph_connected


def gem(lam_text, sigma_text):
    return StandardFormGem.from_partition(
        Partition.parse(lam_text), Permutation.parse(sigma_text)
    )


class TestStandardFormGem:
    def test_rejects_non_canonical_mu(self):
        with pytest.raises(ValueError):
            StandardFormGem(
                3, Partition([2, 1]), Permutation.parse("(0,2)(1)"),
                Permutation.identity(3),
            )

    def test_rejects_degree_mismatch(self):
        with pytest.raises(ValueError):
            StandardFormGem.from_partition(Partition([2, 1]), Permutation.identity(4))

    def test_string_round_trip(self):
        g = gem("2+1", "(0,2)(1)")
        assert str(g) == "lambda=2+1; sigma=(0,2)(1)"
        assert StandardFormGem.parse(str(g)) == g

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            StandardFormGem.parse("mu=2+1; sigma=(0)(1)(2)")


class TestConnectivity:
    def test_identity_pair_disconnected(self):
        e = Permutation.identity(3)
        assert not is_connected(e, e)

    def test_full_cycle_always_connected(self):
        mu = Permutation.parse("(0,1,2)")
        for images in iter_permutations(range(3)):
            assert is_connected(mu, Permutation(images))

    def test_known_n3_cells(self):
        mu = Permutation.parse("(0,1)(2)")
        assert not is_connected(mu, Permutation.identity(3))
        assert is_connected(mu, Permutation.parse("(0)(1,2)"))

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            is_connected(Permutation.identity(2), Permutation.identity(3))

    def test_matches_explicit_graph_bfs_exhaustively(self):
        # the [n]-orbit test must agree with BFS on the 2n-node gem graph
        for n in range(1, 6):
            for parts in partitions(n):
                mu = canonical_representative(Partition(parts))
                for images in iter_permutations(range(n)):
                    sigma = Permutation(images)
                    assert is_connected(mu, sigma) == graph_connected(mu, sigma)

    def test_matches_explicit_graph_bfs_random_large(self):
        rng = Random(123)
        for n in (6, 7, 8):
            for parts in partitions(n):
                mu = canonical_representative(Partition(parts))
                for _ in range(60):
                    sigma = sample_permutation(n, rng)
                    assert is_connected(mu, sigma) == graph_connected(mu, sigma)

    def test_invariant_under_conjugation_and_colour_swap(self):
        rng = Random(5)
        for _ in range(40):
            n = rng.randint(2, 8)
            parts = rng.choice(list(partitions(n)))
            lam = Partition(parts)
            mu = canonical_representative(lam)
            sigma = sample_permutation(n, rng)
            pi = sample_permutation(n, rng)
            conn = is_connected(mu, sigma)
            assert conn == is_connected(mu.conjugate(pi), sigma.conjugate(pi))
            if conn:
                g = StandardFormGem.from_partition(lam, sigma)
                for img in colour_swap_images(g):
                    assert is_connected(img.image.mu, img.image.sigma)


class TestNumVertices:
    def test_hand_computed(self):
        mu = Permutation.parse("(0,1,2)")
        assert num_vertices(mu, Permutation.parse("(0,2,1)")) == 3
        assert num_vertices(mu, mu) == 5

    def test_identity_pair(self):
        for n in (1, 4, 9):
            e = Permutation.identity(n)
            assert num_vertices(e, e) == 3 * n

    def test_invariant_under_simultaneous_conjugation(self):
        rng = Random(31)
        for _ in range(60):
            n = rng.randint(1, 9)
            mu = sample_permutation(n, rng)
            sigma = sample_permutation(n, rng)
            pi = sample_permutation(n, rng)
            assert num_vertices(mu, sigma) == num_vertices(
                mu.conjugate(pi), sigma.conjugate(pi)
            )


class TestGenus:
    def test_torus(self):
        topo = genus(gem("3", "(0,2,1)"))
        assert (topo.num_vertices, topo.euler_characteristic, topo.genus) == (3, 0, 1)

    def test_spheres(self):
        assert genus(gem("3", "(0,1,2)")).genus == 0
        assert genus(gem("2+1", "(0,2)(1)")).genus == 0

    def test_two_triangle_sphere(self):
        topo = genus(gem("1", "(0)"))
        assert topo.genus == 0 and topo.euler_characteristic == 2

    def test_rejects_disconnected(self):
        with pytest.raises(ValueError):
            genus(gem("1+1+1", "(0)(1)(2)"))

    def test_bound_and_parity_over_enumeration(self):
        for n in range(1, 6):
            for parts in partitions(n):
                lam = Partition(parts)
                mu = canonical_representative(lam)
                for images in iter_permutations(range(n)):
                    sigma = Permutation(images)
                    if not is_connected(mu, sigma):
                        continue
                    topo = genus(StandardFormGem.from_partition(lam, sigma))
                    assert 0 <= topo.genus <= max_genus(n)
                    assert topo.euler_characteristic == topo.num_vertices - n

    def test_maximal_genus_gems(self):
        # mu, sigma and mu^-1 o sigma all single cycles force v=3 and
        # g=(n-1)/2 for odd n
        for n in (3, 5, 7, 9):
            lam = Partition([n])
            mu = canonical_representative(lam)
            found = False
            for images in iter_permutations(range(n)):
                sigma = Permutation(images)
                if sigma.num_cycles() != 1:
                    continue
                if mu.inverse().compose(sigma).num_cycles() != 1:
                    continue
                topo = genus(StandardFormGem.from_partition(lam, sigma))
                assert topo.num_vertices == 3
                assert topo.genus == (n - 1) // 2 == max_genus(n)
                found = True
                break
            assert found
