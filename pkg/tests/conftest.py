"""Shared brute-force oracles, all deliberately independent of the package
internals they are used to check.

- the explicit 2n-node coloured gem graph with BFS connectivity,
- colour-preserving automorphism counting by trying every node bijection,
- the redrawing group of a partition (cycle re-orderings x rotations x
  point reflection), generated explicitly,
- isomorphism classes as orbit closures under redrawings and colour swaps.
"""

from __future__ import annotations

import itertools
from collections import deque

from gemsurf import Partition, Permutation, canonical_representative


def gem_graph(mu: Permutation, sigma: Permutation):
    """Adjacency of the 2n-node gem: per colour, node -> neighbour.

    Top nodes are 0..n-1, bottom nodes n..2n-1.  Colour one is vertical,
    colour two follows mu, colour three follows sigma.
    """
    n = mu.degree
    nbr = [[0] * (2 * n) for _ in range(3)]
    for i in range(n):
        nbr[0][i] = n + i
        nbr[0][n + i] = i
        nbr[1][i] = n + mu(i)
        nbr[1][n + mu(i)] = i
        nbr[2][i] = n + sigma(i)
        nbr[2][n + sigma(i)] = i
    return nbr


def graph_connected(mu: Permutation, sigma: Permutation) -> bool:
    """BFS connectivity on the explicit 2n-node graph."""
    n = mu.degree
    nbr = gem_graph(mu, sigma)
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for c in range(3):
            w = nbr[c][v]
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == 2 * n


def brute_force_symmetries(mu: Permutation, sigma: Permutation) -> int:
    """Count colour-preserving automorphisms by trying all (2n)! bijections.

    Only usable for tiny n; completely independent of the extension search.
    """
    n = mu.degree
    nbr = gem_graph(mu, sigma)
    count = 0
    for phi in itertools.permutations(range(2 * n)):
        if all(
            phi[nbr[c][v]] == nbr[c][phi[v]]
            for v in range(2 * n)
            for c in range(3)
        ):
            count += 1
    return count


def centralizer_elements(lam: Partition) -> list[tuple[int, ...]]:
    """All permutations commuting with the canonical representative of lam,
    built from re-orderings of equal-length cycles and per-cycle rotations."""
    mu = canonical_representative(lam)
    cycles = mu.cycles()
    by_length: dict[int, list[list[int]]] = {}
    for c in cycles:
        by_length.setdefault(len(c), []).append(c)
    n = lam.n
    partial: list[list[int]] = [[-1] * n]
    for length, blocks in by_length.items():
        a = len(blocks)
        extended = []
        for base in partial:
            for assignment in itertools.permutations(range(a)):
                for rotations in itertools.product(range(length), repeat=a):
                    pi = list(base)
                    for j, block in enumerate(blocks):
                        dst = blocks[assignment[j]]
                        r = rotations[j]
                        for t, el in enumerate(block):
                            pi[el] = dst[(t + r) % length]
                    extended.append(pi)
        partial = extended
    return [tuple(pi) for pi in partial]


def reflection_relabelling(lam: Partition) -> tuple[int, ...]:
    """The orientation-reversing line relabelling: each canonical cycle
    (s, ..., s+p-1) is reversed in place."""
    pi = []
    start = 0
    for p in lam.parts:
        pi.extend(start + ((p - i) % p) for i in range(p))
        start += p
    return tuple(pi)


def redrawings(lam: Partition) -> list[tuple[tuple[int, ...], bool]]:
    """The full group of standard-form-preserving redrawings of a drawing
    with colour-two permutation canonical_representative(lam): pairs
    (line relabelling, flipped)."""
    centre = centralizer_elements(lam)
    pi0 = reflection_relabelling(lam)
    flipped = [tuple(pi0[t[i]] for i in range(lam.n)) for t in centre]
    return [(t, False) for t in centre] + [(t, True) for t in flipped]


def apply_redrawing(
    pi: tuple[int, ...], flip: bool, sigma: Permutation
) -> Permutation:
    """Image of the colour-three permutation under a redrawing."""
    s = sigma.images if not flip else sigma.inverse().images
    out = [0] * len(s)
    for i, v in enumerate(s):
        out[pi[i]] = pi[v]
    return Permutation(out)


def cp_class_of(lam: Partition, sigma: Permutation) -> set[tuple[int, ...]]:
    """Colour-preserving class of (lam, sigma) with the same lam: the orbit
    of sigma under the redrawing group."""
    return {
        apply_redrawing(pi, flip, sigma).images for pi, flip in redrawings(lam)
    }


def closure_class(gem, colour_swap_images_fn) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Full isomorphism class of a gem: closure under redrawings and the six
    colour swaps, as a set of (lam parts, sigma images) pairs."""
    from gemsurf import StandardFormGem

    start = (gem.lam.parts, gem.sigma.images)
    todo = [start]
    seen = {start}
    while todo:
        parts, images = todo.pop()
        lam = Partition(parts)
        g = StandardFormGem.from_partition(lam, Permutation(images))
        neighbours = []
        for s_images in cp_class_of(lam, Permutation(images)):
            neighbours.append((parts, s_images))
        for img in colour_swap_images_fn(g):
            neighbours.append((img.image.lam.parts, img.image.sigma.images))
        for key in neighbours:
            if key not in seen:
                seen.add(key)
                todo.append(key)
    return seen
