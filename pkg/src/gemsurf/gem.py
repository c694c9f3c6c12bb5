"""Graph-encoded surfaces in standard form, and their topology.

A gem on ``2n`` nodes is encoded by a pair of permutations: colour one is
the identity matching between the top and bottom rows, colour two is the
canonical representative of a partition of ``n``, colour three is an
arbitrary permutation.  The surface is orientable by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .perm import Partition, Permutation, canonical_representative


@dataclass(frozen=True)
class StandardFormGem:
    """A gem in standard form: ``mu`` is forced to the canonical
    representative of ``lam``; ``sigma`` is free."""

    n: int
    lam: Partition
    mu: Permutation
    sigma: Permutation

    def __post_init__(self):
        if self.lam.n != self.n or self.sigma.degree != self.n:
            raise ValueError("partition and permutation degrees must all equal n")
        if self.mu != canonical_representative(self.lam):
            raise ValueError(
                f"mu {self.mu} is not the canonical representative of {self.lam}"
            )

    @classmethod
    def from_partition(cls, lam: Partition, sigma: Permutation) -> "StandardFormGem":
        return cls(lam.n, lam, canonical_representative(lam), sigma)

    def __str__(self) -> str:
        return f"lambda={self.lam}; sigma={self.sigma}"

    @classmethod
    def parse(cls, text: str) -> "StandardFormGem":
        fields = {}
        for chunk in text.split(";"):
            key, _, value = chunk.partition("=")
            fields[key.strip()] = value.strip()
        if set(fields) != {"lambda", "sigma"}:
            raise ValueError(f"expected 'lambda=...; sigma=...', got {text!r}")
        return cls.from_partition(
            Partition.parse(fields["lambda"]), Permutation.parse(fields["sigma"])
        )


@dataclass(frozen=True)
class GemTopology:
    num_vertices: int
    euler_characteristic: int
    genus: int


def max_genus(n: int) -> int:
    """Largest genus attainable by a gem with 2n triangles."""
    return (n - 1) // 2


def _connected_images(mu: tuple[int, ...], sigma: tuple[int, ...]) -> bool:
    # union-find over [n], uniting i with mu(i) and sigma(i)
    n = len(mu)
    parent = list(range(n))
    components = n
    for i in range(n):
        for j in (mu[i], sigma[i]):
            x = i
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            y = j
            while parent[y] != y:
                parent[y] = parent[parent[y]]
                y = parent[y]
            if x != y:
                parent[y] = x
                components -= 1
    return components == 1


def is_connected(mu: Permutation, sigma: Permutation) -> bool:
    """True iff the subgroup generated by ``{mu, sigma}`` acts transitively
    on ``[n]``, which is equivalent to connectivity of the 2n-node gem."""
    if mu.degree != sigma.degree:
        raise ValueError(f"degree mismatch: {mu.degree} vs {sigma.degree}")
    return _connected_images(mu.images, sigma.images)


def _num_cycles_images(images) -> int:
    seen = bytearray(len(images))
    count = 0
    for i in range(len(images)):
        if seen[i]:
            continue
        count += 1
        j = i
        while not seen[j]:
            seen[j] = 1
            j = images[j]
    return count


def _topology_images(n, mu, sigma) -> tuple[int, int, int]:
    """(vertices, euler characteristic, genus) from raw image tuples of a
    connected gem; raises RuntimeError on an impossible genus."""
    mu_inv = [0] * n
    for i, v in enumerate(mu):
        mu_inv[v] = i
    third = tuple(mu_inv[sigma[i]] for i in range(n))
    v = _num_cycles_images(mu) + _num_cycles_images(sigma) + _num_cycles_images(third)
    chi = v - n
    if (2 - chi) % 2 != 0:
        raise RuntimeError(f"internal invariant violation: odd Euler defect {chi}")
    g = (2 - chi) // 2
    if not 0 <= g <= max_genus(n):
        raise RuntimeError(
            f"internal invariant violation: genus {g} outside [0, {max_genus(n)}]"
        )
    return v, chi, g


def num_vertices(mu: Permutation, sigma: Permutation) -> int:
    """Vertex count of the encoded triangulation: cycles of ``mu``, of
    ``sigma``, and of ``mu^-1 o sigma``."""
    if mu.degree != sigma.degree:
        raise ValueError(f"degree mismatch: {mu.degree} vs {sigma.degree}")
    third = mu.inverse().compose(sigma)
    return mu.num_cycles() + sigma.num_cycles() + third.num_cycles()


def genus(gem: StandardFormGem) -> GemTopology:
    """Topology of a connected gem: ``chi = v - n`` and ``g = (2 - chi)/2``.

    Raises ValueError on disconnected input (the genus is undefined there)
    and RuntimeError if the computed genus is not an integer in
    ``[0, max_genus(n)]`` (that would indicate a bug, never bad input).
    """
    if not is_connected(gem.mu, gem.sigma):
        raise ValueError("genus is undefined for a disconnected gem")
    v, chi, g = _topology_images(gem.n, gem.mu.images, gem.sigma.images)
    return GemTopology(num_vertices=v, euler_characteristic=chi, genus=g)
