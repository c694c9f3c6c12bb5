"""Permutation and partition algebra.

Permutations act on ``[n] = {0, ..., n-1}`` and are stored by their image
tuples.  Composition is right-to-left everywhere in this package:
``a.compose(b)`` maps ``i`` to ``a(b(i))``.

Cycle notation is normalised so that every cycle starts at its minimal
element and cycles are listed by increasing minimal element, e.g.
``(0,1,2)(3)``.  Partitions are weakly decreasing tuples of positive
integers, printed as ``4+1+1+1``.
"""

from __future__ import annotations

import math
import sys
from random import Random
from typing import Callable, Iterable, Iterator


def ensure_int_digits(digits: int) -> None:
    """Raise the interpreter's int<->str conversion limit to at least
    ``digits``.  Exact weight bookkeeping routinely produces integers far
    beyond the default DoS guard of ~4300 digits; the values here are our
    own, not untrusted input."""
    if digits <= 4000 or not hasattr(sys, "get_int_max_str_digits"):
        return
    current = sys.get_int_max_str_digits()
    if current != 0 and current < digits + 100:
        sys.set_int_max_str_digits(digits + 100)


class Permutation:
    """A bijection on ``[n]``, immutable once built.

    >>> p = Permutation((1, 2, 0))
    >>> str(p)
    '(0,1,2)'
    >>> p.compose(p.inverse()) == Permutation.identity(3)
    True
    """

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        n = len(images)
        if n == 0:
            raise ValueError("permutation degree must be at least 1")
        seen = bytearray(n)
        for v in images:
            if not isinstance(v, int) or not 0 <= v < n or seen[v]:
                raise ValueError(f"images {images!r} are not a bijection on [{n}]")
            seen[v] = 1
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.images!r})"

    def __str__(self) -> str:
        return "".join("(" + ",".join(map(str, c)) + ")" for c in self.cycles())

    def __reduce__(self):
        return (Permutation, (self.images,))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Iterable[int]], n: int) -> "Permutation":
        """Build a permutation of degree ``n`` from disjoint cycles."""
        images = list(range(n))
        touched = bytearray(n)
        for cycle in cycles:
            cycle = list(cycle)
            for a in cycle:
                if not 0 <= a < n or touched[a]:
                    raise ValueError(f"invalid or repeated element {a} in cycles")
                touched[a] = 1
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
        return cls(images)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse cycle notation ``(0,1,2)(3)`` or one-line images ``1 2 0``.

        Cycle notation must cover every element of ``[n]`` (fixed points
        are written as singleton cycles), which is exactly what ``str``
        emits.
        """
        text = text.strip()
        if text.startswith("("):
            if not text.endswith(")"):
                raise ValueError(f"malformed cycle notation: {text!r}")
            cycles = []
            for chunk in text[1:-1].split(")("):
                if not chunk.strip():
                    raise ValueError(f"empty cycle in {text!r}")
                cycles.append([int(x) for x in chunk.replace(" ", "").split(",")])
            elements = [a for c in cycles for a in c]
            n = len(elements)
            if sorted(elements) != list(range(n)):
                raise ValueError(f"cycles in {text!r} do not cover [n] exactly once")
            return cls.from_cycles(cycles, n)
        return cls(int(x) for x in text.split())

    def compose(self, other: "Permutation") -> "Permutation":
        """Right-to-left composition: result maps ``i`` to ``self(other(i))``."""
        if self.degree != other.degree:
            raise ValueError(
                f"degree mismatch: {self.degree} vs {other.degree}"
            )
        a, b = self.images, other.images
        return Permutation(a[b[i]] for i in range(len(a)))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return self.compose(other)

    def inverse(self) -> "Permutation":
        images = self.images
        inv = [0] * len(images)
        for i, v in enumerate(images):
            inv[v] = i
        return Permutation(inv)

    def conjugate(self, by: "Permutation") -> "Permutation":
        """Return ``by o self o by^-1``."""
        if self.degree != by.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {by.degree}")
        p, s = by.images, self.images
        new = [0] * len(s)
        for i, v in enumerate(s):
            new[p[i]] = p[v]
        return Permutation(new)

    def cycles(self) -> list[list[int]]:
        """Cycles in canonical form: each starts at its minimum, ordered by minima."""
        images = self.images
        seen = bytearray(len(images))
        out = []
        for i in range(len(images)):
            if seen[i]:
                continue
            cycle = [i]
            seen[i] = 1
            j = images[i]
            while j != i:
                cycle.append(j)
                seen[j] = 1
                j = images[j]
            out.append(cycle)
        return out

    def num_cycles(self) -> int:
        images = self.images
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

    def cycle_structure(self) -> "CycleStructure":
        counts: dict[int, int] = {}
        for c in self.cycles():
            counts[len(c)] = counts.get(len(c), 0) + 1
        return CycleStructure(counts.items())


class Partition:
    """A weakly decreasing tuple of positive integers summing to ``n``.

    >>> str(Partition((4, 1, 1, 1)))
    '4+1+1+1'
    """

    __slots__ = ("parts", "n")

    def __init__(self, parts: Iterable[int]):
        parts = tuple(sorted(parts, reverse=True))
        if not parts:
            raise ValueError("partition must have at least one part")
        if any(not isinstance(p, int) or p < 1 for p in parts):
            raise ValueError(f"parts must be positive integers, got {parts!r}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "n", sum(parts))

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __repr__(self) -> str:
        return f"Partition({self.parts!r})"

    def __str__(self) -> str:
        return "+".join(map(str, self.parts))

    def __reduce__(self):
        return (Partition, (self.parts,))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        return cls(int(x) for x in text.strip().split("+"))

    def multiplicities(self) -> dict[int, int]:
        """Map part size -> multiplicity."""
        counts: dict[int, int] = {}
        for p in self.parts:
            counts[p] = counts.get(p, 0) + 1
        return counts

    def to_cycle_structure(self) -> "CycleStructure":
        return CycleStructure(self.multiplicities().items())


class CycleStructure:
    """Multiset of cycle lengths, stored as (length, multiplicity) pairs."""

    __slots__ = ("pairs",)

    def __init__(self, pairs: Iterable[tuple[int, int]]):
        pairs = tuple(sorted(pairs))
        lengths = [p for p, _ in pairs]
        if len(set(lengths)) != len(lengths):
            raise ValueError("cycle lengths must be distinct")
        if any(p < 1 or a < 1 for p, a in pairs):
            raise ValueError("lengths and multiplicities must be positive")
        object.__setattr__(self, "pairs", pairs)

    def __setattr__(self, name, value):
        raise AttributeError("CycleStructure is immutable")

    @property
    def n(self) -> int:
        return sum(p * a for p, a in self.pairs)

    def __eq__(self, other) -> bool:
        return isinstance(other, CycleStructure) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __repr__(self) -> str:
        return f"CycleStructure({self.pairs!r})"

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def to_partition(self) -> Partition:
        parts: list[int] = []
        for p, a in self.pairs:
            parts.extend([p] * a)
        return Partition(parts)


def _canonical_images(parts: tuple[int, ...]) -> list[int]:
    # parts must be weakly decreasing; fills consecutive integers into cycles
    images: list[int] = []
    start = 0
    for p in parts:
        images.extend(range(start + 1, start + p))
        images.append(start)
        start += p
    return images


def canonical_representative(lam: Partition) -> Permutation:
    """The canonical permutation of a partition: consecutive integers filled
    into cycles of the given lengths, longest cycles first.

    >>> str(canonical_representative(Partition((4, 1, 1, 1))))
    '(0,1,2,3)(4)(5)(6)'
    """
    return Permutation(_canonical_images(lam.parts))


def centralizer_order(lam: Partition | CycleStructure) -> int:
    """Order of the centraliser of any permutation with cycle structure ``lam``.

    Exact product of ``a! * p**a`` over (length p, multiplicity a) pairs,
    as an arbitrary-precision integer.
    """
    if isinstance(lam, Partition):
        pairs = lam.multiplicities().items()
    else:
        pairs = lam.pairs
    order = 1
    for p, a in pairs:
        order *= math.factorial(a) * p**a
    return order


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All partitions of ``n`` as weakly decreasing tuples, reverse-lexicographic."""
    if n < 1:
        raise ValueError("n must be at least 1")

    def gen(remaining: int, largest: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return gen(n, n)


def partition_from_multiplicities(counts: dict[int, int]) -> Partition:
    """Build a partition from ``{part size: count}`` (zero counts allowed)."""
    parts: list[int] = []
    for size, count in counts.items():
        if count < 0:
            raise ValueError("counts must be non-negative")
        parts.extend([size] * count)
    return Partition(parts)


def sample_partition(
    n: int,
    rng: Random,
    *,
    progress: Callable[[int], None] | None = None,
    progress_every: int = 100_000,
) -> Partition:
    """Draw a uniformly random partition of ``n`` by rejection.

    The part-count model is a vector of independent geometric counts
    ``X_i`` (support 0,1,2,... with success probability
    ``q_i = 1 - exp(-pi/sqrt(6n) * i)``) conditioned on
    ``sum(i * X_i) == n``; every conditioned vector is equally likely, so
    the partition it encodes is uniform.  Counts for ``i >= 2`` are drawn
    by inverse CDF; the count of ones is forced to the residue
    ``r = n - sum_{i>=2} i*X_i``, and the draw is accepted with probability
    ``(1-q_1)**r``, which reweights each vector by the constant ``1/q_1``
    relative to drawing ``X_1`` directly.  The loop has no iteration cap;
    ``progress`` (if given) is called with the attempt count every
    ``progress_every`` attempts.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    c = math.pi / math.sqrt(6.0 * n)
    # inverse CDF: X = floor(log(U) / log(1 - q_i)) with log(1-q_i) = -c*i
    scales = tuple((i, -1.0 / (c * i)) for i in range(2, n + 1))
    rand = rng.random
    log = math.log
    attempts = 0
    while True:
        attempts += 1
        if progress is not None and attempts % progress_every == 0:
            progress(attempts)
        total = 0
        counts: dict[int, int] = {}
        for i, neg_scale in scales:
            x = int(log(1.0 - rand()) * neg_scale)  # 1 - rand() lies in (0, 1]
            if x:
                total += i * x
                if total > n:
                    break
                counts[i] = x
        if total > n:
            continue
        ones = n - total
        if ones > 0:
            if log(1.0 - rand()) > -c * ones:  # reject w.p. 1 - (1-q_1)**r
                continue
            counts[1] = ones
        parts: list[int] = []
        for size in sorted(counts, reverse=True):
            parts.extend([size] * counts[size])
        return Partition(parts)


def sample_permutation(n: int, rng: Random) -> Permutation:
    """Draw a uniformly random permutation of ``[n]`` (Fisher-Yates shuffle)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(images)
