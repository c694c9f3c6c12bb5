"""Brute-force ground truth for small n.

``enumerate_space`` walks every standard-form pair, classifies isomorphism
types by canonical signature, and cross-checks the sampled weights against
the exact class sizes: for every connected pair, ``1/w`` must equal the
number of standard-form pairs in its class, so each class carries total
weight exactly 1.  ``verify_sampler`` then compares batch output against
the uniform-over-classes prediction.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .gem import StandardFormGem, is_connected
from .perm import Partition, Permutation, canonical_representative, partitions
from .sampler import BatchConfig, run_batch
from .symmetry import compute_weight, isomorphism_signature

#: p(n) * n! grows fast; 7 keeps a full enumeration in the minutes range.
MAX_ENUMERATION_N = 7


@dataclass(frozen=True)
class IsomorphismClass:
    signature: str
    class_size: int
    genus: int
    weight: Fraction
    total_class_weight: Fraction
    representative: StandardFormGem
    sym_colour_preserving: int
    sym_colour_swap: int


@dataclass(frozen=True)
class EnumerationReport:
    n: int
    total_pairs: int
    connected_pairs: int
    classes: tuple[IsomorphismClass, ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "total_pairs": self.total_pairs,
                "connected_pairs": self.connected_pairs,
                "classes": [
                    {
                        "signature": c.signature,
                        "class_size": c.class_size,
                        "genus": c.genus,
                        "weight": f"{c.weight.numerator}/{c.weight.denominator}",
                        "total_class_weight": (
                            f"{c.total_class_weight.numerator}/"
                            f"{c.total_class_weight.denominator}"
                        ),
                        "representative": str(c.representative),
                        "sym_cp": c.sym_colour_preserving,
                        "sym_swap": c.sym_colour_swap,
                    }
                    for c in self.classes
                ],
            },
            indent=2,
        )

    def table(self) -> str:
        lines = [
            f"n={self.n}: {self.total_pairs} pairs, "
            f"{self.connected_pairs} connected, {len(self.classes)} classes",
            f"{'class':>5} {'size':>6} {'genus':>5} {'weight':>12}  representative",
        ]
        for i, c in enumerate(self.classes):
            lines.append(
                f"{i:>5} {c.class_size:>6} {c.genus:>5} "
                f"{str(c.weight):>12}  {c.representative}"
            )
        return "\n".join(lines)


def standard_form_pairs(n: int) -> Iterable[StandardFormGem]:
    """All standard-form gems with 2n triangles: partitions in
    reverse-lexicographic order, permutations in lexicographic one-line order."""
    for parts in partitions(n):
        lam = Partition(parts)
        mu = canonical_representative(lam)
        for images in itertools.permutations(range(n)):
            yield StandardFormGem(n, lam, mu, Permutation(images))


def enumerate_space(n: int, *, force: bool = False) -> EnumerationReport:
    """Exhaustive census of the 2n-triangle sample space.

    Raises unless ``n <= MAX_ENUMERATION_N`` or ``force`` is set.  Every
    member's weight is cross-checked against ``1/class_size`` exactly; a
    signature that over- or under-merged classes would make this fail.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > MAX_ENUMERATION_N and not force:
        raise ValueError(
            f"enumeration of n={n} needs p(n)*n! pairs; pass force=True if you "
            f"really want to go beyond n={MAX_ENUMERATION_N}"
        )
    total = 0
    connected = 0
    order: list[str] = []
    members: dict[str, list[StandardFormGem]] = {}
    for gem in standard_form_pairs(n):
        total += 1
        if not is_connected(gem.mu, gem.sigma):
            continue
        connected += 1
        sig = isomorphism_signature(gem)
        if sig not in members:
            members[sig] = []
            order.append(sig)
        members[sig].append(gem)

    from .gem import genus as gem_genus

    classes = []
    for sig in order:
        gems = members[sig]
        size = len(gems)
        genera = {gem_genus(g).genus for g in gems}
        if len(genera) != 1:
            raise RuntimeError(f"signature {sig} merged gems of different genus")
        weights = set()
        reports = set()
        for g in gems:
            w, rep = compute_weight(g)
            weights.add(w.value)
            reports.add((rep.colour_preserving_count, rep.colour_swap_count))
        if len(weights) != 1 or len(reports) != 1:
            raise RuntimeError(f"members of class {sig} disagree on weight/symmetries")
        weight = weights.pop()
        if weight != Fraction(1, size):
            raise RuntimeError(
                f"class {sig}: weight {weight} != 1/{size}; "
                "signature grouping and weight formula disagree"
            )
        cp, swap = reports.pop()
        classes.append(
            IsomorphismClass(
                signature=sig,
                class_size=size,
                genus=genera.pop(),
                weight=weight,
                total_class_weight=weight * size,
                representative=gems[0],
                sym_colour_preserving=cp,
                sym_colour_swap=swap,
            )
        )
    return EnumerationReport(
        n=n, total_pairs=total, connected_pairs=connected, classes=tuple(classes)
    )


@dataclass(frozen=True)
class ClassVerdict:
    signature: str
    class_size: int
    count: int
    expected_count: float
    z_score: float
    mass: Fraction


@dataclass(frozen=True)
class VerificationVerdict:
    n: int
    num_draws: int
    accepted: int
    rejected: int
    classes: tuple[ClassVerdict, ...]
    max_abs_z: float
    chi_square: float
    underpowered: bool
    passed: bool

    @property
    def status(self) -> str:
        if self.underpowered:
            return "UNDERPOWERED"
        return "PASS" if self.passed else "FAIL"

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "num_draws": self.num_draws,
                "accepted": self.accepted,
                "rejected": self.rejected,
                "status": self.status,
                "max_abs_z": self.max_abs_z,
                "chi_square": self.chi_square,
                "classes": [
                    {
                        "signature": c.signature,
                        "class_size": c.class_size,
                        "count": c.count,
                        "expected_count": c.expected_count,
                        "z_score": c.z_score,
                        "mass": f"{c.mass.numerator}/{c.mass.denominator}",
                    }
                    for c in self.classes
                ],
            },
            indent=2,
        )


def verify_sampler(
    n: int,
    num_draws: int,
    seed: int,
    *,
    num_workers: int = 1,
    z_threshold: float = 5.0,
    min_expected_count: float = 10.0,
    report: EnumerationReport | None = None,
) -> VerificationVerdict:
    """Run a batch and compare per-class weighted masses with the uniform
    prediction from the exhaustive enumeration.

    Each accepted draw lands in class j with probability ``s_j / S`` (class
    size over connected pairs) and carries weight ``1/s_j``, so every class
    has expected mass ``N/S``; the per-class z-scores are exact binomial.
    If some class has expected count below ``min_expected_count`` the
    verdict reports insufficient power instead of pass/fail.
    """
    if report is None:
        report = enumerate_space(n)
    sig_to_idx = {c.signature: i for i, c in enumerate(report.classes)}
    lookup: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
    for gem in standard_form_pairs(n):
        if is_connected(gem.mu, gem.sigma):
            idx = sig_to_idx[isomorphism_signature(gem)]
            lookup[(gem.lam.parts, gem.sigma.images)] = idx

    counts = [0] * len(report.classes)
    masses = [Fraction(0)] * len(report.classes)
    rejected = 0
    cfg = BatchConfig(
        n=n, num_samples=num_draws, master_seed=seed, num_workers=num_workers
    )
    for record in run_batch(cfg):
        idx = lookup[(record.lam.parts, record.sigma.images)]
        counts[idx] += 1
        masses[idx] += record.weight.value
        rejected += record.rejected_attempts

    total_connected = report.connected_pairs
    accepted = num_draws
    verdicts = []
    chi_square = 0.0
    max_abs_z = 0.0
    underpowered = False
    for idx, cls in enumerate(report.classes):
        if masses[idx] != Fraction(counts[idx], cls.class_size):
            raise RuntimeError(
                "recorded weights disagree with enumeration class sizes"
            )
        p = cls.class_size / total_connected
        expected = accepted * p
        if expected < min_expected_count:
            underpowered = True
        sd = math.sqrt(accepted * p * (1.0 - p)) if 0.0 < p < 1.0 else 0.0
        z = (counts[idx] - expected) / sd if sd > 0 else 0.0
        chi_square += (counts[idx] - expected) ** 2 / expected if expected else 0.0
        max_abs_z = max(max_abs_z, abs(z))
        verdicts.append(
            ClassVerdict(
                signature=cls.signature,
                class_size=cls.class_size,
                count=counts[idx],
                expected_count=expected,
                z_score=z,
                mass=masses[idx],
            )
        )
    return VerificationVerdict(
        n=n,
        num_draws=num_draws,
        accepted=accepted,
        rejected=rejected,
        classes=tuple(verdicts),
        max_abs_z=max_abs_z,
        chi_square=chi_square,
        underpowered=underpowered,
        passed=not underpowered and max_abs_z <= z_threshold,
    )
