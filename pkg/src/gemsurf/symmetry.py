"""Symmetries, colour swaps, canonical signatures, and sample weights.

The key primitive is the extension test: a colour-respecting map between
two gems is fully determined by the image of one node, and that image can
be any of the ``2n`` nodes of the target (``n`` vertical lines, times two
for the top/bottom flip).  Each candidate either extends uniquely over the
connected gem or runs into a contradiction, almost always after a handful
of steps.

Everything here works on gems in standard form.  Weights are exact
rationals: ``1/w`` counts the standard-form pairs isomorphic to the gem,
so floating point never touches the bookkeeping that makes the sample
uniform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .gem import StandardFormGem, _connected_images
from .perm import Partition, Permutation, centralizer_order

#: All six permutations of the three colour roles, as image tuples
#: (role c is sent to role tau[c]; colours one, two, three are 0, 1, 2).
COLOUR_ROLE_PERMUTATIONS: tuple[tuple[int, int, int], ...] = (
    (0, 1, 2),
    (0, 2, 1),
    (1, 0, 2),
    (1, 2, 0),
    (2, 0, 1),
    (2, 1, 0),
)


@dataclass(frozen=True)
class SymmetryReport:
    colour_preserving_count: int
    colour_swap_count: int

    def __post_init__(self):
        if self.colour_preserving_count < 1:
            raise ValueError("the identity is always a symmetry")
        if self.colour_swap_count not in (1, 2, 3, 6):
            raise ValueError(
                f"colour swap count must divide 6, got {self.colour_swap_count}"
            )

    @property
    def total(self) -> int:
        return self.colour_preserving_count * self.colour_swap_count


@dataclass(frozen=True)
class Weight:
    """Exact sample weight; ``log_value`` is derived for export only."""

    value: Fraction
    log_value: float

    @classmethod
    def from_value(cls, value: Fraction) -> "Weight":
        if not 0 < value <= 1:
            raise ValueError(f"weight must lie in (0, 1], got {value}")
        if value.numerator != 1 and (1 / value).denominator != 1:
            raise ValueError(f"1/weight must be an integer, got {value}")
        # computed from the big integers so it survives values below
        # the smallest positive double (weights shrink like 1/n!)
        log_value = math.log(value.numerator) - math.log(value.denominator)
        return cls(value=value, log_value=log_value)


@dataclass(frozen=True)
class ColourSwapImage:
    tau: tuple[int, int, int]
    image: StandardFormGem


def _inv(images: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(images)
    for i, v in enumerate(images):
        out[v] = i
    return tuple(out)


def _cycle_length_of_line(images) -> list[int]:
    # line -> length of the cycle containing it
    n = len(images)
    lens = [0] * n
    for i in range(n):
        if lens[i]:
            continue
        cycle = [i]
        j = images[i]
        while j != i:
            cycle.append(j)
            j = images[j]
        for el in cycle:
            lens[el] = len(cycle)
    return lens


def _cycle_length_through(images, start: int) -> int:
    length = 1
    j = images[start]
    while j != start:
        length += 1
        j = images[j]
    return length


def _count_colour_maps(
    src_mu, src_si, dst_mu, dst_si, *, first_only: bool,
    src_inv=None, dst_inv=None,
) -> int:
    """Number of colour-respecting line maps from the source gem onto the
    target gem (both connected).  With ``first_only`` stops at the first hit.

    A map is seeded by sending line 0 of the source to one of the 2n
    target nodes (n lines, two sides) and propagated over the gem; the
    flipped side reverses the orientation of both matchings.
    """
    n = len(src_mu)
    src_mu_inv, src_si_inv = src_inv or (_inv(src_mu), _inv(src_si))
    dst_mu_inv, dst_si_inv = dst_inv or (_inv(dst_mu), _inv(dst_si))
    # a colour-respecting map sends line 0 to a line whose mu- and
    # sigma-cycle lengths match (conjugation preserves cycle lengths, on
    # the flipped side too), so only those targets are attempted
    mu_len0 = _cycle_length_through(src_mu, 0)
    si_len0 = _cycle_length_through(src_si, 0)
    dst_mu_len = _cycle_length_of_line(dst_mu)
    dst_si_len = _cycle_length_of_line(dst_si)
    targets = [
        y for y in range(n)
        if dst_mu_len[y] == mu_len0 and dst_si_len[y] == si_len0
    ]
    count = 0
    # buffers are reused across all attempts, validity tracked by the
    # attempt stamp; a failing attempt then costs only the steps it took
    phi = [0] * n
    phi_stamp = [0] * n
    taken_stamp = [0] * n
    stack: list[int] = []
    attempt = 0
    for flipped in (False, True):
        if flipped:
            pairs = (
                (src_mu, dst_mu_inv),
                (src_mu_inv, dst_mu),
                (src_si, dst_si_inv),
                (src_si_inv, dst_si),
            )
        else:
            pairs = (
                (src_mu, dst_mu),
                (src_mu_inv, dst_mu_inv),
                (src_si, dst_si),
                (src_si_inv, dst_si_inv),
            )
        for target in targets:
            attempt += 1
            phi[0] = target
            phi_stamp[0] = attempt
            taken_stamp[target] = attempt
            del stack[:]
            stack.append(0)
            ok = True
            while stack and ok:
                x = stack.pop()
                y = phi[x]
                for smap, dmap in pairs:
                    nx = smap[x]
                    ny = dmap[y]
                    if phi_stamp[nx] == attempt:
                        if phi[nx] != ny:
                            ok = False
                            break
                    else:
                        if taken_stamp[ny] == attempt:
                            ok = False
                            break
                        phi[nx] = ny
                        phi_stamp[nx] = attempt
                        taken_stamp[ny] = attempt
                        stack.append(nx)
            if ok:
                count += 1
                if first_only:
                    return count
    return count


def _require_connected(gem: StandardFormGem, what: str) -> None:
    if not _connected_images(gem.mu.images, gem.sigma.images):
        raise ValueError(f"{what} requires a connected gem")


def count_colour_preserving_symmetries(gem: StandardFormGem) -> int:
    """Size of the colour-preserving symmetry group (identity included)."""
    _require_connected(gem, "symmetry counting")
    return _count_colour_maps(
        gem.mu.images, gem.sigma.images, gem.mu.images, gem.sigma.images,
        first_only=False,
    )


def are_colour_preserving_isomorphic(a: StandardFormGem, b: StandardFormGem) -> bool:
    """True iff the two connected gems are related by an isomorphism that
    fixes all three colours."""
    if a.n != b.n:
        return False
    _require_connected(a, "isomorphism testing")
    _require_connected(b, "isomorphism testing")
    if a.lam != b.lam:
        return False
    return bool(
        _count_colour_maps(
            a.mu.images, a.sigma.images, b.mu.images, b.sigma.images,
            first_only=True,
        )
    )


def _standardising_relabelling(images: tuple[int, ...]) -> tuple[list[int], list[int]]:
    """Relabelling that conjugates ``images`` to canonical-representative
    form: cycles ordered by (length descending, minimal element ascending),
    each traversed from its minimal element.  Returns (parts, pi)."""
    n = len(images)
    seen = bytearray(n)
    cycles: list[list[int]] = []
    for i in range(n):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = 1
        j = images[i]
        while j != i:
            cyc.append(j)
            seen[j] = 1
            j = images[j]
        cycles.append(cyc)
    cycles.sort(key=lambda c: (-len(c), c[0]))
    pi = [0] * n
    t = 0
    parts: list[int] = []
    for cyc in cycles:
        parts.append(len(cyc))
        for el in cyc:
            pi[el] = t
            t += 1
    return parts, pi


def _centralizer_from_parts(parts) -> int:
    # parts weakly decreasing: count runs of equal lengths
    order = 1
    i = 0
    k = len(parts)
    while i < k:
        j = i
        while j < k and parts[j] == parts[i]:
            j += 1
        order *= math.factorial(j - i) * parts[i] ** (j - i)
        i = j
    return order


def _swap_raw(n, mu, si, mu_inv, si_inv, tau):
    """Colour-swap on raw image tuples; returns (parts, mu', sigma')."""
    ident = tuple(range(n))
    matchings = (ident, mu, si)
    inverses = (ident, mu_inv, si_inv)
    new_m: list[tuple[int, ...]] = [()] * 3
    new_inv: list[tuple[int, ...]] = [()] * 3
    for c in range(3):
        new_m[tau[c]] = matchings[c]
        new_inv[tau[c]] = inverses[c]
    a_inv = new_inv[0]
    b, c3 = new_m[1], new_m[2]
    b_norm = tuple(b[a_inv[i]] for i in range(n))
    c_norm = tuple(c3[a_inv[i]] for i in range(n))
    parts, pi = _standardising_relabelling(b_norm)
    new_mu = [0] * n
    new_si = [0] * n
    for i in range(n):
        t = pi[i]
        new_mu[t] = pi[b_norm[i]]
        new_si[t] = pi[c_norm[i]]
    return tuple(parts), tuple(new_mu), tuple(new_si)


def colour_swap(gem: StandardFormGem, tau: tuple[int, int, int]) -> ColourSwapImage:
    """Permute the three colour roles by ``tau`` and re-standardise.

    The three matchings (identity, mu, sigma) are reassigned to roles, the
    new colour-one matching ``a`` is normalised away by relabelling the top
    row (every matching m becomes ``m o a^-1``), and the result is
    conjugated into standard form by the deterministic relabelling of
    ``_standardising_relabelling``.
    """
    if tuple(sorted(tau)) != (0, 1, 2):
        raise ValueError(f"tau must be a permutation of (0, 1, 2), got {tau!r}")
    mu, si = gem.mu.images, gem.sigma.images
    parts, _, new_si = _swap_raw(gem.n, mu, si, _inv(mu), _inv(si), tau)
    image = StandardFormGem.from_partition(Partition(parts), Permutation(new_si))
    return ColourSwapImage(tau=tau, image=image)


def colour_swap_images(gem: StandardFormGem) -> list[ColourSwapImage]:
    """The six colour-swap images of a gem (tau = identity included)."""
    return [colour_swap(gem, tau) for tau in COLOUR_ROLE_PERMUTATIONS]


def _labelled_key(m, m_inv, s, s_inv, start: int) -> tuple[int, ...]:
    # breadth-first relabelling from `start`; neighbours explored in the
    # fixed order colour-two forward/backward, colour-three forward/backward
    n = len(m)
    label = [-1] * n
    order = [start]
    label[start] = 0
    nxt = 1
    idx = 0
    while idx < n:
        x = order[idx]
        idx += 1
        for nb in (m[x], m_inv[x], s[x], s_inv[x]):
            if label[nb] < 0:
                label[nb] = nxt
                nxt += 1
                order.append(nb)
    new_mu = [0] * n
    new_si = [0] * n
    for x in range(n):
        lx = label[x]
        new_mu[lx] = label[m[x]]
        new_si[lx] = label[s[x]]
    return tuple(new_mu) + tuple(new_si)


def _cp_signature_key(mu: tuple[int, ...], si: tuple[int, ...]) -> tuple[int, ...]:
    n = len(mu)
    mu_inv = _inv(mu)
    si_inv = _inv(si)
    sides = [(mu, mu_inv, si, si_inv)]
    if mu_inv != mu or si_inv != si:
        sides.append((mu_inv, mu, si_inv, si))
    best = None
    for m, mi, s, s_inv in sides:
        for start in range(n):
            key = _labelled_key(m, mi, s, s_inv, start)
            if best is None or key < best:
                best = key
    return best


def _format_key(key: tuple[int, ...]) -> str:
    n = len(key) // 2
    return ",".join(map(str, key[:n])) + "|" + ",".join(map(str, key[n:]))


def colour_preserving_signature(gem: StandardFormGem) -> str:
    """Canonical string, equal for two gems iff they are related by a
    colour-preserving isomorphism.  Lexicographic minimum, over all 2n
    base-node choices, of the relabelled (mu, sigma) image sequences."""
    _require_connected(gem, "signature computation")
    return _format_key(_cp_signature_key(gem.mu.images, gem.sigma.images))


def isomorphism_signature(gem: StandardFormGem) -> str:
    """Canonical string, equal for two gems iff they are isomorphic with
    colour permutations allowed: the minimum colour-preserving signature
    over the six colour-swap images."""
    _require_connected(gem, "signature computation")
    mu, si = gem.mu.images, gem.sigma.images
    mu_inv, si_inv = _inv(mu), _inv(si)
    seen: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    best = None
    for tau in COLOUR_ROLE_PERMUTATIONS:
        _, m2, s2 = _swap_raw(gem.n, mu, si, mu_inv, si_inv, tau)
        if (m2, s2) in seen:
            continue
        seen.add((m2, s2))
        key = _cp_signature_key(m2, s2)
        if best is None or key < best:
            best = key
    return _format_key(best)


def _weight_raw(n, mu, si) -> tuple[int, int, int]:
    """Copy count, colour-preserving symmetry count, and number of distinct
    colour-swap classes of a connected gem given as raw image tuples."""
    mu_inv, si_inv = _inv(mu), _inv(si)
    s = _count_colour_maps(
        mu, si, mu, si, first_only=False,
        src_inv=(mu_inv, si_inv), dst_inv=(mu_inv, si_inv),
    )
    # group the six swap images into colour-preserving classes
    classes: list[tuple] = []  # (parts, mu, si, (mu_inv, si_inv))
    for tau in COLOUR_ROLE_PERMUTATIONS:
        parts, m2, s2 = _swap_raw(n, mu, si, mu_inv, si_inv, tau)
        inv2 = None
        for cp, cm, cs, cinv in classes:
            if cp != parts:
                continue
            if cm == m2 and cs == s2:
                break
            if inv2 is None:
                inv2 = (_inv(m2), _inv(s2))
            if _count_colour_maps(
                cm, cs, m2, s2, first_only=True, src_inv=cinv, dst_inv=inv2
            ):
                break
        else:
            classes.append(
                (parts, m2, s2, inv2 or (_inv(m2), _inv(s2)))
            )
    k = len(classes)
    if 6 % k != 0:
        raise RuntimeError(
            f"internal invariant violation: {k} colour-swap classes do not divide 6"
        )
    doubled = 2 * sum(_centralizer_from_parts(cp) for cp, _, _, _ in classes)
    if doubled % s != 0:
        raise RuntimeError(
            f"internal invariant violation: copy count {doubled}/{s} "
            "is not an integer"
        )
    return doubled // s, s, k


def compute_weight(gem: StandardFormGem) -> tuple[Weight, SymmetryReport]:
    """Exact weight and symmetry counts of a connected gem.

    With ``s`` colour-preserving symmetries and the six colour-swap images
    falling into ``k`` colour-preserving classes with colour-two partitions
    ``lam'_1 .. lam'_k``, the number of standard-form pairs isomorphic to
    the gem is ``(2/s) * sum_j |centraliser(lam'_j)|``; the weight is its
    inverse.
    """
    _require_connected(gem, "weight computation")
    n = gem.n
    copies, s, k = _weight_raw(n, gem.mu.images, gem.sigma.images)
    report = SymmetryReport(colour_preserving_count=s, colour_swap_count=6 // k)
    if (2 * centralizer_order(gem.lam)) % s != 0:
        raise RuntimeError(
            f"internal invariant violation: {s} symmetries do not divide the "
            f"redrawing group order {2 * centralizer_order(gem.lam)}"
        )
    if report.total > 12 * n:
        raise RuntimeError(
            f"internal invariant violation: {report.total} symmetries exceed 12n"
        )
    return Weight.from_value(Fraction(1, copies)), report
