"""Bijectivity predicates on automorphisms: k-completeness and its relatives.

The map under test is g -> g^k * a(g) for an automorphism a; k = 1 is the
complete-mapping case, k = -1 the orthomorphism/fixed-point-free case.  On a
finite group injectivity already gives bijectivity, so every predicate is an
injectivity scan over precomputed power vectors, with an occupancy array that
exits on the first collision and captures it as a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .automorphisms import Automorphism
from .errors import GroupBuildError
from .groups import GroupTable


@dataclass
class CompletenessVerdict:
    """Outcome of one (group, automorphism, k) check, with its certificate.

    On success the certificate is the full displacement image; on failure it
    is a colliding pair (g, h) with g^k a(g) = h^k a(h).  Both are re-checked
    at construction time.
    """

    group_name: str
    aut_provenance: str
    k: int
    verdict: bool
    image: np.ndarray = field(repr=False)
    collision: tuple[int, int] | None = None

    def __post_init__(self):
        n = len(self.image)
        if self.verdict:
            if self.collision is not None or len(np.unique(self.image)) != n:
                raise GroupBuildError("success certificate is not a bijection")
        else:
            g, h = self.collision
            if g == h or self.image[g] != self.image[h]:
                raise GroupBuildError("failure certificate does not collide")


def displacement_image(alpha: Automorphism, k: int) -> np.ndarray:
    """The vector g^k * a(g) over all g."""
    G = alpha.parent
    return np.asarray(G.mul_many(G.power_vec(k), alpha.images), dtype=np.int32)


def _first_collision(image: np.ndarray) -> tuple[int, int] | None:
    first = {}
    for g, v in enumerate(image.tolist()):
        if v in first:
            return first[v], g
        first[v] = g
    return None


def is_k_complete(alpha: Automorphism, k: int) -> CompletenessVerdict:
    """Is g -> g^k * a(g) bijective?  k may be negative (inverse powers)."""
    image = displacement_image(alpha, k)
    collision = None
    if len(np.unique(image)) != len(image):
        collision = _first_collision(image)
    return CompletenessVerdict(
        group_name=alpha.parent.name,
        aut_provenance=alpha.provenance,
        k=k,
        verdict=collision is None,
        image=image,
        collision=collision,
    )


def inverted_set(beta: Automorphism) -> list[int]:
    """{g : beta(g) = g^-1}; always contains the identity."""
    return [int(x) for x in np.nonzero(beta.images == beta.parent.inv)[0]]


def inversion_criterion(alpha: Automorphism, inner: list[Automorphism]) -> bool:
    """True iff no member of the coset alpha*Inn(G) inverts a nontrivial
    element (the reformulation of 1-completeness)."""
    inv = alpha.parent.inv
    for iota in inner:
        composed = alpha.images[iota.images]
        hits = np.nonzero(composed == inv)[0]
        if len(hits) != 1 or hits[0] != 0:
            return False
    return True


def is_fixed_point_free_equiv(alpha: Automorphism) -> tuple[bool, bool]:
    """(fixed-point-free?, (-1)-complete?), computed independently."""
    fpf = bool(np.count_nonzero(alpha.images == np.arange(alpha.parent.n)) == 1)
    minus1 = is_k_complete(alpha, -1).verdict
    return fpf, minus1


def iterate_map_bijective(alpha: Automorphism, k: int) -> bool:
    """Is g -> g * a(g) * a^2(g) * ... * a^k(g) bijective?  (k >= 1; at k = 1
    this is the same map as is_k_complete(alpha, 1).)"""
    if k < 1:
        raise ValueError(f"iterate length must be >= 1, got {k}")
    return len(np.unique(iterate_product_vec(alpha, k))) == alpha.parent.n


def iterate_product_vec(alpha: Automorphism, k: int) -> np.ndarray:
    """The vector g * a(g) * ... * a^k(g) (k >= 0)."""
    G = alpha.parent
    acc = np.arange(G.n, dtype=np.int32)
    power = alpha.images
    for _ in range(k):
        acc = np.asarray(G.mul_many(acc, power), dtype=np.int32)
        power = alpha.images[power]
    return acc


def is_splitting(alpha: Automorphism) -> bool:
    """True iff g * a(g) * ... * a^(ord(a)-1)(g) = 1 for every g."""
    return bool(np.all(iterate_product_vec(alpha, alpha.order() - 1) == 0))


def is_antisymmetric(alpha: Automorphism, classes: list[list[int]]) -> bool:
    """True iff the only conjugacy class left invariant is {identity}."""
    for cls in classes:
        if cls == [0]:
            continue
        if sorted(int(x) for x in alpha.images[cls]) == cls:
            return False
    return True


def image_ratio(alpha: Automorphism, mode: str) -> Fraction:
    """|{s * a(s)}| / |G| ('product') or |{s^-1 * a(s)}| / |G| ('commutator'),
    as an exact rational."""
    G = alpha.parent
    if mode == "product":
        left = np.arange(G.n, dtype=np.int64)
    elif mode == "commutator":
        left = G.inv
    else:
        raise ValueError(f"unknown image_ratio mode {mode!r}")
    image = G.mul_many(left, alpha.images)
    return Fraction(len(np.unique(image)), G.n)


def power_map_bijective(G: GroupTable, m: int) -> bool:
    """Is g -> g^m bijective?  Cross-checked against gcd(m, |G|) = 1 on every
    call; a mismatch would be an implementation bug."""
    image = G.power_vec(m)
    bijective = len(np.unique(image)) == G.n
    if bijective != (gcd(m, G.n) == 1):
        raise RuntimeError(
            f"power map law violated on {G.name}: m={m}, bijective={bijective}"
        )
    return bijective


def suzuki_order(q: int) -> int:
    """Order q^2 (q^2 + 1) (q - 1) of the Suzuki group for q = 2^(2m+1)."""
    e = q.bit_length() - 1
    if q != 2**e or e < 3 or e % 2 == 0:
        raise ValueError(f"Suzuki parameter must be 2^(2m+1) with m >= 1, got {q}")
    return q * q * (q * q + 1) * (q - 1)
