"""Lower and upper canonical extensions of order-preserving maps.

Each extension has several presentations: the lattice-theoretic one over
closed (resp. open) elements, the topological one over subbasic closed
(resp. saturated) sets, and a relational one.  Every call computes all of
them and insists they agree, so a single returned value carries the weight
of the cross-checks; the relational route is also exported on its own since
the duality construction is built on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ._bits import bits, canonical_family, is_subset, mask_of
from .core import Homomorphism, Semilattice
from .errors import NotInExtension, NotOrderPreserving
from .extension import (
    CanonicalExtension,
    build_extension,
    ext_join,
    hull,
    ideal_avoiding,
)
from .order import all_filters, all_order_ideals, irreducible_filters
from .space import (
    dual_space,
    filter_of_closed,
    points_containing,
    points_extending,
    subbasic_closed,
    subbasic_saturated,
)


@dataclass(frozen=True)
class OrderMap:
    """An order-preserving (not necessarily meet-preserving) map."""

    source: Semilattice
    target: Semilattice
    map: tuple[int, ...]

    def __post_init__(self) -> None:
        f, A, B = self.map, self.source, self.target
        if len(f) != A.n or any(not 0 <= v < B.n for v in f):
            raise NotOrderPreserving(("malformed", f))
        for a in range(A.n):
            for b in bits(A.up[a]):
                if not B.leq(f[a], f[b]):
                    raise NotOrderPreserving((a, b))

    def __call__(self, a: int) -> int:
        return self.map[a]

    def preimage(self, mask: int) -> int:
        out = 0
        for a, v in enumerate(self.map):
            if mask >> v & 1:
                out |= 1 << a
        return out


def order_map(A: Semilattice, B: Semilattice, f: Sequence[int]) -> OrderMap:
    return OrderMap(A, B, tuple(f))


def map_of_hom(h: Homomorphism) -> OrderMap:
    return OrderMap(h.source, h.target, h.map)


@dataclass(frozen=True)
class PiRelation:
    """Points of the target dual paired with source saturated sets whose
    ideal misses the point preimage."""

    map: OrderMap
    pairs: frozenset[tuple[int, int]]

    def image(self, p: int) -> tuple[int, ...]:
        return canonical_family(z for q, z in self.pairs if q == p)


@dataclass(frozen=True)
class SigmaRelation:
    """Points of the target dual paired with source subbasic closed sets
    whose filter lands inside the point preimage."""

    map: OrderMap
    pairs: frozenset[tuple[int, int]]

    def image(self, p: int) -> tuple[int, ...]:
        return canonical_family(y for q, y in self.pairs if q == p)

    def preimage_of(self, y: int) -> int:
        return mask_of(p for p, y2 in self.pairs if y2 == y)


def pi_relation(f: OrderMap) -> PiRelation:
    """Exhaustive pair table of the relational presentation of the upper extension."""
    A, B = f.source, f.target
    xb = irreducible_filters(B)
    pairs = set()
    for p, pf in enumerate(xb):
        pre = f.preimage(pf)
        for z in subbasic_saturated(dual_space(A)):
            if pre & ideal_avoiding(A, z) == 0:
                pairs.add((p, z))
    return PiRelation(f, frozenset(pairs))


def sigma_relation(f: OrderMap) -> SigmaRelation:
    A, B = f.source, f.target
    xb = irreducible_filters(B)
    pairs = set()
    for p, pf in enumerate(xb):
        pre = f.preimage(pf)
        for y in subbasic_closed(dual_space(A)):
            if is_subset(filter_of_closed(A, y), pre):
                pairs.add((p, y))
    return SigmaRelation(f, frozenset(pairs))


def _require_element(ext: CanonicalExtension, v: int) -> None:
    if v not in set(ext.elements):
        raise NotInExtension((v,))


def _sigma_on_closed(f: OrderMap, y: int) -> int:
    """Meet of the embedded images over all elements whose image contains y."""
    A, B = f.source, f.target
    out = dual_space(B).full
    for a in range(A.n):
        if is_subset(y, points_containing(A, a)):
            out &= points_containing(B, f(a))
    return out


def sigma_ext(f: OrderMap, v: int) -> int:
    """Lower extension at an element of the source extension.

    Computed three ways (over closed elements, over subbasic closed sets,
    and through the sigma relation) and checked for agreement.
    """
    ea, eb = build_extension(f.source), build_extension(f.target)
    _require_element(ea, v)
    A = f.source

    closed = canonical_family(points_extending(A, fl) for fl in all_filters(A))
    via_closed = ext_join(eb, [_sigma_on_closed(f, x) for x in closed if is_subset(x, v)])

    cks = subbasic_closed(ea.dual)
    via_topology = ext_join(eb, [_sigma_on_closed(f, y) for y in cks if is_subset(y, v)])

    g = sigma_relation(f)
    union = 0
    for y in cks:
        if is_subset(y, v):
            union |= g.preimage_of(y)
    via_relation = hull(eb, union)

    if not via_closed == via_topology == via_relation:
        raise RuntimeError("sigma presentations disagree")
    return via_closed


def _pi_on_saturated_complement(f: OrderMap, z: int) -> int:
    """Join of embedded images over elements below the complement of z."""
    A, B = f.source, f.target
    eb = build_extension(B)
    zc = dual_space(A).full & ~z
    return ext_join(
        eb,
        [
            points_containing(B, f(a))
            for a in range(A.n)
            if is_subset(points_containing(A, a), zc)
        ],
    )


def pi_ext(f: OrderMap, v: int) -> int:
    """Upper extension at an element of the source extension.

    Computed four ways (over open elements, over saturated sets, through the
    point-preimage description, and through the pi relation) and checked for
    agreement.
    """
    ea, eb = build_extension(f.source), build_extension(f.target)
    _require_element(ea, v)
    A, B = f.source, f.target
    xa, xb = ea.dual, eb.dual

    opens_ = canonical_family(
        ext_join(ea, [ea.embed(a) for a in bits(i)]) for i in all_order_ideals(A)
    )

    def pi_on_open(y: int) -> int:
        return ext_join(
            eb,
            [
                points_containing(B, f(a))
                for a in range(A.n)
                if is_subset(points_containing(A, a), y)
            ],
        )

    via_open = xb.full
    for y in opens_:
        if is_subset(v, y):
            via_open &= pi_on_open(y)

    zs = subbasic_saturated(xa)
    via_saturated = xb.full
    for z in zs:
        if is_subset(z, xa.full & ~v):
            via_saturated &= _pi_on_saturated_complement(f, z)

    via_preimage = xb.full
    for z in zs:
        if is_subset(z, xa.full & ~v):
            step = mask_of(
                p
                for p, pf in enumerate(irreducible_filters(B))
                if f.preimage(pf) & ideal_avoiding(A, z)
            )
            via_preimage &= step

    rel = pi_relation(f)
    via_relation = mask_of(
        p
        for p in range(xb.n_points)
        if all(z & v for z in rel.image(p))
    )

    if not via_open == via_saturated == via_preimage == via_relation:
        raise RuntimeError("pi presentations disagree")
    return via_open
