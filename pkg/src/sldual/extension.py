"""The canonical extension of a semilattice as a closure system on its dual.

The extension is generated by complements of the saturated sets obtained from
dually directed subbase families; meets are intersections and the join of any
family is the least extension element over its union.  At finite scale the
construction collapses onto the subbasic closed sets, but the code follows
the general definitions and the collapse is asserted separately as a
regression in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ._bits import bits, canonical_family, is_subset, mask_of
from .core import Semilattice
from .errors import LimitExceeded, NotAnIdeal, NotAnUpset, NotSaturated
from .order import (
    all_filters,
    all_order_ideals,
    filter_semilattice,
    irreducible_filters,
    is_order_ideal,
)
from .report import Report
from .space import (
    SSpace,
    dual_space,
    is_point_upset,
    points_containing,
    points_extending,
    subbasic_closed,
    subbasic_saturated,
)


def points_avoiding(S: Semilattice, ideal: int) -> int:
    """The saturated set of points disjoint from an order-ideal."""
    if not is_order_ideal(S, ideal):
        raise NotAnIdeal((ideal,))
    X = dual_space(S)
    out = X.full
    for a in bits(ideal):
        out &= X.full & ~points_containing(S, a)
    return out


def ideal_avoiding(S: Semilattice, z: int) -> int:
    """The order-ideal of elements whose point image misses the saturated set.

    Inverse of :func:`points_avoiding`; together they form a dual
    order-isomorphism between order-ideals and saturated sets.
    """
    X = dual_space(S)
    if z not in subbasic_saturated(X):
        raise NotSaturated((z,))
    out = 0
    for a in range(S.n):
        if points_containing(S, a) & z == 0:
            out |= 1 << a
    return out


@dataclass(frozen=True)
class CanonicalExtension:
    """The complete lattice of intersections of saturated-set complements.

    ``elements`` is the carrier (point-set masks over the dual space, in
    canonical order); the embedding sends an element to its point image.
    """

    base: Semilattice
    dual: SSpace
    elements: tuple[int, ...]

    def embed(self, a: int) -> int:
        return points_containing(self.base, a)

    def __contains__(self, mask: int) -> bool:
        return mask in set(self.elements)


@lru_cache(maxsize=None)
def build_extension(S: Semilattice) -> CanonicalExtension:
    X = dual_space(S)
    complements = [X.full & ~z for z in subbasic_saturated(X)]
    family = {X.full}
    for c in complements:
        family |= {f & c for f in family}
    return CanonicalExtension(S, X, canonical_family(family))


def hull(ext: CanonicalExtension, upset: int) -> int:
    """Least extension element containing an upset of the dual point order."""
    if not is_point_upset(ext.dual, upset):
        raise NotAnUpset((upset,))
    out = ext.dual.full
    for z in subbasic_saturated(ext.dual):
        c = ext.dual.full & ~z
        if is_subset(upset, c):
            out &= c
    return out


def ext_join(ext: CanonicalExtension, elems) -> int:
    """Join of any family of extension elements: the hull of their union."""
    u = 0
    for e in elems:
        u |= e
    return hull(ext, u)


def ext_meet(ext: CanonicalExtension, elems) -> int:
    out = ext.dual.full
    for e in elems:
        out &= e
    return out


def closed_open_elements(ext: CanonicalExtension) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Closed elements (meets of embedded filters) and open ones (joins of
    embedded ideals), computed from the definitions.

    Also asserts the structural identities: closed elements are exactly the
    subbasic closed sets and open elements the saturated-set complements.
    """
    S = ext.base
    closed = canonical_family(
        points_extending(S, f) for f in all_filters(S)
    )
    opens_ = canonical_family(
        ext_join(ext, [ext.embed(a) for a in bits(i)]) for i in all_order_ideals(S)
    )
    if closed != subbasic_closed(ext.dual):
        raise RuntimeError("closed elements deviate from the subbasic closed sets")
    sat_complements = canonical_family(
        ext.dual.full & ~z for z in subbasic_saturated(ext.dual)
    )
    if opens_ != sat_complements:
        raise RuntimeError("open elements deviate from the saturated complements")
    return closed, opens_


def verify_dense(ext: CanonicalExtension) -> Report:
    """Every element is a meet of opens above it and a join of closeds below it."""
    rep = Report("dense")
    S, X = ext.base, ext.dual
    elems = set(ext.elements)
    missing = next((a for a in range(S.n) if ext.embed(a) not in elems), None)
    rep.add("embedding", missing is None, None if missing is None else S.label(missing))
    rep.add("has-top", X.full in elems)
    bad_meet = next(
        ((x, y) for x in ext.elements for y in ext.elements if x & y not in elems),
        None,
    )
    rep.add("meet-closed", bad_meet is None, bad_meet)
    if not rep.ok:
        return rep

    def join_in(elems, parts):
        # Least member of the candidate element set above the union; the
        # completion's own join, not the ambient one.
        union = 0
        for p in parts:
            union |= p
        above = [e for e in elems if is_subset(union, e)]
        least = [e for e in above if all(is_subset(e, o) for o in above)]
        return least[0] if least else None

    closed = canonical_family(points_extending(S, f) for f in all_filters(S))
    opens_ = []
    for i in all_order_ideals(S):
        o = join_in(ext.elements, (ext.embed(a) for a in bits(i)))
        if o is None:
            rep.add("join-of-embedded-ideal-exists", False, S.subset_label(i))
            return rep
        opens_.append(o)
    opens_ = canonical_family(opens_)
    for x in ext.elements:
        above = [o for o in opens_ if is_subset(x, o)]
        got = X.full
        for o in above:
            got &= o
        if got != x:
            rep.add("meet-of-opens", False, {"x": X.set_label(x), "got": X.set_label(got)})
            return rep
    rep.add("meet-of-opens", True)
    for x in ext.elements:
        below = [k for k in closed if is_subset(k, x)]
        got = join_in(ext.elements, below)
        if got != x:
            rep.add(
                "join-of-closeds",
                False,
                {"x": X.set_label(x), "got": None if got is None else X.set_label(got)},
            )
            return rep
    rep.add("join-of-closeds", True)
    return rep


def _dually_directed_subsets(S: Semilattice) -> list[int]:
    out = []
    for mask in range(1, 1 << S.n):
        members = list(bits(mask))
        if all(
            any(S.leq(c, a) and S.leq(c, b) for c in members)
            for a in members
            for b in members
        ):
            out.append(mask)
    return out


def _directed_subsets(S: Semilattice) -> list[int]:
    out = []
    for mask in range(1, 1 << S.n):
        members = list(bits(mask))
        if all(
            any(S.leq(a, c) and S.leq(b, c) for c in members)
            for a in members
            for b in members
        ):
            out.append(mask)
    return out


def verify_compact(ext: CanonicalExtension) -> Report:
    """Whenever a meet of embedded elements over a dually directed set lies
    below the join over a directed set, some pair is already comparable."""
    rep = Report("compact")
    S = ext.base
    for d in _dually_directed_subsets(S):
        lhs = ext_meet(ext, (ext.embed(a) for a in bits(d)))
        for u in _directed_subsets(S):
            rhs = ext_join(ext, [ext.embed(b) for b in bits(u)])
            if is_subset(lhs, rhs):
                if not any(
                    S.leq(a, b) for a in bits(d) for b in bits(u)
                ):
                    rep.add(
                        "compact",
                        False,
                        {"D": S.subset_label(d), "U": S.subset_label(u)},
                    )
                    return rep
    rep.add("compact", True)
    return rep


def extension_to_json(ext: CanonicalExtension) -> dict:
    """The extension as a lattice: elements plus the cover relation."""
    elems = ext.elements
    n = len(elems)
    strictly_below = [
        [j for j in range(n) if j != i and is_subset(elems[j], elems[i])]
        for i in range(n)
    ]
    covers = []
    for i in range(n):
        for j in strictly_below[i]:
            if not any(
                k != j and is_subset(elems[j], elems[k]) for k in strictly_below[i]
            ):
                covers.append([j, i])
    return {
        "points": [ext.dual.label(x) for x in range(ext.dual.n_points)],
        "elements": [ext.dual.set_label(e) for e in elems],
        "covers": sorted(covers),
        "embedding": {
            ext.base.label(a): ext.dual.set_label(ext.embed(a))
            for a in range(ext.base.n)
        },
    }


def filter_completion_comparison(S: Semilattice, fi2_limit: int = 32) -> Report:
    """Compare the extension with the meets-of-directed-joins completion built
    inside the lattice of filters of filters.

    Materializes the second filter lattice, the canonical order-embedding of
    elements into it, and the two transfer maps; checks that they are
    mutually inverse lattice isomorphisms fixing the embedded copy of S.
    """
    rep = Report("filter-completion-comparison")
    fi_s, filters = filter_semilattice(S)
    if len(filters) > fi2_limit:
        raise LimitExceeded(("filters", len(filters), fi2_limit))
    fi2 = all_filters(fi_s)
    fi2_set = set(fi2)
    e_tab = tuple(
        mask_of(i for i, f in enumerate(filters) if f >> a & 1) for a in range(S.n)
    )
    rep.add(
        "embedding-lands-in-second-filter-lattice",
        all(e in fi2_set for e in e_tab),
    )

    ideals = all_order_ideals(S)
    union_e = {
        i: mask_of(j for j, f in enumerate(filters) if f & i) for i in ideals
    }
    rep.add("directed-joins-are-filters", all(v in fi2_set for v in union_e.values()))

    c_family = {(1 << len(filters)) - 1}
    for v in union_e.values():
        c_family |= {c & v for c in c_family}
    c_family = canonical_family(c_family)

    ext = build_extension(S)
    X = ext.dual
    irr = irreducible_filters(S)
    irr_idx = [filters.index(p) for p in irr]

    def into_points(fmask: int) -> int:
        return mask_of(p for p, j in enumerate(irr_idx) if fmask >> j & 1)

    def from_points(y: int) -> int:
        out = (1 << len(filters)) - 1
        for i in ideals:
            if is_subset(y, X.full & ~points_avoiding(S, i)):
                out &= union_e[i]
        return out

    image = [into_points(c) for c in c_family]
    rep.add("restriction-lands-in-extension", set(image) <= set(ext.elements))
    rep.add(
        "restriction-bijective",
        len(set(image)) == len(c_family) == len(ext.elements),
    )
    rep.add(
        "round-trip-on-completion",
        all(from_points(into_points(c)) == c for c in c_family),
    )
    rep.add(
        "round-trip-on-extension",
        all(into_points(from_points(v)) == v for v in ext.elements),
    )
    rep.add(
        "order-isomorphism",
        all(
            is_subset(c1, c2) == is_subset(into_points(c1), into_points(c2))
            for c1 in c_family
            for c2 in c_family
        ),
    )
    rep.add(
        "preserves-meets",
        all(
            into_points(c1 & c2) == (into_points(c1) & into_points(c2))
            for c1 in c_family
            for c2 in c_family
        ),
    )

    def c_join(c1: int, c2: int) -> int:
        out = (1 << len(filters)) - 1
        for c in c_family:
            if is_subset(c1 | c2, c):
                out &= c
        return out

    rep.add(
        "preserves-joins",
        all(
            into_points(c_join(c1, c2)) == ext_join(ext, [into_points(c1), into_points(c2)])
            for c1 in c_family
            for c2 in c_family
        ),
    )
    rep.add(
        "fixes-base",
        all(into_points(e_tab[a]) == ext.embed(a) for a in range(S.n)),
    )
    rep.add(
        "directed-joins-map-to-saturated-complements",
        all(
            into_points(union_e[i]) == X.full & ~points_avoiding(S, i) for i in ideals
        ),
    )

    def meet_e_over(fmask: int) -> int:
        out = (1 << len(filters)) - 1
        for a in bits(fmask):
            out &= e_tab[a]
        return out

    rep.add(
        "filter-meets-map-to-closed-sets",
        all(
            into_points(meet_e_over(f)) == points_extending(S, f)
            for f in all_filters(S)
        ),
    )
    rep.payload = {
        "filters": len(filters),
        "second_filter_lattice": len(fi2),
        "completion": len(c_family),
        "extension": len(ext.elements),
    }
    return rep
