"""Filters, irreducible filters, order-ideals and relative ideals.

Family-valued operations return tuples of bitmasks in canonical order
(lexicographic on the sorted member tuple), so repeated runs and golden
files line up exactly.  The separation theorems are implemented as
constructive searches over the irreducible filters; the theorems guarantee
the search succeeds whenever the preconditions hold.
"""

from __future__ import annotations

from functools import lru_cache

from ._bits import bits, canonical_family, is_subset
from .core import Semilattice
from .errors import NotADownset, NotDisjoint, NotProper, SeparationFailed


def is_filter(S: Semilattice, mask: int) -> bool:
    """Upset containing top and closed under meet."""
    if not mask >> S.top & 1:
        return False
    if not S.is_upset(mask):
        return False
    members = list(bits(mask))
    return all(mask >> S.meet[a][b] & 1 for a in members for b in members)


@lru_cache(maxsize=None)
def all_filters(S: Semilattice) -> tuple[int, ...]:
    """Every filter of S, canonically ordered; contains [top) and the carrier."""
    # n <= ~8 throughout, so scanning all upsets is cheap and obviously right.
    out = []
    for mask in range(1 << S.n):
        if mask >> S.top & 1 and is_filter(S, mask):
            out.append(mask)
    return canonical_family(out)


def generated_filter(S: Semilattice, subset: int) -> int:
    """Least filter containing the given subset; the empty set yields [top)."""
    current = subset | 1 << S.top
    while True:
        nxt = current
        for a in bits(current):
            nxt |= S.up[a]
            for b in bits(current):
                nxt |= 1 << S.meet[a][b]
        if nxt == current:
            return current
        current = nxt


def principal_filter(S: Semilattice, a: int) -> int:
    return S.up[a]


def principal_ideal(S: Semilattice, a: int) -> int:
    return S.down[a]


def is_proper_filter(S: Semilattice, mask: int) -> bool:
    return is_filter(S, mask) and mask != S.carrier


def is_irreducible(S: Semilattice, f: int) -> bool:
    """Definition-based: no decomposition F = F1 /\\ F2 with both strictly larger."""
    if not is_proper_filter(S, f):
        return False
    larger = [g for g in all_filters(S) if g != f and is_subset(f, g)]
    return all(g1 & g2 != f for g1 in larger for g2 in larger)


def is_irreducible_char(S: Semilattice, f: int) -> bool:
    """Bound-based characterization of irreducibility for a proper filter.

    True iff every pair a, b outside F admits c outside F and f in F with
    a /\\ f <= c and b /\\ f <= c.  Must agree with :func:`is_irreducible`
    on every proper filter; the test suite asserts that exhaustively.
    """
    if not is_filter(S, f):
        raise NotProper((f,))
    if f == S.carrier:
        raise NotProper((f,))
    outside = [a for a in range(S.n) if not f >> a & 1]
    inside = list(bits(f))
    for a in outside:
        for b in outside:
            if not any(
                S.leq(S.meet[a][w], c) and S.leq(S.meet[b][w], c)
                for c in outside
                for w in inside
            ):
                return False
    return True


@lru_cache(maxsize=None)
def irreducible_filters(S: Semilattice) -> tuple[int, ...]:
    """The proper filters that admit no proper intersection decomposition."""
    return tuple(f for f in all_filters(S) if f != S.carrier and is_irreducible(S, f))


def is_order_ideal(S: Semilattice, mask: int) -> bool:
    """Nonempty directed downset."""
    if mask == 0 or not S.is_downset(mask):
        return False
    members = list(bits(mask))
    return all(
        any(S.leq(a, c) and S.leq(b, c) for c in members)
        for a in members
        for b in members
    )


@lru_cache(maxsize=None)
def all_order_ideals(S: Semilattice) -> tuple[int, ...]:
    """Every order-ideal; in the finite case these are the principal downsets."""
    out = [mask for mask in range(1, 1 << S.n) if is_order_ideal(S, mask)]
    return canonical_family(out)


def is_F_ideal(S: Semilattice, f: int, ideal: int) -> bool:
    """Downset whose pairs are commonly bounded after meeting with some f in F.

    The empty downset qualifies vacuously; order-ideals relative to F = [top)
    reduce to plain directedness.
    """
    if not S.is_downset(ideal):
        raise NotADownset((ideal,))
    members = list(bits(ideal))
    inside = list(bits(f))
    return all(
        any(
            ideal >> c & 1 and S.leq(S.meet[a][w], c) and S.leq(S.meet[b][w], c)
            for c in members
            for w in inside
        )
        for a in members
        for b in members
    )


def separate(S: Semilattice, f: int, ideal: int) -> int:
    """An irreducible filter P with F <= P and P disjoint from the ideal.

    `ideal` may be an order-ideal or an F-ideal relative to `f`; existence is
    the separation theorem, so an exhausted search raises SeparationFailed.
    Ties break to the least irreducible filter in canonical order.
    """
    if f & ideal:
        raise NotDisjoint((f & ideal,))
    for p in irreducible_filters(S):
        if is_subset(f, p) and p & ideal == 0:
            return p
    raise SeparationFailed((f, ideal))


def filter_semilattice(S: Semilattice) -> tuple[Semilattice, tuple[int, ...]]:
    """The semilattice of all filters of S under intersection, with unit A.

    Returns the structure together with the canonical filter list indexing
    its elements.
    """
    filters = all_filters(S)
    index = {f: i for i, f in enumerate(filters)}
    table = tuple(
        tuple(index[f & g] for g in filters) for f in filters
    )
    labels = tuple(S.subset_label(f) for f in filters)
    return Semilattice(len(filters), table, index[S.carrier], labels), filters


def filter_join(S: Semilattice, fs) -> int:
    """Join in the complete lattice of filters: the filter generated by the union."""
    u = 0
    for f in fs:
        u |= f
    return generated_filter(S, u)
