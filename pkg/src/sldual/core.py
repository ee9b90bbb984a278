"""Finite meet-semilattices with a greatest element.

Carriers are dense integer indices 0..n-1 and subsets are bitmasks; labels
are display metadata only.  Every structure validates in its constructor and
is immutable afterwards, so all operations are pure functions and instances
can be processed in parallel without shared state.

A bottom element is never assumed by the algorithms here, although finite
meet-semilattices with a unit always happen to have one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from ._bits import bits, subset_key, submasks
from .errors import (
    BadUnit,
    MalformedTable,
    NotACongruence,
    NotAHomomorphism,
    NotAssociative,
    NotCommutative,
    NotIdempotent,
    NotMonotone,
)


@dataclass(frozen=True)
class Semilattice:
    """A meet table over 0..n-1 with unit ``top``.

    The derived order is ``a <= b  iff  meet[a][b] == a``; ``up[a]`` and
    ``down[a]`` are bitmasks of its principal up- and down-sets.  Equality
    and hashing ignore labels.
    """

    n: int
    meet: tuple[tuple[int, ...], ...]
    top: int
    labels: tuple[str, ...] | None = field(default=None, compare=False)
    up: tuple[int, ...] = field(init=False, compare=False, repr=False)
    down: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        n, t = self.n, self.meet
        if n <= 0 or len(t) != n or any(len(row) != n for row in t):
            raise MalformedTable(("shape", n))
        if any(not 0 <= v < n for row in t for v in row):
            raise MalformedTable(("entry-range", n))
        if not 0 <= self.top < n:
            raise MalformedTable(("top-range", self.top))
        if self.labels is not None and (
            len(self.labels) != n or len(set(self.labels)) != n
        ):
            raise MalformedTable(("labels", self.labels))
        for a in range(n):
            if t[a][a] != a:
                raise NotIdempotent((a,))
        for a in range(n):
            for b in range(a + 1, n):
                if t[a][b] != t[b][a]:
                    raise NotCommutative((a, b))
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise NotAssociative((a, b, c))
        for a in range(n):
            if t[a][self.top] != a:
                raise BadUnit((a,))
        up = [0] * n
        down = [0] * n
        for a in range(n):
            for b in range(n):
                if t[a][b] == a:
                    up[a] |= 1 << b
                    down[b] |= 1 << a
        object.__setattr__(self, "up", tuple(up))
        object.__setattr__(self, "down", tuple(down))

    def leq(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a

    def meet_of(self, elems) -> int:
        """Meet of any finite collection; the empty meet is ``top``."""
        out = self.top
        for x in elems:
            out = self.meet[out][x]
        return out

    @property
    def carrier(self) -> int:
        return (1 << self.n) - 1

    def bottom(self) -> int:
        return self.meet_of(range(self.n))

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    def subset_label(self, mask: int) -> str:
        return "{" + ",".join(self.label(a) for a in bits(mask)) + "}"

    def is_upset(self, mask: int) -> bool:
        return all(self.up[a] & ~mask == 0 for a in bits(mask))

    def is_downset(self, mask: int) -> bool:
        return all(self.down[a] & ~mask == 0 for a in bits(mask))

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs (a, b) with a < b and nothing strictly between."""
        out = []
        for a in range(self.n):
            strict = self.up[a] & ~(1 << a)
            for b in bits(strict):
                between = strict & self.down[b] & ~(1 << b)
                if between == 0:
                    out.append((a, b))
        return out


def validate_semilattice(
    meet_table: Sequence[Sequence[int]], top: int, labels: Sequence[str] | None = None
) -> Semilattice:
    """Validate a raw meet table and return the structure with derived order."""
    table = tuple(tuple(row) for row in meet_table)
    return Semilattice(len(table), table, top, tuple(labels) if labels else None)


def leq(S: Semilattice, a: int, b: int) -> bool:
    """a <= b in the derived order, i.e. a == a /\\ b."""
    return S.leq(a, b)


@dataclass(frozen=True)
class MonotoneSemilattice:
    """A semilattice together with an order-preserving unary operation."""

    base: Semilattice
    op: tuple[int, ...]

    def __post_init__(self) -> None:
        S, m = self.base, self.op
        if len(m) != S.n or any(not 0 <= v < S.n for v in m):
            raise MalformedTable(("operator", m))
        for a in range(S.n):
            for b in bits(S.up[a]):
                if not S.leq(m[a], m[b]):
                    raise NotMonotone((a, b))

    @property
    def n(self) -> int:
        return self.base.n


def validate_monotone(S: Semilattice, m: Sequence[int]) -> MonotoneSemilattice:
    return MonotoneSemilattice(S, tuple(m))


@dataclass(frozen=True)
class Homomorphism:
    """A top- and meet-preserving map between semilattices."""

    source: Semilattice
    target: Semilattice
    map: tuple[int, ...]

    def __post_init__(self) -> None:
        h, A, B = self.map, self.source, self.target
        if len(h) != A.n or any(not 0 <= v < B.n for v in h):
            raise MalformedTable(("map", h))
        if h[A.top] != B.top:
            raise NotAHomomorphism(("top", A.top))
        for a in range(A.n):
            for b in range(a, A.n):
                if h[A.meet[a][b]] != B.meet[h[a]][h[b]]:
                    raise NotAHomomorphism((a, b))

    def __call__(self, a: int) -> int:
        return self.map[a]

    def is_onto(self) -> bool:
        return len(set(self.map)) == self.target.n

    def preimage(self, mask: int) -> int:
        """Preimage of a target subset, as a source subset mask."""
        out = 0
        for a, v in enumerate(self.map):
            if mask >> v & 1:
                out |= 1 << a
        return out


def identity_hom(S: Semilattice) -> Homomorphism:
    return Homomorphism(S, S, tuple(range(S.n)))


def compose_homs(g: Homomorphism, h: Homomorphism) -> Homomorphism:
    """g after h; sources and targets must chain."""
    if h.target != g.source:
        raise NotAHomomorphism(("compose", "target/source mismatch"))
    return Homomorphism(h.source, g.target, tuple(g.map[v] for v in h.map))


def is_monotone_hom(
    h: Homomorphism, ma: MonotoneSemilattice, mb: MonotoneSemilattice
) -> bool:
    """Does h carry the source operator to the target operator?"""
    return all(h.map[ma.op[a]] == mb.op[h.map[a]] for a in range(h.source.n))


@dataclass(frozen=True)
class Congruence:
    """A meet-compatible partition, stored as canonically sorted class masks."""

    base: Semilattice
    classes: tuple[int, ...]
    class_of: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        S = self.base
        seen = 0
        class_of = [-1] * S.n
        for i, c in enumerate(self.classes):
            if c == 0 or seen & c:
                raise NotACongruence(("not-a-partition", i))
            seen |= c
            for a in bits(c):
                class_of[a] = i
        if seen != S.carrier:
            raise NotACongruence(("not-a-partition", "incomplete"))
        if list(self.classes) != sorted(self.classes, key=subset_key):
            raise NotACongruence(("not-canonical",))
        for c in self.classes:
            members = list(bits(c))
            for a in members:
                for b in members:
                    if b <= a:
                        continue
                    for x in range(S.n):
                        if class_of[S.meet[a][x]] != class_of[S.meet[b][x]]:
                            raise NotACongruence((a, b, x))
        object.__setattr__(self, "class_of", tuple(class_of))

    def related(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def respects_operator(self, op: Sequence[int]) -> bool:
        return all(
            self.class_of[op[a]] == self.class_of[op[b]]
            for c in self.classes
            for a in bits(c)
            for b in bits(c)
        )


def congruence(S: Semilattice, blocks) -> Congruence:
    """Build a congruence from any iterable of blocks (iterables or masks)."""
    masks = []
    for blk in blocks:
        masks.append(blk if isinstance(blk, int) else sum(1 << a for a in blk))
    return Congruence(S, tuple(sorted(masks, key=subset_key)))


def identity_congruence(S: Semilattice) -> Congruence:
    return Congruence(S, tuple(1 << a for a in range(S.n)))


def total_congruence(S: Semilattice) -> Congruence:
    return Congruence(S, (S.carrier,))


def kernel_congruence(h: Homomorphism) -> Congruence:
    fibers: dict[int, int] = {}
    for a, v in enumerate(h.map):
        fibers[v] = fibers.get(v, 0) | 1 << a
    return congruence(h.source, fibers.values())


def quotient(S: Semilattice, theta: Congruence) -> tuple[Semilattice, Homomorphism]:
    """The quotient semilattice and its natural onto homomorphism."""
    if theta.base != S:
        raise NotACongruence(("base-mismatch",))
    reps = [next(bits(c)) for c in theta.classes]
    table = tuple(
        tuple(theta.class_of[S.meet[ra][rb]] for rb in reps) for ra in reps
    )
    labels = tuple("|".join(S.label(a) for a in bits(c)) for c in theta.classes)
    Q = Semilattice(len(reps), table, theta.class_of[S.top], labels)
    return Q, Homomorphism(S, Q, theta.class_of)


# ---------------------------------------------------------------------------
# Enumeration of small instances, one representative per isomorphism class.


def _downclosed_choices(prefix_downs: list[int], i: int) -> Iterator[int]:
    # Subsets of {0..i-1} that are downsets of the order built so far.
    full = (1 << i) - 1
    for sub in submasks(full):
        ok = True
        for j in bits(sub):
            if prefix_downs[j] & ~sub:
                ok = False
                break
        if ok:
            yield sub


def _table_from_downsets(n: int, down: list[int]) -> tuple[tuple[int, ...], ...] | None:
    # meet(a, b) = greatest common lower bound, if every pair has one.
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            common = down[a] & down[b]
            m = -1
            for x in bits(common):
                if common & ~down[x] == 0:
                    m = x
                    break
            if m < 0:
                return None
            table[a][b] = table[b][a] = m
    return tuple(tuple(row) for row in table)


def _canonical_table(table, n: int) -> tuple[int, ...]:
    # Minimum relabelling over permutations fixing the (unique) top at n-1.
    best = None
    for p in itertools.permutations(range(n - 1)):
        perm = p + (n - 1,)
        out = [0] * (n * n)
        for a in range(n):
            pa = perm[a]
            for b in range(n):
                out[pa * n + perm[b]] = perm[table[a][b]]
        key = tuple(out)
        if best is None or key < best:
            best = key
    assert best is not None
    return best


def semilattices_of_size(n: int) -> Iterator[Semilattice]:
    """All n-element semilattices up to isomorphism, in a deterministic order.

    Naturally labelled posets with greatest element n-1 are generated by
    choosing each element's strict down-set among the earlier elements; those
    with all binary meets are kept and deduplicated by canonical relabelling.
    """
    if n == 1:
        yield Semilattice(1, ((0,),), 0)
        return
    seen: set[tuple[int, ...]] = set()
    down = [0] * n
    full = (1 << n) - 1

    def rec(i: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if i == n - 1:
            down[i] = full
            table = _table_from_downsets(n, down)
            if table is not None:
                yield table
            return
        for sub in _downclosed_choices(down, i):
            down[i] = sub | 1 << i
            yield from rec(i + 1)

    for table in rec(0):
        key = _canonical_table(table, n)
        seen.add(key)
    for key in sorted(seen):
        table = tuple(tuple(key[a * n + b] for b in range(n)) for a in range(n))
        yield Semilattice(n, table, n - 1)


def enumerate_semilattices(n_max: int) -> Iterator[Semilattice]:
    """Stream every semilattice with 1..n_max elements, up to isomorphism."""
    for n in range(1, n_max + 1):
        yield from semilattices_of_size(n)


def monotone_operators(S: Semilattice) -> Iterator[tuple[int, ...]]:
    """All order-preserving unary operations on S, lexicographically."""
    n = S.n
    m = [0] * n

    def rec(a: int) -> Iterator[tuple[int, ...]]:
        if a == n:
            yield tuple(m)
            return
        for v in range(n):
            ok = True
            for b in range(a):
                if S.leq(a, b) and not S.leq(v, m[b]):
                    ok = False
                    break
                if S.leq(b, a) and not S.leq(m[b], v):
                    ok = False
                    break
            if ok:
                m[a] = v
                yield from rec(a + 1)

    yield from rec(0)


def homomorphisms(A: Semilattice, B: Semilattice) -> Iterator[Homomorphism]:
    """All homomorphisms A -> B, by exhaustive search with pruning."""
    h = [0] * A.n

    def rec(a: int) -> Iterator[Homomorphism]:
        if a == A.n:
            # Pruning above only sees meets of already-assigned pairs.
            if all(
                h[A.meet[x][y]] == B.meet[h[x]][h[y]]
                for x in range(A.n)
                for y in range(x, A.n)
            ):
                yield Homomorphism(A, B, tuple(h))
            return
        for v in range(B.n):
            if a == A.top and v != B.top:
                continue
            ok = True
            for x in range(a):
                m = A.meet[x][a]
                if m == a:
                    if B.meet[h[x]][v] != v:
                        ok = False
                        break
                elif m < a and B.meet[h[x]][v] != h[m]:
                    ok = False
                    break
            if ok:
                h[a] = v
                yield from rec(a + 1)

    yield from rec(0)
