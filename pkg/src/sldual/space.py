"""Finite topological spaces with a distinguished subbase, and dual spaces.

A space is a point count plus a subbase of open-set masks; the constructor
materializes the closure under finite unions (with the empty set adjoined)
so the subbase matches the axioms it is checked against.  Everything derived
from the topology (opens, closures, the specialization order) is generated
on demand and memoized per space; all queries are read-only.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from ._bits import bits, canonical_family, is_subset, mask_of, submasks
from .core import Semilattice
from .errors import NotAnSSpace, NotInSX, YNotClosed
from .order import irreducible_filters
from .report import Report


@dataclass(frozen=True)
class SSpace:
    """Point set 0..n_points-1 with a union-closed subbase of open masks."""

    n_points: int
    subbase: tuple[int, ...]
    point_labels: tuple[str, ...] | None = field(default=None, compare=False)
    provenance: Semilattice | None = field(default=None, compare=False, repr=False)
    _cache: dict = field(default_factory=dict, init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        full = self.full
        if any(u & ~full for u in self.subbase):
            raise NotAnSSpace(("subbase-out-of-range",))
        closed = _union_closure(self.subbase)
        object.__setattr__(self, "subbase", closed)

    @property
    def full(self) -> int:
        return (1 << self.n_points) - 1

    def label(self, x: int) -> str:
        return self.point_labels[x] if self.point_labels is not None else f"x{x}"

    def set_label(self, mask: int) -> str:
        return "{" + ",".join(self.label(x) for x in bits(mask)) + "}"

    def _memo(self, key, thunk):
        if key not in self._cache:
            self._cache[key] = thunk()
        return self._cache[key]


def _union_closure(masks: Iterable[int]) -> tuple[int, ...]:
    family = set(masks)
    family.add(0)
    frontier = list(family)
    while frontier:
        u = frontier.pop()
        for v in list(family):
            w = u | v
            if w not in family:
                family.add(w)
                frontier.append(w)
    return canonical_family(family)


def make_space(n_points: int, subbase: Iterable[int], labels=None) -> SSpace:
    return SSpace(n_points, tuple(subbase), tuple(labels) if labels else None)


# -- derived families --------------------------------------------------------


def dual_elements(X: SSpace) -> tuple[int, ...]:
    """Complements of the subbase members: the carrier of the dual semilattice."""
    return X._memo(
        "dual_elements",
        lambda: canonical_family(X.full & ~u for u in X.subbase),
    )


def subbasic_closed(X: SSpace) -> tuple[int, ...]:
    """The closure system generated by the dual elements (all intersections)."""

    def build():
        family = {X.full}
        for s in dual_elements(X):
            family |= {f & s for f in family}
        return canonical_family(family)

    return X._memo("subbasic_closed", build)


def opens(X: SSpace) -> tuple[int, ...]:
    def build():
        basis = {X.full}
        for u in X.subbase:
            basis |= {b & u for b in basis}
        return _union_closure(basis)

    return X._memo("opens", build)


def closeds(X: SSpace) -> tuple[int, ...]:
    return X._memo("closeds", lambda: canonical_family(X.full & ~o for o in opens(X)))


def closure(X: SSpace, mask: int) -> int:
    """Topological closure in the subbase-generated topology."""
    out = X.full
    for c in closeds(X):
        if is_subset(mask, c):
            out &= c
    return out


def point_closure(X: SSpace, x: int) -> int:
    return closure(X, 1 << x)


def specialization(X: SSpace) -> tuple[int, ...]:
    """Per-point masks ``below[y] = {x : x is in cl(y)}`` of the order x <= y."""
    return X._memo(
        "specialization",
        lambda: tuple(point_closure(X, y) for y in range(X.n_points)),
    )


def point_upsets(X: SSpace) -> tuple[int, ...]:
    """up[x] = cl(x): the points above x in the dual of specialization.

    On a dual space this is filter inclusion: P <= Q iff P is a subset of Q.
    """
    return specialization(X)


def is_point_upset(X: SSpace, mask: int) -> bool:
    ups = point_upsets(X)
    return all(is_subset(ups[x], mask) for x in bits(mask))


def is_saturated(X: SSpace, mask: int) -> bool:
    """Saturated means an intersection of open sets."""
    out = X.full
    for o in opens(X):
        if is_subset(mask, o):
            out &= o
    return out == mask


def is_compact(X: SSpace, mask: int) -> bool:
    """Every subbase cover admits a finite subcover (constructively checked)."""
    k = X.subbase
    for idxs in submasks((1 << len(k)) - 1):
        cover = 0
        chosen = []
        for i in bits(idxs):
            cover |= k[i]
            chosen.append(i)
        if is_subset(mask, cover):
            # Greedily shrink to witness a finite subcover.
            need = mask
            finite = []
            for i in chosen:
                if need & k[i]:
                    finite.append(i)
                    need &= ~k[i]
            if need != 0:
                return False
    return True


def subbasic_saturated(X: SSpace) -> tuple[int, ...]:
    """Intersections of nonempty dually directed subbase families."""

    def build():
        k = X.subbase
        out = set()
        for idxs in submasks((1 << len(k)) - 1):
            if idxs == 0:
                continue
            fam = [k[i] for i in bits(idxs)]
            if all(
                any(is_subset(w, u & v) for w in fam) for u in fam for v in fam
            ):
                inter = X.full
                for u in fam:
                    inter &= u
                out.add(inter)
        return canonical_family(out)

    return X._memo("subbasic_saturated", build)


# -- bounding families and the space axioms ---------------------------------


@dataclass(frozen=True)
class BoundingFamilyWitness:
    """Outcome of the mediated-bound test for a family against a closed set.

    ``witnesses[(a, b)] = (h, c)`` records, for members a and b of the
    family, a dual element h containing the closed set and a family member c
    with a & h <= c and b & h <= c.  ``counterexample`` holds the first pair
    with no such bound when the test fails.
    """

    space: SSpace
    closed_set: int
    family: tuple[int, ...]
    ok: bool
    witnesses: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()
    counterexample: tuple[int, int] | None = None


def check_bounding_family(X: SSpace, y: int, family: Sequence[int]) -> BoundingFamilyWitness:
    """Test the family-bounding condition used by the saturation axiom (S4)."""
    if y not in subbasic_closed(X):
        raise YNotClosed((y,))
    sx = dual_elements(X)
    fam = canonical_family(family)
    if any(a not in sx for a in fam):
        raise NotInSX((fam,))
    hs = [h for h in sx if is_subset(y, h)]
    wits = []
    for a in fam:
        for b in fam:
            found = None
            for h in hs:
                for c in fam:
                    if is_subset(a & h, c) and is_subset(b & h, c):
                        found = (h, c)
                        break
                if found:
                    break
            if found is None:
                return BoundingFamilyWitness(X, y, fam, False, tuple(wits), (a, b))
            wits.append(((a, b), found))
    return BoundingFamilyWitness(X, y, fam, True, tuple(wits), None)


def is_bounding_family(X: SSpace, y: int, family: Sequence[int]) -> bool:
    return check_bounding_family(X, y, family).ok


def _t0_fingerprints(X: SSpace) -> list[int]:
    fp = [0] * X.n_points
    for i, u in enumerate(X.subbase):
        for x in bits(u):
            fp[x] |= 1 << i
    return fp


def check_s_space(X: SSpace, *, cap: int = 12, seed: int = 0, samples: int = 4000) -> Report:
    """Verify the four space axioms, with per-axiom witnesses.

    The quantifier of the saturation axiom ranges over every nonempty
    subfamily of the dual elements; above ``cap`` dual elements it falls back
    to seeded random sampling and the check is reported as partial.
    """
    rep = Report("s-space")
    k = X.subbase
    fps = _t0_fingerprints(X)
    t0_viol = next(
        (
            (x, y)
            for x in range(X.n_points)
            for y in range(x + 1, X.n_points)
            if fps[x] == fps[y]
        ),
        None,
    )
    rep.add("S1-T0", t0_viol is None, t0_viol)
    union = 0
    for u in k:
        union |= u
    rep.add("S1-cover", union == X.full, X.set_label(X.full & ~union))
    rep.add("S2-empty-open", 0 in k)
    rep.add(
        "S2-union-closed",
        all(u | v in k for u in k for v in k),
    )
    noncompact = next((u for u in k if not is_compact(X, u)), None)
    rep.add("S2-compact", noncompact is None, noncompact)

    s3_viol = None
    for u in k:
        for v in k:
            for x in bits(u & v):
                if not any(
                    not w >> x & 1
                    and any(
                        d >> x & 1 and is_subset(d, (u & v) | w) for d in k
                    )
                    for w in k
                ):
                    s3_viol = {"U": X.set_label(u), "V": X.set_label(v), "x": X.label(x)}
                    break
            if s3_viol:
                break
        if s3_viol:
            break
    rep.add("S3", s3_viol is None, s3_viol)

    sx = dual_elements(X)
    m = len(sx)
    partial = m > cap
    s4_viol = None
    # For each closed Y, precompute which family members can bound a pair.
    for y in subbasic_closed(X):
        hs = [h for h in sx if is_subset(y, h)]
        cset = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(i, m):
                ok = 0
                for ci, c in enumerate(sx):
                    if any(
                        is_subset(sx[i] & h, c) and is_subset(sx[j] & h, c)
                        for h in hs
                    ):
                        ok |= 1 << ci
                cset[i][j] = cset[j][i] = ok
        if partial:
            rng = random.Random(seed)
            candidates = (rng.randrange(1, 1 << m) for _ in range(samples))
        else:
            candidates = (j for j in range(1, 1 << m))
        for jmask in candidates:
            idxs = list(bits(jmask))
            if not all(cset[i][j] & jmask for i in idxs for j in idxs):
                continue  # not a bounding family for this Y
            if not all(y & ~sx[i] for i in idxs):
                continue  # hypothesis fails
            hit = 0
            for i in idxs:
                hit |= sx[i]
            if y & ~hit == 0:
                s4_viol = {
                    "Y": X.set_label(y),
                    "family": [X.set_label(sx[i]) for i in idxs],
                }
                break
        if s4_viol:
            break
    rep.add("S4", s4_viol is None, s4_viol, partial=partial)
    return rep


def is_s_space(X: SSpace, **kw) -> bool:
    return check_s_space(X, **kw).ok


# -- dual space of a semilattice ---------------------------------------------


@lru_cache(maxsize=None)
def dual_space(S: Semilattice) -> SSpace:
    """Points are the irreducible filters; the subbase is the co-image of beta.

    The subbase {points not containing a} is already union-closed (unions
    collapse along meets) and contains the empty set at a = top.
    """
    points = irreducible_filters(S)
    full = (1 << len(points)) - 1
    subbase = tuple(full & ~points_containing(S, a) for a in range(S.n))
    labels = tuple(f"P{i + 1}" for i in range(len(points)))
    return SSpace(len(points), subbase, labels, provenance=S)


@lru_cache(maxsize=None)
def points_containing(S: Semilattice, a: int) -> int:
    """The point mask of the irreducible filters containing element a."""
    return mask_of(
        i for i, p in enumerate(irreducible_filters(S)) if p >> a & 1
    )


def element_image(S: Semilattice) -> tuple[int, ...]:
    """The full table a -> points_containing(S, a)."""
    return tuple(points_containing(S, a) for a in range(S.n))


def points_extending(S: Semilattice, f: int) -> int:
    """Points whose filters extend the given filter: the closed set of F."""
    return mask_of(
        i for i, p in enumerate(irreducible_filters(S)) if is_subset(f, p)
    )


def filter_of_closed(S: Semilattice, y: int) -> int:
    """Elements lying in every point of a subbasic closed set; inverse of
    :func:`points_extending` (the two form a dual order-isomorphism)."""
    out = 0
    for a in range(S.n):
        if is_subset(y, points_containing(S, a)):
            out |= 1 << a
    return out


def dual_semilattice(X: SSpace) -> tuple[Semilattice, tuple[int, ...]]:
    """The semilattice of dual elements under intersection, with unit X."""
    elems = dual_elements(X)
    index = {e: i for i, e in enumerate(elems)}
    table = tuple(tuple(index[a & b] for b in elems) for a in elems)
    labels = tuple(X.set_label(e) for e in elems)
    return Semilattice(len(elems), table, index[X.full], labels), elems


@dataclass(frozen=True)
class DoubleDual:
    """The point correspondence between a space and the dual of its dual."""

    source: SSpace
    algebra: Semilattice
    target: SSpace
    bijection: tuple[int, ...]

    def image(self, mask: int) -> int:
        return mask_of(self.bijection[x] for x in bits(mask))

    def preimage(self, mask: int) -> int:
        inv = {v: x for x, v in enumerate(self.bijection)}
        return mask_of(inv[y] for y in bits(mask))


def double_dual_map(X: SSpace) -> DoubleDual:
    """x -> {dual elements containing x}, as a homeomorphism onto the double dual.

    Raises NotAnSSpace when the input fails the space axioms, and when the
    image of a point is not an irreducible filter or the subbase images do
    not match (which the duality theorems rule out for genuine spaces).
    """
    rep = check_s_space(X)
    if not rep.ok:
        raise NotAnSSpace(tuple(c.name for c in rep.failures()))
    alg, elems = dual_semilattice(X)
    target = dual_space(alg)
    points = irreducible_filters(alg)
    index = {p: i for i, p in enumerate(points)}
    bij = []
    for x in range(X.n_points):
        fltr = mask_of(i for i, e in enumerate(elems) if e >> x & 1)
        if fltr not in index:
            raise NotAnSSpace(("image-not-irreducible", x))
        bij.append(index[fltr])
    if len(set(bij)) != X.n_points or len(points) != X.n_points:
        raise NotAnSSpace(("not-bijective",))
    dd = DoubleDual(X, alg, target, tuple(bij))
    if {dd.image(u) for u in X.subbase} != set(target.subbase):
        raise NotAnSSpace(("subbase-mismatch",))
    return dd


# -- DOT export ---------------------------------------------------------------


def _cover_edges(n: int, ups: Sequence[int]) -> list[tuple[int, int]]:
    out = []
    for x in range(n):
        strict = ups[x] & ~(1 << x)
        for y in bits(strict):
            if not any(ups[z] >> y & 1 for z in bits(strict) if z != y):
                out.append((x, y))
    return out


def dot_specialization(X: SSpace) -> str:
    """Hasse diagram of the dual-of-specialization order, in DOT syntax."""
    ups = point_upsets(X)
    lines = ["digraph specialization {", "  rankdir=BT;"]
    for x in range(X.n_points):
        lines.append(f'  "{X.label(x)}";')
    for x, y in _cover_edges(X.n_points, ups):
        lines.append(f'  "{X.label(x)}" -> "{X.label(y)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_membership(S: Semilattice) -> str:
    """Bipartite element/point diagram: an edge when the point contains the element."""
    X = dual_space(S)
    lines = ["digraph membership {", "  rankdir=LR;"]
    for a in range(S.n):
        lines.append(f'  "{S.label(a)}" [shape=box];')
    for x in range(X.n_points):
        lines.append(f'  "{X.label(x)}" [shape=ellipse];')
    for a in range(S.n):
        for x in bits(points_containing(S, a)):
            lines.append(f'  "{S.label(a)}" -> "{X.label(x)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
