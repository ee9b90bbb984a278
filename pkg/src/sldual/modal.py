"""Multirelational spaces, meet-relations and the duality round trips.

A monotone operator on a semilattice is represented on the dual space by a
multirelation pairing points with saturated sets; meet-relations are the
arrows between (multirelational) spaces, composed by the star operation with
the dual of the specialization order as identity.  The functor sending a
relation to its box operator is contravariant, and every construction here
carries its own cross-check against the corresponding extension formula.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._bits import bits, canonical_family, is_subset, mask_of
from .core import Homomorphism, MonotoneSemilattice, Semilattice, validate_monotone
from .errors import NotAnMSSpace, NotComposable, NotInSX
from .maps import order_map, pi_ext
from .extension import ideal_avoiding
from .order import irreducible_filters
from .report import Report
from .space import (
    SSpace,
    DoubleDual,
    closure,
    double_dual_map,
    dual_elements,
    dual_semilattice,
    dual_space,
    element_image,
    specialization,
    subbasic_saturated,
)


@dataclass(frozen=True)
class MultiRelation:
    """Pairs of a point with a saturated set of the same space."""

    space: SSpace
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        zs = set(subbasic_saturated(self.space))
        for x, z in self.pairs:
            if not 0 <= x < self.space.n_points or z not in zs:
                raise NotInSX((x, z))

    def image(self, x: int) -> tuple[int, ...]:
        return canonical_family(z for y, z in self.pairs if y == x)

    def image_of_set(self, mask: int) -> tuple[int, ...]:
        return canonical_family(z for y, z in self.pairs if mask >> y & 1)


def saturated_hitting(X: SSpace, u: int) -> tuple[int, ...]:
    """The saturated sets meeting a dual element u."""
    if u not in set(dual_elements(X)):
        raise NotInSX((u,))
    return canonical_family(z for z in subbasic_saturated(X) if z & u)


def induced_operator(rel: MultiRelation, u: int) -> int:
    """Points all of whose related saturated sets meet u."""
    X = rel.space
    if u not in set(dual_elements(X)):
        raise NotInSX((u,))
    return mask_of(
        x for x in range(X.n_points) if all(z & u for z in rel.image(x))
    )


def check_ms_space(X: SSpace, rel: MultiRelation) -> Report:
    """The two multirelational axioms: box-stability and neighborhood recovery."""
    rep = Report("ms-space")
    sx = dual_elements(X)
    sx_set = set(sx)
    bad = next(
        (u for u in sx if induced_operator(rel, u) not in sx_set), None
    )
    rep.add("operator-lands-in-dual-elements", bad is None, bad)
    zs = subbasic_saturated(X)
    for x in range(X.n_points):
        expected = set(zs)
        for u in sx:
            if induced_operator(rel, u) >> x & 1:
                expected &= set(saturated_hitting(X, u))
        if canonical_family(expected) != rel.image(x):
            rep.add(
                "neighborhoods-recovered",
                False,
                {"x": X.label(x)},
            )
            return rep
    rep.add("neighborhoods-recovered", True)
    return rep


@dataclass(frozen=True)
class MSSpace:
    """A space with a multirelation satisfying the two axioms."""

    space: SSpace
    rel: MultiRelation

    def __post_init__(self) -> None:
        rep = check_ms_space(self.space, self.rel)
        if not rep.ok:
            raise NotAnMSSpace(tuple(c.name for c in rep.failures()))


def dual_multirelation(ms: MonotoneSemilattice) -> MSSpace:
    """The dual space with the multirelation of the operator.

    A point pairs with a saturated set when the operator preimage of its
    filter misses the set's ideal.  The induced operator is checked to agree
    with the upper extension on every dual element.
    """
    S = ms.base
    X = dual_space(S)
    f = order_map(S, S, ms.op)
    pairs = set()
    for p, pf in enumerate(irreducible_filters(S)):
        pre = f.preimage(pf)
        for z in subbasic_saturated(X):
            if pre & ideal_avoiding(S, z) == 0:
                pairs.add((p, z))
    out = MSSpace(X, MultiRelation(X, frozenset(pairs)))
    for u in dual_elements(X):
        if induced_operator(out.rel, u) != pi_ext(f, u):
            raise RuntimeError("multirelation operator deviates from the upper extension")
    return out


@dataclass(frozen=True)
class MeetRelation:
    """A relation between the points of two spaces."""

    source: SSpace
    target: SSpace
    pairs: frozenset[tuple[int, int]]

    def image(self, x: int) -> int:
        return mask_of(y for w, y in self.pairs if w == x)

    def preimage_hits(self, mask: int) -> int:
        """Source points whose image meets the given target set."""
        return mask_of(x for x, y in self.pairs if mask >> y & 1)


def box(t: MeetRelation, u: int) -> int:
    """Source points whose whole image lies inside u."""
    return mask_of(
        x for x in range(t.source.n_points) if is_subset(t.image(x), u)
    )


def is_meet_relation(t: MeetRelation) -> bool:
    sx1 = set(dual_elements(t.source))
    sx2 = dual_elements(t.target)
    if any(box(t, u) not in sx1 for u in sx2):
        return False
    for x in range(t.source.n_points):
        img = t.image(x)
        rebuilt = t.target.full
        for u in sx2:
            if is_subset(img, u):
                rebuilt &= u
        if rebuilt != img:
            return False
    return True


def is_monotone_meet_relation(t: MeetRelation, r1: MSSpace, r2: MSSpace) -> bool:
    """Box-commutation with the induced operators.

    Evaluated both as diagram commutation and by the pointwise saturated-set
    characterization; the two must agree and the common verdict is returned.
    """
    if r1.space != t.source or r2.space != t.target:
        raise NotComposable(("ms-structure-mismatch",))
    if not is_meet_relation(t):
        return False
    sx2 = dual_elements(t.target)
    diagram = all(
        induced_operator(r1.rel, box(t, u)) == box(t, induced_operator(r2.rel, u))
        for u in sx2
    )
    pointwise = True
    for x in range(t.source.n_points):
        img = t.image(x)
        related = {z for y, z in r2.rel.pairs if img >> y & 1}
        nbhd = set(r1.rel.image(x))
        for u in sx2:
            uc = t.target.full & ~u
            if (uc in related) != (t.preimage_hits(uc) in nbhd):
                pointwise = False
                break
        if not pointwise:
            break
    if diagram != pointwise:
        raise RuntimeError("monotonicity characterizations disagree")
    return diagram


def specialization_relation(X: SSpace) -> MeetRelation:
    """The dual of the specialization order: the identity arrow at X."""
    below = specialization(X)
    pairs = frozenset(
        (x, y) for x in range(X.n_points) for y in bits(below[x])
    )
    return MeetRelation(X, X, pairs)


def dual_of_hom(h: Homomorphism) -> MeetRelation:
    """Points of the target dual relate to points extending their preimage."""
    xb, xa = dual_space(h.target), dual_space(h.source)
    pb, pa = irreducible_filters(h.target), irreducible_filters(h.source)
    pairs = set()
    for p, pf in enumerate(pb):
        pre = h.preimage(pf)
        for q, qf in enumerate(pa):
            if is_subset(pre, qf):
                pairs.add((p, q))
    return MeetRelation(xb, xa, frozenset(pairs))


def compose_star(t: MeetRelation, r: MeetRelation) -> MeetRelation:
    """Star composition: relational composition followed by closure.

    ``r`` applies first.  The defining intersection over dual elements is
    cross-checked against the topological closure of the composite image.
    """
    if r.target != t.source:
        raise NotComposable((r.target.n_points, t.source.n_points))
    x3 = t.target
    sx3 = dual_elements(x3)
    pairs = set()
    for x in range(r.source.n_points):
        composite = 0
        for y in bits(r.image(x)):
            composite |= t.image(y)
        star = x3.full
        for u in sx3:
            if is_subset(composite, u):
                star &= u
        if star != closure(x3, composite):
            raise RuntimeError("star composition deviates from topological closure")
        for z in bits(star):
            pairs.add((x, z))
    out = MeetRelation(r.source, x3, frozenset(pairs))
    if not is_meet_relation(out):
        raise RuntimeError("star composition left the meet-relations")
    return out


def transported_multirelation(dd: DoubleDual, rel: MultiRelation) -> MultiRelation:
    """Push a multirelation through a point bijection with matching subbases."""
    pairs = frozenset((dd.bijection[x], dd.image(z)) for x, z in rel.pairs)
    return MultiRelation(dd.target, pairs)


def operator_table(mss: MSSpace) -> tuple[Semilattice, tuple[int, ...], tuple[int, ...]]:
    """The dual algebra of an ms-space: carrier, element masks, operator."""
    alg, elems = dual_semilattice(mss.space)
    index = {e: i for i, e in enumerate(elems)}
    op = tuple(index[induced_operator(mss.rel, e)] for e in elems)
    return alg, elems, op


def duality_roundtrip(arg) -> Report:
    """Both directions of the dual equivalence, verified elementwise.

    For a monotone semilattice: the element-image map is an isomorphism onto
    the dual algebra of its dual ms-space.  For an ms-space: the double-dual
    point map is an isomorphism of ms-spaces onto the dual of its dual
    algebra, with the multirelation transported along it.
    """
    rep = Report("duality-roundtrip")
    if isinstance(arg, MonotoneSemilattice):
        S = arg.base
        mss = dual_multirelation(arg)
        X = mss.space
        beta_tab = element_image(S)
        sx = dual_elements(X)
        rep.add("element-map-injective", len(set(beta_tab)) == S.n)
        rep.add("element-map-onto", set(beta_tab) == set(sx))
        rep.add(
            "preserves-meet",
            all(
                beta_tab[S.meet[a][b]] == beta_tab[a] & beta_tab[b]
                for a in range(S.n)
                for b in range(S.n)
            ),
        )
        rep.add("preserves-top", beta_tab[S.top] == X.full)
        rep.add(
            "intertwines-operator",
            all(
                induced_operator(mss.rel, beta_tab[a]) == beta_tab[arg.op[a]]
                for a in range(S.n)
            ),
        )
        return rep
    if isinstance(arg, MSSpace):
        alg, elems, op = operator_table(arg)
        ms = validate_monotone(alg, op)
        redual = dual_multirelation(ms)
        dd = double_dual_map(arg.space)
        rep.add("points-match", dd.target == redual.space)
        transported = transported_multirelation(dd, arg.rel)
        rep.add(
            "multirelation-transported",
            transported.pairs == redual.rel.pairs,
            {
                "extra": sorted(transported.pairs - redual.rel.pairs),
                "missing": sorted(redual.rel.pairs - transported.pairs),
            },
        )
        back = {
            (x, z)
            for x in range(arg.space.n_points)
            for z in subbasic_saturated(arg.space)
            if (dd.bijection[x], dd.image(z)) in redual.rel.pairs
        }
        rep.add("multirelation-reflected", back == set(arg.rel.pairs))
        return rep
    raise TypeError(f"expected MonotoneSemilattice or MSSpace, got {type(arg)!r}")


def relation_to_json(t: MeetRelation) -> dict:
    return {
        "source_points": [t.source.label(x) for x in range(t.source.n_points)],
        "target_points": [t.target.label(y) for y in range(t.target.n_points)],
        "pairs": sorted([x, y] for x, y in t.pairs),
    }


def multirelation_to_json(rel: MultiRelation) -> dict:
    zs = subbasic_saturated(rel.space)
    zindex = {z: i for i, z in enumerate(zs)}
    return {
        "points": [rel.space.label(x) for x in range(rel.space.n_points)],
        "saturated_sets": [rel.space.set_label(z) for z in zs],
        "pairs": sorted([x, zindex[z]] for x, z in rel.pairs),
    }
