import pytest

from sldual._bits import bits, mask_of
from sldual.core import (
    compose_homs,
    homomorphisms,
    identity_hom,
    monotone_operators,
    quotient,
    total_congruence,
    validate_monotone,
)
from sldual.errors import NotAnMSSpace, NotComposable, NotInSX
from sldual.modal import (
    MeetRelation,
    MSSpace,
    MultiRelation,
    box,
    check_ms_space,
    compose_star,
    dual_multirelation,
    dual_of_hom,
    duality_roundtrip,
    induced_operator,
    is_meet_relation,
    is_monotone_meet_relation,
    multirelation_to_json,
    relation_to_json,
    saturated_hitting,
    specialization_relation,
    transported_multirelation,
)
from sldual.order import irreducible_filters, principal_ideal
from sldual.space import (
    double_dual_map,
    dual_elements,
    dual_space,
    element_image,
    points_containing,
    specialization,
    subbasic_saturated,
)
from sldual.vietoris import all_congruences

from .conftest import chain, el, mask


def test_dual_multirelation_identity_unfolds(L):
    ms = validate_monotone(L, list(range(7)))
    mss = dual_multirelation(ms)
    X = mss.space
    pts = irreducible_filters(L)
    for p, pf in enumerate(pts):
        for a in range(7):
            z = X.full & ~points_containing(L, a)
            assert ((p, z) in mss.rel.pairs) == (pf & principal_ideal(L, a) == 0)


def test_dual_multirelation_constant_top(L):
    mss = dual_multirelation(validate_monotone(L, [L.top] * 7))
    assert mss.rel.pairs == frozenset()
    for u in dual_elements(mss.space):
        assert induced_operator(mss.rel, u) == mss.space.full


def test_operator_fixed_point(L):
    ms = validate_monotone(L, list(range(7)))
    mss = dual_multirelation(ms)
    be = points_containing(L, el(L, "e"))
    assert induced_operator(mss.rel, be) == be


def test_operator_on_full_set(L):
    ms = validate_monotone(L, [L.meet[a][el(L, "e")] for a in range(7)])
    mss = dual_multirelation(ms)
    X = mss.space
    expected = mask_of(
        x for x in range(X.n_points) if all(z != 0 for z in mss.rel.image(x))
    )
    assert induced_operator(mss.rel, X.full) == expected


def test_saturated_hitting(L):
    X = dual_space(L)
    assert saturated_hitting(X, 0) == ()
    with pytest.raises(NotInSX):
        saturated_hitting(X, mask(0, 3))
    hits = saturated_hitting(X, points_containing(L, el(L, "e")))
    assert all(z & points_containing(L, el(L, "e")) for z in hits)


def test_operator_matches_upper_extension(small):
    for n, structs in small.items():
        if n > 4:
            continue
        for S in structs:
            tab = element_image(S)
            for m in monotone_operators(S):
                mss = dual_multirelation(validate_monotone(S, m))
                for a in range(S.n):
                    assert induced_operator(mss.rel, tab[a]) == tab[m[a]]


def test_box_of_specialization_is_identity(L):
    X = dual_space(L)
    ident = specialization_relation(X)
    for u in dual_elements(X):
        assert box(ident, u) == u
    assert is_meet_relation(ident)


def test_box_intertwines_homomorphisms(L):
    # beta_B(h(a)) == box_{R_h}(beta_A(a)) with A the source, B the target.
    Q, q = quotient(L, total_congruence(L))
    for h in (identity_hom(L), q):
        rel = dual_of_hom(h)
        for a in range(h.source.n):
            assert box(rel, points_containing(h.source, a)) == points_containing(
                h.target, h(a)
            )


def test_box_of_empty_relation(L):
    X = dual_space(L)
    t = MeetRelation(X, X, frozenset())
    for u in dual_elements(X):
        assert box(t, u) == X.full


def test_meet_relation_rejects_partial_images(L):
    X = dual_space(L)
    t = MeetRelation(X, X, frozenset({(0, 0)}))
    assert not is_meet_relation(t)


def test_monotone_characterizations_and_mismatch():
    S = chain(3)
    ident_op = validate_monotone(S, [0, 1, 2])
    const_top = validate_monotone(S, [2, 2, 2])
    h = identity_hom(S)
    t = dual_of_hom(h)
    ms_id = dual_multirelation(ident_op)
    ms_ct = dual_multirelation(const_top)
    assert is_meet_relation(t)
    assert is_monotone_meet_relation(t, ms_id, ms_id)
    assert not is_monotone_meet_relation(t, ms_ct, ms_id)


def test_identity_laws_for_star(L, small):
    homs = [identity_hom(L)]
    for th in all_congruences(L)[:6]:
        homs.append(quotient(L, th)[1])
    for A in small[3]:
        homs.extend(homomorphisms(A, A))
    for h in homs:
        t = dual_of_hom(h)
        assert compose_star(t, specialization_relation(t.source)).pairs == t.pairs
        assert compose_star(specialization_relation(t.target), t).pairs == t.pairs


def test_functoriality_of_dual_relations(L):
    # R_{g о h} = R_h * R_g for concrete onto homomorphisms out of L.
    cons = all_congruences(L)
    theta = next(th for th in cons if th.n_classes == 6)
    Q, h = quotient(L, theta)
    g = quotient(Q, total_congruence(Q))[1]
    gh = compose_homs(g, h)
    assert dual_of_hom(gh).pairs == compose_star(dual_of_hom(h), dual_of_hom(g)).pairs


def test_star_associativity_exhaustive_small(small):
    structs = small[2] + small[3]
    arrows = []
    for A in structs:
        for B in structs:
            arrows.extend(dual_of_hom(h) for h in homomorphisms(A, B))
    count = 0
    for t1 in arrows:
        for t2 in arrows:
            if t2.target != t1.source:
                continue
            for t3 in arrows:
                if t3.target != t2.source:
                    continue
                lhs = compose_star(compose_star(t1, t2), t3)
                rhs = compose_star(t1, compose_star(t2, t3))
                assert lhs.pairs == rhs.pairs
                count += 1
    assert count > 50


def test_box_functor_law(small):
    structs = small[2] + small[3]
    for A in structs:
        for B in structs:
            for h in homomorphisms(A, B):
                for g in homomorphisms(B, A):
                    t, r = dual_of_hom(h), dual_of_hom(g)
                    star = compose_star(r, t)
                    for u in dual_elements(r.target):
                        assert box(star, u) == box(t, box(r, u))


def test_compose_rejects_mismatched(L):
    t = specialization_relation(dual_space(L))
    r = specialization_relation(dual_space(chain(3)))
    with pytest.raises(NotComposable):
        compose_star(t, r)


def test_ms_space_constructor_rejects_bad_relation(L):
    X = dual_space(L)
    z = next(z for z in subbasic_saturated(X) if z)
    with pytest.raises(NotAnMSSpace):
        MSSpace(X, MultiRelation(X, frozenset({(0, z)})))


def test_duality_roundtrip_L_identity(L):
    ms = validate_monotone(L, list(range(7)))
    assert duality_roundtrip(ms).ok
    assert duality_roundtrip(dual_multirelation(ms)).ok


def test_duality_roundtrip_trivial():
    ms = validate_monotone(chain(1), [0])
    assert duality_roundtrip(ms).ok
    assert duality_roundtrip(dual_multirelation(ms)).ok


def test_transported_multirelation_isomorphism(small):
    # A bijection with matching subbases transports the multirelation to an
    # isomorphic ms-space; its membership pairs pull back exactly.
    for S in small[3] + small[4]:
        for m in monotone_operators(S):
            mss = dual_multirelation(validate_monotone(S, m))
            dd = double_dual_map(mss.space)
            moved = transported_multirelation(dd, mss.rel)
            rep = check_ms_space(dd.target, moved)
            assert rep.ok
            back = {
                (x, z)
                for x in range(mss.space.n_points)
                for z in subbasic_saturated(mss.space)
                if (dd.bijection[x], dd.image(z)) in moved.pairs
            }
            assert back == set(mss.rel.pairs)


def _pair_relations_from_bijection(mss, dd, moved):
    # The two relations a structure bijection induces, in both directions.
    below_t = specialization(dd.target)
    rf = set()
    tf = set()
    for x in range(mss.space.n_points):
        for y in range(mss.space.n_points):
            if below_t[dd.bijection[x]] >> dd.bijection[y] & 1:
                rf.add((x, dd.bijection[y]))
            if below_t[dd.bijection[y]] >> dd.bijection[x] & 1:
                tf.add((dd.bijection[y], x))
    return (
        MeetRelation(mss.space, dd.target, frozenset(rf)),
        MeetRelation(dd.target, mss.space, frozenset(tf)),
    )


def test_bijections_induce_inverse_relations(small):
    for S in small[3] + small[4]:
        for m in list(monotone_operators(S))[:5]:
            mss = dual_multirelation(validate_monotone(S, m))
            dd = double_dual_map(mss.space)
            moved = MSSpace(dd.target, transported_multirelation(dd, mss.rel))
            rf, tf = _pair_relations_from_bijection(mss, dd, moved.rel)
            assert is_monotone_meet_relation(rf, mss, moved)
            assert is_monotone_meet_relation(tf, moved, mss)
            assert compose_star(rf, tf).pairs == specialization_relation(dd.target).pairs
            assert compose_star(tf, rf).pairs == specialization_relation(mss.space).pairs


def test_dual_specialization_is_monotone_meet_relation(small):
    for S in small[2] + small[3] + small[4]:
        for m in list(monotone_operators(S))[:6]:
            mss = dual_multirelation(validate_monotone(S, m))
            ident = specialization_relation(mss.space)
            assert is_monotone_meet_relation(ident, mss, mss)


def test_monotone_hom_iff_monotone_relation(small):
    # The dual relation of a homomorphism commutes with the operators exactly
    # when the homomorphism does.
    structs = small[2] + small[3]
    for A in structs:
        for B in structs:
            homs = list(homomorphisms(A, B))
            for ma in list(monotone_operators(A))[:4]:
                msa = dual_multirelation(validate_monotone(A, ma))
                for mb in list(monotone_operators(B))[:4]:
                    msb = dual_multirelation(validate_monotone(B, mb))
                    for h in homs:
                        compatible = all(
                            h.map[ma[a]] == mb[h.map[a]] for a in range(A.n)
                        )
                        assert compatible == is_monotone_meet_relation(
                            dual_of_hom(h), msb, msa
                        )


def test_relation_json(L):
    t = specialization_relation(dual_space(L))
    data = relation_to_json(t)
    assert data["source_points"] == ["P1", "P2", "P3", "P4"]
    assert [3, 2] in data["pairs"]
    ms = validate_monotone(L, list(range(7)))
    data2 = multirelation_to_json(dual_multirelation(ms).rel)
    assert len(data2["points"]) == 4
