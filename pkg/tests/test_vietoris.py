import pytest

from sldual._bits import bits, mask_of
from sldual.core import (
    Homomorphism,
    homomorphisms,
    identity_congruence,
    identity_hom,
    quotient,
    total_congruence,
    validate_monotone,
)
from sldual.errors import NotAVietorisFamily, NotMIncreasing, NotOneToOne
from sldual.modal import dual_multirelation, dual_of_hom, specialization_relation
from sldual.order import all_filters
from sldual.space import dual_space
from sldual.vietoris import (
    VietorisFamily,
    all_congruences,
    check_vietoris_family,
    congruence_filter_duality,
    congruence_lattice_json,
    congruence_of_family,
    family_of_congruence,
    family_of_relation,
    hit_increasing_violation,
    hit_members,
    induced_multirelation,
    is_one_to_one,
    make_family,
    monotone_family_check,
    quotient_family_space,
    relation_of_family,
    saturated_filters,
    algebraic_filter_subsets,
    vietoris_lattice,
)

from .conftest import chain, el, mask


def P(L, *names):
    order = {"P1": 0, "P2": 1, "P3": 2, "P4": 3}
    return mask(*(order[n] for n in names))


@pytest.fixture(scope="module")
def id_family(L):
    return family_of_relation(dual_of_hom(identity_hom(L)))


def test_family_of_identity_relation(L, id_family):
    assert id_family.members == (
        P(L, "P1"),
        P(L, "P2"),
        P(L, "P3"),
        P(L, "P3", "P4"),
    )


def test_hit_sets_match_worked_example(L, id_family):
    expected = {
        "0": [P(L, "P1"), P(L, "P2"), P(L, "P3"), P(L, "P3", "P4")],
        "a": [P(L, "P2"), P(L, "P3"), P(L, "P3", "P4")],
        "b": [P(L, "P1"), P(L, "P3"), P(L, "P3", "P4")],
        "c": [P(L, "P1"), P(L, "P2"), P(L, "P3", "P4")],
        "d": [P(L, "P1"), P(L, "P2")],
        "e": [P(L, "P3", "P4")],
        "1": [],
    }
    for name, members in expected.items():
        assert list(hit_members(L, id_family, el(L, name))) == sorted(
            members, key=lambda m: tuple(bits(m))
        )


def test_hit_subbase_is_not_a_base(L, id_family):
    ha = set(hit_members(L, id_family, el(L, "a")))
    hd = set(hit_members(L, id_family, el(L, "d")))
    inter = ha & hd
    assert inter == {P(L, "P2")}
    m = [set(hit_members(L, id_family, a)) for a in range(7)]
    assert inter not in m


def test_one_to_one_examples(L):
    assert is_one_to_one(dual_of_hom(identity_hom(L)))
    assert is_one_to_one(specialization_relation(dual_space(L)))
    emb = Homomorphism(chain(2), chain(3), (0, 2))
    assert not is_one_to_one(dual_of_hom(emb))


def test_one_to_one_iff_onto(L, small):
    homs = [identity_hom(L)]
    for th in all_congruences(L):
        homs.append(quotient(L, th)[1])
    structs = [s for ss in small.values() for s in ss]
    for A in structs:
        for B in structs:
            homs.extend(homomorphisms(A, B))
    for h in homs:
        assert is_one_to_one(dual_of_hom(h)) == h.is_onto()


def test_one_to_one_images_nonempty(L):
    for th in all_congruences(L):
        t = dual_of_hom(quotient(L, th)[1])
        for x in range(t.source.n_points):
            assert t.image(x) != 0


def test_family_relation_roundtrips(L, id_family):
    t = relation_of_family(id_family)
    assert family_of_relation(t).members == id_family.members
    for th in all_congruences(L):
        rel = dual_of_hom(quotient(L, th)[1])
        fam = family_of_relation(rel)
        t2 = relation_of_family(fam)
        member_index = {m: i for i, m in enumerate(fam.members)}
        for x in range(rel.source.n_points):
            for p in range(rel.target.n_points):
                assert ((x, p) in rel.pairs) == (
                    (member_index[rel.image(x)], p) in t2.pairs
                )


def test_check_family_accepts_and_rejects(L, id_family):
    assert check_vietoris_family(dual_space(L), id_family.members).ok
    assert check_vietoris_family(dual_space(L), (P(L, "P1"),)).ok
    with pytest.raises(NotAVietorisFamily):
        make_family(dual_space(L), (0,))
    with pytest.raises(NotAVietorisFamily):
        make_family(dual_space(L), (P(L, "P1", "P4"),))  # not subbasic closed


def test_family_of_relation_requires_one_to_one():
    emb = Homomorphism(chain(2), chain(3), (0, 2))
    with pytest.raises(NotOneToOne):
        family_of_relation(dual_of_hom(emb))


def test_congruence_of_identity_family(L, id_family):
    th = congruence_of_family(L, id_family)
    assert th.classes == identity_congruence(L).classes


def test_family_of_total_congruence_is_empty(L):
    fam = family_of_congruence(L, total_congruence(L))
    assert fam.members == ()
    assert check_vietoris_family(dual_space(L), ()).ok
    assert congruence_of_family(L, fam).n_classes == 1


def test_congruence_family_roundtrips(small, L):
    for S in [L] + [s for ss in small.values() for s in ss]:
        for th in all_congruences(S):
            fam = family_of_congruence(S, th)
            assert congruence_of_family(S, fam).classes == th.classes
        fams = {family_of_congruence(S, th).members for th in all_congruences(S)}
        for members in fams:
            fam = VietorisFamily(dual_space(S), members)
            th = congruence_of_family(S, fam)
            assert family_of_congruence(S, th).members == members


def test_congruence_counts(L):
    assert len(all_congruences(chain(2))) == 2
    assert len(all_congruences(L)) == 38
    assert len(all_congruences(L, list(range(7)))) == 38


def test_vietoris_lattice_2chain():
    vl = vietoris_lattice(dual_space(chain(2)))
    assert len(vl.families) == 2
    assert vl.report.ok


def test_vietoris_lattice_L(L):
    vl = vietoris_lattice(dual_space(L))
    assert vl.report.ok
    assert len(vl.families) == len(all_congruences(L)) == 38


def test_vietoris_lattice_monotone_L(L):
    ms = validate_monotone(L, list(range(7)))
    vl = vietoris_lattice(dual_space(L), dual_multirelation(ms))
    assert vl.report.ok
    assert len(vl.families) == 38


def test_monotone_family_checks_on_quotients(L):
    ms = validate_monotone(L, list(range(7)))
    mss = dual_multirelation(ms)
    for th in all_congruences(L, ms.op):
        fam = family_of_congruence(L, th)
        assert monotone_family_check(mss, fam.members).ok


def test_hit_increase_witness_frozen():
    # Smallest witness found by exhaustive search over n <= 4: the 3-chain
    # with the predecessor operator; the singleton family {beta(1)} is a
    # perfectly good plain family but its related set is not hit-increasing.
    S = chain(3)
    ms = validate_monotone(S, (0, 0, 1))
    mss = dual_multirelation(ms)
    members = (mask(0),)
    assert check_vietoris_family(mss.space, members).ok
    fam = VietorisFamily(mss.space, members)
    assert hit_increasing_violation(mss, fam) is not None
    assert not monotone_family_check(mss, members).ok
    with pytest.raises(NotMIncreasing):
        induced_multirelation(mss, fam)


def test_induced_multirelation_identity_case(L):
    ms = validate_monotone(L, list(range(7)))
    mss = dual_multirelation(ms)
    fam = family_of_relation(dual_of_hom(identity_hom(L)))
    out = induced_multirelation(mss, fam)
    # The family space of the identity is a copy of the dual space; the
    # induced multirelation must mirror the original one along it.
    lam = {q: fam.members.index(dual_of_hom(identity_hom(L)).image(q)) for q in range(4)}
    moved = {
        (lam[q], mask_of(lam[p] for p in bits(z)))
        for q, z in mss.rel.pairs
    }
    assert moved == set(out.rel.pairs)


def test_quotient_family_space_reports(L, small):
    ms = validate_monotone(L, list(range(7)))
    for th in all_congruences(L, ms.op)[:8]:
        Q, q = quotient(L, th)
        opq = tuple(
            th.class_of[ms.op[min(bits(th.classes[i]))]] for i in range(Q.n)
        )
        rep = quotient_family_space(q, ms, validate_monotone(Q, opq))
        assert rep.ok, [c.name for c in rep.failures()]


def test_quotient_family_space_all_small_onto_homs(small):
    # Every onto monotone homomorphism between instances with <= 3 elements.
    from sldual.core import monotone_operators

    structs = small[1] + small[2] + small[3]
    checked = 0
    for A in structs:
        for B in structs:
            onto_homs = [h for h in homomorphisms(A, B) if h.is_onto()]
            if not onto_homs:
                continue
            for ma in monotone_operators(A):
                msa = validate_monotone(A, ma)
                for mb in monotone_operators(B):
                    msb = validate_monotone(B, mb)
                    for h in onto_homs:
                        if not all(h.map[ma[a]] == mb[h.map[a]] for a in range(A.n)):
                            continue
                        rep = quotient_family_space(h, msa, msb)
                        assert rep.ok, [c.name for c in rep.failures()]
                        checked += 1
    assert checked == 43  # regression: compatible onto arrows at this size


def test_congruence_filter_duality_examples(L):
    assert congruence_filter_duality(chain(2)).ok
    rep = congruence_filter_duality(L)
    assert rep.ok
    assert saturated_filters(L, identity_congruence(L)) == all_filters(L)


def test_directed_join_closure_is_automatic(small):
    # Finitely, intersection-closed families containing the improper filter
    # are already closed under directed joins.
    for structs in small.values():
        for S in structs:
            filters = all_filters(S)
            with_dj = set(algebraic_filter_subsets(S))
            without = set()
            from sldual._bits import submasks

            for picks in submasks((1 << len(filters)) - 1):
                fam = [filters[i] for i in bits(picks)]
                sfam = set(fam)
                if S.carrier not in sfam:
                    continue
                if any(a & b not in sfam for a in fam for b in fam):
                    continue
                without.add(tuple(sorted(fam)))
            assert {tuple(sorted(f)) for f in with_dj} == without


def test_congruence_lattice_json(L):
    data = congruence_lattice_json(L)
    assert len(data["congruences"]) == 38
    assert all(len(c) == 2 for c in data["covers"])
    idx = next(
        i
        for i, c in enumerate(data["congruences"])
        if len(c["classes"]) == 7
    )
    assert data["congruences"][idx]["family"] == ["{P1}", "{P2}", "{P3}", "{P3,P4}"]
