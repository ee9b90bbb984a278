import pytest
from hypothesis import given, strategies as st

from sldual._bits import is_subset
from sldual.errors import NotADownset, NotDisjoint, NotProper, SeparationFailed
from sldual.order import (
    all_filters,
    all_order_ideals,
    filter_join,
    generated_filter,
    irreducible_filters,
    is_F_ideal,
    is_filter,
    is_irreducible,
    is_irreducible_char,
    is_order_ideal,
    principal_filter,
    principal_ideal,
    separate,
)

from .conftest import chain, el, mask


def _brute_filters(S):
    # Oracle: scan all subsets for upset + top + meet-closure directly.
    out = []
    for m in range(1 << S.n):
        if not m >> S.top & 1:
            continue
        members = [a for a in range(S.n) if m >> a & 1]
        if any(S.leq(a, b) and not m >> b & 1 for a in members for b in range(S.n)):
            continue
        if all(m >> S.meet[a][b] & 1 for a in members for b in members):
            out.append(m)
    return sorted(out)


def test_filters_of_L_are_principal(L):
    fs = all_filters(L)
    assert len(fs) == 7
    assert sorted(fs) == sorted(principal_filter(L, a) for a in range(7))
    assert sorted(fs) == _brute_filters(L)


def test_filters_small_chains():
    assert set(all_filters(chain(2))) == {mask(1), mask(0, 1)}
    assert len(all_filters(chain(3))) == 3


def test_generated_filter(L):
    e, d, c, a = el(L, "e"), el(L, "d"), el(L, "c"), el(L, "a")
    assert generated_filter(L, mask(e, d)) == mask(c, e, d, L.top)
    assert generated_filter(L, 0) == mask(L.top)
    assert generated_filter(L, mask(a)) == principal_filter(L, a)


@given(st.integers(0, (1 << 7) - 1))
def test_generated_filter_is_least(L, subset):
    f = generated_filter(L, subset)
    assert is_filter(L, f) and is_subset(subset, f)
    for g in all_filters(L):
        if is_subset(subset, g):
            assert is_subset(f, g)


def test_irreducible_filters_of_L(L):
    a, b, c, d, e = (el(L, s) for s in "abcde")
    expected = [
        mask(a, e, L.top),
        mask(b, e, L.top),
        mask(c, d, e, L.top),
        mask(d, L.top),
    ]
    assert list(irreducible_filters(L)) == expected


def test_principal_e_not_irreducible(L):
    a, b, e = el(L, "a"), el(L, "b"), el(L, "e")
    fe = principal_filter(L, e)
    assert not is_irreducible(L, fe)
    assert principal_filter(L, a) & principal_filter(L, b) == fe


def test_irreducible_2chain():
    S = chain(2)
    assert list(irreducible_filters(S)) == [mask(1)]
    assert is_irreducible_char(S, mask(1))


def test_characterization_examples(L):
    assert is_irreducible_char(L, mask(el(L, "d"), L.top))
    assert not is_irreducible_char(L, mask(L.top))
    with pytest.raises(NotProper):
        is_irreducible_char(L, L.carrier)


def test_characterization_agrees_with_definition(small6, L):
    structs = [S for ss in small6.values() for S in ss] + [L]
    for S in structs:
        for f in all_filters(S):
            if f == S.carrier:
                continue
            assert is_irreducible(S, f) == is_irreducible_char(S, f)


def _brute_order_ideals(S):
    out = []
    for m in range(1, 1 << S.n):
        members = [a for a in range(S.n) if m >> a & 1]
        down = all(is_subset(S.down[a], m) for a in members)
        directed = all(
            any(S.leq(a, c) and S.leq(b, c) for c in members)
            for a in members
            for b in members
        )
        if down and directed:
            out.append(m)
    return sorted(out)


def test_order_ideals_of_L(L):
    ids = all_order_ideals(L)
    assert len(ids) == 7
    assert sorted(ids) == _brute_order_ideals(L)
    assert sorted(ids) == sorted(principal_ideal(L, a) for a in range(7))


def test_order_ideals_trivial_cases():
    assert list(all_order_ideals(chain(1))) == [mask(0)]
    assert set(all_order_ideals(chain(2))) == {mask(0), mask(0, 1)}


def test_order_ideals_principal_degeneracy(small):
    # In the finite case every order-ideal is principal.
    for structs in small.values():
        for S in structs:
            assert set(all_order_ideals(S)) == {principal_ideal(S, a) for a in range(S.n)}


def test_relative_ideal_iff_irreducible(small, L):
    for S in [s for ss in small.values() for s in ss] + [L]:
        for f in all_filters(S):
            if f == S.carrier:
                continue
            assert is_irreducible(S, f) == is_F_ideal(S, f, S.carrier & ~f)


def test_principal_downsets_are_relative_ideals(L):
    for f in all_filters(L):
        for a in range(L.n):
            assert is_F_ideal(L, f, principal_ideal(L, a))


def test_relative_ideal_frozen_example(L):
    # I = {0, a, b} relative to [1): a and b have no bound inside I.
    assert not is_F_ideal(L, mask(L.top), mask(0, el(L, "a"), el(L, "b")))


def test_relative_ideal_rejects_non_downset(L):
    with pytest.raises(NotADownset):
        is_F_ideal(L, mask(L.top), mask(el(L, "e")))


def test_separate_examples(L):
    e, d = el(L, "e"), el(L, "d")
    p1 = mask(el(L, "a"), e, L.top)
    assert separate(L, principal_filter(L, e), principal_ideal(L, d)) == p1
    assert separate(L, mask(L.top), principal_ideal(L, 0)) == p1
    with pytest.raises(NotDisjoint):
        separate(L, principal_filter(L, e), principal_ideal(L, e))


def test_separate_always_succeeds(small):
    for structs in small.values():
        for S in structs:
            for f in all_filters(S):
                for i in all_order_ideals(S):
                    if f & i:
                        continue
                    p = separate(S, f, i)
                    assert is_subset(f, p) and p & i == 0


def test_separate_relative_ideals(small):
    # An irreducible filter is separated from its own complement by itself.
    for structs in small.values():
        for S in structs:
            for f in irreducible_filters(S):
                assert separate(S, f, S.carrier & ~f) == f


def test_separate_degenerate_corner(L):
    with pytest.raises(SeparationFailed):
        separate(L, L.carrier, 0)


def test_filter_lattice_is_complete(small):
    for structs in small.values():
        for S in structs:
            fs = set(all_filters(S))
            for f in fs:
                for g in fs:
                    assert f & g in fs
                    j = filter_join(S, [f, g])
                    assert j in fs
                    assert is_subset(f, j) and is_subset(g, j)
                    for h in fs:
                        if is_subset(f, h) and is_subset(g, h):
                            assert is_subset(j, h)


def test_is_order_ideal_rejects_empty(L):
    assert not is_order_ideal(L, 0)
