import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ORDERS, SMALL, as_tuple, brute, poly_field
from gl2sets.errors import GroupTooLarge
from gl2sets.finite_field import field_of_order
from gl2sets.linear_group import (
    Quotient,
    Subgroup,
    all_subgroups,
    are_conjugate,
    build_group,
    closure,
    cyclic_mod_l_subgroups,
    cyclic_subgroups,
    group_order,
    is_cyclic,
    is_cyclic_mod_l,
    is_dihedral,
    normalizer,
    projective_images,
    standard_subgroups,
    trivial_subgroup,
    whole_group,
)
from oracles import BruteGroup, act


@pytest.mark.parametrize("q", ORDERS)
def test_group_order(groups, q):
    G = groups[q]
    assert G.order == (q * q - 1) * (q * q - q) == group_order(q)
    assert len(set(map(tuple, G.entries.tolist()))) == G.order


def test_small_orders(groups):
    assert [groups[q].order for q in (2, 3, 5)] == [6, 48, 480]


def test_size_guard():
    with pytest.raises(GroupTooLarge):
        build_group(field_of_order(5), max_order=100)


@pytest.mark.parametrize("q", SMALL)
def test_products_exhaustive(groups, q):
    G = groups[q]
    bg, index = brute(G)
    F = poly_field(G)
    table = G.mul(G.all[:, None], G.all[None, :])
    # compare with the matrix oracle on a stride of rows, all columns
    for i in range(0, G.order, max(1, G.order // 40)):
        gi = as_tuple(G, F, i)
        for j in range(G.order):
            assert index[bg.mul(gi, as_tuple(G, F, j))] == table[i, j]
    assert (G.mul(G.all, G.inverse) == G.identity).all()
    # closure: every product is an index, so the table is onto each row
    assert (np.sort(table, axis=1) == G.all[None, :]).all()


@pytest.mark.parametrize("q", (7, 8, 9))
def test_products_sampled(groups, q):
    G = groups[q]
    rng = np.random.default_rng(q)
    g, h, k = rng.integers(0, G.order, size=(3, 10_000))
    assert (G.mul(G.mul(g, h), k) == G.mul(g, G.mul(h, k))).all()
    assert (G.mul(g, G.inverse[g]) == G.identity).all()
    F = poly_field(G)
    bg = BruteGroup(F)
    assert len(bg.elements) == G.order
    for a, b in zip(g[:300], h[:300]):
        prod = bg.mul(as_tuple(G, F, a), as_tuple(G, F, b))
        assert as_tuple(G, F, int(G.mul(a, b))) == prod


@pytest.mark.parametrize("q", ORDERS)
def test_standard_orders(groups, q):
    S = standard_subgroups(groups[q])
    got = (S.B.order, S.T.order, S.N.order, S.Tprime.order, S.Nprime.order, S.center.order)
    assert got == (q * (q - 1) ** 2, (q - 1) ** 2, 2 * (q - 1) ** 2, q * q - 1, 2 * (q * q - 1), q - 1)


def test_standard_orders_worked():
    S3 = standard_subgroups(build_group(field_of_order(3)))
    assert (S3.B.order, S3.T.order, S3.N.order, S3.Tprime.order, S3.Nprime.order) == (12, 4, 8, 8, 16)
    S5 = standard_subgroups(build_group(field_of_order(5)))
    assert (S5.B.order, S5.T.order, S5.N.order, S5.Tprime.order, S5.Nprime.order) == (80, 16, 32, 24, 48)


@pytest.mark.parametrize("q", (2, 3, 4))
def test_standard_subgroups_by_scan(groups, q):
    G = groups[q]
    S = standard_subgroups(G)
    F = poly_field(G)
    inf, zero = (F.one, F.zero), (F.zero, F.one)
    members = {"B": [], "T": [], "N": []}
    for i in range(G.order):
        m = as_tuple(G, F, i)
        a, b = act(F, m, inf), act(F, m, zero)
        if a == inf:
            members["B"].append(i)
            if b == zero:
                members["T"].append(i)
        if {a, b} == {inf, zero}:
            members["N"].append(i)
    for k, v in members.items():
        assert getattr(S, k).members == tuple(v)
    # diag / upper triangular shapes
    e = G.entries
    assert set(S.B.members) == set(np.flatnonzero(e[:, 2] == 0))
    assert set(S.T.members) == set(np.flatnonzero((e[:, 1] == 0) & (e[:, 2] == 0)))


def test_q2_normalizer_of_T_is_everything():
    G = build_group(field_of_order(2))
    S = standard_subgroups(G)
    assert S.T.order == 1
    assert normalizer(G, S.T) != S.N


@pytest.mark.parametrize("q", ORDERS)
def test_normalizers(groups, q):
    G = groups[q]
    S = standard_subgroups(G)
    assert normalizer(G, S.Tprime) == S.Nprime
    if q > 2:
        assert normalizer(G, S.T) == S.N
    assert normalizer(G, trivial_subgroup(G)) == whole_group(G)


@pytest.mark.parametrize("q", ORDERS)
def test_tori_and_quotient(groups, q):
    G = groups[q]
    S = standard_subgroups(G)
    assert is_cyclic(S.Tprime)
    Q = Quotient(S.Nprime, S.center)
    assert Q.order == 2 * (q + 1)
    assert is_dihedral(Q)


@pytest.mark.parametrize("q", ORDERS)
def test_scalars_act_trivially(groups, q):
    G = groups[q]
    S = standard_subgroups(G)
    for ext in (False, True):
        img = projective_images(G, S.center.array, over_extension=ext)
        assert (img == np.arange(img.shape[1])[None, :]).all()


def test_closure_examples():
    G5 = build_group(field_of_order(5))
    assert closure(G5, []).order == 1
    minus_one = G5.index((4, 0, 0, 4))
    assert closure(G5, [minus_one]).order == 2
    G3 = build_group(field_of_order(3))
    u = G3.index((1, 1, 0, 1))
    v = G3.index((1, 0, 1, 1))
    H = closure(G3, [u, v])
    assert u in H and v in H
    assert H.order % 3 == 0 and G3.order % H.order == 0


@pytest.mark.parametrize("q", (2, 3, 4, 5))
def test_closure_matches_brute(groups, q):
    G = groups[q]
    bg, index = brute(G)
    F = poly_field(G)
    rng = np.random.default_rng(q)
    for _ in range(20):
        gens = rng.integers(0, G.order, size=2)
        ref = bg.closure([as_tuple(G, F, int(g)) for g in gens])
        assert set(closure(G, gens.tolist()).members) == {index[m] for m in ref}


def test_conjugacy_examples():
    G = build_group(field_of_order(3))
    S = standard_subgroups(G)
    assert are_conjugate(G, S.B, S.B) is not None
    w = are_conjugate(G, S.B, S.B, S.B)
    assert w is not None
    # stabilizer of [0:1] versus stabilizer of [1:0]
    img = projective_images(G, G.all, points=[0])[:, 0]
    stab0 = Subgroup(G, tuple(np.flatnonzero(img == 0)))
    g = are_conjugate(G, stab0, S.B)
    assert g is not None
    assert set(G.conj(g, stab0.array).tolist()) == set(S.B.members)
    assert are_conjugate(G, S.T, S.Tprime) is None


@pytest.mark.parametrize("q", SMALL)
def test_class_labels_match_conjugacy(groups, q):
    G = groups[q]
    bg, index = brute(G)
    labels = G.class_labels()
    classes = bg.conjugacy_classes()
    assert len(classes) == q * q - 1
    for cls in classes:
        assert len({int(labels[index[m]]) for m in cls}) == 1
    assert len(set(labels.tolist())) == len(classes)
    reps = G.class_representatives()
    assert sorted(labels[reps].tolist()) == sorted(set(labels.tolist()))


@pytest.mark.parametrize("q", SMALL)
def test_every_element_meets_B_or_Tprime(groups, q):
    G = groups[q]
    S = standard_subgroups(G)
    bg, index = brute(G)
    inside = set(S.B.members) | set(S.Tprime.members)
    for cls in bg.conjugacy_classes():
        assert any(index[m] in inside for m in cls)


def test_all_subgroups_q2():
    G = build_group(field_of_order(2))
    subs = all_subgroups(G)
    assert [H.order for H in subs] == [1, 2, 3, 6]
    # brute force: subsets of S_3 closed under products
    import itertools

    closed = []
    for r in range(1, 7):
        for c in itertools.combinations(range(6), r):
            s = set(c)
            if G.identity in s and all(int(G.mul(a, b)) in s for a in s for b in s):
                closed.append(frozenset(s))
    assert len(closed) == 6  # 1, three of order 2, A_3, S_3
    keys = {min(tuple(sorted(G.conj(g, list(H)).tolist())) for g in range(6)) for H in closed}
    assert len(keys) == 4


def test_all_subgroups_q3(groups):
    G = groups[3]
    subs = all_subgroups(G)
    bg, index = brute(G)
    ref = bg.all_subgroups()
    ref_classes = {tuple(sorted(index[m] for m in bg.conjugacy_class_key(H))) for H in ref}
    got = {H.canonical_key for H in subs}
    assert got == ref_classes
    assert sum(H.order == 1 for H in subs) == 1
    assert subs[-1].order == 48
    S = standard_subgroups(G)
    for K in (S.B, S.T, S.N, S.Tprime, S.Nprime):
        assert K.canonical_key in got


def test_all_subgroups_guard(groups):
    with pytest.raises(GroupTooLarge):
        all_subgroups(groups[8])


@pytest.mark.parametrize("q", ORDERS)
def test_cyclic_subgroups_cover(groups, q):
    G = groups[q]
    subs, cid = cyclic_subgroups(G)
    for g in range(0, G.order, max(1, G.order // 200)):
        assert set(subs[cid[g]].tolist()) == set(G.cyclic_members(g).tolist())


@pytest.mark.parametrize("q", (2, 3, 4, 5, 7))
def test_cyclic_mod_l_without_l_gives_cyclic(groups, q):
    G = groups[q]
    for l in (11, 13):
        if G.order % l:
            subs = cyclic_mod_l_subgroups(G, l)
            assert all(is_cyclic(C) for C in subs)
            keys = {C.canonical_key for C in subs}
            cyc, _ = cyclic_subgroups(G)
            assert len(keys) == len({Subgroup(G, tuple(c)).canonical_key for c in cyc})


def test_cyclic_mod_3_at_q3_in_borel(groups):
    G = groups[3]
    S = standard_subgroups(G)
    from gl2sets.linear_group import conjugate_into

    for C in cyclic_mod_l_subgroups(G, 3):
        assert is_cyclic(C) or conjugate_into(G, C, S.B) is not None


def test_cyclic_mod_2_at_q3_has_nprime(groups):
    G = groups[3]
    S = standard_subgroups(G)
    keys = {C.canonical_key for C in cyclic_mod_l_subgroups(G, 2)}
    assert S.Nprime.canonical_key in keys


@settings(max_examples=40, deadline=None)
@given(st.sampled_from((2, 3, 4, 5)), st.data())
def test_generated_subgroups_are_closed(q, data):
    G = build_group(field_of_order(q))
    gens = data.draw(st.lists(st.integers(0, G.order - 1), min_size=1, max_size=3))
    H = closure(G, gens)
    arr = H.array
    assert G.order % H.order == 0
    assert H.mask[G.mul(arr[:, None], arr[None, :])].all()
    assert H.mask[G.inverse[arr]].all()
    # cyclic groups are cyclic mod every l
    if is_cyclic(H):
        assert is_cyclic_mod_l(H, 2) and is_cyclic_mod_l(H, 3)
