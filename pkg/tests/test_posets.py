from itertools import product as cartesian

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import properdiv as pd
from properdiv.posets import pd_le, properly_divides

from oracles import closure_from_covers, hall_mobius
from strategies import bounded_posets


# -- proper divisibility ------------------------------------------------------


def test_properly_divides_examples():
    assert properly_divides((0, 0), (1, 1))
    assert properly_divides((1, 0), (2, 3))
    assert not properly_divides((1, 1), (1, 2))
    assert not properly_divides((2, 0), (1, 0))
    assert properly_divides((0, 0), (0, 0))  # degenerate: all coordinates zero


def test_pd_order_axioms_exhaustive():
    vecs = list(cartesian(range(4), repeat=2)) + [(0, 0, 0), (1, 2, 3)]
    vecs2 = [v for v in vecs if len(v) == 2]
    for u in vecs2:
        assert pd_le(u, u)
        for v in vecs2:
            if pd_le(u, v) and pd_le(v, u):
                assert u == v
            for w in vecs2:
                if pd_le(u, v) and pd_le(v, w):
                    assert pd_le(u, w)


@given(
    st.lists(st.integers(0, 5), min_size=3, max_size=3),
    st.lists(st.integers(0, 5), min_size=3, max_size=3),
    st.lists(st.integers(0, 5), min_size=3, max_size=3),
)
@settings(max_examples=300)
def test_pd_transitivity_random(u, v, w):
    if pd_le(u, v) and pd_le(v, w):
        assert pd_le(tuple(u), tuple(w))


def test_multidegree_validation():
    with pytest.raises(ValueError):
        pd.as_multidegree([])
    with pytest.raises(ValueError):
        pd.as_multidegree([1, -2])


# -- constructors -------------------------------------------------------------


def test_chain_basics():
    c0 = pd.chain(0)
    assert len(c0) == 1 and c0.bottom == c0.top == 0
    c3 = pd.chain(3)
    assert len(c3) == 4
    assert sum(len(u) for u in c3.upcovers) == 3
    assert c3.maximal_chains() == [(0, 1, 2, 3)]
    for k in range(7):
        assert pd.chain(k).length() == k
    for k in range(2, 6):
        assert len(pd.chain(k).atoms()) == 1


def test_boolean_lattice():
    b0 = pd.boolean_lattice(0)
    assert len(b0) == 1
    b2 = pd.boolean_lattice(2)
    assert len(b2) == 4
    assert sum(len(u) for u in b2.upcovers) == 4
    assert len(b2.atoms()) == 2
    assert pd.boolean_lattice(3).mobius() == -1  # oracle: hall_mobius below
    assert hall_mobius(pd.boolean_lattice(3)) == -1
    for n in (3, 4):
        assert len(pd.boolean_lattice(n).atoms()) == n
    with pytest.raises(pd.SizeGuardError):
        pd.boolean_lattice(13)


def test_proper_div_poset_sizes_and_length():
    assert len(pd.proper_divisibility_poset((4, 4))) == 17
    p11 = pd.proper_divisibility_poset((1, 1))
    assert len(p11) == 2
    assert p11.upcovers[p11.bottom] == (p11.top,)
    for vec in [(1,), (3,), (2, 3), (1, 4), (3, 3, 2)]:
        p = pd.proper_divisibility_poset(vec)
        expected = 1
        for x in vec:
            expected *= x
        assert len(p) == expected + 1
        assert p.length() == max(vec)


def test_proper_div_poset_zero_coordinate_deletion():
    # dropping a zero coordinate gives an isomorphic poset
    for vec, reduced in [((0, 3), (3,)), ((2, 0, 3), (2, 3)), ((0, 0, 4), (4,))]:
        p = pd.proper_divisibility_poset(vec)
        q = pd.proper_divisibility_poset(reduced)
        assert p.is_isomorphic_to(q)


def test_p44_atoms_match_known_values():
    p = pd.proper_divisibility_poset((4, 4))
    assert [p.labels[i] for i in p.atoms()] == [(0, 1), (1, 0), (1, 1)]


def test_cover_decrement_rule_exhaustive():
    # every cover drops some coordinate by exactly one
    for n in (1, 2, 3):
        for vec in cartesian(range(5), repeat=n):
            p = pd.proper_divisibility_poset(vec)
            for i, ups in enumerate(p.upcovers):
                for j in ups:
                    lo, hi = p.labels[i], p.labels[j]
                    assert any(lo[t] == hi[t] - 1 for t in range(n)), (lo, hi)


def test_transitive_reduction_soundness():
    posets = [
        pd.proper_divisibility_poset((4, 4)),
        pd.proper_divisibility_poset((2, 5)),
        pd.proper_divisibility_poset((3, 3, 2)),
        pd.proper_product(pd.boolean_lattice(2), pd.boolean_lattice(3)),
        pd.boolean_lattice(4),
    ]
    for p in posets:
        assert len(p) <= 200
        closed = closure_from_covers(p)
        direct = {
            (i, j)
            for i in range(len(p))
            for j in range(len(p))
            if i != j and p.le(i, j)
        }
        assert closed == direct


# -- the proper division product ----------------------------------------------


def test_product_matches_pdiv_posets():
    for a in range(0, 6):
        for b in range(0, 6):
            prod = pd.proper_product(pd.chain(a), pd.chain(b))
            assert prod.is_isomorphic_to(pd.proper_divisibility_poset((a, b)))


def test_product_ternary_matches_pdiv():
    for vec in cartesian(range(4), repeat=3):
        chains = [pd.chain(x) for x in vec]
        assert pd.proper_product(*chains).is_isomorphic_to(
            pd.proper_divisibility_poset(vec)
        ), vec


def test_product_associativity():
    triples = [
        (pd.chain(2), pd.chain(3), pd.chain(2)),
        (pd.boolean_lattice(1), pd.boolean_lattice(2), pd.chain(2)),
        (pd.boolean_lattice(2), pd.boolean_lattice(2), pd.boolean_lattice(1)),
    ]
    for p, q, r in triples:
        nested = pd.proper_product(pd.proper_product(p, q), r)
        flat = pd.proper_product(p, q, r)
        assert nested.is_isomorphic_to(flat)


def test_product_one_element_factor_direct_enumeration():
    # oracle: enumerate the pairs of C1 xp B2 straight from the definition
    b2 = pd.boolean_lattice(2)
    expected = set()
    for y in range(4):
        # coordinate 1 always passes (the single chain element is both bounds);
        # coordinate 2 needs y < top or the equal pair
        if y == 3 or b2.lt(y, 3):
            expected.add((0, y))
    assert expected == {(0, 0), (0, 1), (0, 2), (0, 3)}  # frozen: 4 pairs
    prod = pd.proper_product(pd.chain(0), b2)
    assert len(prod) == len(expected)
    assert prod.is_isomorphic_to(b2)


def test_product_requires_bounded():
    unbounded = pd.Poset(["a", "b"], [[], []])  # two incomparable points
    with pytest.raises(ValueError):
        pd.proper_product(unbounded, pd.chain(1))


def test_b2_b6_product_size():
    prod = pd.proper_product(pd.boolean_lattice(2), pd.boolean_lattice(6))
    assert len(prod) == 3 * 63 + 1


# -- dual, interval, atoms, chains ---------------------------------------------


def test_dual_involution_and_self_dual_chain():
    p = pd.proper_divisibility_poset((3, 2))
    dd = p.dual().dual()
    assert dd.labels == p.labels and dd.upcovers == p.upcovers
    c4 = pd.chain(3)
    assert c4.dual().is_isomorphic_to(c4)


def test_interval_basics():
    b3 = pd.boolean_lattice(3)
    assert len(b3.interval(2, 2)) == 1
    full = b3.interval(b3.bottom, b3.top)
    assert full.is_isomorphic_to(b3)
    with pytest.raises(ValueError):
        b3.interval(1, 2)  # {1} and {2} are incomparable


def test_dual_intervals_are_smaller_pdiv_posets():
    for a in range(2, 5):
        for b in range(a, 5):
            star = pd.proper_divisibility_poset((a, b)).dual()
            zero = star.index_of((0, 0))
            for i, lab in enumerate(star.labels):
                if lab == (a, b):
                    continue
                sub = star.interval(i, zero)
                assert sub.is_isomorphic_to(
                    pd.proper_divisibility_poset(lab).dual()
                ), lab


def test_atoms_require_bottom():
    two_points = pd.Poset(["a", "b"], [[], []])
    with pytest.raises(ValueError):
        two_points.atoms()


def test_maximal_chains_examples():
    star = pd.proper_divisibility_poset((2, 2)).dual()
    chains = star.maximal_chains()
    assert len(chains) == 3
    assert all(len(c) == 3 for c in chains)
    assert chains == sorted(chains)
    for vec in [(2, 3), (4, 2), (3, 3, 2)]:
        p = pd.proper_divisibility_poset(vec)
        longest = max(len(c) - 1 for c in p.maximal_chains())
        assert longest == max(vec)


def test_maximal_chain_guard():
    with pytest.raises(pd.SizeGuardError):
        pd.boolean_lattice(5).maximal_chains(max_chains=10)


def test_p44_bounded_chain_lengths():
    # computed by enumeration: maximal chains have lengths 3 and 4 only
    p = pd.proper_divisibility_poset((4, 4))
    lengths = {len(c) - 1 for c in p.maximal_chains()}
    assert lengths == {3, 4}


# -- Mobius ---------------------------------------------------------------------


def test_mobius_examples():
    for k in (2, 3, 5):
        assert pd.chain(k).mobius() == 0
    assert pd.boolean_lattice(3).mobius() == -1
    assert pd.proper_divisibility_poset((4, 4)).mobius() == -4


def test_mobius_against_hall_oracle():
    posets = [
        pd.chain(4),
        pd.boolean_lattice(3),
        pd.proper_divisibility_poset((3, 4)),
        pd.proper_divisibility_poset((2, 2, 2)),
        pd.proper_product(pd.boolean_lattice(2), pd.boolean_lattice(2)),
    ]
    for p in posets:
        assert p.mobius() == hall_mobius(p)


def test_mobius_equals_reduced_euler_char_mixed_corpus():
    posets = [
        pd.chain(3),
        pd.boolean_lattice(4),
        pd.proper_divisibility_poset((3, 5)),
        pd.proper_divisibility_poset((2, 3, 4)),
        pd.proper_product(pd.boolean_lattice(2), pd.boolean_lattice(3)),
        pd.proper_product(pd.chain(3), pd.boolean_lattice(2)),
    ]
    for p in posets:
        assert p.mobius() == pd.order_complex(p).reduced_euler_char()


def test_mobius_requires_bounds():
    with pytest.raises(ValueError):
        pd.Poset(["a", "b"], [[], []]).mobius()


# -- isomorphism -----------------------------------------------------------------


def test_isomorphism_identity_witness():
    p = pd.proper_divisibility_poset((3, 2))
    witness = p.isomorphism_to(p)
    assert witness is not None
    for i, j in enumerate(witness):
        assert sorted(witness[k] for k in p.upcovers[i]) == list(p.upcovers[j])


def test_isomorphism_negative_cases():
    assert not pd.chain(2).is_isomorphic_to(pd.boolean_lattice(2))
    # equal size and degree multiset, different order: C4 vs B2
    assert not pd.chain(3).is_isomorphic_to(pd.boolean_lattice(2))


def test_isomorphism_guard():
    big = pd.boolean_lattice(9)
    with pytest.raises(pd.SizeGuardError):
        big.isomorphism_to(big, max_elements=100)


@given(bounded_posets(), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_isomorphism_invariant_under_relabeling(p, rng):
    perm = list(range(len(p)))
    rng.shuffle(perm)
    inv = [0] * len(p)
    for new, old in enumerate(perm):
        inv[old] = new
    labels = [p.labels[old] for old in perm]
    ups = [sorted(inv[j] for j in p.upcovers[old]) for old in perm]
    q = pd.Poset(labels, ups, validate=False)
    assert p.is_isomorphic_to(q)


@given(bounded_posets())
@settings(max_examples=60, deadline=None)
def test_mobius_oracles_agree_on_random_posets(p):
    mu = p.mobius()
    assert mu == hall_mobius(p)
    assert mu == pd.order_complex(p).reduced_euler_char()


# -- text format -------------------------------------------------------------------


def test_poset_text_roundtrip():
    p = pd.proper_divisibility_poset((2, 3))
    text = p.to_text()
    q = pd.Poset.from_text(text)
    assert len(q) == len(p)
    assert q.upcovers == p.upcovers
    assert q.bottom == p.bottom and q.top == p.top
    assert q.labels == tuple(
        "(" + ",".join(map(str, lab)) + ")" for lab in p.labels
    )
    assert q.to_text() == text


def test_poset_text_without_bounds_lines():
    text = "elements: 3\n0 x\n1 y\n2 z\ncovers:\n0 < 1\n0 < 2\n"
    p = pd.Poset.from_text(text)
    assert p.bottom == 0 and p.top is None


def test_poset_text_rejects_garbage():
    with pytest.raises(ValueError):
        pd.Poset.from_text("covers:\n0 < 1\n")
    with pytest.raises(ValueError):
        pd.Poset.from_text("elements: 2\n0 a\n1 b\ncovers:\n0 < 1\nbottom: 1\n")


def test_cycle_rejected():
    with pytest.raises(ValueError):
        pd.Poset("abc", [[1], [2], [0]])


def test_redundant_cover_rejected():
    with pytest.raises(ValueError):
        pd.Poset("abc", [[1, 2], [2], []])
