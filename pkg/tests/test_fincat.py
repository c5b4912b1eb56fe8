import itertools

import pytest

from opint.fincat import (
    FinCat, Functor, categories_isomorphic, poset_category, product,
    terminal_category, terminal_object, validate_category, validate_functor,
)
from opint.surjections import CompositionError


def chain_ge(n):
    """The poset {0..n} with an arrow a -> b when a >= b."""
    return poset_category(range(n + 1), lambda a, b: a <= b)


def test_terminal_category_is_valid():
    C = terminal_category()
    assert validate_category(C).ok
    assert C.counts() == (1, 1)


def test_chain_poset_counts_and_validity():
    # independent count: pairs a >= b in {0,1,2}, i.e. 3 + 2 + 1
    C = chain_ge(2)
    assert validate_category(C).ok
    assert C.counts() == (3, 6)
    assert len([m for m in C.morphism_ids() if not C.is_identity(m)]) == 3


def test_missing_composite_is_located():
    # a 3-chain whose table lacks the one non-trivial composite (g, f)
    morphisms = [(("id", i), i, i) for i in range(3)] + \
        [(("f", 0), 0, 1), (("g", 1), 1, 2)]
    table = {}
    for mid, src, dst in morphisms:
        table[(mid, ("id", src))] = mid
        table[(("id", dst), mid)] = mid
    C = FinCat(range(3), morphisms, {i: ("id", i) for i in range(3)}, table)
    report = validate_category(C)
    assert not report.ok
    assert any("missing composite" in p for p in report.witness)


def test_compose_raises_on_non_composable():
    C = chain_ge(2)
    with pytest.raises(CompositionError):
        C.compose((2, 1), (1, 0))  # (1,0) then (2,1) has mismatched middle


def test_product_counts():
    C, D = chain_ge(1), chain_ge(2)
    P = product([C, D])
    # counting oracle: objects and morphisms multiply
    assert len(P.objects) == len(C.objects) * len(D.objects)
    assert len(P.morphism_ids()) == len(C.morphism_ids()) * len(D.morphism_ids())
    assert validate_category(P).ok


def test_product_of_one_and_unit():
    C = chain_ge(2)
    P1 = product([C])
    assert categories_isomorphic(P1, C).found
    PT = product([terminal_category(), C])
    assert categories_isomorphic(PT, C).found


def test_terminal_object_in_chain():
    # 0 is the minimum of ({0..5}, >=): every object has exactly one arrow to it
    C = chain_ge(5)
    t, witness = terminal_object(C)
    assert t == 0
    assert witness[3] == (3, 0)
    assert terminal_object(terminal_category())[0] == "*"


def test_no_terminal_in_discrete():
    C = FinCat([0, 1], [(("id", i), i, i) for i in (0, 1)],
               {i: ("id", i) for i in (0, 1)},
               {(("id", i), ("id", i)): ("id", i) for i in (0, 1)})
    assert validate_category(C).ok
    assert terminal_object(C) is None


def test_isomorphic_to_self_and_relabeling():
    C = chain_ge(1)
    res = categories_isomorphic(C, C)
    assert res.found
    assert validate_functor(res.forward).ok
    D = poset_category(["hi", "lo"], lambda a, b: (a, b) != ("hi", "lo"))
    # D is the two-chain with lo <= hi, i.e. an arrow hi -> lo
    res = categories_isomorphic(C, D)
    assert res.found
    assert res.forward.obj_map == {0: "lo", 1: "hi"}


def test_non_isomorphic_by_hom_counts():
    chain2 = chain_ge(2)
    discrete3 = FinCat(range(3), [(("id", i), i, i) for i in range(3)],
                       {i: ("id", i) for i in range(3)},
                       {(("id", i), ("id", i)): ("id", i) for i in range(3)})
    assert categories_isomorphic(chain2, discrete3).status == "none"


def test_isomorphism_symmetry():
    C, D = chain_ge(2), poset_category("abc", lambda a, b: a >= b)
    fwd = categories_isomorphic(C, D)
    bwd = categories_isomorphic(D, C)
    assert fwd.found and bwd.found
    assert validate_functor(fwd.backward).ok


def brute_poset_isomorphic(elems1, le1, elems2, le2):
    """Oracle: exhaustive search for an order isomorphism."""
    if len(elems1) != len(elems2):
        return False
    for perm in itertools.permutations(elems2):
        mapping = dict(zip(elems1, perm))
        if all(le1(a, b) == le2(mapping[a], mapping[b])
               for a in elems1 for b in elems1):
            return True
    return False


def all_posets(n):
    """Every partial order on range(n), as a frozenset of (a, b) pairs with a <= b."""
    elems = list(range(n))
    base = [(a, a) for a in elems]
    candidates = [(a, b) for a in elems for b in elems if a != b]
    for extra in itertools.chain.from_iterable(
            itertools.combinations(candidates, k) for k in range(len(candidates) + 1)):
        rel = set(base) | set(extra)
        if any((a, b) in rel and (b, a) in rel and a != b for a, b in candidates):
            continue
        if any((a, b) in rel and (b, c) in rel and (a, c) not in rel
               for a in elems for b in elems for c in elems):
            continue
        yield rel


def test_category_iso_agrees_with_poset_iso_oracle():
    posets = [list(all_posets(n)) for n in range(5)]
    for n in range(1, 5):
        rels = posets[n]
        for r1 in rels[:8]:
            for r2 in rels[:8]:
                C = poset_category(range(n), lambda a, b, r=r1: (a, b) in r)
                D = poset_category(range(n), lambda a, b, r=r2: (a, b) in r)
                expected = brute_poset_isomorphic(
                    range(n), lambda a, b, r=r1: (a, b) in r,
                    range(n), lambda a, b, r=r2: (a, b) in r)
                assert categories_isomorphic(C, D).found == expected


def test_iso_search_too_large():
    big = FinCat(range(100), [(("id", i), i, i) for i in range(100)],
                 {i: ("id", i) for i in range(100)},
                 lambda g, f: g)
    assert categories_isomorphic(big, big).status == "too-large"


def test_validate_functor_catches_bad_map():
    C = chain_ge(1)
    F = Functor(C, C, {0: 0, 1: 1}, {m: m for m in C.morphism_ids()})
    assert validate_functor(F).ok
    bad = Functor(C, C, {0: 1, 1: 0}, {m: m for m in C.morphism_ids()})
    assert not validate_functor(bad).ok
