import math

import pytest

from commsemi import group, sigma
from commsemi.container import Container
from commsemi.mumap import MuMap

# R* of G(63,6,2), fixed by hand from the k_t table and closure arithmetic
R_STAR_63 = [
    0, 1, 3, 4, 6, 7, 9, 12, 15, 16, 18, 21, 24, 27, 28, 30,
    31, 33, 36, 39, 42, 45, 48, 49, 51, 54, 55, 57, 60, 61,
]


class TestBases:
    def test_right_base_values(self, g3, g7, g63):
        assert sorted(sigma.right_base(g3).elements) == [0, 1]
        assert sorted(sigma.right_base(g63).elements) == [0, 1, 3, 7, 15, 31]
        assert sorted(sigma.right_base(g7).elements) == [0, 5]

    def test_left_base_values(self, g3, g7):
        assert sorted(sigma.left_base(g3).elements) == [0, 2]
        assert sorted(sigma.left_base(g7).elements) == [0, 2]

    def test_left_is_negated_right(self, g63):
        r = sigma.right_base(g63).elements
        l = sigma.left_base(g63).elements
        assert l == {(-x) % 63 for x in r}

    def test_make_base_validation(self):
        with pytest.raises(sigma.InvalidBase):
            sigma.make_base(5, [1, 2])  # no zero
        with pytest.raises(sigma.InvalidBase):
            sigma.make_base(6, [0, 2, 3])  # no unit
        with pytest.raises(sigma.InvalidBase):
            sigma.make_base(5, [])
        base = sigma.make_base(5, [0, -1])  # residues reduced on entry
        assert base.elements == {0, 4}

    def test_trivial_centre_forces_unit_in_bases(self):
        # validated presentations always have a unit in R and in L; the
        # rejected near-miss (9, 4) would not
        for m, k in [(3, 2), (63, 2), (315, 272)]:
            p = group.validate(m, k)
            assert any(math.gcd(e, m) == 1 for e in sigma.right_base(p).elements)
            assert any(math.gcd(e, m) == 1 for e in sigma.left_base(p).elements)
        near_miss = group.unchecked(9, 4)
        r = {t % 9 for t in near_miss.k_sub[: near_miss.n]}
        assert not any(math.gcd(e, 9) == 1 for e in r)


class TestClosure:
    def test_s3_left(self, g3):
        c = sigma.closure(sigma.left_base(g3))
        assert sorted(c.elements) == [0, 1, 2]

    def test_g63_values(self, g63):
        c = sigma.closure(sigma.right_base(g63))
        assert sorted(c.elements) == R_STAR_63
        assert sorted(c.units) == [1, 4, 16, 31, 55, 61]

    def test_pq_example(self, g7):
        c = sigma.closure(sigma.left_base(g7))
        assert sorted(c.elements) == [0, 1, 2, 4]

    def test_idempotent(self, g63):
        c = sigma.closure(sigma.right_base(g63))
        again = sigma.closure(sigma.BaseSet(63, c.elements))
        assert again.elements == c.elements

    def test_unit_nonunit_partition(self, g63):
        c = sigma.closure(sigma.right_base(g63))
        assert c.units | c.non_units == c.elements
        assert not (c.units & c.non_units)
        assert 1 in c.units


class TestOrbits:
    def test_g63_non_basic_orbits(self, g63):
        s = sigma.right_base(g63)
        orbs = sigma.orbits(s, sigma.closure(s))
        non_basic = [o for o in orbs if not o.basic]
        assert [o.representative for o in non_basic] == [9, 21, 42]
        by_rep = {o.representative: o for o in orbs}
        assert sorted(by_rep[9].elements) == [9, 18, 27, 36, 45, 54]
        assert by_rep[21].elements == {21}
        assert by_rep[42].elements == {42}

    def test_s3_left_orbit_of_one(self, g3):
        s = sigma.left_base(g3)
        orbs = sigma.orbits(s, sigma.closure(s))
        by_rep = {o.representative: o for o in orbs}
        assert by_rep[1].elements == {1, 2}
        assert by_rep[1].basic  # meets L at 2

    def test_partition(self, g63):
        for side in (sigma.right_base(g63), sigma.left_base(g63)):
            c = sigma.closure(side)
            orbs = sigma.orbits(side, c)
            seen = set()
            for o in orbs:
                assert not (o.elements & seen)
                assert o.representative == min(o.elements)
                seen |= o.elements
            assert seen == c.elements

    def test_unit_orbits_are_basic(self, g63):
        s = sigma.right_base(g63)
        c = sigma.closure(s)
        for o in sigma.orbits(s, c):
            if o.elements & c.units:
                assert o.basic

    def test_partition_at_315(self):
        # the largest fixture: orbits still partition S* on both sides
        p = group.validate(315, 272)
        for base in (sigma.right_base(p), sigma.left_base(p)):
            c = sigma.closure(base)
            orbs = sigma.orbits(base, c)
            seen: set[int] = set()
            for o in orbs:
                assert not (o.elements & seen)
                seen |= o.elements
            assert seen == c.elements


class TestFamily:
    def test_nine_family(self, g63):
        s = sigma.right_base(g63)
        c = sigma.closure(s)
        f = sigma.family(s, c, 9)
        assert f.maximal_containers == (Container(9, 3),)
        assert f.y_set_size == 21
        assert not f.complete

    def test_twentyone_family(self, g63):
        s = sigma.right_base(g63)
        c = sigma.closure(s)
        f = sigma.family(s, c, 21)
        assert f.maximal_containers == (Container(21, 3), Container(21, 7))
        assert f.y_set_size == 21 + 9 - 3

    def test_fortytwo_family(self, g63):
        # 15 * 7 = 42 (mod 63) with 15 in R and 7 in R*, so C(42; 7) joins
        # C(42; 3); size matches the x = 21 family.  (Cross-checked against
        # both brute-force oracles in the oracle suite.)
        s = sigma.right_base(g63)
        c = sigma.closure(s)
        f = sigma.family(s, c, 42)
        assert f.maximal_containers == (Container(42, 3), Container(42, 7))
        assert f.y_set_size == 27

    def test_basic_x_family_is_maximal_container(self, g63):
        s = sigma.right_base(g63)
        c = sigma.closure(s)
        f = sigma.family(s, c, 1)
        assert f.complete
        assert f.maximal_containers == (Container(1, 1),)
        assert f.y_set_size == 63

    def test_x_outside_closure_rejected(self, g63):
        s = sigma.right_base(g63)
        c = sigma.closure(s)
        assert 2 not in c.elements
        with pytest.raises(sigma.XNotInClosure):
            sigma.family(s, c, 2)

    def test_family_size_matches_triple_enumeration(self, g5):
        # brute Y(x): all distinct s*.z over witnesses, tiny groups only
        for base in (sigma.right_base(g5), sigma.make_base(5, [0, 4])):
            c = sigma.closure(base)
            for x in c.elements:
                f = sigma.family(base, c, x)
                ys = {
                    st * z % 5
                    for st in c.elements
                    for s in base.elements
                    if s * st % 5 == x
                    for z in range(5)
                }
                assert f.y_set_size == len(ys)

    def test_family_size_matches_triple_enumeration_63(self, g63):
        base = sigma.right_base(g63)
        c = sigma.closure(base)
        for x in sorted(c.elements):
            f = sigma.family(base, c, x)
            witnesses = {st for st in c.elements for b in base.elements if b * st % 63 == x}
            ys = {st * z % 63 for st in witnesses for z in range(63)}
            assert f.y_set_size == len(ys), x


class TestAnalyze:
    def test_s3_orders(self, g3):
        ar = sigma.analyze(g3, sigma.right_base(g3), verify=True)
        al = sigma.analyze(g3, sigma.left_base(g3), verify=True)
        assert ar.total_order == 6
        assert al.total_order == 9
        assert ar.complete and al.complete

    def test_custom_base_example(self, g5):
        a = sigma.analyze(g5, sigma.make_base(5, [0, 4]), verify=True)
        assert sorted(a.closure.elements) == [0, 1, 4]
        assert a.complete
        assert a.total_order == 15

    def test_g63_order_from_families(self, g63):
        # 22 basic elements contribute 63 each; the six-element orbit of 9
        # contributes 6*21 and the singleton orbits 27 each: 1566.  This
        # value is pinned by the pair and table oracles (test_oracle).
        a = sigma.analyze(g63, sigma.right_base(g63), verify=True)
        assert len(a.closure.elements) == 30
        assert not a.complete
        assert a.total_order == 22 * 63 + 6 * 21 + 27 + 27 == 1566

    def test_complete_case_order_formula(self, g7):
        for base in (sigma.right_base(g7), sigma.left_base(g7)):
            a = sigma.analyze(g7, base, verify=True)
            assert a.complete
            assert a.total_order == 7 * len(a.closure.elements)
        assert sigma.analyze(g7, sigma.right_base(g7)).total_order == 49
        assert sigma.analyze(g7, sigma.left_base(g7)).total_order == 28

    def test_completeness_iff_all_orbits_basic(self, g63):
        for side in (sigma.right_base(g63), sigma.left_base(g63)):
            a = sigma.analyze(g63, side, verify=True)
            assert a.complete == all(o.basic for o in a.orbits)
            for f, x in zip(a.families, sorted(a.closure.elements)):
                assert f.x == x

    def test_base_modulus_mismatch(self, g63):
        with pytest.raises(sigma.InvalidBase):
            sigma.analyze(g63, sigma.make_base(5, [0, 4]))


class TestEnumerate:
    def test_s3_right_listing(self, g3):
        a = sigma.analyze(g3, sigma.right_base(g3))
        assert sigma.enumerate_elements(a) == [
            MuMap(0, 0), MuMap(0, 1), MuMap(0, 2),
            MuMap(1, 0), MuMap(1, 1), MuMap(1, 2),
        ]

    def test_s3_left_listing(self, g3):
        a = sigma.analyze(g3, sigma.left_base(g3))
        assert sigma.enumerate_elements(a) == [
            MuMap(x, y) for x in range(3) for y in range(3)
        ]

    def test_length_is_total_order(self, g63):
        for base in (sigma.right_base(g63), sigma.left_base(g63)):
            a = sigma.analyze(g63, base)
            elems = sigma.enumerate_elements(a)
            assert len(elems) == a.total_order
            assert len(set(elems)) == len(elems)
            assert elems == sorted(elems)

    def test_codes_match_elements(self, g63):
        a = sigma.analyze(g63, sigma.right_base(g63))
        codes = sigma.element_codes(a)
        assert [MuMap(*divmod(c, 63)) for c in codes] == sigma.enumerate_elements(a)
