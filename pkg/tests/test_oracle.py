import random

import numpy as np
import pytest

from commsemi import group, mumap, oracle, sigma
from commsemi.mumap import MuMap
from commsemi.sigma import left_base, make_base, right_base


def scalar_tables(p, side):
    """Commutation tables straight from the scalar commutator definition."""
    els = p.elements()
    out = []
    for h in els:
        if side == "right":
            out.append(tuple(group.commutator_direct(p, x, h) for x in els))
        else:
            out.append(tuple(group.commutator_direct(p, h, x) for x in els))
    return out


class TestPairClosure:
    def test_s3_sizes(self, g3):
        assert len(oracle.pair_closure(g3, oracle.rho_generators(g3))) == 6
        assert len(oracle.pair_closure(g3, oracle.lambda_generators(g3))) == 9

    def test_pq_sizes(self, g7):
        assert len(oracle.pair_closure(g7, oracle.rho_generators(g7))) == 49
        assert len(oracle.pair_closure(g7, oracle.lambda_generators(g7))) == 28

    def test_g5_sizes(self, g5):
        assert len(oracle.pair_closure(g5, oracle.rho_generators(g5))) == 25
        assert len(oracle.pair_closure(g5, oracle.lambda_generators(g5))) == 25

    def test_g63_closure_size(self, g63):
        # the container engine, this BFS, and the raw table closure all
        # give 1566 for P(G(63,6,2))
        assert len(oracle.pair_closure(g63, oracle.rho_generators(g63))) == 1566

    def test_generator_order_independence(self, g63):
        gens = oracle.rho_generators(g63)
        shuffled = gens[:]
        random.Random(3).shuffle(shuffled)
        assert oracle.pair_closure(g63, gens) == oracle.pair_closure(g63, shuffled)

    def test_codes_path_matches_object_path(self, g63):
        for base in (right_base(g63), left_base(g63)):
            via_objects = oracle.pair_closure(g63, oracle.mu_generators(g63, base))
            via_codes = oracle.pair_closure_codes(g63, oracle.mu_generator_codes(g63, base))
            assert sorted(m.x * 63 + m.y for m in via_objects) == via_codes.tolist()

    def test_rho_generators_are_gamma_of_right_base(self, g63):
        # {rho(g)} and {mu(s, z) : s in R} generate from the same set
        assert set(oracle.rho_generators(g63)) == set(
            oracle.mu_generators(g63, right_base(g63))
        )

    def test_closure_contains_generators_and_is_closed(self, g5):
        gens = oracle.rho_generators(g5)
        result = oracle.pair_closure(g5, gens)
        assert set(gens) <= result
        for f in result:
            for g in gens:
                assert mumap.compose(g5, f, g) in result


class TestTableClosure:
    @pytest.mark.parametrize(
        "mk,side,expected",
        [
            ((3, 2), "right", 6),
            ((3, 2), "left", 9),
            ((7, 6), "right", 49),
            ((7, 6), "left", 28),
            ((5, 3), "right", 25),
            ((5, 3), "left", 25),
            ((63, 2), "right", 1566),
        ],
    )
    def test_sizes(self, mk, side, expected):
        p = group.validate(*mk)
        assert len(oracle.table_closure(p, side)) == expected

    def test_cap(self, g63):
        with pytest.raises(oracle.CapExceeded):
            oracle.table_closure(g63, "right", cap=100)

    @pytest.mark.parametrize("fixture", ["g3", "g5", "g7", "g63"])
    @pytest.mark.parametrize("side", ["right", "left"])
    def test_generator_build_matches_scalar_commutators(self, fixture, side, request):
        p = request.getfixturevalue(fixture)
        gens, _ = oracle._generator_tables(p, side)
        want = scalar_tables(p, side)
        n = p.n
        for h_idx, col in enumerate(want):
            assert all(e.j == 0 for e in col)
            assert gens[h_idx].tolist() == [e.i for e in col]

    def test_closure_closed_under_composition(self, g3):
        tables = oracle.table_closure(g3, "left")
        by_data = {t.data for t in tables}
        mn = 6
        for t1 in tables:
            a1 = np.frombuffer(t1.data, dtype=np.uint16)
            for t2 in tables:
                restr = np.frombuffer(t2.data, dtype=np.uint16)[:: g3.n]
                comp = restr[a1.astype(np.int64)]
                assert comp.astype(np.uint16).tobytes() in by_data

    def test_tables_correspond_to_pair_closure(self, g7):
        for side, base in (("right", right_base(g7)), ("left", left_base(g7))):
            pairs = oracle.pair_closure(g7, oracle.mu_generators(g7, base))
            translated = {oracle.table_of(g7, mu).data for mu in pairs}
            tables = {t.data for t in oracle.table_closure(g7, side)}
            assert translated == tables

    def test_function_table_accessors(self, g3):
        mu = MuMap(1, 1)
        t = oracle.table_of(g3, mu)
        assert len(t) == 6
        assert t.targets() == tuple(
            mumap.apply(g3, mu, g).i for g in g3.elements()
        )


class TestFingerprints:
    def test_matches_exact_closure(self, g63):
        w = oracle._fp_weights(63 * 6, oracle._FP_SEED)
        for side in ("right", "left"):
            fp = oracle.table_fingerprints(g63, side)
            rows = np.array(
                [np.frombuffer(t.data, dtype=np.uint16) for t in oracle.table_closure(g63, side)],
                dtype=np.int64,
            )
            exact = np.unique(oracle._combine64(rows @ w[0], rows @ w[1]))
            assert np.array_equal(fp, exact)

    def test_translation_side_matches(self, g63):
        for side, base in (("right", right_base(g63)), ("left", left_base(g63))):
            a = sigma.analyze(g63, base)
            codes = np.asarray(sigma.element_codes(a), dtype=np.int64)
            mfp = oracle.mu_table_fingerprints(g63, codes)
            assert mfp.size == codes.size  # distinct pairs gave distinct tables
            assert np.array_equal(mfp, oracle.table_fingerprints(g63, side))

    def test_deterministic(self, g7):
        a = oracle.table_fingerprints(g7, "right")
        b = oracle.table_fingerprints(g7, "right")
        assert np.array_equal(a, b)

    def test_cap(self, g63):
        with pytest.raises(oracle.CapExceeded):
            oracle.table_fingerprints(g63, "right", cap=10)


class TestDifferentialCheck:
    def test_g63_values(self, g63):
        rep = oracle.differential_check(g63, right_base(g63))
        assert rep.agree and rep.pair_agree and rep.table_agree
        assert rep.engine_order == rep.pair_order == rep.table_order == 1566
        assert rep.base_label == "right"
        assert rep.table_status == "ok"
        assert rep.witness is None

    def test_s3_left(self, g3):
        rep = oracle.differential_check(g3, left_base(g3))
        assert rep.agree
        assert rep.engine_order == 9

    def test_custom_base(self, g5):
        rep = oracle.differential_check(g5, make_base(5, [0, 4]))
        assert rep.agree
        assert rep.engine_order == rep.pair_order == 15
        assert rep.base_label == "custom"
        assert rep.table_status == "not_applicable"
        assert rep.table_order is None

    def test_cap_exceeded_still_runs_pair(self, g63):
        rep = oracle.differential_check(g63, right_base(g63), cap=100)
        assert rep.table_status == "cap_exceeded"
        assert rep.pair_agree
        assert rep.agree  # pair route agreed; table was skipped, not failed

    @pytest.mark.parametrize("mk", [(9, 2), (11, 7), (15, 2), (21, 2), (25, 7)])
    def test_small_groups_agree_both_sides(self, mk):
        p = group.validate(*mk)
        for base in (right_base(p), left_base(p)):
            rep = oracle.differential_check(p, base)
            assert rep.agree, rep
