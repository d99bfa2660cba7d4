from itertools import combinations, product

import numpy as np
import pytest

import pagerank_select as ps
from pagerank_select import LiftOrdering
from pagerank_select.cuts import BY_GAMMA, BY_INDEX, NEW, construction_coefficient
from pagerank_select.errors import DimensionMismatch, InvalidOrdering, LTooLarge
from conftest import build_corpus, fr_table, random_selection


def no_fragile_instance():
    return ps.validate(
        {"n": 2, "target": 0, "edges": [[0, 1], [1, 0]], "fragile": [], "damping": 0.85}
    )


@pytest.fixture(scope="module")
def frozen():
    inst, _ = ps.generate_random(6, 0.3, 4, None, seed=42, damping=0.85)
    return inst


class TestLShaped:
    def test_no_fragile_edges(self):
        inst = no_fragile_instance()
        cut = ps.l_shaped_cut(inst, (), 0.0)
        assert cut.coeffs == ()
        assert cut.constant == ps.hitting_times(inst, ()).fr
        assert cut.gamma_calls == 0

    def test_tight_at_incumbent(self, frozen):
        incumbent = (1, 0, 1, 0)
        low = ps.min_unconstrained(frozen)
        cut = ps.l_shaped_cut(frozen, incumbent, low)
        fr_bar = ps.hitting_times(frozen, incumbent).fr
        assert ps.eval_cut(cut, incumbent) == pytest.approx(fr_bar, abs=1e-9)

    def test_decays_with_flip_count(self, frozen):
        incumbent = (0, 1, 1, 0)
        low = ps.min_unconstrained(frozen)
        fr_bar = ps.hitting_times(frozen, incumbent).fr
        cut = ps.l_shaped_cut(frozen, incumbent, low)
        for m in range(5):
            for flips in combinations(range(4), m):
                point = tuple(1 - b if k in flips else b for k, b in enumerate(incumbent))
                expected = fr_bar + m * (low - fr_bar)
                assert ps.eval_cut(cut, point) == pytest.approx(expected, abs=1e-9)

    def test_zero_lower_bound_is_always_legal(self, frozen):
        cut = ps.l_shaped_cut(frozen, (1, 1, 1, 1), 0.0)
        assert ps.eval_cut(cut, (1, 1, 1, 1)) > 0

    def test_rejects_bound_above_incumbent_value(self, frozen):
        fr_bar = ps.hitting_times(frozen, (0, 0, 0, 0)).fr
        with pytest.raises(LTooLarge):
            ps.l_shaped_cut(frozen, (0, 0, 0, 0), fr_bar + 1.0)

    def test_constant_cut_when_bound_matches_incumbent(self):
        # with the incumbent at the optimum and the bound equal to it, every
        # coefficient vanishes and the cut pins theta at that value
        inst, _ = ps.generate_random(6, 0.3, 4, None, seed=42, damping=0.85)
        argmin, value = ps.bf_min(inst)
        cut = ps.l_shaped_cut(inst, argmin, value)
        for bits in product((0, 1), repeat=4):
            assert ps.eval_cut(cut, bits) == pytest.approx(value, abs=1e-9)


class TestNewCut:
    def test_no_fragile_edges(self):
        inst = no_fragile_instance()
        cut = ps.new_cut(inst, ())
        assert cut.constant == ps.hitting_times(inst, ()).fr
        assert cut.gamma_calls == 0

    def test_coefficient_clipped_to_zero_at_optimum_edge(self, frozen):
        # at the global argmin, dropping a selected edge cannot help, so the
        # clipped coefficient is exactly zero
        argmin, value = ps.bf_min(frozen)
        cut = ps.new_cut(frozen, argmin)
        selected = ps.support(argmin)
        assert selected
        for e in selected:
            assert construction_coefficient(cut, e) == 0.0

    def test_gamma_call_count(self, frozen):
        cut = ps.new_cut(frozen, (0, 1, 0, 1))
        assert cut.gamma_calls == frozen.z_count

    def test_signs_after_normalization(self, frozen):
        cut = ps.new_cut(frozen, (1, 0, 0, 1))
        sel = ps.support(cut.incumbent)
        for k in range(4):
            if k in sel:
                assert cut.coeffs[k] >= 0.0
            else:
                assert cut.coeffs[k] <= 0.0
            assert construction_coefficient(cut, k) <= 0.0

    def test_valid_at_every_cube_point(self):
        rng = np.random.default_rng(3)
        for inst in build_corpus(6, seed0=144, n_lo=4, n_hi=8, z_lo=1, z_hi=5):
            table = fr_table(inst)
            for _ in range(3):
                incumbent = random_selection(rng, inst.z_count)
                cut = ps.new_cut(inst, incumbent)
                for point, fr in table.items():
                    assert fr >= ps.eval_cut(cut, point) - 1e-8


class TestLiftedCut:
    def test_everything_selected_matches_new(self, frozen):
        incumbent = (1, 1, 1, 1)
        ordering, calls = ps.make_lift_ordering(frozen, incumbent, BY_INDEX)
        assert ordering.order == ()
        assert calls == 0
        lifted = ps.lifted_cut(frozen, incumbent, ordering)
        new = ps.new_cut(frozen, incumbent)
        assert lifted.constant == pytest.approx(new.constant)
        assert lifted.coeffs == pytest.approx(new.coeffs)

    def test_last_position_matches_new_coefficient(self, frozen):
        incumbent = (0, 1, 0, 0)
        ordering, _ = ps.make_lift_ordering(frozen, incumbent, BY_INDEX)
        lifted = ps.lifted_cut(frozen, incumbent, ordering)
        new = ps.new_cut(frozen, incumbent)
        last = ordering.order[-1]
        assert construction_coefficient(lifted, last) == pytest.approx(
            construction_coefficient(new, last), abs=1e-12
        )

    def test_selected_side_identical_to_new(self, frozen):
        incumbent = (1, 0, 1, 0)
        ordering, _ = ps.make_lift_ordering(frozen, incumbent, BY_INDEX)
        lifted = ps.lifted_cut(frozen, incumbent, ordering)
        new = ps.new_cut(frozen, incumbent)
        for e in ps.support(incumbent):
            assert lifted.coeffs[e] == pytest.approx(new.coeffs[e], abs=1e-12)

    def test_invalid_ordering_rejected(self, frozen):
        with pytest.raises(InvalidOrdering):
            ps.lifted_cut(frozen, (1, 0, 0, 0), LiftOrdering(order=(1, 2), strategy=BY_INDEX))

    def test_gamma_call_budget(self, frozen):
        for incumbent in [(0, 0, 0, 0), (1, 0, 1, 0), (1, 1, 1, 1)]:
            ordering, _ = ps.make_lift_ordering(frozen, incumbent, BY_INDEX)
            cut = ps.lifted_cut(frozen, incumbent, ordering)
            assert cut.gamma_calls <= frozen.z_count

    def test_valid_and_dominant_for_both_orderings(self):
        rng = np.random.default_rng(4)
        for inst in build_corpus(6, seed0=155, n_lo=4, n_hi=8, z_lo=1, z_hi=5):
            table = fr_table(inst)
            low = ps.min_unconstrained(inst)
            for _ in range(3):
                incumbent = random_selection(rng, inst.z_count)
                lsh = ps.l_shaped_cut(inst, incumbent, low)
                new = ps.new_cut(inst, incumbent)
                for strategy in (BY_INDEX, BY_GAMMA):
                    ordering, _ = ps.make_lift_ordering(inst, incumbent, strategy)
                    lifted = ps.lifted_cut(inst, incumbent, ordering)
                    for point, fr in table.items():
                        assert fr >= ps.eval_cut(lifted, point) - 1e-8
                        assert ps.eval_cut(lifted, point) >= ps.eval_cut(new, point) - 1e-9
                        assert ps.eval_cut(new, point) >= ps.eval_cut(lsh, point) - 1e-9
                    for e in range(inst.z_count):
                        assert construction_coefficient(lifted, e) >= construction_coefficient(new, e) - 1e-9
                        assert construction_coefficient(new, e) >= construction_coefficient(lsh, e) - 1e-9


class TestOrderings:
    def test_index_strategy(self, frozen):
        ordering, calls = ps.make_lift_ordering(frozen, (0, 1, 0, 0), BY_INDEX)
        assert ordering.order == (0, 2, 3)
        assert calls == 0

    def test_gamma_strategy_costs_one_call_per_edge(self, frozen):
        ordering, calls = ps.make_lift_ordering(frozen, (0, 1, 0, 0), BY_GAMMA)
        assert sorted(ordering.order) == [0, 2, 3]
        assert calls == 3
        again, _ = ps.make_lift_ordering(frozen, (0, 1, 0, 0), BY_GAMMA)
        assert again == ordering

    def test_unknown_strategy(self, frozen):
        with pytest.raises(ValueError):
            ps.make_lift_ordering(frozen, (0, 0, 0, 0), "alphabetical")


class TestEvalCut:
    def test_tightness_for_all_families(self, frozen):
        incumbent = (0, 1, 1, 0)
        fr_bar = ps.hitting_times(frozen, incumbent).fr
        low = ps.min_unconstrained(frozen)
        ordering, _ = ps.make_lift_ordering(frozen, incumbent, BY_INDEX)
        for cut in (
            ps.l_shaped_cut(frozen, incumbent, low),
            ps.new_cut(frozen, incumbent),
            ps.lifted_cut(frozen, incumbent, ordering),
        ):
            assert ps.eval_cut(cut, incumbent) == pytest.approx(fr_bar, abs=1e-9)

    def test_zero_coefficients_give_the_constant(self):
        cut = ps.Cut(constant=4.5, coeffs=(0.0, 0.0), family=NEW, incumbent=(0, 0), gamma_calls=0)
        assert ps.eval_cut(cut, (1, 0)) == 4.5
        assert ps.eval_cut(cut, (1, 1)) == 4.5

    def test_dimension_mismatch(self):
        cut = ps.Cut(constant=1.0, coeffs=(1.0,), family=NEW, incumbent=(0,), gamma_calls=0)
        with pytest.raises(DimensionMismatch):
            ps.eval_cut(cut, (0, 1))

    def test_json_shape(self, frozen):
        cut = ps.new_cut(frozen, (1, 0, 0, 0))
        blob = cut.to_json()
        assert blob["family"] == NEW
        assert blob["incumbent"] == [1, 0, 0, 0]
        assert len(blob["coeffs"]) == 4
        assert blob["gamma_calls"] == 4
        assert isinstance(blob["a0"], float)
