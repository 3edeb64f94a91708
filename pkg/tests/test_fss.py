import math
import random

import numpy as np
import pytest

from degres import (
    DissimilarityMatrix,
    MetricConfig,
    ValidationError,
    WeightMode,
    fss_baseline,
    fss_weighted,
    node_weight,
    pair_weight,
)
from degres.fss import weighted_contributions

import oracles
from conftest import make_element, make_instance, random_instance


def three_node_instance():
    """Fixed pairwise distances d12=0.6, d13=0.4, d23=0.7 via a cached matrix."""
    els = [make_element(f"e{i}", num=(i / 10,)) for i in (1, 2, 3)]
    values = np.array(
        [
            [0.0, 0.6, 0.4],
            [0.6, 0.0, 0.7],
            [0.4, 0.7, 0.0],
        ]
    )
    return make_instance(els, dissimilarity=DissimilarityMatrix(values=values))


class TestFssBaseline:
    def test_clones_score_zero(self):
        inst = make_instance([make_element(f"e{i}", num=(0.4,)) for i in (1, 2, 3)])
        assert fss_baseline(inst, "F1", 0.5) == 0.0

    def test_hand_enumerated_ordered_pairs(self):
        # distinct pairs at delta 0.5: (1,2) and (2,3) -> 4 of 6 ordered
        assert fss_baseline(three_node_instance(), "F1", 0.5) == pytest.approx(2 / 3, abs=1e-15)

    def test_fully_distinct(self):
        els = [make_element(f"e{i}", cat=(i,), num=()) for i in (1, 2, 3, 4)]
        inst = make_instance(els)
        assert fss_baseline(inst, "F1", 0.5) == 1.0

    def test_single_realization_scores_zero(self):
        inst = make_instance([make_element("e1")])
        assert fss_baseline(inst, "F1", 0.5) == 0.0

    def test_threshold_tie_not_distinct(self):
        els = [make_element("e1", num=(0.0,)), make_element("e2", num=(0.5,))]
        inst = make_instance(els)
        assert fss_baseline(inst, "F1", 0.5) == 0.0  # d == delta exactly

    def test_unknown_function(self):
        with pytest.raises(ValidationError, match="unknown function"):
            fss_baseline(three_node_instance(), "F9", 0.5)


class TestNodeWeight:
    def test_none_mode(self):
        el = make_element("e1", availability=0.1, mtbf=1.0)
        assert node_weight(el, WeightMode.NONE, MetricConfig()) == 1.0

    def test_availability_indicator_annihilates(self):
        el = make_element("e1", availability=0.4)
        assert node_weight(el, WeightMode.AVAILABILITY, MetricConfig(a_min=0.5)) == 0.0

    def test_availability_passes(self):
        el = make_element("e1", availability=0.8)
        assert node_weight(el, WeightMode.AVAILABILITY, MetricConfig(a_min=0.5)) == 0.8

    def test_reliability_mode(self):
        el = make_element("e1", mtbf=336.0)
        cfg = MetricConfig(r_min=0.5, mission_time=168.0)
        assert node_weight(el, WeightMode.RELIABILITY, cfg) == pytest.approx(
            math.exp(-0.5), abs=1e-12
        )

    def test_joint_hand_product(self):
        el = make_element("e1", availability=0.9, mtbf=336.0)
        cfg = MetricConfig(a_min=0.5, r_min=0.5, mission_time=168.0)
        assert node_weight(el, WeightMode.JOINT, cfg) == pytest.approx(
            0.9 * math.exp(-0.5), abs=1e-12
        )
        assert node_weight(el, WeightMode.JOINT, cfg) == pytest.approx(0.545878, abs=1e-6)


class TestPairWeight:
    def test_zero_dissimilarity(self):
        a = make_element("e1")
        b = make_element("e2")
        assert pair_weight(a, b, 0.0) == 0.0

    def test_capacity_min_rule(self):
        a = make_element("e1", capacity=1.0, load=0.2)
        b = make_element("e2", capacity=0.5, load=0.2)
        assert pair_weight(a, b, 0.8) == pytest.approx(0.4, abs=1e-15)

    def test_load_gap_dampens(self):
        a = make_element("e1", capacity=1.0, load=0.0)
        b = make_element("e2", capacity=1.0, load=1.0)
        assert pair_weight(a, b, 1.0) == pytest.approx(0.5, abs=1e-15)


class TestFssWeighted:
    def test_two_node_symmetric_sum(self):
        # D = 0.8 via four mismatched categoricals and one shared numeric
        a = make_element("e1", cat=(0, 0, 0, 0), num=(0.5,), capacity=1.0, load=0.2)
        b = make_element("e2", cat=(1, 1, 1, 1), num=(0.5,), capacity=0.5, load=0.2)
        inst = make_instance([a, b])
        rep = fss_weighted(inst, "F1", MetricConfig(weight_mode="none", delta=0.5))
        assert rep.weighted == pytest.approx(0.4, abs=1e-15)
        assert rep.baseline == 1.0
        assert rep.per_node_weights == {"e1": 1.0, "e2": 1.0}
        assert rep.admissible_count == 2

    def test_all_nodes_fail_joint_gate(self):
        els = [
            make_element(f"e{i}", cat=(i,), num=(), availability=0.3, mtbf=10.0)
            for i in (1, 2, 3)
        ]
        inst = make_instance(els)
        rep = fss_weighted(inst, "F1", MetricConfig(weight_mode="joint"))
        assert rep.weighted == 0.0
        assert rep.admissible_count == 0
        assert rep.baseline == 1.0  # structurally distinct, operationally dead

    def test_clones_score_zero(self):
        els = [make_element(f"e{i}", num=(0.7,)) for i in (1, 2, 3)]
        inst = make_instance(els)
        rep = fss_weighted(inst, "F1", MetricConfig())
        assert rep.weighted == 0.0
        assert rep.baseline == 0.0

    def test_bound_chain_on_random_instances(self):
        for seed in range(30):
            inst = random_instance(seed)
            cfg = MetricConfig()
            for fid in inst.functions:
                rep = fss_weighted(inst, fid, cfg)
                assert 0.0 <= rep.weighted <= rep.baseline <= 1.0

    def test_matches_oracle_spot(self):
        inst = random_instance(123, n=9)
        cfg = MetricConfig(weight_mode="joint")
        for fid in inst.functions:
            rep = fss_weighted(inst, fid, cfg)
            assert rep.baseline == pytest.approx(
                oracles.fss_baseline(inst, fid, cfg.delta), abs=1e-12
            )
            assert rep.weighted == pytest.approx(
                oracles.fss_weighted(inst, fid, cfg), abs=1e-12
            )

    def test_permutation_invariance(self):
        inst = random_instance(9, n=8)
        cfg = MetricConfig()
        base = {fid: fss_weighted(inst, fid, cfg) for fid in inst.functions}

        rnd = random.Random(4)
        shuffled = list(inst.elements)
        rnd.shuffle(shuffled)
        relabel = {el.id: f"node-{i:02d}" for i, el in enumerate(shuffled)}
        renamed = [
            make_element(
                relabel[el.id],
                cat=el.signature.categorical,
                num=el.signature.numeric,
                capacity=el.capacity,
                load=el.load,
                availability=el.availability,
                mtbf=el.mtbf,
                layer="L1",
                supports=el.supports,
            )
            for el in shuffled
        ]
        inst2 = make_instance(renamed, functions=inst.functions)
        for fid in inst.functions:
            rep2 = fss_weighted(inst2, fid, cfg)
            assert rep2.baseline == pytest.approx(base[fid].baseline, abs=1e-12)
            assert rep2.weighted == pytest.approx(base[fid].weighted, abs=1e-12)

    def test_delta_monotonicity_spot(self):
        inst = random_instance(55, n=10)
        for fid in inst.functions:
            values = [fss_baseline(inst, fid, d) for d in (0.3, 0.4, 0.5, 0.6, 0.7)]
            assert all(a >= b for a, b in zip(values, values[1:]))


class TestWeightedContributions:
    def test_clone_among_distinct_peers_scores_zero(self):
        # e1 never forms a distinct pair (its row is zero) while e2/e3 do
        els = [make_element(f"e{i}", num=(i / 10,)) for i in (1, 2, 3)]
        values = np.array(
            [
                [0.0, 0.0, 0.0],
                [0.0, 0.0, 0.9],
                [0.0, 0.9, 0.0],
            ]
        )
        inst = make_instance(els, dissimilarity=DissimilarityMatrix(values=values))
        scores = weighted_contributions(inst, "F1", MetricConfig(weight_mode="none"))
        assert scores["e1"] == 0.0
        assert scores["e2"] > 0.0 and scores["e3"] > 0.0

    def test_contributions_sum_to_weighted_total(self):
        inst = random_instance(77, n=10)
        cfg = MetricConfig(weight_mode="joint")
        for fid in inst.functions:
            scores = weighted_contributions(inst, fid, cfg)
            rep = fss_weighted(inst, fid, cfg)
            n = rep.n
            if n > 1:
                assert sum(scores.values()) == pytest.approx(
                    rep.weighted * n * (n - 1), rel=1e-9, abs=1e-12
                )
