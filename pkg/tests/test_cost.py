import math

import numpy as np
import pytest

from vinedesign import (
    Configuration,
    ContractError,
    CostWeights,
    Design,
    DimensionError,
    Target,
    forward_kinematics,
    link_cost,
    total_cost,
)
from vinedesign.cost import batch_total_cost


def straight_chain(*lengths):
    design = Design(lengths)
    config = Configuration(tuple(0.0 for _ in lengths))
    return design, config, forward_kinematics(design, config)


class TestLinkCost:
    def test_target_on_link_with_matched_orientation(self):
        design, config, pose = straight_chain(0.5, 1.0)
        cost, d, o = link_cost(pose, config, Target.from_degrees(1.0, 0.0, 0.0), 2)
        assert (cost, d, o) == pytest.approx((0.0, 0.0, 0.0), abs=1e-12)

    def test_pure_orientation_penalty(self):
        design, config, pose = straight_chain(0.5, 1.0)
        cost, d, o = link_cost(pose, config, Target.from_degrees(1.0, 0.0, 30.0), 2)
        assert d == pytest.approx(0.0, abs=1e-12)
        assert o == pytest.approx(math.pi / 6)
        assert cost == pytest.approx(math.pi / 6)  # |t| = 1

    def test_first_link_and_out_of_range_rejected(self):
        design, config, pose = straight_chain(0.5, 1.0)
        target = Target.from_degrees(1.0, 0.0, 0.0)
        with pytest.raises(IndexError):
            link_cost(pose, config, target, 1)
        with pytest.raises(IndexError):
            link_cost(pose, config, target, 3)

    def test_orientation_wraps(self):
        design = Design((0.5, 1.0))
        config = Configuration.from_degrees((170.0, 20.0))
        pose = forward_kinematics(design, config)
        # cumulative angle 190 deg == -170 deg; target at -150 deg differs by 20
        target = Target.from_degrees(-1.0, -0.3, -150.0)
        _, _, o = link_cost(pose, config, target, 2)
        assert o == pytest.approx(math.radians(20.0), abs=1e-9)


class TestTotalCost:
    def test_single_target_zero(self):
        design, config, _ = straight_chain(0.5, 1.0)
        breakdown = total_cost(design, [config], [Target.from_degrees(1.0, 0.0, 0.0)])
        assert breakdown.total == pytest.approx(0.0, abs=1e-12)
        assert breakdown.per_target[0].best_link == 2

    def test_two_identical_targets_double_cost(self):
        design, config, _ = straight_chain(0.5, 1.0)
        target = Target.from_degrees(0.9, 0.2, 10.0)
        one = total_cost(design, [config], [target])
        two = total_cost(design, [config, config], [target, target])
        assert two.total == pytest.approx(2.0 * one.total)

    def test_tie_breaks_to_lowest_link(self):
        # collinear chain with exactly-representable clamp values: (1.0, 0) is
        # 0.125 beyond link 2's clamp point and 0.125 before link 3's, so both
        # candidate links cost bit-identically and the lower index must win
        design = Design((0.5, 0.5, 0.5))
        config = Configuration((0.0, 0.0, 0.0))
        target = Target.from_degrees(1.0, 0.0, 0.0)
        weights = CostWeights(clamp_lo=0.25, clamp_hi=0.75)
        breakdown = total_cost(design, [config], [target], weights)
        by_link = {
            i: link_cost(forward_kinematics(design, config), config, target, i, weights)[0]
            for i in (2, 3)
        }
        assert by_link[2] == by_link[3]
        assert breakdown.per_target[0].best_link == 2

    def test_contract_errors(self):
        design, config, _ = straight_chain(0.5, 1.0)
        target = Target.from_degrees(1.0, 0.0, 0.0)
        with pytest.raises(ContractError):
            total_cost(design, [], [])
        with pytest.raises(DimensionError):
            total_cost(design, [config], [target, target])
        with pytest.raises(ContractError):
            total_cost(Design((1.0,)), [Configuration((0.0,))], [target])

    def test_padding_with_unused_links_never_increases_cost(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            n = int(rng.integers(2, 5))
            lengths = tuple(rng.uniform(0.1, 1.0, n))
            angles = tuple(rng.uniform(-0.5, 0.5, n))
            targets = [
                Target.from_degrees(rng.uniform(0.2, 0.9), rng.uniform(0.2, 0.9), rng.uniform(-90, 90))
                for _ in range(2)
            ]
            base = total_cost(Design(lengths), [Configuration(angles)] * 2, targets)
            padded = total_cost(
                Design(lengths + (0.3,)), [Configuration(angles + (0.0,))] * 2, targets
            )
            assert padded.total <= base.total + 1e-12

    def test_distance_contribution_scales_inversely_with_target_distance(self):
        # at a proportionally scaled design, d scales by c and the weight by
        # 1/c^2, so a pure-distance cost scales by 1/c
        design = Design((0.5, 0.5))
        config = Configuration.from_degrees((0.0, 0.0))
        target = Target.from_degrees(0.7, 0.1, 0.0)
        c = 1.7
        scaled_design = Design((0.5 * c, 0.5 * c))
        scaled_target = Target.from_degrees(0.7 * c, 0.1 * c, 0.0)
        base = total_cost(design, [config], [target])
        scaled = total_cost(scaled_design, [config], [scaled_target])
        assert scaled.total == pytest.approx(base.total / c, rel=1e-9)


class TestBatchTotalCost:
    def test_matches_scalar_path_on_random_batches(self):
        rng = np.random.default_rng(11)
        for n, m in ((2, 1), (3, 2), (5, 4)):
            targets = [
                Target.from_degrees(rng.uniform(0.2, 0.9), rng.uniform(0.2, 0.9), rng.uniform(-90, 90))
                for _ in range(m)
            ]
            batch = np.column_stack(
                [rng.uniform(0.1, 1.0, (8, n))]
                + [
                    np.column_stack([rng.uniform(-3, 3, 8), rng.uniform(-0.5, 0.5, (8, n - 1))])
                    for _ in range(m)
                ]
            )
            expected = []
            for row in batch:
                design = Design(tuple(row[:n]))
                configs = [
                    Configuration(tuple(row[n * (1 + j) : n * (2 + j)])) for j in range(m)
                ]
                expected.append(total_cost(design, configs, targets).total)
            got = batch_total_cost(batch, n, targets)
            assert got == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_rejects_bad_width(self):
        with pytest.raises(DimensionError):
            batch_total_cost(np.zeros((2, 5)), 2, [Target.from_degrees(1, 0, 0)])

    def test_weights_respected(self):
        design, config, _ = straight_chain(0.5, 1.0)
        target = Target.from_degrees(1.0, 0.0, 30.0)
        w = CostWeights(w_d=1.0, w_o=2.5)
        breakdown = total_cost(design, [config], [target], w)
        row = np.array(list(design.lengths) + list(config.angles))[None, :]
        got = batch_total_cost(row, 2, [target], w)
        assert got[0] == pytest.approx(breakdown.total)
        assert breakdown.total == pytest.approx(2.5 * math.pi / 6)
