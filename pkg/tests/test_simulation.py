"""Clamped fixed-point simulation, comparison, and drill-down."""

import numpy as np
import pytest

import fcmkit as fk
from fcmkit import simulation as sim
from fcmkit.errors import (
    ConfigurationError,
    ConsistencyError,
    ShapeError,
    UsageError,
)

from _oracles import random_digraph

# verified run of the bundled demo map: uniform 0.5 start, lambda 1,
# tolerance 1e-5; converged after 11 iterations
DEMO_GOLDEN_STEADY = np.array([
    0.7393653435381706, 0.589493596804177, 0.40577304015281856,
    0.41625866407806744, 0.2758573173012491, 0.7874040535050122,
    0.7554948142444937, 0.6187955624039404, 0.7239099658056639,
    0.6032242492198584, 0.6752101370696324, 0.3500866904965805,
    0.28456472127267823,
])


class TestScenarioSpec:
    def test_state_range_checked(self):
        with pytest.raises(ConfigurationError):
            sim.ScenarioSpec(initial_state={"a": 1.2})
        with pytest.raises(ConfigurationError):
            sim.ScenarioSpec(initial_state={"a": 0.5}, clamps={"a": -0.1})

    def test_parameter_validation(self):
        with pytest.raises(ConfigurationError):
            sim.ScenarioSpec(initial_state={}, squash_lambda=0.0)
        with pytest.raises(ConfigurationError):
            sim.ScenarioSpec(initial_state={}, tolerance=-1.0)
        with pytest.raises(ConfigurationError):
            sim.ScenarioSpec(initial_state={}, max_iterations=0)

    def test_unknown_clamp_rejected_at_run(self, toy_model_factory):
        m = toy_model_factory(np.zeros((2, 2)))
        spec = sim.ScenarioSpec(initial_state={"n0": 0.5, "n1": 0.5}, clamps={"zz": 1.0})
        with pytest.raises(ConsistencyError):
            sim.run(m, spec)

    def test_incomplete_initial_state(self, toy_model_factory):
        m = toy_model_factory(np.zeros((2, 2)))
        with pytest.raises(ConfigurationError):
            sim.run(m, sim.ScenarioSpec(initial_state={"n0": 0.5}))


class TestStep:
    def test_zero_matrix_gives_half(self, toy_model_factory):
        m = toy_model_factory(np.zeros((3, 3)))
        out = sim.step(m, np.array([0.1, 0.9, 0.4]), sim.ScenarioSpec.uniform(m))
        assert np.allclose(out, 0.5)

    def test_single_edge_hand_value(self, toy_model_factory):
        m = toy_model_factory([[0, 6.0], [0, 0]])
        out = sim.step(m, np.array([1.0, 0.0]), sim.ScenarioSpec.uniform(m))
        assert out[1] == pytest.approx(1 / (1 + np.exp(-1.0)), abs=1e-12)

    def test_clamp_overrides(self, toy_model_factory):
        m = toy_model_factory([[0, -6.0], [0, 0]])
        spec = sim.ScenarioSpec.uniform(m)
        clamped = sim.ScenarioSpec(initial_state=spec.initial_state, clamps={"n1": 1.0})
        out = sim.step(m, np.array([1.0, 1.0]), clamped)
        assert out[1] == 1.0

    def test_dimension_mismatch(self, toy_model_factory):
        m = toy_model_factory(np.zeros((3, 3)))
        with pytest.raises(ShapeError):
            sim.step(m, np.zeros(2), sim.ScenarioSpec.uniform(m))


class TestRun:
    def test_zero_matrix_two_iterations(self, toy_model_factory):
        m = toy_model_factory(np.zeros((4, 4)))
        res = sim.run(m, sim.ScenarioSpec.uniform(m, value=0.9, tolerance=1e-5))
        assert res.converged
        assert res.iterations <= 2
        assert np.allclose(res.steady_state, 0.5)

    def test_trajectory_length_invariant(self, demo_model):
        res = sim.run(demo_model, sim.ScenarioSpec.uniform(demo_model))
        assert res.trajectory.shape == (res.iterations + 1, demo_model.n_nodes)

    def test_demo_converges_to_golden(self, demo_model):
        res = sim.run(demo_model, sim.ScenarioSpec.uniform(demo_model))
        assert res.converged
        assert res.iterations <= 100
        assert np.allclose(res.steady_state, DEMO_GOLDEN_STEADY, atol=1e-12)

    def test_bitwise_determinism(self, demo_model):
        spec = sim.ScenarioSpec.uniform(demo_model, clamps={"c_7": 1.0})
        a = sim.run(demo_model, spec)
        b = sim.run(demo_model, spec)
        assert np.array_equal(a.trajectory, b.trajectory)

    def test_states_bounded_and_clamps_exact(self, demo_model):
        spec = sim.ScenarioSpec.uniform(demo_model, clamps={"c_3": 0.0, "c_7": 1.0})
        res = sim.run(demo_model, spec)
        free = [i for i, n in enumerate(demo_model.ids) if n not in ("c_3", "c_7")]
        post = res.trajectory[1:]
        assert np.all(post[:, free] > 0) and np.all(post[:, free] < 1)
        assert np.all(post[:, demo_model.ids.index("c_3")] == 0.0)
        assert np.all(post[:, demo_model.ids.index("c_7")] == 1.0)

    def test_non_convergence_reported_not_raised(self, demo_model):
        spec = sim.ScenarioSpec.uniform(demo_model, tolerance=1e-12, max_iterations=3)
        res = sim.run(demo_model, spec)
        assert not res.converged
        assert res.iterations == 3

    def test_contraction_regime_always_converges(self, toy_model_factory):
        rng = np.random.default_rng(53)
        for _ in range(30):
            n = int(rng.integers(3, 10))
            m = toy_model_factory(random_digraph(rng, n, p=0.5))
            col = np.abs(m.weights / 6.0).sum(axis=0).max()
            if col == 0:
                continue
            lam = 2.0 / col  # well inside lambda * max col sum < 4
            spec = sim.ScenarioSpec.uniform(
                m, squash_lambda=lam, tolerance=1e-8, max_iterations=500
            )
            assert lam * col < 4
            res = sim.run(m, spec)
            assert res.converged

    def test_monotone_response_over_clamp_grid(self, toy_model_factory):
        m = toy_model_factory([[0, 4.5], [0, 0]])
        previous = -1.0
        for clamp in np.linspace(0.0, 1.0, 11):
            spec = sim.ScenarioSpec.uniform(m, clamps={"n0": float(clamp)}, tolerance=1e-10)
            res = sim.run(m, spec)
            assert res.converged
            sink = res.state_of("n1")
            assert sink >= previous - 1e-12
            previous = sink


class TestCompare:
    def test_identical_runs_zero_delta(self, demo_model):
        spec = sim.ScenarioSpec.uniform(demo_model)
        a = sim.run(demo_model, spec)
        b = sim.run(demo_model, spec)
        comparison = sim.compare(a, b)
        assert np.all(comparison.deltas == 0)

    def test_positive_chain_sign_propagation(self, toy_model_factory):
        m = toy_model_factory([[0, 5.0, 0], [0, 0, 5.0], [0, 0, 0]])
        base_spec = sim.ScenarioSpec.uniform(m, tolerance=1e-9, max_iterations=500)
        baseline = sim.run(m, base_spec)
        high = max(baseline.state_of("n0") + 0.2, 0.99)
        policy = sim.run(
            m,
            sim.ScenarioSpec(
                initial_state=base_spec.initial_state,
                clamps={"n0": high},
                tolerance=1e-9,
                max_iterations=500,
            ),
        )
        comparison = sim.compare(baseline, policy, targets=["n1", "n2"])
        assert comparison.delta_of("n1") >= 0
        assert comparison.delta_of("n2") >= 0
        assert comparison.target_summary["n1"] == comparison.delta_of("n1")

    def test_unconverged_rejected(self, demo_model):
        good = sim.run(demo_model, sim.ScenarioSpec.uniform(demo_model))
        bad = sim.run(
            demo_model,
            sim.ScenarioSpec.uniform(demo_model, tolerance=1e-12, max_iterations=2),
        )
        with pytest.raises(UsageError):
            sim.compare(good, bad)

    def test_mismatched_nodes_rejected(self, demo_model, toy_model_factory):
        a = sim.run(demo_model, sim.ScenarioSpec.uniform(demo_model))
        other = toy_model_factory(np.zeros((2, 2)))
        b = sim.run(other, sim.ScenarioSpec.uniform(other))
        with pytest.raises(ConsistencyError):
            sim.compare(a, b)


class TestPresets:
    def test_preset_states(self):
        states = sim.preset_states("jordan-2013")
        assert len(states) == 13
        assert states["C"] == 1.0
        assert states["A"] == 0.33
        assert states["L"] == 0.5  # undocumented in the source data, defaulted

    def test_unknown_preset(self):
        with pytest.raises(ConfigurationError):
            sim.preset_states("nope")


class TestDrillDown:
    def test_water_projects_batch(self, paper_store):
        batch = sim.drill_down("F", paper_store.hierarchy, paper_store)
        kv_ids = [kv for kv, _ in batch.key_variable_results]
        assert kv_ids == ["FA", "FB", "FC", "FD"]
        # 13 original variables under F in the bundled hierarchy
        total_vars = sum(len(v) for v in batch.variable_results.values())
        assert total_vars == 13
        assert [v for v, _ in batch.variable_results["FD"]] == ["FD1"]
        for _, comparison in batch.key_variable_results:
            assert comparison.deltas.shape == (42,)

    def test_unknown_concept(self, paper_store):
        with pytest.raises(ConsistencyError):
            sim.drill_down("FA", paper_store.hierarchy, paper_store)

    def test_childless_concept_warns_with_empty_batch(self, paper_store):
        from fcmkit.condensation import CondensationHierarchy

        degenerate = CondensationHierarchy.from_tree([
            {"id": "X", "label": "empty", "key_variables": []},
            {"id": "Y", "label": "ok", "key_variables": [
                {"id": "YA", "label": "kv", "variables": [{"id": "YA1", "label": "v"}]},
            ]},
        ])
        with pytest.warns(UserWarning, match="no key variables"):
            batch = sim.drill_down("X", degenerate, paper_store)
        assert batch.key_variable_results == ()
        assert batch.variable_results == {}
