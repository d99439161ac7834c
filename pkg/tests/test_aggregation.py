"""Augmentation and credibility-weighted aggregation."""

import warnings

import numpy as np
import pytest

import fcmkit as fk
from fcmkit.aggregation import CancellationWarning, WeightedMapSet
from fcmkit.errors import ConfigurationError, ConsistencyError, DegenerateInputError

from _oracles import random_digraph


def nodes_for(ids, level="variable"):
    return tuple(fk.ConceptNode(id=i, label=i, level=level) for i in ids)


class TestAugment:
    def test_already_on_union(self, toy_model_factory):
        m = toy_model_factory([[0, 2.0], [0, 0]], ids=["a", "b"])
        out = fk.augment(m, nodes_for(["a", "b"]))
        assert np.array_equal(out.weights, m.weights)

    def test_zero_padding(self, toy_model_factory):
        m = toy_model_factory([[0, 2.0], [0, 0]], ids=["a", "b"])
        out = fk.augment(m, nodes_for(["a", "b", "c"]))
        assert out.ids == ("a", "b", "c")
        assert out.weight("a", "b") == 2.0
        assert np.all(out.weights[2, :] == 0)
        assert np.all(out.weights[:, 2] == 0)

    def test_reordering(self, toy_model_factory):
        m = toy_model_factory([[0, 2.0], [0, 0]], ids=["a", "b"])
        out = fk.augment(m, nodes_for(["b", "a"]))
        assert out.weight("a", "b") == 2.0

    def test_union_size(self, toy_model_factory):
        m1 = toy_model_factory(np.zeros((3, 3)), ids=["a", "b", "c"])
        m2 = toy_model_factory(np.zeros((3, 3)), ids=["b", "c", "d"])
        union = fk.union_nodes([m1, m2])
        assert len(union) == len({"a", "b", "c"} | {"b", "c", "d"})

    def test_unknown_node_rejected(self, toy_model_factory):
        m = toy_model_factory(np.zeros((2, 2)), ids=["a", "x"])
        with pytest.raises(ConsistencyError):
            fk.augment(m, nodes_for(["a", "b"]))


class TestWeightedMapSet:
    def test_weight_validation(self, toy_model_factory):
        m = toy_model_factory(np.zeros((2, 2)))
        with pytest.raises(ConfigurationError):
            WeightedMapSet(maps=(m, m), cw=np.array([0.9, 0.9]))
        with pytest.raises(ConfigurationError):
            WeightedMapSet(maps=(m, m), cw=np.array([1.5, -0.5]))

    def test_level_mismatch(self, toy_model_factory):
        a = toy_model_factory(np.zeros((2, 2)), level="variable")
        b = toy_model_factory(np.zeros((2, 2)), level="concept")
        with pytest.raises(ConfigurationError):
            WeightedMapSet(maps=(a, b), cw=np.array([0.5, 0.5]))

    def test_empty_rejected(self):
        with pytest.raises(DegenerateInputError):
            WeightedMapSet(maps=(), cw=np.array([]))


class TestAggregate:
    def test_single_map_identity(self, demo_model):
        out = fk.aggregate(WeightedMapSet(maps=(demo_model,), cw=np.array([1.0])))
        assert out.ids == tuple(sorted(demo_model.ids))
        for a in demo_model.ids:
            for b in demo_model.ids:
                assert out.weight(a, b) == demo_model.weight(a, b)

    def test_identical_maps_convexity_identity(self, demo_model):
        out = fk.aggregate(
            WeightedMapSet(maps=(demo_model, demo_model), cw=np.array([0.5, 0.5]))
        )
        for a in demo_model.ids:
            for b in demo_model.ids:
                assert out.weight(a, b) == pytest.approx(demo_model.weight(a, b), abs=1e-12)

    def test_permutation_invariant(self, toy_model_factory):
        rng = np.random.default_rng(41)
        maps = [toy_model_factory(random_digraph(rng, 5), stakeholder=f"s{k}") for k in range(3)]
        cw = np.array([0.2, 0.3, 0.5])
        a = fk.aggregate(WeightedMapSet(maps=tuple(maps), cw=cw))
        order = [2, 0, 1]
        b = fk.aggregate(
            WeightedMapSet(maps=tuple(maps[k] for k in order), cw=cw[order])
        )
        assert a.ids == b.ids
        assert np.allclose(a.weights, b.weights, atol=1e-12)

    def test_entrywise_convexity_bound(self, toy_model_factory):
        rng = np.random.default_rng(43)
        for _ in range(20):
            maps = tuple(
                toy_model_factory(random_digraph(rng, 6), stakeholder=f"s{k}") for k in range(4)
            )
            raw = rng.uniform(0.1, 1.0, size=4)
            out = fk.aggregate(WeightedMapSet(maps=maps, cw=raw / raw.sum()))
            stacked = np.stack([m.weights for m in maps])
            assert np.all(np.abs(out.weights) <= np.abs(stacked).max(axis=0) + 1e-12)

    def test_edge_support_is_union(self, toy_model_factory):
        m1 = toy_model_factory([[0, 2.0], [0, 0]], ids=["a", "b"], stakeholder="s1")
        m2 = toy_model_factory([[0, 0], [3.0, 0]], ids=["a", "b"], stakeholder="s2")
        out = fk.aggregate(WeightedMapSet(maps=(m1, m2), cw=np.array([0.5, 0.5])))
        assert out.weight("a", "b") != 0
        assert out.weight("b", "a") != 0

    def test_exact_cancellation_warns(self, toy_model_factory):
        m1 = toy_model_factory([[0, 2.0], [0, 0]], ids=["a", "b"], stakeholder="s1")
        m2 = toy_model_factory([[0, -2.0], [0, 0]], ids=["a", "b"], stakeholder="s2")
        with pytest.warns(CancellationWarning):
            out = fk.aggregate(WeightedMapSet(maps=(m1, m2), cw=np.array([0.5, 0.5])))
        assert out.weight("a", "b") == 0.0

    def test_mention_counts_recorded(self, toy_model_factory):
        m1 = toy_model_factory(np.zeros((2, 2)), ids=["a", "b"], stakeholder="s1")
        m2 = toy_model_factory(np.zeros((2, 2)), ids=["b", "c"], stakeholder="s2")
        out = fk.aggregate(WeightedMapSet(maps=(m1, m2), cw=np.array([0.5, 0.5])))
        assert out.node("b").mention_count == 2
        assert out.node("a").mention_count == 1

    def test_provenance_marks_aggregate(self, demo_model):
        out = fk.aggregate(WeightedMapSet(maps=(demo_model,), cw=np.array([1.0])))
        assert out.provenance.group_id == "aggregate"
        assert out.provenance.sources == (demo_model.id,)
