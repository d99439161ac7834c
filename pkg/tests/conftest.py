import numpy as np
import pytest

import fcmkit as fk
from fcmkit import pipeline as pl

from _published import NODE_IDS, S3_NUMERIC


@pytest.fixture(scope="session")
def demo_model() -> fk.FcmModel:
    return fk.load_fcm(fk.bundled_demo_path())


@pytest.fixture(scope="session")
def hierarchy() -> fk.CondensationHierarchy:
    return fk.bundled_hierarchy()


def make_model(weights, ids=None, level="variable", group="experts", stakeholder="toy"):
    weights = np.asarray(weights, dtype=float)
    n = weights.shape[0]
    ids = list(ids) if ids else [f"n{k}" for k in range(n)]
    nodes = tuple(fk.ConceptNode(id=i, label=i, level=level) for i in ids)
    prov = fk.Provenance(
        stakeholder_id=stakeholder, group_id=group, level=level, source_format="beta"
    )
    return fk.FcmModel(nodes=nodes, weights=weights, provenance=prov)


@pytest.fixture
def toy_model_factory():
    return make_model


@pytest.fixture(scope="session")
def paper_workspace(tmp_path_factory):
    """A fully processed paper-scale workspace, shared across test modules."""
    ws = tmp_path_factory.mktemp("corpus") / "ws"
    pl.run_all(ws, seed=1)
    return ws


@pytest.fixture(scope="session")
def paper_store(paper_workspace):
    return pl.open_store(paper_workspace)
