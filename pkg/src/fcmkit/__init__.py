"""fcmkit: a fuzzy cognitive map toolkit.

Imprecise stakeholder weights (numeric or linguistic) are unified into the
beta scale of a 13-term fuzzy vocabulary; maps are analyzed with consensus
centralities, condensed along a three-level hierarchy, aggregated into
group and social maps, simulated to steady state under clamped policy
scenarios, and candidate policies are ranked by a weighted
importance/feasibility/influence score.
"""

from . import errors
from .aggregation import CancellationWarning, WeightedMapSet, aggregate, augment
from .appropriateness import (
    AppropriatenessReport,
    CriterionWeights,
    TargetGroup,
    TargetSets,
    appropriateness,
    feasibility,
    importance,
    influence,
    targets_from_hierarchy,
)
from .centrality import (
    EQUAL_WEIGHTS,
    CentralityReport,
    MapCentrality,
    PrioritizationWeights,
    betweenness_centrality,
    closeness_centrality,
    compute_report,
    consensus_centrality,
    credibility_from_ccm,
    degree_centrality,
    fcm_credibility_weights,
    map_centrality,
    node_credibility_weights,
)
from .condensation import (
    CondensationHierarchy,
    condense,
    condensed_weight,
    renormalize_group_cw,
)
from .corpus import (
    CorpusManifest,
    CorpusStore,
    ManifestEntry,
    bundled_demo_path,
    bundled_hierarchy,
    generate_synthetic_corpus,
)
from .model import (
    ConceptNode,
    FcmModel,
    Provenance,
    density,
    load_fcm,
    save_fcm,
    union_nodes,
)
from .simulation import (
    DrillBatch,
    ScenarioComparison,
    ScenarioSpec,
    SimulationResult,
    compare,
    drill_down,
    preset_states,
    run,
    step,
)
from .twotuple import (
    BLTS_13,
    TERMS_11,
    Fuzzy2Tuple,
    LinguisticTermSet,
    beta_from_numeric,
    beta_from_tuple,
    defuzzify,
    membership,
    normalize_to_blts,
    tuple_from_beta,
    tuple_from_term,
)

__version__ = "0.1.0"
