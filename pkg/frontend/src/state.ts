/** Explorer state: selected model, clamp sliders, comparisons, drill path.
 *
 * One simulation runs at a time; run requests arriving while busy are
 * coalesced into a single queued follow-up. Drill navigation snapshots the
 * clamp settings so Back always restores the prior cohort exactly.
 */

import {
  ApiClient,
  ApiError,
  CentralityDoc,
  ComparisonDoc,
  ModelDetail,
  RankReport,
  ScenarioRequest,
} from "./api.js";

export type RunStatus = "idle" | "running" | "converged" | "unconverged" | "error";

export interface DrillFrame {
  /** cohort selector: a concept's key variables, or a key variable's variables */
  target: { concept_id?: string; key_variable_id?: string };
  /** clamp settings to restore when navigating back */
  clamps: Record<string, number>;
  modelId: string;
  ranking: RankReport | null;
}

export interface ExplorerSnapshot {
  modelId: string | null;
  model: ModelDetail | null;
  centrality: CentralityDoc | null;
  clamps: Record<string, number>;
  comparison: ComparisonDoc | null;
  status: RunStatus;
  statusDetail: string;
  drillPath: DrillFrame[];
  ranking: RankReport | null;
  scenario: Omit<ScenarioRequest, "clamps">;
}

type Listener = (snapshot: ExplorerSnapshot) => void;

export class ExplorerStore {
  private modelId: string | null = null;
  private model: ModelDetail | null = null;
  private centrality: CentralityDoc | null = null;
  private clamps: Record<string, number> = {};
  private comparison: ComparisonDoc | null = null;
  private status: RunStatus = "idle";
  private statusDetail = "";
  private drillPath: DrillFrame[] = [];
  private ranking: RankReport | null = null;
  private scenario: Omit<ScenarioRequest, "clamps"> = { uniform: 0.5 };

  private inFlight = false;
  private queued = false;
  private listeners: Listener[] = [];

  constructor(private readonly api: ApiClient) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify(): void {
    const snap = this.snapshot();
    for (const listener of this.listeners) {
      listener(snap);
    }
  }

  snapshot(): ExplorerSnapshot {
    return {
      modelId: this.modelId,
      model: this.model,
      centrality: this.centrality,
      clamps: { ...this.clamps },
      comparison: this.comparison,
      status: this.status,
      statusDetail: this.statusDetail,
      drillPath: [...this.drillPath],
      ranking: this.ranking,
      scenario: { ...this.scenario },
    };
  }

  get busy(): boolean {
    return this.inFlight;
  }

  setScenarioDefaults(scenario: Omit<ScenarioRequest, "clamps">): void {
    this.scenario = { ...scenario };
    this.notify();
  }

  async selectModel(modelId: string): Promise<void> {
    this.modelId = modelId;
    this.model = await this.api.getModel(modelId);
    this.centrality = await this.api.getCentrality(modelId);
    this.clamps = {};
    this.comparison = null;
    this.status = "idle";
    this.statusDetail = "";
    this.notify();
  }

  setClamp(nodeId: string, value: number | null): void {
    if (!this.model || !this.model.nodes.some((n) => n.id === nodeId)) {
      throw new Error(`unknown node ${nodeId}`);
    }
    if (value === null) {
      delete this.clamps[nodeId];
    } else {
      if (!(value >= 0 && value <= 1)) {
        throw new Error(`clamp value must lie in [0, 1], got ${value}`);
      }
      this.clamps[nodeId] = value;
    }
    this.notify();
  }

  /** Run clamp-compare for the current panel; queues if a run is in flight. */
  async runScenario(): Promise<void> {
    if (!this.modelId) {
      return;
    }
    if (this.inFlight) {
      this.queued = true; // coalesce: latest settings win when the slot frees
      return;
    }
    this.inFlight = true;
    this.status = "running";
    this.statusDetail = "";
    this.notify();
    try {
      const comparison = await this.api.compare(this.modelId, {
        ...this.scenario,
        clamps: { ...this.clamps },
      });
      this.comparison = comparison;
      this.status = "converged";
      this.statusDetail = `baseline ${comparison.baseline_iterations}, scenario ${comparison.policy_iterations} iterations`;
    } catch (err) {
      // never shown as silent zeros: unconverged runs become a warning state
      this.comparison = null;
      if (err instanceof ApiError && err.status === 422) {
        this.status = "unconverged";
        this.statusDetail = err.message;
      } else {
        this.status = "error";
        this.statusDetail = err instanceof Error ? err.message : String(err);
      }
    } finally {
      this.inFlight = false;
      this.notify();
    }
    if (this.queued) {
      this.queued = false;
      await this.runScenario();
    }
  }

  /** Drill into a concept (or key variable), remembering how to come back. */
  async drillInto(target: { concept_id?: string; key_variable_id?: string }): Promise<void> {
    if (!this.modelId) {
      return;
    }
    this.drillPath.push({
      target,
      clamps: { ...this.clamps },
      modelId: this.modelId,
      ranking: this.ranking,
    });
    try {
      this.ranking = await this.api.rank(target);
    } catch (err) {
      this.ranking = null;
      this.status = "error";
      this.statusDetail = err instanceof Error ? err.message : String(err);
    }
    this.notify();
  }

  /** Reverse the last drill step, restoring cohort and clamp settings. */
  async drillBack(): Promise<void> {
    const frame = this.drillPath.pop();
    if (!frame) {
      return;
    }
    if (frame.modelId !== this.modelId) {
      await this.selectModel(frame.modelId);
    }
    this.clamps = { ...frame.clamps };
    this.ranking = frame.ranking;
    this.notify();
  }
}
