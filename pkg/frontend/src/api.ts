/** Typed client for the scenario service under /api/v1.
 *
 * All numbers shown anywhere in the explorer come from these responses;
 * the client never recomputes simulation math.
 */

export interface ModelSummary {
  id: string;
  level: string;
  group: string;
  role: string;
  n_nodes: number;
  n_edges: number;
  density: number | null;
}

export interface ModelNode {
  id: string;
  label: string;
  level: string;
  parent_group: string | null;
  mention_count: number;
  children: string[];
}

export interface ModelEdge {
  source: string;
  target: string;
  beta: number;
}

export interface ModelDetail extends ModelSummary {
  nodes: ModelNode[];
  edges: ModelEdge[];
}

export interface CentralityRow {
  id: string;
  degree: number;
  closeness: number;
  betweenness: number;
  ccm: number;
  credibility_weight: number;
}

export interface CentralityDoc {
  model_id: string;
  nodes: CentralityRow[];
  map_level: {
    degree: number;
    closeness: number;
    betweenness: number;
    consensus: number;
  } | null;
}

export interface ScenarioRequest {
  preset?: string;
  uniform?: number;
  initial_state?: Record<string, number>;
  clamps: Record<string, number>;
  squash_lambda?: number;
  tolerance?: number;
  max_iterations?: number;
}

export interface SimulationDoc {
  model_id: string;
  ids: string[];
  steady_state: number[];
  iterations: number;
  converged: boolean;
  clamped: string[];
}

export interface JobDoc {
  job_id: string;
  status: "pending" | "done" | "error";
  poll?: string;
  result?: SimulationDoc;
  error?: string;
}

export interface ComparisonDoc {
  model_id: string;
  ids: string[];
  baseline: number[];
  policy: number[];
  deltas: number[];
  clamped: string[];
  baseline_iterations: number;
  policy_iterations: number;
}

export interface RankRow {
  id: string;
  importance: number;
  feasibility: number;
  influence: number;
  appropriateness: number;
  rank: number;
  influence_by_target?: Record<string, number>;
}

export interface RankReport {
  weights: { importance: number; feasibility: number; influence: number };
  rows: RankRow[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(`${status}: ${detail}`);
  }
}

const sleep = (ms: number) => new Promise((resolve) => setTimeout(resolve, ms));

export class ApiClient {
  constructor(
    private readonly baseUrl = "",
    private readonly pollIntervalMs = 250,
    private readonly fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}/api/v1${path}`, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const doc = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, JSON.stringify(doc.detail ?? doc));
    }
    return doc as T;
  }

  async listModels(): Promise<ModelSummary[]> {
    const doc = await this.request<{ models: ModelSummary[] }>("GET", "/models");
    return doc.models;
  }

  getModel(id: string): Promise<ModelDetail> {
    return this.request("GET", `/models/${id}`);
  }

  getCentrality(id: string): Promise<CentralityDoc> {
    return this.request("GET", `/models/${id}/centrality`);
  }

  getHierarchy(): Promise<unknown> {
    return this.request("GET", "/hierarchy");
  }

  getPresets(): Promise<Record<string, { level: string; states: Record<string, number> }>> {
    return this.request("GET", "/presets");
  }

  /** Run a scenario; large maps come back as a job that is polled to completion. */
  async simulate(
    modelId: string,
    scenario: ScenarioRequest,
    maxPolls = 600,
  ): Promise<SimulationDoc> {
    const doc = await this.request<SimulationDoc | JobDoc>("POST", "/simulate", {
      model_id: modelId,
      ...scenario,
    });
    if (!("job_id" in doc)) {
      return doc;
    }
    let job = doc as JobDoc;
    for (let i = 0; i < maxPolls && job.status === "pending"; i += 1) {
      await sleep(this.pollIntervalMs);
      job = await this.request<JobDoc>("GET", `/jobs/${job.job_id}`);
    }
    if (job.status === "error") {
      throw new ApiError(500, job.error ?? "simulation failed");
    }
    if (job.status !== "done" || !job.result) {
      throw new ApiError(504, "simulation job did not finish in time");
    }
    return job.result;
  }

  compare(
    modelId: string,
    policy: ScenarioRequest,
    baseline?: ScenarioRequest,
  ): Promise<ComparisonDoc> {
    return this.request("POST", "/compare", {
      model_id: modelId,
      policy,
      ...(baseline ? { baseline } : {}),
    });
  }

  rank(
    target: { concept_id?: string; key_variable_id?: string },
    weights?: [number, number, number],
  ): Promise<RankReport> {
    return this.request("POST", "/rank", { ...target, ...(weights ? { weights } : {}) });
  }
}
