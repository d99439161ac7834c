/** Shared fakes: a scripted fetch and small response documents. */

import { ComparisonDoc, ModelDetail, CentralityDoc, RankReport } from "../src/api.js";

export type Route = (body: unknown) => { status?: number; json: unknown } | unknown;

export function scriptedFetch(routes: Record<string, Route>): typeof fetch {
  const calls: Array<{ key: string; body: unknown }> = [];
  const fn = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const method = init?.method ?? "GET";
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    const key = `${method} ${path}`;
    const route = routes[key];
    if (!route) {
      throw new Error(`no scripted route for ${key}`);
    }
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    calls.push({ key, body });
    const out = route(body);
    const normalized =
      out && typeof out === "object" && "json" in (out as Record<string, unknown>)
        ? (out as { status?: number; json: unknown })
        : { status: 200, json: out };
    return new Response(JSON.stringify(normalized.json), {
      status: normalized.status ?? 200,
      headers: { "Content-Type": "application/json" },
    });
  }) as typeof fetch;
  (fn as unknown as { calls: typeof calls }).calls = calls;
  return fn;
}

export function callsOf(fn: typeof fetch): Array<{ key: string; body: unknown }> {
  return (fn as unknown as { calls: Array<{ key: string; body: unknown }> }).calls;
}

export const CONCEPT_IDS = "ABCDEFGHIJKLM".split("");

export function conceptModel(): ModelDetail {
  return {
    id: "social-concept",
    level: "concept",
    group: "aggregate",
    role: "social",
    n_nodes: 13,
    n_edges: 4,
    density: 0.5,
    nodes: CONCEPT_IDS.map((id) => ({
      id,
      label: `Concept ${id}`,
      level: "concept",
      parent_group: null,
      mention_count: 3,
      children: id === "F" ? ["FA", "FB", "FC", "FD"] : id === "D" ? ["DA"] : [],
    })),
    edges: [
      { source: "A", target: "B", beta: 2.5 },
      { source: "B", target: "C", beta: -1.5 },
      { source: "F", target: "A", beta: 4.0 },
      { source: "G", target: "C", beta: -3.0 },
    ],
  };
}

export function conceptCentrality(): CentralityDoc {
  return {
    model_id: "social-concept",
    nodes: CONCEPT_IDS.map((id, i) => ({
      id,
      degree: 1 + i,
      closeness: 0.1,
      betweenness: i,
      ccm: 0.5 + i,
      credibility_weight: 1 / 13,
    })),
    map_level: { degree: 1, closeness: 0.01, betweenness: 2, consensus: 1 },
  };
}

export function comparisonDoc(): ComparisonDoc {
  return {
    model_id: "social-concept",
    ids: CONCEPT_IDS,
    baseline: CONCEPT_IDS.map((_, i) => 0.5 + i * 0.01),
    policy: CONCEPT_IDS.map((_, i) => 0.5 + i * 0.02),
    deltas: CONCEPT_IDS.map((_, i) => i * 0.01),
    clamped: ["G"],
    baseline_iterations: 7,
    policy_iterations: 8,
  };
}

export function rankReport(): RankReport {
  return {
    weights: { importance: 0.25, feasibility: 0.25, influence: 0.5 },
    rows: [
      { id: "FA", importance: 32, feasibility: 17, influence: 28, appropriateness: 44.9, rank: 1 },
      { id: "FB", importance: 40, feasibility: -60, influence: 43, appropriateness: 28.2, rank: 2 },
      { id: "FD", importance: 14, feasibility: -1, influence: 15, appropriateness: 18.4, rank: 3 },
      { id: "FC", importance: 14, feasibility: -22, influence: 14, appropriateness: 8.5, rank: 4 },
    ],
  };
}
