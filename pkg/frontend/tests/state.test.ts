import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { ExplorerStore } from "../src/state.js";
import {
  comparisonDoc,
  conceptCentrality,
  conceptModel,
  rankReport,
  scriptedFetch,
} from "./helpers.js";

function storeWith(routes: Parameters<typeof scriptedFetch>[0]) {
  const fetchFn = scriptedFetch({
    "GET /api/v1/models/social-concept": () => conceptModel(),
    "GET /api/v1/models/social-concept/centrality": () => conceptCentrality(),
    ...routes,
  });
  return { store: new ExplorerStore(new ApiClient("", 1, fetchFn)), fetchFn };
}

describe("ExplorerStore", () => {
  it("loads a model and clears stale state", async () => {
    const { store } = storeWith({});
    await store.selectModel("social-concept");
    const snap = store.snapshot();
    expect(snap.model?.n_nodes).toBe(13);
    expect(snap.clamps).toEqual({});
    expect(snap.status).toBe("idle");
  });

  it("validates clamp values and node ids", async () => {
    const { store } = storeWith({});
    await store.selectModel("social-concept");
    expect(() => store.setClamp("G", 1.4)).toThrow("[0, 1]");
    expect(() => store.setClamp("ZZ", 0.5)).toThrow("unknown node");
    store.setClamp("G", 1.0);
    expect(store.snapshot().clamps).toEqual({ G: 1.0 });
    store.setClamp("G", null);
    expect(store.snapshot().clamps).toEqual({});
  });

  it("runs clamp-compare and lands in converged state", async () => {
    const { store } = storeWith({ "POST /api/v1/compare": () => comparisonDoc() });
    await store.selectModel("social-concept");
    store.setClamp("G", 1.0);
    await store.runScenario();
    const snap = store.snapshot();
    expect(snap.status).toBe("converged");
    expect(snap.comparison?.deltas).toHaveLength(13);
  });

  it("shows unconverged runs as a warning state, never silent zeros", async () => {
    const { store } = storeWith({
      "POST /api/v1/compare": () => ({ status: 422, json: { detail: "did not converge" } }),
    });
    await store.selectModel("social-concept");
    await store.runScenario();
    const snap = store.snapshot();
    expect(snap.status).toBe("unconverged");
    expect(snap.comparison).toBeNull();
  });

  it("keeps one run in flight and coalesces queued requests", async () => {
    let resolvers: Array<() => void> = [];
    let compares = 0;
    const { store } = storeWith({
      "POST /api/v1/compare": () => {
        compares += 1;
        return comparisonDoc();
      },
    });
    // wrap compare with a gate so the first run stays in flight
    const api = (store as unknown as { api: ApiClient }).api;
    const original = api.compare.bind(api);
    api.compare = ((modelId, policy, baseline) =>
      new Promise((resolve) => {
        resolvers.push(() => resolve(original(modelId, policy, baseline)));
      })) as typeof api.compare;

    await store.selectModel("social-concept");
    const first = store.runScenario();
    expect(store.busy).toBe(true);
    const second = store.runScenario(); // queued
    const third = store.runScenario(); // coalesced into the same queued slot
    resolvers.shift()?.(); // release the in-flight run; the queued one starts
    for (let i = 0; i < 50 && resolvers.length === 0; i += 1) {
      await new Promise((r) => setTimeout(r, 5));
    }
    resolvers.shift()?.(); // release the coalesced follow-up
    await Promise.all([first, second, third]);
    expect(compares).toBe(2);
    expect(store.busy).toBe(false);
  });

  it("drill navigation is reversible and restores clamps", async () => {
    const { store } = storeWith({ "POST /api/v1/rank": () => rankReport() });
    await store.selectModel("social-concept");
    store.setClamp("G", 0.8);
    await store.drillInto({ concept_id: "F" });
    let snap = store.snapshot();
    expect(snap.drillPath).toHaveLength(1);
    expect(snap.ranking?.rows.map((r) => r.id)).toEqual(["FA", "FB", "FD", "FC"]);

    store.setClamp("G", null);
    store.setClamp("A", 0.2);
    await store.drillBack();
    snap = store.snapshot();
    expect(snap.drillPath).toHaveLength(0);
    expect(snap.clamps).toEqual({ G: 0.8 });
    expect(snap.ranking).toBeNull();
  });
});
