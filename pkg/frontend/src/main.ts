/** Explorer bootstrap: wire the store to the five views. */

import { ApiClient } from "./api.js";
import { renderDeltaChart } from "./chart.js";
import { renderDrillNavigator } from "./drill.js";
import { renderGraph } from "./graph.js";
import { computeLayout } from "./layout.js";
import { renderPanel } from "./panel.js";
import { renderRankingTable } from "./ranking.js";
import { ExplorerStore } from "./state.js";

function mount(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing mount point #${id}`);
  }
  return node;
}

export async function bootstrap(baseUrl = ""): Promise<ExplorerStore> {
  const api = new ApiClient(baseUrl);
  const store = new ExplorerStore(api);

  const modelSelect = mount("model-select") as HTMLSelectElement;
  const graphBox = mount("map-graph");
  const panelBox = mount("scenario-panel");
  const chartBox = mount("delta-chart");
  const drillBox = mount("drill-navigator");
  const rankBox = mount("ranking-table");

  store.subscribe((snapshot) => {
    renderPanel(panelBox, store);
    renderDrillNavigator(drillBox, store, snapshot);
    if (snapshot.model && snapshot.centrality) {
      const positions = computeLayout(snapshot.model);
      renderGraph(graphBox, snapshot.model, snapshot.centrality, positions);
    }
    if (snapshot.comparison) {
      renderDeltaChart(chartBox, snapshot.comparison);
    } else if (snapshot.status === "unconverged" || snapshot.status === "error") {
      const warning = document.createElement("p");
      warning.className = "chart-warning";
      warning.textContent = snapshot.statusDetail || "run failed";
      chartBox.replaceChildren(warning);
    }
    if (snapshot.ranking) {
      renderRankingTable(rankBox, snapshot.ranking);
    }
  });

  const models = await api.listModels();
  const interesting = models.filter((m) => m.role !== "stakeholder");
  for (const model of interesting) {
    const option = document.createElement("option");
    option.value = model.id;
    option.textContent = `${model.id} (${model.n_nodes} nodes)`;
    modelSelect.appendChild(option);
  }
  modelSelect.addEventListener("change", () => {
    void store.selectModel(modelSelect.value);
  });

  const initial =
    interesting.find((m) => m.id === "social-concept")?.id ?? interesting[0]?.id;
  if (initial) {
    modelSelect.value = initial;
    await store.selectModel(initial);
  }
  return store;
}

declare global {
  interface Window {
    fcmkitExplorer?: Promise<ExplorerStore>;
  }
}

if (typeof document !== "undefined" && document.getElementById("model-select")) {
  window.fcmkitExplorer = bootstrap();
}
