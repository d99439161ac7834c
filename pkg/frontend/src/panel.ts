/** Scenario panel: one clamp slider per node, a run button, and a
 * convergence badge. Sliders start disengaged; ticking a node's checkbox
 * clamps it at the slider value for the whole run. */

import { ExplorerSnapshot, ExplorerStore } from "./state.js";

export function renderPanel(container: HTMLElement, store: ExplorerStore): void {
  const snapshot = store.snapshot();
  const panel = document.createElement("div");
  panel.className = "scenario-panel";

  const badge = document.createElement("span");
  badge.className = `badge badge-${snapshot.status}`;
  badge.textContent = badgeText(snapshot);

  const runButton = document.createElement("button");
  runButton.className = "run-button";
  runButton.textContent = store.busy ? "Running..." : "Run scenario";
  runButton.disabled = snapshot.model === null;
  runButton.addEventListener("click", () => {
    void store.runScenario();
  });

  const header = document.createElement("div");
  header.className = "panel-header";
  header.appendChild(runButton);
  header.appendChild(badge);
  panel.appendChild(header);

  const list = document.createElement("div");
  list.className = "clamp-list";
  for (const node of snapshot.model?.nodes ?? []) {
    const row = document.createElement("label");
    row.className = "clamp-row";
    row.setAttribute("data-node", node.id);

    const active = Object.prototype.hasOwnProperty.call(snapshot.clamps, node.id);
    const checkbox = document.createElement("input");
    checkbox.type = "checkbox";
    checkbox.checked = active;

    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = "0";
    slider.max = "1";
    slider.step = "0.01";
    slider.value = String(active ? snapshot.clamps[node.id] : 0.5);
    slider.disabled = !active;

    const value = document.createElement("span");
    value.className = "clamp-value";
    value.textContent = active ? Number(slider.value).toFixed(2) : "free";

    checkbox.addEventListener("change", () => {
      store.setClamp(node.id, checkbox.checked ? Number(slider.value) : null);
    });
    slider.addEventListener("input", () => {
      if (checkbox.checked) {
        store.setClamp(node.id, Number(slider.value));
      }
    });

    const name = document.createElement("span");
    name.className = "clamp-name";
    name.textContent = `${node.id} ${node.label}`;
    name.title = node.label;

    row.appendChild(checkbox);
    row.appendChild(name);
    row.appendChild(slider);
    row.appendChild(value);
    list.appendChild(row);
  }
  panel.appendChild(list);
  container.replaceChildren(panel);
}

function badgeText(snapshot: ExplorerSnapshot): string {
  switch (snapshot.status) {
    case "idle":
      return "no run yet";
    case "running":
      return "running...";
    case "converged": {
      const clamped = Object.keys(snapshot.clamps);
      const label = clamped.length ? `clamped ${clamped.join(", ")}` : "baseline";
      return `converged (${label}; ${snapshot.statusDetail})`;
    }
    case "unconverged":
      return "did not converge - results withheld";
    case "error":
      return `error: ${snapshot.statusDetail}`;
  }
}
