/** Drill navigator: walk a concept down to its key variables and variables,
 * with a Back button that restores the previous cohort and clamp settings. */

import { ModelNode } from "./api.js";
import { ExplorerSnapshot, ExplorerStore } from "./state.js";

export function renderDrillNavigator(
  container: HTMLElement,
  store: ExplorerStore,
  snapshot: ExplorerSnapshot,
): void {
  const nav = document.createElement("div");
  nav.className = "drill-navigator";

  const trail = document.createElement("div");
  trail.className = "drill-trail";
  const crumbs = snapshot.drillPath.map(
    (frame) => frame.target.concept_id ?? frame.target.key_variable_id ?? "?",
  );
  trail.textContent = crumbs.length ? `path: ${crumbs.join(" > ")}` : "path: (top)";
  nav.appendChild(trail);

  const back = document.createElement("button");
  back.className = "drill-back";
  back.textContent = "Back";
  back.disabled = snapshot.drillPath.length === 0;
  back.addEventListener("click", () => {
    void store.drillBack();
  });
  nav.appendChild(back);

  const list = document.createElement("ul");
  list.className = "drill-children";
  const concepts = (snapshot.model?.nodes ?? []).filter(
    (node: ModelNode) => node.children.length > 0,
  );
  for (const node of concepts) {
    const item = document.createElement("li");
    const button = document.createElement("button");
    button.className = "drill-target";
    button.setAttribute("data-node", node.id);
    button.textContent = `${node.id} (${node.children.length} children)`;
    button.addEventListener("click", () => {
      const target =
        node.level === "concept" ? { concept_id: node.id } : { key_variable_id: node.id };
      void store.drillInto(target);
    });
    item.appendChild(button);
    const childList = document.createElement("span");
    childList.className = "drill-child-ids";
    childList.textContent = node.children.join(", ");
    item.appendChild(childList);
    list.appendChild(item);
  }
  nav.appendChild(list);
  container.replaceChildren(nav);
}
