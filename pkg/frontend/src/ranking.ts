/** Ranking table: the service's rank response rendered verbatim. */

import { RankReport } from "./api.js";

const COLUMNS: Array<{ key: string; title: string }> = [
  { key: "rank", title: "Rank" },
  { key: "id", title: "Candidate" },
  { key: "importance", title: "Importance %" },
  { key: "feasibility", title: "Feasibility %" },
  { key: "influence", title: "Influence %" },
  { key: "appropriateness", title: "Appropriateness %" },
];

function format(value: unknown): string {
  return typeof value === "number" ? String(value) : String(value ?? "");
}

export function renderRankingTable(container: HTMLElement, report: RankReport): HTMLTableElement {
  const table = document.createElement("table");
  table.className = "ranking-table";

  const caption = table.createCaption();
  caption.textContent =
    `criterion weights: importance ${report.weights.importance}, ` +
    `feasibility ${report.weights.feasibility}, influence ${report.weights.influence}`;

  const head = table.createTHead().insertRow();
  for (const column of COLUMNS) {
    const th = document.createElement("th");
    th.textContent = column.title;
    head.appendChild(th);
  }

  const body = table.createTBody();
  for (const row of report.rows) {
    const tr = body.insertRow();
    tr.setAttribute("data-candidate", row.id);
    for (const column of COLUMNS) {
      const td = tr.insertCell();
      // verbatim server values: no client-side rounding or rescaling
      td.textContent = format((row as unknown as Record<string, unknown>)[column.key]);
      td.setAttribute("data-key", column.key);
    }
  }

  container.replaceChildren(table);
  return table;
}
