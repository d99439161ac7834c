/** Grouped-bar chart of steady states: baseline vs scenario per node, with
 * the per-node delta printed underneath. Renders only server-sent numbers. */

import { ComparisonDoc } from "./api.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function el(name: string, attrs: Record<string, string | number>): SVGElement {
  const node = document.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

export interface ChartOptions {
  width?: number;
  height?: number;
}

export function renderDeltaChart(
  container: HTMLElement,
  comparison: ComparisonDoc,
  options: ChartOptions = {},
): SVGSVGElement {
  const n = comparison.ids.length;
  const { width = Math.max(560, n * 52), height = 300 } = options;
  const margin = { top: 18, right: 12, bottom: 46, left: 40 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;
  const groupW = plotW / Math.max(n, 1);
  const barW = Math.min(16, groupW * 0.32);

  const svg = el("svg", {
    width,
    height,
    viewBox: `0 0 ${width} ${height}`,
    class: "delta-chart",
  }) as SVGSVGElement;

  // y axis: states live in [0, 1]
  const y = (v: number) => margin.top + plotH * (1 - v);
  for (const tick of [0, 0.25, 0.5, 0.75, 1]) {
    svg.appendChild(
      el("line", {
        x1: margin.left,
        x2: width - margin.right,
        y1: y(tick),
        y2: y(tick),
        stroke: "#ddd",
        "stroke-width": 1,
      }),
    );
    const label = el("text", {
      x: margin.left - 6,
      y: y(tick) + 4,
      "text-anchor": "end",
      class: "tick-label",
    });
    label.textContent = tick.toFixed(2);
    svg.appendChild(label);
  }

  comparison.ids.forEach((id, i) => {
    const cx = margin.left + groupW * i + groupW / 2;
    const group = el("g", { class: "bar-group" });
    group.setAttribute("data-node", id);

    const base = comparison.baseline[i] ?? 0;
    const pol = comparison.policy[i] ?? 0;
    const delta = comparison.deltas[i] ?? 0;

    const baseBar = el("rect", {
      x: cx - barW - 1,
      y: y(base),
      width: barW,
      height: Math.max(plotH * base, 0.5),
      class: "bar bar-baseline",
      fill: "#9aa7b1",
    });
    const polBar = el("rect", {
      x: cx + 1,
      y: y(pol),
      width: barW,
      height: Math.max(plotH * pol, 0.5),
      class: "bar bar-policy",
      fill: delta >= 0 ? "#2e8540" : "#c0392b",
    });
    polBar.setAttribute("data-delta", delta.toString());
    group.appendChild(baseBar);
    group.appendChild(polBar);

    const name = el("text", {
      x: cx,
      y: height - margin.bottom + 14,
      "text-anchor": "middle",
      class: "bar-label",
    });
    name.textContent = id;
    const deltaText = el("text", {
      x: cx,
      y: height - margin.bottom + 28,
      "text-anchor": "middle",
      class: `bar-delta ${delta >= 0 ? "delta-positive" : "delta-negative"}`,
    });
    deltaText.textContent = (delta >= 0 ? "+" : "") + delta.toFixed(3);
    group.appendChild(name);
    group.appendChild(deltaText);
    svg.appendChild(group);
  });

  container.replaceChildren(svg);
  return svg;
}
