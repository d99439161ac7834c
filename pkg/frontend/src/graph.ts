/** SVG map rendering: nodes sized by consensus centrality, edges signed by
 * color (green positive, red negative), width by influence strength. */

import { CentralityDoc, ModelDetail } from "./api.js";
import { Positions } from "./layout.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function el(name: string, attrs: Record<string, string | number>): SVGElement {
  const node = document.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

export interface GraphOptions {
  width?: number;
  height?: number;
  minRadius?: number;
  maxRadius?: number;
  onNodeClick?: (nodeId: string) => void;
}

export function renderGraph(
  container: HTMLElement,
  model: ModelDetail,
  centrality: CentralityDoc,
  positions: Positions,
  options: GraphOptions = {},
): SVGSVGElement {
  const { width = 720, height = 520, minRadius = 6, maxRadius = 24 } = options;
  const svg = el("svg", {
    width,
    height,
    viewBox: `0 0 ${width} ${height}`,
    class: "map-graph",
  }) as SVGSVGElement;

  const ccm = new Map(centrality.nodes.map((row) => [row.id, row.ccm]));
  const maxCcm = Math.max(...centrality.nodes.map((row) => row.ccm), 1e-9);
  const maxBeta = Math.max(...model.edges.map((e) => Math.abs(e.beta)), 1e-9);

  const edgeLayer = el("g", { class: "edges" });
  for (const edge of model.edges) {
    const a = positions[edge.source];
    const b = positions[edge.target];
    if (!a || !b) {
      continue;
    }
    const line = el("line", {
      x1: a.x,
      y1: a.y,
      x2: b.x,
      y2: b.y,
      class: edge.beta >= 0 ? "edge edge-positive" : "edge edge-negative",
      stroke: edge.beta >= 0 ? "#2e8540" : "#c0392b",
      "stroke-width": (0.5 + 2.5 * (Math.abs(edge.beta) / maxBeta)).toFixed(2),
      "stroke-opacity": "0.55",
    });
    line.setAttribute("data-source", edge.source);
    line.setAttribute("data-target", edge.target);
    edgeLayer.appendChild(line);
  }
  svg.appendChild(edgeLayer);

  const nodeLayer = el("g", { class: "nodes" });
  for (const node of model.nodes) {
    const p = positions[node.id];
    if (!p) {
      continue;
    }
    const share = (ccm.get(node.id) ?? 0) / maxCcm;
    const r = minRadius + (maxRadius - minRadius) * Math.sqrt(Math.max(share, 0));
    const group = el("g", { class: "node", transform: `translate(${p.x},${p.y})` });
    group.setAttribute("data-node", node.id);
    const circle = el("circle", { r: r.toFixed(2), fill: "#2c5f8a", "fill-opacity": "0.85" });
    circle.setAttribute("data-radius", r.toFixed(2));
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${node.id}: ${node.label}`;
    circle.appendChild(title);
    const text = el("text", { y: -r - 4, "text-anchor": "middle", class: "node-label" });
    text.textContent = node.id;
    group.appendChild(circle);
    group.appendChild(text);
    if (options.onNodeClick) {
      group.addEventListener("click", () => options.onNodeClick?.(node.id));
    }
    nodeLayer.appendChild(group);
  }
  svg.appendChild(nodeLayer);

  container.replaceChildren(svg);
  return svg;
}
