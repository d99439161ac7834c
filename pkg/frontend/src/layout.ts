/** Deterministic force layout with per-model position caching.
 *
 * Seeded from the model id, so the same map always renders the same
 * picture; positions are cached in memory and in localStorage when present.
 */

import { ModelDetail } from "./api.js";

export interface Point {
  x: number;
  y: number;
}

export type Positions = Record<string, Point>;

const memoryCache = new Map<string, Positions>();

function hashString(text: string): number {
  let h = 2166136261;
  for (let i = 0; i < text.length; i += 1) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 16777619);
  }
  return h >>> 0;
}

/** Small deterministic PRNG (mulberry32). */
export function seededRandom(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function storageKey(modelId: string): string {
  return `fcmkit-layout:${modelId}`;
}

function readStorage(modelId: string): Positions | null {
  try {
    const raw = globalThis.localStorage?.getItem(storageKey(modelId));
    return raw ? (JSON.parse(raw) as Positions) : null;
  } catch {
    return null;
  }
}

function writeStorage(modelId: string, positions: Positions): void {
  try {
    globalThis.localStorage?.setItem(storageKey(modelId), JSON.stringify(positions));
  } catch {
    // storage full or unavailable: the in-memory cache still applies
  }
}

export function computeLayout(
  model: ModelDetail,
  width = 720,
  height = 520,
  iterations = 150,
): Positions {
  const cached = memoryCache.get(model.id) ?? readStorage(model.id);
  if (cached && model.nodes.every((n) => cached[n.id])) {
    memoryCache.set(model.id, cached);
    return cached;
  }

  const rand = seededRandom(hashString(model.id));
  const ids = model.nodes.map((n) => n.id);
  const index = new Map(ids.map((id, i) => [id, i]));
  const n = ids.length;
  const xs = new Float64Array(n);
  const ys = new Float64Array(n);
  const radius = Math.min(width, height) * 0.38;
  for (let i = 0; i < n; i += 1) {
    const angle = (2 * Math.PI * i) / n + rand() * 0.3;
    xs[i] = width / 2 + radius * Math.cos(angle) * (0.6 + 0.4 * rand());
    ys[i] = height / 2 + radius * Math.sin(angle) * (0.6 + 0.4 * rand());
  }

  const springs: Array<[number, number]> = [];
  for (const edge of model.edges) {
    const a = index.get(edge.source);
    const b = index.get(edge.target);
    if (a !== undefined && b !== undefined && a !== b) {
      springs.push([a, b]);
    }
  }

  const ideal = Math.sqrt((width * height) / Math.max(n, 1)) * 0.9;
  for (let step = 0; step < iterations; step += 1) {
    const temp = 0.1 * (1 - step / iterations) * Math.min(width, height);
    const fx = new Float64Array(n);
    const fy = new Float64Array(n);
    for (let i = 0; i < n; i += 1) {
      for (let j = i + 1; j < n; j += 1) {
        let dx = xs[i]! - xs[j]!;
        let dy = ys[i]! - ys[j]!;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          dx = rand() - 0.5;
          dy = rand() - 0.5;
          d2 = dx * dx + dy * dy;
        }
        const push = (ideal * ideal) / d2;
        fx[i] = fx[i]! + dx * push * 0.02;
        fy[i] = fy[i]! + dy * push * 0.02;
        fx[j] = fx[j]! - dx * push * 0.02;
        fy[j] = fy[j]! - dy * push * 0.02;
      }
    }
    for (const [a, b] of springs) {
      const dx = xs[b]! - xs[a]!;
      const dy = ys[b]! - ys[a]!;
      const d = Math.sqrt(dx * dx + dy * dy) || 1;
      const pull = ((d - ideal) / d) * 0.02;
      fx[a] = fx[a]! + dx * pull;
      fy[a] = fy[a]! + dy * pull;
      fx[b] = fx[b]! - dx * pull;
      fy[b] = fy[b]! - dy * pull;
    }
    for (let i = 0; i < n; i += 1) {
      const f = Math.sqrt(fx[i]! * fx[i]! + fy[i]! * fy[i]!) || 1;
      const cap = Math.min(f, temp) / f;
      xs[i] = Math.min(width - 30, Math.max(30, xs[i]! + fx[i]! * cap));
      ys[i] = Math.min(height - 30, Math.max(30, ys[i]! + fy[i]! * cap));
    }
  }

  const positions: Positions = {};
  ids.forEach((id, i) => {
    positions[id] = { x: Math.round(xs[i]! * 100) / 100, y: Math.round(ys[i]! * 100) / 100 };
  });
  memoryCache.set(model.id, positions);
  writeStorage(model.id, positions);
  return positions;
}

export function clearLayoutCache(): void {
  memoryCache.clear();
}
