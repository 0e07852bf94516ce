/** Pure HTML/SVG builders; everything renders from the documented JSON
 * schemas alone, so a golden payload renders with no backend. */

import type {
  Alert,
  DecisionPath,
  ExplanationPayload,
  FeatureCard,
  ReviewPage,
  TreeJson,
  TreeNode,
} from "./types.js";
import { feedbackDisabled, type ViewState } from "./state.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function confidenceBadge(confidence: number): string {
  const pct = Math.round(confidence * 100);
  return `<span class="badge confidence-badge">${pct}%</span>`;
}

export function severityDot(severity: string): string {
  return `<span class="severity-dot severity-${severity}" title="${severity}"></span>`;
}

export function featureCards(features: FeatureCard[]): string {
  if (features.length === 0) {
    return `<div class="card empty-card">no informative features</div>`;
  }
  return features
    .map(
      (f) => `
      <div class="card feature-card" data-feature="${escapeHtml(f.feature)}">
        ${severityDot(f.severity)}
        <span class="feature-name">${escapeHtml(f.feature)}</span>
        <span class="feature-value">${f.value.toFixed(3)}</span>
        <span class="feature-count">x${f.count}</span>
      </div>`
    )
    .join("\n");
}

export function featureDropdown(features: FeatureCard[], selected: number): string {
  if (features.length === 0) {
    return `<div class="feature-nav">${severityDot("grey")}<select id="feature-select" disabled></select></div>`;
  }
  const index = Math.min(selected, features.length - 1);
  const options = features
    .map(
      (f, i) =>
        `<option value="${i}"${i === index ? " selected" : ""}>${escapeHtml(f.feature)}</option>`
    )
    .join("");
  return `<div class="feature-nav">${severityDot(features[index].severity)}<select id="feature-select">${options}</select></div>`;
}

/** Node ids visited by the recorded path, including the final leaf. */
export function pathNodeIds(tree: TreeJson, path: DecisionPath): number[] {
  const byId = new Map<number, TreeNode>(tree.nodes.map((n) => [n.id, n]));
  const ids: number[] = [];
  let node = byId.get(tree.root);
  for (const step of path.steps) {
    if (!node || node.kind !== "split" || node.id !== step.node_id) {
      throw new Error(`path does not match tree at node ${step.node_id}`);
    }
    ids.push(node.id);
    node = byId.get(step.direction === "greater" ? node.right : node.left);
  }
  if (node) ids.push(node.id);
  return ids;
}

interface LaidOutNode {
  node: TreeNode;
  x: number;
  y: number;
  parent: number | null;
  collapsed: boolean;
}

export function layoutTree(tree: TreeJson, collapsed: ReadonlySet<number>): LaidOutNode[] {
  const byId = new Map<number, TreeNode>(tree.nodes.map((n) => [n.id, n]));
  const out: LaidOutNode[] = [];
  let cursor = 0;
  const walk = (id: number, depth: number, parent: number | null): number => {
    const node = byId.get(id);
    if (!node) throw new Error(`dangling node id ${id}`);
    const isCollapsed = collapsed.has(id);
    if (node.kind === "leaf" || isCollapsed) {
      const x = cursor++;
      out.push({ node, x, y: depth, parent, collapsed: isCollapsed });
      return x;
    }
    const lx = walk(node.left, depth + 1, id);
    const rx = walk(node.right, depth + 1, id);
    const x = (lx + rx) / 2;
    out.push({ node, x, y: depth, parent, collapsed: false });
    return x;
  };
  walk(tree.root, 0, null);
  return out;
}

const X_STEP = 110;
const Y_STEP = 80;
const PAD = 60;

function nodeLabel(node: TreeNode): string {
  if (node.kind === "split") {
    return `${node.feature} > ${node.threshold.toFixed(2)}`;
  }
  const entries = Object.entries(node.counts);
  entries.sort((a, b) => b[1] - a[1]);
  return entries.map(([c, n]) => `${c}:${n}`).join(" ");
}

export function renderTreeSvg(
  tree: TreeJson,
  path: DecisionPath | null,
  collapsed: ReadonlySet<number> = new Set()
): string {
  const laid = layoutTree(tree, collapsed);
  const highlight = new Set<number>(path ? pathNodeIds(tree, path) : []);
  const byId = new Map(laid.map((l) => [l.node.id, l]));
  const width = Math.max(...laid.map((l) => l.x)) * X_STEP + 2 * PAD;
  const height = Math.max(...laid.map((l) => l.y)) * Y_STEP + 2 * PAD;

  const edges = laid
    .filter((l) => l.parent !== null)
    .map((l) => {
      const parent = byId.get(l.parent as number);
      if (!parent) return "";
      const onPath = highlight.has(l.node.id) && highlight.has(parent.node.id);
      return `<line class="edge${onPath ? " path-edge" : ""}" x1="${parent.x * X_STEP + PAD}" y1="${parent.y * Y_STEP + PAD}" x2="${l.x * X_STEP + PAD}" y2="${l.y * Y_STEP + PAD}" />`;
    })
    .join("\n");

  const nodes = laid
    .map((l) => {
      const cx = l.x * X_STEP + PAD;
      const cy = l.y * Y_STEP + PAD;
      const onPath = highlight.has(l.node.id);
      const kind = l.node.kind === "split" && !l.collapsed ? "split" : "leaf";
      const classes = `node ${kind}-node${onPath ? " path-node" : ""}${l.collapsed ? " collapsed-node" : ""}`;
      return `
      <g class="${classes}" data-node-id="${l.node.id}">
        <circle cx="${cx}" cy="${cy}" r="16" />
        <text x="${cx}" y="${cy + 32}" text-anchor="middle">${escapeHtml(nodeLabel(l.node))}${l.collapsed ? " [+]" : ""}</text>
      </g>`;
    })
    .join("\n");

  return `<svg class="tree-svg" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}" xmlns="http://www.w3.org/2000/svg">
${edges}
${nodes}
</svg>`;
}

export function driftBanner(payload: ExplanationPayload): string {
  const drift = payload.drift;
  if (!drift || !drift.drift) return "";
  return `<div class="drift-banner">Data drift at sample ${drift.sample_index} (p=${drift.p_value.toFixed(3)}, AAD=${drift.aad.toFixed(3)}); model retrained.</div>`;
}

export function feedbackButtons(state: ViewState): string {
  const disabled = feedbackDisabled(state) ? " disabled" : "";
  const note =
    state.feedback === "conflict"
      ? `<span class="feedback-note">already reviewed</span>`
      : state.feedback === "done"
        ? `<span class="feedback-note">feedback recorded</span>`
        : "";
  return `
  <div class="feedback">
    <button id="feedback-correct" class="feedback-btn"${disabled}>prediction correct</button>
    <button id="feedback-incorrect" class="feedback-btn"${disabled}>prediction incorrect</button>
    ${note}
  </div>`;
}

export function renderReview(payload: ExplanationPayload, state: ViewState): string {
  const tree = payload.trees[Math.min(state.treeIndex, payload.trees.length - 1)] ?? null;
  const path = tree ? (payload.paths.find((p) => p.tree_id === state.treeIndex) ?? null) : null;
  const treeNav =
    payload.trees.length > 0
      ? `<div class="tree-nav">
      <button id="tree-prev">previous</button>
      <span id="tree-counter">tree ${state.treeIndex + 1} / ${payload.trees.length}</span>
      <button id="tree-next">next</button>
    </div>`
      : "";
  return `
  <section class="review-panel" data-event-id="${escapeHtml(payload.event_id)}">
    <header class="prediction-line">
      <span class="prediction-label label-${escapeHtml(payload.label)}">${escapeHtml(payload.label)}</span>
      ${confidenceBadge(payload.confidence)}
      ${featureDropdown(payload.features, state.selectedFeature)}
    </header>
    ${driftBanner(payload)}
    <div class="cards">${featureCards(payload.features)}</div>
    <p class="description">${escapeHtml(payload.description)}</p>
    ${treeNav}
    <div class="tree-panel">${tree ? renderTreeSvg(tree, path, state.collapsed) : ""}</div>
    ${feedbackButtons(state)}
  </section>`;
}

export function renderReviewList(page: ReviewPage): string {
  const rows = page.reviews
    .map(
      (r) => `
    <tr class="review-row" data-event-id="${escapeHtml(r.event_id)}">
      <td>${escapeHtml(r.event_id)}</td>
      <td>${new Date(r.timestamp * 1000).toISOString()}</td>
      <td class="label-${escapeHtml(r.predicted)}">${escapeHtml(r.predicted)} ${Math.round(r.confidence * 100)}%</td>
      <td>${escapeHtml(r.text)}</td>
      <td>${r.has_feedback ? "✓" : ""}</td>
    </tr>`
    )
    .join("\n");
  return `<table class="review-list">
  <thead><tr><th>id</th><th>time</th><th>prediction</th><th>text</th><th>fb</th></tr></thead>
  <tbody>${rows}</tbody></table>
  <div class="pager">page ${page.page + 1} of ${Math.max(1, Math.ceil(page.total / page.page_size))} (${page.total} reviews)</div>`;
}

export function alertsBadge(count: number): string {
  return count > 0 ? `<span class="alert-badge">${count}</span>` : "";
}

export function renderAlerts(alerts: Alert[]): string {
  if (alerts.length === 0) return `<p class="empty">no alerts</p>`;
  return alerts
    .map(
      (a) => `
    <div class="alert${a.acknowledged ? " acked" : ""}" data-alert-id="${a.alert_id}">
      drift at sample ${a.report.sample_index} (p=${a.report.p_value.toFixed(3)}, AAD=${a.report.aad.toFixed(3)})
      on review ${escapeHtml(a.event_id)}
      ${a.acknowledged ? "<em>acknowledged</em>" : `<button class="ack-btn" data-alert-id="${a.alert_id}">ack</button>`}
    </div>`
    )
    .join("\n");
}
