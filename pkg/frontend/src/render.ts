/**
 * DOM rendering. The whole page is rebuilt from ViewState on every change;
 * with at most a couple dozen nodes that is cheaper than being clever, and
 * it guarantees the picture always equals the state.
 *
 * Interactive elements carry data-role attributes; the app layer listens via
 * delegation on the root, so rebuilding never re-binds handlers.
 */

import { CARD_WIDTH, canvasExtent, cardHeight, computePositions, edgePath } from "./layout.js";
import type { NetworkDocument, ViewState } from "./types.js";

const escapeHtml = (value: unknown): string =>
  String(value ?? "")
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");

/** The one formatting rule: service probabilities, one decimal, percent. */
export const fmtPct = (p: number): string => `${(p * 100).toFixed(1)}%`;

const renderHeader = (state: ViewState): string => {
  const options = state.models
    .map(
      (m) =>
        `<option value="${escapeHtml(m.id)}"${m.id === state.modelId ? " selected" : ""}>` +
        `${escapeHtml(m.name)} (${m.node_count} nodes)</option>`,
    )
    .join("");
  const pinned = Object.keys(state.evidence).length;
  return `
<header class="topbar">
  <h1>${escapeHtml(state.doc ? state.doc.name : "Survey network explorer")}</h1>
  <label class="model-picker">Model
    <select data-role="model-select"${state.models.length === 0 ? " disabled" : ""}>${options}</select>
  </label>
  <span class="badge" data-role="evidence-badge">${pinned} pinned</span>
  <button type="button" data-role="clear-evidence"${pinned === 0 ? " disabled" : ""}>Clear evidence</button>
  <span class="inflight" data-role="in-flight"${state.requestInFlight ? "" : " hidden"}>querying&hellip;</span>
</header>`;
};

const renderBanner = (state: ViewState): string => {
  if (state.banner === null) return "";
  const retry = state.bannerCanRetry
    ? ' <button type="button" data-role="retry">Retry</button>'
    : "";
  return `<div class="banner" data-role="banner">${escapeHtml(state.banner)}${retry}</div>`;
};

const renderCard = (doc: NetworkDocument, state: ViewState, nodeId: string, left: number, top: number): string => {
  const node = doc.nodes.find((n) => n.id === nodeId)!;
  const pinnedState = state.evidence[node.id];
  const probs = state.marginals?.[node.id] ?? doc.priors[node.id];
  const rows = node.states
    .map((stateName, i) => {
      const p = probs[i];
      const pinned = pinnedState === i;
      return `
    <button type="button" class="bar-row${pinned ? " pinned" : ""}" aria-pressed="${pinned}"
            data-node="${escapeHtml(node.id)}" data-state="${i}">
      <span class="state-name">${escapeHtml(stateName)}</span>
      <span class="bar-track"><span class="bar-fill" style="width:${(p * 100).toFixed(1)}%"></span></span>
      <span class="pct">${fmtPct(p)}</span>
    </button>`;
    })
    .join("");
  return `
  <section class="node-card${pinnedState !== undefined ? " has-evidence" : ""}" data-role="chart"
           data-node-card="${escapeHtml(node.id)}"
           style="left:${left}px;top:${top}px;width:${CARD_WIDTH}px;height:${cardHeight(node.states.length)}px">
    <h2 title="${escapeHtml(node.label)}">${escapeHtml(node.label)}</h2>
    ${rows}
  </section>`;
};

const renderGraph = (state: ViewState): string => {
  const doc = state.doc;
  if (!doc) {
    if (state.banner !== null) return "";
    if (state.models.length === 0) {
      return '<p class="empty-state" data-role="empty">The service lists no models.</p>';
    }
    return '<p class="empty-state" data-role="loading">Loading&hellip;</p>';
  }

  const positions = computePositions(doc.nodes, doc.edges);
  const extent = canvasExtent(doc.nodes, positions);
  const states = new Map(doc.nodes.map((n) => [n.id, n.states.length]));

  const paths = doc.edges
    .map((edge) => {
      const d = edgePath(
        positions.get(edge.from)!,
        states.get(edge.from)!,
        positions.get(edge.to)!,
        states.get(edge.to)!,
      );
      return `<path d="${d}" marker-end="url(#arrow)"><title>${escapeHtml(edge.from)} → ${escapeHtml(edge.to)} (${escapeHtml(edge.tag)})</title></path>`;
    })
    .join("");

  const cards = doc.nodes
    .map((node) => {
      const p = positions.get(node.id)!;
      return renderCard(doc, state, node.id, p.x, p.y);
    })
    .join("");

  return `
<div class="canvas" style="width:${extent.x}px;height:${extent.y}px">
  <svg class="edge-layer" width="${extent.x}" height="${extent.y}" aria-hidden="true">
    <defs>
      <marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse">
        <path d="M 0 0 L 10 5 L 0 10 z"></path>
      </marker>
    </defs>
    ${paths}
  </svg>
  ${cards}
</div>`;
};

/** Rebuild the page under `root` from the current state. */
export const render = (root: HTMLElement, state: ViewState): void => {
  root.innerHTML = `
${renderHeader(state)}
${renderBanner(state)}
<main class="canvas-wrap">${renderGraph(state)}</main>`;
};
