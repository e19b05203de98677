/**
 * Left-to-right layered layout for the network graph.
 *
 * Each node's layer is its longest path from a root, so parents always sit
 * strictly left of their children. Within a layer nodes stack top-to-bottom
 * in id order, which keeps the picture identical across loads. When the
 * document carries a position for a node, that position wins over the
 * computed one.
 */

import type { EdgeDocument, NodeDocument } from "./types.js";

export const CARD_WIDTH = 210;
export const CARD_HEADER_HEIGHT = 34;
export const BAR_ROW_HEIGHT = 21;
export const CARD_PADDING = 10;
export const H_GAP = 70;
export const V_GAP = 28;
export const MARGIN = 24;

export interface Point {
  x: number;
  y: number;
}

/** Pixel height of one node card, driven by its state count. */
export const cardHeight = (stateCount: number): number =>
  CARD_HEADER_HEIGHT + stateCount * BAR_ROW_HEIGHT + CARD_PADDING;

/**
 * Layer index per node: 0 for roots, otherwise one past the deepest parent.
 * Works on any DAG; nodes left untouched by edges land in layer 0.
 */
export const computeLayers = (nodeIds: string[], edges: EdgeDocument[]): Map<string, number> => {
  const children = new Map<string, string[]>();
  const indegree = new Map<string, number>();
  for (const id of nodeIds) {
    children.set(id, []);
    indegree.set(id, 0);
  }
  for (const edge of edges) {
    if (!children.has(edge.from) || !indegree.has(edge.to)) continue;
    children.get(edge.from)!.push(edge.to);
    indegree.set(edge.to, indegree.get(edge.to)! + 1);
  }

  const layer = new Map<string, number>();
  const queue: string[] = [];
  for (const id of nodeIds) {
    if (indegree.get(id) === 0) {
      queue.push(id);
      layer.set(id, 0);
    }
  }
  while (queue.length) {
    const current = queue.shift()!;
    const depth = layer.get(current)!;
    for (const next of children.get(current)!) {
      layer.set(next, Math.max(layer.get(next) ?? 0, depth + 1));
      indegree.set(next, indegree.get(next)! - 1);
      if (indegree.get(next) === 0) queue.push(next);
    }
  }
  for (const id of nodeIds) if (!layer.has(id)) layer.set(id, 0);
  return layer;
};

/**
 * Top-left corner per node. Layers run left to right; within a layer nodes
 * sort by id. A node with a document position keeps it verbatim.
 */
export const computePositions = (nodes: NodeDocument[], edges: EdgeDocument[]): Map<string, Point> => {
  const layer = computeLayers(nodes.map((n) => n.id), edges);

  const byLayer = new Map<number, NodeDocument[]>();
  for (const node of nodes) {
    const l = layer.get(node.id)!;
    if (!byLayer.has(l)) byLayer.set(l, []);
    byLayer.get(l)!.push(node);
  }

  const positions = new Map<string, Point>();
  for (const [l, members] of byLayer) {
    members.sort((a, b) => (a.id < b.id ? -1 : a.id > b.id ? 1 : 0));
    let y = MARGIN;
    for (const node of members) {
      positions.set(node.id, { x: MARGIN + l * (CARD_WIDTH + H_GAP), y });
      y += cardHeight(node.states.length) + V_GAP;
    }
  }

  for (const node of nodes) {
    if (node.position) positions.set(node.id, { x: node.position.x, y: node.position.y });
  }
  return positions;
};

/** Canvas size that fits every card plus the outer margin. */
export const canvasExtent = (nodes: NodeDocument[], positions: Map<string, Point>): Point => {
  let width = 0;
  let height = 0;
  for (const node of nodes) {
    const p = positions.get(node.id);
    if (!p) continue;
    width = Math.max(width, p.x + CARD_WIDTH);
    height = Math.max(height, p.y + cardHeight(node.states.length));
  }
  return { x: width + MARGIN, y: height + MARGIN };
};

/**
 * SVG path for one edge: a cubic between card borders, anchored on the sides
 * when the run is mostly horizontal and on top/bottom when mostly vertical,
 * so both the computed layout and document-supplied layouts read cleanly.
 */
export const edgePath = (
  from: Point,
  fromStates: number,
  to: Point,
  toStates: number,
): string => {
  const fromH = cardHeight(fromStates);
  const toH = cardHeight(toStates);
  const dx = to.x + CARD_WIDTH / 2 - (from.x + CARD_WIDTH / 2);
  const dy = to.y + toH / 2 - (from.y + fromH / 2);

  if (Math.abs(dx) >= Math.abs(dy)) {
    const forward = dx >= 0;
    const x1 = from.x + (forward ? CARD_WIDTH : 0);
    const y1 = from.y + fromH / 2;
    const x2 = to.x + (forward ? 0 : CARD_WIDTH);
    const y2 = to.y + toH / 2;
    const bend = Math.max(30, Math.abs(x2 - x1) / 2) * (forward ? 1 : -1);
    return `M ${x1} ${y1} C ${x1 + bend} ${y1}, ${x2 - bend} ${y2}, ${x2} ${y2}`;
  }
  const downward = dy >= 0;
  const x1 = from.x + CARD_WIDTH / 2;
  const y1 = from.y + (downward ? fromH : 0);
  const x2 = to.x + CARD_WIDTH / 2;
  const y2 = to.y + (downward ? 0 : toH);
  const bend = Math.max(30, Math.abs(y2 - y1) / 2) * (downward ? 1 : -1);
  return `M ${x1} ${y1} C ${x1} ${y1 + bend}, ${x2} ${y2 - bend}, ${x2} ${y2}`;
};
