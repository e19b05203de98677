/**
 * Wire types for the three service endpoints, plus the page's view state.
 *
 * Evidence travels as integer state indexes, never state names. Marginals
 * come back as one probability vector per node, already rounded by the
 * service; the client renders them as-is.
 */

/** One row of GET /api/networks. */
export interface ModelSummary {
  id: string;
  name: string;
  node_count: number;
  edge_count: number;
}

/** One node of a network document. */
export interface NodeDocument {
  id: string;
  label: string;
  states: string[];
  position: { x: number; y: number } | null;
}

/** One directed edge of a network document. */
export interface EdgeDocument {
  from: string;
  to: string;
  tag: string;
}

/** The slice of GET /api/networks/{id} the explorer consumes. */
export interface NetworkDocument {
  id: string;
  name: string;
  nodes: NodeDocument[];
  edges: EdgeDocument[];
  priors: Marginals;
}

/** Node id -> pinned state index. */
export type Evidence = Record<string, number>;

/** Node id -> probability vector, in state order. */
export type Marginals = Record<string, number[]>;

/**
 * Everything the page knows. One instance, mutated by the controller,
 * re-rendered in full after every change.
 */
export interface ViewState {
  models: ModelSummary[];
  modelId: string | null;
  doc: NetworkDocument | null;
  evidence: Evidence;
  marginals: Marginals | null;
  requestInFlight: boolean;
  banner: string | null;
  /** Whether the banner carries a retry button (fetch failures do, a zero-probability pin does not). */
  bannerCanRetry: boolean;
}
