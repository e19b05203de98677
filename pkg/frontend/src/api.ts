/**
 * HTTP client for the inference service.
 *
 * Three endpoints, nothing else:
 *   GET  {base}/api/networks
 *   GET  {base}/api/networks/{id}
 *   POST {base}/api/networks/{id}/infer
 *
 * Every response is validated before it reaches the view layer, so a
 * malformed payload surfaces as one ApiError and never as a partial render.
 */

import type {
  Evidence,
  Marginals,
  ModelSummary,
  NetworkDocument,
  NodeDocument,
} from "./types.js";

/** What the controller needs from the network; tests swap in fakes. */
export interface ExplorerApi {
  listNetworks(): Promise<ModelSummary[]>;
  fetchNetwork(id: string): Promise<NetworkDocument>;
  infer(id: string, evidence: Evidence): Promise<Marginals>;
}

/**
 * A failed call. `code` is the service's machine-readable error code
 * ("not_found", "invalid_evidence", "impossible_evidence"), or a client-side
 * one ("network" for unreachable, "malformed" for undecodable payloads).
 */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly field: string | null;

  constructor(status: number, code: string, message: string, field: string | null = null) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
    this.field = field;
  }
}

const isRecord = (value: unknown): value is Record<string, unknown> =>
  typeof value === "object" && value !== null && !Array.isArray(value);

const isProbabilityVector = (value: unknown): value is number[] =>
  Array.isArray(value) && value.length >= 2 && value.every((p) => typeof p === "number" && Number.isFinite(p) && p >= 0);

const malformed = (detail: string): ApiError =>
  new ApiError(0, "malformed", `service sent a malformed response: ${detail}`);

/** Decode and check one listing row. */
const parseSummary = (raw: unknown): ModelSummary => {
  if (!isRecord(raw)) throw malformed("listing entry is not an object");
  const { id, name, node_count, edge_count } = raw;
  if (typeof id !== "string" || typeof name !== "string") {
    throw malformed("listing entry lacks id or name");
  }
  if (typeof node_count !== "number" || typeof edge_count !== "number") {
    throw malformed(`listing entry ${id} lacks node or edge counts`);
  }
  return { id, name, node_count, edge_count };
};

/** Decode and check a full network document. Ignores keys the UI never reads. */
export const parseNetworkDocument = (raw: unknown): NetworkDocument => {
  if (!isRecord(raw)) throw malformed("document is not an object");
  const { id, name, nodes, edges, priors } = raw;
  if (typeof id !== "string" || typeof name !== "string") {
    throw malformed("document lacks id or name");
  }
  if (!Array.isArray(nodes) || nodes.length === 0) {
    throw malformed("document has no nodes");
  }

  const parsedNodes: NodeDocument[] = nodes.map((node) => {
    if (!isRecord(node) || typeof node.id !== "string" || typeof node.label !== "string") {
      throw malformed("node lacks id or label");
    }
    const states = node.states;
    if (!Array.isArray(states) || states.length < 2 || !states.every((s) => typeof s === "string")) {
      throw malformed(`node ${node.id} needs at least two named states`);
    }
    let position: { x: number; y: number } | null = null;
    if (isRecord(node.position) && typeof node.position.x === "number" && typeof node.position.y === "number") {
      position = { x: node.position.x, y: node.position.y };
    }
    return { id: node.id, label: node.label, states, position };
  });

  const ids = new Set(parsedNodes.map((n) => n.id));
  if (ids.size !== parsedNodes.length) throw malformed("duplicate node ids");

  if (!Array.isArray(edges)) throw malformed("document lacks an edge list");
  const parsedEdges = edges.map((edge) => {
    if (!isRecord(edge) || typeof edge.from !== "string" || typeof edge.to !== "string") {
      throw malformed("edge lacks endpoints");
    }
    if (!ids.has(edge.from) || !ids.has(edge.to)) {
      throw malformed(`edge ${edge.from} -> ${edge.to} references an unknown node`);
    }
    return { from: edge.from, to: edge.to, tag: typeof edge.tag === "string" ? edge.tag : "" };
  });

  const parsedPriors = parseMarginals(priors, parsedNodes);
  return { id, name, nodes: parsedNodes, edges: parsedEdges, priors: parsedPriors };
};

/** Decode and check a marginals map against the loaded nodes. */
export const parseMarginals = (raw: unknown, nodes: NodeDocument[]): Marginals => {
  if (!isRecord(raw)) throw malformed("marginals are not an object");
  const out: Marginals = {};
  for (const node of nodes) {
    const vector = raw[node.id];
    if (!isProbabilityVector(vector) || vector.length !== node.states.length) {
      throw malformed(`no probability vector for node ${node.id}`);
    }
    out[node.id] = vector;
  }
  return out;
};

/** Map a non-2xx body onto ApiError, tolerating junk error payloads. */
const errorFromBody = (status: number, body: unknown): ApiError => {
  if (isRecord(body) && isRecord(body.error)) {
    const { code, message, field } = body.error;
    return new ApiError(
      status,
      typeof code === "string" ? code : "error",
      typeof message === "string" ? message : `service answered ${status}`,
      typeof field === "string" ? field : null,
    );
  }
  return new ApiError(status, "error", `service answered ${status}`);
};

/** The real client. `fetchFn` is injectable so tests never touch a socket. */
export class HttpApi implements ExplorerApi {
  private readonly base: string;
  private readonly fetchFn: typeof fetch;

  constructor(baseUrl: string, fetchFn: typeof fetch = (...args) => fetch(...args)) {
    this.base = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn;
  }

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    let response: Response;
    try {
      response = await this.fetchFn(`${this.base}${path}`, init);
    } catch (err) {
      const reason = err instanceof Error ? err.message : String(err);
      throw new ApiError(0, "network", `cannot reach the service: ${reason}`);
    }
    let body: unknown = null;
    try {
      body = await response.json();
    } catch {
      if (response.ok) throw malformed("body is not JSON");
    }
    if (!response.ok) throw errorFromBody(response.status, body);
    return body;
  }

  async listNetworks(): Promise<ModelSummary[]> {
    const body = await this.request("/api/networks");
    if (!Array.isArray(body)) throw malformed("listing is not an array");
    return body.map(parseSummary);
  }

  async fetchNetwork(id: string): Promise<NetworkDocument> {
    const body = await this.request(`/api/networks/${encodeURIComponent(id)}`);
    return parseNetworkDocument(body);
  }

  async infer(id: string, evidence: Evidence): Promise<Marginals> {
    const body = await this.request(`/api/networks/${encodeURIComponent(id)}/infer`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ evidence }),
    });
    if (!isRecord(body) || !isRecord(body.marginals)) {
      throw malformed("inference response lacks marginals");
    }
    return body.marginals as Marginals;
  }
}
