/**
 * Test doubles and DOM probes shared by the suites.
 *
 * FakeApi answers from the canned fixtures. In manual mode every infer()
 * call parks on a deferred the test resolves by hand, which is how the
 * stale-response tests replay out-of-order arrivals.
 */

import { ApiError, type ExplorerApi } from "../src/api.js";
import type { Evidence, Marginals, ModelSummary, NetworkDocument } from "../src/types.js";
import {
  DEVEX_DOC,
  LISTING,
  POSTERIOR_TIME_LOST_4,
  POSTERIOR_TIME_LOST_4_MEANINGFUL_0,
} from "./fixtures.js";

export interface Deferred<T> {
  promise: Promise<T>;
  resolve: (value: T) => void;
  reject: (reason: unknown) => void;
}

export const deferred = <T>(): Deferred<T> => {
  let resolve!: (value: T) => void;
  let reject!: (reason: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
};

/** Let every settled promise run its continuations. */
export const flush = (): Promise<void> => new Promise((resolve) => setTimeout(resolve, 0));

const evidenceKey = (evidence: Evidence): string =>
  JSON.stringify(Object.entries(evidence).sort(([a], [b]) => (a < b ? -1 : 1)));

/** infer() answers for every evidence combination the tests exercise. */
export const CANNED: ReadonlyMap<string, Marginals> = new Map([
  [evidenceKey({}), DEVEX_DOC.priors],
  [evidenceKey({ time_lost_to_obstacles: 4 }), POSTERIOR_TIME_LOST_4],
  [
    evidenceKey({ time_lost_to_obstacles: 4, meaningful_work: 0 }),
    POSTERIOR_TIME_LOST_4_MEANINGFUL_0,
  ],
]);

export class FakeApi implements ExplorerApi {
  listing: ModelSummary[] = LISTING.filter((m) => m.id === "devex");
  docs: Record<string, NetworkDocument> = { devex: structuredClone(DEVEX_DOC) };
  inferCalls: { id: string; evidence: Evidence }[] = [];

  /** When true, infer() parks until the test resolves pendingInfers[i]. */
  manual = false;
  pendingInfers: { evidence: Evidence; d: Deferred<Marginals> }[] = [];

  /** Tests may swap these to script failures. */
  listImpl: () => Promise<ModelSummary[]> = () => Promise.resolve(this.listing);
  fetchImpl: (id: string) => Promise<NetworkDocument> = (id) => {
    const doc = this.docs[id];
    // a fresh object per call, the way a real JSON body parses
    return doc
      ? Promise.resolve(structuredClone(doc))
      : Promise.reject(new ApiError(404, "not_found", `no model named ${id}`));
  };
  inferImpl: (id: string, evidence: Evidence) => Promise<Marginals> = (_id, evidence) => {
    const canned = CANNED.get(evidenceKey(evidence));
    return canned
      ? Promise.resolve(canned)
      : Promise.reject(new Error(`no canned response for ${evidenceKey(evidence)}`));
  };

  listNetworks(): Promise<ModelSummary[]> {
    return this.listImpl();
  }

  fetchNetwork(id: string): Promise<NetworkDocument> {
    return this.fetchImpl(id);
  }

  infer(id: string, evidence: Evidence): Promise<Marginals> {
    this.inferCalls.push({ id, evidence: { ...evidence } });
    if (this.manual) {
      const d = deferred<Marginals>();
      this.pendingInfers.push({ evidence: { ...evidence }, d });
      return d.promise;
    }
    return this.inferImpl(id, evidence);
  }
}

/** A fresh root attached to the happy-dom document. */
export const freshRoot = (): HTMLElement => {
  document.body.innerHTML = "";
  const root = document.createElement("div");
  root.id = "app";
  document.body.appendChild(root);
  return root;
};

export const chartFor = (root: HTMLElement, nodeId: string): HTMLElement => {
  const card = root.querySelector<HTMLElement>(`[data-node-card="${nodeId}"]`);
  if (!card) throw new Error(`no chart rendered for ${nodeId}`);
  return card;
};

export const barRow = (root: HTMLElement, nodeId: string, stateIndex: number): HTMLElement => {
  const row = root.querySelector<HTMLElement>(
    `[data-node="${nodeId}"][data-state="${stateIndex}"]`,
  );
  if (!row) throw new Error(`no bar for ${nodeId}[${stateIndex}]`);
  return row;
};

/** The rendered percentages of one node's chart, as numbers. */
export const chartPercents = (root: HTMLElement, nodeId: string): number[] =>
  Array.from(chartFor(root, nodeId).querySelectorAll(".pct")).map((el) =>
    Number.parseFloat(el.textContent ?? "NaN"),
  );

export const clickBar = (root: HTMLElement, nodeId: string, stateIndex: number): void => {
  barRow(root, nodeId, stateIndex).dispatchEvent(new MouseEvent("click", { bubbles: true }));
};
