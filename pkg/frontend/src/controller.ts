/**
 * Page state and the actions that change it.
 *
 * One rule keeps rapid clicking honest: every inference request remembers
 * the evidence it was sent with, and its response is rendered only if that
 * snapshot still equals the live evidence map when the response lands.
 * Anything else is stale and dropped. The service is stateless and
 * deterministic, so two requests with equal evidence carry equal answers
 * and the comparison is safe.
 */

import { ApiError, parseMarginals, type ExplorerApi } from "./api.js";
import type { Evidence, ViewState } from "./types.js";

/** Equal key sets with equal state indexes. */
export const evidenceEquals = (a: Evidence, b: Evidence): boolean => {
  const keysA = Object.keys(a);
  const keysB = Object.keys(b);
  if (keysA.length !== keysB.length) return false;
  return keysA.every((k) => b[k] === a[k]);
};

export class ExplorerController {
  private readonly api: ExplorerApi;
  private readonly onChange: (state: ViewState) => void;
  private inFlight = 0;
  private lastFailed: (() => Promise<void>) | null = null;

  readonly state: ViewState = {
    models: [],
    modelId: null,
    doc: null,
    evidence: {},
    marginals: null,
    requestInFlight: false,
    banner: null,
    bannerCanRetry: false,
  };

  constructor(api: ExplorerApi, onChange: (state: ViewState) => void) {
    this.api = api;
    this.onChange = onChange;
  }

  private emit(): void {
    this.state.requestInFlight = this.inFlight > 0;
    this.onChange(this.state);
  }

  private fail(err: unknown, retry: () => Promise<void>): void {
    this.state.banner = err instanceof Error ? err.message : String(err);
    this.state.bannerCanRetry = true;
    this.lastFailed = retry;
    this.emit();
  }

  /** Fetch the model list, then load `preferredId` or the first entry. */
  async init(preferredId: string | null = null): Promise<void> {
    this.state.banner = null;
    this.state.bannerCanRetry = false;
    let models;
    try {
      models = await this.api.listNetworks();
    } catch (err) {
      this.fail(err, () => this.init(preferredId));
      return;
    }
    this.state.models = models;
    if (models.length === 0) {
      this.emit();
      return;
    }
    const wanted = preferredId !== null && models.some((m) => m.id === preferredId)
      ? preferredId
      : models[0].id;
    await this.loadModel(wanted);
  }

  /** Fetch one network document and show its priors. */
  async loadModel(id: string): Promise<void> {
    this.state.modelId = id;
    this.state.doc = null;
    this.state.evidence = {};
    this.state.marginals = null;
    this.state.banner = null;
    this.state.bannerCanRetry = false;
    this.emit();

    let doc;
    try {
      doc = await this.api.fetchNetwork(id);
    } catch (err) {
      this.fail(err, () => this.loadModel(id));
      return;
    }
    if (this.state.modelId !== id) return; // user already switched away
    this.state.doc = doc;
    this.state.marginals = doc.priors;
    this.state.banner = null;
    this.state.bannerCanRetry = false;
    this.lastFailed = null;
    this.emit();
  }

  /**
   * Pin a state, or unpin it when it is already the pinned one. Either way
   * the full evidence map goes out as exactly one inference request.
   */
  async toggleEvidence(nodeId: string, stateIndex: number): Promise<void> {
    const doc = this.state.doc;
    if (!doc) return;
    const node = doc.nodes.find((n) => n.id === nodeId);
    if (!node || stateIndex < 0 || stateIndex >= node.states.length) return;

    const next: Evidence = { ...this.state.evidence };
    if (next[nodeId] === stateIndex) {
      delete next[nodeId];
    } else {
      next[nodeId] = stateIndex;
    }
    this.state.evidence = next;
    await this.query();
  }

  /** Drop all pins with one request; a no-op when nothing is pinned. */
  async clearAllEvidence(): Promise<void> {
    if (!this.state.doc || Object.keys(this.state.evidence).length === 0) return;
    this.state.evidence = {};
    await this.query();
  }

  /** Re-run whatever failed last; used by the banner's retry button. */
  async retry(): Promise<void> {
    const action = this.lastFailed;
    this.lastFailed = null;
    if (action) {
      await action();
    } else if (this.state.doc) {
      await this.query();
    } else if (this.state.modelId) {
      await this.loadModel(this.state.modelId);
    } else {
      await this.init();
    }
  }

  /** One inference round trip for the current evidence map. */
  private async query(): Promise<void> {
    const doc = this.state.doc;
    const modelId = this.state.modelId;
    if (!doc || modelId === null) return;

    const sent: Evidence = { ...this.state.evidence };
    this.inFlight += 1;
    this.emit();

    let outcome: { marginals?: ReturnType<typeof parseMarginals>; error?: unknown };
    try {
      outcome = { marginals: parseMarginals(await this.api.infer(modelId, sent), doc.nodes) };
    } catch (err) {
      outcome = { error: err };
    }
    this.inFlight -= 1;

    // the evidence echo: stale answers never touch the page
    if (this.state.doc !== doc || !evidenceEquals(sent, this.state.evidence)) {
      this.emit();
      return;
    }

    if (outcome.marginals) {
      this.state.marginals = outcome.marginals;
      this.state.banner = null;
      this.state.bannerCanRetry = false;
      this.lastFailed = null;
    } else if (outcome.error instanceof ApiError && outcome.error.code === "impossible_evidence") {
      // keep the pins so the user can amend the contradiction
      this.state.banner =
        "That evidence combination has probability zero under this model. " +
        "Unpin one of the selected states to continue.";
      this.state.bannerCanRetry = false;
      this.lastFailed = null;
    } else {
      this.fail(outcome.error, () => this.query());
      return;
    }
    this.emit();
  }
}
