/**
 * Wires controller and renderer to a root element. main.ts calls this with
 * the real HTTP client; tests call it with a scripted fake and a detached
 * element, so the whole click-to-chart path runs under test exactly as it
 * runs in the browser.
 */

import type { ExplorerApi } from "./api.js";
import { ExplorerController } from "./controller.js";
import { render } from "./render.js";

export interface MountOptions {
  /** Model to open first; defaults to the first one the service lists. */
  modelId?: string | null;
}

export interface MountedApp {
  controller: ExplorerController;
  ready: Promise<void>;
}

export const mountApp = (root: HTMLElement, api: ExplorerApi, options: MountOptions = {}): MountedApp => {
  const controller = new ExplorerController(api, (state) => render(root, state));

  root.addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLElement>("[data-state], [data-role]");
    if (!target) return;
    const nodeId = target.getAttribute("data-node");
    const stateAttr = target.getAttribute("data-state");
    if (nodeId !== null && stateAttr !== null) {
      void controller.toggleEvidence(nodeId, Number(stateAttr));
      return;
    }
    const role = target.getAttribute("data-role");
    if (role === "clear-evidence") void controller.clearAllEvidence();
    else if (role === "retry") void controller.retry();
  });

  root.addEventListener("change", (event) => {
    const target = event.target as HTMLElement;
    if (target.getAttribute("data-role") === "model-select") {
      void controller.loadModel((target as HTMLSelectElement).value);
    }
  });

  const ready = controller.init(options.modelId ?? null);
  return { controller, ready };
};
