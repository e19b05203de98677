/**
 * Browser entry point.
 *
 * The API base defaults to the local service (`surveybn serve` listens on
 * 8000); override it with ?api=http://host:port when the service lives
 * elsewhere, and pick a starting model with ?model=id.
 */

import { HttpApi } from "./api.js";
import { mountApp } from "./app.js";

const DEFAULT_API = "http://127.0.0.1:8000";

document.addEventListener("DOMContentLoaded", () => {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");

  const params = new URLSearchParams(window.location.search);
  const api = new HttpApi(params.get("api") ?? DEFAULT_API);
  mountApp(root, api, { modelId: params.get("model") });
});
