/**
 * Entry point. The API origin defaults to same-origin and can be pointed
 * elsewhere with ?api=http://host:port (the server sends permissive CORS
 * headers, so the static files can live anywhere).
 */

import { ApiClient } from "./api.js";
import { App } from "./app.js";

const params = new URLSearchParams(location.search);
const api = new ApiClient(params.get("api") ?? "");
const root = document.getElementById("app");
if (root) {
  new App(root, api);
}
