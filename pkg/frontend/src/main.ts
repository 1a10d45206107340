// Bootstrap. Configuration is the server base URL only: same origin by
// default (the server ships this bundle under /app), overridable with
// ?server=http://host:port for development.

import { App } from "./app.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("server") ?? window.location.origin;

const root = document.getElementById("root");
if (!root) throw new Error("missing #root element");

const app = new App(document, root, baseUrl);
app.render();
void app.loadGames().catch((err) => {
  app.state.banner = `cannot reach server: ${err}`;
  app.render();
});

// handy for poking at a live session from the console
(window as unknown as { locus: App }).locus = app;
