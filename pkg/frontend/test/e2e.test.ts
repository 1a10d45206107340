// Browser-session acceptance: a jsdom DOM drives the real bundle's
// components against a real `locus serve` subprocess over HTTP.
//
// Criteria covered:
//  - join -> move into geofences -> complete the smelting dialog -> the
//    inventory panel shows steel x1, all through DOM clicks;
//  - the session's intercept log contains only documented /v1 routes;
//  - a harness bot dropping an item shows up as a map marker within one
//    poll cycle.

import assert from "node:assert/strict";
import { after, before, test } from "node:test";
import { spawn, type ChildProcess } from "node:child_process";
import { createServer } from "node:net";
import { fileURLToPath } from "node:url";
import path from "node:path";
import { JSDOM } from "jsdom";

import { App } from "../src/app.js";

const REPO_ROOT = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..", "..");

const DOCUMENTED_ROUTES = [
  /^\/v1\/games$/,
  /^\/v1\/games\/[^/]+\/players$/,
  /^\/v1\/games\/[^/]+\/players\/[^/]+\/(position|qr|quick_travel|pickup|drop|dialog|answer|note|nearby|inventory|quests)$/,
  /^\/v1\/games\/[^/]+\/players_map$/,
  /^\/v1\/games\/[^/]+\/events\?since=\d+$/,
];

// steel.game coordinates (the server is authoritative; these are just
// where the simulated player walks)
const ORE = { lat: 43.0768, lon: -89.3988 };
const COAL = { lat: 43.0774, lon: -89.4016 };
const SMELTER = { lat: 43.0766, lon: -89.4012 };

let server: ChildProcess;
let baseUrl: string;

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address === null || typeof address === "string") {
        reject(new Error("no port"));
        return;
      }
      probe.close(() => resolve(address.port));
    });
  });
}

async function waitFor(check: () => boolean, what: string, timeoutMs = 8000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (check()) return;
    await new Promise((resolve) => setTimeout(resolve, 15));
  }
  assert.fail(`timed out waiting for ${what}`);
}

before(async () => {
  const port = await freePort();
  baseUrl = `http://127.0.0.1:${port}`;
  server = spawn(
    "python3",
    ["-m", "locus.cli", "serve", "--games-dir", "games", "--listen", `127.0.0.1:${port}`],
    { cwd: REPO_ROOT, stdio: ["ignore", "pipe", "pipe"] },
  );
  const deadline = Date.now() + 20_000;
  for (;;) {
    try {
      const response = await fetch(`${baseUrl}/v1/games`);
      if (response.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("server did not start");
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
});

after(() => {
  server.kill("SIGTERM");
});

function makeApp(): { app: App; doc: Document } {
  const doc = new JSDOM("<!doctype html><div id='root'></div>").window.document;
  const root = doc.getElementById("root")!;
  const app = new App(doc, root, baseUrl, 50);
  return { app, doc };
}

function clickMapAt(app: App, doc: Document, point: { lat: number; lon: number }): void {
  // jsdom reports a zero-size rect, which MapView maps 1:1 to view units
  const { x, y } = app.map.project(point);
  const event = new (doc.defaultView as Window & typeof globalThis).MouseEvent("click", {
    clientX: x,
    clientY: y,
    bubbles: true,
  });
  app.map.svg.dispatchEvent(event);
}

function click(doc: Document, selector: string): void {
  const node = doc.querySelector(selector) as HTMLElement | null;
  assert.ok(node, `missing element ${selector}`);
  node.click();
}

test("scripted browser session: join, gather, smelt, steel in inventory", async () => {
  const { app, doc } = makeApp();
  await app.loadGames();

  // join through the form
  const select = doc.getElementById("game-select") as HTMLSelectElement;
  const input = doc.getElementById("player-input") as HTMLInputElement;
  select.value = "steel";
  input.value = "webby";
  click(doc, "#join-button");
  await waitFor(() => app.state.playerId === "webby", "join");
  assert.equal(app.state.quickTravelAllowed, true);

  // walk into the east ore pile geofence and pick twice
  clickMapAt(app, doc, ORE);
  await waitFor(
    () => doc.querySelector("[data-location='ore_pile_east'] [data-action='pickup']") !== null,
    "ore pile in the nearby panel",
  );
  click(doc, "[data-location='ore_pile_east'] [data-action='pickup']");
  await waitFor(() => app.state.inventory["iron_ore"] === 1, "first ore");
  click(doc, "[data-location='ore_pile_east'] [data-action='pickup']");
  await waitFor(() => app.state.inventory["iron_ore"] === 2, "second ore");

  // coal cart
  clickMapAt(app, doc, COAL);
  await waitFor(
    () => doc.querySelector("[data-location='coal_cart'] [data-action='pickup']") !== null,
    "coal cart in the nearby panel",
  );
  click(doc, "[data-location='coal_cart'] [data-action='pickup']");
  await waitFor(() => app.state.inventory["coal"] === 1, "coal");

  // smelter conversation, driven by the rendered option buttons
  clickMapAt(app, doc, SMELTER);
  await waitFor(
    () => doc.querySelector("[data-location='smelter_shop'] [data-action='talk']") !== null,
    "smelter in the nearby panel",
  );
  click(doc, "[data-location='smelter_shop'] [data-action='talk']");
  await waitFor(() => app.state.openDialog !== null, "dialog panel open");
  const firstOption = doc.querySelector("#dialog [data-option='0']") as HTMLElement;
  assert.equal(firstOption.textContent, "Smelt my ore");
  firstOption.click();
  await waitFor(() => app.state.inventory["steel"] === 1, "steel forged");

  // the inventory panel shows the steel
  const inventoryText = (doc.getElementById("inventory") as HTMLElement).textContent ?? "";
  assert.ok(inventoryText.includes("steel x1"), `inventory panel says: ${inventoryText}`);
  assert.ok(!("iron_ore" in app.state.inventory));

  // quest log shows the completion, server-rendered text included
  const questRow = doc.querySelector("[data-quest='forge_steel']") as HTMLElement;
  assert.ok(questRow.classList.contains("quest-complete"));
  assert.ok((questRow.textContent ?? "").includes("Forge Steel"));

  // dialog ended at a node with no options: close it
  await waitFor(() => doc.querySelector("#dialog [data-action='close-dialog']") !== null, "close button");
  click(doc, "#dialog [data-action='close-dialog']");
  assert.equal(app.state.openDialog, null);

  // every route the whole session touched is documented
  const undocumented = app.api.interceptLog.filter(
    (entry) => !DOCUMENTED_ROUTES.some((route) => route.test(entry.path)),
  );
  assert.deepEqual(undocumented, [], `undocumented routes: ${JSON.stringify(undocumented)}`);
  app.stopPolling();
});

test("multiplayer visibility: a bot's drop appears within one poll", async () => {
  const { app, doc } = makeApp();
  await app.loadGames();
  await app.join("steel", "watcher");
  await app.moveTo(ORE);

  // harness bot over plain HTTP: join, walk to the west pile, take, drop
  const join = await fetch(`${baseUrl}/v1/games/steel/players`, {
    method: "POST",
    body: JSON.stringify({ player_id: "bot" }),
  });
  const token = (await join.json()).data.token as string;
  const bot = async (leaf: string, payload: unknown) => {
    const response = await fetch(`${baseUrl}/v1/games/steel/players/bot/${leaf}`, {
      method: "POST",
      headers: { Authorization: `Bearer ${token}` },
      body: JSON.stringify(payload),
    });
    assert.ok(response.ok, `bot ${leaf} failed: ${response.status}`);
  };
  await bot("position", { lat: 43.0762, lon: -89.4042 });
  await bot("pickup", { location_id: "ore_pile_west", qty: 1 });
  await bot("drop", { item_id: "iron_ore", qty: 1 });

  await app.pollOnce();

  assert.equal(app.state.dropMarkers.size, 1, "drop marker tracked");
  const marker = doc.querySelector("[data-marker='drop']") as HTMLElement;
  assert.ok(marker, "drop marker rendered on the map");
  assert.ok((marker.textContent ?? "").includes("iron_ore"));
  const botMarker = doc.querySelector("[data-marker='other'][data-id='bot']");
  assert.ok(botMarker, "other-player marker rendered");
  assert.ok(app.state.toasts.some((t) => t.includes("bot dropped 1 iron_ore")));
  app.stopPolling();
});

test("served bundle: /app delivers the page", async () => {
  const response = await fetch(`${baseUrl}/app/`);
  assert.equal(response.status, 200);
  const html = await response.text();
  assert.ok(html.includes("locus player"));
  const js = await fetch(`${baseUrl}/app/app.js`);
  assert.equal(js.status, 200);
});
