// Unit coverage for the pieces with observable contracts: the map
// projection, the event-driven state reducers, and the mutation queue.

import assert from "node:assert/strict";
import { test } from "node:test";
import { JSDOM } from "jsdom";

import { ApiClient } from "../src/api.js";
import { MapView, METERS_PER_DEGREE_LAT } from "../src/map.js";
import { applyEvents, applyReport, initialState } from "../src/state.js";
import type { EventDto, TriggerReport } from "../src/types.js";

function dom(): Document {
  return new JSDOM("<!doctype html><div id='root'></div>").window.document;
}

test("projection round-trips points near the viewport center", () => {
  const map = new MapView(dom());
  map.configure({ lat: 43.0766, lon: -89.4012 }, 800);
  for (const point of [
    { lat: 43.0766, lon: -89.4012 },
    { lat: 43.0768, lon: -89.3988 },
    { lat: 43.0744, lon: -89.4040 },
  ]) {
    const { x, y } = map.project(point);
    const back = map.unproject(x, y);
    assert.ok(Math.abs(back.lat - point.lat) < 1e-9);
    assert.ok(Math.abs(back.lon - point.lon) < 1e-9);
  }
});

test("projection scale: one viewport = configured span", () => {
  const map = new MapView(dom());
  map.configure({ lat: 0, lon: 0 }, 1000);
  const north = map.project({ lat: 500 / METERS_PER_DEGREE_LAT, lon: 0 });
  assert.ok(Math.abs(north.y - 0) < 1e-6); // 500 m north = top edge
  assert.ok(Math.abs(north.x - 300) < 1e-6);
});

test("event reducer: seq only moves forward, drops become markers", () => {
  const state = initialState();
  state.playerId = "me";
  const drop: EventDto = {
    seq: 5,
    player_id: "bob",
    kind: "drop",
    payload: { location_id: "drop_5", lat: 43.0, lon: -89.0, item_id: "gem", qty: 2 },
  };
  applyEvents(state, [
    { seq: 1, player_id: "bob", kind: "join", payload: {} },
    drop,
  ]);
  assert.equal(state.lastEventSeq, 5);
  assert.equal(state.dropMarkers.get("drop_5")?.qty, 2);
  assert.ok(state.toasts.some((t) => t.includes("bob dropped 2 gem")));

  // replaying the same events is a no-op
  applyEvents(state, [drop]);
  assert.equal(state.lastEventSeq, 5);
  assert.equal(state.dropMarkers.size, 1);

  // pickups drain the marker and eventually remove it
  applyEvents(state, [
    { seq: 6, player_id: "me", kind: "pickup", payload: { location_id: "drop_5", qty: 1, transferred: 1 } },
  ]);
  assert.equal(state.dropMarkers.get("drop_5")?.qty, 1);
  applyEvents(state, [
    { seq: 7, player_id: "me", kind: "pickup", payload: { location_id: "drop_5", qty: 9, transferred: 1 } },
  ]);
  assert.equal(state.dropMarkers.size, 0);
});

test("report reducer mirrors the server's report into panels and toasts", () => {
  const state = initialState();
  const report: TriggerReport = {
    matched: true,
    nearby: [
      { location_id: "mine", name: "Gem Mine", kind: "items", item_id: "gem", item_name: "Gem", distance_m: 4.2 },
    ],
    newly_visited: ["mine"],
    revealed: [
      { location_id: "mine", name: "Gem Mine", kind: "items", item_id: "gem", item_name: "Gem" },
    ],
    fired_effects: [{ kind: "give_item", item_id: "token", qty: 2 }],
    hazards_hit: [],
  };
  applyReport(state, report);
  assert.equal(state.nearby.length, 1);
  assert.ok(state.discovered.has("mine"));
  assert.ok(state.toasts.some((t) => t === "found: Gem Mine"));
  assert.ok(state.toasts.some((t) => t === "+2 token"));
});

test("mutations queue: at most one in flight, order preserved", async () => {
  const originalFetch = globalThis.fetch;
  const starts: string[] = [];
  let release: (() => void) | null = null;
  globalThis.fetch = (async (url: unknown, init?: { body?: unknown }) => {
    const path = String(url);
    starts.push(path.slice(path.indexOf("/v1")));
    if (release === null) {
      // first call: stall until the test releases it
      await new Promise<void>((resolve) => {
        release = resolve;
      });
    }
    return {
      status: 200,
      json: async () => ({ ok: true, data: { matched: true, nearby: [], newly_visited: [], revealed: [], fired_effects: [], hazards_hit: [] } }),
    } as unknown as Response;
  }) as typeof fetch;

  try {
    const api = new ApiClient("http://example", "g");
    const first = api.position("p", { lat: 1, lon: 2 });
    const second = api.scan("p", "CODE");
    await new Promise((resolve) => setTimeout(resolve, 20));
    assert.equal(starts.length, 1, "second mutation must wait for the first");
    release!();
    await first;
    await second;
    assert.deepEqual(
      starts.map((s) => s.split("/").pop()),
      ["position", "qr"],
    );
  } finally {
    globalThis.fetch = originalFetch;
  }
});

test("a failed mutation does not jam the queue", async () => {
  const originalFetch = globalThis.fetch;
  let calls = 0;
  globalThis.fetch = (async () => {
    calls += 1;
    if (calls === 1) {
      return {
        status: 409,
        json: async () => ({ ok: false, error: { code: "NOT_HERE", message: "nope" } }),
      } as unknown as Response;
    }
    return {
      status: 200,
      json: async () => ({ ok: true, data: {} }),
    } as unknown as Response;
  }) as typeof fetch;

  try {
    const api = new ApiClient("http://example", "g");
    await assert.rejects(api.pickup("p", "mine", 1), /nope/);
    await api.drop("p", "gem", 1); // queue still alive
    assert.equal(calls, 2);
  } finally {
    globalThis.fetch = originalFetch;
  }
});

test("intercept log records every route touched", async () => {
  const originalFetch = globalThis.fetch;
  globalThis.fetch = (async () => ({
    status: 200,
    json: async () => ({ ok: true, data: [] }),
  })) as unknown as typeof fetch;
  try {
    const root = new ApiClient("http://example");
    await root.listGames();
    const game = root.forGame("steel");
    await game.events(0);
    assert.deepEqual(
      root.interceptLog.map((e) => `${e.method} ${e.path}`),
      ["GET /v1/games", "GET /v1/games/steel/events?since=0"],
    );
  } finally {
    globalThis.fetch = originalFetch;
  }
});

test("unreachable server surfaces as a TRANSPORT ApiError", async () => {
  const originalFetch = globalThis.fetch;
  globalThis.fetch = (async () => {
    throw new TypeError("fetch failed");
  }) as typeof fetch;
  try {
    const api = new ApiClient("http://127.0.0.1:1", "steel");
    await assert.rejects(api.nearby("p"), (err: unknown) => {
      assert.ok(err instanceof Error);
      assert.equal((err as { code?: string }).code, "TRANSPORT");
      return true;
    });
  } finally {
    globalThis.fetch = originalFetch;
  }
});
