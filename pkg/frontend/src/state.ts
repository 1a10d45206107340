// Client view state and the pure helpers that fold server responses into
// it. Nothing in here decides game outcomes; it only mirrors what the
// server said so the DOM can be redrawn.

import type {
  DialogNodeDto,
  EventDto,
  GeoPointDto,
  Inventory,
  LocationDetail,
  PlayerMarkerDto,
  QuestsDto,
  TriggerReport,
} from "./types.js";

export interface DropMarker {
  locationId: string;
  lat: number;
  lon: number;
  itemId: string;
  qty: number;
  byPlayer: string;
}

export interface OpenDialog {
  npcId: string;
  npcName: string;
  node: DialogNodeDto;
}

export interface ClientViewState {
  gameId: string | null;
  playerId: string | null;
  quickTravelAllowed: boolean;
  myPosition: GeoPointDto | null;
  nearby: LocationDetail[];
  discovered: Map<string, LocationDetail>; // everything ever revealed to us
  openDialog: OpenDialog | null;
  openPlaque: LocationDetail | null;
  inventory: Inventory;
  quests: QuestsDto;
  others: PlayerMarkerDto[];
  dropMarkers: Map<string, DropMarker>;
  lastEventSeq: number;
  toasts: string[];
  banner: string | null;
}

export function initialState(): ClientViewState {
  return {
    gameId: null,
    playerId: null,
    quickTravelAllowed: false,
    myPosition: null,
    nearby: [],
    discovered: new Map(),
    openDialog: null,
    openPlaque: null,
    inventory: {},
    quests: { active: [], complete: [], detail: {} },
    others: [],
    dropMarkers: new Map(),
    lastEventSeq: 0,
    toasts: [],
    banner: null,
  };
}

export function toast(state: ClientViewState, message: string): void {
  state.toasts.push(message);
  if (state.toasts.length > 6) state.toasts.shift();
}

export function rememberRevealed(state: ClientViewState, details: LocationDetail[]): void {
  for (const detail of details) {
    state.discovered.set(detail.location_id, detail);
  }
}

export function applyReport(state: ClientViewState, report: TriggerReport): void {
  state.nearby = report.nearby;
  rememberRevealed(state, report.nearby);
  rememberRevealed(state, report.revealed);
  for (const detail of report.revealed) {
    if (report.newly_visited.includes(detail.location_id)) {
      toast(state, `found: ${detail.name}`);
    }
  }
  for (const locationId of report.hazards_hit) {
    const name = state.discovered.get(locationId)?.name ?? locationId;
    toast(state, `hazard! ${name}`);
  }
  for (const effect of report.fired_effects) {
    if (effect.kind === "give_item") toast(state, `+${effect.qty} ${effect.item_id}`);
    if (effect.kind === "take_item") toast(state, `-${effect.qty} ${effect.item_id}`);
  }
}

// Events drive the shared-world overlays: drop events add item markers,
// pickups drain them, and the cursor only ever moves forward.
export function applyEvents(state: ClientViewState, events: EventDto[]): void {
  for (const event of events) {
    if (event.seq <= state.lastEventSeq) continue;
    state.lastEventSeq = event.seq;
    if (event.kind === "drop") {
      const p = event.payload as {
        location_id: string;
        lat: number;
        lon: number;
        item_id: string;
        qty: number;
      };
      state.dropMarkers.set(p.location_id, {
        locationId: p.location_id,
        lat: p.lat,
        lon: p.lon,
        itemId: p.item_id,
        qty: p.qty,
        byPlayer: event.player_id,
      });
      if (event.player_id !== state.playerId) {
        toast(state, `${event.player_id} dropped ${p.qty} ${p.item_id}`);
      }
    } else if (event.kind === "pickup") {
      const p = event.payload as { location_id: string; transferred: number };
      const marker = state.dropMarkers.get(p.location_id);
      if (marker) {
        marker.qty -= p.transferred;
        if (marker.qty <= 0) state.dropMarkers.delete(p.location_id);
      }
    }
  }
}
