// Wire types for the /v1 protocol (docs/protocol.md in the repo root).
// Everything the UI shows comes from these shapes; the client never
// derives game state on its own.

export interface GeoPointDto {
  lat: number;
  lon: number;
}

export interface GameEntry {
  game_id: string;
  name: string;
  description: string;
  quick_travel_allowed: boolean;
  map_center: GeoPointDto | null;
  map_span_m: number;
}

export interface PlaqueDetail {
  title: string;
  body: string;
  has_answer: boolean;
}

export type LocationKind = "items" | "character" | "plaque" | "hazard" | "marker";

export interface LocationDetail {
  location_id: string;
  name: string;
  kind: LocationKind;
  distance_m?: number;
  item_id?: string;
  item_name?: string;
  npc_id?: string;
  npc_name?: string;
  plaque?: PlaqueDetail;
}

export interface EffectDto {
  kind: "give_item" | "take_item" | "set_flag" | "clear_flag";
  item_id?: string;
  qty?: number;
  flag?: string;
}

export interface TriggerReport {
  matched: boolean;
  nearby: LocationDetail[];
  newly_visited: string[];
  revealed: LocationDetail[];
  fired_effects: EffectDto[];
  hazards_hit: string[];
}

export interface DialogOptionDto {
  index: number;
  label: string;
}

export interface DialogNodeDto {
  node_id: string;
  speaker: string;
  text: string;
  options: DialogOptionDto[];
}

export interface DialogTurnDto {
  ended: boolean;
  node: DialogNodeDto | null;
  effects: EffectDto[];
}

export interface AnswerResultDto {
  correct: boolean;
  effects: EffectDto[];
}

export interface QuestDetail {
  name: string;
  active_text: string;
  complete_text: string;
}

export interface QuestsDto {
  active: string[];
  complete: string[];
  detail: Record<string, QuestDetail>;
}

export interface NoteDto {
  note_id: string;
  kind: string;
  payload_uri: string;
  lat: number;
  lon: number;
  seq: number;
}

export interface EventDto {
  seq: number;
  player_id: string;
  kind: string;
  payload: Record<string, unknown>;
}

export interface PlayerMarkerDto {
  player_id: string;
  lat: number;
  lon: number;
}

export interface JoinResponse {
  token: string;
  revealed: LocationDetail[];
}

export type Inventory = Record<string, number>;
