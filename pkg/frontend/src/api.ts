// Protocol client. Two jobs beyond fetch():
//  - serialize mutations: at most one in flight, later calls queue behind it
//    (reads and the poller go straight through);
//  - keep an intercept log of every route touched, so tests can prove the
//    UI never strays off the documented surface.

import type {
  AnswerResultDto,
  DialogTurnDto,
  EventDto,
  GameEntry,
  GeoPointDto,
  Inventory,
  JoinResponse,
  LocationDetail,
  NoteDto,
  PlayerMarkerDto,
  QuestsDto,
  TriggerReport,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

export interface InterceptEntry {
  method: string;
  path: string;
}

interface Envelope<T> {
  ok: boolean;
  data?: T;
  error?: { code: string; message: string };
}

export class ApiClient {
  token: string | null = null;
  private mutationTail: Promise<unknown> = Promise.resolve();

  constructor(
    private readonly baseUrl: string,
    private readonly gameId: string | null = null,
    readonly interceptLog: InterceptEntry[] = [],
  ) {}

  // Same server, one game; the intercept log is shared with the parent so
  // a session's full route usage lands in one place.
  forGame(gameId: string): ApiClient {
    return new ApiClient(this.baseUrl, gameId, this.interceptLog);
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    this.interceptLog.push({ method, path });
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, {
        method,
        headers,
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ApiError("TRANSPORT", String(err), 0);
    }
    let envelope: Envelope<T>;
    try {
      envelope = (await response.json()) as Envelope<T>;
    } catch {
      throw new ApiError("TRANSPORT", `non-JSON response (${response.status})`, response.status);
    }
    if (!envelope.ok || envelope.data === undefined) {
      const error = envelope.error ?? { code: "TRANSPORT", message: "malformed envelope" };
      throw new ApiError(error.code, error.message, response.status);
    }
    return envelope.data;
  }

  // Mutations queue behind one another; a rejection must not jam the queue.
  private mutate<T>(method: string, path: string, body?: unknown): Promise<T> {
    const next = this.mutationTail.then(
      () => this.request<T>(method, path, body),
      () => this.request<T>(method, path, body),
    );
    this.mutationTail = next.catch(() => undefined);
    return next;
  }

  private playerPath(playerId: string, leaf: string): string {
    return `/v1/games/${this.gameId}/players/${encodeURIComponent(playerId)}/${leaf}`;
  }

  listGames(): Promise<GameEntry[]> {
    return this.request("GET", "/v1/games");
  }

  async join(playerId: string): Promise<JoinResponse> {
    const data = await this.mutate<JoinResponse>("POST", `/v1/games/${this.gameId}/players`, {
      player_id: playerId,
    });
    this.token = data.token;
    return data;
  }

  position(playerId: string, point: GeoPointDto): Promise<TriggerReport> {
    return this.mutate("POST", this.playerPath(playerId, "position"), point);
  }

  scan(playerId: string, code: string): Promise<TriggerReport> {
    return this.mutate("POST", this.playerPath(playerId, "qr"), { code });
  }

  quickTravel(playerId: string, locationId: string): Promise<TriggerReport> {
    return this.mutate("POST", this.playerPath(playerId, "quick_travel"), {
      location_id: locationId,
    });
  }

  pickup(playerId: string, locationId: string, qty: number): Promise<Inventory> {
    return this.mutate("POST", this.playerPath(playerId, "pickup"), {
      location_id: locationId,
      qty,
    });
  }

  drop(playerId: string, itemId: string, qty: number): Promise<{ location_id: string }> {
    return this.mutate("POST", this.playerPath(playerId, "drop"), { item_id: itemId, qty });
  }

  dialog(playerId: string, npcId: string, choice: "start" | number): Promise<DialogTurnDto> {
    return this.mutate("POST", this.playerPath(playerId, "dialog"), { npc_id: npcId, choice });
  }

  answer(playerId: string, locationId: string, text: string): Promise<AnswerResultDto> {
    return this.mutate("POST", this.playerPath(playerId, "answer"), {
      location_id: locationId,
      text,
    });
  }

  note(playerId: string, kind: string, payloadUri: string): Promise<NoteDto> {
    return this.mutate("POST", this.playerPath(playerId, "note"), {
      kind,
      payload_uri: payloadUri,
    });
  }

  nearby(playerId: string): Promise<LocationDetail[]> {
    return this.request("GET", this.playerPath(playerId, "nearby"));
  }

  inventory(playerId: string): Promise<Inventory> {
    return this.request("GET", this.playerPath(playerId, "inventory"));
  }

  quests(playerId: string): Promise<QuestsDto> {
    return this.request("GET", this.playerPath(playerId, "quests"));
  }

  playersMap(): Promise<PlayerMarkerDto[]> {
    return this.request("GET", `/v1/games/${this.gameId}/players_map`);
  }

  events(since: number): Promise<EventDto[]> {
    return this.request("GET", `/v1/games/${this.gameId}/events?since=${since}`);
  }
}
