// Orchestration: wire the API client, view state, map, and panels
// together. One rendering loop; mutations go through the client's queue;
// polling runs on its own timer and only ever moves the event cursor
// forward.

import { ApiClient, ApiError } from "./api.js";
import { MapView } from "./map.js";
import {
  applyEvents,
  applyReport,
  initialState,
  rememberRevealed,
  toast,
  type ClientViewState,
} from "./state.js";
import { buildShell, renderAll, type Handlers, type Shell } from "./ui.js";
import type { GameEntry, GeoPointDto, TriggerReport } from "./types.js";

export class App {
  readonly state: ClientViewState = initialState();
  readonly map: MapView;
  api: ApiClient;
  private readonly shell: Shell;
  private games: GameEntry[] = [];
  private pollTimer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private readonly doc: Document,
    root: HTMLElement,
    baseUrl: string,
    private readonly pollIntervalMs = 1000,
  ) {
    this.api = new ApiClient(baseUrl);
    this.shell = buildShell(doc, root);
    this.map = new MapView(doc);
    this.shell.mapSlot.append(this.map.svg as unknown as Node);
    this.map.clickHandler((point) => void this.moveTo(point));
    this.shell.zoomIn.addEventListener("click", () => {
      this.map.zoom(0.5);
      this.render();
    });
    this.shell.zoomOut.addEventListener("click", () => {
      this.map.zoom(2);
      this.render();
    });
    this.shell.qrButton.addEventListener("click", () => {
      const code = this.shell.qrInput.value.trim();
      if (code) void this.scan(code);
    });
    this.shell.travelButton.addEventListener("click", () => {
      const locationId = this.shell.travelInput.value.trim();
      if (locationId) void this.quickTravel(locationId);
    });
    this.shell.noteButton.addEventListener("click", () => {
      const uri = this.shell.noteUri.value.trim();
      if (uri) void this.captureNote(this.shell.noteKind.value, uri);
    });
  }

  private readonly handlers: Handlers = {
    pickup: (locationId, qty) => void this.pickup(locationId, qty),
    talk: (npcId) => void this.talk(npcId),
    openPlaque: (detail) => {
      this.state.openPlaque = detail;
      this.render();
    },
    chooseOption: (index) => void this.chooseOption(index),
    closeDialog: () => {
      this.state.openDialog = null;
      this.render();
    },
    closePlaque: () => {
      this.state.openPlaque = null;
      this.render();
    },
    submitAnswer: (locationId, text) => void this.submitAnswer(locationId, text),
    dropItem: (itemId, qty) => void this.dropItem(itemId, qty),
    dismissBanner: () => {
      this.state.banner = null;
      this.render();
    },
  };

  render(): void {
    renderAll(this.doc, this.shell, this.state, this.handlers);
    this.map.render(this.state);
  }

  // -- session -------------------------------------------------------------

  async loadGames(): Promise<GameEntry[]> {
    this.games = await this.api.listGames();
    this.renderJoinForm();
    return this.games;
  }

  private renderJoinForm(): void {
    const doc = this.doc;
    this.shell.joinForm.replaceChildren();
    if (this.state.playerId) return;
    const select = doc.createElement("select");
    select.id = "game-select";
    for (const game of this.games) {
      const option = doc.createElement("option");
      option.setAttribute("value", game.game_id);
      option.textContent = `${game.name} - ${game.description}`;
      select.append(option);
    }
    const input = doc.createElement("input");
    input.id = "player-input";
    input.placeholder = "player name";
    const button = doc.createElement("button");
    button.id = "join-button";
    button.textContent = "join";
    button.addEventListener("click", () => {
      const playerId = input.value.trim();
      if (playerId && select.value) void this.join(select.value, playerId);
    });
    this.shell.joinForm.append(select, input, button);
  }

  async join(gameId: string, playerId: string): Promise<void> {
    await this.guard(async () => {
      const entry = this.games.find((g) => g.game_id === gameId);
      this.api = this.api.forGame(gameId);
      const joined = await this.api.join(playerId);
      this.state.gameId = gameId;
      this.state.playerId = playerId;
      this.state.quickTravelAllowed = entry?.quick_travel_allowed ?? false;
      if (entry) this.map.configure(entry.map_center, Math.max(entry.map_span_m, 100));
      rememberRevealed(this.state, joined.revealed);
      for (const detail of joined.revealed) toast(this.state, `found: ${detail.name}`);
      await this.refreshPlayerPanels();
      this.renderJoinForm();
      this.startPolling();
    });
  }

  startPolling(): void {
    if (this.pollTimer !== null) return;
    this.pollTimer = setInterval(() => {
      void this.pollOnce().catch(() => undefined);
    }, this.pollIntervalMs);
  }

  stopPolling(): void {
    if (this.pollTimer !== null) clearInterval(this.pollTimer);
    this.pollTimer = null;
  }

  // -- actions ---------------------------------------------------------------

  async moveTo(point: GeoPointDto): Promise<void> {
    await this.guard(async () => {
      const report = await this.api.position(this.playerId(), point);
      this.state.myPosition = point;
      this.afterReport(report);
      await this.refreshPlayerPanels();
    });
  }

  async scan(code: string): Promise<void> {
    await this.guard(async () => {
      const report = await this.api.scan(this.playerId(), code);
      if (!report.matched) toast(this.state, "nothing answers to that code");
      this.afterReport(report);
      await this.refreshPlayerPanels();
    });
  }

  async quickTravel(locationId: string): Promise<void> {
    await this.guard(async () => {
      const report = await this.api.quickTravel(this.playerId(), locationId);
      const moved = report as TriggerReport & { position?: GeoPointDto };
      if (moved.position) this.state.myPosition = moved.position;
      this.afterReport(report);
      await this.refreshPlayerPanels();
    });
  }

  async pickup(locationId: string, qty: number): Promise<void> {
    await this.guard(async () => {
      this.state.inventory = await this.api.pickup(this.playerId(), locationId, qty);
      toast(this.state, `picked up from ${this.describe(locationId)}`);
      await this.refreshQuests();
      this.render();
    });
  }

  async dropItem(itemId: string, qty: number): Promise<void> {
    await this.guard(async () => {
      await this.api.drop(this.playerId(), itemId, qty);
      this.state.inventory = await this.api.inventory(this.playerId());
      toast(this.state, `dropped ${qty} ${itemId}`);
      this.render();
    });
  }

  async talk(npcId: string): Promise<void> {
    await this.guard(async () => {
      const turn = await this.api.dialog(this.playerId(), npcId, "start");
      this.showTurn(npcId, turn);
    });
  }

  async chooseOption(index: number): Promise<void> {
    const open = this.state.openDialog;
    if (!open) return;
    await this.guard(async () => {
      const turn = await this.api.dialog(this.playerId(), open.npcId, index);
      this.showTurn(open.npcId, turn);
      await this.refreshPlayerPanels();
    });
  }

  async submitAnswer(locationId: string, text: string): Promise<void> {
    await this.guard(async () => {
      const result = await this.api.answer(this.playerId(), locationId, text);
      toast(this.state, result.correct ? "correct!" : "that is not it");
      if (result.correct) {
        this.state.nearby = await this.api.nearby(this.playerId());
      }
      await this.refreshPlayerPanels();
    });
  }

  async captureNote(kind: string, uri: string): Promise<void> {
    await this.guard(async () => {
      const note = await this.api.note(this.playerId(), kind, uri);
      toast(this.state, `captured ${note.note_id}`);
      this.render();
    });
  }

  async pollOnce(): Promise<void> {
    if (!this.state.playerId) return;
    const events = await this.api.events(this.state.lastEventSeq);
    applyEvents(this.state, events);
    this.state.others = await this.api.playersMap();
    this.render();
  }

  // -- internals ---------------------------------------------------------------

  private playerId(): string {
    if (!this.state.playerId) throw new ApiError("TRANSPORT", "not joined yet", 0);
    return this.state.playerId;
  }

  private describe(locationId: string): string {
    return this.state.discovered.get(locationId)?.name ?? locationId;
  }

  private showTurn(npcId: string, turn: { ended: boolean; node: import("./types.js").DialogNodeDto | null }): void {
    if (turn.node === null) {
      this.state.openDialog = null;
    } else {
      const npcName =
        [...this.state.discovered.values()].find((d) => d.npc_id === npcId)?.npc_name ?? npcId;
      this.state.openDialog = { npcId, npcName, node: turn.node };
    }
    this.render();
  }

  private afterReport(report: TriggerReport): void {
    applyReport(this.state, report);
    this.render();
  }

  private async refreshPlayerPanels(): Promise<void> {
    const pid = this.playerId();
    const [inventory, quests] = await Promise.all([
      this.api.inventory(pid),
      this.api.quests(pid),
    ]);
    this.state.inventory = inventory;
    this.state.quests = quests;
    this.render();
  }

  private async refreshQuests(): Promise<void> {
    this.state.quests = await this.api.quests(this.playerId());
  }

  private async guard(work: () => Promise<void>): Promise<void> {
    try {
      await work();
    } catch (err) {
      if (err instanceof ApiError) {
        this.state.banner = `${err.code}: ${err.message}`;
        this.render();
        return;
      }
      throw err;
    }
  }
}
