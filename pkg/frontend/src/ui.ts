// DOM panels. buildShell() creates the static structure once; renderAll()
// redraws the data-driven parts from ClientViewState. All text rendered
// here arrived verbatim from the server.

import type { ClientViewState } from "./state.js";
import type { LocationDetail } from "./types.js";

export interface Handlers {
  pickup(locationId: string, qty: number): void;
  talk(npcId: string): void;
  openPlaque(detail: LocationDetail): void;
  chooseOption(index: number): void;
  closeDialog(): void;
  closePlaque(): void;
  submitAnswer(locationId: string, text: string): void;
  dropItem(itemId: string, qty: number): void;
  dismissBanner(): void;
}

export interface Shell {
  mapSlot: HTMLElement;
  banner: HTMLElement;
  toasts: HTMLElement;
  nearby: HTMLElement;
  dialog: HTMLElement;
  plaque: HTMLElement;
  inventory: HTMLElement;
  quests: HTMLElement;
  status: HTMLElement;
  joinForm: HTMLElement;
  controls: HTMLElement;
  qrInput: HTMLInputElement;
  qrButton: HTMLButtonElement;
  travelInput: HTMLInputElement;
  travelButton: HTMLButtonElement;
  noteKind: HTMLSelectElement;
  noteUri: HTMLInputElement;
  noteButton: HTMLButtonElement;
  zoomIn: HTMLButtonElement;
  zoomOut: HTMLButtonElement;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function buildShell(doc: Document, root: HTMLElement): Shell {
  root.replaceChildren();

  const banner = el(doc, "div", "banner hidden");
  banner.id = "banner";
  const status = el(doc, "div", "status");
  status.id = "status";
  const joinForm = el(doc, "div", "join-form");
  joinForm.id = "join-form";

  const main = el(doc, "div", "main");
  const left = el(doc, "div", "left");
  const right = el(doc, "div", "right");

  const mapSlot = el(doc, "div", "map-slot");
  mapSlot.id = "map-slot";
  const zoomIn = el(doc, "button", "", "+");
  zoomIn.id = "zoom-in";
  const zoomOut = el(doc, "button", "", "-");
  zoomOut.id = "zoom-out";
  const zoomBar = el(doc, "div", "zoom-bar");
  zoomBar.append(zoomIn, zoomOut);

  const controls = el(doc, "div", "controls");
  controls.id = "controls";
  const qrInput = el(doc, "input");
  qrInput.id = "qr-input";
  qrInput.placeholder = "QR code";
  const qrButton = el(doc, "button", "", "scan");
  qrButton.id = "qr-button";
  const travelInput = el(doc, "input");
  travelInput.id = "travel-input";
  travelInput.placeholder = "location id";
  const travelButton = el(doc, "button", "", "quick travel");
  travelButton.id = "travel-button";
  const noteKind = el(doc, "select");
  noteKind.id = "note-kind";
  for (const kind of ["photo", "video", "audio", "text"]) {
    const option = el(doc, "option", "", kind);
    option.setAttribute("value", kind);
    noteKind.append(option);
  }
  const noteUri = el(doc, "input");
  noteUri.id = "note-uri";
  noteUri.placeholder = "note uri";
  const noteButton = el(doc, "button", "", "capture note");
  noteButton.id = "note-button";
  controls.append(qrInput, qrButton, travelInput, travelButton, noteKind, noteUri, noteButton);

  const toasts = el(doc, "div", "toasts");
  toasts.id = "toasts";
  const nearby = el(doc, "div", "panel nearby");
  nearby.id = "nearby";
  const dialog = el(doc, "div", "panel dialog hidden");
  dialog.id = "dialog";
  const plaque = el(doc, "div", "panel plaque hidden");
  plaque.id = "plaque";
  const inventory = el(doc, "div", "panel inventory");
  inventory.id = "inventory";
  const quests = el(doc, "div", "panel quests");
  quests.id = "quests";

  left.append(mapSlot, zoomBar, controls, toasts);
  right.append(nearby, dialog, plaque, inventory, quests);
  main.append(left, right);
  root.append(status, banner, joinForm, main);

  return {
    mapSlot, banner, toasts, nearby, dialog, plaque, inventory, quests,
    status, joinForm, controls, qrInput, qrButton, travelInput, travelButton,
    noteKind, noteUri, noteButton, zoomIn, zoomOut,
  };
}

export function renderAll(doc: Document, shell: Shell, state: ClientViewState, handlers: Handlers): void {
  renderStatus(doc, shell, state);
  renderBanner(doc, shell, state, handlers);
  renderToasts(doc, shell, state);
  renderNearby(doc, shell, state, handlers);
  renderDialog(doc, shell, state, handlers);
  renderPlaque(doc, shell, state, handlers);
  renderInventory(doc, shell, state, handlers);
  renderQuests(doc, shell, state);
  shell.travelInput.disabled = !state.quickTravelAllowed;
  shell.travelButton.disabled = !state.quickTravelAllowed;
  shell.travelButton.title = state.quickTravelAllowed
    ? "jump to a visible location"
    : "this game does not allow quick travel";
}

function renderStatus(doc: Document, shell: Shell, state: ClientViewState): void {
  const where = state.myPosition
    ? `${state.myPosition.lat.toFixed(6)}, ${state.myPosition.lon.toFixed(6)}`
    : "no position yet (click the map)";
  shell.status.textContent = state.playerId
    ? `${state.playerId} @ ${state.gameId} | ${where}`
    : "not joined";
}

function renderBanner(doc: Document, shell: Shell, state: ClientViewState, handlers: Handlers): void {
  shell.banner.replaceChildren();
  shell.banner.classList.toggle("hidden", state.banner === null);
  if (state.banner === null) return;
  shell.banner.append(el(doc, "span", "banner-text", state.banner));
  const dismiss = el(doc, "button", "", "dismiss");
  dismiss.addEventListener("click", () => handlers.dismissBanner());
  shell.banner.append(dismiss);
}

function renderToasts(doc: Document, shell: Shell, state: ClientViewState): void {
  shell.toasts.replaceChildren();
  for (const message of state.toasts) {
    shell.toasts.append(el(doc, "div", "toast", message));
  }
}

function describe(detail: LocationDetail): string {
  switch (detail.kind) {
    case "items":
      return `${detail.name} (${detail.item_name ?? detail.item_id})`;
    case "character":
      return `${detail.name} (${detail.npc_name ?? detail.npc_id})`;
    case "plaque":
      return `${detail.name} (plaque)`;
    case "hazard":
      return `${detail.name} (!)`;
    default:
      return detail.name;
  }
}

function renderNearby(doc: Document, shell: Shell, state: ClientViewState, handlers: Handlers): void {
  shell.nearby.replaceChildren(el(doc, "h3", "", "Nearby"));
  if (!state.nearby.length) {
    shell.nearby.append(el(doc, "div", "empty", "nothing in range"));
    return;
  }
  for (const detail of state.nearby) {
    const row = el(doc, "div", "nearby-row");
    row.setAttribute("data-location", detail.location_id);
    const meters = detail.distance_m === undefined ? "" : ` ${detail.distance_m.toFixed(0)} m`;
    row.append(el(doc, "span", "nearby-name", describe(detail) + meters));
    if (detail.kind === "items") {
      const button = el(doc, "button", "", "pick up 1");
      button.setAttribute("data-action", "pickup");
      button.addEventListener("click", () => handlers.pickup(detail.location_id, 1));
      row.append(button);
    } else if (detail.kind === "character" && detail.npc_id) {
      const npcId = detail.npc_id;
      const button = el(doc, "button", "", "talk");
      button.setAttribute("data-action", "talk");
      button.addEventListener("click", () => handlers.talk(npcId));
      row.append(button);
    } else if (detail.kind === "plaque") {
      const button = el(doc, "button", "", "read");
      button.setAttribute("data-action", "read");
      button.addEventListener("click", () => handlers.openPlaque(detail));
      row.append(button);
    }
    shell.nearby.append(row);
  }
}

function renderDialog(doc: Document, shell: Shell, state: ClientViewState, handlers: Handlers): void {
  shell.dialog.replaceChildren();
  shell.dialog.classList.toggle("hidden", state.openDialog === null);
  if (!state.openDialog) return;
  const { npcName, node } = state.openDialog;
  shell.dialog.append(el(doc, "h3", "", npcName));
  shell.dialog.append(el(doc, "p", "dialog-text", node.text));
  for (const option of node.options) {
    const button = el(doc, "button", "dialog-option", option.label);
    button.setAttribute("data-option", String(option.index));
    button.addEventListener("click", () => handlers.chooseOption(option.index));
    shell.dialog.append(button);
  }
  const close = el(doc, "button", "dialog-close", node.options.length ? "walk away" : "close");
  close.setAttribute("data-action", "close-dialog");
  close.addEventListener("click", () => handlers.closeDialog());
  shell.dialog.append(close);
}

function renderPlaque(doc: Document, shell: Shell, state: ClientViewState, handlers: Handlers): void {
  shell.plaque.replaceChildren();
  shell.plaque.classList.toggle("hidden", state.openPlaque === null);
  if (!state.openPlaque) return;
  const detail = state.openPlaque;
  const plaque = detail.plaque;
  shell.plaque.append(el(doc, "h3", "", plaque?.title ?? detail.name));
  shell.plaque.append(el(doc, "p", "plaque-body", plaque?.body ?? ""));
  if (plaque?.has_answer) {
    const input = el(doc, "input");
    input.id = "answer-input";
    input.placeholder = "your answer";
    const submit = el(doc, "button", "", "answer");
    submit.setAttribute("data-action", "answer");
    submit.addEventListener("click", () => handlers.submitAnswer(detail.location_id, input.value));
    shell.plaque.append(input, submit);
  }
  const close = el(doc, "button", "", "close");
  close.setAttribute("data-action", "close-plaque");
  close.addEventListener("click", () => handlers.closePlaque());
  shell.plaque.append(close);
}

function renderInventory(doc: Document, shell: Shell, state: ClientViewState, handlers: Handlers): void {
  shell.inventory.replaceChildren(el(doc, "h3", "", "Inventory"));
  const items = Object.keys(state.inventory).sort();
  if (!items.length) {
    shell.inventory.append(el(doc, "div", "empty", "(empty)"));
    return;
  }
  for (const itemId of items) {
    const row = el(doc, "div", "inventory-row");
    row.setAttribute("data-item", itemId);
    row.append(el(doc, "span", "", `${itemId} x${state.inventory[itemId]}`));
    const drop = el(doc, "button", "", "drop 1");
    drop.setAttribute("data-action", "drop");
    drop.addEventListener("click", () => handlers.dropItem(itemId, 1));
    row.append(drop);
    shell.inventory.append(row);
  }
}

function renderQuests(doc: Document, shell: Shell, state: ClientViewState): void {
  shell.quests.replaceChildren(el(doc, "h3", "", "Quests"));
  const { active, complete, detail } = state.quests;
  if (!active.length && !complete.length) {
    shell.quests.append(el(doc, "div", "empty", "(none)"));
    return;
  }
  for (const questId of active) {
    const info = detail[questId];
    const row = el(doc, "div", "quest-row quest-active");
    row.setAttribute("data-quest", questId);
    row.append(el(doc, "strong", "", info?.name ?? questId));
    if (info?.active_text) row.append(el(doc, "span", "", ` ${info.active_text}`));
    shell.quests.append(row);
  }
  for (const questId of complete) {
    const info = detail[questId];
    const row = el(doc, "div", "quest-row quest-complete");
    row.setAttribute("data-quest", questId);
    row.append(el(doc, "strong", "", `[done] ${info?.name ?? questId}`));
    if (info?.complete_text) row.append(el(doc, "span", "", ` ${info.complete_text}`));
    shell.quests.append(row);
  }
}
