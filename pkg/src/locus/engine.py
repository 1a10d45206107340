"""Deterministic game runtime.

A GameInstance owns one shared world. Every mutating call appends an input
event to the event log before touching state, and all state changes are
pure functions of the call sequence, so re-running a log against a fresh
instance reproduces the world exactly. A single instance is one
serialization domain: callers must apply mutations one at a time (the
protocol layer holds a lock per instance); reads never mutate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .geo import GeoPoint, geo_distance, within_range
from .model import (
    ALWAYS,
    DialogNode,
    DialogOption,
    Effect,
    GameSpec,
    HazardPayload,
    ItemStack,
    LocationSpec,
    NOTE_KINDS,
    NpcPayload,
    PlaquePayload,
    RequirementExpr,
    TRIGGER_GPS,
    TRIGGER_IMMEDIATE,
    TRIGGER_QR,
)

DROPPED_LOCATION_RADIUS_M = 10.0

START = "start"  # advance_dialog choice that opens a conversation

# Event kinds that replay re-executes; everything else is informational.
INPUT_EVENT_KINDS = frozenset(
    {"join", "move", "scan", "quick_travel", "pickup", "drop", "dialog", "answer", "note"}
)


class EngineError(Exception):
    """A rejected operation; code is machine-stable uppercase snake."""

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)

    @property
    def message(self) -> str:
        return self.args[0]


@dataclass
class NoteRecord:
    note_id: str
    kind: str  # photo | video | audio | text
    payload_uri: str
    where: GeoPoint
    seq: int

    def to_dict(self) -> dict:
        return {
            "note_id": self.note_id,
            "kind": self.kind,
            "payload_uri": self.payload_uri,
            "lat": self.where.lat,
            "lon": self.where.lon,
            "seq": self.seq,
        }

    @staticmethod
    def from_dict(d: dict) -> "NoteRecord":
        return NoteRecord(d["note_id"], d["kind"], d["payload_uri"], GeoPoint(d["lat"], d["lon"]), d["seq"])


@dataclass
class PlayerState:
    player_id: str
    position: Optional[GeoPoint] = None
    inventory: dict = field(default_factory=dict)  # item_id -> qty >= 1
    visited: set = field(default_factory=set)
    talked_to: set = field(default_factory=set)
    flags: set = field(default_factory=set)
    notes: list = field(default_factory=list)
    current_dialog: Optional[tuple[str, str]] = None  # (npc_id, node_id)
    # Geofences the player is currently standing in; drives edge-triggering.
    inside: set = field(default_factory=set)
    # Plaques already answered correctly (their effects never re-fire).
    answered: set = field(default_factory=set)
    # Latched quest completions; only ever grows.
    completed_quests: set = field(default_factory=set)

    def to_dict(self) -> dict:
        return {
            "player_id": self.player_id,
            "position": None if self.position is None else {"lat": self.position.lat, "lon": self.position.lon},
            "inventory": {k: self.inventory[k] for k in sorted(self.inventory)},
            "visited": sorted(self.visited),
            "talked_to": sorted(self.talked_to),
            "flags": sorted(self.flags),
            "notes": [n.to_dict() for n in self.notes],
            "current_dialog": None if self.current_dialog is None else list(self.current_dialog),
            "inside": sorted(self.inside),
            "answered": sorted(self.answered),
            "completed_quests": sorted(self.completed_quests),
        }

    @staticmethod
    def from_dict(d: dict) -> "PlayerState":
        pos = d["position"]
        return PlayerState(
            player_id=d["player_id"],
            position=None if pos is None else GeoPoint(pos["lat"], pos["lon"]),
            inventory=dict(d["inventory"]),
            visited=set(d["visited"]),
            talked_to=set(d["talked_to"]),
            flags=set(d["flags"]),
            notes=[NoteRecord.from_dict(n) for n in d["notes"]],
            current_dialog=None if d["current_dialog"] is None else tuple(d["current_dialog"]),
            inside=set(d["inside"]),
            answered=set(d["answered"]),
            completed_quests=set(d["completed_quests"]),
        )


@dataclass
class WorldState:
    stock: dict = field(default_factory=dict)  # location_id -> remaining qty
    dropped: list = field(default_factory=list)  # runtime LocationSpecs
    players: dict = field(default_factory=dict)  # player_id -> PlayerState

    def to_dict(self) -> dict:
        return {
            "stock": {k: self.stock[k] for k in sorted(self.stock)},
            "dropped": [_dropped_to_dict(loc) for loc in self.dropped],
            "players": {pid: self.players[pid].to_dict() for pid in sorted(self.players)},
        }

    @staticmethod
    def from_dict(d: dict) -> "WorldState":
        return WorldState(
            stock=dict(d["stock"]),
            dropped=[_dropped_from_dict(x) for x in d["dropped"]],
            players={pid: PlayerState.from_dict(p) for pid, p in d["players"].items()},
        )


def _dropped_to_dict(loc: LocationSpec) -> dict:
    stack = loc.payload
    return {
        "location_id": loc.location_id,
        "name": loc.name,
        "lat": loc.center.lat,
        "lon": loc.center.lon,
        "radius_m": loc.radius_m,
        "item_id": stack.item_id,
        "qty": stack.qty,
    }


def _dropped_from_dict(d: dict) -> LocationSpec:
    return LocationSpec(
        location_id=d["location_id"],
        name=d["name"],
        center=GeoPoint(d["lat"], d["lon"]),
        radius_m=d["radius_m"],
        trigger=TRIGGER_GPS,
        payload=ItemStack(d["item_id"], d["qty"]),
        visible_if=ALWAYS,
    )


@dataclass
class EngineEvent:
    seq: int
    player_id: str
    kind: str
    payload: dict

    def to_dict(self) -> dict:
        return {"seq": self.seq, "player_id": self.player_id, "kind": self.kind, "payload": self.payload}


@dataclass
class TriggerReport:
    """What a position update, scan, or quick travel revealed and fired."""

    nearby: list = field(default_factory=list)  # (location_id, distance_m), distance-ordered
    newly_visited: list = field(default_factory=list)
    fired_effects: list = field(default_factory=list)
    hazards_hit: list = field(default_factory=list)
    matched: bool = True  # False when a scanned code keys nothing visible


@dataclass
class DialogTurn:
    """One step of a conversation: the node now showing, or the end."""

    node: Optional[DialogNode]
    options: list  # visible DialogOptions of node, selection-indexed
    effects: list  # effects fired by the choice that got us here
    ended: bool


@dataclass
class AnswerResult:
    correct: bool
    effects: list  # on_correct effects fired now (empty on repeats)


@dataclass
class QuestStatus:
    active: list
    complete: list


class _EffectFailure(Exception):
    pass


def eval_requirement(expr: RequirementExpr, player: PlayerState, world: WorldState | None = None) -> bool:
    """True iff some all-of group holds; the empty expression is true.

    Pure: depends only on the player's state (all atoms are player-local;
    world is accepted for signature stability and currently unused).
    """
    if expr.always_true:
        return True
    return any(all(_eval_atom(a, player) for a in group) for group in expr.any_of)


def _eval_atom(atom, player: PlayerState) -> bool:
    kind = atom.kind
    if kind == "has_item":
        return player.inventory.get(atom.target, 0) >= atom.qty
    if kind == "lacks_item":
        return player.inventory.get(atom.target, 0) == 0
    if kind == "visited":
        return atom.target in player.visited
    if kind == "talked_to":
        return atom.target in player.talked_to
    if kind == "flag_set":
        return atom.target in player.flags
    if kind == "quest_complete":
        return atom.target in player.completed_quests
    if kind == "notes_at_least":
        return len(player.notes) >= atom.qty
    raise ValueError(f"unknown requirement kind {kind!r}")


def normalize_answer(text: str) -> str:
    """Trim, case-fold, and collapse internal whitespace runs."""
    return " ".join(text.split()).casefold()


class GameInstance:
    """Live state of one game: immutable spec + mutable shared world."""

    def __init__(self, spec: GameSpec):
        self.spec = spec
        self.world = WorldState()
        self.event_log: list[EngineEvent] = []
        self._last_seq = 0
        for loc in spec.locations:
            if isinstance(loc.payload, ItemStack):
                self.world.stock[loc.location_id] = loc.payload.qty

    # -- event plumbing ----------------------------------------------------

    @property
    def last_seq(self) -> int:
        return self._last_seq

    def _log(self, player_id: str, kind: str, payload: dict) -> EngineEvent:
        self._last_seq += 1
        ev = EngineEvent(self._last_seq, player_id, kind, payload)
        self.event_log.append(ev)
        return ev

    def events_since(self, since_seq: int) -> list[EngineEvent]:
        """Events with seq > since_seq, in order; [] when caught up."""
        return [ev for ev in self.event_log if ev.seq > since_seq]

    # -- lookups -----------------------------------------------------------

    def _player(self, player_id: str) -> PlayerState:
        try:
            return self.world.players[player_id]
        except KeyError:
            raise EngineError("UNKNOWN_PLAYER", f"player {player_id!r} has not joined") from None

    def _all_locations(self):
        yield from self.spec.locations
        yield from self.world.dropped

    def _find_location(self, location_id: str) -> Optional[LocationSpec]:
        for loc in self._all_locations():
            if loc.location_id == location_id:
                return loc
        return None

    # -- effects -----------------------------------------------------------

    def _stage_effects(self, player: PlayerState, effects) -> tuple[dict, set]:
        """Apply effects to scratch copies; raise _EffectFailure on any
        take below quantity or give beyond an item's bound."""
        inv = dict(player.inventory)
        flags = set(player.flags)
        for eff in effects:
            if eff.kind == "give_item":
                item = self.spec.items.get(eff.item_id)
                new = inv.get(eff.item_id, 0) + eff.qty
                if item is not None and not item.unbounded and new > item.max_qty:
                    raise _EffectFailure(f"give {eff.item_id} x{eff.qty} exceeds max_qty {item.max_qty}")
                inv[eff.item_id] = new
            elif eff.kind == "take_item":
                cur = inv.get(eff.item_id, 0)
                if cur < eff.qty:
                    raise _EffectFailure(f"take {eff.item_id} x{eff.qty} but only {cur} held")
                if cur == eff.qty:
                    inv.pop(eff.item_id)
                else:
                    inv[eff.item_id] = cur - eff.qty
            elif eff.kind == "set_flag":
                flags.add(eff.flag)
            else:
                flags.discard(eff.flag)
        return inv, flags

    def _fire_effects(self, player: PlayerState, effects, context: str) -> bool:
        """Atomically apply effects. On failure, log an effect_failed
        event, leave state untouched, and return False."""
        try:
            inv, flags = self._stage_effects(player, effects)
        except _EffectFailure as exc:
            self._log(player.player_id, "effect_failed", {"context": context, "reason": str(exc)})
            return False
        player.inventory = inv
        player.flags = flags
        return True

    # -- quest latch -------------------------------------------------------

    def _refresh_quests(self, player: PlayerState) -> None:
        """Latch newly satisfied completions, to a fixpoint so quest
        chains (complete_if referencing other quests) settle in one call."""
        changed = True
        while changed:
            changed = False
            for quest_id, quest in self.spec.quests.items():
                if quest_id not in player.completed_quests and eval_requirement(quest.complete_if, player):
                    player.completed_quests.add(quest_id)
                    changed = True

    # -- operations --------------------------------------------------------

    def join_game(self, player_id: str) -> PlayerState:
        if not player_id:
            raise ValueError("player_id may not be empty")
        if player_id in self.world.players:
            raise EngineError("DUPLICATE_PLAYER", f"player {player_id!r} already joined")
        player = PlayerState(player_id=player_id)
        self.world.players[player_id] = player
        self._log(player_id, "join", {})

        # Deliver join-time locations, sweeping until no new ones unlock
        # (an earlier delivery's effects may reveal a later one).
        delivered = True
        while delivered:
            delivered = False
            for loc in self.spec.locations:
                if (
                    loc.trigger == TRIGGER_IMMEDIATE
                    and loc.location_id not in player.visited
                    and eval_requirement(loc.visible_if, player)
                ):
                    player.visited.add(loc.location_id)
                    if isinstance(loc.payload, HazardPayload):
                        self._fire_effects(player, loc.payload.effects, f"immediate:{loc.location_id}")
                    delivered = True
        self._refresh_quests(player)
        return player

    def update_position(self, player_id: str, p: GeoPoint) -> TriggerReport:
        player = self._player(player_id)
        self._log(player_id, "move", {"lat": p.lat, "lon": p.lon})
        return self._apply_position(player, p)

    def quick_travel(self, player_id: str, location_id: str) -> TriggerReport:
        player = self._player(player_id)
        if not self.spec.quick_travel_allowed:
            raise EngineError("QUICK_TRAVEL_DISABLED", "this game does not allow quick travel")
        loc = self._find_location(location_id)
        if loc is None:
            raise EngineError("UNKNOWN_LOCATION", f"no location {location_id!r}")
        if not eval_requirement(loc.visible_if, player):
            raise EngineError("NOT_VISIBLE", f"location {location_id!r} is not visible to you")
        self._log(player_id, "quick_travel", {"location_id": location_id})
        return self._apply_position(player, loc.center)

    def _apply_position(self, player: PlayerState, p: GeoPoint) -> TriggerReport:
        player.position = p
        report = TriggerReport()

        now_inside = set()
        entered = []  # authored order
        for loc in self._all_locations():
            if loc.trigger != TRIGGER_GPS:
                continue
            if not eval_requirement(loc.visible_if, player):
                continue
            if within_range(p, loc):
                now_inside.add(loc.location_id)
                if loc.location_id not in player.inside:
                    entered.append(loc)
        player.inside = now_inside

        for loc in entered:
            player.visited.add(loc.location_id)
            report.newly_visited.append(loc.location_id)
            if isinstance(loc.payload, HazardPayload):
                report.hazards_hit.append(loc.location_id)
                if self._fire_effects(player, loc.payload.effects, f"hazard:{loc.location_id}"):
                    report.fired_effects.extend(loc.payload.effects)

        self._refresh_quests(player)
        report.nearby = self._nearby(player)
        return report

    def _nearby(self, player: PlayerState) -> list:
        """Visible GPS geofences containing the player, nearest first,
        ties broken by location id."""
        if player.position is None:
            return []
        out = []
        for loc in self._all_locations():
            if loc.trigger != TRIGGER_GPS:
                continue
            if not eval_requirement(loc.visible_if, player):
                continue
            dist = geo_distance(player.position, loc.center)
            if dist <= loc.radius_m:
                out.append((loc.location_id, dist))
        out.sort(key=lambda pair: (pair[1], pair[0]))
        return out

    def nearby(self, player_id: str) -> list:
        """Read-only recomputation of the nearby list."""
        return self._nearby(self._player(player_id))

    def scan_code(self, player_id: str, code: str) -> TriggerReport:
        player = self._player(player_id)
        self._log(player_id, "scan", {"code": code})
        report = TriggerReport(matched=False)
        for loc in self.spec.locations:
            if loc.trigger != TRIGGER_QR or loc.qr_code != code:
                continue
            if not eval_requirement(loc.visible_if, player):
                break  # hidden codes behave like unknown ones
            report.matched = True
            if loc.location_id not in player.visited:
                player.visited.add(loc.location_id)
                report.newly_visited.append(loc.location_id)
                if isinstance(loc.payload, HazardPayload):
                    report.hazards_hit.append(loc.location_id)
                    if self._fire_effects(player, loc.payload.effects, f"hazard:{loc.location_id}"):
                        report.fired_effects.extend(loc.payload.effects)
            break
        self._refresh_quests(player)
        report.nearby = self._nearby(player)
        return report

    def pickup_item(self, player_id: str, location_id: str, qty: int) -> dict:
        if qty < 1:
            raise ValueError("pickup qty must be >= 1")
        player = self._player(player_id)
        loc = self._find_location(location_id)
        if loc is None or location_id not in player.visited:
            raise EngineError("NOT_HERE", f"you have not reached {location_id!r}")
        if not isinstance(loc.payload, ItemStack):
            raise EngineError("NOT_AN_ITEM", f"{location_id!r} holds no items")
        if loc.trigger == TRIGGER_GPS:
            if player.position is None or not within_range(player.position, loc):
                raise EngineError("NOT_HERE", f"you are not within range of {location_id!r}")
        stock = self.world.stock.get(location_id, 0)
        if stock <= 0:
            raise EngineError("EMPTY_STOCK", f"{location_id!r} is empty")

        item = self.spec.items[loc.payload.item_id]
        held = player.inventory.get(item.item_id, 0)
        headroom = qty if item.unbounded else max(0, item.max_qty - held)
        transferred = min(qty, stock, headroom)
        self._log(
            player_id,
            "pickup",
            {"location_id": location_id, "qty": qty, "transferred": transferred},
        )
        if transferred:
            player.inventory[item.item_id] = held + transferred
            self.world.stock[location_id] = stock - transferred
        if self.world.stock.get(location_id) == 0 and loc in self.world.dropped:
            self.world.dropped.remove(loc)
            self.world.stock.pop(location_id)
        self._refresh_quests(player)
        return dict(player.inventory)

    def drop_item(self, player_id: str, item_id: str, qty: int) -> str:
        if qty < 1:
            raise ValueError("drop qty must be >= 1")
        player = self._player(player_id)
        held = player.inventory.get(item_id, 0)
        if held < qty:
            raise EngineError("INSUFFICIENT_QTY", f"holding {held} of {item_id!r}, not {qty}")
        item = self.spec.items[item_id]
        if not item.droppable:
            raise EngineError("NOT_DROPPABLE", f"{item_id!r} cannot be dropped")
        if player.position is None:
            raise EngineError("NO_POSITION", "you have no position to drop at")

        location_id = f"drop_{self.last_seq + 1}"
        self._log(
            player_id,
            "drop",
            {
                "item_id": item_id,
                "qty": qty,
                "location_id": location_id,
                "lat": player.position.lat,
                "lon": player.position.lon,
            },
        )
        if held == qty:
            player.inventory.pop(item_id)
        else:
            player.inventory[item_id] = held - qty
        loc = LocationSpec(
            location_id=location_id,
            name=item.name,
            center=player.position,
            radius_m=DROPPED_LOCATION_RADIUS_M,
            trigger=TRIGGER_GPS,
            payload=ItemStack(item_id, qty),
            visible_if=ALWAYS,
        )
        self.world.dropped.append(loc)
        self.world.stock[location_id] = qty
        self._refresh_quests(player)
        return location_id

    def advance_dialog(self, player_id: str, npc_id: str, choice: Union[str, int]) -> DialogTurn:
        player = self._player(player_id)
        npc = self.spec.characters.get(npc_id)
        if npc is None:
            raise EngineError("NO_DIALOG", f"no character {npc_id!r}")

        if choice == START:
            if not self._npc_reached(player, npc_id):
                raise EngineError("NOT_MET", f"you have not encountered {npc_id!r}")
            self._log(player_id, "dialog", {"npc_id": npc_id, "choice": START})
            player.talked_to.add(npc_id)
            self._refresh_quests(player)
            return self._enter_node(player, npc_id, npc.opening_node, [])

        if not isinstance(choice, int):
            raise ValueError(f"choice must be {START!r} or an option index")
        if player.current_dialog is None or player.current_dialog[0] != npc_id:
            raise EngineError("NO_DIALOG", f"no conversation in progress with {npc_id!r}")
        node = self.spec.dialogs[player.current_dialog[1]]
        visible = [opt for opt in node.options if eval_requirement(opt.visible_if, player)]
        if not 0 <= choice < len(visible):
            raise EngineError("BAD_OPTION", f"option {choice} is not on offer")
        opt = visible[choice]

        self._log(player_id, "dialog", {"npc_id": npc_id, "choice": choice})
        if not self._fire_effects(player, opt.effects, f"dialog:{node.node_id}[{choice}]"):
            raise EngineError("EFFECT_FAILED", "the choice's effects could not be applied")
        self._refresh_quests(player)
        if opt.next is None:
            player.current_dialog = None
            return DialogTurn(node=None, options=[], effects=list(opt.effects), ended=True)
        return self._enter_node(player, npc_id, opt.next, list(opt.effects))

    def _enter_node(self, player: PlayerState, npc_id: str, node_id: str, effects: list) -> DialogTurn:
        node = self.spec.dialogs[node_id]
        visible = [opt for opt in node.options if eval_requirement(opt.visible_if, player)]
        if visible:
            player.current_dialog = (npc_id, node_id)
        else:
            player.current_dialog = None  # conversation ends at this node
        return DialogTurn(node=node, options=visible, effects=effects, ended=not visible)

    def _npc_reached(self, player: PlayerState, npc_id: str) -> bool:
        for loc in self.spec.locations:
            if isinstance(loc.payload, NpcPayload) and loc.payload.npc_id == npc_id:
                if loc.location_id in player.visited:
                    return True
        return False

    def submit_answer(self, player_id: str, location_id: str, text: str) -> AnswerResult:
        player = self._player(player_id)
        loc = self._find_location(location_id)
        if loc is None or location_id not in player.visited:
            raise EngineError("NOT_HERE", f"you have not reached {location_id!r}")
        if not isinstance(loc.payload, PlaquePayload):
            raise EngineError("NO_ANSWER_EXPECTED", f"{location_id!r} takes no answer")
        plaque = self.spec.plaques[loc.payload.plaque_id]
        if plaque.answer is None:
            raise EngineError("NO_ANSWER_EXPECTED", f"{location_id!r} takes no answer")

        self._log(player_id, "answer", {"location_id": location_id, "text": text})
        if normalize_answer(text) != normalize_answer(plaque.answer.expected):
            return AnswerResult(correct=False, effects=[])
        if location_id in player.answered:
            return AnswerResult(correct=True, effects=[])
        if not self._fire_effects(player, plaque.answer.on_correct, f"answer:{location_id}"):
            raise EngineError("EFFECT_FAILED", "the answer's effects could not be applied")
        player.answered.add(location_id)
        self._refresh_quests(player)
        return AnswerResult(correct=True, effects=list(plaque.answer.on_correct))

    def quest_status(self, player_id: str) -> QuestStatus:
        player = self._player(player_id)
        complete = [qid for qid in self.spec.quests if qid in player.completed_quests]
        active = [
            qid
            for qid, quest in self.spec.quests.items()
            if qid not in player.completed_quests and eval_requirement(quest.active_if, player)
        ]
        return QuestStatus(active=active, complete=complete)

    def capture_note(self, player_id: str, kind: str, payload_uri: str) -> NoteRecord:
        if kind not in NOTE_KINDS:
            raise ValueError(f"note kind must be one of {NOTE_KINDS}")
        player = self._player(player_id)
        if player.position is None:
            raise EngineError("NO_POSITION", "you have no position to attach the note to")
        seq = len(player.notes) + 1
        note = NoteRecord(
            note_id=f"note_{player_id}_{seq}",
            kind=kind,
            payload_uri=payload_uri,
            where=player.position,
            seq=seq,
        )
        self._log(player_id, "note", {"kind": kind, "payload_uri": payload_uri, "note_id": note.note_id})
        player.notes.append(note)
        self._refresh_quests(player)
        return note

    def other_players(self, player_id: str) -> list:
        self._player(player_id)
        return [
            (pid, p.position)
            for pid, p in sorted(self.world.players.items())
            if pid != player_id and p.position is not None
        ]


def replay_events(spec: GameSpec, events) -> GameInstance:
    """Rebuild an instance by re-executing a log's input events.

    Informational events are skipped (re-execution regenerates them), and
    engine rejections are swallowed: a rejected call mutated nothing when
    the log was recorded, so it mutates nothing now.
    """
    instance = GameInstance(spec)
    for ev in events:
        if ev.kind in INPUT_EVENT_KINDS:
            try:
                apply_event(instance, ev)
            except EngineError:
                pass
    return instance


def apply_event(instance: GameInstance, ev: EngineEvent):
    p = ev.payload
    if ev.kind == "join":
        return instance.join_game(ev.player_id)
    if ev.kind == "move":
        return instance.update_position(ev.player_id, GeoPoint(p["lat"], p["lon"]))
    if ev.kind == "scan":
        return instance.scan_code(ev.player_id, p["code"])
    if ev.kind == "quick_travel":
        return instance.quick_travel(ev.player_id, p["location_id"])
    if ev.kind == "pickup":
        return instance.pickup_item(ev.player_id, p["location_id"], p["qty"])
    if ev.kind == "drop":
        return instance.drop_item(ev.player_id, p["item_id"], p["qty"])
    if ev.kind == "dialog":
        return instance.advance_dialog(ev.player_id, p["npc_id"], p["choice"])
    if ev.kind == "answer":
        return instance.submit_answer(ev.player_id, p["location_id"], p["text"])
    if ev.kind == "note":
        return instance.capture_note(ev.player_id, p["kind"], p["payload_uri"])
    raise ValueError(f"not an input event kind: {ev.kind!r}")
