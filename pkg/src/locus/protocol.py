"""Wire protocol: a pure request dispatcher over one or more game instances.

Transport is someone else's problem (see server.py); this module maps
(method, path, headers, body) to (status, response dict) so the whole
protocol is testable in-process. Responses are always
{"ok": bool, "data": ...} or {"ok": false, "error": {"code", "message"}}.

Mutations targeting one game are serialized behind a per-instance lock;
requests for different games proceed in parallel.
"""

from __future__ import annotations

import json
import re
import secrets
import threading
from dataclasses import dataclass
from typing import Optional
from urllib.parse import parse_qs, unquote, urlsplit

from .engine import EngineError, GameInstance, START
from .geo import GeoPoint, geo_distance
from .model import (
    DialogNode,
    Effect,
    GameSpec,
    HazardPayload,
    ItemStack,
    LocationSpec,
    NOTE_KINDS,
    NpcPayload,
    PlaquePayload,
    TRIGGER_QR,
)

# Engine rejections surface as 409; protocol-level failures use 4xx below.
HTTP_BAD_BODY = 400
HTTP_BAD_TOKEN = 401
HTTP_NOT_FOUND = 404
HTTP_CONFLICT = 409
HTTP_VALIDATION = 422

# Every code a response may carry. Tests hold the service to this table.
ERROR_CODES = {
    "BAD_BODY": HTTP_BAD_BODY,
    "BAD_TOKEN": HTTP_BAD_TOKEN,
    "NOT_FOUND": HTTP_NOT_FOUND,
    "VALIDATION": HTTP_VALIDATION,
    "DUPLICATE_PLAYER": HTTP_CONFLICT,
    "UNKNOWN_PLAYER": HTTP_CONFLICT,
    "UNKNOWN_LOCATION": HTTP_CONFLICT,
    "NOT_VISIBLE": HTTP_CONFLICT,
    "QUICK_TRAVEL_DISABLED": HTTP_CONFLICT,
    "NOT_HERE": HTTP_CONFLICT,
    "NOT_AN_ITEM": HTTP_CONFLICT,
    "EMPTY_STOCK": HTTP_CONFLICT,
    "INSUFFICIENT_QTY": HTTP_CONFLICT,
    "NOT_DROPPABLE": HTTP_CONFLICT,
    "NO_POSITION": HTTP_CONFLICT,
    "NOT_MET": HTTP_CONFLICT,
    "NO_DIALOG": HTTP_CONFLICT,
    "BAD_OPTION": HTTP_CONFLICT,
    "NO_ANSWER_EXPECTED": HTTP_CONFLICT,
    "EFFECT_FAILED": HTTP_CONFLICT,
}


class ApiError(Exception):
    def __init__(self, code: str, message: str):
        assert code in ERROR_CODES, code
        self.code = code
        self.http_status = ERROR_CODES[code]
        super().__init__(message)

    @property
    def message(self) -> str:
        return self.args[0]


@dataclass
class Session:
    token: str
    game_id: str
    player_id: str


class GameService:
    """Holds loaded games, issues session tokens, dispatches requests."""

    def __init__(self):
        self.games: dict[str, GameInstance] = {}
        self.sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.RLock] = {}
        self._registry_lock = threading.Lock()

    def add_game(self, spec: GameSpec, instance: Optional[GameInstance] = None) -> GameInstance:
        instance = instance or GameInstance(spec)
        with self._registry_lock:
            self.games[spec.game_id] = instance
            self._locks[spec.game_id] = threading.RLock()
        return instance

    def issue_token(self, game_id: str, player_id: str) -> str:
        token = secrets.token_urlsafe(16)
        self.sessions[token] = Session(token, game_id, player_id)
        return token

    def export_sessions(self) -> dict:
        """Token table in JSON-safe form, for persistence across restarts."""
        return {
            t: {"game_id": s.game_id, "player_id": s.player_id}
            for t, s in sorted(self.sessions.items())
        }

    def restore_sessions(self, exported: dict) -> None:
        for token, bind in exported.items():
            self.sessions[token] = Session(token, bind["game_id"], bind["player_id"])

    # -- request entry point ------------------------------------------------

    def handle_request(self, method: str, path: str, headers: dict, body=None) -> tuple[int, dict]:
        try:
            data = self._dispatch(method.upper(), path, headers or {}, body)
            return 200, {"ok": True, "data": data}
        except ApiError as exc:
            return exc.http_status, {"ok": False, "error": {"code": exc.code, "message": exc.message}}
        except EngineError as exc:
            return HTTP_CONFLICT, {"ok": False, "error": {"code": exc.code, "message": exc.message}}

    def _dispatch(self, method: str, path: str, headers: dict, body):
        split = urlsplit(path)
        query = parse_qs(split.query)
        parts = [unquote(p) for p in split.path.strip("/").split("/") if p]

        if len(parts) < 2 or parts[0] != "v1" or parts[1] != "games":
            raise ApiError("NOT_FOUND", f"no route {split.path!r}")
        parts = parts[2:]

        if not parts:
            if method == "GET":
                return self._list_games()
            raise ApiError("NOT_FOUND", f"{method} not supported on /v1/games")

        game_id = parts[0]
        instance = self.games.get(game_id)
        if instance is None:
            raise ApiError("NOT_FOUND", f"no game {game_id!r}")
        lock = self._locks[game_id]
        rest = parts[1:]

        with lock:
            return self._dispatch_game(method, instance, rest, query, headers, body)

    def _dispatch_game(self, method, instance, rest, query, headers, body):
        game_id = instance.spec.game_id

        if rest == ["players"] and method == "POST":
            payload = _json_object(body)
            player_id = _field(payload, "player_id", str)
            if not player_id:
                raise ApiError("VALIDATION", "player_id may not be empty")
            player = instance.join_game(player_id)
            revealed = [
                _detail_by_id(instance.spec, instance, lid) for lid in sorted(player.visited)
            ]
            return {"token": self.issue_token(game_id, player_id), "revealed": revealed}

        if rest == ["events"] and method == "GET":
            since = _query_int(query, "since", 0)
            return [ev.to_dict() for ev in instance.events_since(since)]

        if rest == ["players_map"] and method == "GET":
            session = self._session(headers)
            if session.game_id != game_id:
                raise ApiError("BAD_TOKEN", "token belongs to another game")
            pairs = instance.other_players(session.player_id)
            return [{"player_id": pid, "lat": p.lat, "lon": p.lon} for pid, p in pairs]

        if len(rest) == 2 and rest[0] == "players":
            raise ApiError("NOT_FOUND", f"no route for player resource {rest[1]!r}")

        if len(rest) == 3 and rest[0] == "players":
            player_id, leaf = rest[1], rest[2]
            session = self._session(headers)
            if session.game_id != game_id or session.player_id != player_id:
                raise ApiError("BAD_TOKEN", "token does not grant access to this player")
            return self._player_route(method, instance, player_id, leaf, body)

        raise ApiError("NOT_FOUND", "no such route")

    def _player_route(self, method, instance: GameInstance, player_id: str, leaf: str, body):
        if method == "GET":
            if leaf == "nearby":
                return encode_nearby(instance, instance.nearby(player_id))
            if leaf == "inventory":
                return encode_inventory(instance.world.players[player_id].inventory)
            if leaf == "quests":
                return encode_quests(instance, instance.quest_status(player_id))
            raise ApiError("NOT_FOUND", f"no GET route {leaf!r}")

        if method != "POST":
            raise ApiError("NOT_FOUND", f"method {method} not supported here")
        payload = _json_object(body)

        if leaf == "position":
            point = _geo_point(payload)
            return encode_report(instance, instance.update_position(player_id, point))
        if leaf == "qr":
            code = _field(payload, "code", str)
            return encode_report(instance, instance.scan_code(player_id, code), scanned_code=code)
        if leaf == "quick_travel":
            location_id = _field(payload, "location_id", str)
            return encode_quick_travel(instance, player_id,
                                       instance.quick_travel(player_id, location_id))
        if leaf == "pickup":
            location_id = _field(payload, "location_id", str)
            qty = _positive_int(payload, "qty")
            return encode_inventory(instance.pickup_item(player_id, location_id, qty))
        if leaf == "drop":
            item_id = _field(payload, "item_id", str)
            qty = _positive_int(payload, "qty")
            return {"location_id": instance.drop_item(player_id, item_id, qty)}
        if leaf == "dialog":
            npc_id = _field(payload, "npc_id", str)
            choice = payload.get("choice")
            if choice != START and not isinstance(choice, int) or isinstance(choice, bool):
                raise ApiError("VALIDATION", f"choice must be {START!r} or an option index")
            return encode_dialog(instance.advance_dialog(player_id, npc_id, choice))
        if leaf == "answer":
            location_id = _field(payload, "location_id", str)
            text = _field(payload, "text", str)
            result = instance.submit_answer(player_id, location_id, text)
            return {"correct": result.correct, "effects": [encode_effect(e) for e in result.effects]}
        if leaf == "note":
            kind = _field(payload, "kind", str)
            if kind not in NOTE_KINDS:
                raise ApiError("VALIDATION", f"kind must be one of {', '.join(NOTE_KINDS)}")
            uri = _field(payload, "payload_uri", str)
            return instance.capture_note(player_id, kind, uri).to_dict()
        raise ApiError("NOT_FOUND", f"no POST route {leaf!r}")

    # -- helpers -------------------------------------------------------------

    def _list_games(self):
        return [
            {"game_id": gid, "name": inst.spec.name, "description": inst.spec.description,
             "quick_travel_allowed": inst.spec.quick_travel_allowed,
             **_map_hint(inst.spec)}
            for gid, inst in sorted(self.games.items())
        ]

    def _session(self, headers: dict) -> Session:
        auth = ""
        for key, value in headers.items():
            if key.lower() == "authorization":
                auth = value or ""
                break
        token = auth[7:] if auth.lower().startswith("bearer ") else auth
        session = self.sessions.get(token.strip())
        if session is None:
            raise ApiError("BAD_TOKEN", "missing or unrecognized token")
        return session


# -- body/query decoding -----------------------------------------------------


def _json_object(body) -> dict:
    if isinstance(body, dict):
        return body
    if body is None or body == b"" or body == "":
        raise ApiError("BAD_BODY", "request body must be a JSON object")
    if isinstance(body, bytes):
        try:
            body = body.decode("utf-8")
        except UnicodeDecodeError:
            raise ApiError("BAD_BODY", "request body is not valid UTF-8") from None
    try:
        parsed = json.loads(body)
    except json.JSONDecodeError as exc:
        raise ApiError("BAD_BODY", f"request body is not valid JSON: {exc}") from None
    if not isinstance(parsed, dict):
        raise ApiError("BAD_BODY", "request body must be a single JSON object")
    return parsed


def _field(payload: dict, name: str, typ) -> object:
    value = payload.get(name)
    if not isinstance(value, typ) or isinstance(value, bool):
        raise ApiError("VALIDATION", f"{name!r} must be a {typ.__name__}")
    return value


def _positive_int(payload: dict, name: str) -> int:
    value = payload.get(name)
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ApiError("VALIDATION", f"{name!r} must be a positive integer")
    return value


def _geo_point(payload: dict) -> GeoPoint:
    lat, lon = payload.get("lat"), payload.get("lon")
    if not isinstance(lat, (int, float)) or not isinstance(lon, (int, float)) \
            or isinstance(lat, bool) or isinstance(lon, bool):
        raise ApiError("VALIDATION", "lat and lon must be numbers")
    try:
        return GeoPoint(float(lat), float(lon))
    except ValueError as exc:
        raise ApiError("VALIDATION", str(exc)) from None


def _query_int(query: dict, name: str, default: int) -> int:
    values = query.get(name)
    if not values:
        return default
    if not re.match(r"^-?\d+$", values[0]):
        raise ApiError("VALIDATION", f"query parameter {name!r} must be an integer")
    value = int(values[0])
    if value < 0:
        raise ApiError("VALIDATION", f"query parameter {name!r} must be >= 0")
    return value


# -- encoders ------------------------------------------------------------------


def encode_effect(e: Effect) -> dict:
    if e.kind in ("give_item", "take_item"):
        return {"kind": e.kind, "item_id": e.item_id, "qty": e.qty}
    return {"kind": e.kind, "flag": e.flag}


def location_detail(spec: GameSpec, loc: LocationSpec) -> dict:
    """Presentation data for one location, joined server-side so clients
    never need the game definition."""
    detail = {"location_id": loc.location_id, "name": loc.name, "kind": "marker"}
    p = loc.payload
    if isinstance(p, ItemStack):
        item = spec.items.get(p.item_id)
        detail["kind"] = "items"
        detail["item_id"] = p.item_id
        detail["item_name"] = item.name if item else p.item_id
    elif isinstance(p, NpcPayload):
        npc = spec.characters.get(p.npc_id)
        detail["kind"] = "character"
        detail["npc_id"] = p.npc_id
        detail["npc_name"] = npc.name if npc else p.npc_id
    elif isinstance(p, PlaquePayload):
        plaque = spec.plaques.get(p.plaque_id)
        detail["kind"] = "plaque"
        if plaque is not None:
            detail["plaque"] = {
                "title": plaque.title,
                "body": plaque.body,
                "has_answer": plaque.answer is not None,
            }
    elif isinstance(p, HazardPayload):
        detail["kind"] = "hazard"
    return detail


def _detail_by_id(spec: GameSpec, instance: GameInstance, location_id: str) -> dict:
    loc = instance._find_location(location_id)
    if loc is None:
        return {"location_id": location_id, "name": location_id, "kind": "marker"}
    return location_detail(spec, loc)


def encode_nearby(instance: GameInstance, pairs) -> list:
    out = []
    for loc_id, dist in pairs:
        detail = _detail_by_id(instance.spec, instance, loc_id)
        detail["distance_m"] = dist
        out.append(detail)
    return out


def encode_report(instance: GameInstance, report, scanned_code: str | None = None) -> dict:
    revealed = [_detail_by_id(instance.spec, instance, lid) for lid in report.newly_visited]
    if scanned_code is not None and report.matched and not report.newly_visited:
        # a re-scanned code reveals its location again
        for loc in instance.spec.locations:
            if loc.trigger == TRIGGER_QR and loc.qr_code == scanned_code:
                revealed.append(location_detail(instance.spec, loc))
                break
    return {
        "matched": report.matched,
        "nearby": encode_nearby(instance, report.nearby),
        "newly_visited": list(report.newly_visited),
        "revealed": revealed,
        "fired_effects": [encode_effect(e) for e in report.fired_effects],
        "hazards_hit": list(report.hazards_hit),
    }


def encode_quick_travel(instance: GameInstance, player_id: str, report) -> dict:
    # quick travel moves the player somewhere the client has no coordinates
    # for, so the response says where they ended up
    data = encode_report(instance, report)
    position = instance.world.players[player_id].position
    data["position"] = {"lat": position.lat, "lon": position.lon}
    return data


def encode_inventory(inventory: dict) -> dict:
    return {item_id: inventory[item_id] for item_id in sorted(inventory)}


def encode_quests(instance: GameInstance, status) -> dict:
    detail = {}
    for quest_id in list(status.active) + list(status.complete):
        quest = instance.spec.quests[quest_id]
        detail[quest_id] = {
            "name": quest.name,
            "active_text": quest.active_text,
            "complete_text": quest.complete_text,
        }
    return {"active": status.active, "complete": status.complete, "detail": detail}


def _map_hint(spec: GameSpec) -> dict:
    """Viewport hint for map clients: centroid and spread of the authored
    locations. Clients get no location coordinates beyond this."""
    if not spec.locations:
        return {"map_center": None, "map_span_m": 0.0}
    lat = sum(loc.center.lat for loc in spec.locations) / len(spec.locations)
    lon = sum(loc.center.lon for loc in spec.locations) / len(spec.locations)
    center = GeoPoint(lat, lon)
    span = max(geo_distance(center, loc.center) + loc.radius_m for loc in spec.locations)
    return {"map_center": {"lat": center.lat, "lon": center.lon}, "map_span_m": 2.0 * span}


def encode_node(node: DialogNode, options) -> dict:
    return {
        "node_id": node.node_id,
        "speaker": node.speaker,
        "text": node.text,
        "options": [{"index": i, "label": opt.label} for i, opt in enumerate(options)],
    }


def encode_dialog(turn) -> dict:
    return {
        "ended": turn.ended,
        "node": None if turn.node is None else encode_node(turn.node, turn.options),
        "effects": [encode_effect(e) for e in turn.effects],
    }
