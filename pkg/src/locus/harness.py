"""Scripted bot players: deterministic playthroughs with assertions.

A script is a block in the same text dialect as game files: a player id
and an ordered list of steps (actions plus `expect` assertions over
observable state). Scripts run against an in-process instance or over the
wire against a live server; both paths normalize results to the same JSON
shapes, so a passing golden transcript certifies the whole protocol stack.
"""

from __future__ import annotations

import json
import random
import re
import urllib.error
import urllib.request
from dataclasses import dataclass, field

from .engine import EngineError, GameInstance, START
from .gameformat import GameParseError, ParseError
from .geo import GeoPoint
from .model import NOTE_KINDS
from .persistence import canonical_json
from . import protocol as proto

IN_PROCESS = "in_process"
WIRE = "wire"

# Chance that the round-robin scheduler skips a bot's turn; consumed from
# the seeded generator so interleavings are a pure function of the seed.
SKIP_PROBABILITY = 0.25

ACTION_KINDS = ("move", "scan", "quick", "pickup", "drop", "dialog", "answer", "note")
EXPECT_KINDS = (
    "inventory",
    "quest_active",
    "quest_complete",
    "visited",
    "nearby_contains",
    "nearby_count",
)


class TransportFailure(Exception):
    code = "TRANSPORT_FAILURE"


def _int(token: str) -> int:
    if not re.match(r"^-?\d+$", token):
        raise ValueError(f"expected an integer, got {token!r}")
    return int(token)


@dataclass(frozen=True)
class Step:
    kind: str
    args: tuple
    text: str  # the script line, as shown in transcripts


@dataclass(frozen=True)
class Script:
    player_id: str
    steps: tuple


@dataclass
class Transcript:
    player_id: str
    entries: list = field(default_factory=list)  # (step_text, result dict)
    failures: list = field(default_factory=list)  # (entry index, expected, actual)
    errors: list = field(default_factory=list)  # entry indices that errored

    @property
    def passed(self) -> bool:
        return not self.failures and not self.errors


# --------------------------------------------------------------------------
# Script parsing
# --------------------------------------------------------------------------


def parse_scripts(source: str) -> list[Script]:
    """Parse every [script <player>] block; raises GameParseError."""
    errors: list[ParseError] = []
    scripts: list[Script] = []
    player: str | None = None
    steps: list[Step] = []

    def flush():
        nonlocal steps
        if player is not None:
            scripts.append(Script(player, tuple(steps)))
        steps = []

    for num, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if not (line.startswith("[script ") and line.endswith("]")):
                errors.append(ParseError(num, 1, "SYNTAX", f"expected [script <player-id>], got {line!r}"))
                flush()
                player = None
                continue
            flush()
            player = line[len("[script "):-1].strip()
            if not player:
                errors.append(ParseError(num, 1, "SYNTAX", "script player id may not be empty"))
                player = None
            continue
        if player is None:
            errors.append(ParseError(num, 1, "SYNTAX", "step before any [script] header"))
            continue
        step = _parse_step(line, num, errors)
        if step is not None:
            steps.append(step)
    flush()

    if errors:
        raise GameParseError(errors)
    if not scripts:
        raise GameParseError([ParseError(1, 1, "SYNTAX", "no [script] blocks found")])
    return scripts


def _parse_step(line: str, num: int, errors: list[ParseError]) -> Step | None:
    tokens = line.split()
    kind = tokens[0]

    def fail(msg: str):
        errors.append(ParseError(num, 1, "SYNTAX", msg))
        return None

    try:
        if kind == "move":
            if len(tokens) != 3:
                return fail("move takes <lat> <lon>")
            return Step("move", (float(tokens[1]), float(tokens[2])), line)
        if kind == "scan":
            if len(tokens) < 2:
                return fail("scan takes a code")
            return Step("scan", (line.split(None, 1)[1],), line)
        if kind == "quick":
            if len(tokens) != 2:
                return fail("quick takes <location-id>")
            return Step("quick", (tokens[1],), line)
        if kind == "pickup":
            if len(tokens) != 3:
                return fail("pickup takes <location-id> <qty>")
            return Step("pickup", (tokens[1], _int(tokens[2])), line)
        if kind == "drop":
            if len(tokens) != 3:
                return fail("drop takes <item-id> <qty>")
            return Step("drop", (tokens[1], _int(tokens[2])), line)
        if kind == "dialog":
            if len(tokens) != 3:
                return fail("dialog takes <npc-id> start|<option-index>")
            choice = START if tokens[2] == START else _int(tokens[2])
            return Step("dialog", (tokens[1], choice), line)
        if kind == "answer":
            if len(tokens) < 3:
                return fail("answer takes <location-id> <text>")
            return Step("answer", (tokens[1], line.split(None, 2)[2]), line)
        if kind == "note":
            if len(tokens) != 3:
                return fail("note takes <kind> <uri>")
            if tokens[1] not in NOTE_KINDS:
                return fail(f"note kind must be one of {', '.join(NOTE_KINDS)}")
            return Step("note", (tokens[1], tokens[2]), line)
        if kind == "expect":
            return _parse_expect(tokens, line, fail)
        return fail(f"unknown step {kind!r}")
    except ValueError as exc:
        return fail(str(exc))


def _parse_expect(tokens: list[str], line: str, fail) -> Step | None:
    if len(tokens) < 2 or tokens[1] not in EXPECT_KINDS:
        return fail(f"expect takes one of: {', '.join(EXPECT_KINDS)}")
    what = tokens[1]
    if what == "inventory":
        if len(tokens) != 4:
            return fail("expect inventory takes <item-id> <qty>")
        return Step("expect", (what, tokens[2], _int(tokens[3])), line)
    if what == "nearby_count":
        if len(tokens) != 3:
            return fail("expect nearby_count takes <n>")
        return Step("expect", (what, _int(tokens[2])), line)
    if len(tokens) != 3:
        return fail(f"expect {what} takes one id")
    return Step("expect", (what, tokens[2]), line)


# --------------------------------------------------------------------------
# Transports
# --------------------------------------------------------------------------


class InProcessTransport:
    """Direct engine calls, rendered through the protocol encoders so the
    transcript shapes match what the wire returns."""

    def __init__(self, instance: GameInstance):
        self.instance = instance

    def join(self, player_id: str) -> dict:
        self.instance.join_game(player_id)
        return {"joined": player_id}

    def act(self, player_id: str, step: Step) -> dict:
        inst, a = self.instance, step.args
        if step.kind == "move":
            return proto.encode_report(inst, inst.update_position(player_id, GeoPoint(a[0], a[1])))
        if step.kind == "scan":
            return proto.encode_report(inst, inst.scan_code(player_id, a[0]), scanned_code=a[0])
        if step.kind == "quick":
            return proto.encode_quick_travel(inst, player_id, inst.quick_travel(player_id, a[0]))
        if step.kind == "pickup":
            return {"inventory": proto.encode_inventory(inst.pickup_item(player_id, a[0], a[1]))}
        if step.kind == "drop":
            return {"location_id": inst.drop_item(player_id, a[0], a[1])}
        if step.kind == "dialog":
            return proto.encode_dialog(inst.advance_dialog(player_id, a[0], a[1]))
        if step.kind == "answer":
            result = inst.submit_answer(player_id, a[0], a[1])
            return {"correct": result.correct, "effects": [proto.encode_effect(e) for e in result.effects]}
        if step.kind == "note":
            return inst.capture_note(player_id, a[0], a[1]).to_dict()
        raise ValueError(f"not an action step: {step.kind}")

    def inventory(self, player_id: str) -> dict:
        return proto.encode_inventory(self.instance.world.players[player_id].inventory)

    def quests(self, player_id: str) -> dict:
        return proto.encode_quests(self.instance, self.instance.quest_status(player_id))

    def nearby(self, player_id: str) -> list:
        return proto.encode_nearby(self.instance, self.instance.nearby(player_id))


class WireTransport:
    """The same operations via HTTP against a running server."""

    def __init__(self, address: str, game_id: str):
        self.base = address.rstrip("/")
        self.game_id = game_id
        self.token: str | None = None

    def _request(self, method: str, path: str, body: dict | None = None) -> dict:
        url = f"{self.base}/v1/games/{self.game_id}{path}"
        data = None if body is None else json.dumps(body).encode("utf-8")
        req = urllib.request.Request(url, data=data, method=method)
        req.add_header("Content-Type", "application/json")
        if self.token:
            req.add_header("Authorization", f"Bearer {self.token}")
        try:
            with urllib.request.urlopen(req, timeout=30) as resp:
                doc = json.loads(resp.read().decode("utf-8"))
        except urllib.error.HTTPError as exc:
            doc = json.loads(exc.read().decode("utf-8"))
        except (urllib.error.URLError, OSError, json.JSONDecodeError) as exc:
            raise TransportFailure(f"{method} {url}: {exc}") from exc
        if not doc.get("ok"):
            err = doc.get("error") or {}
            raise EngineError(err.get("code", "UNKNOWN"), err.get("message", ""))
        return doc["data"]

    def join(self, player_id: str) -> dict:
        data = self._request("POST", "/players", {"player_id": player_id})
        self.token = data["token"]
        return {"joined": player_id}

    def act(self, player_id: str, step: Step) -> dict:
        a = step.args
        p = f"/players/{player_id}"
        if step.kind == "move":
            return self._request("POST", f"{p}/position", {"lat": a[0], "lon": a[1]})
        if step.kind == "scan":
            return self._request("POST", f"{p}/qr", {"code": a[0]})
        if step.kind == "quick":
            return self._request("POST", f"{p}/quick_travel", {"location_id": a[0]})
        if step.kind == "pickup":
            return {"inventory": self._request("POST", f"{p}/pickup", {"location_id": a[0], "qty": a[1]})}
        if step.kind == "drop":
            return self._request("POST", f"{p}/drop", {"item_id": a[0], "qty": a[1]})
        if step.kind == "dialog":
            return self._request("POST", f"{p}/dialog", {"npc_id": a[0], "choice": a[1]})
        if step.kind == "answer":
            return self._request("POST", f"{p}/answer", {"location_id": a[0], "text": a[1]})
        if step.kind == "note":
            return self._request("POST", f"{p}/note", {"kind": a[0], "payload_uri": a[1]})
        raise ValueError(f"not an action step: {step.kind}")

    def inventory(self, player_id: str) -> dict:
        return self._request("GET", f"/players/{player_id}/inventory")

    def quests(self, player_id: str) -> dict:
        return self._request("GET", f"/players/{player_id}/quests")

    def nearby(self, player_id: str) -> list:
        return self._request("GET", f"/players/{player_id}/nearby")


# --------------------------------------------------------------------------
# Execution
# --------------------------------------------------------------------------


class _Runner:
    def __init__(self, script: Script, transport):
        self.script = script
        self.transport = transport
        self.transcript = Transcript(script.player_id)
        self.visited: set[str] = set()
        self._cursor = -1  # -1 = join pending

    @property
    def done(self) -> bool:
        return self._cursor >= len(self.script.steps)

    def step_once(self) -> None:
        pid = self.script.player_id
        index = len(self.transcript.entries)
        if self._cursor == -1:
            self._record(f"join {pid}", lambda: self.transport.join(pid), index)
            self._cursor = 0
            return
        step = self.script.steps[self._cursor]
        self._cursor += 1
        if step.kind == "expect":
            self._check(step, index)
        else:
            result = self._record(step.text, lambda: self.transport.act(pid, step), index)
            if result is not None:
                for loc_id in result.get("newly_visited", []):
                    self.visited.add(loc_id)

    def _record(self, text: str, call, index: int) -> dict | None:
        try:
            result = call()
        except EngineError as exc:
            self.transcript.entries.append((text, {"error": {"code": exc.code, "message": exc.message}}))
            self.transcript.errors.append(index)
            return None
        self.transcript.entries.append((text, result))
        return result

    def _check(self, step: Step, index: int) -> None:
        pid = self.script.player_id
        what = step.args[0]
        if what == "inventory":
            _, item_id, qty = step.args
            actual = self.transport.inventory(pid).get(item_id, 0)
            expected = qty
        elif what == "quest_active":
            actual = step.args[1] in self.transport.quests(pid)["active"]
            expected = True
        elif what == "quest_complete":
            actual = step.args[1] in self.transport.quests(pid)["complete"]
            expected = True
        elif what == "visited":
            actual = step.args[1] in self.visited
            expected = True
        elif what == "nearby_contains":
            actual = step.args[1] in [e["location_id"] for e in self.transport.nearby(pid)]
            expected = True
        else:  # nearby_count
            actual = len(self.transport.nearby(pid))
            expected = step.args[1]
        if actual == expected:
            self.transcript.entries.append((step.text, {"pass": True}))
        else:
            self.transcript.entries.append((step.text, {"pass": False, "expected": expected, "actual": actual}))
            self.transcript.failures.append((index, str(expected), str(actual)))

    def run_to_end(self) -> Transcript:
        while not self.done:
            self.step_once()
        return self.transcript


def _make_transport(instance: GameInstance | None, transport: str, address: str | None):
    if transport == IN_PROCESS:
        if instance is None:
            raise ValueError("in-process transport needs an instance")
        return InProcessTransport(instance)
    if transport == WIRE:
        if not address or instance is None:
            raise ValueError("wire transport needs an address and an instance (for the game id)")
        return WireTransport(address, instance.spec.game_id)
    raise ValueError(f"unknown transport {transport!r}")


def run_script(instance: GameInstance, script: Script, transport: str = IN_PROCESS,
               address: str | None = None) -> Transcript:
    """Join the script's player and execute its steps in order."""
    return _Runner(script, _make_transport(instance, transport, address)).run_to_end()


def run_concurrent(instance: GameInstance, scripts, interleaving_seed: int) -> list[Transcript]:
    """Interleave several scripts over one shared world.

    Scheduling is seeded round-robin with random skips: each round visits
    the unfinished bots in script order and each may be skipped with
    probability SKIP_PROBABILITY; a round that skipped everyone forces the
    first unfinished bot, so the run always terminates. The seed fully
    determines the interleaving and therefore the transcripts.
    """
    ids = [s.player_id for s in scripts]
    if len(set(ids)) != len(ids):
        raise ValueError("concurrent scripts need distinct player ids")
    rng = random.Random(interleaving_seed)
    runners = [_Runner(s, InProcessTransport(instance)) for s in scripts]
    while any(not r.done for r in runners):
        progressed = False
        for runner in runners:
            if runner.done:
                continue
            if rng.random() < SKIP_PROBABILITY:
                continue
            runner.step_once()
            progressed = True
        if not progressed:
            next(r for r in runners if not r.done).step_once()
    return [r.transcript for r in runners]


# --------------------------------------------------------------------------
# Transcript rendering
# --------------------------------------------------------------------------


def render_transcript(transcript: Transcript) -> str:
    """Deterministic text form, suitable for committed golden files."""
    lines = [f"script {transcript.player_id}: {'PASS' if transcript.passed else 'FAIL'}"]
    for i, (text, result) in enumerate(transcript.entries):
        lines.append(f"{i:03d} {text}")
        lines.append(f"    -> {canonical_json(result)}")
    if transcript.failures:
        lines.append(f"failures: {len(transcript.failures)}")
        for index, expected, actual in transcript.failures:
            lines.append(f"  at {index:03d}: expected {expected}, got {actual}")
    return "\n".join(lines) + "\n"
