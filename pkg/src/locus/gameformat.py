"""Text format for game definitions: parser and serializer.

The format is line oriented. A document is a sequence of blocks, each
opened by a `[kind id]` header; inside a block every line is `key = value`.
The only nested structures are dialog options (an `option:` line followed
by indented `require =` / `effect =` lines) and requirement groups
(repeating a requirement key ORs the groups together). The full grammar
lives in docs/format.md; this parser is the reference.

parse_game never aborts on bad input: it collects every problem it finds
and raises GameParseError carrying the complete list.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field

from .geo import GeoPoint
from .model import (
    ALWAYS,
    AnswerSpec,
    CharacterSpec,
    DialogNode,
    DialogOption,
    Effect,
    GameSpec,
    HazardPayload,
    ItemSpec,
    ItemStack,
    LocationSpec,
    NpcPayload,
    PlaquePayload,
    PlaqueSpec,
    QuestSpec,
    Requirement,
    RequirementExpr,
    TRIGGER_GPS,
    TRIGGER_IMMEDIATE,
    TRIGGER_QR,
    UNBOUNDED,
)

ID_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-]*$")
HEADER_RE = re.compile(r"^\[(\w+)\s+([^\]\s]+)\]\s*$")

BLOCK_KINDS = ("game", "item", "character", "plaque", "dialog", "quest", "location")

# Keys accepted per block kind; anything else is UNKNOWN_FIELD.
_FIELDS = {
    "game": {"name", "description", "quick_travel"},
    "item": {"name", "description", "droppable", "max_qty"},
    "character": {"name", "opening_node"},
    "plaque": {"title", "body", "answer", "on_correct"},
    "dialog": {"speaker", "text"},
    "quest": {"name", "active_if", "complete_if", "active_text", "complete_text"},
    "location": {"name", "center", "radius_m", "trigger", "payload", "visible_if", "effect"},
}

_OPTION_FIELDS = {"require", "effect"}

# Dialog option target that closes the conversation.
_END_WORD = "end"


@dataclass(frozen=True)
class ParseError:
    line: int
    col: int
    code: str  # SYNTAX | DUPLICATE_ID | UNKNOWN_FIELD
    message: str

    def __str__(self):
        return f"{self.line}:{self.col}: {self.code}: {self.message}"


class GameParseError(ValueError):
    """Carries every ParseError found in a document."""

    def __init__(self, errors: list[ParseError]):
        self.errors = errors
        super().__init__("; ".join(str(e) for e in errors[:5]) + ("..." if len(errors) > 5 else ""))


@dataclass
class _Line:
    num: int
    key: str
    value: str


@dataclass
class _OptionDraft:
    line: int
    label: str
    next: str | None
    requires: list[list[Requirement]] = field(default_factory=list)
    effects: list[Effect] = field(default_factory=list)


@dataclass
class _Block:
    kind: str
    ident: str
    line: int
    entries: list[_Line] = field(default_factory=list)
    options: list[_OptionDraft] = field(default_factory=list)


# --------------------------------------------------------------------------
# Parsing
# --------------------------------------------------------------------------


def parse_game(source) -> GameSpec:
    """Parse a game document; raises GameParseError listing every problem."""
    errors: list[ParseError] = []
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GameParseError(
                [ParseError(1, 1, "SYNTAX", f"document is not valid UTF-8: {exc}")]
            ) from None

    blocks = _split_blocks(source, errors)
    spec = _build_spec(blocks, errors)
    if errors:
        errors.sort(key=lambda e: (e.line, e.col))
        raise GameParseError(errors)
    assert spec is not None
    return spec


def _split_blocks(source: str, errors: list[ParseError]) -> list[_Block]:
    blocks: list[_Block] = []
    block: _Block | None = None
    option: _OptionDraft | None = None

    # Split on real newlines only: splitlines() would also break on exotic
    # separators (\x1c-\x1e,  ...) that are legal inside bare values.
    for num, raw in enumerate(source.split("\n"), start=1):
        raw = raw.rstrip("\r")
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        indented = raw[: len(raw) - len(raw.lstrip())] != ""

        if stripped.startswith("[") and not indented:
            option = None
            m = HEADER_RE.match(stripped)
            if not m:
                errors.append(ParseError(num, 1, "SYNTAX", f"malformed section header: {stripped!r}"))
                block = None
                continue
            kind, ident = m.group(1), m.group(2)
            if kind not in BLOCK_KINDS:
                errors.append(ParseError(num, 2, "SYNTAX", f"unknown section kind {kind!r}"))
                block = None
                continue
            if not ID_RE.match(ident):
                errors.append(ParseError(num, 2, "SYNTAX", f"invalid id {ident!r}"))
                block = None
                continue
            if kind == "dialog" and ident == _END_WORD:
                errors.append(ParseError(num, 2, "SYNTAX", f"{_END_WORD!r} is reserved and cannot name a dialog node"))
                block = None
                continue
            block = _Block(kind, ident, num)
            blocks.append(block)
            continue

        if block is None:
            errors.append(ParseError(num, 1, "SYNTAX", "content before any section header"))
            continue

        if stripped.startswith("option:"):
            if block.kind != "dialog":
                errors.append(ParseError(num, 1, "SYNTAX", "option lines only belong in dialog sections"))
                continue
            option = _parse_option_line(stripped, num, errors)
            if option is not None:
                block.options.append(option)
            continue

        key, eq, value = stripped.partition("=")
        if not eq:
            errors.append(ParseError(num, 1, "SYNTAX", f"expected 'key = value', got {stripped!r}"))
            continue
        key = key.strip()
        value = value.strip()

        if indented and option is not None:
            if key not in _OPTION_FIELDS:
                errors.append(ParseError(num, 1, "UNKNOWN_FIELD", f"unknown option field {key!r}"))
                continue
            if key == "require":
                group = _parse_atom_group(value, num, errors)
                if group is not None:
                    option.requires.append(group)
            else:
                eff = _parse_effect(value, num, errors)
                if eff is not None:
                    option.effects.append(eff)
            continue

        if not indented:
            option = None
        if key not in _FIELDS[block.kind]:
            errors.append(ParseError(num, 1, "UNKNOWN_FIELD", f"unknown {block.kind} field {key!r}"))
            continue
        block.entries.append(_Line(num, key, _decode_value(value, num, errors)))

    return blocks


def _decode_value(value: str, num: int, errors: list[ParseError]) -> str:
    """Bare values run to end of line; quoted values are JSON strings."""
    if value.startswith('"'):
        try:
            decoded, end = json.JSONDecoder().raw_decode(value)
        except json.JSONDecodeError:
            errors.append(ParseError(num, 1, "SYNTAX", f"bad quoted string {value!r}"))
            return ""
        if value[end:].strip():
            errors.append(ParseError(num, 1, "SYNTAX", "trailing content after quoted string"))
        return decoded
    return value


def _parse_option_line(stripped: str, num: int, errors: list[ParseError]) -> _OptionDraft | None:
    body = stripped[len("option:"):].strip()
    if body.startswith('"'):
        try:
            label, end = json.JSONDecoder().raw_decode(body)
        except json.JSONDecodeError:
            errors.append(ParseError(num, 1, "SYNTAX", f"bad quoted option label in {stripped!r}"))
            return None
        rest = body[end:].strip()
    else:
        label, sep, rest = body.rpartition("->")
        if not sep:
            errors.append(ParseError(num, 1, "SYNTAX", "option line needs '-> <node-id|end>'"))
            return None
        label = label.strip()
        rest = "->" + rest
    if not rest.startswith("->"):
        errors.append(ParseError(num, 1, "SYNTAX", "option line needs '-> <node-id|end>'"))
        return None
    target = rest[2:].strip()
    if target == _END_WORD:
        nxt = None
    elif ID_RE.match(target):
        nxt = target
    else:
        errors.append(ParseError(num, 1, "SYNTAX", f"bad option target {target!r}"))
        return None
    if not label:
        errors.append(ParseError(num, 1, "SYNTAX", "option label may not be empty"))
        return None
    return _OptionDraft(num, label, nxt)


def _parse_atom_group(value: str, num: int, errors: list[ParseError]) -> list[Requirement] | None:
    """One all-of group: comma-separated requirement atoms."""
    group: list[Requirement] = []
    for part in value.split(","):
        tokens = part.split()
        if not tokens:
            errors.append(ParseError(num, 1, "SYNTAX", "empty requirement atom"))
            return None
        kind = tokens[0]
        try:
            if kind in ("has_item",):
                if len(tokens) != 3:
                    raise ValueError("has_item takes <item-id> <min-qty>")
                group.append(Requirement("has_item", tokens[1], _parse_int(tokens[2])))
            elif kind in ("lacks_item", "visited", "talked_to", "flag_set", "quest_complete"):
                if len(tokens) != 2:
                    raise ValueError(f"{kind} takes one id")
                group.append(Requirement(kind, tokens[1]))
            elif kind == "notes_at_least":
                if len(tokens) != 2:
                    raise ValueError("notes_at_least takes a count")
                group.append(Requirement("notes_at_least", qty=_parse_int(tokens[1])))
            else:
                raise ValueError(f"unknown requirement {kind!r}")
        except ValueError as exc:
            errors.append(ParseError(num, 1, "SYNTAX", str(exc)))
            return None
    return group


def _parse_effect(value: str, num: int, errors: list[ParseError]) -> Effect | None:
    tokens = value.split()
    try:
        if not tokens:
            raise ValueError("empty effect")
        kind = tokens[0]
        if kind in ("give", "take"):
            if len(tokens) != 3:
                raise ValueError(f"{kind} takes <item-id> <qty>")
            return Effect(kind + "_item", item_id=tokens[1], qty=_parse_int(tokens[2]))
        if kind in ("set_flag", "clear_flag"):
            if len(tokens) != 2:
                raise ValueError(f"{kind} takes one flag name")
            return Effect(kind, flag=tokens[1])
        raise ValueError(f"unknown effect {kind!r}")
    except ValueError as exc:
        errors.append(ParseError(num, 1, "SYNTAX", str(exc)))
        return None


def _parse_int(token: str) -> int:
    if not re.match(r"^-?\d+$", token):
        raise ValueError(f"expected an integer, got {token!r}")
    return int(token)


def _parse_bool(value: str, num: int, errors: list[ParseError]) -> bool:
    if value in ("true", "false"):
        return value == "true"
    errors.append(ParseError(num, 1, "SYNTAX", f"expected true or false, got {value!r}"))
    return False


# --------------------------------------------------------------------------
# Building the GameSpec from raw blocks
# --------------------------------------------------------------------------


def _build_spec(blocks: list[_Block], errors: list[ParseError]) -> GameSpec | None:
    game_blocks = [b for b in blocks if b.kind == "game"]
    if not game_blocks:
        errors.append(ParseError(1, 1, "SYNTAX", "document has no [game <id>] section"))
        return None
    for extra in game_blocks[1:]:
        errors.append(ParseError(extra.line, 1, "DUPLICATE_ID", "more than one [game] section"))

    seen: dict[str, dict[str, int]] = {k: {} for k in BLOCK_KINDS}
    for b in blocks:
        if b.ident in seen[b.kind] and b.kind != "game":
            errors.append(
                ParseError(b.line, 1, "DUPLICATE_ID", f"duplicate {b.kind} id {b.ident!r}")
            )
        seen[b.kind].setdefault(b.ident, b.line)

    head = game_blocks[0]
    fields = _Fields(head, errors)
    game_id = head.ident
    name = fields.get("name", game_id)
    description = fields.get("description", "")
    quick = fields.get_bool("quick_travel", False)
    fields.done()

    items: dict[str, ItemSpec] = {}
    characters: dict[str, CharacterSpec] = {}
    plaques: dict[str, PlaqueSpec] = {}
    dialogs: dict[str, DialogNode] = {}
    quests: dict[str, QuestSpec] = {}
    locations: list[LocationSpec] = []

    builders = {
        "item": lambda b: _set(items, b.ident, _build_item(b, errors)),
        "character": lambda b: _set(characters, b.ident, _build_character(b, errors)),
        "plaque": lambda b: _set(plaques, b.ident, _build_plaque(b, errors)),
        "dialog": lambda b: _set(dialogs, b.ident, _build_dialog(b, errors)),
        "quest": lambda b: _set(quests, b.ident, _build_quest(b, errors)),
        "location": lambda b: locations.append(_build_location(b, errors)),
    }
    for b in blocks:
        if b.kind == "game" or seen[b.kind][b.ident] != b.line:
            continue  # duplicates already reported; keep first definition
        try:
            builders[b.kind](b)
        except _Skip:
            pass

    if errors:
        return None
    return GameSpec(
        game_id=game_id,
        name=name,
        description=description,
        quick_travel_allowed=quick,
        locations=tuple(locations),
        items=items,
        characters=characters,
        plaques=plaques,
        dialogs=dialogs,
        quests=quests,
    )


class _Skip(Exception):
    """Block could not be built; its errors are already recorded."""


def _set(mapping: dict, key: str, value) -> None:
    mapping[key] = value


class _Fields:
    """Key/value access over a block with error reporting."""

    def __init__(self, block: _Block, errors: list[ParseError]):
        self.block = block
        self.errors = errors
        self.lines: dict[str, _Line] = {}
        self.repeated: dict[str, list[_Line]] = {}
        for ln in block.entries:
            self.repeated.setdefault(ln.key, []).append(ln)
            if ln.key not in self.lines:
                self.lines[ln.key] = ln

    def fail(self, message: str, line: int | None = None) -> None:
        self.errors.append(ParseError(line or self.block.line, 1, "SYNTAX", message))

    def get(self, key: str, default: str | None = None) -> str:
        ln = self.lines.get(key)
        if ln is None:
            if default is None:
                self.fail(f"[{self.block.kind} {self.block.ident}] is missing {key!r}")
                raise _Skip()
            return default
        return ln.value

    def get_bool(self, key: str, default: bool) -> bool:
        ln = self.lines.get(key)
        if ln is None:
            return default
        return _parse_bool(ln.value, ln.num, self.errors)

    def get_groups(self, key: str) -> RequirementExpr:
        groups = []
        for ln in self.repeated.get(key, []):
            group = _parse_atom_group(ln.value, ln.num, self.errors)
            if group is not None:
                groups.append(tuple(group))
        return RequirementExpr(tuple(groups))

    def get_effects(self, key: str) -> tuple[Effect, ...]:
        out = []
        for ln in self.repeated.get(key, []):
            eff = _parse_effect(ln.value, ln.num, self.errors)
            if eff is not None:
                out.append(eff)
        return tuple(out)

    def done(self) -> None:
        for key, lns in self.repeated.items():
            if key in ("visible_if", "active_if", "complete_if", "on_correct", "effect"):
                continue
            for extra in lns[1:]:
                self.fail(f"{key!r} given more than once", extra.num)


def _build_item(b: _Block, errors) -> ItemSpec:
    f = _Fields(b, errors)
    name = f.get("name", b.ident)
    description = f.get("description", "")
    droppable = f.get_bool("droppable", False)
    raw = f.get("max_qty", "unbounded")
    if raw == "unbounded":
        max_qty = UNBOUNDED
    else:
        try:
            max_qty = _parse_int(raw)
            if max_qty < 1:
                raise ValueError("max_qty must be >= 1 or 'unbounded'")
        except ValueError as exc:
            f.fail(str(exc), f.lines["max_qty"].num)
            raise _Skip() from None
    f.done()
    return ItemSpec(b.ident, name, description, droppable, max_qty)


def _build_character(b: _Block, errors) -> CharacterSpec:
    f = _Fields(b, errors)
    name = f.get("name", b.ident)
    opening = f.get("opening_node")
    f.done()
    return CharacterSpec(b.ident, name, opening)


def _build_plaque(b: _Block, errors) -> PlaqueSpec:
    f = _Fields(b, errors)
    title = f.get("title", b.ident)
    body = f.get("body", "")
    answer = None
    if "answer" in f.lines:
        expected = f.lines["answer"].value
        if not expected.strip():
            f.fail("expected answer may not be empty", f.lines["answer"].num)
            raise _Skip()
        answer = AnswerSpec(expected, f.get_effects("on_correct"))
    elif "on_correct" in f.repeated:
        f.fail("on_correct without an answer", f.repeated["on_correct"][0].num)
    f.done()
    return PlaqueSpec(b.ident, title, body, answer)


def _build_dialog(b: _Block, errors) -> DialogNode:
    f = _Fields(b, errors)
    speaker = f.get("speaker")
    text = f.get("text")
    f.done()
    options = tuple(
        DialogOption(
            label=o.label,
            next=o.next,
            visible_if=RequirementExpr(tuple(tuple(g) for g in o.requires)),
            effects=tuple(o.effects),
        )
        for o in b.options
    )
    return DialogNode(b.ident, speaker, text, options)


def _build_quest(b: _Block, errors) -> QuestSpec:
    f = _Fields(b, errors)
    name = f.get("name", b.ident)
    active_if = f.get_groups("active_if")
    complete_if = f.get_groups("complete_if")
    active_text = f.get("active_text", "")
    complete_text = f.get("complete_text", "")
    f.done()
    return QuestSpec(b.ident, name, active_if, complete_if, active_text, complete_text)


def _build_location(b: _Block, errors) -> LocationSpec:
    f = _Fields(b, errors)
    name = f.get("name", b.ident)

    center_raw = f.get("center")
    center_line = f.lines["center"].num
    parts = [p.strip() for p in center_raw.split(",")]
    center = None
    if len(parts) != 2:
        f.fail("center takes 'lat, lon'", center_line)
    else:
        try:
            center = GeoPoint(float(parts[0]), float(parts[1]))
        except ValueError as exc:
            f.fail(f"bad center: {exc}", center_line)

    radius_raw = f.get("radius_m")
    radius_line = f.lines["radius_m"].num
    radius = 0.0
    try:
        radius = float(radius_raw)
        if not (math.isfinite(radius) and radius > 0):
            raise ValueError("radius_m must be a finite positive number")
    except ValueError as exc:
        radius = 0.0
        f.fail(f"bad radius_m: {exc}", radius_line)

    trigger_raw = f.get("trigger", TRIGGER_GPS)
    ttok = trigger_raw.split(None, 1)
    qr_code = None
    trigger = ttok[0] if ttok else ""
    if trigger == TRIGGER_QR:
        if len(ttok) != 2 or not ttok[1].strip():
            f.fail("qr trigger takes a code", f.lines["trigger"].num)
            trigger = TRIGGER_GPS
        else:
            qr_code = ttok[1].strip()
    elif trigger in (TRIGGER_GPS, TRIGGER_IMMEDIATE):
        if len(ttok) != 1:
            f.fail(f"trigger {trigger} takes no argument", f.lines["trigger"].num)
    else:
        f.fail(f"unknown trigger {trigger_raw!r}", f.lines["trigger"].num)
        trigger = TRIGGER_GPS

    hazard_effects = f.get_effects("effect")
    payload = None
    if "payload" in f.lines:
        pl = f.lines["payload"]
        tokens = pl.value.split()
        kind = tokens[0] if tokens else ""
        if kind == "items" and len(tokens) == 3:
            try:
                qty = _parse_int(tokens[2])
                if qty < 0:
                    raise ValueError("stack qty must be >= 0")
                payload = ItemStack(tokens[1], qty)
            except ValueError as exc:
                f.fail(str(exc), pl.num)
        elif kind == "character" and len(tokens) == 2:
            payload = NpcPayload(tokens[1])
        elif kind == "plaque" and len(tokens) == 2:
            payload = PlaquePayload(tokens[1])
        elif kind == "hazard" and len(tokens) == 1:
            payload = HazardPayload(hazard_effects)
        else:
            f.fail(f"bad payload {pl.value!r}", pl.num)
        if kind != "hazard" and hazard_effects:
            f.fail("effect lines in a location require 'payload = hazard'", pl.num)
    elif hazard_effects:
        f.fail("effect lines in a location require 'payload = hazard'", b.line)

    visible_if = f.get_groups("visible_if")
    f.done()
    if center is None or radius <= 0:
        raise _Skip()
    return LocationSpec(
        location_id=b.ident,
        name=name,
        center=center,
        radius_m=radius,
        trigger=trigger,
        qr_code=qr_code,
        payload=payload,
        visible_if=visible_if,
    )


# --------------------------------------------------------------------------
# Serialization
# --------------------------------------------------------------------------


def serialize_game(spec: GameSpec) -> str:
    """Render a spec back to text; parse_game(serialize_game(s)) == s."""
    out: list[str] = []

    def kv(key: str, value: str) -> None:
        out.append(f"{key} = {_encode_value(value)}")

    out.append(f"[game {spec.game_id}]")
    kv("name", spec.name)
    if spec.description:
        kv("description", spec.description)
    if spec.quick_travel_allowed:
        out.append("quick_travel = true")

    for item in spec.items.values():
        out.append("")
        out.append(f"[item {item.item_id}]")
        kv("name", item.name)
        if item.description:
            kv("description", item.description)
        if item.droppable:
            out.append("droppable = true")
        if not item.unbounded:
            out.append(f"max_qty = {item.max_qty}")

    for ch in spec.characters.values():
        out.append("")
        out.append(f"[character {ch.npc_id}]")
        kv("name", ch.name)
        kv("opening_node", ch.opening_node)

    for pl in spec.plaques.values():
        out.append("")
        out.append(f"[plaque {pl.plaque_id}]")
        kv("title", pl.title)
        if pl.body:
            kv("body", pl.body)
        if pl.answer is not None:
            kv("answer", pl.answer.expected)
            for eff in pl.answer.on_correct:
                out.append(f"on_correct = {_encode_effect(eff)}")

    for node in spec.dialogs.values():
        out.append("")
        out.append(f"[dialog {node.node_id}]")
        kv("speaker", node.speaker)
        kv("text", node.text)
        for opt in node.options:
            target = opt.next if opt.next is not None else _END_WORD
            out.append(f"option: {_encode_label(opt.label)} -> {target}")
            for group in opt.visible_if.any_of:
                out.append(f"  require = {_encode_group(group)}")
            for eff in opt.effects:
                out.append(f"  effect = {_encode_effect(eff)}")

    for q in spec.quests.values():
        out.append("")
        out.append(f"[quest {q.quest_id}]")
        kv("name", q.name)
        for group in q.active_if.any_of:
            out.append(f"active_if = {_encode_group(group)}")
        for group in q.complete_if.any_of:
            out.append(f"complete_if = {_encode_group(group)}")
        if q.active_text:
            kv("active_text", q.active_text)
        if q.complete_text:
            kv("complete_text", q.complete_text)

    for loc in spec.locations:
        out.append("")
        out.append(f"[location {loc.location_id}]")
        kv("name", loc.name)
        out.append(f"center = {format_coord(loc.center.lat)}, {format_coord(loc.center.lon)}")
        out.append(f"radius_m = {format_number(loc.radius_m)}")
        if loc.trigger == TRIGGER_QR:
            out.append(f"trigger = qr {loc.qr_code}")
        elif loc.trigger != TRIGGER_GPS:
            out.append(f"trigger = {loc.trigger}")
        p = loc.payload
        if isinstance(p, ItemStack):
            out.append(f"payload = items {p.item_id} {p.qty}")
        elif isinstance(p, NpcPayload):
            out.append(f"payload = character {p.npc_id}")
        elif isinstance(p, PlaquePayload):
            out.append(f"payload = plaque {p.plaque_id}")
        elif isinstance(p, HazardPayload):
            out.append("payload = hazard")
            for eff in p.effects:
                out.append(f"effect = {_encode_effect(eff)}")
        for group in loc.visible_if.any_of:
            out.append(f"visible_if = {_encode_group(group)}")

    return "\n".join(out) + "\n"


def _encode_value(value: str) -> str:
    needs_quoting = (
        value == ""
        or value != value.strip()
        or value.startswith('"')
        or any(c in value for c in "\n\r\t")
    )
    return json.dumps(value, ensure_ascii=False) if needs_quoting else value


def _encode_label(label: str) -> str:
    if label.startswith('"') or "->" in label or label != label.strip() or any(c in label for c in "\n\r\t"):
        return json.dumps(label, ensure_ascii=False)
    return label


def _encode_group(group) -> str:
    return ", ".join(_encode_atom(a) for a in group)


def _encode_atom(a: Requirement) -> str:
    if a.kind == "has_item":
        return f"has_item {a.target} {a.qty}"
    if a.kind == "notes_at_least":
        return f"notes_at_least {a.qty}"
    return f"{a.kind} {a.target}"


def _encode_effect(e: Effect) -> str:
    if e.kind == "give_item":
        return f"give {e.item_id} {e.qty}"
    if e.kind == "take_item":
        return f"take {e.item_id} {e.qty}"
    return f"{e.kind} {e.flag}"


def format_coord(x: float) -> str:
    """Shortest fixed-point form with >= 6 fractional digits that parses
    back to exactly x. Falls back to repr for pathological values."""
    for prec in range(6, 18):
        s = f"{x:.{prec}f}"
        if float(s) == x:
            return s
    return repr(x)


def format_number(x: float) -> str:
    """Shortest decimal form that parses back to exactly x."""
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    for prec in range(1, 18):
        s = f"{x:.{prec}f}"
        if float(s) == x:
            return s
    return repr(x)
