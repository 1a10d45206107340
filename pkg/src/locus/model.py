"""Declarative game definition model.

A GameSpec is immutable once built: every type here is a frozen dataclass
with tuple-valued collections, so instances hash/compare structurally and
can be shared between any number of concurrent readers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .geo import GeoPoint

UNBOUNDED = 0  # sentinel for ItemSpec.max_qty

TRIGGER_GPS = "gps"
TRIGGER_QR = "qr"
TRIGGER_IMMEDIATE = "immediate"
TRIGGER_KINDS = (TRIGGER_GPS, TRIGGER_QR, TRIGGER_IMMEDIATE)

EFFECT_KINDS = ("give_item", "take_item", "set_flag", "clear_flag")
REQUIREMENT_KINDS = (
    "has_item",
    "lacks_item",
    "visited",
    "talked_to",
    "flag_set",
    "quest_complete",
    "notes_at_least",
)

NOTE_KINDS = ("photo", "video", "audio", "text")

# Option target meaning "the conversation ends here".
DIALOG_END = None


@dataclass(frozen=True)
class Effect:
    """A single state mutation: give/take items or set/clear a flag.

    kind is one of EFFECT_KINDS. give_item/take_item use item_id and qty
    (qty >= 1); set_flag/clear_flag use flag.
    """

    kind: str
    item_id: str = ""
    qty: int = 0
    flag: str = ""

    def __post_init__(self):
        if self.kind not in EFFECT_KINDS:
            raise ValueError(f"unknown effect kind {self.kind!r}")
        if self.kind in ("give_item", "take_item"):
            if not self.item_id:
                raise ValueError(f"{self.kind} requires an item_id")
            if self.qty < 1:
                raise ValueError(f"{self.kind} qty must be >= 1, got {self.qty}")
        else:
            if not self.flag:
                raise ValueError(f"{self.kind} requires a flag name")


@dataclass(frozen=True)
class Requirement:
    """One requirement atom.

    kind is one of REQUIREMENT_KINDS. target names the item, location,
    npc, flag, or quest being tested; qty carries the has_item threshold
    or the notes_at_least count (both >= 1).
    """

    kind: str
    target: str = ""
    qty: int = 1

    def __post_init__(self):
        if self.kind not in REQUIREMENT_KINDS:
            raise ValueError(f"unknown requirement kind {self.kind!r}")
        if self.kind == "notes_at_least":
            if self.qty < 1:
                raise ValueError("notes_at_least count must be >= 1")
        elif not self.target:
            raise ValueError(f"{self.kind} requires a target id")
        if self.kind == "has_item" and self.qty < 1:
            raise ValueError("has_item threshold must be >= 1")


@dataclass(frozen=True)
class RequirementExpr:
    """Disjunction of conjunctions of atoms; empty means always true."""

    any_of: tuple[tuple[Requirement, ...], ...] = ()

    @property
    def always_true(self) -> bool:
        return not self.any_of


ALWAYS = RequirementExpr()


@dataclass(frozen=True)
class ItemStack:
    item_id: str
    qty: int  # starting stock, >= 0


@dataclass(frozen=True)
class NpcPayload:
    npc_id: str


@dataclass(frozen=True)
class PlaquePayload:
    plaque_id: str


@dataclass(frozen=True)
class HazardPayload:
    effects: tuple[Effect, ...]


Payload = Union[ItemStack, NpcPayload, PlaquePayload, HazardPayload]


@dataclass(frozen=True)
class LocationSpec:
    """A placed game object: a geofenced, QR-keyed, or join-time trigger."""

    location_id: str
    name: str
    center: GeoPoint
    radius_m: float
    trigger: str = TRIGGER_GPS
    qr_code: Optional[str] = None
    payload: Optional[Payload] = None
    visible_if: RequirementExpr = ALWAYS

    def __post_init__(self):
        if self.trigger not in TRIGGER_KINDS:
            raise ValueError(f"unknown trigger kind {self.trigger!r}")
        if self.radius_m <= 0:
            raise ValueError("radius_m must be > 0")
        if self.trigger == TRIGGER_QR and not self.qr_code:
            raise ValueError("qr trigger requires a code")
        if self.trigger != TRIGGER_QR and self.qr_code is not None:
            raise ValueError("qr_code only applies to qr-triggered locations")
        if isinstance(self.payload, ItemStack) and self.payload.qty < 0:
            raise ValueError("item stack qty must be >= 0")


@dataclass(frozen=True)
class ItemSpec:
    item_id: str
    name: str
    description: str = ""
    droppable: bool = False
    max_qty: int = UNBOUNDED  # UNBOUNDED or a bound >= 1

    def __post_init__(self):
        if self.max_qty < 0:
            raise ValueError("max_qty must be UNBOUNDED or >= 1")

    @property
    def unbounded(self) -> bool:
        return self.max_qty == UNBOUNDED


@dataclass(frozen=True)
class CharacterSpec:
    npc_id: str
    name: str
    opening_node: str


@dataclass(frozen=True)
class AnswerSpec:
    expected: str
    on_correct: tuple[Effect, ...] = ()

    def __post_init__(self):
        if not self.expected:
            raise ValueError("expected answer must be non-empty")


@dataclass(frozen=True)
class PlaqueSpec:
    plaque_id: str
    title: str
    body: str = ""
    answer: Optional[AnswerSpec] = None


@dataclass(frozen=True)
class DialogOption:
    """One selectable branch; next is a node id, or DIALOG_END to finish."""

    label: str
    next: Optional[str] = DIALOG_END
    visible_if: RequirementExpr = ALWAYS
    effects: tuple[Effect, ...] = ()


@dataclass(frozen=True)
class DialogNode:
    node_id: str
    speaker: str
    text: str
    options: tuple[DialogOption, ...] = ()  # empty = conversation ends here


@dataclass(frozen=True)
class QuestSpec:
    quest_id: str
    name: str
    active_if: RequirementExpr = ALWAYS
    complete_if: RequirementExpr = ALWAYS
    active_text: str = ""
    complete_text: str = ""


@dataclass(frozen=True)
class GameSpec:
    game_id: str
    name: str
    description: str = ""
    quick_travel_allowed: bool = False
    locations: tuple[LocationSpec, ...] = ()
    items: dict = field(default_factory=dict)  # item_id -> ItemSpec
    characters: dict = field(default_factory=dict)  # npc_id -> CharacterSpec
    plaques: dict = field(default_factory=dict)  # plaque_id -> PlaqueSpec
    dialogs: dict = field(default_factory=dict)  # node_id -> DialogNode
    quests: dict = field(default_factory=dict)  # quest_id -> QuestSpec

    def location(self, location_id: str) -> Optional[LocationSpec]:
        for loc in self.locations:
            if loc.location_id == location_id:
                return loc
        return None
