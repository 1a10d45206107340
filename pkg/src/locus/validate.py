"""Static checks over a parsed GameSpec.

Errors are reference faults that would crash the runtime (dangling ids,
QR code collisions); warnings flag content that parses but cannot work:
dialog nodes no conversation can reach, and quests whose completion needs
items the game never hands out.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    GameSpec,
    HazardPayload,
    ItemStack,
    NpcPayload,
    PlaquePayload,
    RequirementExpr,
)

ERROR = "ERROR"
WARNING = "WARNING"


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    code: str  # DANGLING_REF | QR_COLLISION | UNREACHABLE | UNOBTAINABLE
    path: str
    message: str

    def __str__(self):
        return f"{self.severity} {self.code} at {self.path}: {self.message}"


def validate_game(spec: GameSpec) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    _check_refs(spec, out)
    _check_qr_codes(spec, out)
    _check_dialog_reachability(spec, out)
    _check_quest_items(spec, out)
    return out


def _err(out, code, path, message):
    out.append(Diagnostic(ERROR, code, path, message))


def _warn(out, code, path, message):
    out.append(Diagnostic(WARNING, code, path, message))


def _check_refs(spec: GameSpec, out: list[Diagnostic]) -> None:
    def effect_refs(effects, path):
        for i, eff in enumerate(effects):
            if eff.kind in ("give_item", "take_item") and eff.item_id not in spec.items:
                _err(out, "DANGLING_REF", f"{path}[{i}]", f"unknown item {eff.item_id!r}")

    def expr_refs(expr: RequirementExpr, path):
        for gi, group in enumerate(expr.any_of):
            for ai, atom in enumerate(group):
                where = f"{path}[{gi}][{ai}]"
                if atom.kind in ("has_item", "lacks_item") and atom.target not in spec.items:
                    _err(out, "DANGLING_REF", where, f"unknown item {atom.target!r}")
                elif atom.kind == "visited" and spec.location(atom.target) is None:
                    _err(out, "DANGLING_REF", where, f"unknown location {atom.target!r}")
                elif atom.kind == "talked_to" and atom.target not in spec.characters:
                    _err(out, "DANGLING_REF", where, f"unknown character {atom.target!r}")
                elif atom.kind == "quest_complete" and atom.target not in spec.quests:
                    _err(out, "DANGLING_REF", where, f"unknown quest {atom.target!r}")

    for ch in spec.characters.values():
        if ch.opening_node not in spec.dialogs:
            _err(
                out,
                "DANGLING_REF",
                f"characters.{ch.npc_id}.opening_node",
                f"unknown dialog node {ch.opening_node!r}",
            )

    for node in spec.dialogs.values():
        path = f"dialogs.{node.node_id}"
        if node.speaker not in spec.characters:
            _err(out, "DANGLING_REF", f"{path}.speaker", f"unknown character {node.speaker!r}")
        for oi, opt in enumerate(node.options):
            opath = f"{path}.options[{oi}]"
            if opt.next is not None and opt.next not in spec.dialogs:
                _err(out, "DANGLING_REF", f"{opath}.next", f"unknown dialog node {opt.next!r}")
            expr_refs(opt.visible_if, f"{opath}.visible_if")
            effect_refs(opt.effects, f"{opath}.effects")

    for pl in spec.plaques.values():
        if pl.answer is not None:
            effect_refs(pl.answer.on_correct, f"plaques.{pl.plaque_id}.on_correct")

    for q in spec.quests.values():
        expr_refs(q.active_if, f"quests.{q.quest_id}.active_if")
        expr_refs(q.complete_if, f"quests.{q.quest_id}.complete_if")

    for loc in spec.locations:
        path = f"locations.{loc.location_id}"
        p = loc.payload
        if isinstance(p, ItemStack) and p.item_id not in spec.items:
            _err(out, "DANGLING_REF", f"{path}.payload", f"unknown item {p.item_id!r}")
        elif isinstance(p, NpcPayload) and p.npc_id not in spec.characters:
            _err(out, "DANGLING_REF", f"{path}.payload", f"unknown character {p.npc_id!r}")
        elif isinstance(p, PlaquePayload) and p.plaque_id not in spec.plaques:
            _err(out, "DANGLING_REF", f"{path}.payload", f"unknown plaque {p.plaque_id!r}")
        elif isinstance(p, HazardPayload):
            effect_refs(p.effects, f"{path}.payload.effects")
        expr_refs(loc.visible_if, f"{path}.visible_if")


def _check_qr_codes(spec: GameSpec, out: list[Diagnostic]) -> None:
    seen: dict[str, str] = {}
    for loc in spec.locations:
        if loc.qr_code is None:
            continue
        if loc.qr_code in seen:
            _err(
                out,
                "QR_COLLISION",
                f"locations.{loc.location_id}.trigger",
                f"code {loc.qr_code!r} already used by {seen[loc.qr_code]!r}",
            )
        else:
            seen[loc.qr_code] = loc.location_id


def obtainable_items(spec: GameSpec) -> set[str]:
    """Items that can enter play: stacked at a location or granted by any
    give effect (dialog options, plaque answers, hazards)."""
    items: set[str] = set()
    for loc in spec.locations:
        if isinstance(loc.payload, ItemStack):
            items.add(loc.payload.item_id)
        elif isinstance(loc.payload, HazardPayload):
            items.update(e.item_id for e in loc.payload.effects if e.kind == "give_item")
    for node in spec.dialogs.values():
        for opt in node.options:
            items.update(e.item_id for e in opt.effects if e.kind == "give_item")
    for pl in spec.plaques.values():
        if pl.answer is not None:
            items.update(e.item_id for e in pl.answer.on_correct if e.kind == "give_item")
    return items


def _statically_satisfiable(expr: RequirementExpr, obtainable: set[str]) -> bool:
    """False only when every group demands an item the game never provides.

    A conservative one-level analysis: has_item atoms on unobtainable
    items can never hold; everything else is assumed possible.
    """
    if expr.always_true:
        return True
    for group in expr.any_of:
        if all(a.kind != "has_item" or a.target in obtainable for a in group):
            return True
    return False


def _check_dialog_reachability(spec: GameSpec, out: list[Diagnostic]) -> None:
    obtainable = obtainable_items(spec)
    reached: set[str] = set()
    frontier = [ch.opening_node for ch in spec.characters.values() if ch.opening_node in spec.dialogs]
    while frontier:
        node_id = frontier.pop()
        if node_id in reached:
            continue
        reached.add(node_id)
        for opt in spec.dialogs[node_id].options:
            if not _statically_satisfiable(opt.visible_if, obtainable):
                continue  # option can never be shown, so it links nothing
            if opt.next is not None and opt.next in spec.dialogs:
                frontier.append(opt.next)
    for node_id in spec.dialogs:
        if node_id not in reached:
            _warn(
                out,
                "UNREACHABLE",
                f"dialogs.{node_id}",
                "no conversation path from any character's opening node reaches this node",
            )


def _check_quest_items(spec: GameSpec, out: list[Diagnostic]) -> None:
    obtainable = obtainable_items(spec)
    for q in spec.quests.values():
        needs_items = any(a.kind == "has_item" for g in q.complete_if.any_of for a in g)
        if needs_items and not _statically_satisfiable(q.complete_if, obtainable):
            _warn(
                out,
                "UNOBTAINABLE",
                f"quests.{q.quest_id}.complete_if",
                "completion requires items no location or effect provides",
            )
