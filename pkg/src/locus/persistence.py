"""Snapshots: durable world state so a server restart resumes play.

A snapshot is canonical JSON (sorted keys, compact separators, shortest
round-trip floats), so equal states always produce byte-identical files
and golden-file comparisons are meaningful. Restoring a snapshot and then
replaying any events recorded after taken_at_seq reproduces the live
instance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .engine import GameInstance, WorldState
from .model import GameSpec

FORMAT_VERSION = 1


class PersistenceError(Exception):
    """code is one of IO_FAILURE, VERSION_MISMATCH, GAME_MISMATCH, CORRUPT."""

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)


@dataclass(frozen=True)
class SnapshotInfo:
    format_version: int
    game_id: str
    taken_at_seq: int
    path: Path


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def world_snapshot_dict(instance: GameInstance) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "game_id": instance.spec.game_id,
        "taken_at_seq": instance.last_seq,
        "world": instance.world.to_dict(),
    }


def save_snapshot(instance: GameInstance, path) -> SnapshotInfo:
    path = Path(path)
    doc = world_snapshot_dict(instance)
    try:
        path.write_text(canonical_json(doc) + "\n", encoding="utf-8")
    except OSError as exc:
        raise PersistenceError("IO_FAILURE", f"cannot write {path}: {exc}") from exc
    return SnapshotInfo(FORMAT_VERSION, doc["game_id"], doc["taken_at_seq"], path)


def load_snapshot(spec: GameSpec, path) -> GameInstance:
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise PersistenceError("IO_FAILURE", f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
        if not isinstance(doc, dict):
            raise ValueError("snapshot root must be an object")
        version = doc["format_version"]
        game_id = doc["game_id"]
        taken_at_seq = doc["taken_at_seq"]
        world_dict = doc["world"]
    except (ValueError, KeyError, TypeError) as exc:
        raise PersistenceError("CORRUPT", f"{path} is not a readable snapshot: {exc}") from exc
    if version != FORMAT_VERSION:
        raise PersistenceError("VERSION_MISMATCH", f"snapshot format {version}, supported {FORMAT_VERSION}")
    if game_id != spec.game_id:
        raise PersistenceError("GAME_MISMATCH", f"snapshot is for {game_id!r}, not {spec.game_id!r}")

    instance = GameInstance(spec)
    try:
        instance.world = WorldState.from_dict(world_dict)
        if not isinstance(taken_at_seq, int) or taken_at_seq < 0:
            raise ValueError("bad taken_at_seq")
    except (ValueError, KeyError, TypeError) as exc:
        raise PersistenceError("CORRUPT", f"{path} world state unreadable: {exc}") from exc
    # Continue the old event numbering; pre-snapshot events are not retained.
    instance._last_seq = taken_at_seq
    return instance


def export_event_log(instance: GameInstance) -> str:
    """Line-delimited event export, one canonical JSON object per line."""
    return "".join(canonical_json(ev.to_dict()) + "\n" for ev in instance.event_log)
