"""locus: a locative interactive-narrative game engine.

Declarative game files played by positioned players through geofence and
QR triggers, with branching NPC conversations, requirement-gated quests,
quantity inventories, a JSON wire protocol, and a deterministic scripted-
bot harness.
"""

from .engine import EngineError, GameInstance, eval_requirement, replay_events
from .gameformat import GameParseError, parse_game, serialize_game
from .geo import GeoPoint, geo_distance, triangulate, within_range
from .model import GameSpec
from .validate import validate_game

__version__ = "0.1.0"

__all__ = [
    "EngineError",
    "GameInstance",
    "GameParseError",
    "GameSpec",
    "GeoPoint",
    "eval_requirement",
    "geo_distance",
    "parse_game",
    "replay_events",
    "serialize_game",
    "triangulate",
    "validate_game",
    "within_range",
    "__version__",
]
