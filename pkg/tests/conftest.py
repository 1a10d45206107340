"""Shared fixtures: bundled game specs and a random-playthrough driver."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from locus.engine import EngineError, GameInstance
from locus.gameformat import parse_game
from locus.geo import GeoPoint

REPO_ROOT = Path(__file__).resolve().parents[1]
GAMES_DIR = REPO_ROOT / "games"
SCRIPTS_DIR = GAMES_DIR / "scripts"
GOLDEN_DIR = GAMES_DIR / "golden"

GAME_NAMES = ("steel", "ghost_hunters", "landmines")


@pytest.fixture(scope="session")
def steel_spec():
    return parse_game((GAMES_DIR / "steel.game").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def ghost_spec():
    return parse_game((GAMES_DIR / "ghost_hunters.game").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def landmines_spec():
    return parse_game((GAMES_DIR / "landmines.game").read_text(encoding="utf-8"))


# A compact arena exercising every mechanic at once: bounded and unbounded
# items, stacks, a QR cache, hazards that give and take, a trading dialog
# with a loop, an answer plaque, and quick travel.
FUZZ_GAME = """
[game fuzz]
name = Fuzz Arena
quick_travel = true

[item gem]
name = Gem
droppable = true
max_qty = 4

[item token]
name = Token
droppable = true

[item relic]
name = Relic
max_qty = 1

[character trader]
name = Trader
opening_node = trader_hello

[plaque shrine_riddle]
title = Shrine
body = Speak the word that answers itself.
answer = echo
on_correct = give gem 1

[dialog trader_hello]
speaker = trader
text = Tokens for gems, gems for relics.
option: Trade 2 tokens for a gem -> trader_hello
  require = has_item token 2
  effect = take token 2
  effect = give gem 1
option: Trade a gem for the relic -> end
  require = has_item gem 1, lacks_item relic
  effect = take gem 1
  effect = give relic 1
option: Bye -> end

[quest treasure]
name = Find the Relic
complete_if = has_item relic 1

[location bonus]
name = Welcome Bonus
center = 43.000000, -89.000000
radius_m = 10
trigger = immediate
payload = hazard
effect = give token 2

[location gem_mine]
name = Gem Mine
center = 43.000000, -89.000000
radius_m = 30
payload = items gem 6

[location token_heap]
name = Token Heap
center = 43.000300, -89.000000
radius_m = 30
payload = items token 10

[location trap]
name = Trap
center = 43.000600, -89.000000
radius_m = 25
payload = hazard
effect = take gem 1

[location shrine]
name = Shrine
center = 43.000150, -89.000200
radius_m = 40
payload = plaque shrine_riddle

[location trader_stand]
name = Trader Stand
center = 43.000450, -89.000200
radius_m = 40
payload = character trader

[location qr_cache]
name = Hidden Cache
center = 43.000200, -89.000100
radius_m = 10
trigger = qr FUZZ-CACHE
payload = items gem 2
"""


@pytest.fixture(scope="session")
def fuzz_spec():
    return parse_game(FUZZ_GAME)


class RandomDriver:
    """Performs random legal-and-illegal actions against an instance.

    Every action returns the effects the engine reported firing, so a
    conservation check can compare observed inventory deltas against
    exactly what give/take effects were declared. Engine rejections are
    part of normal play and count as empty.
    """

    LOCATION_IDS = (
        "gem_mine", "token_heap", "trap", "shrine", "trader_stand", "qr_cache", "bonus",
    )
    ITEM_IDS = ("gem", "token", "relic")
    CODES = ("FUZZ-CACHE", "NOT-A-CODE")
    ANSWERS = ("echo", "  ECHO ", "wrong word")

    def __init__(self, instance: GameInstance, rng: random.Random, player_ids):
        self.instance = instance
        self.rng = rng
        self.player_ids = list(player_ids)
        for pid in self.player_ids:
            instance.join_game(pid)

    def random_point(self) -> GeoPoint:
        base = self.rng.choice(
            [(43.000000, -89.000000), (43.000300, -89.000000), (43.000600, -89.000000),
             (43.000150, -89.000200), (43.000450, -89.000200), (43.000200, -89.000100)]
        )
        return GeoPoint(
            base[0] + self.rng.uniform(-0.0004, 0.0004),
            base[1] + self.rng.uniform(-0.0004, 0.0004),
        )

    def step(self) -> list:
        """One random action; returns the effects the engine reported."""
        pid = self.rng.choice(self.player_ids)
        inst = self.instance
        roll = self.rng.random()
        try:
            if roll < 0.30:
                return list(inst.update_position(pid, self.random_point()).fired_effects)
            if roll < 0.38:
                return list(inst.quick_travel(pid, self.rng.choice(self.LOCATION_IDS)).fired_effects)
            if roll < 0.46:
                return list(inst.scan_code(pid, self.rng.choice(self.CODES)).fired_effects)
            if roll < 0.60:
                loc = self.rng.choice(self.LOCATION_IDS + self.dropped_ids())
                inst.pickup_item(pid, loc, self.rng.randint(1, 3))
                return []
            if roll < 0.70:
                inst.drop_item(pid, self.rng.choice(self.ITEM_IDS), self.rng.randint(1, 2))
                return []
            if roll < 0.85:
                choice = self.rng.choice(["start", 0, 1, 2, 5])
                return list(inst.advance_dialog(pid, "trader", choice).effects)
            if roll < 0.93:
                return list(inst.submit_answer(pid, "shrine", self.rng.choice(self.ANSWERS)).effects)
            inst.capture_note(pid, self.rng.choice(("photo", "text")), "uri://x")
            return []
        except EngineError:
            return []

    def dropped_ids(self) -> tuple:
        return tuple(loc.location_id for loc in self.instance.world.dropped)

    def run(self, steps: int) -> None:
        for _ in range(steps):
            self.step()


@pytest.fixture
def fuzz_driver_factory(fuzz_spec):
    def make(seed: int, players=("p1", "p2", "p3")):
        instance = GameInstance(fuzz_spec)
        return RandomDriver(instance, random.Random(seed), players)

    return make
