#!/usr/bin/env python3
"""Long-running conservation fuzz: random multiplayer action sequences.

The pytest acceptance run covers 1000 sequences; this script lets you
crank the count up and leave it running. Any violation prints the seed so
it can be replayed under a debugger.

Usage: python scripts/fuzz_conservation.py [sequences] [max-steps]
"""

import random
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "src"))
sys.path.insert(0, str(REPO / "tests"))

from locus.engine import GameInstance, replay_events
from locus.gameformat import parse_game

from conftest import FUZZ_GAME, RandomDriver
from oracles import item_census


def main() -> int:
    sequences = int(sys.argv[1]) if len(sys.argv) > 1 else 5000
    max_steps = int(sys.argv[2]) if len(sys.argv) > 2 else 100
    spec = parse_game(FUZZ_GAME)
    violations = 0

    for seed in range(sequences):
        rng = random.Random(seed)
        driver = RandomDriver(GameInstance(spec), rng, ("p1", "p2", "p3"))
        for _ in range(rng.randint(1, max_steps)):
            before = item_census(driver.instance)
            effects = driver.step()
            after = item_census(driver.instance)
            expected = dict(before)
            for eff in effects:
                sign = 1 if eff.kind == "give_item" else -1
                expected[eff.item_id] = expected.get(eff.item_id, 0) + sign * eff.qty
            if after != {k: v for k, v in expected.items() if v}:
                violations += 1
                print(f"conservation violation at seed {seed}: {before} -> {after}")
                break
        else:
            rebuilt = replay_events(spec, driver.instance.event_log)
            if rebuilt.world.to_dict() != driver.instance.world.to_dict():
                violations += 1
                print(f"replay mismatch at seed {seed}")
        if seed and seed % 500 == 0:
            print(f"... {seed} sequences, {violations} violations")

    print(f"done: {sequences} sequences, {violations} violations")
    return 1 if violations else 0


if __name__ == "__main__":
    sys.exit(main())
