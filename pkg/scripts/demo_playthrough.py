#!/usr/bin/env python3
"""Spin up a throwaway server, play steel over the wire, print the transcript.

A quick end-to-end sanity check that exercises the same path a remote
client uses: HTTP, tokens, JSON, and the engine behind them.
"""

import sys
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "src"))

from locus.engine import GameInstance
from locus.gameformat import parse_game
from locus.harness import WIRE, parse_scripts, render_transcript, run_script
from locus.protocol import GameService
from locus.server import ServerThread


def main() -> int:
    spec = parse_game((REPO / "games" / "steel.game").read_text(encoding="utf-8"))
    script = parse_scripts(
        (REPO / "games" / "scripts" / "steel.script").read_text(encoding="utf-8")
    )[0]

    in_process = run_script(GameInstance(spec), script)

    service = GameService()
    instance = service.add_game(spec)
    with ServerThread(service) as server:
        print(f"server on {server.address}")
        wired = run_script(instance, script, transport=WIRE, address=server.address)

    print(render_transcript(wired))
    same = render_transcript(in_process) == render_transcript(wired)
    print(f"transport equivalence: {'identical' if same else 'DIVERGED'}")
    return 0 if wired.passed and same else 1


if __name__ == "__main__":
    sys.exit(main())
