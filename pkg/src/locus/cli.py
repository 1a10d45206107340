"""Command line entry point: validate, serve, play, simulate.

Exit codes are a stable contract: 0 success, 1 domain failure (diagnostics
or failed expectations), 2 unusable input, 3 environment trouble (e.g.
address in use). Config precedence is flags > environment > defaults.
"""

from __future__ import annotations

import argparse
import json
import os
import signal
import sys
from pathlib import Path

from .engine import EngineError, GameInstance, START
from .gameformat import GameParseError, parse_game
from .geo import GeoPoint
from .harness import parse_scripts, render_transcript, run_concurrent
from .model import GameSpec
from .persistence import PersistenceError, load_snapshot, save_snapshot
from .protocol import GameService
from .server import make_server
from .validate import ERROR, validate_game

ENV_GAMES_DIR = "LOCUS_GAMES_DIR"
ENV_LISTEN = "LOCUS_LISTEN"
ENV_SNAPSHOT_DIR = "LOCUS_SNAPSHOT_DIR"

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_BAD_INPUT = 2
EXIT_ENVIRONMENT = 3


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KeyboardInterrupt:
        return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="locus", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse game files and print diagnostics")
    p.add_argument("paths", nargs="+", type=Path, help="game files to check")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("serve", help="serve every game in a directory over HTTP")
    p.add_argument("--games-dir", type=Path, default=_env_path(ENV_GAMES_DIR, "games"),
                   help=f"directory of .game files (env {ENV_GAMES_DIR}, default ./games)")
    p.add_argument("--listen", default=os.environ.get(ENV_LISTEN, "127.0.0.1:8044"),
                   help=f"host:port to bind (env {ENV_LISTEN}, default 127.0.0.1:8044)")
    p.add_argument("--snapshot-dir", type=Path, default=_env_path(ENV_SNAPSHOT_DIR, None),
                   help=f"load snapshots at start, write them at shutdown (env {ENV_SNAPSHOT_DIR})")
    p.add_argument("--static-dir", type=Path, default=None,
                   help="web player bundle served under /app (default: bundled frontend/dist if present)")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("play", help="interactive terminal session against one game")
    p.add_argument("game_path", type=Path)
    p.add_argument("--player", default="player", help="player id to join as")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("simulate", help="run bot scripts against a game and check expectations")
    p.add_argument("game_path", type=Path)
    p.add_argument("script_paths", nargs="+", type=Path)
    p.add_argument("--seed", type=int, default=0, help="interleaving seed (default 0)")
    p.add_argument("--out", type=Path, default=None, help="write one transcript file per script here")
    p.set_defaults(func=cmd_simulate)

    return parser


def _env_path(name: str, default):
    raw = os.environ.get(name)
    if raw:
        return Path(raw)
    return Path(default) if default else None


def _load_game(path: Path) -> GameSpec:
    return parse_game(path.read_bytes())


# -- validate ----------------------------------------------------------------


def cmd_validate(args) -> int:
    worst = EXIT_OK
    for path in args.paths:
        try:
            source = path.read_bytes()
        except OSError as exc:
            print(f"{path}: unreadable: {exc}", file=sys.stderr)
            return EXIT_BAD_INPUT
        try:
            spec = parse_game(source)
        except GameParseError as exc:
            for err in exc.errors:
                print(f"{path}:{err}")
            worst = max(worst, EXIT_FAILURE)
            continue
        diagnostics = validate_game(spec)
        for diag in diagnostics:
            print(f"{path}: {diag}")
        if any(d.severity == ERROR for d in diagnostics):
            worst = max(worst, EXIT_FAILURE)
        else:
            print(f"{path}: ok ({spec.name!r}, {len(spec.locations)} locations)")
    return worst


# -- serve -------------------------------------------------------------------


def load_games_dir(games_dir: Path, snapshot_dir: Path | None, service: GameService) -> int:
    """Load every valid .game file; returns how many were loaded."""
    loaded = 0
    for path in sorted(games_dir.glob("*.game")):
        try:
            spec = parse_game(path.read_bytes())
        except (OSError, GameParseError) as exc:
            print(f"skipping {path.name}: {exc}", file=sys.stderr)
            continue
        diagnostics = validate_game(spec)
        if any(d.severity == ERROR for d in diagnostics):
            for diag in diagnostics:
                print(f"skipping {path.name}: {diag}", file=sys.stderr)
            continue
        instance = None
        if snapshot_dir is not None:
            snap = snapshot_dir / f"{spec.game_id}.snapshot.json"
            if snap.exists():
                try:
                    instance = load_snapshot(spec, snap)
                    print(f"restored {spec.game_id} from {snap.name} (seq {instance.last_seq})")
                except PersistenceError as exc:
                    print(f"ignoring snapshot {snap.name}: {exc}", file=sys.stderr)
        service.add_game(spec, instance)
        loaded += 1
        print(f"loaded {spec.game_id} ({spec.name!r}) from {path.name}")
    return loaded


def snapshot_all(service: GameService, snapshot_dir: Path) -> None:
    snapshot_dir.mkdir(parents=True, exist_ok=True)
    for game_id, instance in sorted(service.games.items()):
        path = snapshot_dir / f"{game_id}.snapshot.json"
        save_snapshot(instance, path)
        print(f"snapshot {game_id} -> {path}")
    # session tokens survive restarts so clients keep working
    sessions_path = snapshot_dir / "sessions.json"
    sessions_path.write_text(
        json.dumps(service.export_sessions(), indent=0, sort_keys=True), encoding="utf-8"
    )


def restore_sessions(service: GameService, snapshot_dir: Path) -> None:
    sessions_path = snapshot_dir / "sessions.json"
    if not sessions_path.exists():
        return
    try:
        service.restore_sessions(json.loads(sessions_path.read_text(encoding="utf-8")))
    except (ValueError, KeyError, TypeError) as exc:
        print(f"ignoring {sessions_path.name}: {exc}", file=sys.stderr)


def cmd_serve(args) -> int:
    host, _, port_raw = args.listen.rpartition(":")
    if not host or not port_raw.isdigit():
        print(f"--listen must be host:port, got {args.listen!r}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if not args.games_dir.is_dir():
        print(f"games dir {args.games_dir} does not exist", file=sys.stderr)
        return EXIT_BAD_INPUT

    service = GameService()
    if load_games_dir(args.games_dir, args.snapshot_dir, service) == 0:
        print("no valid games to serve", file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.snapshot_dir is not None:
        restore_sessions(service, args.snapshot_dir)

    static_dir = args.static_dir
    if static_dir is None:
        bundled = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        static_dir = bundled if bundled.is_dir() else None

    try:
        httpd = make_server(service, host, int(port_raw), static_dir)
    except OSError as exc:
        print(f"cannot bind {args.listen}: {exc}", file=sys.stderr)
        return EXIT_ENVIRONMENT

    stopping = []

    def stop(signum, frame):
        stopping.append(signum)
        httpd.shutdown()

    signal.signal(signal.SIGTERM, stop)
    signal.signal(signal.SIGINT, stop)
    print(f"serving {len(service.games)} game(s) on http://{host}:{port_raw}")
    import threading

    t = threading.Thread(target=httpd.serve_forever)
    t.start()
    try:
        t.join()
    finally:
        httpd.server_close()
        if args.snapshot_dir is not None:
            snapshot_all(service, args.snapshot_dir)
    return EXIT_OK


# -- play --------------------------------------------------------------------

PLAY_HELP = """\
commands:
  move <lat> <lon>          report a position
  scan <code>               enter a QR code
  travel <location-id>      quick travel (if the game allows it)
  nearby                    list geofences you are standing in
  pickup <location-id> <n>  take items from a stack
  drop <item-id> <n>        leave items at your position
  talk <npc-id> [n]         start a conversation / choose option n
  answer <location-id> <text...>
  note <kind> <uri>         capture a media note
  quests | inv | who        quest log, inventory, other players
  help | quit"""


def cmd_play(args) -> int:
    try:
        spec = _load_game(args.game_path)
    except (OSError, GameParseError) as exc:
        print(f"cannot load game: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    if any(d.severity == ERROR for d in validate_game(spec)):
        print("game has validation errors; run `locus validate` for details", file=sys.stderr)
        return EXIT_FAILURE

    instance = GameInstance(spec)
    instance.join_game(args.player)
    print(f"{spec.name}: {spec.description}")
    print(f"joined as {args.player!r}; type 'help' for commands")
    while True:
        try:
            line = input("> ").strip()
        except EOFError:
            return EXIT_OK
        if not line:
            continue
        try:
            if not _play_command(instance, args.player, line):
                return EXIT_OK
        except EngineError as exc:
            print(f"[{exc.code}] {exc.message}")
        except (ValueError, IndexError) as exc:
            print(f"bad command: {exc}")
            print(PLAY_HELP)


def _play_command(instance: GameInstance, pid: str, line: str) -> bool:
    tokens = line.split()
    cmd, rest = tokens[0], tokens[1:]
    if cmd == "quit":
        return False
    if cmd == "help":
        print(PLAY_HELP)
    elif cmd == "move":
        report = instance.update_position(pid, GeoPoint(float(rest[0]), float(rest[1])))
        _print_report(instance, report)
    elif cmd == "scan":
        report = instance.scan_code(pid, line.split(None, 1)[1])
        if not report.matched:
            print("nothing answers to that code")
        _print_report(instance, report)
    elif cmd == "travel":
        report = instance.quick_travel(pid, rest[0])
        _print_report(instance, report)
    elif cmd == "nearby":
        for loc_id, dist in instance.nearby(pid):
            print(f"  {loc_id}  {dist:.1f} m")
    elif cmd == "pickup":
        inventory = instance.pickup_item(pid, rest[0], int(rest[1]))
        _print_inventory(inventory)
    elif cmd == "drop":
        loc_id = instance.drop_item(pid, rest[0], int(rest[1]))
        print(f"dropped at {loc_id}")
    elif cmd == "talk":
        choice = START if len(rest) < 2 else int(rest[1])
        turn = instance.advance_dialog(pid, rest[0], choice)
        if turn.node is not None:
            speaker = instance.spec.characters[turn.node.speaker].name
            print(f"{speaker}: {turn.node.text}")
            for i, opt in enumerate(turn.options):
                print(f"  [{i}] {opt.label}")
        if turn.ended:
            print("(conversation over)")
    elif cmd == "answer":
        result = instance.submit_answer(pid, rest[0], line.split(None, 2)[2])
        print("correct!" if result.correct else "that is not it")
    elif cmd == "note":
        note = instance.capture_note(pid, rest[0], rest[1])
        print(f"captured {note.note_id}")
    elif cmd == "quests":
        status = instance.quest_status(pid)
        for qid in status.active:
            print(f"  active: {instance.spec.quests[qid].name} - {instance.spec.quests[qid].active_text}")
        for qid in status.complete:
            print(f"  done:   {instance.spec.quests[qid].name}")
        if not status.active and not status.complete:
            print("  (none)")
    elif cmd == "inv":
        _print_inventory(instance.world.players[pid].inventory)
    elif cmd == "who":
        others = instance.other_players(pid)
        for opid, pos in others:
            print(f"  {opid} at {pos.lat:.6f}, {pos.lon:.6f}")
        if not others:
            print("  (nobody else around)")
    else:
        print(f"unknown command {cmd!r}")
        print(PLAY_HELP)
    return True


def _print_inventory(inventory: dict) -> None:
    if not inventory:
        print("(empty)")
    for item_id in sorted(inventory):
        print(f"  {item_id} x{inventory[item_id]}")


def _print_report(instance: GameInstance, report) -> None:
    for loc_id in report.newly_visited:
        loc = instance._find_location(loc_id)
        print(f"you found: {loc.name} ({loc_id})")
    for loc_id in report.hazards_hit:
        print(f"!! hazard triggered: {loc_id}")
    if report.nearby:
        print("nearby: " + ", ".join(f"{lid} ({d:.0f} m)" for lid, d in report.nearby))


# -- simulate ------------------------------------------------------------------


def cmd_simulate(args) -> int:
    try:
        spec = _load_game(args.game_path)
    except (OSError, GameParseError) as exc:
        print(f"cannot load game: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if any(d.severity == ERROR for d in validate_game(spec)):
        print("game has validation errors", file=sys.stderr)
        return EXIT_BAD_INPUT

    scripts = []
    for path in args.script_paths:
        try:
            scripts.extend(parse_scripts(path.read_text(encoding="utf-8")))
        except (OSError, GameParseError) as exc:
            print(f"cannot load script {path}: {exc}", file=sys.stderr)
            return EXIT_BAD_INPUT

    instance = GameInstance(spec)
    transcripts = run_concurrent(instance, scripts, args.seed)

    all_passed = True
    for transcript in transcripts:
        text = render_transcript(transcript)
        if args.out is not None:
            args.out.mkdir(parents=True, exist_ok=True)
            out_path = args.out / f"{transcript.player_id}.transcript"
            out_path.write_text(text, encoding="utf-8")
            print(f"{transcript.player_id}: {'PASS' if transcript.passed else 'FAIL'} -> {out_path}")
        else:
            sys.stdout.write(text)
        all_passed = all_passed and transcript.passed
    return EXIT_OK if all_passed else EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
