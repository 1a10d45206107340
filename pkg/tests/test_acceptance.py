"""Acceptance gate: every shipped-behavior criterion at its stated tolerance.

Each test prints one PASS line with its measured time so a plain
`pytest -s tests/test_acceptance.py` reads as a checklist.
"""

import itertools
import json
import random
import signal
import socket
import subprocess
import sys
import time
import urllib.request

import pytest

from locus.engine import EngineError, GameInstance, PlayerState, eval_requirement, replay_events
from locus.gameformat import parse_game
from locus.geo import GeoPoint, geo_distance
from locus.harness import WIRE, parse_scripts, render_transcript, run_script
from locus.model import Requirement, RequirementExpr
from locus.persistence import load_snapshot, save_snapshot
from locus.protocol import GameService
from locus.server import ServerThread

from conftest import GAME_NAMES, GAMES_DIR, GOLDEN_DIR, SCRIPTS_DIR, RandomDriver
from oracles import item_census, oracle_dnf


def report(name: str, started: float, detail: str = "") -> None:
    took = time.monotonic() - started
    suffix = f" [{detail}]" if detail else ""
    print(f"ACCEPTANCE PASS: {name} ({took:.2f}s){suffix}")


def all_dnf_shapes(max_atoms: int):
    """Every way to split k <= max_atoms ordered atoms into all-of groups."""
    yield ()
    for k in range(1, max_atoms + 1):
        for cuts in itertools.product([False, True], repeat=k - 1):
            shape, group = [], [0]
            for i, cut in enumerate(cuts, start=1):
                if cut:
                    shape.append(tuple(group))
                    group = []
                group.append(i)
            shape.append(tuple(group))
            yield tuple(shape)


def test_requirement_evaluator_matches_truth_table_oracle():
    started = time.monotonic()
    flags = ["f1", "f2", "f3", "f4"]
    checked = 0
    for shape in all_dnf_shapes(4):
        expr = RequirementExpr(
            tuple(tuple(Requirement("flag_set", flags[i]) for i in group) for group in shape)
        )
        groups = [[flags[i] for i in group] for group in shape]
        for bits in itertools.product([False, True], repeat=4):
            truth = dict(zip(flags, bits))
            player = PlayerState("p", flags={f for f, v in truth.items() if v})
            assert eval_requirement(expr, player) == oracle_dnf(groups, truth)
            checked += 1
    took = time.monotonic() - started
    assert took < 5.0
    report("requirement evaluator == brute-force DNF oracle", started, f"{checked} cases")


def test_geodesic_checks():
    started = time.monotonic()
    d = geo_distance(GeoPoint(0, 0), GeoPoint(1, 0))
    assert abs(d - 111194.93) <= 0.01

    rng = random.Random(1893)
    for _ in range(10_000):
        a = GeoPoint(rng.uniform(-90, 90), rng.uniform(-180, 180))
        b = GeoPoint(rng.uniform(-90, 90), rng.uniform(-180, 180))
        c = GeoPoint(rng.uniform(-90, 90), rng.uniform(-180, 180))
        ab, ba = geo_distance(a, b), geo_distance(b, a)
        assert ab == ba
        assert ab >= 0.0
        assert (ab == 0.0) == (a == b)
        bc, ac = geo_distance(b, c), geo_distance(a, c)
        assert ac <= ab + bc + 1e-9 * (ab + bc) + 1e-9
    took = time.monotonic() - started
    assert took < 5.0
    report("geodesic meridian value and metric properties", started, "10000 pairs")


def test_golden_playthroughs_byte_identical():
    started = time.monotonic()
    for name in GAME_NAMES:
        spec = parse_game((GAMES_DIR / f"{name}.game").read_text(encoding="utf-8"))
        script = parse_scripts((SCRIPTS_DIR / f"{name}.script").read_text(encoding="utf-8"))[0]
        transcript = run_script(GameInstance(spec), script)
        assert transcript.passed, f"{name}: {render_transcript(transcript)}"
        golden = (GOLDEN_DIR / f"{name}.transcript").read_text(encoding="utf-8")
        assert render_transcript(transcript) == golden, f"{name} transcript drifted"
    took = time.monotonic() - started
    assert took < 10.0
    report("golden playthroughs (steel, ghost_hunters, landmines)", started)


def test_conservation_over_random_sequences(fuzz_spec):
    started = time.monotonic()
    violations = 0
    for seed in range(1000):
        rng = random.Random(seed)
        driver = RandomDriver(GameInstance(fuzz_spec), rng, ("p1", "p2", "p3"))
        for _ in range(rng.randint(1, 100)):
            before = item_census(driver.instance)
            effects = driver.step()
            after = item_census(driver.instance)
            expected = dict(before)
            for eff in effects:
                sign = 1 if eff.kind == "give_item" else -1
                expected[eff.item_id] = expected.get(eff.item_id, 0) + sign * eff.qty
            if after != {k: v for k, v in expected.items() if v}:
                violations += 1
    took = time.monotonic() - started
    assert violations == 0
    assert took < 60.0
    report("conservation over 1000 random action sequences", started)


def test_replay_determinism(fuzz_spec):
    started = time.monotonic()
    mismatches = 0
    for seed in range(200):
        rng = random.Random(10_000 + seed)
        driver = RandomDriver(GameInstance(fuzz_spec), rng, ("p1", "p2", "p3"))
        driver.run(rng.randint(1, 100))
        live = driver.instance
        rebuilt = replay_events(fuzz_spec, live.event_log)
        if rebuilt.world.to_dict() != live.world.to_dict():
            mismatches += 1
    assert mismatches == 0
    report("event-log replay reproduces world state", started, "200 sequences")


def test_transport_equivalence_for_all_goldens(steel_spec, ghost_spec, landmines_spec):
    started = time.monotonic()
    specs = dict(zip(GAME_NAMES, (steel_spec, ghost_spec, landmines_spec)))
    for name, spec in specs.items():
        script = parse_scripts((SCRIPTS_DIR / f"{name}.script").read_text(encoding="utf-8"))[0]
        local = render_transcript(run_script(GameInstance(spec), script))
        service = GameService()
        instance = service.add_game(spec)
        with ServerThread(service) as server:
            wired = render_transcript(
                run_script(instance, script, transport=WIRE, address=server.address)
            )
        assert local == wired, f"{name}: transports diverged"
    report("in-process and wire transcripts identical", started)


def test_persistence_round_trip_on_reachable_states(fuzz_spec, tmp_path):
    started = time.monotonic()
    for seed in range(200):
        rng = random.Random(20_000 + seed)
        driver = RandomDriver(GameInstance(fuzz_spec), rng, ("p1", "p2", "p3"))
        driver.run(rng.randint(1, 60))
        path = tmp_path / "snap.json"
        save_snapshot(driver.instance, path)
        loaded = load_snapshot(fuzz_spec, path)
        assert loaded.world.to_dict() == driver.instance.world.to_dict()
        assert loaded.last_seq == driver.instance.last_seq
    report("snapshot round-trip identity", started, "200 states")


def test_persistence_across_server_restart(tmp_path):
    started = time.monotonic()
    snapshots = tmp_path / "snaps"

    def spawn(port):
        return subprocess.Popen(
            [sys.executable, "-m", "locus.cli", "serve", "--games-dir", str(GAMES_DIR),
             "--listen", f"127.0.0.1:{port}", "--snapshot-dir", str(snapshots)],
            stdout=subprocess.PIPE, stderr=subprocess.PIPE,
        )

    def free_port():
        with socket.socket() as sock:
            sock.bind(("127.0.0.1", 0))
            return sock.getsockname()[1]

    def wait(port):
        deadline = time.monotonic() + 20
        while time.monotonic() < deadline:
            try:
                urllib.request.urlopen(f"http://127.0.0.1:{port}/v1/games", timeout=2)
                return
            except OSError:
                time.sleep(0.1)
        raise TimeoutError

    def api(port, method, path, token=None, payload=None):
        req = urllib.request.Request(
            f"http://127.0.0.1:{port}{path}",
            data=None if payload is None else json.dumps(payload).encode(),
            method=method,
            headers={"Authorization": f"Bearer {token}"} if token else {},
        )
        return json.loads(urllib.request.urlopen(req, timeout=5).read())["data"]

    port = free_port()
    proc = spawn(port)
    try:
        wait(port)
        token = api(port, "POST", "/v1/games/steel/players", payload={"player_id": "kit"})["token"]
        api(port, "POST", "/v1/games/steel/players/kit/position", token,
            {"lat": 43.0768, "lon": -89.3988})
        api(port, "POST", "/v1/games/steel/players/kit/pickup", token,
            {"location_id": "ore_pile_east", "qty": 2})
        before_inv = api(port, "GET", "/v1/games/steel/players/kit/inventory", token)
        before_quests = api(port, "GET", "/v1/games/steel/players/kit/quests", token)
    finally:
        proc.send_signal(signal.SIGTERM)
        proc.communicate(timeout=30)

    port2 = free_port()
    proc2 = spawn(port2)
    try:
        wait(port2)
        after_inv = api(port2, "GET", "/v1/games/steel/players/kit/inventory", token)
        after_quests = api(port2, "GET", "/v1/games/steel/players/kit/quests", token)
    finally:
        proc2.send_signal(signal.SIGTERM)
        proc2.communicate(timeout=30)

    assert after_inv == before_inv == {"iron_ore": 2}
    assert after_quests == before_quests
    report("server restart preserves inventories and quests", started)


def test_feature_parity_quantity_gates_and_quick_travel(steel_spec, ghost_spec):
    started = time.monotonic()

    # quantity requirement gates the smelt option exactly at its threshold
    instance = GameInstance(steel_spec)
    instance.join_game("p")
    instance.update_position("p", GeoPoint(43.0768, -89.3988))
    instance.pickup_item("p", "ore_pile_east", 1)
    instance.update_position("p", GeoPoint(43.0774, -89.4016))
    instance.pickup_item("p", "coal_cart", 1)
    instance.update_position("p", GeoPoint(43.0766, -89.4012))
    turn = instance.advance_dialog("p", "smelter", "start")
    assert [o.label for o in turn.options] == ["Just looking"]  # 1 ore: gate shut
    instance.update_position("p", GeoPoint(43.0768, -89.3988))
    instance.pickup_item("p", "ore_pile_east", 1)
    instance.update_position("p", GeoPoint(43.0766, -89.4012))
    turn = instance.advance_dialog("p", "smelter", "start")
    assert [o.label for o in turn.options][0] == "Smelt my ore"  # 2 ore: gate open

    # quick travel refused when the game flag is off
    ghost = GameInstance(ghost_spec)
    ghost.join_game("p")
    with pytest.raises(EngineError) as err:
        ghost.quick_travel("p", "trinket_shelf")
    assert err.value.code == "QUICK_TRAVEL_DISABLED"

    # and equivalent to physical movement when on
    a = GameInstance(steel_spec)
    a.join_game("p")
    b = GameInstance(steel_spec)
    b.join_game("p")
    qt = a.quick_travel("p", "coal_cart")
    mv = b.update_position("p", GeoPoint(43.0774, -89.4016))
    assert (qt.nearby, qt.newly_visited, qt.fired_effects, qt.hazards_hit) == (
        mv.nearby, mv.newly_visited, mv.fired_effects, mv.hazards_hit
    )
    report("quantity thresholds gate options; quick travel parity", started)
