"""Engine mechanics against independent brute-force oracles."""

import itertools

import numpy as np
import pytest

from gridcommons.engine import (
    ANCHOR,
    SimState,
    cast_beam,
    check_occupancy,
    extract_observations,
    resolve_moves,
    spawn_items,
    tick_timers,
)
from gridcommons.grid import Cell, Terrain, parse_map, render_base
from gridcommons.rng import make_rng, rng_uniform

DELTAS = [(0, 0), (-1, 0), (0, 1), (1, 0), (0, -1)]  # stay N E S W


def brute_resolve(walk, pos, tgt, rank):
    """Reference resolver: direct transcription of the movement contract."""
    n = len(pos)
    H, W = walk.shape
    tgt = list(tgt)
    for i in range(n):
        r, c = tgt[i]
        if not (0 <= r < H and 0 <= c < W) or not walk[r, c]:
            tgt[i] = pos[i]
    # simultaneous swap failure
    swapped = [False] * n
    for i in range(n):
        for j in range(i + 1, n):
            if tgt[i] == pos[j] and tgt[j] == pos[i] and tgt[i] != pos[i] \
                    and tgt[j] != pos[j]:
                swapped[i] = swapped[j] = True
    for i in range(n):
        if swapped[i]:
            tgt[i] = pos[i]
    # same-target conflicts: best rank wins
    for i in range(n):
        for j in range(n):
            if i != j and tgt[i] == tgt[j] and tgt[i] != pos[i] \
                    and tgt[j] != pos[j] and rank[j] < rank[i]:
                tgt[i] = pos[i]
    # blocking fixed point
    changed = True
    while changed:
        changed = False
        for i in range(n):
            if tgt[i] == pos[i]:
                continue
            for j in range(n):
                if j != i and tgt[j] == pos[j] and tgt[i] == pos[j]:
                    tgt[i] = pos[i]
                    changed = True
    return tgt


def _run_resolver_batch(pos_list, tgt_list, seed=0):
    """One vectorized resolve_moves call over many scenarios on a 4x4 grid."""
    B = len(pos_list)
    n = len(pos_list[0])
    terrain = np.zeros((4, 4), dtype=np.uint8)  # all floor
    pos = np.array(pos_list, dtype=np.int16)
    tgt = np.array(tgt_list, dtype=np.int16)
    occ = np.full((B, 4, 4), -1, dtype=np.int8)
    for i in range(n):
        occ[np.arange(B), pos[:, i, 0], pos[:, i, 1]] = i
    alive = np.ones((B, n), dtype=bool)
    rng = make_rng(seed, B)
    _, prio = rng_uniform(rng, n)
    rank = np.argsort(np.argsort(prio, axis=1), axis=1)
    new_occ, new_pos, _ = resolve_moves(terrain, occ, pos, tgt, alive, rng)
    return new_occ, new_pos, rank


def test_exhaustive_three_agents_vs_brute_force():
    cells = list(itertools.product(range(4), range(4)))
    pos_list, tgt_list = [], []
    for combo in itertools.combinations(cells, 3):
        for deltas in itertools.product(DELTAS, repeat=3):
            pos_list.append(combo)
            tgt_list.append([(r + dr, c + dc)
                             for (r, c), (dr, dc) in zip(combo, deltas)])
    walk = np.ones((4, 4), dtype=bool)
    for seed in (0, 1):
        new_occ, new_pos, rank = _run_resolver_batch(pos_list, tgt_list, seed)
        for b in range(0, len(pos_list), 7):  # dense sample of the batch
            want = brute_resolve(walk, list(pos_list[b]),
                                 [tuple(t) for t in tgt_list[b]],
                                 rank[b].tolist())
            got = [tuple(new_pos[b, i]) for i in range(3)]
            assert got == want, (pos_list[b], tgt_list[b], rank[b])
        # never two agents on one cell
        flat = new_pos[:, :, 0].astype(int) * 4 + new_pos[:, :, 1]
        assert all(len(set(row)) == 3 for row in flat)


def test_brute_force_full_coverage_small():
    # every 2-agent configuration, both seeds, checked lane by lane
    cells = list(itertools.product(range(4), range(4)))
    pos_list, tgt_list = [], []
    for combo in itertools.combinations(cells, 2):
        for deltas in itertools.product(DELTAS, repeat=2):
            pos_list.append(combo)
            tgt_list.append([(r + dr, c + dc)
                             for (r, c), (dr, dc) in zip(combo, deltas)])
    walk = np.ones((4, 4), dtype=bool)
    for seed in (0, 3):
        new_occ, new_pos, rank = _run_resolver_batch(pos_list, tgt_list, seed)
        for b in range(len(pos_list)):
            want = brute_resolve(walk, list(pos_list[b]),
                                 [tuple(t) for t in tgt_list[b]],
                                 rank[b].tolist())
            assert [tuple(new_pos[b, i]) for i in range(2)] == want


def _simple_state(map_text, cells, orients=None, batch=1):
    spec = parse_map(map_text)
    H, W = spec.shape
    n = len(cells)
    occ = np.full((batch, H, W), -1, dtype=np.int8)
    pos = np.zeros((batch, n, 2), dtype=np.int16)
    for i, (r, c) in enumerate(cells):
        occ[:, r, c] = i
        pos[:, i] = (r, c)
    orient = np.zeros((batch, n), dtype=np.int8)
    if orients:
        orient[:] = orients
    return spec, SimState(
        terrain=spec.terrain,
        items=np.broadcast_to(spec.items, (batch, H, W)).copy(),
        occ=occ,
        step=np.zeros(batch, dtype=np.int32),
        pos=pos,
        orient=orient,
        frozen_until=np.zeros((batch, n), dtype=np.int32),
        alive=np.ones((batch, n), dtype=bool),
        respawn_at=np.zeros((batch, n), dtype=np.int32),
        rng=make_rng(0, batch),
    )


OPEN_MAP = """\
WWWWWWWW
W......W
W......W
W......W
W......W
W......W
WWWWWWWW
"""


def test_single_agent_moves_onto_floor():
    _, st = _simple_state(OPEN_MAP, [(3, 3)])
    tgt = np.array([[[2, 3]]], dtype=np.int16)
    occ, pos, _ = resolve_moves(st.terrain, st.occ, st.pos, tgt, st.alive, st.rng)
    assert tuple(pos[0, 0]) == (2, 3)
    assert occ[0, 2, 3] == 0 and occ[0, 3, 3] == -1


def test_move_into_wall_stays():
    _, st = _simple_state(OPEN_MAP, [(1, 1)])
    tgt = np.array([[[0, 1]]], dtype=np.int16)
    _, pos, _ = resolve_moves(st.terrain, st.occ, st.pos, tgt, st.alive, st.rng)
    assert tuple(pos[0, 0]) == (1, 1)


def test_conflict_fair_over_seeds():
    # two agents target the same empty cell; each should win half the time
    # (oracle: per trial, one of the two priority orders is drawn, and each
    # order gives the win to a different agent)
    B = 10_000
    _, st = _simple_state(OPEN_MAP, [(2, 2), (2, 4)], batch=B)
    tgt = np.tile(np.array([[[2, 3], [2, 3]]], dtype=np.int16), (B, 1, 1, 1)).reshape(B, 2, 2)
    st.rng = make_rng(1234, B)
    occ, pos, _ = resolve_moves(st.terrain, st.occ, st.pos, tgt, st.alive, st.rng)
    winner0 = (pos[:, 0] == [2, 3]).all(axis=1)
    winner1 = (pos[:, 1] == [2, 3]).all(axis=1)
    assert np.all(winner0 ^ winner1)  # exactly one occupies it
    rate = winner0.mean()
    sigma = (0.25 / B) ** 0.5
    assert abs(rate - 0.5) < 3 * sigma


def test_swap_both_fail_and_chain_moves():
    _, st = _simple_state(OPEN_MAP, [(2, 2), (2, 3), (2, 4)])
    # 0 and 1 swap (fail); 2 follows into 1's vacated... but 1 stays, so 2 stays
    tgt = np.array([[[2, 3], [2, 2], [2, 3]]], dtype=np.int16)
    _, pos, _ = resolve_moves(st.terrain, st.occ, st.pos, tgt, st.alive, st.rng)
    assert [tuple(p) for p in pos[0]] == [(2, 2), (2, 3), (2, 4)]

    # chain: 0 leads, 1 and 2 follow; all advance
    _, st = _simple_state(OPEN_MAP, [(2, 2), (2, 3), (2, 4)])
    tgt = np.array([[[2, 1], [2, 2], [2, 3]]], dtype=np.int16)
    _, pos, _ = resolve_moves(st.terrain, st.occ, st.pos, tgt, st.alive, st.rng)
    assert [tuple(p) for p in pos[0]] == [(2, 1), (2, 2), (2, 3)]


def test_beam_wall_blocks():
    spec, st = _simple_state(OPEN_MAP, [(3, 3)], orients=[0])
    # facing north: wall at distance 1 when standing at row 1
    _, st2 = _simple_state(OPEN_MAP, [(1, 3)], orients=[0])
    hit_mask = np.ones((1,) + spec.shape, dtype=bool)
    cell, found = cast_beam(st2.terrain, st2.pos[:, 0], st2.orient[:, 0],
                            hit_mask, 3, np.ones(1, dtype=bool))
    assert not found[0]


def test_beam_hits_agent_at_two():
    spec, st = _simple_state(OPEN_MAP, [(4, 3), (2, 3)], orients=[0, 0])
    agent_mask = st.occ >= 0
    cell, found = cast_beam(st.terrain, st.pos[:, 0], st.orient[:, 0],
                            agent_mask, 3, np.ones(1, dtype=bool))
    assert found[0] and tuple(cell[0]) == (2, 3)


def test_beam_wall_shadows_target():
    # wall at distance 1, target at distance 2: scan stops at the wall
    map_text = """\
WWWWW
W...W
WW..W
W...W
WWWWW
"""
    spec, st = _simple_state(map_text, [(3, 1), (1, 1)], orients=[0, 0])
    agent_mask = st.occ >= 0
    cell, found = cast_beam(st.terrain, st.pos[:, 0], st.orient[:, 0],
                            agent_mask, 3, np.ones(1, dtype=bool))
    assert not found[0]


BIG_FLOOR = "W" * 40 + "\n" + "\n".join(
    "W" + "." * 38 + "W" for _ in range(30)) + "\n" + "W" * 40


def test_observation_floor_and_self():
    _, st = _simple_state(BIG_FLOOR, [(15, 20)])
    obs = extract_observations(
        np.broadcast_to(render_base(st.terrain), st.items.shape).copy(), st)
    window = obs[0, 0]
    assert window[ANCHOR] == Cell.SELF
    rest = window.copy()
    rest[ANCHOR] = Cell.FLOOR
    assert (rest == Cell.FLOOR).all()


def test_observation_apple_ahead_all_orientations():
    # hand transform: a cell two steps ahead lands at window (7, 5)
    for o, (dr, dc) in enumerate([(-1, 0), (0, 1), (1, 0), (0, -1)]):
        _, st = _simple_state(BIG_FLOOR, [(15, 20)], orients=[o])
        st.items[0, 15 + 2 * dr, 20 + 2 * dc] = Cell.APPLE
        cells = np.where(st.items != 0, st.items,
                         np.broadcast_to(render_base(st.terrain), st.items.shape))
        obs = extract_observations(cells.astype(np.uint8), st)
        assert obs[0, 0, 7, 5] == Cell.APPLE, f"orientation {o}"


def test_observation_corner_padding_reads_wall():
    _, st = _simple_state(OPEN_MAP, [(1, 1)])
    obs = extract_observations(
        np.broadcast_to(render_base(st.terrain), st.items.shape).copy(), st)
    # facing north from the top-left corner: everything ahead is wall
    assert (obs[0, 0, :9, :] == Cell.WALL).all()


def test_observation_translation_equivariance():
    offsets = [(0, 0), (3, 5), (7, 2)]
    windows = []
    for dr, dc in offsets:
        _, st = _simple_state(BIG_FLOOR, [(10 + dr, 10 + dc)], orients=[1])
        st.items[0, 8 + dr, 12 + dc] = Cell.APPLE
        cells = np.where(st.items != 0, st.items,
                         np.broadcast_to(render_base(st.terrain), st.items.shape))
        obs = extract_observations(cells.astype(np.uint8), st)
        windows.append(obs[0, 0])
    assert np.array_equal(windows[0], windows[1])
    assert np.array_equal(windows[0], windows[2])


def test_observation_rotation_of_core():
    # turning the agent clockwise rotates the 3x3 core counterclockwise
    _, st = _simple_state(BIG_FLOOR, [(15, 20)])
    st.items[0, 14, 21] = Cell.APPLE
    st.items[0, 16, 20] = Cell.TOKEN
    cells = np.where(st.items != 0, st.items,
                     np.broadcast_to(render_base(st.terrain), st.items.shape))
    cores = []
    for o in range(4):
        st.orient[0, 0] = o
        obs = extract_observations(cells.astype(np.uint8), st)
        cores.append(obs[0, 0, 8:11, 4:7])
    for o in range(4):
        assert np.array_equal(cores[(o + 1) % 4], np.rot90(cores[o], 1))


def test_spawn_items_edges():
    _, st = _simple_state(OPEN_MAP, [(1, 1)])
    eligible = st.terrain == Terrain.FLOOR
    items, _ = spawn_items(st.items, st.rng, 0.0, Cell.APPLE, eligible)
    assert (items == 0).all()
    items, _ = spawn_items(st.items, st.rng, 1.0, Cell.APPLE,
                           np.broadcast_to(eligible, st.items.shape))
    want = eligible.sum() - 0  # every eligible cell fills (occupancy ignored here)
    assert (items == Cell.APPLE).sum() == want


def test_spawn_items_rate_montecarlo():
    # 1e4 cells x 1e3 trials at p=0.0005: per-trial spawn count is
    # Binomial(1e4, 0.0005), mean 5; the mean over 1000 trials has
    # sigma = sqrt(1e4 * p * (1-p)) / sqrt(1000) ~= 0.0707
    B, H, W = 1000, 100, 100
    items = np.zeros((B, H, W), dtype=np.uint8)
    eligible = np.ones((B, H, W), dtype=bool)
    rng = make_rng(2024, B)
    out, _ = spawn_items(items, rng, 0.0005, Cell.APPLE, eligible)
    per_trial = (out == Cell.APPLE).sum(axis=(1, 2))
    sigma_mean = (1e4 * 0.0005 * 0.9995) ** 0.5 / B ** 0.5
    assert abs(per_trial.mean() - 5.0) < 3 * sigma_mean


SPAWN_MAP = """\
WWWWW
WP.PW
W...W
WP..W
WWWWW
"""


def test_tick_timers_unfreeze_boundary():
    _, st = _simple_state(SPAWN_MAP, [(2, 2)])
    st.frozen_until[0, 0] = 5
    st.step[0] = 5
    tick_timers(st)
    assert st.alive[0, 0]
    assert (st.frozen_until <= st.step[:, None]).all()  # active this step


def test_tick_timers_respawn_on_free_spawn():
    _, st = _simple_state(SPAWN_MAP, [(2, 2)])
    st.alive[0, 0] = False
    st.occ[0, 2, 2] = -1
    st.respawn_at[0, 0] = 3
    st.step[0] = 3
    tick_timers(st)
    assert st.alive[0, 0]
    spawn_cells = {(1, 1), (1, 3), (3, 1)}
    assert tuple(st.pos[0, 0]) in spawn_cells
    assert check_occupancy(st)


def test_tick_timers_deferred_when_spawns_full():
    # three agents camp all spawn cells; the dead one must wait a step
    _, st = _simple_state(SPAWN_MAP, [(1, 1), (1, 3), (3, 1), (2, 2)])
    st.alive[0, 3] = False
    st.occ[0, 2, 2] = -1
    st.respawn_at[0, 3] = 0
    st.step[0] = 0
    tick_timers(st)
    assert not st.alive[0, 3]
    # a camper steps away; next tick the respawn lands on the freed pad
    st.occ[0, 1, 1] = -1
    st.pos[0, 0] = (2, 1)
    st.occ[0, 2, 1] = 0
    st.step[0] = 1
    tick_timers(st)
    assert st.alive[0, 3]
    assert tuple(st.pos[0, 3]) == (1, 1)
